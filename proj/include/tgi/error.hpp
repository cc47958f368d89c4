// Copyright 2026 The tgi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tgi {

// Every failure the engine raises derives from Error. kind() is a stable
// identifier that tools print and tests match on.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TGI_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

TGI_DEFINE_ERROR(MalformedJson);
TGI_DEFINE_ERROR(GridBoundsViolation);
TGI_DEFINE_ERROR(EmptySplit);
TGI_DEFINE_ERROR(OutOfBounds);
TGI_DEFINE_ERROR(PreconditionViolation);
TGI_DEFINE_ERROR(InsufficientPalette);
TGI_DEFINE_ERROR(TypeError);
TGI_DEFINE_ERROR(UnknownPrimitive);
TGI_DEFINE_ERROR(UnboundVariable);
TGI_DEFINE_ERROR(DegenerateResult);
TGI_DEFINE_ERROR(TemplateError);
TGI_DEFINE_ERROR(NotFound);
TGI_DEFINE_ERROR(MissingManifest);
TGI_DEFINE_ERROR(OrphanSidecar);
TGI_DEFINE_ERROR(ArityMismatch);
TGI_DEFINE_ERROR(UnknownSampleId);
TGI_DEFINE_ERROR(GeneratorSetMismatch);
TGI_DEFINE_ERROR(IoError);

#undef TGI_DEFINE_ERROR

// Raised by rejection loops when no acceptable candidate was drawn.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::size_t attempts, const std::string& what)
      : Error("BudgetExhausted",
              what + " (after " + std::to_string(attempts) + " attempts)"),
        attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

// Source-text error with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& message)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(col) +
                                ": " + message),
        line_(line),
        col_(col) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace tgi
