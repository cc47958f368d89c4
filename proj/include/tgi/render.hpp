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

#include <array>
#include <sstream>
#include <string>

#include "tgi/grid.hpp"

namespace tgi {

struct Rgb {
  int r, g, b;
};

// Conventional ARC display colors, indexed by color value.
inline constexpr std::array<Rgb, 10> kPaletteRgb{{
    {0x00, 0x00, 0x00},
    {0x00, 0x74, 0xD9},
    {0xFF, 0x41, 0x36},
    {0x2E, 0xCC, 0x40},
    {0xFF, 0xDC, 0x00},
    {0xAA, 0xAA, 0xAA},
    {0xF0, 0x12, 0xBE},
    {0xFF, 0x85, 0x1B},
    {0x7F, 0xDB, 0xFF},
    {0x87, 0x0C, 0x25},
}};

inline std::string hex_color(Color c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const Rgb& p = kPaletteRgb[c.value()];
  std::string out = "#";
  for (int v : {p.r, p.g, p.b}) {
    out += kDigits[v >> 4];
    out += kDigits[v & 15];
  }
  return out;
}

// One <rect> per cell and nothing else drawn as a rect. Pairs run left to
// right, train before test, input above output.
inline std::string render_svg(const Episode& e, int cell = 16) {
  constexpr int kMargin = 10, kGap = 20, kLabel = 16;
  int width = kMargin, height = 0;
  e.for_each_pair([&](const Pair& p, bool, std::size_t) {
    width += std::max(p.input.width(), p.output.width()) * cell + kGap;
    height = std::max(height, (p.input.height() + p.output.height()) * cell);
  });
  height += 2 * kMargin + kLabel + kGap;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" style=\"background:#ffffff\">\n";
  auto grid = [&](const Grid& g, int x0, int y0) {
    for (int r = 0; r < g.height(); ++r) {
      for (int c = 0; c < g.width(); ++c) {
        out << "<rect x=\"" << x0 + c * cell << "\" y=\"" << y0 + r * cell << "\" width=\""
            << cell << "\" height=\"" << cell << "\" fill=\"" << hex_color(g.at(r, c))
            << "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
      }
    }
  };
  int x = kMargin;
  e.for_each_pair([&](const Pair& p, bool is_test, std::size_t i) {
    out << "<text x=\"" << x << "\" y=\"" << kMargin + 12
        << "\" font-family=\"monospace\" font-size=\"12\">" << (is_test ? "test " : "train ") << i
        << "</text>\n";
    const int top = kMargin + kLabel;
    grid(p.input, x, top);
    grid(p.output, x, top + p.input.height() * cell + kGap);
    x += std::max(p.input.width(), p.output.width()) * cell + kGap;
  });
  out << "</svg>\n";
  return out.str();
}

inline std::string render_ansi(const Episode& e) {
  std::ostringstream out;
  auto grid = [&](const Grid& g) {
    for (int r = 0; r < g.height(); ++r) {
      for (int c = 0; c < g.width(); ++c) {
        const Rgb& p = kPaletteRgb[g.at(r, c).value()];
        out << "\x1b[48;2;" << p.r << ';' << p.g << ';' << p.b << "m  ";
      }
      out << "\x1b[0m\n";
    }
  };
  e.for_each_pair([&](const Pair& p, bool is_test, std::size_t i) {
    out << (is_test ? "test " : "train ") << i << " input\n";
    grid(p.input);
    out << (is_test ? "test " : "train ") << i << " output\n";
    grid(p.output);
    out << '\n';
  });
  return out.str();
}

}  // namespace tgi
