/**
 * Copyright (c) 2026 The scopeflow Authors.
 *     All rights reserved.
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing,
 *  software distributed under the License is distributed on an "AS
 *  IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
 *  express or implied.  See the License for the specific language
 *  governing permissions and limitations under the License.
 */


#ifndef SCOPEFLOW_IO_PGM_HPP
#define SCOPEFLOW_IO_PGM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace scopeflow {

/// Grayscale image, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
  std::vector<int> pixels;

  int at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Plain (P2) PGM. '#' comments run to end of line. Throws ParseError.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::string& path);

/// Writes P2 with at most 16 values per line.
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm_file(const std::string& path, const GrayImage& image);

}  // namespace scopeflow

#endif
