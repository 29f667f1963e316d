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


#include "scopeflow/io/pgm.hpp"

#include <cctype>
#include <istream>
#include <ostream>

#include "scopeflow/io/text.hpp"

namespace scopeflow {

namespace {

// Next whitespace-delimited token, skipping '#' comments.
bool next_token(std::istream& in, std::string& token) {
  token.clear();
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      while (in.get(ch) && ch != '\n') {
      }
      if (!token.empty()) return true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) return true;
    } else {
      token.push_back(ch);
    }
  }
  return !token.empty();
}

long parse_int(std::istream& in, const char* what) {
  std::string token;
  if (!next_token(in, token)) throw ParseError(std::string("PGM: missing ") + what);
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) throw ParseError(std::string("PGM: invalid ") + what + " '" + token + "'");
  return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  std::string magic;
  if (!next_token(in, magic) || magic != "P2") {
    throw ParseError("PGM: expected plain 'P2' header, got '" + magic + "'");
  }
  GrayImage img;
  const long w = parse_int(in, "width");
  const long h = parse_int(in, "height");
  const long maxval = parse_int(in, "maxval");
  if (w <= 0 || h <= 0) throw ParseError("PGM: dimensions must be positive");
  if (maxval <= 0 || maxval > 65535) throw ParseError("PGM: maxval must be in 1..65535");
  img.width = static_cast<std::size_t>(w);
  img.height = static_cast<std::size_t>(h);
  img.maxval = static_cast<int>(maxval);
  img.pixels.reserve(img.width * img.height);
  for (std::size_t i = 0; i < img.width * img.height; ++i) {
    const long v = parse_int(in, "pixel");
    if (v < 0 || v > maxval) {
      throw ParseError("PGM: pixel " + std::to_string(i) + " value " + std::to_string(v) +
                       " outside 0.." + std::to_string(maxval));
    }
    img.pixels.push_back(static_cast<int>(v));
  }
  std::string extra;
  if (next_token(in, extra)) throw ParseError("PGM: trailing data after pixels");
  return img;
}

GrayImage read_pgm_file(const std::string& path) {
  auto in = open_input(path);
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  if (image.pixels.size() != image.width * image.height) {
    throw ContractViolation("image pixel count does not match its dimensions");
  }
  out << "P2\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  for (std::size_t r = 0; r < image.height; ++r) {
    for (std::size_t c = 0; c < image.width; ++c) {
      const bool line_start = c % 16 == 0;
      if (!line_start) out << ' ';
      out << image.at(r, c);
      if (c + 1 == image.width || c % 16 == 15) out << '\n';
    }
  }
}

void write_pgm_file(const std::string& path, const GrayImage& image) {
  auto out = open_output(path);
  write_pgm(out, image);
}

}  // namespace scopeflow
