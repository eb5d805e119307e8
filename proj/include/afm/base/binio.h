// afm/base/binio.h

// Copyright 2026  The AFM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AFM_BASE_BINIO_H_
#define AFM_BASE_BINIO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "afm/base/error.h"

// Little-endian primitives for the binary feature and checkpoint formats.

namespace afm {

static_assert(std::endian::native == std::endian::little,
              "binary formats are little-endian; big-endian hosts need swaps");

inline void write_u8(std::ostream& os, uint8_t v) {
  os.write(reinterpret_cast<const char*>(&v), 1);
}

inline void write_u32(std::ostream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

inline void write_f32(std::ostream& os, float v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

inline uint8_t read_u8(std::istream& is, const std::string& what) {
  uint8_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 1))
    throw IoError("truncated read of " + what);
  return v;
}

inline uint32_t read_u32(std::istream& is, const std::string& what) {
  uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 4))
    throw IoError("truncated read of " + what);
  return v;
}

inline float read_f32(std::istream& is, const std::string& what) {
  float v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 4))
    throw IoError("truncated read of " + what);
  return v;
}

inline void write_magic(std::ostream& os, const char magic[9]) {
  os.write(magic, 8);
}

inline void expect_magic(std::istream& is, const char magic[9],
                         const std::string& path) {
  char got[8];
  if (!is.read(got, 8) || std::memcmp(got, magic, 8) != 0)
    throw IoError(strcat(path, ": bad magic, expected ", magic));
}

}  // namespace afm

#endif  // AFM_BASE_BINIO_H_
