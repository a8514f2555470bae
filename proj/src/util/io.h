// util/io.h

// Copyright 2026  The senan authors

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

#ifndef SENAN_UTIL_IO_H_
#define SENAN_UTIL_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "util/error.h"

namespace senan {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts unsupported");

template <typename T>
void WriteLe(std::ostream &os, T value) {
  os.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
T ReadLe(std::istream &is) {
  T value;
  is.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!is) ThrowError(ErrorCode::kIoError, "unexpected end of stream");
  return value;
}

std::string ReadTextFile(const std::string &path);
void WriteTextFile(const std::string &path, const std::string &contents);

std::vector<std::string> SplitString(const std::string &s, char delim);

// Creates the directory (and parents). Throws IoError on failure.
void EnsureDirectory(const std::string &path);

std::string JoinPath(const std::string &a, const std::string &b);

}  // namespace senan

#endif  // SENAN_UTIL_IO_H_
