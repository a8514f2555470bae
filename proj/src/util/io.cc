// util/io.cc

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

#include "util/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace senan {

std::string ReadTextFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) ThrowError(ErrorCode::kIoError, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string &path, const std::string &contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) ThrowError(ErrorCode::kIoError, "cannot open for writing: " + path);
  os << contents;
  if (!os) ThrowError(ErrorCode::kIoError, "write failed: " + path);
}

std::vector<std::string> SplitString(const std::string &s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

void EnsureDirectory(const std::string &path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) ThrowError(ErrorCode::kIoError, "cannot create directory: " + path);
  if (!std::filesystem::is_directory(path))
    ThrowError(ErrorCode::kIoError, "not a directory: " + path);
}

std::string JoinPath(const std::string &a, const std::string &b) {
  return (std::filesystem::path(a) / b).string();
}

}  // namespace senan
