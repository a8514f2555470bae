// features/archive.cc

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

#include "features/archive.h"

#include <fstream>
#include <sstream>

#include "util/io.h"

namespace senan {

void WriteFeatureFile(const std::string &path, const FeatureMatrix &f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) ThrowError(ErrorCode::kIoError, "cannot write features: " + path);
  WriteLe<int32_t>(os, f.Frames());
  WriteLe<int32_t>(os, f.Dims());
  WriteLe<int32_t>(os, static_cast<int32_t>(f.kind));
  os.write(reinterpret_cast<const char *>(f.data.data.data()),
           static_cast<std::streamsize>(f.data.data.size() * sizeof(double)));
  if (!os) ThrowError(ErrorCode::kIoError, "feature write failed: " + path);
}

FeatureMatrix ReadFeatureFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) ThrowError(ErrorCode::kIoError, "cannot read features: " + path);
  int32_t t_frames = ReadLe<int32_t>(is);
  int32_t d = ReadLe<int32_t>(is);
  int32_t kind = ReadLe<int32_t>(is);
  SENAN_CHECK(t_frames > 0 && d > 0 && kind >= 0 && kind <= 5,
              ErrorCode::kIoError, "corrupt feature header: " + path);
  FeatureMatrix f;
  f.kind = static_cast<FeatureKind>(kind);
  f.data = Tensor({t_frames, d});
  is.read(reinterpret_cast<char *>(f.data.data.data()),
          static_cast<std::streamsize>(f.data.data.size() * sizeof(double)));
  SENAN_CHECK(static_cast<bool>(is), ErrorCode::kIoError,
              "feature file truncated: " + path);
  SENAN_CHECK(f.data.AllFinite(), ErrorCode::kIoError,
              "non-finite feature values: " + path);
  return f;
}

void WriteFeatureIndex(const std::string &path,
                       const std::map<std::string, std::string> &index) {
  std::ostringstream ss;
  for (const auto &[id, p] : index) ss << id << "\t" << p << "\n";
  WriteTextFile(path, ss.str());
}

std::map<std::string, std::string> ReadFeatureIndex(const std::string &path) {
  std::map<std::string, std::string> index;
  std::istringstream lines(ReadTextFile(path));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    SENAN_CHECK(fields.size() == 2, ErrorCode::kIoError,
                "malformed index line: " + line);
    index[fields[0]] = fields[1];
  }
  return index;
}

}  // namespace senan
