// features/archive.h

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

#ifndef SENAN_FEATURES_ARCHIVE_H_
#define SENAN_FEATURES_ARCHIVE_H_

#include <map>
#include <string>

#include "features/mfcc.h"

namespace senan {

// Per-utterance feature file: header `T D kind` as three little-endian
// 32-bit ints followed by T*D little-endian 64-bit floats.
void WriteFeatureFile(const std::string &path, const FeatureMatrix &f);
FeatureMatrix ReadFeatureFile(const std::string &path);

// Index file: one `utterance_id<TAB>path` line per entry, sorted by id.
void WriteFeatureIndex(const std::string &path,
                       const std::map<std::string, std::string> &index);
std::map<std::string, std::string> ReadFeatureIndex(const std::string &path);

}  // namespace senan

#endif  // SENAN_FEATURES_ARCHIVE_H_
