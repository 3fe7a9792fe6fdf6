// Copyright 2026 The labgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace labgrade::textsim {

// Lowercased word tokens. Text is decoded as UTF-8 and split on every code
// point that is not a letter or digit; ASCII, Latin-1, Latin Extended-A,
// Greek and Cyrillic capitals are folded. Bytes that are not valid UTF-8 act
// as separators. No stemming.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace labgrade::textsim
