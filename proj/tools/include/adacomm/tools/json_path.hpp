// Copyright (c) 2026 The adacomm Authors. All Rights Reserved.
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

#include "json.hpp"

namespace adacomm::tools {

/// "schedule.tau" -> /schedule/tau
inline nlohmann::json::json_pointer dotted_to_pointer(std::string_view dotted) {
  std::string pointer;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const auto dot = dotted.find('.', start);
    const auto end = dot == std::string_view::npos ? dotted.size() : dot;
    pointer += '/';
    for (char ch : dotted.substr(start, end - start)) {
      if (ch == '~') {
        pointer += "~0";
      } else if (ch == '/') {
        pointer += "~1";
      } else {
        pointer += ch;
      }
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return nlohmann::json::json_pointer(pointer);
}

}  // namespace adacomm::tools
