// Copyright 2026 The pdspace Authors
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

#ifndef PDSPACE_SRC_BUILTIN_SPACES_H_
#define PDSPACE_SRC_BUILTIN_SPACES_H_

#include <optional>
#include <string_view>

#include "pdspace/metric_pair.h"

namespace pdspace::internal {

// Returns the built-in space for `name`, or nullptr if `name` is not a
// built-in. Throws InvalidArgument for malformed parameters.
SpaceHandle make_builtin_space(std::string_view name, std::optional<std::string_view> params);

bool is_builtin_name(std::string_view name);

}  // namespace pdspace::internal

#endif  // PDSPACE_SRC_BUILTIN_SPACES_H_
