/*******************************************************************************
* Copyright 2026 The divrisk Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#ifndef DIVRISK_SRC_CORE_SIMPLEX_HPP
#define DIVRISK_SRC_CORE_SIMPLEX_HPP

#include <span>
#include <vector>

namespace divrisk::detail {

/// Euclidean projection onto { w >= 0, sum w = 1 } (sort-based).
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace divrisk::detail

#endif  // DIVRISK_SRC_CORE_SIMPLEX_HPP
