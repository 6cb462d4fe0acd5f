// Copyright 2026 The pce Authors. All rights reserved.
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

#ifndef PCE_CLI_HPP_
#define PCE_CLI_HPP_

#include <ostream>

namespace pce {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 input error, 2 rejected or oracle disagreement,
// 3 search found nothing.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pce

#endif  // PCE_CLI_HPP_
