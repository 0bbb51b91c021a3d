// Copyright 2026 The Richslate Authors
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

#ifndef RICHSLATE_CLI_H_
#define RICHSLATE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace richslate {

// Entry point of the `richslate` tool. `args` excludes the program name.
// Returns 0 on success, 1 on input or runtime errors, 2 on usage errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace richslate

#endif  // RICHSLATE_CLI_H_
