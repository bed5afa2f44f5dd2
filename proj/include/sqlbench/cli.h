// Copyright 2026 The sqlbench Authors
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

#ifndef SQLBENCH_CLI_H_
#define SQLBENCH_CLI_H_

#include <ostream>

namespace sqlbench {

// Entry point of the sqlbench tool. Returns the process exit status:
// 0 on success, 2 config, 3 data, 4 endpoint, 5 internal. Failures print one
// JSON object line on `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace sqlbench

#endif  // SQLBENCH_CLI_H_
