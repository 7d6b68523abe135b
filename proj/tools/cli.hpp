//
// Copyright 2026 The privpoly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVPOLY_TOOLS_CLI_HPP_
#define PRIVPOLY_TOOLS_CLI_HPP_

#include <iosfwd>

namespace privpoly {

// Entry point shared by the binary and the CLI tests.  Returns the process
// exit code: 0 success (and audit pass), 1 runtime failure or audit fail,
// 2 usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace privpoly

#endif  // PRIVPOLY_TOOLS_CLI_HPP_
