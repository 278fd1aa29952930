// Copyright 2026 The npriv Authors
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

#ifndef NPRIV_CLI_HPP
#define NPRIV_CLI_HPP

#include <iosfwd>

namespace npriv::cli {

// Runs one subcommand (audit | synth | measure | hypothesis | capacity |
// t4check | game | panel). Returns 0 on success, 1 on usage/precondition/
// format errors, 2 on internal invariant violations.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace npriv::cli

#endif  // NPRIV_CLI_HPP
