// Copyright 2025 The hubsim Authors
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

#ifndef HUBSIM_CLI_HPP_
#define HUBSIM_CLI_HPP_

namespace hubsim {

/// Entry point of the hubsim tool. Exit codes: 0 ok, 1 failed check or
/// domain error, 2 usage error, 3 resource cap exceeded.
int run_cli(int argc, char** argv);

}  // namespace hubsim

#endif  // HUBSIM_CLI_HPP_
