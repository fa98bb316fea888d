// Copyright 2026 The rqcdesign Authors
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

#ifndef RQCDESIGN_CLI_H
#define RQCDESIGN_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace rqcdesign {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitCap = 3,
    kExitInternal = 4,
};

/// Entry point of the rqcdesign command. args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace rqcdesign

#endif
