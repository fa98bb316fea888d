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

#ifndef RQCDESIGN_ERROR_H
#define RQCDESIGN_ERROR_H

#include <stdexcept>
#include <string>

namespace rqcdesign {

/// Malformed or inconsistent user input (bad coordinates, bit-length mismatch, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configured size or enumeration cap would be exceeded.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cut leaves one side of the lattice empty.
struct DegenerateBipartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No cut path survives the search thresholds.
struct NoFeasibleCut : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rqcdesign

#endif
