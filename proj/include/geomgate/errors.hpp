// Copyright 2026 The geomgate Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace geomgate {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GEOMGATE_ERROR_TYPE(Name)                                \
  struct Name : Error {                                          \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

GEOMGATE_ERROR_TYPE(NonHermitianInput);
GEOMGATE_ERROR_TYPE(DimensionMismatch);
GEOMGATE_ERROR_TYPE(IndexOutOfRange);
GEOMGATE_ERROR_TYPE(UnsupportedGate);
GEOMGATE_ERROR_TYPE(ParseError);
GEOMGATE_ERROR_TYPE(SingularPath);
GEOMGATE_ERROR_TYPE(BoundaryTime);
GEOMGATE_ERROR_TYPE(EvolutionFailed);
GEOMGATE_ERROR_TYPE(StepTooCoarse);
GEOMGATE_ERROR_TYPE(DegenerateFit);
GEOMGATE_ERROR_TYPE(CutoffTooLow);
GEOMGATE_ERROR_TYPE(AmplitudeUnreachable);
GEOMGATE_ERROR_TYPE(NoPhaseSolution);
GEOMGATE_ERROR_TYPE(ConvergenceFailure);
GEOMGATE_ERROR_TYPE(BranchExceeded);
GEOMGATE_ERROR_TYPE(UnphysicalChannel);
GEOMGATE_ERROR_TYPE(FitFailure);

#undef GEOMGATE_ERROR_TYPE

}  // namespace geomgate
