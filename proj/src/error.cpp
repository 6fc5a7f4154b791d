// Copyright 2026 The covnot Authors
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

#include "covnot/error.hpp"

#include <sstream>

namespace covnot {

namespace {

std::string describe_margins(const std::array<double, 4>& m) {
  std::ostringstream msg;
  msg << "channel is not completely positive; margins (" << m[0] << ", "
      << m[1] << ", " << m[2] << ", " << m[3] << ")";
  return msg.str();
}

std::string with_value(const char* what, double value) {
  std::ostringstream msg;
  msg << what << value;
  return msg.str();
}

}  // namespace

NotCompletelyPositive::NotCompletelyPositive(const std::array<double, 4>& margins)
    : Error(describe_margins(margins)), margins_(margins) {}

NotCovariant::NotCovariant(double residual)
    : Error(with_value("black box is not a covariant channel; residual ", residual)),
      residual_(residual) {}

NotTracePreserving::NotTracePreserving(double defect)
    : Error(with_value("Kraus set is not trace preserving; defect ", defect)),
      defect_(defect) {}

}  // namespace covnot
