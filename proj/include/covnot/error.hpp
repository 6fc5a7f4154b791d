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

#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace covnot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NotCompletelyPositive : public Error {
 public:
  explicit NotCompletelyPositive(const std::array<double, 4>& margins);
  const std::array<double, 4>& margins() const noexcept { return margins_; }

 private:
  std::array<double, 4> margins_;
};

class NotCovariant : public Error {
 public:
  explicit NotCovariant(double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotTracePreserving : public Error {
 public:
  explicit NotTracePreserving(double defect);
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class NonUnitNorm : public Error {
 public:
  using Error::Error;
};

class MixedFamilies : public Error {
 public:
  using Error::Error;
};

}  // namespace covnot
