// Copyright 2026 The qlorenz Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types shared by every qlorenz module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qlorenz {

/// Root of the library's error hierarchy.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define QLORENZ_DEFINE_ERROR(Name)                                             \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}   \
    }

QLORENZ_DEFINE_ERROR(DimensionMismatch);
QLORENZ_DEFINE_ERROR(SingularMatrix);
QLORENZ_DEFINE_ERROR(RankDeficient);
QLORENZ_DEFINE_ERROR(NotPowerOfTwo);
QLORENZ_DEFINE_ERROR(ShapeMismatch);
QLORENZ_DEFINE_ERROR(InvalidArgument);
QLORENZ_DEFINE_ERROR(ZeroRightHandSide);
QLORENZ_DEFINE_ERROR(DegenerateImage);
QLORENZ_DEFINE_ERROR(NotNormalized);
QLORENZ_DEFINE_ERROR(Overflow);
QLORENZ_DEFINE_ERROR(LengthMismatch);

#undef QLORENZ_DEFINE_ERROR

} // namespace qlorenz
