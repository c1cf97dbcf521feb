/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace semiop {

/// Base class for every error raised by this library.
struct SemiopError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : SemiopError {
  using SemiopError::SemiopError;
};

struct NotHermitian : SemiopError {
  using SemiopError::SemiopError;
};

struct NotPositive : SemiopError {
  using SemiopError::SemiopError;
};

struct NoConvergence : SemiopError {
  using SemiopError::SemiopError;
};

/// Raised when an operator admits no finite A-seminorm, i.e. it lies outside
/// the class of operators with an A^{1/2}-adjoint.
struct NotMember : SemiopError {
  using SemiopError::SemiopError;
};

struct NotUnit : SemiopError {
  using SemiopError::SemiopError;
};

struct DimensionTooLarge : SemiopError {
  using SemiopError::SemiopError;
};

struct UnknownSuite : SemiopError {
  using SemiopError::SemiopError;
};

}  // namespace semiop
