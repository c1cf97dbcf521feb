/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>

#include "semiop/matrix.hpp"

namespace semiop {

/// Raised on unreadable files, malformed documents, or schema violations.
struct MatrixIoError : SemiopError {
  using SemiopError::SemiopError;
};

/// Matrix files are JSON documents
///   { "n": 2, "entries": [ [ [re, im], [re, im] ], ... ] }
/// with entries row-major and each entry a [re, im] pair. Serialization uses
/// shortest round-trip decimal printing, so write/read is bit-exact.
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

ComplexMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& m);

}  // namespace semiop
