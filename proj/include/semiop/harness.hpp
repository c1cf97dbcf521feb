/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiop/orthogonality.hpp"

namespace semiop {

/// Parameters for one seeded random instance.
struct InstanceSpec {
  std::size_t n = 4;         // 2..8
  std::size_t rank_a = 4;    // 1..n
  std::uint64_t seed = 1;
  double magnitude = 1.0;
};

struct FailureRecord {
  int trial = 0;
  std::uint64_t seed = 0;    // master suite seed; trial index replays the case
  std::string digest;        // instance digest, hex
  std::string observed;
  double tolerance = 0.0;
  std::string detail;
};

struct NoteRecord {
  int trial = 0;
  std::string text;
};

struct PropertyReport {
  std::string suite;
  int trials = 0;
  int passes = 0;
  std::vector<FailureRecord> failures;
  std::vector<NoteRecord> notes;
  double elapsed = 0.0;  // seconds; excluded from determinism comparisons
};

/// A = (G*G + shift) truncated to rank_a through its eigendecomposition.
/// Deterministic in spec.seed.
PositiveOperator gen_psd(const InstanceSpec& spec);

/// Random operator with a guaranteed finite A-seminorm:
/// T = P G P + W W* G with P the range projection and W the kernel basis.
ComplexMatrix gen_member(const InstanceSpec& spec, const PositiveOperator& a);

/// The membership projection used by gen_member, applicable to any operator.
ComplexMatrix member_correction(const ComplexMatrix& t, const PositiveOperator& a);

/// Known suites: seminorm-axioms, sandwich, r4-bounds, endpoints, oracle-n2,
/// t5-equality, t7-equivalence, corollaries. Deterministic given
/// (name, trials, seed). Throws UnknownSuite otherwise.
PropertyReport run_suite(const std::string& name, int trials, std::uint64_t seed);

/// Aggregate statistics of the orthogonality-equivalence suite, shared with
/// the acceptance gate: certificate failures must be zero and theta-condition
/// agreement must stay at or above 95% with only in-band disagreements.
struct T7Stats {
  int pairs = 0;
  int orthogonal_true = 0;
  int cert_checked = 0;
  int cert_failures = 0;
  int theta_compared = 0;
  int theta_agreements = 0;
  int theta_tolerated = 0;  // disagreements inside both declared bands
  int theta_hard = 0;       // disagreements outside the bands (failures)
};

T7Stats run_t7_suite(int trials, std::uint64_t seed, PropertyReport* report);

/// One record per failure, one summary line per suite; the elapsed line is
/// optional so byte-identical reports can be compared across runs.
std::string report_to_text(const PropertyReport& report, bool include_elapsed = true);

}  // namespace semiop
