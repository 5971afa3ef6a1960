// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfwgan/distributions.hpp"
#include "cfwgan/linalg.hpp"

namespace cfwgan {

// M x d data, one sample per row.
struct SampleMatrix {
  Matrix data;
  std::string provenance;

  std::size_t rows() const noexcept { return data.rows(); }
  std::size_t cols() const noexcept { return data.cols(); }
  std::vector<double> column(std::size_t j) const;
};

// Either i.i.d. entries from a 1-D law or AR(1) rows across the coordinates.
struct SyntheticSpec {
  std::optional<ContinuousDistribution1D> iid;
  Ar1Spec ar;

  // "iid:<law spec>" or "ar:<phi>:gaussian" / "ar:<phi>:student:<dof>".
  static SyntheticSpec parse(std::string_view text);
  std::string describe() const;
};

// Row i draws from stream (seed, i), so the matrix is reproducible and rows
// can be generated in any order.
SampleMatrix sample_matrix(const SyntheticSpec& spec, std::size_t d, std::size_t m,
                           std::uint64_t seed);

// Subtracts the column means in place.
void center_columns(SampleMatrix& samples);

// 17 significant digits, '.' decimal separator.
std::string format_double(double v);

void write_csv(const SampleMatrix& samples, const std::string& path, bool header = true);
// Skips '#' comment lines and one optional non-numeric header row.
SampleMatrix read_csv(const std::string& path);

}  // namespace cfwgan
