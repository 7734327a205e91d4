// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lorantk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular values in non-increasing order.
Vector singular_values(const Matrix& a);

/// Sum of singular values.
double nuclear_norm(const Matrix& a);

/// Number of singular values strictly above `rel_tol * sigma_max`.
/// Returns 0 for the zero matrix.
int numerical_rank(const Matrix& a, double rel_tol = 1e-8);

/// Smallest eigenvalue of a symmetric matrix (lower triangle is read).
double min_eigenvalue(const Matrix& sym);

/// Frobenius inner product.
inline double frobenius_dot(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b).sum();
}

/// Throws DimensionError unless a is rows x cols.
void require_shape(const Matrix& a, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what);

bool all_finite(const Matrix& a);

// Stateless 64-bit mixer used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace lorantk
