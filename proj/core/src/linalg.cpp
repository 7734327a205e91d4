// Copyright (C) 2026 The lorantk Authors
// SPDX-License-Identifier: Apache-2.0

#include "lorantk/linalg.hpp"

#include <cmath>

namespace lorantk {

Vector singular_values(const Matrix& a) {
  if (a.size() == 0) return Vector();
  if (!all_finite(a)) throw NumericalError("singular_values: non-finite input");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

double nuclear_norm(const Matrix& a) { return singular_values(a).sum(); }

int numerical_rank(const Matrix& a, double rel_tol) {
  const Vector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

double min_eigenvalue(const Matrix& sym) {
  if (sym.rows() != sym.cols() || sym.rows() == 0)
    throw DimensionError("min_eigenvalue: expected a non-empty square matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver failed");
  return es.eigenvalues()(0);
}

void require_shape(const Matrix& a, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what) {
  if (a.rows() != rows || a.cols() != cols) {
    throw DimensionError(what + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace lorantk
