// Copyright 2026 The aqclab Authors
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

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace aqc {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using SparseCMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

// Full dense diagonalization is used up to this many qubits.
inline constexpr int kDenseCutoffQubits = 12;
// Hard ceiling for any sparse realization.
inline constexpr int kMaxSparseQubits = 26;

inline constexpr double kDenseEigenTol = 1e-10;
inline constexpr double kIterativeEigenTol = 1e-8;
inline constexpr double kHermiticityTol = 1e-12;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A size limit (qubits, clock dimension, enumeration budget) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations. Carries the best residual seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Real-time propagation lost unitarity beyond tolerance; dt is too large.
class NormDriftError : public Error {
 public:
  NormDriftError(const std::string& what, double drift)
      : Error(what), drift_(drift) {}
  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

/// An eigenvalue required to be isolated is (numerically) degenerate.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int log2_exact(std::uint64_t x) {
  if (!is_power_of_two(x)) throw InvalidArgument("dimension is not a power of two");
  int k = 0;
  while ((std::uint64_t{1} << k) != x) ++k;
  return k;
}

}  // namespace aqc
