// Copyright 2026 The aqss-lab Authors
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
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aqss/errors.hpp"

namespace aqss {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance for the Hermiticity, trace, positivity and unitarity invariants.
inline constexpr double kInvariantTolerance = 1e-10;

/// Largest entrywise modulus of a matrix (max-norm).
double max_abs(const ComplexMatrix& m);

/// Largest entrywise modulus of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/**
 * A Hermitian, positive semidefinite, unit-trace matrix.
 *
 * Construction validates the invariants within kInvariantTolerance and
 * throws InvalidStateError otherwise; the value is immutable afterwards.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Re-symmetrizes (M + M^dagger)/2 before validating. Used after channel
  /// application; drift beyond the tolerance is still rejected because the
  /// Hermiticity check runs on the input first.
  static DensityMatrix symmetrized(const ComplexMatrix& m);

  /// |psi><psi| for a unit vector psi.
  static DensityMatrix pure(const ComplexVector& psi);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// A square matrix with U^dagger U = 1 within kInvariantTolerance.
class Unitary {
 public:
  explicit Unitary(ComplexMatrix m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Unitary adjoint() const;

 private:
  ComplexMatrix matrix_;
};

/// Which half of a bipartition survives a partial trace.
enum class Subsystem { A, B };

/// Kronecker product: result(i*rb + k, j*cb + l) = a(i, j) * b(k, l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Tensor product of several states, first factor most significant.
DensityMatrix tensor_product(std::span<const DensityMatrix> factors);

/// Reduced state of a bipartite rho on the kept half.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Subsystem keep);

/// Reduced state of a multipartite rho on the listed subsystems (any order,
/// duplicates rejected); kept subsystems stay in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep);

/// Schatten-1 norm, the sum of singular values. Square input only.
double trace_norm(const ComplexMatrix& x);

/// ||a - b||_1 (no factor 1/2).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Frobenius norm sqrt(tr X^dagger X).
double hs_norm(const ComplexMatrix& x);

/// Eigenvalues of a density matrix in ascending order.
Eigen::VectorXd eigenvalues(const DensityMatrix& rho);

/// -sum lambda log2 lambda, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// tr(rho^2).
double purity(const DensityMatrix& rho);

/// S(A) + S(B) - S(AB) in bits, tiny negative values clamped to 0.
double mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b);

/// (1/d) sum_{i,j} |ii><jj| on C^d (x) C^d.
DensityMatrix maximally_entangled_state(int d);

/// (1/d) sum_{i,j} |i...i><j...j| on m copies of C^d. m = 2 coincides with
/// maximally_entangled_state(d).
DensityMatrix ghz_state(int d, int parties);

/// 1/d.
DensityMatrix maximally_mixed(int d);

/// Computational basis projector |k><k| on C^d.
DensityMatrix basis_state(int d, int k);

/// An explicit separable state sum_i p_i a_i (x) b_i.
struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<DensityMatrix> a_states;
  std::vector<DensityMatrix> b_states;

  /// Throws ParameterError when the weights are negative or do not sum to 1
  /// within 1e-12, DimensionError on ragged factor lists.
  void validate() const;
  DensityMatrix compose() const;
};

}  // namespace aqss
