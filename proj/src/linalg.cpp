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

#include "aqss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace aqss {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

void require_square(const ComplexMatrix& m, const char* context) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << context << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

int product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Row-major strides of a multi-index over `dims`.
std::vector<int> strides_of(std::span<const int> dims) {
  std::vector<int> strides(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;) {
    strides[s - 1] = strides[s] * dims[s];
  }
  return strides;
}

// Flat offsets of all multi-indices over the given subsystems.
std::vector<int> offsets_over(std::span<const int> subsystems,
                              std::span<const int> dims,
                              std::span<const int> strides) {
  std::vector<int> offsets{0};
  for (int s : subsystems) {
    std::vector<int> next;
    next.reserve(offsets.size() * dims[s]);
    for (int base : offsets) {
      for (int digit = 0; digit < dims[s]; ++digit) {
        next.push_back(base + digit * strides[s]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square(matrix_, "DensityMatrix");
  if (!matrix_.allFinite()) {
    throw InvalidStateError("DensityMatrix: non-finite entries");
  }
  const double herm = hermiticity_defect(matrix_);
  if (herm > kInvariantTolerance) {
    throw InvalidStateError(describe("DensityMatrix: not Hermitian", herm));
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kInvariantTolerance) {
    throw InvalidStateError(describe("DensityMatrix: trace is not 1", trace));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_,
                                                      Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kInvariantTolerance) {
    throw InvalidStateError(
        describe("DensityMatrix: negative eigenvalue", min_eig));
  }
}

DensityMatrix DensityMatrix::symmetrized(const ComplexMatrix& m) {
  require_square(m, "DensityMatrix::symmetrized");
  const double herm = hermiticity_defect(m);
  if (!(herm <= kInvariantTolerance)) {
    throw InvalidStateError(
        describe("DensityMatrix::symmetrized: Hermitian drift", herm));
  }
  return DensityMatrix(ComplexMatrix(0.5 * (m + m.adjoint())));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (psi.size() == 0) {
    throw DimensionError("DensityMatrix::pure: empty vector");
  }
  return DensityMatrix::symmetrized(psi * psi.adjoint());
}

Unitary::Unitary(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square(matrix_, "Unitary");
  if (!matrix_.allFinite()) {
    throw InvalidStateError("Unitary: non-finite entries");
  }
  const auto n = matrix_.rows();
  const double defect =
      max_abs(matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(n, n));
  if (defect > kInvariantTolerance) {
    throw InvalidStateError(describe("Unitary: U^dagger U != 1", defect));
  }
}

Unitary Unitary::adjoint() const { return Unitary(matrix_.adjoint()); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::symmetrized(tensor_product(a.matrix(), b.matrix()));
}

DensityMatrix tensor_product(std::span<const DensityMatrix> factors) {
  if (factors.empty()) {
    throw DimensionError("tensor_product: no factors");
  }
  ComplexMatrix acc = factors.front().matrix();
  for (const auto& f : factors.subspan(1)) {
    acc = tensor_product(acc, f.matrix());
  }
  return DensityMatrix::symmetrized(acc);
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Subsystem keep) {
  const int dims[] = {dim_a, dim_b};
  const int kept[] = {keep == Subsystem::A ? 0 : 1};
  return partial_trace(rho, dims, kept);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep) {
  if (dims.empty() ||
      std::any_of(dims.begin(), dims.end(), [](int x) { return x < 1; })) {
    throw DimensionError("partial_trace: subsystem dimensions must be >= 1");
  }
  if (product(dims) != rho.dim()) {
    std::ostringstream os;
    os << "partial_trace: malformed bipartition, subsystem dimensions multiply "
          "to "
       << product(dims) << " but the state has dimension " << rho.dim();
    throw DimensionError(os.str());
  }
  const int parts = static_cast<int>(dims.size());
  std::vector<bool> is_kept(parts, false);
  for (int s : keep) {
    if (s < 0 || s >= parts || is_kept[s]) {
      throw DimensionError("partial_trace: invalid or repeated kept subsystem");
    }
    is_kept[s] = true;
  }
  std::vector<int> kept, traced;
  for (int s = 0; s < parts; ++s) {
    (is_kept[s] ? kept : traced).push_back(s);
  }

  const auto strides = strides_of(dims);
  const auto keep_off = offsets_over(kept, dims, strides);
  const auto trace_off = offsets_over(traced, dims, strides);
  const auto& m = rho.matrix();
  const auto out_dim = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index c = 0; c < out_dim; ++c) {
    for (Eigen::Index r = 0; r < out_dim; ++r) {
      Complex sum{0.0, 0.0};
      for (int t : trace_off) {
        sum += m(keep_off[r] + t, keep_off[c] + t);
      }
      out(r, c) = sum;
    }
  }
  return DensityMatrix::symmetrized(out);
}

double trace_norm(const ComplexMatrix& x) {
  require_square(x, "trace_norm");
  Eigen::BDCSVD<ComplexMatrix> svd(x);
  return svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  return trace_norm(a.matrix() - b.matrix());
}

double hs_norm(const ComplexMatrix& x) { return x.norm(); }

Eigen::VectorXd eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : eigenvalues(rho)) {
    if (lambda > 0.0) {
      s -= lambda * std::log2(lambda);
    }
  }
  return std::max(s, 0.0);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  const auto rho_a = partial_trace(rho_ab, dim_a, dim_b, Subsystem::A);
  const auto rho_b = partial_trace(rho_ab, dim_a, dim_b, Subsystem::B);
  const double info = von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) -
                      von_neumann_entropy(rho_ab);
  if (info < -1e-8) {
    throw InvalidStateError(describe("mutual_information: negative", info));
  }
  return std::max(info, 0.0);
}

DensityMatrix maximally_entangled_state(int d) { return ghz_state(d, 2); }

DensityMatrix ghz_state(int d, int parties) {
  if (d < 2) {
    throw ParameterError("maximally entangled state requires d >= 2");
  }
  if (parties < 2) {
    throw ParameterError("maximally entangled state requires >= 2 parties");
  }
  Eigen::Index total = 1;
  Eigen::Index diagonal_step = 0;  // offset between |i...i> and |i+1...i+1>
  for (int p = 0; p < parties; ++p) {
    diagonal_step = diagonal_step * d + 1;
    total *= d;
  }
  ComplexVector psi = ComplexVector::Zero(total);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    psi(i * diagonal_step) = amp;
  }
  return DensityMatrix::pure(psi);
}

DensityMatrix maximally_mixed(int d) {
  if (d < 1) {
    throw ParameterError("maximally_mixed requires d >= 1");
  }
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix basis_state(int d, int k) {
  if (d < 1 || k < 0 || k >= d) {
    throw ParameterError("basis_state: index out of range");
  }
  ComplexVector e = ComplexVector::Zero(d);
  e(k) = 1.0;
  return DensityMatrix::pure(e);
}

void SeparableDecomposition::validate() const {
  if (weights.empty() || weights.size() != a_states.size() ||
      weights.size() != b_states.size()) {
    throw DimensionError(
        "SeparableDecomposition: weights and factor lists must be non-empty "
        "and equally long");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw ParameterError("SeparableDecomposition: negative weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ParameterError(
        describe("SeparableDecomposition: weights do not sum to 1", total));
  }
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (a_states[i].dim() != a_states[0].dim() ||
        b_states[i].dim() != b_states[0].dim()) {
      throw DimensionError("SeparableDecomposition: ragged factor dimensions");
    }
  }
}

DensityMatrix SeparableDecomposition::compose() const {
  validate();
  const auto dim = a_states[0].dim() * b_states[0].dim();
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i] * tensor_product(a_states[i].matrix(), b_states[i].matrix());
  }
  return DensityMatrix::symmetrized(acc);
}

}  // namespace aqss
