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

#include "aqss/random.hpp"

#include <cmath>
#include <numbers>

namespace aqss {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seed_seq(seed, stream);
  return std::mt19937_64(seq);
}

void require_dim(int d, int minimum, const char* context) {
  if (d < minimum) {
    throw ParameterError(std::string(context) + ": dimension must be >= " +
                         std::to_string(minimum));
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(make_engine(master_seed, stream_id)) {}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) {
    throw ParameterError("uniform_index: empty range");
  }
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

ComplexMatrix ginibre_matrix(int d, RngStream& rng) {
  require_dim(d, 1, "ginibre_matrix");
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  ComplexMatrix z(d, d);
  // Fill row-major so the draw order does not depend on Eigen's storage.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = normal(rng.engine());
      const double im = normal(rng.engine());
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

Unitary haar_unitary(int d, RngStream& rng) {
  require_dim(d, 1, "haar_unitary");
  for (;;) {
    const ComplexMatrix z = ginibre_matrix(d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    ComplexVector phases(d);
    bool degenerate = false;
    for (int i = 0; i < d; ++i) {
      const double mag = std::abs(r(i, i));
      if (!(mag > 1e-300)) {
        degenerate = true;
        break;
      }
      phases(i) = r(i, i) / mag;
    }
    if (degenerate) {
      continue;
    }
    ComplexMatrix q = qr.householderQ();
    return Unitary(q * phases.asDiagonal());
  }
}

std::vector<Unitary> weyl_heisenberg_operators(int d) {
  require_dim(d, 2, "weyl_heisenberg_operators");
  std::vector<Unitary> ops;
  ops.reserve(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      for (int k = 0; k < d; ++k) {
        // X^a Z^b |k> = omega^{bk} |k + a>; reduce the exponent mod d so the
        // phases are exact roots of unity.
        const int exponent = (b * k) % d;
        const double angle = 2.0 * std::numbers::pi * exponent / d;
        m((k + a) % d, k) = std::polar(1.0, angle);
      }
      ops.emplace_back(std::move(m));
    }
  }
  return ops;
}

DensityMatrix random_pure_state(int d, RngStream& rng) {
  const Unitary u = haar_unitary(d, rng);
  return DensityMatrix::pure(u.matrix().col(0));
}

DensityMatrix random_product_pure_state(int dim_a, int dim_b, RngStream& rng) {
  const int dims[] = {dim_a, dim_b};
  return random_product_pure_state(dims, rng);
}

DensityMatrix random_product_pure_state(std::span<const int> dims,
                                        RngStream& rng) {
  std::vector<DensityMatrix> factors;
  factors.reserve(dims.size());
  for (int d : dims) {
    factors.push_back(random_pure_state(d, rng));
  }
  return tensor_product(factors);
}

SeparableDecomposition random_separable_decomposition(int dim_a, int dim_b,
                                                      int k_terms,
                                                      RngStream& rng) {
  if (k_terms < 1) {
    throw ParameterError("random_separable_state: k_terms must be >= 1");
  }
  SeparableDecomposition dec;
  std::exponential_distribution<double> exponential(1.0);
  double total = 0.0;
  for (int i = 0; i < k_terms; ++i) {
    const double w = exponential(rng.engine());
    dec.weights.push_back(w);
    total += w;
  }
  for (double& w : dec.weights) {
    w /= total;
  }
  for (int i = 0; i < k_terms; ++i) {
    dec.a_states.push_back(random_pure_state(dim_a, rng));
    dec.b_states.push_back(random_pure_state(dim_b, rng));
  }
  return dec;
}

DensityMatrix random_separable_state(int dim_a, int dim_b, int k_terms,
                                     RngStream& rng) {
  return random_separable_decomposition(dim_a, dim_b, k_terms, rng).compose();
}

}  // namespace aqss
