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

#include "aqss/channels.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace aqss {

namespace {

using Eigen::Dynamic;
using Eigen::Index;
using StridedMap = Eigen::Map<ComplexMatrix, 0, Eigen::Stride<Dynamic, Dynamic>>;
using ConstStridedMap =
    Eigen::Map<const ComplexMatrix, 0, Eigen::Stride<Dynamic, Dynamic>>;

void require_same_dim(int channel_dim, int state_dim, const char* context) {
  if (channel_dim != state_dim) {
    std::ostringstream os;
    os << context << ": channel acts on dimension " << channel_dim
       << " but the state has dimension " << state_dim;
    throw DimensionError(os.str());
  }
}

ComplexMatrix accumulate_conjugations(const RandomUnitaryChannel& channel,
                                      const ComplexMatrix& m,
                                      std::span<const int> dims, std::size_t k) {
  ComplexMatrix acc = ComplexMatrix::Zero(m.rows(), m.cols());
  const auto& unitaries = channel.unitaries();
  const auto& probs = channel.probs();
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    acc += probs[i] * conjugate_subsystem(m, unitaries[i].matrix(), dims, k);
  }
  return acc;
}

}  // namespace

std::uint64_t required_n(int d, double epsilon) {
  if (d < 2) {
    throw ParameterError("required_n: d must be >= 2");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("required_n: epsilon must lie in (0, 1), got " +
                         std::to_string(epsilon));
  }
  const double n = std::ceil(150.0 * static_cast<double>(d) / (epsilon * epsilon));
  if (!(n < 0x1p63)) {
    throw ParameterError("required_n: channel size overflows 64 bits");
  }
  return static_cast<std::uint64_t>(n);
}

RandomUnitaryChannel::RandomUnitaryChannel(std::vector<Unitary> unitaries,
                                           std::vector<double> probs)
    : dim_(0), unitaries_(std::move(unitaries)), probs_(std::move(probs)) {
  if (unitaries_.empty()) {
    throw ParameterError("RandomUnitaryChannel: needs at least one unitary");
  }
  if (unitaries_.size() != probs_.size()) {
    throw DimensionError(
        "RandomUnitaryChannel: unitary and probability lists differ in length");
  }
  dim_ = unitaries_.front().dim();
  if (dim_ < 2) {
    throw ParameterError("RandomUnitaryChannel: dimension must be >= 2");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    if (unitaries_[i].dim() != dim_) {
      throw DimensionError("RandomUnitaryChannel: unitaries differ in dimension");
    }
    if (!(probs_[i] >= 0.0)) {
      throw ParameterError("RandomUnitaryChannel: negative probability");
    }
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ParameterError("RandomUnitaryChannel: probabilities sum to " +
                         std::to_string(total));
  }
}

RandomUnitaryChannel RandomUnitaryChannel::uniform(std::vector<Unitary> unitaries) {
  const auto n = unitaries.size();
  std::vector<double> probs(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return RandomUnitaryChannel(std::move(unitaries), std::move(probs));
}

const Unitary& RandomUnitaryChannel::unitary(std::size_t key) const {
  if (key >= unitaries_.size()) {
    throw KeyError("key index " + std::to_string(key) + " outside [0, " +
                   std::to_string(unitaries_.size()) + ")");
  }
  return unitaries_[key];
}

ChannelFamily::ChannelFamily(std::vector<RandomUnitaryChannel> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) {
    throw ParameterError("ChannelFamily: needs at least one part");
  }
}

std::vector<int> ChannelFamily::dims() const {
  std::vector<int> dims;
  dims.reserve(parts_.size());
  for (const auto& p : parts_) {
    dims.push_back(p.dim());
  }
  return dims;
}

int ChannelFamily::total_dim() const {
  const auto d = dims();
  return std::accumulate(d.begin(), d.end(), 1, std::multiplies<>());
}

RandomUnitaryChannel sample_ruc(int d, std::uint64_t n, RngStream& rng) {
  if (n < 1) {
    throw ParameterError("sample_ruc: n must be >= 1");
  }
  if (d < 2) {
    throw ParameterError("sample_ruc: dimension must be >= 2");
  }
  std::vector<Unitary> unitaries;
  unitaries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    unitaries.push_back(haar_unitary(d, rng));
  }
  return RandomUnitaryChannel::uniform(std::move(unitaries));
}

RandomUnitaryChannel perfect_pqc(int d) {
  return RandomUnitaryChannel::uniform(weyl_heisenberg_operators(d));
}

RandomUnitaryChannel identity_channel(int d) {
  std::vector<Unitary> one;
  one.emplace_back(ComplexMatrix::Identity(d, d));
  return RandomUnitaryChannel::uniform(std::move(one));
}

ComplexMatrix conjugate_subsystem(const ComplexMatrix& m, const ComplexMatrix& u,
                                  std::span<const int> dims, std::size_t k) {
  if (k >= dims.size()) {
    throw DimensionError("conjugate_subsystem: subsystem index out of range");
  }
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1},
                                      std::multiplies<>());
  if (m.rows() != total || m.cols() != total) {
    throw DimensionError("conjugate_subsystem: matrix does not match dims");
  }
  const Index dk = dims[k];
  if (u.rows() != dk || u.cols() != dk) {
    throw DimensionError("conjugate_subsystem: operator does not match subsystem");
  }
  Index inner = 1;
  for (std::size_t s = k + 1; s < dims.size(); ++s) {
    inner *= dims[s];
  }
  const Index outer = total / (dk * inner);
  const Index block = dk * inner;

  // Rows (o, b, in) for fixed (o, in) form a dk x total slice with row stride
  // `inner`; left multiplication by U acts on that slice.
  ComplexMatrix left(total, total);
  for (Index o = 0; o < outer; ++o) {
    for (Index in = 0; in < inner; ++in) {
      const Index offset = o * block + in;
      const Eigen::Stride<Dynamic, Dynamic> stride(total, inner);
      ConstStridedMap src(m.data() + offset, dk, total, stride);
      StridedMap dst(left.data() + offset, dk, total, stride);
      dst.noalias() = u * src;
    }
  }

  // Columns (o, b, in) likewise form a total x dk slice; multiply by U^dagger.
  const ComplexMatrix u_dagger = u.adjoint();
  ComplexMatrix out(total, total);
  for (Index o = 0; o < outer; ++o) {
    for (Index in = 0; in < inner; ++in) {
      const Index offset = (o * block + in) * total;
      const Eigen::Stride<Dynamic, Dynamic> stride(inner * total, 1);
      ConstStridedMap src(left.data() + offset, total, dk, stride);
      StridedMap dst(out.data() + offset, total, dk, stride);
      dst.noalias() = src * u_dagger;
    }
  }
  return out;
}

DensityMatrix apply(const RandomUnitaryChannel& channel, const DensityMatrix& rho) {
  require_same_dim(channel.dim(), rho.dim(), "apply");
  const int dims[] = {rho.dim()};
  return DensityMatrix::symmetrized(
      accumulate_conjugations(channel, rho.matrix(), dims, 0));
}

DensityMatrix apply_to_subsystem(const RandomUnitaryChannel& channel,
                                 const DensityMatrix& rho,
                                 std::span<const int> dims, std::size_t k) {
  if (k >= dims.size()) {
    throw DimensionError("apply_to_subsystem: subsystem index out of range");
  }
  require_same_dim(channel.dim(), dims[k], "apply_to_subsystem");
  const int total =
      std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  require_same_dim(total, rho.dim(), "apply_to_subsystem");
  return DensityMatrix::symmetrized(
      accumulate_conjugations(channel, rho.matrix(), dims, k));
}

DensityMatrix apply_product(const ChannelFamily& family, const DensityMatrix& rho) {
  const auto dims = family.dims();
  require_same_dim(family.total_dim(), rho.dim(), "apply_product");
  ComplexMatrix state = rho.matrix();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    state = accumulate_conjugations(family.part(k), state, dims, k);
  }
  return DensityMatrix::symmetrized(state);
}

double epsilon_randomizing_distance(const RandomUnitaryChannel& channel,
                                    const DensityMatrix& rho) {
  require_same_dim(channel.dim(), rho.dim(), "epsilon_randomizing_distance");
  return trace_distance(apply(channel, rho), maximally_mixed(rho.dim()));
}

DensityMatrix encode_with_key(const RandomUnitaryChannel& channel,
                              std::size_t key_index, const DensityMatrix& state) {
  require_same_dim(channel.dim(), state.dim(), "encode_with_key");
  const auto& u = channel.unitary(key_index).matrix();
  return DensityMatrix::symmetrized(u * state.matrix() * u.adjoint());
}

DensityMatrix decode_with_key(const RandomUnitaryChannel& channel,
                              std::size_t key_index, const DensityMatrix& state) {
  require_same_dim(channel.dim(), state.dim(), "decode_with_key");
  const auto& u = channel.unitary(key_index).matrix();
  return DensityMatrix::symmetrized(u.adjoint() * state.matrix() * u);
}

}  // namespace aqss
