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

#include <doctest.h>

#include <cmath>

#include "aqss/channels.hpp"
#include "oracles.hpp"

using namespace aqss;

namespace {

std::vector<ComplexMatrix> matrices(const RandomUnitaryChannel& channel) {
  std::vector<ComplexMatrix> out;
  for (const auto& u : channel.unitaries()) out.push_back(u.matrix());
  return out;
}

}  // namespace

TEST_CASE("required_n") {
  CHECK(required_n(8, 0.5) == 4800);
  CHECK(required_n(4, 0.25) == 9600);
  CHECK(required_n(2, 0.5) == 1200);
  CHECK_THROWS_AS(required_n(2, 1.0), ParameterError);
  CHECK_THROWS_AS(required_n(2, 0.0), ParameterError);
  CHECK_THROWS_AS(required_n(1, 0.5), ParameterError);
  CHECK_THROWS_AS(required_n(1 << 30, 1e-6), ParameterError);
}

TEST_CASE("RandomUnitaryChannel validates its invariants") {
  std::vector<Unitary> two = {Unitary(ComplexMatrix::Identity(2, 2)),
                              Unitary(ComplexMatrix::Identity(2, 2))};
  CHECK_THROWS_AS(RandomUnitaryChannel(two, {0.5, 0.6}), ParameterError);
  CHECK_THROWS_AS(RandomUnitaryChannel(two, {1.0}), DimensionError);
  CHECK_THROWS_AS(RandomUnitaryChannel(two, {1.5, -0.5}), ParameterError);
  CHECK_THROWS_AS(RandomUnitaryChannel({}, {}), ParameterError);
  std::vector<Unitary> mixed = {Unitary(ComplexMatrix::Identity(2, 2)),
                                Unitary(ComplexMatrix::Identity(3, 3))};
  CHECK_THROWS_AS(RandomUnitaryChannel(mixed, {0.5, 0.5}), DimensionError);
  CHECK_NOTHROW(RandomUnitaryChannel(two, {0.25, 0.75}));
  CHECK_THROWS_AS(ChannelFamily({}), ParameterError);
}

TEST_CASE("sample_ruc") {
  RngStream a(1, 0);
  RngStream b(1, 0);
  const auto ch = sample_ruc(3, 10, a);
  const auto again = sample_ruc(3, 10, b);
  CHECK(ch.size() == 10);
  for (std::size_t i = 0; i < ch.size(); ++i) {
    CHECK(ch.probs()[i] == doctest::Approx(0.1));
    CHECK(max_abs(ch.unitaries()[i].matrix() - again.unitaries()[i].matrix()) == 0.0);
  }

  RngStream rng(2, 0);
  const auto single = sample_ruc(4, 1, rng);
  const auto rho = random_pure_state(4, rng);
  const auto& u = single.unitary(0).matrix();
  CHECK(trace_norm(apply(single, rho).matrix() - u * rho.matrix() * u.adjoint()) < 1e-12);
  CHECK_THROWS_AS(sample_ruc(4, 0, rng), ParameterError);
}

TEST_CASE("apply: identity, perfect twirl and unital fixed point") {
  RngStream rng(3, 0);
  const auto rho = random_pure_state(3, rng);
  CHECK(max_abs(apply(identity_channel(3), rho).matrix() - rho.matrix()) <= 1e-12);
  CHECK(max_abs(apply(perfect_pqc(2), basis_state(2, 0)).matrix() -
                oracle::weyl_twirl(basis_state(2, 0).matrix())) <= 1e-12);
  CHECK(max_abs(apply(perfect_pqc(2), basis_state(2, 0)).matrix() -
                ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-12);
  const auto ch = sample_ruc(3, 7, rng);
  CHECK(max_abs(apply(ch, maximally_mixed(3)).matrix() - maximally_mixed(3).matrix()) <= 1e-12);
  CHECK_THROWS_AS(apply(ch, maximally_mixed(4)), DimensionError);
}

TEST_CASE("apply is trace preserving, positive and unital") {
  RngStream rng(4, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    const auto ch = sample_ruc(d, 1 + static_cast<std::uint64_t>(trial), rng);
    const auto out = apply(ch, random_separable_state(1, d, 1, rng));
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
    CHECK(eigenvalues(out).minCoeff() > -1e-10);
    CHECK(max_abs(apply(ch, maximally_mixed(d)).matrix() - maximally_mixed(d).matrix()) < 1e-10);
  }
}

TEST_CASE("apply_product equals the brute-force 9-term sum at d=2, n=3") {
  RngStream rng(2024, 0);
  const auto a = sample_ruc(2, 3, rng);
  const auto b = sample_ruc(2, 3, rng);
  const ChannelFamily family({a, b});
  const auto phi = random_product_pure_state(2, 2, rng);
  const auto fast = apply_product(family, phi);
  const auto slow = oracle::brute_force_product(matrices(a), matrices(b), phi.matrix());
  CHECK(max_abs(fast.matrix() - slow) <= 1e-12);
}

TEST_CASE("apply_product equals the brute-force sum for all small sizes") {
  RngStream rng(5, 0);
  for (int da : {2, 3}) {
    for (int db : {2, 3}) {
      for (std::uint64_t na : {1, 4, 16}) {
        for (std::uint64_t nb : {1, 5, 16}) {
          const auto a = sample_ruc(da, na, rng);
          const auto b = sample_ruc(db, nb, rng);
          const auto rho = random_separable_state(da, db, 2, rng);
          const auto fast = apply_product(ChannelFamily({a, b}), rho);
          const auto slow =
              oracle::brute_force_product(matrices(a), matrices(b), rho.matrix());
          CHECK(max_abs(fast.matrix() - slow) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("apply_product special cases") {
  RngStream rng(6, 0);
  const auto rho = random_separable_state(2, 3, 3, rng);
  const ChannelFamily ids({identity_channel(2), identity_channel(3)});
  CHECK(max_abs(apply_product(ids, rho).matrix() - rho.matrix()) <= 1e-12);

  const ChannelFamily perfect({perfect_pqc(2), perfect_pqc(2)});
  CHECK(max_abs(apply_product(perfect, maximally_entangled_state(2)).matrix() -
                ComplexMatrix::Identity(4, 4) / 4.0) <= 1e-12);
  CHECK_THROWS_AS(apply_product(perfect, rho), DimensionError);
}

TEST_CASE("conjugate_subsystem acts on the middle factor of three") {
  RngStream rng(7, 0);
  const int dims[] = {2, 3, 2};
  const auto rho = random_pure_state(12, rng).matrix();
  const auto u = haar_unitary(3, rng).matrix();
  const ComplexMatrix full =
      oracle::kron(oracle::kron(ComplexMatrix::Identity(2, 2), u), ComplexMatrix::Identity(2, 2));
  CHECK(max_abs(conjugate_subsystem(rho, u, dims, 1) - full * rho * full.adjoint()) < 1e-12);
  const auto v = haar_unitary(2, rng).matrix();
  const ComplexMatrix last = oracle::kron(ComplexMatrix::Identity(6, 6), v);
  CHECK(max_abs(conjugate_subsystem(rho, v, dims, 2) - last * rho * last.adjoint()) < 1e-12);
  CHECK_THROWS_AS(conjugate_subsystem(rho, v, dims, 3), DimensionError);
  CHECK_THROWS_AS(conjugate_subsystem(rho, u, dims, 0), DimensionError);
}

TEST_CASE("epsilon_randomizing_distance") {
  RngStream rng(8, 0);
  for (int d : {2, 3, 4}) {
    for (int s = 0; s < 10; ++s) {
      CHECK(epsilon_randomizing_distance(perfect_pqc(d), random_pure_state(d, rng)) <= 1e-10);
    }
  }
  CHECK(epsilon_randomizing_distance(identity_channel(2), basis_state(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const auto ch = sample_ruc(4, required_n(4, 0.5), rng);
  for (int s = 0; s < 20; ++s) {
    CHECK(epsilon_randomizing_distance(ch, random_pure_state(4, rng)) <= 0.5);
  }
}

TEST_CASE("perfect_pqc") {
  RngStream rng(9, 0);
  for (int d : {2, 3, 5}) {
    const auto ch = perfect_pqc(d);
    CHECK(ch.size() == static_cast<std::size_t>(d * d));
    for (double p : ch.probs()) CHECK(p == doctest::Approx(1.0 / (d * d)));
    for (int s = 0; s < 50; ++s) {
      CHECK(max_abs(apply(ch, random_pure_state(d, rng)).matrix() -
                    ComplexMatrix::Identity(d, d) / d) <= 1e-12);
    }
  }
}

TEST_CASE("strict sub-lists of the Weyl-Heisenberg set are not perfect at d=2") {
  const auto ops = weyl_heisenberg_operators(2);
  // Witness states: the Z, X and Y eigenstates.
  std::vector<DensityMatrix> witnesses;
  const double r = 1.0 / std::sqrt(2.0);
  witnesses.push_back(basis_state(2, 0));
  witnesses.push_back(DensityMatrix::pure(ComplexVector{{Complex(r), Complex(r)}}));
  witnesses.push_back(DensityMatrix::pure(ComplexVector{{Complex(r), Complex(0.0, r)}}));
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<Unitary> subset;
    for (int k = 0; k < 4; ++k) {
      if (mask & (1 << k)) subset.push_back(ops[static_cast<std::size_t>(k)]);
    }
    const auto ch = RandomUnitaryChannel::uniform(subset);
    double worst = 0.0;
    for (const auto& w : witnesses) worst = std::max(worst, epsilon_randomizing_distance(ch, w));
    CHECK(worst > 0.1);
  }
}

TEST_CASE("apply is linear in its input") {
  RngStream rng(10, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ch = sample_ruc(3, 5, rng);
    const auto x = random_pure_state(3, rng);
    const auto y = random_pure_state(3, rng);
    const double t = static_cast<double>(trial) / 20.0;
    const DensityMatrix mix(t * x.matrix() + (1.0 - t) * y.matrix());
    const ComplexMatrix expected =
        t * apply(ch, x).matrix() + (1.0 - t) * apply(ch, y).matrix();
    CHECK(max_abs(apply(ch, mix).matrix() - expected) <= 1e-12);
  }
}

TEST_CASE("encode and decode with a key") {
  RngStream rng(11, 0);
  const auto ch = sample_ruc(4, 16, rng);
  const auto phi = random_pure_state(4, rng);
  for (std::size_t i = 0; i < 16; ++i) {
    const auto enc = encode_with_key(ch, i, phi);
    CHECK(max_abs(decode_with_key(ch, i, enc).matrix() - phi.matrix()) <= 1e-12);
    CHECK(max_abs(decode_with_key(ch, i, maximally_mixed(4)).matrix() -
                  maximally_mixed(4).matrix()) <= 1e-12);
  }
  const auto enc = encode_with_key(ch, 3, phi);
  CHECK(trace_distance(decode_with_key(ch, 5, enc), phi) > 0.01);
  CHECK_THROWS_AS(decode_with_key(ch, 16, enc), KeyError);
  CHECK_THROWS_AS(encode_with_key(ch, 99, phi), KeyError);
}
