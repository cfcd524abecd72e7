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
#include <numeric>

#include "aqss/analysis.hpp"
#include "oracles.hpp"

using namespace aqss;

namespace {

McOptions threads(unsigned n, ChannelSource source = ChannelSource::Haar) {
  McOptions o;
  o.source = source;
  o.threads = n;
  return o;
}

// Random Hermitian unit-trace matrix (not necessarily positive).
ComplexMatrix random_unit_trace_hermitian(int dim, RngStream& rng) {
  const ComplexMatrix g = ginibre_matrix(dim, rng);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h += ComplexMatrix::Identity(dim, dim) * ((1.0 - h.trace().real()) / dim);
  return h;
}

}  // namespace

TEST_CASE("McStats from values") {
  const auto s = McStats::from_values({1.0, 2.0, 3.0, 4.0}, 9);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.trials == 4);
  CHECK(s.master_seed == 9);
  CHECK(s.per_trial_values.size() == 4);
}

TEST_CASE("BoundCheck") {
  auto c = BoundCheck::make(1.0, 1.0);
  CHECK(c.satisfied);
  CHECK(c.slack == 0.0);
  CHECK(BoundCheck::make(1.0 + 5e-13, 1.0).satisfied);
  CHECK_FALSE(BoundCheck::make(1.0 + 1e-11, 1.0).satisfied);
  c = BoundCheck::make(0.25, 1.0);
  CHECK(c.slack == doctest::Approx(0.75));
}

TEST_CASE("input family names") {
  CHECK(parse_input_family("product-pure") == InputFamily::ProductPure);
  CHECK(parse_input_family("product_pure") == InputFamily::ProductPure);
  CHECK(parse_input_family("separable") == InputFamily::Separable);
  CHECK(parse_input_family("max-entangled") == InputFamily::MaxEntangled);
  for (auto f : {InputFamily::ProductPure, InputFamily::Separable, InputFamily::MaxEntangled}) {
    CHECK(parse_input_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_input_family("ghz"), ParameterError);
}

TEST_CASE("expected_distance_bound") {
  CHECK(expected_distance_bound(4, 64, 64) == doctest::Approx(0.0625));
  const auto n = required_n(4, 0.5);
  CHECK(expected_distance_bound(4, n, n) == doctest::Approx(0.25 / 150.0).epsilon(1e-12));
  const auto n8 = required_n(8, 0.5);
  CHECK(expected_distance_bound(8, n8, n8) == doctest::Approx(0.0016667).epsilon(1e-4));
}

TEST_CASE("mc_expected_trace_distance with perfect channels is zero") {
  for (auto family : {InputFamily::ProductPure, InputFamily::Separable, InputFamily::MaxEntangled}) {
    const auto r = mc_expected_trace_distance(3, 1, 1, family, 10, 5,
                                              threads(1, ChannelSource::PerfectPqc));
    for (double v : r.stats.per_trial_values) CHECK(v <= 1e-10);
    CHECK(r.asserted == (family == InputFamily::ProductPure));
  }
}

TEST_CASE("mc_expected_trace_distance obeys the Jensen chain and is reproducible") {
  const auto a = mc_expected_trace_distance(2, 8, 8, InputFamily::Separable, 20, 11, threads(1));
  const auto b = mc_expected_trace_distance(2, 8, 8, InputFamily::Separable, 20, 11, threads(3));
  CHECK(a.stats.per_trial_values == b.stats.per_trial_values);
  CHECK(a.stats.mean == b.stats.mean);
  CHECK(a.stats.std_error == b.stats.std_error);
  CHECK_FALSE(a.asserted);
  CHECK(jensen_chain_check(a.stats).satisfied);
  CHECK_THROWS_AS(mc_expected_trace_distance(2, 8, 8, InputFamily::Separable, 9, 11),
                  ParameterError);
}

TEST_CASE("mc_expected_trace_distance decreases with n") {
  double previous = 10.0;
  for (std::uint64_t n : {4, 16, 64}) {
    const auto r = mc_expected_trace_distance(3, n, n, InputFamily::ProductPure, 20, 3, threads(1));
    CHECK(r.stats.mean < previous);
    previous = r.stats.mean;
  }
}

TEST_CASE("mc_purity agrees with the exact Haar second moment") {
  for (auto [d, n] : {std::pair{2, 4ULL}, std::pair{3, 8ULL}, std::pair{4, 16ULL}}) {
    const auto r = mc_purity(d, n, n, 200, 17, threads(1));
    CHECK(r.exact_check.satisfied);
    CHECK(std::abs(r.stats.mean - haar_purity_exact(d, n, n)) <= 5.0 * r.stats.std_error);
  }
  CHECK(purity_identity_value(4, 32, 32) == doctest::Approx(0.0634766).epsilon(1e-6));
  CHECK(haar_purity_exact(4, 32, 32) == doctest::Approx(0.0747681).epsilon(1e-6));
}

TEST_CASE("exact Haar second moment matches a direct evaluation for one channel") {
  // For a single uniform Haar channel of size n on a pure state:
  // E tr N(phi)^2 = 1/n + (n-1)/(n d). The product formula factorizes.
  RngStream rng(18, 0);
  const int d = 3;
  const std::uint64_t n = 5;
  std::vector<double> values;
  for (int s = 0; s < 4000; ++s) {
    const auto ch = sample_ruc(d, n, rng);
    values.push_back(purity(apply(ch, random_pure_state(d, rng))));
  }
  const auto stats = McStats::from_values(values, 0);
  const double single = 1.0 / n + (n - 1.0) / (n * d);
  CHECK(std::abs(stats.mean - single) <= 5.0 * stats.std_error);
  CHECK(haar_purity_exact(d, n, n) == doctest::Approx(single * single).epsilon(1e-14));
}

TEST_CASE("mc_purity special cases") {
  const auto one = mc_purity(3, 1, 1, 30, 19, threads(1));
  for (double v : one.stats.per_trial_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const auto perfect = mc_purity(3, 1, 1, 30, 19, threads(1, ChannelSource::PerfectPqc));
  for (double v : perfect.stats.per_trial_values) CHECK(std::abs(v - 1.0 / 9.0) <= 1e-12);

  CHECK_THROWS_AS(mc_purity(3, 4, 4, 29, 19), ParameterError);
}

TEST_CASE("mc_purity standard error shrinks like 1/sqrt(trials)") {
  const auto small = mc_purity(3, 8, 8, 100, 23, threads(1));
  const auto large = mc_purity(3, 8, 8, 200, 23, threads(1));
  const double ratio = small.stats.std_error / large.stats.std_error;
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("mc_purity is identical across thread counts") {
  const auto a = mc_purity(2, 6, 6, 40, 29, threads(1));
  const auto b = mc_purity(2, 6, 6, 40, 29, threads(4));
  CHECK(a.stats.per_trial_values == b.stats.per_trial_values);
  CHECK(a.stats.mean == b.stats.mean);
}

TEST_CASE("check_separable_2eps") {
  RngStream rng(31, 0);
  SeparableDecomposition dec = random_separable_decomposition(2, 2, 3, rng);
  const auto perfect = check_separable_2eps(perfect_pqc(2), perfect_pqc(2), dec);
  CHECK(perfect.check.observed <= 1e-10);
  CHECK(perfect.epsilon_a <= 1e-10);
  CHECK(perfect.check.satisfied);

  const auto single = random_separable_decomposition(2, 2, 1, rng);
  CHECK(check_separable_2eps(sample_ruc(2, 8, rng), sample_ruc(2, 8, rng), single).check.satisfied);

  const auto four = random_separable_decomposition(4, 4, 4, rng);
  const auto r = check_separable_2eps(sample_ruc(4, 64, rng), sample_ruc(4, 64, rng), four);
  CHECK(r.check.satisfied);
  CHECK(r.check.slack >= 0.0);
  CHECK(r.check.bound == doctest::Approx(r.epsilon_a + r.epsilon_b));

  dec.weights[0] += 0.1;
  CHECK_THROWS_AS(check_separable_2eps(perfect_pqc(2), perfect_pqc(2), dec), ParameterError);
  CHECK_THROWS_AS(check_separable_2eps(perfect_pqc(3), perfect_pqc(2), four), DimensionError);
}

TEST_CASE("entropy_deficit") {
  CHECK(std::abs(entropy_deficit(maximally_mixed(16), 4.0)) < 1e-12);
  RngStream rng(37, 0);
  CHECK(entropy_deficit(random_pure_state(16, rng), 4.0) == doctest::Approx(4.0).epsilon(1e-8));
  for (int s = 0; s < 10; ++s) {
    CHECK(entropy_deficit(random_separable_state(3, 3, 4, rng), std::log2(9.0)) >= -1e-8);
  }
}

TEST_CASE("LOCC distinguishability") {
  RngStream rng(41, 0);
  const auto rho = random_separable_state(2, 3, 2, rng);
  CHECK(locc_distinguishability(rho, rho, 2, 3, 20, 1) <= 1e-12);

  const auto s00 = basis_state(4, 0);
  const auto s11 = basis_state(4, 3);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(locc_distinguishability_for_setting(s00, s11, 2, 2, id, id) ==
        doctest::Approx(2.0).epsilon(1e-14));

  for (int d : {2, 3}) {
    const ChannelFamily perfect({perfect_pqc(d), perfect_pqc(d)});
    const auto view = apply_product(perfect, random_pure_state(d * d, rng));
    CHECK(locc_distinguishability(view, maximally_mixed(d * d), d, d, 50, 2) <= 1e-10);
  }

  for (int s = 0; s < 10; ++s) {
    const auto x = random_pure_state(6, rng);
    const auto y = random_separable_state(2, 3, 3, rng);
    const double xy = locc_distinguishability(x, y, 2, 3, 10, 3);
    const double yx = locc_distinguishability(y, x, 2, 3, 10, 3);
    CHECK(std::abs(xy - yx) <= 1e-12);
    CHECK(xy <= 2.0 + 1e-12);
    CHECK(xy <= trace_norm(x.matrix() - y.matrix()) + 1e-10);
  }
  CHECK_THROWS_AS(locc_distinguishability(rho, maximally_mixed(4), 2, 3, 5, 1), DimensionError);
  CHECK_THROWS_AS(locc_distinguishability(rho, rho, 2, 3, 0, 1), ParameterError);
}

TEST_CASE("check_norm_relation") {
  const auto eq = check_norm_relation(maximally_mixed(4).matrix(), 4);
  CHECK(eq.observed == doctest::Approx(0.0).scale(1.0));
  CHECK(eq.bound == doctest::Approx(0.0).scale(1.0));
  CHECK(eq.satisfied);

  const auto pure = check_norm_relation(basis_state(4, 0).matrix(), 4);
  CHECK(pure.observed == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(pure.bound == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(pure.satisfied);

  RngStream rng(43, 0);
  for (int s = 0; s < 100; ++s) {
    CHECK(check_norm_relation(random_separable_state(3, 3, 3, rng).matrix(), 9).satisfied);
    CHECK(check_norm_relation(random_unit_trace_hermitian(9, rng), 9).satisfied);
  }
  CHECK_THROWS_AS(check_norm_relation(2.0 * maximally_mixed(4).matrix(), 4), ParameterError);
  CHECK_THROWS_AS(check_norm_relation(maximally_mixed(4).matrix(), 9), DimensionError);
}

TEST_CASE("jensen_chain_check") {
  const auto constant = jensen_chain_check(McStats::from_values({0.3, 0.3, 0.3}, 0));
  CHECK(constant.observed == doctest::Approx(constant.bound));
  CHECK(constant.satisfied);
  const auto two = jensen_chain_check(McStats::from_values({0.0, 2.0}, 0));
  CHECK(two.observed == doctest::Approx(1.0));
  CHECK(two.bound == doctest::Approx(std::sqrt(2.0)));
  CHECK(two.satisfied);
  CHECK_THROWS_AS(jensen_chain_check(McStats{}), ParameterError);
}
