#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sqv/fockspace.hpp"
#include "sqv/modeconverter.hpp"

using namespace sqv;

TEST_CASE("SqueezeConfig validates and reduces phi") {
  CHECK_THROWS_AS(SqueezeConfig(-1, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SqueezeConfig(2, -0.1, 0.0), std::invalid_argument);
  CHECK(SqueezeConfig(2, 0.1, 2.0 * std::numbers::pi + 0.5).phi() == doctest::Approx(0.5));
  CHECK(SqueezeConfig(2, 0.1, -0.5).phi() == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  const SqueezeConfig c(2, 0.1, 1.0);
  CHECK(c.phi() >= 0.0);
  CHECK(c.phi() < 2.0 * std::numbers::pi);
}

TEST_CASE("basis indexing is a bijection over the simplex") {
  for (int t = 0; t <= 12; ++t) {
    CHECK(basis::dim(t) == static_cast<std::size_t>((t + 1) * (t + 2) / 2));
    for (std::size_t idx = 0; idx < basis::dim(t); ++idx) {
      const auto [n1, n2] = basis::ket(idx);
      CHECK(n1 + n2 <= t);
      CHECK(basis::index(n1, n2) == idx);
    }
  }
}

TEST_CASE("make_squeezed_input examples") {
  const auto vac = make_squeezed_input({4, 0.0, 0.0});
  CHECK(vac.amplitude(0, 0) == cplx(1.0, 0.0));
  for (std::size_t k = 1; k < vac.dim(); ++k) CHECK(vac.amplitudes()[k] == cplx{});

  const auto s = make_squeezed_input({4, 1.0, 0.0});
  CHECK(std::abs(s.amplitude(1, 1) / s.amplitude(0, 0) - std::tanh(1.0)) < 1e-15);
  CHECK(std::tanh(1.0) == doctest::Approx(0.76159).epsilon(1e-5));

  const auto small = make_squeezed_input({2, 0.1, 0.0});
  for (std::size_t k = 0; k < small.dim(); ++k) {
    const auto [n1, n2] = basis::ket(k);
    const bool support = (n1 == 0 && n2 == 0) || (n1 == 1 && n2 == 1);
    CHECK((std::abs(small.amplitudes()[k]) > 0.0) == support);
  }
}

TEST_CASE("odd N truncates the input sum at floor(N/2)") {
  const auto s = make_squeezed_input({5, 0.5, 0.0});
  CHECK(std::abs(s.amplitude(2, 2)) > 0.0);
  CHECK(s.amplitude(3, 3) == cplx{});  // 3 + 3 > 5
}

TEST_CASE("input state norm and diagonal weight") {
  for (int n = 0; n <= 20; ++n) {
    for (double r : {0.0, 0.02, 0.1, 0.5, 1.0}) {
      const auto s = make_squeezed_input({n, r, 0.0});
      CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-12);
      CHECK(diagonal_weight(s) == 1.0);
      double off = 0.0;
      for (std::size_t k = 0; k < s.dim(); ++k) {
        const auto [n1, n2] = basis::ket(k);
        if (n1 != n2) off += std::norm(s.amplitudes()[k]);
      }
      CHECK(off == 0.0);
    }
  }
}

TEST_CASE("joint_distribution examples and marginals") {
  const auto vac = joint_distribution(TwoModeState::basis_ket(3, 0, 0));
  CHECK(vac.p(0, 0) == 1.0);

  const auto d = joint_distribution(make_squeezed_input({20, 0.1, 0.0}));
  const double t = std::tanh(0.1);
  CHECK(d.p(1, 1) / d.p(0, 0) == doctest::Approx(t * t).epsilon(1e-13));
  CHECK(d.p(1, 1) / d.p(0, 0) == doctest::Approx(0.0099337).epsilon(1e-5));

  double sum = 0.0;
  for (double p : d.joint) sum += p;
  CHECK(std::abs(sum - 1.0) <= 1e-12);

  // marginal_total against brute-force re-summation
  const auto rotated = apply_rotation(make_squeezed_input({8, 0.5, 0.0}), 0.7);
  const auto dr = joint_distribution(rotated);
  for (int k = 0; k <= 8; ++k) {
    double brute = 0.0;
    for (int n1 = 0; n1 <= 8; ++n1) {
      for (int n2 = 0; n2 <= 8; ++n2) {
        if (n1 + n2 == k) brute += std::norm(rotated.amplitude(n1, n2));
      }
    }
    CHECK(std::abs(dr.marginal_total[static_cast<std::size_t>(k)] - brute) <= 1e-14);
  }
}

TEST_CASE("joint_distribution rejects unnormalized states") {
  std::vector<cplx> amps(basis::dim(2), 0.0);
  amps[0] = 2.0;
  CHECK_THROWS_AS(joint_distribution(TwoModeState::raw(2, amps)), InvariantViolation);
  CHECK_THROWS_AS(TwoModeState::normalized(2, std::vector<cplx>(basis::dim(2))), InvariantViolation);
  CHECK_THROWS_AS(TwoModeState::raw(2, std::vector<cplx>(3)), DimensionError);
}

TEST_CASE("P(j,j) strictly decreases for r in {0.1, 0.5}") {
  for (double r : {0.1, 0.5}) {
    const auto d = joint_distribution(make_squeezed_input({12, r, 0.0}));
    for (int j = 0; j < 6; ++j) CHECK(d.p(j + 1, j + 1) < d.p(j, j));
  }
}

TEST_CASE("diagonal_weight examples") {
  CHECK(diagonal_weight(TwoModeState::basis_ket(1, 1, 0)) == 0.0);
  const auto rotated = apply_rotation(make_squeezed_input({2, 0.5, 0.0}), std::numbers::pi / 4);
  CHECK(diagonal_weight(rotated) < 1.0);
}

TEST_CASE("mandel_q") {
  std::vector<double> point(8, 0.0);
  point[5] = 1.0;
  CHECK(mandel_q(point) == doctest::Approx(-1.0).epsilon(1e-15));

  std::vector<double> poisson(61);
  double w = std::exp(-2.0);
  for (int n = 0; n <= 60; ++n) {
    poisson[static_cast<std::size_t>(n)] = w;
    w *= 2.0 / (n + 1);
  }
  CHECK(std::abs(mandel_q(poisson)) <= 1e-6);

  const auto d = joint_distribution(make_squeezed_input({20, 0.5, 0.0}));
  CHECK(mandel_q(mode_marginal(d, Mode::first)) > 0.0);
  CHECK(mandel_q(mode_marginal(d, Mode::second)) > 0.0);

  std::vector<double> vacuum{1.0, 0.0};
  CHECK_THROWS_AS(mandel_q(vacuum), std::domain_error);
  std::vector<double> bad{0.5, 0.2};
  CHECK_THROWS_AS(mandel_q(bad), InvariantViolation);
}
