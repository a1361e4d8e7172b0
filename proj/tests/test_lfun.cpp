#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lfm/lfun.hpp"
#include "support/afe_oracle.hpp"
#include "support/series_oracles.hpp"

using namespace lfm;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma implementation") {
  CHECK(std::abs(gamma_complex({0.5, 0.0}) - std::sqrt(kPi)) < 1e-13);
  CHECK(std::abs(gamma_complex({4.0, 0.0}) - 6.0) < 1e-12);
  std::mt19937_64 rng(0xE0);
  std::uniform_real_distribution<double> re(-3.0, 4.0), im(-3.0, 3.0);
  for (int it = 0; it < 300; ++it) {
    std::complex<double> z{re(rng), im(rng)};
    if (std::abs(z) < 0.2) continue;
    auto lhs = gamma_complex(z + 1.0);
    auto rhs = z * gamma_complex(z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("digamma reflection") {
  // psi(1-x) - psi(x) = pi cot(pi x)
  for (double x : {0.25, 0.4, 0.75, 1.0 / 3.0}) {
    double lhs = digamma_real(1.0 - x) - digamma_real(x);
    CHECK(lhs == Approx(kPi / std::tan(kPi * x)).epsilon(1e-12));
  }
}

TEST_CASE("hurwitz zeta reference values") {
  auto z2 = hurwitz_zeta({2.0, 0.0}, 1.0);
  CHECK(std::abs(z2.value - kPi * kPi / 6.0) < 1e-12);
  CHECK(z2.error_bound < 1e-12);

  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  auto z3h = hurwitz_zeta({3.0, 0.0}, 0.5);
  auto z3 = hurwitz_zeta({3.0, 0.0}, 1.0);
  CHECK(std::abs(z3h.value - 7.0 * z3.value) < 1e-10);

  // zeta(-n, x) = -B_{n+1}(x)/(n+1) against the polynomial oracle
  for (double x : {0.25, 0.5, 0.75, 1.0}) {
    auto zm1 = hurwitz_zeta({-1.0, 0.0}, x);
    CHECK(std::abs(zm1.value + lfm::testing::bernoulli_poly(2, x) / 2.0) < 1e-10);
    auto zm2 = hurwitz_zeta({-2.0, 0.0}, x);
    CHECK(std::abs(zm2.value + lfm::testing::bernoulli_poly(3, x) / 3.0) < 1e-10);
  }
  CHECK(std::abs(hurwitz_zeta({-1.0, 0.0}, 1.0).value + 1.0 / 12.0) < 1e-10);
  CHECK_THROWS_AS(hurwitz_zeta({1.0, 0.0}, 0.5), std::invalid_argument);
}

TEST_CASE("hurwitz ladder relation") {
  // zeta(s, x) - zeta(s, x+1) = x^{-s}
  std::mt19937_64 rng(0xE1);
  std::uniform_real_distribution<double> xs(0.05, 1.0), sr(-1.5, 4.0), si(-3.0, 3.0);
  for (int it = 0; it < 200; ++it) {
    std::complex<double> s{sr(rng), si(rng)};
    if (std::abs(s - std::complex<double>{1.0, 0.0}) < 0.1) continue;
    double x = xs(rng);
    auto z1 = hurwitz_zeta(s, x);
    auto z2 = hurwitz_zeta(s, x + 1.0);
    auto direct = std::pow(std::complex<double>(x), -s);
    CHECK(std::abs(z1.value - z2.value - direct) <
          10 * (z1.error_bound + z2.error_bound) + 1e-11 * std::abs(direct));
  }
}

TEST_CASE("hurwitz error bound honesty") {
  // tightening the tolerance never moves the value by more than the bound
  std::mt19937_64 rng(0xE2);
  std::uniform_real_distribution<double> xs(0.05, 1.0);
  for (int it = 0; it < 100; ++it) {
    double x = xs(rng);
    auto loose = hurwitz_zeta_real(0.5, x, 1e-10);
    auto tight = hurwitz_zeta_real(0.5, x, 1e-15);
    CHECK(std::abs(loose.value - tight.value) <= loose.error_bound + 1e-16);
  }
}

TEST_CASE("dirichlet L reference values") {
  // L(2, chi_{-4}) = Catalan, against the alternating-series oracle
  double catalan = lfm::testing::alternating_sum(
      [](long long k) { return 1.0 / ((2.0 * k + 1.0) * (2.0 * k + 1.0)); });
  auto chi4 = RationalCharacter::quadratic(-4);
  LValue l = dirichlet_L({2.0, 0.0}, chi4);
  CHECK(std::abs(l.value.real() - catalan) < 1e-9);
  CHECK(std::abs(l.value.real() - 0.915965594177219015) < 1e-9);
  CHECK(std::abs(l.value.imag()) < 1e-14);

  // principal character mod 1 reduces to zeta
  auto principal = RationalCharacter::principal(1);
  LValue z = dirichlet_L({3.0, 0.0}, principal);
  CHECK(std::abs(z.value - hurwitz_zeta({3.0, 0.0}, 1.0).value) < 1e-13);
  CHECK_THROWS_AS(dirichlet_L({1.0, 0.0}, principal), std::invalid_argument);

  // L(1, chi_{-4}) = pi/4 through the digamma route
  LValue l1 = dirichlet_L({1.0, 0.0}, chi4);
  CHECK(std::abs(l1.value.real() - kPi / 4.0) < 1e-12);
}

TEST_CASE("L error bounds are honest under tolerance changes") {
  auto chars = enumerate_characters(3, 80);
  for (const auto& chi : chars) {
    LValue loose = dirichlet_L({0.5, 0.0}, chi, 1e-10);
    LValue tight = dirichlet_L({0.5, 0.0}, chi, 1e-15);
    CHECK(std::abs(loose.value - tight.value) <= loose.abs_error_bound);
  }
}

TEST_CASE("batch evaluation matches single evaluation") {
  auto chars = enumerate_characters(3, 40);
  REQUIRE(chars.size() >= 4);
  long long q = chars[0].conductor;
  std::vector<std::vector<std::complex<double>>> tables;
  std::vector<const PrimitiveCharacter*> at_q;
  for (const auto& c : chars)
    if (c.conductor == q) {
      at_q.push_back(&c);
      tables.push_back(lfm::detail::complex_table(c.value_table()));
    }
  for (std::complex<double> s : {std::complex<double>{0.5, 0.0},
                                 std::complex<double>{0.5, 0.37},
                                 std::complex<double>{2.5, -1.0}}) {
    auto batch = dirichlet_L_batch(s, q, tables);
    for (std::size_t i = 0; i < at_q.size(); ++i) {
      LValue single = dirichlet_L(s, *at_q[i]);
      CHECK(std::abs(batch[i].value - single.value) < 1e-14);
    }
  }
}

TEST_CASE("central value at the smallest cubic conductor is nonzero") {
  auto chars = enumerate_characters(3, 7);
  REQUIRE(chars.size() == 2);
  for (const auto& chi : chars) {
    LValue l = central_value(chi, 0.0);
    CHECK(std::abs(l.value) > 0.1);
    CHECK(std::abs(l.value - dirichlet_L({0.5, 0.0}, chi).value) == 0.0);
  }
}

TEST_CASE("conjugate reflection at real s") {
  auto chars = enumerate_characters(3, 60);
  for (const auto& chi : chars) {
    LValue l = central_value(chi, 0.0);
    LValue lbar = central_value(chi.conjugate(), 0.0);
    CHECK(std::abs(std::conj(l.value) - lbar.value) < 1e-12);
    CHECK(std::abs((l.value + lbar.value).imag()) < 1e-12);
  }
}

TEST_CASE("functional equation residual") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 100);
    REQUIRE(!chars.empty());
    for (const auto& chi : chars) {
      CHECK(fe_residual({0.5, 0.0}, chi) < 1e-9);
      CHECK(fe_residual({0.5, 0.37}, chi) < 1e-9);
      CHECK(fe_residual({0.3, -0.2}, chi) < 1e-9);
    }
  }
  auto chars = enumerate_characters(3, 20);
  CHECK_THROWS_AS(fe_residual({1.2, 0.0}, chars[0]), std::invalid_argument);
}

TEST_CASE("conjugate symmetry of the residual at real s") {
  auto chars = enumerate_characters(4, 80);
  for (const auto& chi : chars) {
    double r1 = fe_residual({0.5, 0.0}, chi);
    double r2 = fe_residual({0.5, 0.0}, chi.conjugate());
    CHECK(std::abs(r1 - r2) < 1e-8);
  }
}

TEST_CASE("central values against the smoothed theta-split oracle") {
  std::mt19937_64 rng(0xE3);
  int tested = 0;
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 150);
    std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
    for (int it = 0; it < 7; ++it) {
      const auto& chi = chars[pick(rng)];
      for (double alpha : {0.0, 0.25}) {
        LValue l = central_value(chi, alpha);
        auto oracle = lfm::testing::afe_central_value(chi, 0.5 + alpha);
        CHECK(std::abs(l.value - oracle) < 1e-8);
        ++tested;
      }
    }
  }
  CHECK(tested >= 20);
  auto chars = enumerate_characters(3, 20);
  CHECK_THROWS_AS(central_value(chars[0], 0.7), std::invalid_argument);
}
