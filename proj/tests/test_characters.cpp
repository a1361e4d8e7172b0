#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "lfm/characters.hpp"

using namespace lfm;

TEST_CASE("evaluate basics") {
  auto chars = enumerate_characters(3, 10);
  REQUIRE(chars.size() == 2);
  for (const auto& chi : chars) {
    CHECK(chi.conductor == 7);
    CHECK(chi.evaluate(1).is_one());
    for (i128 m = -20; m <= 20; ++m) {
      CHECK(chi.evaluate(m) == chi.evaluate(m + chi.conductor));
      CHECK(chi.evaluate(m).is_zero() == (gcd128(m, chi.conductor) != 1));
    }
  }
}

TEST_CASE("evaluate agrees with the residue symbol") {
  std::mt19937_64 rng(0xC0);
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 80);
    REQUIRE(!chars.empty());
    for (const auto& chi : chars) {
      std::uniform_int_distribution<long long> d(-500, 500);
      for (int it = 0; it < 20; ++it) {
        i128 m = d(rng);
        CHECK(chi.evaluate(m) ==
              residue_symbol(from_int(m, chi.modulus.ring), chi.modulus, j));
      }
    }
  }
}

TEST_CASE("cubic character of conductor 7 matches the rational side") {
  auto chars = enumerate_characters(3, 7);
  REQUIRE(chars.size() == 2);
  // 3 generates (Z/7)^*; the two cubic characters send 3 to w^{+-1}
  for (const auto& chi : chars) {
    RootOfUnity g = chi.evaluate(3);
    CHECK(!g.is_zero());
    CHECK(!g.is_one());
    CHECK(g.pow(3).is_one());
    // multiplicativity against the generator table
    for (long long e = 0; e < 6; ++e) {
      long long a = 1;
      for (int i = 0; i < e; ++i) a = a * 3 % 7;
      CHECK(chi.evaluate(a) == g.pow(e));
    }
  }
  // the two characters are conjugates of each other
  CHECK(chars[0].evaluate(3) == chars[1].evaluate(3).conjugate());
}

TEST_CASE("enumeration examples") {
  auto c3 = enumerate_characters(3, 10);
  CHECK(c3.size() == 2);
  auto c4 = enumerate_characters(4, 6);
  CHECK(c4.size() == 2);
  for (const auto& chi : c4) CHECK(chi.conductor == 5);
  auto c6 = enumerate_characters(6, 6);
  CHECK(c6.empty());
}

TEST_CASE("enumerated moduli satisfy the classification conditions") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 150);
    for (const auto& chi : chars) {
      const QInt& n = chi.modulus;
      CHECK(passes_primary(n, primary_mode_for_order(j)));
      CHECK(is_squarefree(n));
      CHECK(!has_rational_prime_divisor(n));
      CHECK(norm(n) == chi.conductor);
      CHECK(gcd128(chi.conductor, j) == 1);
      CHECK(chi.conductor > 1);
    }
    // all moduli distinct
    std::set<std::pair<long long, long long>> seen;
    for (const auto& chi : chars)
      CHECK(seen
                .insert({static_cast<long long>(chi.modulus.a),
                         static_cast<long long>(chi.modulus.b)})
                .second);
  }
}

TEST_CASE("oracle counts on cyclic cases") {
  CHECK(oracle_count(3, 7) == 2);
  CHECK(oracle_count(4, 5) == 2);
  CHECK(oracle_count(3, 4) == 0);
  CHECK(oracle_count(3, 1) == 0);
  CHECK(oracle_count(6, 7) == 2);
  CHECK(oracle_count(4, 65) == 4);  // 5 * 13, two split primes
  CHECK_THROWS_AS(oracle_count(3, 6), std::invalid_argument);
  CHECK_THROWS_AS(oracle_count(3, 100000), std::invalid_argument);
}

TEST_CASE("classification bijection on conductors up to 120") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 120);
    std::map<long long, long long> by_q;
    for (const auto& chi : chars) by_q[chi.conductor]++;
    for (long long q = 1; q <= 120; ++q) {
      if (std::gcd<long long>(q, j) != 1) continue;
      long long expect = oracle_count(j, q);
      long long got = by_q.count(q) ? by_q[q] : 0;
      CHECK_MESSAGE(expect == got, "j=", j, " q=", q);
    }
  }
}

TEST_CASE("enumerated characters have order exactly j on the rational side") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 60);
    for (const auto& chi : chars) {
      auto table = chi.value_table();
      // chi^j trivial, chi^i nontrivial for 0 < i < j
      for (int i = 1; i <= j; ++i) {
        bool trivial = true;
        for (long long a = 0; a < chi.conductor; ++a) {
          const auto& v = table[static_cast<std::size_t>(a)];
          if (!v.is_zero() && !v.pow(i).is_one()) trivial = false;
        }
        CHECK(trivial == (i == j));
      }
    }
  }
}

TEST_CASE("conjugation closure") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 100);
    std::set<std::pair<long long, long long>> keys;
    for (const auto& chi : chars)
      keys.insert({static_cast<long long>(chi.modulus.a),
                   static_cast<long long>(chi.modulus.b)});
    for (const auto& chi : chars) {
      auto bar = chi.conjugate();
      CHECK(keys.count({static_cast<long long>(bar.modulus.a),
                        static_cast<long long>(bar.modulus.b)}) == 1);
      for (i128 m = 1; m <= 30; ++m)
        CHECK(bar.evaluate(m) == chi.evaluate(m).conjugate());
    }
  }
}

TEST_CASE("value tables match pointwise evaluation") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 40);
    for (const auto& chi : chars) {
      auto table = chi.value_table();
      for (long long a = 0; a < chi.conductor; ++a)
        CHECK(table[static_cast<std::size_t>(a)] == chi.evaluate(a));
    }
  }
}

TEST_CASE("parity") {
  for (int j : {3, 4, 6}) {
    auto chars = enumerate_characters(j, 200);
    bool saw_odd = false;
    for (const auto& chi : chars) {
      int a = chi.parity();
      CHECK((a == 0 || a == 1));
      if (a == 1) saw_odd = true;
      if (j == 3) CHECK(a == 0);  // cubic characters are even
    }
    if (j != 3) CHECK(saw_odd);
  }
}

TEST_CASE("enumeration is deterministic across thread counts") {
  for (int j : {3, 6}) {
    auto c1 = enumerate_characters(j, 150, Par{1});
    auto c3 = enumerate_characters(j, 150, Par{3});
    REQUIRE(c1.size() == c3.size());
    for (std::size_t i = 0; i < c1.size(); ++i)
      CHECK(c1[i].modulus == c3[i].modulus);
  }
}

TEST_CASE("rational character machinery") {
  auto principal = RationalCharacter::principal(12);
  CHECK(principal.is_principal());
  CHECK(principal.conductor() == 1);
  auto quad4 = RationalCharacter::quadratic(-4);
  CHECK(quad4.is_primitive());
  CHECK(quad4.char_order() == 2);
  CHECK(quad4.evaluate(5).is_one());
  CHECK(quad4.evaluate(3) == RootOfUnity::make(2, 1));
  auto quad3 = RationalCharacter::quadratic(-3);
  CHECK(quad3.is_primitive());
  CHECK(quad3.evaluate(2) == RootOfUnity::make(2, 1));
}
