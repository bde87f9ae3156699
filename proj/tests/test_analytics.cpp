#include "ctorsim/analytics.hpp"
#include "ctorsim/errors.hpp"
#include "doctest.h"

using namespace ctorsim;
using namespace ctorsim::analytics;

namespace {

BigInt pascal(int a, int b) {
  std::vector<std::vector<BigInt>> t(a + 1);
  for (int i = 0; i <= a; ++i) {
    t[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return (b < 0 || b > a) ? BigInt(0) : t[a][b];
}

ExactProbability frac(long num, long den) { return {BigInt(num), BigInt(den)}; }

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(30, 4) == 27405);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  for (int a = 0; a <= 60; ++a)
    for (int b = 0; b <= a; ++b) REQUIRE(binomial(a, b) == pascal(a, b));
  // Beyond 64 bits.
  CHECK(binomial(100, 50).str() == "100891344545564193334812497256");
}

TEST_CASE("exact probability") {
  const auto p = frac(14755, 27405);
  CHECK(p.numerator() == 2951);
  CHECK(p.denominator() == 5481);
  CHECK(to_string(p) == "2951/5481");
  CHECK(p.to_double() == doctest::Approx(0.53841).epsilon(1e-5));
  CHECK_THROWS_AS(frac(3, 2), DomainError);
  CHECK_THROWS_AS(frac(1, 0), DomainError);
  CHECK(frac(0, 7) == ExactProbability{});
}

TEST_CASE("p_block_plain") {
  CHECK(p_block_plain(25, 0, 4) == frac(0, 1));
  CHECK(p_block_plain(25, 5, 1) == frac(1, 6));
  CHECK(p_block_plain(25, 5, 4) == frac(14755, 27405));
  CHECK(p_block_plain(25, 16, 10) == frac(39327, 39442));
  CHECK(p_block_plain(25, 16, 8) == frac(331462, 335257));
  CHECK(p_block_plain(0, 5, 2) == frac(1, 1));
  CHECK_THROWS_AS(p_block_plain(2, 1, 4), DomainError);
  CHECK_THROWS_AS(p_block_plain(2, 1, 0), DomainError);
  CHECK_THROWS_AS(p_block_plain(-1, 1, 1), DomainError);
}

TEST_CASE("p_block_lnc") {
  CHECK(p_block_lnc(25, 5, 4, 1) == frac(3255, 27405));
  CHECK(p_block_lnc(25, 25, 5, 2) == frac(1, 2));
  CHECK(p_block_lnc(25, 25, 10, 4) == frac(105631, 165722));
  for (int known = 0; known <= 4; ++known) CHECK(p_block_lnc(25, known, 10, 4) == frac(0, 1));
  for (int known = 0; known <= 12; ++known)
    for (int n = 1; n <= 8; ++n) REQUIRE(p_block_lnc(25, known, n, 0) == p_block_plain(25, known, n));
  CHECK_THROWS_AS(p_block_lnc(25, 5, 4, 4), DomainError);
  CHECK_THROWS_AS(p_block_lnc(25, 5, 4, -1), DomainError);
}

TEST_CASE("complement form and Vandermonde") {
  for (int known = 0; known <= 25; ++known)
    for (int n = 1; n <= 12; ++n) {
      REQUIRE(p_block_plain(25, known, n) == p_block_plain_complement(25, known, n));
      BigInt sum = 0;
      for (int i = 0; i <= std::min(n, known); ++i) sum += binomial(25, n - i) * binomial(known, i);
      REQUIRE(sum == binomial(25 + known, n));
    }
}

TEST_CASE("enumerate_oracle") {
  CHECK(enumerate_oracle(25, 5, 4, 0) == frac(14755, 27405));
  CHECK(enumerate_oracle(25, 5, 4, 1) == frac(3255, 27405));
  CHECK(enumerate_oracle(25, 5, 1, 0) == frac(1, 6));
  CHECK(enumerate_oracle(10, 0, 3, 0) == frac(0, 1));
  CHECK(enumerate_oracle(0, 3, 3, 0) == frac(1, 1));
  CHECK_THROWS_AS(enumerate_oracle(25, 25, 10, 0), ResourceError);
  CHECK_THROWS_AS(enumerate_oracle(25, 5, 4, 0, 1000), ResourceError);
}

TEST_CASE("p_block dispatch") {
  CHECK(p_block(25, 5, VariantConfig::otor()) == frac(1, 6));
  CHECK(p_block(25, 5, VariantConfig::mtor(4)) == frac(14755, 27405));
  CHECK(p_block(25, 5, VariantConfig::ctor(4, 1)) == frac(3255, 27405));
}

TEST_CASE("sweep") {
  SUBCASE("single point") {
    const auto rows = sweep(25, 5, 5, {VariantConfig::mtor(4)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].probability == p_block_plain(25, 5, 4));
  }
  SUBCASE("standard grid is sorted and complete") {
    const auto rows = sweep(25, 0, 25, fig2_configs());
    CHECK(rows.size() == 26 * 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& a = rows[i - 1];
      const auto& b = rows[i];
      REQUIRE(std::tie(a.m_known, a.config) < std::tie(b.m_known, b.config));
    }
    CHECK(rows.front().config == VariantConfig::otor());
    CHECK(rows.back().config == VariantConfig::ctor(10, 4));
  }
  SUBCASE("monotone in known bridges and in r") {
    for (int n = 2; n <= 10; ++n)
      for (int r = 0; r < n; ++r)
        for (int known = 1; known <= 25; ++known) {
          REQUIRE(p_block_lnc(25, known - 1, n, r) <= p_block_lnc(25, known, n, r));
          if (r > 0) REQUIRE(p_block_lnc(25, known, n, r) <= p_block_lnc(25, known, n, r - 1));
        }
  }
  SUBCASE("bad range") { CHECK_THROWS_AS(sweep(25, 5, 4, fig2_configs()), DomainError); }
}
