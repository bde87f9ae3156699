#pragma once

// Exact bridge-blocking probabilities.
//
// A client draws n of M_b + M' bridges, M' of them known to the censor. The
// number of known bridges drawn is hypergeometric, and censorship succeeds
// when it exceeds the variant's tolerance (0 without coding, r with coding):
//
//   P = sum_{i = t+1}^{min(n, M')} C(M_b, n-i) C(M', i) / C(M_b + M', n)
//
// Everything is computed in exact rational arithmetic; doubles only appear
// at the output boundary.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ctorsim/variant.hpp"

namespace ctorsim::analytics {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class ExactProbability {
 public:
  ExactProbability() = default;
  // Reduces to lowest terms; throws DomainError outside [0, 1] or for den == 0.
  ExactProbability(BigInt numerator, BigInt denominator);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const BigRational& value() const noexcept { return value_; }
  double to_double() const { return value_.convert_to<double>(); }

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ <= b.value_;
  }

 private:
  BigRational value_{0};
};

std::string to_string(const ExactProbability& p);

// C(a, b); zero when b < 0 or b > a.
BigInt binomial(std::int64_t a, std::int64_t b);

// P_bb: at least one chosen bridge is known (oTor / mTor).
ExactProbability p_block_plain(std::int64_t unknown, std::int64_t known, std::int64_t n);

// P^LNC_bb: more than r chosen bridges are known (cTor).
ExactProbability p_block_lnc(std::int64_t unknown, std::int64_t known, std::int64_t n,
                             std::int64_t r);

// 1 - C(M_b, n) / C(M_b + M', n).
ExactProbability p_block_plain_complement(std::int64_t unknown, std::int64_t known,
                                          std::int64_t n);

// Dispatch on the variant: plain for oTor / mTor, LNC for cTor.
ExactProbability p_block(std::int64_t unknown, std::int64_t known, const VariantConfig& config);

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// Brute force over every n-subset of a labelled pool: fraction of subsets
// holding more than `threshold` known bridges. Throws ResourceError when
// C(M_b + M', n) exceeds `guard`.
ExactProbability enumerate_oracle(std::int64_t unknown, std::int64_t known, std::int64_t n,
                                  std::int64_t threshold,
                                  std::uint64_t guard = kEnumerationGuard);

struct SweepRow {
  std::int64_t m_known = 0;
  VariantConfig config;
  ExactProbability probability;
};

// One row per (M' in [known_lo, known_hi], config), sorted by
// (m_known, variant, n, r) with variants ordered otor < mtor < ctor.
std::vector<SweepRow> sweep(std::int64_t unknown, std::int64_t known_lo, std::int64_t known_hi,
                            const std::vector<VariantConfig>& configs);

// Curve set for the standard figure: otor, mtor n in {4, 5, 8, 10},
// ctor (5, 2) and (10, 4).
std::vector<VariantConfig> fig2_configs();

}  // namespace ctorsim::analytics
