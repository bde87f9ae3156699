#include "ctorsim/analytics.hpp"

#include <algorithm>
#include <string>

#include "ctorsim/errors.hpp"

namespace ctorsim::analytics {

ExactProbability::ExactProbability(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw DomainError("probability: zero denominator");
  value_ = BigRational(numerator, denominator);
  if (value_ < 0 || value_ > 1) throw DomainError("probability: value outside [0, 1]");
}

std::string to_string(const ExactProbability& p) {
  return p.numerator().str() + "/" + p.denominator().str();
}

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt c = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    c *= a - b + i;
    c /= i;  // exact: c is C(a - b + i, i) after this step
  }
  return c;
}

namespace {

void check_pool(std::int64_t unknown, std::int64_t known, std::int64_t n) {
  if (unknown < 0 || known < 0) throw DomainError("bridge counts must be non-negative");
  if (n < 1) throw DomainError("n must be at least 1");
  if (n > unknown + known)
    throw DomainError("n = " + std::to_string(n) + " exceeds the pool of " +
                      std::to_string(unknown + known) + " bridges");
}

ExactProbability tail(std::int64_t unknown, std::int64_t known, std::int64_t n,
                      std::int64_t threshold) {
  BigInt favourable = 0;
  const std::int64_t upper = std::min(n, known);
  for (std::int64_t i = threshold + 1; i <= upper; ++i)
    favourable += binomial(unknown, n - i) * binomial(known, i);
  return {favourable, binomial(unknown + known, n)};
}

}  // namespace

ExactProbability p_block_plain(std::int64_t unknown, std::int64_t known, std::int64_t n) {
  check_pool(unknown, known, n);
  return tail(unknown, known, n, 0);
}

ExactProbability p_block_lnc(std::int64_t unknown, std::int64_t known, std::int64_t n,
                             std::int64_t r) {
  check_pool(unknown, known, n);
  if (r < 0 || r >= n) throw DomainError("redundancy r must satisfy 0 <= r < n");
  return tail(unknown, known, n, r);
}

ExactProbability p_block_plain_complement(std::int64_t unknown, std::int64_t known,
                                          std::int64_t n) {
  check_pool(unknown, known, n);
  const BigInt total = binomial(unknown + known, n);
  return {total - binomial(unknown, n), total};
}

ExactProbability p_block(std::int64_t unknown, std::int64_t known, const VariantConfig& config) {
  config.validate();
  const auto n = static_cast<std::int64_t>(config.n);
  if (config.variant == Variant::CTor)
    return p_block_lnc(unknown, known, n, static_cast<std::int64_t>(config.r));
  return p_block_plain(unknown, known, n);
}

ExactProbability enumerate_oracle(std::int64_t unknown, std::int64_t known, std::int64_t n,
                                  std::int64_t threshold, std::uint64_t guard) {
  check_pool(unknown, known, n);
  const std::int64_t total = unknown + known;

  // Subset count by the additive Pascal recurrence, capped at the guard.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (std::int64_t a = 1; a <= total; ++a)
    for (std::int64_t b = std::min(a, n); b >= 1; --b)
      row[b] = std::min<std::uint64_t>(row[b] + row[b - 1], guard + 1);
  if (row[n] > guard)
    throw ResourceError("enumeration of C(" + std::to_string(total) + ", " + std::to_string(n) +
                        ") subsets exceeds guard of " + std::to_string(guard));

  // Labels: positions < known are censor-known bridges.
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) idx[i] = i;
  std::uint64_t subsets = 0, hits = 0;
  for (;;) {
    std::int64_t known_drawn = 0;
    for (auto v : idx) known_drawn += v < known ? 1 : 0;
    ++subsets;
    if (known_drawn > threshold) ++hits;

    std::int64_t i = n;
    while (i > 0 && idx[i - 1] == total - n + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::int64_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {BigInt(hits), BigInt(subsets)};
}

std::vector<SweepRow> sweep(std::int64_t unknown, std::int64_t known_lo, std::int64_t known_hi,
                            const std::vector<VariantConfig>& configs) {
  if (known_lo < 0 || known_hi < known_lo) throw DomainError("sweep: bad M' range");
  for (const auto& c : configs) c.validate();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(known_hi - known_lo + 1) * configs.size());
  for (std::int64_t m = known_lo; m <= known_hi; ++m)
    for (const auto& c : configs) rows.push_back({m, c, {}});

  const auto count = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    rows[i].probability = p_block(unknown, rows[i].m_known, rows[i].config);

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.m_known, a.config) < std::tie(b.m_known, b.config);
  });
  return rows;
}

std::vector<VariantConfig> fig2_configs() {
  return {VariantConfig::otor(),    VariantConfig::mtor(4),     VariantConfig::mtor(5),
          VariantConfig::mtor(8),   VariantConfig::mtor(10),    VariantConfig::ctor(5, 2),
          VariantConfig::ctor(10, 4)};
}

}  // namespace ctorsim::analytics
