#include "ctorsim/gf256.hpp"

#include <cassert>

#include "ctorsim/errors.hpp"

namespace ctorsim::gf {

namespace detail {

namespace {

constexpr Tables make_tables() {
  Tables t;
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<Element>(x);
    t.log[x] = static_cast<std::uint8_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= kPolynomial;
  }
  for (unsigned i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  for (unsigned a = 1; a < 256; ++a) t.inv[a] = t.exp[255 - t.log[a]];
  for (unsigned a = 1; a < 256; ++a)
    for (unsigned b = 1; b < 256; ++b) t.mul[a][b] = t.exp[t.log[a] + t.log[b]];
  return t;
}

}  // namespace

constexpr Tables kTables = make_tables();

}  // namespace detail

Element inv(Element a) {
  if (a == 0) throw DomainError("gf256: zero has no multiplicative inverse");
  return detail::kTables.inv[a];
}

Element div(Element a, Element b) {
  if (b == 0) throw DomainError("gf256: division by zero");
  return mul(a, detail::kTables.inv[b]);
}

Element pow(Element a, unsigned e) noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  unsigned l = (static_cast<unsigned>(detail::kTables.log[a]) * (e % 255)) % 255;
  return detail::kTables.exp[l];
}

std::uint8_t log(Element a) {
  if (a == 0) throw DomainError("gf256: log of zero");
  return detail::kTables.log[a];
}

Element exp(unsigned e) noexcept { return detail::kTables.exp[e % 255]; }

void mul_add_region(std::span<Element> dst, std::span<const Element> src, Element c) noexcept {
  assert(dst.size() == src.size());
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    return;
  }
  const auto& row = detail::kTables.mul[c];
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= row[src[i]];
}

void scale_region(std::span<Element> dst, Element c) noexcept {
  if (c == 1) return;
  const auto& row = detail::kTables.mul[c];
  for (auto& v : dst) v = row[v];
}

}  // namespace ctorsim::gf
