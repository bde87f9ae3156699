#pragma once

// Arithmetic in GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D).
//
// Elements are plain bytes. Multiplication goes through a 64 KiB product table
// that is derived from log/antilog tables at compile time; all tables are
// immutable and safe to share between threads.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace ctorsim::gf {

using Element = std::uint8_t;

inline constexpr unsigned kPolynomial = 0x11D;
inline constexpr unsigned kOrder = 256;
// 0x02 generates the multiplicative group under 0x11D.
inline constexpr Element kGenerator = 0x02;

namespace detail {

struct Tables {
  std::array<Element, 512> exp{};  // doubled so exp[log a + log b] needs no modulo
  std::array<std::uint8_t, 256> log{};
  std::array<Element, 256> inv{};
  std::array<std::array<Element, 256>, 256> mul{};
};

// Built at compile time in gf256.cpp; read-only afterwards.
extern const Tables kTables;

}  // namespace detail

constexpr Element add(Element a, Element b) noexcept { return static_cast<Element>(a ^ b); }
constexpr Element sub(Element a, Element b) noexcept { return add(a, b); }

inline Element mul(Element a, Element b) noexcept { return detail::kTables.mul[a][b]; }

// Multiplication through the log/antilog tables directly, without the product table.
inline Element mul_log(Element a, Element b) noexcept {
  if (a == 0 || b == 0) return 0;
  return detail::kTables.exp[detail::kTables.log[a] + detail::kTables.log[b]];
}

// Throws DomainError for a == 0.
Element inv(Element a);

// a / b; throws DomainError for b == 0.
Element div(Element a, Element b);

// a^e with 0^0 == 1.
Element pow(Element a, unsigned e) noexcept;

// Discrete log base kGenerator; a must be nonzero.
std::uint8_t log(Element a);
Element exp(unsigned e) noexcept;

// dst[i] ^= c * src[i]. Spans must have equal length.
void mul_add_region(std::span<Element> dst, std::span<const Element> src, Element c) noexcept;

// dst[i] = c * dst[i].
void scale_region(std::span<Element> dst, Element c) noexcept;

}  // namespace ctorsim::gf
