#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "ctorsim/codec.hpp"

namespace ctorsim {

// oTor: one circuit. mTor: n circuits, no coding. cTor: n circuits carrying
// an (n, n - r) code. All three run through the same codec with degenerate
// parameters for oTor and mTor.
enum class Variant { OTor, MTor, CTor };

std::string_view to_string(Variant v) noexcept;

struct VariantConfig {
  Variant variant = Variant::OTor;
  std::size_t n = 1;
  std::size_t r = 0;

  // Parses "otor", "mtor:<n>" or "ctor:<n>:<r>". Throws ConfigError.
  static VariantConfig parse(std::string_view text);
  static VariantConfig otor() { return {Variant::OTor, 1, 0}; }
  static VariantConfig mtor(std::size_t n) { return {Variant::MTor, n, 0}; }
  static VariantConfig ctor(std::size_t n, std::size_t r) { return {Variant::CTor, n, r}; }

  // Throws ConfigError when the (variant, n, r) combination is inconsistent.
  void validate() const;
  codec::CodeParams code_params() const;
  std::string label() const;

  // Censorship succeeds once more than this many circuits are blocked.
  std::size_t tolerated_blocks() const noexcept { return variant == Variant::CTor ? r : 0; }
  bool interrupted_by(std::size_t blocked_count) const noexcept {
    return blocked_count > tolerated_blocks();
  }

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
  friend auto operator<=>(const VariantConfig&, const VariantConfig&) = default;
};

// Checks that `params` is the degenerate code for `variant`
// (oTor: n = k = 1; mTor: k = n, r = 0; cTor: r >= 1).
void check_variant_params(Variant variant, const codec::CodeParams& params);

}  // namespace ctorsim
