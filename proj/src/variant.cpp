#include "ctorsim/variant.hpp"

#include <charconv>
#include <vector>

#include "ctorsim/errors.hpp"

namespace ctorsim {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::OTor: return "otor";
    case Variant::MTor: return "mtor";
    case Variant::CTor: return "ctor";
  }
  return "?";
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view whole) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError("variant '" + std::string(whole) + "': bad count '" + std::string(s) + "'");
  return v;
}

}  // namespace

VariantConfig VariantConfig::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  VariantConfig c;
  if (parts[0] == "otor" && parts.size() == 1) {
    c = otor();
  } else if (parts[0] == "mtor" && parts.size() == 2) {
    c = mtor(parse_count(parts[1], text));
  } else if (parts[0] == "ctor" && parts.size() == 3) {
    c = ctor(parse_count(parts[1], text), parse_count(parts[2], text));
  } else {
    throw ConfigError("variant '" + std::string(text) +
                      "': expected otor, mtor:<n> or ctor:<n>:<r>");
  }
  c.validate();
  return c;
}

void VariantConfig::validate() const {
  switch (variant) {
    case Variant::OTor:
      if (n != 1 || r != 0) throw ConfigError("otor requires n = 1, r = 0");
      break;
    case Variant::MTor:
      if (n < 1 || r != 0) throw ConfigError("mtor requires n >= 1, r = 0");
      break;
    case Variant::CTor:
      if (r < 1 || r >= n) throw ConfigError(label() + ": ctor requires 1 <= r < n");
      break;
  }
  if (n > codec::kMaxCodedCells) throw ConfigError(label() + ": n exceeds 255");
}

codec::CodeParams VariantConfig::code_params() const {
  validate();
  return codec::CodeParams::make(n - r, r);
}

std::string VariantConfig::label() const {
  switch (variant) {
    case Variant::OTor: return "otor";
    case Variant::MTor: return "mtor:" + std::to_string(n);
    case Variant::CTor: return "ctor:" + std::to_string(n) + ":" + std::to_string(r);
  }
  return "?";
}

void check_variant_params(Variant variant, const codec::CodeParams& p) {
  p.validate();
  switch (variant) {
    case Variant::OTor:
      if (p.n != 1 || p.k != 1) throw ConfigError("otor requires n = k = 1");
      break;
    case Variant::MTor:
      if (p.r != 0) throw ConfigError("mtor requires r = 0");
      break;
    case Variant::CTor:
      if (p.r < 1) throw ConfigError("ctor requires r >= 1");
      break;
  }
}

}  // namespace ctorsim
