#include "ctorsim/onion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ctorsim/errors.hpp"

namespace ctorsim::onion {

namespace {

std::vector<std::uint8_t> derive_key(std::uint64_t key_seed, RouterId id) {
  std::vector<std::uint8_t> key(RouterRegistry::kKeyBytes);
  std::uint64_t s = derive_seed(key_seed, id);
  for (std::size_t i = 0; i < key.size(); i += 8) {
    s = splitmix64(s);
    for (std::size_t b = 0; b < 8 && i + b < key.size(); ++b)
      key[i + b] = static_cast<std::uint8_t>(s >> (8 * b));
  }
  return key;
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

RouterRegistry::RouterRegistry(std::size_t bridges, std::size_t middles, std::size_t exits,
                               std::uint64_t key_seed) {
  RouterId next = 0;
  auto fill = [&](std::vector<OnionRouter>& v, std::size_t count, RouterKind kind) {
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i, ++next)
      v.push_back({next, kind, derive_key(key_seed, next)});
  };
  fill(bridges_, bridges, RouterKind::Bridge);
  fill(middles_, middles, RouterKind::Middle);
  fill(exits_, exits, RouterKind::Exit);
}

const OnionRouter& RouterRegistry::bridge(RouterId id) const {
  if (id >= bridges_.size())
    throw ConfigError("router registry: " + std::to_string(id) + " is not a bridge");
  return bridges_[id];
}

std::size_t CircuitSet::blocked_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(circuits.begin(), circuits.end(), [](const Circuit& c) { return c.blocked; }));
}

bool CircuitSet::is_disjoint() const {
  if (circuits.empty()) return false;
  std::set<RouterId> seen;
  const RouterId exit = circuits.front().exit.id;
  for (const auto& c : circuits) {
    if (c.exit.id != exit) return false;
    if (!seen.insert(c.entry.id).second || !seen.insert(c.middle.id).second) return false;
  }
  return !seen.contains(exit);
}

std::size_t CircuitSet::distinct_routers() const {
  std::set<RouterId> ids;
  for (const auto& c : circuits) ids.insert({c.entry.id, c.middle.id, c.exit.id});
  return ids.size();
}

CircuitSet build_circuits(std::span<const RouterId> bridge_choices,
                          const RouterRegistry& registry, Rng& rng) {
  const std::size_t n = bridge_choices.size();
  if (n == 0) throw ConfigError("build_circuits: need at least one bridge");
  if (registry.middles().size() < n || registry.exits().empty())
    throw ConfigError("build_circuits: router pool too small for " + std::to_string(n) +
                      " middles and one exit");
  std::set<RouterId> unique(bridge_choices.begin(), bridge_choices.end());
  if (unique.size() != n) throw ConfigError("build_circuits: duplicate bridge choice");

  // Partial Fisher-Yates over middle indices.
  std::vector<std::size_t> mid(registry.middles().size());
  std::iota(mid.begin(), mid.end(), 0);
  for (std::size_t i = 0; i < n; ++i) std::swap(mid[i], mid[i + rng.below(mid.size() - i)]);
  const auto& exit = registry.exits()[rng.below(registry.exits().size())];

  CircuitSet set;
  set.circuits.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    set.circuits.push_back({static_cast<std::uint32_t>(i), registry.bridge(bridge_choices[i]),
                            registry.middles()[mid[i]], exit, false});
  return set;
}

void apply_keystream(std::span<std::uint8_t> bytes, std::span<const std::uint8_t> key,
                     std::uint32_t circuit_id, std::uint64_t sequence, int depth) {
  std::uint64_t state = fnv1a(key);
  state = splitmix64(state ^ (std::uint64_t{circuit_id} << 32 | static_cast<std::uint32_t>(depth)));
  state = splitmix64(state ^ sequence);
  std::size_t i = 0;
  while (i < bytes.size()) {
    state += 0x9E3779B97F4A7C15ULL;
    const std::uint64_t word = splitmix64(state);
    for (std::size_t b = 0; b < 8 && i < bytes.size(); ++b, ++i)
      bytes[i] ^= static_cast<std::uint8_t>(word >> (8 * b));
  }
}

LayeredCell wrap_layers(std::span<const std::uint8_t> cell_bytes, const Circuit& circuit,
                        std::uint64_t sequence) {
  for (const auto* r : {&circuit.entry, &circuit.middle, &circuit.exit})
    if (r->layer_key.empty())
      throw ConfigError("wrap_layers: router " + std::to_string(r->id) + " has no layer key");
  LayeredCell cell{{cell_bytes.begin(), cell_bytes.end()}, circuit.id, sequence, 0};
  for (const auto* r : {&circuit.exit, &circuit.middle, &circuit.entry}) {
    ++cell.layers_remaining;
    apply_keystream(cell.bytes, r->layer_key, circuit.id, sequence, cell.layers_remaining);
  }
  return cell;
}

LayeredCell peel_layer(LayeredCell cell, const OnionRouter& router) {
  if (cell.layers_remaining <= 0) throw ProtocolError("peel_layer: no encryption layer left");
  if (router.layer_key.empty())
    throw ConfigError("peel_layer: router " + std::to_string(router.id) + " has no layer key");
  apply_keystream(cell.bytes, router.layer_key, cell.circuit_id, cell.sequence,
                  cell.layers_remaining);
  --cell.layers_remaining;
  return cell;
}

std::vector<std::vector<codec::CodedCell>> transmit(
    const CircuitSet& circuits, std::span<const std::vector<codec::CodedCell>> coded) {
  const std::size_t n = circuits.size();
  std::vector<std::vector<codec::CodedCell>> delivered(coded.size());
  for (std::size_t g = 0; g < coded.size(); ++g) {
    if (coded[g].size() != n)
      throw StructuralError("transmit: generation has " + std::to_string(coded[g].size()) +
                            " coded cells for " + std::to_string(n) + " circuits");
    for (const auto& cc : coded[g]) {
      if (cc.subflow_index >= n) throw StructuralError("transmit: subflow index out of range");
      const auto& circuit = circuits.circuits[cc.subflow_index];
      // A blocked entry drops the whole sub-flow silently.
      if (circuit.blocked) continue;
      const std::uint64_t seq = g * n + cc.subflow_index;
      auto cell = wrap_layers(codec::to_wire(cc), circuit, seq);
      cell = peel_layer(std::move(cell), circuit.entry);
      cell = peel_layer(std::move(cell), circuit.middle);
      cell = peel_layer(std::move(cell), circuit.exit);
      delivered[g].push_back(codec::from_wire(cell.bytes, cc.coefficients.size()));
    }
  }
  return delivered;
}

TransferResult run_transfer(Variant variant, const codec::CodeParams& params,
                            std::span<const std::uint8_t> message, const CircuitSet& circuits) {
  check_variant_params(variant, params);
  if (circuits.size() != params.n)
    throw ConfigError("run_transfer: " + std::to_string(circuits.size()) + " circuits for n = " +
                      std::to_string(params.n));

  const auto gens = codec::split_message(message, params.k);
  const auto matrix = codec::build_generator(params);
  const auto coded = codec::encode_generations_serial(gens, matrix);
  const auto delivered = transmit(circuits, coded);

  TransferResult result;
  result.generations = gens.size();
  result.delivered_per_generation.reserve(gens.size());
  for (const auto& d : delivered) result.delivered_per_generation.push_back(d.size());

  std::vector<codec::Generation> decoded;
  decoded.reserve(gens.size());
  for (std::size_t g = 0; g < delivered.size(); ++g) {
    try {
      decoded.push_back(
          codec::decode_generation(static_cast<std::uint32_t>(g), delivered[g], params));
    } catch (const UnrecoverableGeneration& e) {
      result.failure_reason = e.what();
      result.failed_generation = static_cast<std::uint32_t>(g);
      return result;
    }
  }
  result.recovered = codec::reassemble_message(decoded);
  result.success = std::equal(result.recovered.begin(), result.recovered.end(), message.begin(),
                              message.end());
  if (!result.success) result.failure_reason = "recovered bytes differ from the message";
  return result;
}

}  // namespace ctorsim::onion
