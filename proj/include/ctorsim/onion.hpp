#pragma once

// Onion transport model: routers, three-hop circuits sharing one exit,
// layered (simulated) encryption, and the client-to-exit transfer pipeline
// for oTor / mTor / cTor.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctorsim/codec.hpp"
#include "ctorsim/rng.hpp"
#include "ctorsim/variant.hpp"

namespace ctorsim::onion {

using RouterId = std::uint32_t;

enum class RouterKind { Bridge, Middle, Exit };

struct OnionRouter {
  RouterId id = 0;
  RouterKind kind = RouterKind::Middle;
  std::vector<std::uint8_t> layer_key;
};

// Immutable pool of routers. Ids are dense: bridges first, then middles, then exits.
class RouterRegistry {
 public:
  static constexpr std::size_t kKeyBytes = 16;

  RouterRegistry(std::size_t bridges, std::size_t middles, std::size_t exits,
                 std::uint64_t key_seed = 0);

  const std::vector<OnionRouter>& bridges() const noexcept { return bridges_; }
  const std::vector<OnionRouter>& middles() const noexcept { return middles_; }
  const std::vector<OnionRouter>& exits() const noexcept { return exits_; }

  // Throws ConfigError when `id` is not a bridge of this registry.
  const OnionRouter& bridge(RouterId id) const;

 private:
  std::vector<OnionRouter> bridges_;
  std::vector<OnionRouter> middles_;
  std::vector<OnionRouter> exits_;
};

struct Circuit {
  std::uint32_t id = 0;
  OnionRouter entry;
  OnionRouter middle;
  OnionRouter exit;
  bool blocked = false;
};

struct CircuitSet {
  std::vector<Circuit> circuits;

  std::size_t size() const noexcept { return circuits.size(); }
  std::size_t blocked_count() const noexcept;
  // Distinct entries, distinct middles, entries and middles disjoint, one shared exit.
  bool is_disjoint() const;
  std::size_t distinct_routers() const;
};

// Entries are the given bridges in order; middles and the exit are drawn
// uniformly without replacement from the registry. Throws ConfigError on
// duplicate or unknown bridges and on a pool too small for n middles + 1 exit.
CircuitSet build_circuits(std::span<const RouterId> bridge_choices,
                          const RouterRegistry& registry, Rng& rng);

struct LayeredCell {
  std::vector<std::uint8_t> bytes;
  std::uint32_t circuit_id = 0;
  std::uint64_t sequence = 0;
  int layers_remaining = 0;
};

// XORs the keystream for (key, circuit, sequence, layer depth) into `bytes`.
// Depth 3 is the outermost (entry) layer, depth 1 the innermost (exit).
void apply_keystream(std::span<std::uint8_t> bytes, std::span<const std::uint8_t> key,
                     std::uint32_t circuit_id, std::uint64_t sequence, int depth);

// Applies the exit, middle and entry layers in that order.
LayeredCell wrap_layers(std::span<const std::uint8_t> cell_bytes, const Circuit& circuit,
                        std::uint64_t sequence);

// Removes the outermost remaining layer with `router`'s key.
LayeredCell peel_layer(LayeredCell cell, const OnionRouter& router);

// Delivers, per generation, the fully peeled coded cells of every unblocked
// circuit. Coded cell i rides circuit i.
std::vector<std::vector<codec::CodedCell>> transmit(
    const CircuitSet& circuits, std::span<const std::vector<codec::CodedCell>> coded);

struct TransferResult {
  bool success = false;
  std::vector<std::uint8_t> recovered;
  std::string failure_reason;
  std::optional<std::uint32_t> failed_generation;
  std::vector<std::size_t> delivered_per_generation;
  std::size_t generations = 0;
};

// Split, encode, wrap, transmit, peel, decode and reassemble one message.
// Throws ConfigError when `params` does not fit `variant` or the circuit count.
TransferResult run_transfer(Variant variant, const codec::CodeParams& params,
                            std::span<const std::uint8_t> message, const CircuitSet& circuits);

}  // namespace ctorsim::onion
