#pragma once

// Generation-based systematic (n, k) erasure code over GF(2^8).
//
// A message is framed with an 8-byte big-endian length, cut into 512-byte
// cells and grouped into generations of k cells. Each generation is encoded
// into n = k + r coded cells; coded cell i rides sub-flow (circuit) i. The
// exit decodes a generation from any k coded cells whose coefficient vectors
// are independent.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctorsim/gf256.hpp"

namespace ctorsim::codec {

inline constexpr std::size_t kCellSize = 512;
inline constexpr std::size_t kLengthFrame = 8;
inline constexpr std::size_t kMaxCodedCells = 255;

using Cell = std::array<std::uint8_t, kCellSize>;

struct CodeParams {
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t r = 0;

  // Throws ConfigError unless k >= 1 and n = k + r <= 255.
  static CodeParams make(std::size_t k, std::size_t r);
  void validate() const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct Generation {
  std::uint32_t id = 0;
  std::vector<Cell> cells;
};

struct CodedCell {
  std::uint32_t generation_id = 0;
  std::uint8_t subflow_index = 0;
  std::vector<gf::Element> coefficients;
  Cell payload{};

  friend bool operator==(const CodedCell&, const CodedCell&) = default;
};

// n x k coefficient matrix, row-major.
class GeneratorMatrix {
 public:
  GeneratorMatrix(CodeParams params, std::vector<gf::Element> entries);

  const CodeParams& params() const noexcept { return params_; }
  std::span<const gf::Element> row(std::size_t i) const {
    return {entries_.data() + i * params_.k, params_.k};
  }
  gf::Element at(std::size_t i, std::size_t j) const { return entries_[i * params_.k + j]; }
  bool is_systematic() const noexcept;

 private:
  CodeParams params_;
  std::vector<gf::Element> entries_;
};

// Identity stacked on a column-normalised Cauchy block. The first parity row
// is all ones, so r = 1 is plain XOR parity. Every k-row subset is invertible.
GeneratorMatrix build_generator(const CodeParams& params);

// Identity stacked on uniformly random nonzero parity coefficients. Not
// guaranteed MDS; see undecodable_subset_fraction().
GeneratorMatrix build_random_generator(const CodeParams& params, std::uint64_t seed);

// Rank of a set of coefficient rows (each of length k).
std::size_t rank_of(std::span<const std::span<const gf::Element>> rows, std::size_t k);

// Fraction of the C(n, k) row subsets that are singular. Throws ResourceError
// when C(n, k) exceeds `max_subsets`.
double undecodable_subset_fraction(const GeneratorMatrix& matrix,
                                   std::uint64_t max_subsets = 10'000'000);

std::vector<CodedCell> encode_generation(const Generation& gen, const GeneratorMatrix& matrix);

// Recovers the k original cells from the received coded cells via Gaussian
// elimination. Throws UnrecoverableGeneration when the received coefficient
// rows have rank < k and StructuralError on mixed generation ids.
Generation decode_generation(std::span<const CodedCell> received, const CodeParams& params);

// Same, with the generation id known up front (used when nothing arrived).
Generation decode_generation(std::uint32_t generation_id, std::span<const CodedCell> received,
                             const CodeParams& params);

std::vector<Generation> split_message(std::span<const std::uint8_t> message, std::size_t k);

std::vector<std::uint8_t> reassemble_message(std::span<const Generation> generations);

// Number of generations split_message produces for a message of `length` bytes.
std::size_t generation_count(std::size_t length, std::size_t k) noexcept;

// Wire format: generation_id (u32 BE) | subflow_index (u8) | k coefficients | 512 payload.
std::size_t wire_size(std::size_t k) noexcept;
std::vector<std::uint8_t> to_wire(const CodedCell& cell);
CodedCell from_wire(std::span<const std::uint8_t> bytes, std::size_t k);

// Whole-message kernels. The parallel versions fan generations out over
// OpenMP threads; the serial versions are the reference they are tested
// against.
std::vector<std::vector<CodedCell>> encode_generations(std::span<const Generation> gens,
                                                       const GeneratorMatrix& matrix);
std::vector<std::vector<CodedCell>> encode_generations_serial(std::span<const Generation> gens,
                                                              const GeneratorMatrix& matrix);

}  // namespace ctorsim::codec
