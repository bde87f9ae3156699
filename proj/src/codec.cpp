#include "ctorsim/codec.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string>

#include "ctorsim/errors.hpp"
#include "ctorsim/rng.hpp"

namespace ctorsim::codec {

CodeParams CodeParams::make(std::size_t k, std::size_t r) {
  CodeParams p{k + r, k, r};
  p.validate();
  return p;
}

void CodeParams::validate() const {
  if (k < 1) throw ConfigError("code params: k must be at least 1");
  if (n != k + r) throw ConfigError("code params: n must equal k + r");
  if (n > kMaxCodedCells)
    throw ConfigError("code params: n = " + std::to_string(n) + " exceeds 255");
}

GeneratorMatrix::GeneratorMatrix(CodeParams params, std::vector<gf::Element> entries)
    : params_(params), entries_(std::move(entries)) {
  params_.validate();
  if (entries_.size() != params_.n * params_.k)
    throw StructuralError("generator matrix: entry count does not match n x k");
}

bool GeneratorMatrix::is_systematic() const noexcept {
  for (std::size_t i = 0; i < params_.k; ++i)
    for (std::size_t j = 0; j < params_.k; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

namespace {

std::vector<gf::Element> identity_block(const CodeParams& p) {
  std::vector<gf::Element> e(p.n * p.k, 0);
  for (std::size_t i = 0; i < p.k; ++i) e[i * p.k + i] = 1;
  return e;
}

}  // namespace

GeneratorMatrix build_generator(const CodeParams& params) {
  params.validate();
  auto e = identity_block(params);
  // Cauchy block C[i][j] = 1 / (x_i + y_j) with x_i = i, y_j = r + j, all
  // distinct. Scaling column j by 1 / C[0][j] keeps every square minor
  // nonsingular and turns the first parity row into all ones.
  const std::size_t k = params.k;
  for (std::size_t i = 0; i < params.r; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto x = static_cast<gf::Element>(i);
      const auto y = static_cast<gf::Element>(params.r + j);
      const auto c = gf::inv(gf::add(x, y));
      const auto c0 = gf::inv(gf::add(0, y));
      e[(k + i) * k + j] = gf::div(c, c0);
    }
  }
  return GeneratorMatrix(params, std::move(e));
}

GeneratorMatrix build_random_generator(const CodeParams& params, std::uint64_t seed) {
  params.validate();
  auto e = identity_block(params);
  Rng rng(seed);
  for (std::size_t i = params.k * params.k; i < e.size(); ++i)
    e[i] = static_cast<gf::Element>(1 + rng.below(255));
  return GeneratorMatrix(params, std::move(e));
}

std::size_t rank_of(std::span<const std::span<const gf::Element>> rows, std::size_t k) {
  std::vector<std::vector<gf::Element>> m;
  m.reserve(rows.size());
  for (auto r : rows) m.emplace_back(r.begin(), r.end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const auto pinv = gf::inv(m[rank][col]);
    gf::scale_region(m[rank], pinv);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != rank && m[i][col] != 0) gf::mul_add_region(m[i], m[rank], m[i][col]);
    ++rank;
  }
  return rank;
}

double undecodable_subset_fraction(const GeneratorMatrix& matrix, std::uint64_t max_subsets) {
  const auto& p = matrix.params();
  // C(n, k) with early exit on the guard.
  std::uint64_t total = 1;
  for (std::size_t i = 1; i <= p.k; ++i) {
    total = total * (p.n - p.k + i) / i;
    if (total > max_subsets) throw ResourceError("subset enumeration exceeds guard");
  }
  std::vector<std::size_t> idx(p.k);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t singular = 0;
  std::vector<std::span<const gf::Element>> rows(p.k);
  for (;;) {
    for (std::size_t i = 0; i < p.k; ++i) rows[i] = matrix.row(idx[i]);
    if (rank_of(rows, p.k) < p.k) ++singular;
    std::size_t i = p.k;
    while (i > 0 && idx[i - 1] == p.n - p.k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < p.k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return static_cast<double>(singular) / static_cast<double>(total);
}

std::vector<CodedCell> encode_generation(const Generation& gen, const GeneratorMatrix& matrix) {
  const auto& p = matrix.params();
  if (gen.cells.size() != p.k)
    throw StructuralError("encode: generation " + std::to_string(gen.id) + " has " +
                          std::to_string(gen.cells.size()) + " cells, expected " +
                          std::to_string(p.k));
  std::vector<CodedCell> out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    auto& cc = out[i];
    cc.generation_id = gen.id;
    cc.subflow_index = static_cast<std::uint8_t>(i);
    auto row = matrix.row(i);
    cc.coefficients.assign(row.begin(), row.end());
    cc.payload.fill(0);
    for (std::size_t j = 0; j < p.k; ++j) gf::mul_add_region(cc.payload, gen.cells[j], row[j]);
  }
  return out;
}

Generation decode_generation(std::span<const CodedCell> received, const CodeParams& params) {
  if (received.empty()) {
    params.validate();
    throw UnrecoverableGeneration(std::nullopt, 0, params.k);
  }
  return decode_generation(received.front().generation_id, received, params);
}

Generation decode_generation(std::uint32_t generation_id, std::span<const CodedCell> received,
                             const CodeParams& params) {
  params.validate();
  const std::size_t k = params.k;
  for (const auto& c : received) {
    if (c.generation_id != generation_id)
      throw StructuralError("decode: mixed generation ids in one decode set");
    if (c.coefficients.size() != k)
      throw StructuralError("decode: coefficient vector length differs from k");
  }

  Generation out{generation_id, std::vector<Cell>(k)};

  // Fast path: every systematic cell present.
  std::vector<const CodedCell*> unit(k, nullptr);
  for (const auto& c : received) {
    std::size_t ones = 0, pos = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (c.coefficients[j] == 1) {
        ++ones;
        pos = j;
      } else if (c.coefficients[j] != 0) {
        ones = 2;
        break;
      }
    }
    if (ones == 1 && !unit[pos]) unit[pos] = &c;
  }
  if (std::all_of(unit.begin(), unit.end(), [](auto* p) { return p != nullptr; })) {
    for (std::size_t j = 0; j < k; ++j) out.cells[j] = unit[j]->payload;
    return out;
  }

  // Gauss-Jordan on [coefficients | payload].
  struct Row {
    std::vector<gf::Element> coef;
    Cell data;
  };
  std::vector<Row> rows;
  rows.reserve(received.size());
  for (const auto& c : received) rows.push_back({c.coefficients, c.payload});

  // Columns without a pivot are skipped so the reported rank is the true rank.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < k && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p].coef[col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    auto& piv = rows[rank];
    const auto s = gf::inv(piv.coef[col]);
    gf::scale_region(piv.coef, s);
    gf::scale_region(piv.data, s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank) continue;
      const auto f = rows[i].coef[col];
      if (f == 0) continue;
      gf::mul_add_region(rows[i].coef, piv.coef, f);
      gf::mul_add_region(rows[i].data, piv.data, f);
    }
    ++rank;
  }
  if (rank < k) throw UnrecoverableGeneration(generation_id, rank, k);
  for (std::size_t j = 0; j < k; ++j) out.cells[j] = rows[j].data;
  return out;
}

std::size_t generation_count(std::size_t length, std::size_t k) noexcept {
  const std::size_t cells = (length + kLengthFrame + kCellSize - 1) / kCellSize;
  return (cells + k - 1) / k;
}

std::vector<Generation> split_message(std::span<const std::uint8_t> message, std::size_t k) {
  if (message.empty()) throw DomainError("split_message: message is empty");
  if (k < 1) throw ConfigError("split_message: k must be at least 1");

  const std::size_t gens = generation_count(message.size(), k);
  std::vector<std::uint8_t> stream(gens * k * kCellSize, 0);
  const std::uint64_t len = message.size();
  for (std::size_t i = 0; i < kLengthFrame; ++i)
    stream[i] = static_cast<std::uint8_t>(len >> (8 * (kLengthFrame - 1 - i)));
  std::memcpy(stream.data() + kLengthFrame, message.data(), message.size());

  std::vector<Generation> out(gens);
  for (std::size_t g = 0; g < gens; ++g) {
    out[g].id = static_cast<std::uint32_t>(g);
    out[g].cells.resize(k);
    for (std::size_t j = 0; j < k; ++j)
      std::memcpy(out[g].cells[j].data(), stream.data() + (g * k + j) * kCellSize, kCellSize);
  }
  return out;
}

std::vector<std::uint8_t> reassemble_message(std::span<const Generation> generations) {
  if (generations.empty()) throw StructuralError("reassemble: no generations");
  std::vector<std::uint8_t> stream;
  for (std::size_t g = 0; g < generations.size(); ++g) {
    if (generations[g].id != g)
      throw StructuralError("reassemble: missing generation id " + std::to_string(g));
    for (const auto& c : generations[g].cells) stream.insert(stream.end(), c.begin(), c.end());
  }
  if (stream.size() < kLengthFrame) throw StructuralError("reassemble: no length frame");
  std::uint64_t len = 0;
  for (std::size_t i = 0; i < kLengthFrame; ++i) len = (len << 8) | stream[i];
  if (len == 0) throw DomainError("reassemble: zero-length frame");
  if (len > stream.size() - kLengthFrame)
    throw StructuralError("reassemble: length frame exceeds cell stream");
  return {stream.begin() + kLengthFrame, stream.begin() + kLengthFrame + len};
}

std::size_t wire_size(std::size_t k) noexcept { return 4 + 1 + k + kCellSize; }

std::vector<std::uint8_t> to_wire(const CodedCell& cell) {
  std::vector<std::uint8_t> w;
  w.reserve(wire_size(cell.coefficients.size()));
  const auto id = cell.generation_id;
  w.push_back(static_cast<std::uint8_t>(id >> 24));
  w.push_back(static_cast<std::uint8_t>(id >> 16));
  w.push_back(static_cast<std::uint8_t>(id >> 8));
  w.push_back(static_cast<std::uint8_t>(id));
  w.push_back(cell.subflow_index);
  w.insert(w.end(), cell.coefficients.begin(), cell.coefficients.end());
  w.insert(w.end(), cell.payload.begin(), cell.payload.end());
  return w;
}

CodedCell from_wire(std::span<const std::uint8_t> bytes, std::size_t k) {
  if (bytes.size() != wire_size(k))
    throw StructuralError("wire: expected " + std::to_string(wire_size(k)) + " bytes, got " +
                          std::to_string(bytes.size()));
  CodedCell c;
  c.generation_id = (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
                    (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
  c.subflow_index = bytes[4];
  c.coefficients.assign(bytes.begin() + 5, bytes.begin() + 5 + k);
  std::memcpy(c.payload.data(), bytes.data() + 5 + k, kCellSize);
  return c;
}

std::vector<std::vector<CodedCell>> encode_generations_serial(std::span<const Generation> gens,
                                                              const GeneratorMatrix& matrix) {
  std::vector<std::vector<CodedCell>> out(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) out[g] = encode_generation(gens[g], matrix);
  return out;
}

std::vector<std::vector<CodedCell>> encode_generations(std::span<const Generation> gens,
                                                       const GeneratorMatrix& matrix) {
  std::vector<std::vector<CodedCell>> out(gens.size());
  for (const auto& g : gens)
    if (g.cells.size() != matrix.params().k)
      throw StructuralError("encode: generation " + std::to_string(g.id) + " has wrong size");
  const auto count = static_cast<std::ptrdiff_t>(gens.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t g = 0; g < count; ++g) out[g] = encode_generation(gens[g], matrix);
  return out;
}

}  // namespace ctorsim::codec
