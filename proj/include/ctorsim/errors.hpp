#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ctorsim {

// Invalid parameters or configuration (bad CodeParams, short router pool, empty key).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematical precondition violated (inverse of zero, empty message, n > pool).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed containers: wrong cell count, mixed generation ids, gaps in ids.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Onion protocol misuse, e.g. peeling a cell that has no layers left.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured size guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fewer than k independent coded cells arrived for a generation.
class UnrecoverableGeneration : public std::runtime_error {
 public:
  UnrecoverableGeneration(std::optional<std::uint32_t> generation_id, std::size_t rank,
                          std::size_t needed)
      : std::runtime_error(describe(generation_id, rank, needed)),
        generation_id_(generation_id),
        rank_(rank),
        needed_(needed) {}

  std::optional<std::uint32_t> generation_id() const noexcept { return generation_id_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t needed() const noexcept { return needed_; }

 private:
  static std::string describe(std::optional<std::uint32_t> id, std::size_t rank,
                              std::size_t needed) {
    std::string s = "unrecoverable generation";
    if (id) s += " " + std::to_string(*id);
    s += ": rank " + std::to_string(rank) + " < " + std::to_string(needed);
    return s;
  }

  std::optional<std::uint32_t> generation_id_;
  std::size_t rank_;
  std::size_t needed_;
};

}  // namespace ctorsim
