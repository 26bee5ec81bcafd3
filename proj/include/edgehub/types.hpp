#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace edgehub {

using VertexId = std::uint32_t;
using Weight = std::uint32_t;
using DistrictId = std::uint32_t;

// Distances accumulate in 64 bits. kInfinity is strictly greater than every
// finite distance and is never produced by adding two finite distances.
using Distance = std::uint64_t;
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();

inline constexpr Distance add_distance(Distance a, Distance b) noexcept {
  return (a == kInfinity || b == kInfinity) ? kInfinity : a + b;
}

inline std::string distance_to_string(Distance d) {
  return d == kInfinity ? std::string("inf") : std::to_string(d);
}

// Bad ids, malformed arguments, inconsistent inputs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text-format failure; carries the 1-based line number that failed.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A value does not fit the persisted 32-bit field.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A query was sent to an index that cannot answer it exactly.
class RoutingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace edgehub
