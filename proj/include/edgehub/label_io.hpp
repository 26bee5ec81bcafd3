#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "edgehub/labels.hpp"

namespace edgehub {

// Little-endian fixed-width field writer; independent of host byte order.
class ByteWriter {
 public:
  explicit ByteWriter(std::ostream& out) : out_(out) {}

  void bytes(std::span<const char> data);
  void u32(std::uint32_t value);
  // Fails with RangeError naming `what` when value does not fit 32 bits.
  void u32_checked(std::uint64_t value, const char* what);

 private:
  std::ostream& out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::istream& in) : in_(in) {}

  void bytes(std::span<char> data);
  std::uint32_t u32();
  void expect_magic(const std::array<char, 4>& magic, const char* what);

 private:
  std::istream& in_;
};

/// Binary label format, version 1:
///   magic "EHLB" | version u32 | flags u32 | vertex count u32 | q u32
///   q x border id u32                  (present when flags bit 0 is set)
///   per vertex: entry count u32, then entry count x (hub u32, dist u32)
/// Flags bit 0 marks a border-label file whose hubs are the listed borders.
inline constexpr std::uint32_t kLabelFormatVersion = 1;
inline constexpr std::uint32_t kLabelFlagBorderHubs = 1;

void write_label_set(std::ostream& out, const LabelSet& labels);
LabelSet read_label_set(std::istream& in);

// Shared encoder/decoder; `border_order` is written only when the flag is set.
void write_label_file(std::ostream& out, const LabelSet& labels, std::uint32_t flags,
                      std::span<const VertexId> border_order);
struct LabelFile {
  std::uint32_t flags = 0;
  std::vector<VertexId> border_order;
  LabelSet labels;
};
LabelFile read_label_file(std::istream& in);

}  // namespace edgehub
