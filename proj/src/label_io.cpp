#include "edgehub/label_io.hpp"

#include <istream>
#include <ostream>

namespace edgehub {

namespace {
constexpr std::array<char, 4> kLabelMagic{'E', 'H', 'L', 'B'};
}

void ByteWriter::bytes(std::span<const char> data) {
  out_.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out_) throw InputError("write failed");
}

void ByteWriter::u32(std::uint32_t value) {
  std::array<char, 4> buf{static_cast<char>(value & 0xFF), static_cast<char>((value >> 8) & 0xFF),
                          static_cast<char>((value >> 16) & 0xFF), static_cast<char>((value >> 24) & 0xFF)};
  bytes(buf);
}

void ByteWriter::u32_checked(std::uint64_t value, const char* what) {
  if (value > UINT32_MAX) throw RangeError(std::string(what) + " " + std::to_string(value) + " does not fit 32 bits");
  u32(static_cast<std::uint32_t>(value));
}

void ByteReader::bytes(std::span<char> data) {
  in_.read(data.data(), static_cast<std::streamsize>(data.size()));
  if (in_.gcount() != static_cast<std::streamsize>(data.size())) throw InputError("truncated binary input");
}

std::uint32_t ByteReader::u32() {
  std::array<char, 4> buf{};
  bytes(buf);
  auto b = [&](int i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])); };
  return b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24);
}

void ByteReader::expect_magic(const std::array<char, 4>& magic, const char* what) {
  std::array<char, 4> got{};
  bytes(got);
  if (got != magic) throw InputError(std::string("not a ") + what + " file (bad magic)");
}

void write_label_file(std::ostream& out, const LabelSet& labels, std::uint32_t flags,
                      std::span<const VertexId> border_order) {
  ByteWriter w(out);
  w.bytes(kLabelMagic);
  w.u32(kLabelFormatVersion);
  w.u32(flags);
  w.u32(labels.vertex_count());
  bool borders = (flags & kLabelFlagBorderHubs) != 0;
  w.u32_checked(borders ? border_order.size() : 0, "border count");
  if (borders)
    for (VertexId b : border_order) w.u32(b);
  for (VertexId v = 0; v < labels.vertex_count(); ++v) {
    auto label = labels.of(v);
    w.u32_checked(label.size(), "label size");
    for (const LabelEntry& e : label) {
      w.u32(e.hub);
      w.u32_checked(e.dist, "label distance");
    }
  }
}

LabelFile read_label_file(std::istream& in) {
  ByteReader r(in);
  r.expect_magic(kLabelMagic, "label");
  std::uint32_t version = r.u32();
  if (version != kLabelFormatVersion) throw InputError("unsupported label format version " + std::to_string(version));
  LabelFile file;
  file.flags = r.u32();
  VertexId n = r.u32();
  std::uint32_t q = r.u32();
  if ((file.flags & kLabelFlagBorderHubs) == 0 && q != 0) throw InputError("border count set without border flag");
  if (q > n) throw InputError("border count exceeds vertex count");
  file.border_order.resize(q);
  for (auto& b : file.border_order) {
    b = r.u32();
    if (b >= n) throw InputError("border id out of range");
  }
  std::vector<std::vector<LabelEntry>> labels(n);
  for (VertexId v = 0; v < n; ++v) {
    std::uint32_t count = r.u32();
    if (count > n) throw InputError("label size exceeds vertex count");
    labels[v].resize(count);
    for (LabelEntry& e : labels[v]) {
      e.hub = r.u32();
      e.dist = r.u32();
    }
  }
  file.labels = LabelSet::from_sorted(std::move(labels));
  return file;
}

void write_label_set(std::ostream& out, const LabelSet& labels) { write_label_file(out, labels, 0, {}); }

LabelSet read_label_set(std::istream& in) {
  LabelFile file = read_label_file(in);
  if (file.flags != 0) throw InputError("expected a plain label file, found border labels");
  return std::move(file.labels);
}

}  // namespace edgehub
