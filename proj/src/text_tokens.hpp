#pragma once

// Whitespace tokenizer and integer field parser shared by the text formats.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "edgehub/types.hpp"

namespace edgehub::detail {

class LineTokens {
 public:
  explicit LineTokens(std::string_view line) : rest_(line) {}

  std::string_view next() {
    std::size_t b = rest_.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      rest_ = {};
      return {};
    }
    std::size_t e = rest_.find_first_of(" \t\r", b);
    std::string_view tok = rest_.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b);
    rest_ = e == std::string_view::npos ? std::string_view{} : rest_.substr(e);
    return tok;
  }

 private:
  std::string_view rest_;
};

inline std::int64_t parse_int(std::string_view tok, std::size_t line_no, const char* field) {
  if (tok.empty()) throw ParseError(line_no, std::string("missing ") + field);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, std::string("malformed ") + field + " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace edgehub::detail
