#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace w3sat::csv {

/// Quotes a field when it holds a comma, quote, CR or LF (RFC 4180).
inline std::string field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// One CRLF-terminated record.
inline std::string row(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += field(f);
    first = false;
  }
  out += "\r\n";
  return out;
}

}  // namespace w3sat::csv
