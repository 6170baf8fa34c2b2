#include "w3sat/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace w3sat {
namespace {

[[noreturn]] void syntax(const std::string& where, const std::string& what) {
  throw Error(Errc::SyntaxError, where + ": " + what);
}

std::optional<std::int64_t> to_int(std::string_view token) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void check_range(std::int64_t v, std::optional<Var> n, const std::string& where) {
  const std::int64_t mag = v < 0 ? -v : v;
  if (n && mag > static_cast<std::int64_t>(*n)) {
    throw Error(Errc::VarOutOfRange, where + ": variable " + std::to_string(mag) + " exceeds n=" + std::to_string(*n));
  }
}

std::string literals_text(const Clause& c) {
  std::string out;
  for (Literal l : c) {
    out += std::to_string(l.to_int());
    out += ' ';
  }
  out += '0';
  return out;
}

}  // namespace

InputDocument read_dimacs(std::string_view text) {
  InputDocument doc;
  doc.format = InputFormat::Dimacs;
  std::optional<std::size_t> declared_m;
  std::vector<std::int64_t> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == 'c') continue;
    if (tokens[0] == "%") break;  // SATLIB end marker
    if (tokens[0] == "p") {
      if (doc.declared_n) syntax(where, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf") syntax(where, "expected 'p cnf <vars> <clauses>'");
      auto n = to_int(tokens[2]);
      auto m = to_int(tokens[3]);
      if (!n || !m || *n < 0 || *m < 0 || *n > 0x7fffffff) syntax(where, "bad problem line counts");
      doc.declared_n = static_cast<Var>(*n);
      declared_m = static_cast<std::size_t>(*m);
      continue;
    }
    if (!doc.declared_n) syntax(where, "clause before the problem line");
    for (auto tok : tokens) {
      auto v = to_int(tok);
      if (!v) syntax(where, "bad literal '" + std::string(tok) + "'");
      if (*v == 0) {
        if (current.empty()) syntax(where, "empty clause");
        doc.raw.push_back(std::move(current));
        current.clear();
      } else {
        check_range(*v, doc.declared_n, where);
        current.push_back(*v);
      }
    }
  }
  if (!doc.declared_n) syntax("line " + std::to_string(line_no), "missing problem line");
  if (!current.empty()) syntax("line " + std::to_string(line_no), "last clause is not terminated by 0");
  if (doc.raw.size() != *declared_m) {
    syntax("line " + std::to_string(line_no),
           "problem line declares " + std::to_string(*declared_m) + " clauses, found " + std::to_string(doc.raw.size()));
  }
  return doc;
}

InputDocument read_paper_lists(std::string_view text) {
  InputDocument doc;
  doc.format = InputFormat::PaperLists;
  std::size_t i = 0;
  auto where = [&] { return "offset " + std::to_string(i); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char ch) {
    skip();
    if (i >= text.size() || text[i] != ch) syntax(where(), std::string("expected '") + ch + "'");
    ++i;
  };
  auto peek = [&]() -> char {
    skip();
    return i < text.size() ? text[i] : '\0';
  };

  auto clause = [&] {
    expect('[');
    std::vector<std::int64_t> lits;
    if (peek() == ']') syntax(where(), "empty clause");
    while (true) {
      skip();
      const std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      auto token = text.substr(start, i - start);
      if (!token.empty() && token[0] == '+') token.remove_prefix(1);
      auto v = to_int(token);
      if (!v || *v == 0) {
        i = start;
        syntax(where(), "expected a nonzero integer");
      }
      lits.push_back(*v);
      if (peek() == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
    doc.raw.push_back(std::move(lits));
  };

  // The outer brackets are optional: "[[1, 2]]" and "[1, 2]" are both one clause.
  skip();
  std::size_t probe = i;
  bool outer = false;
  if (probe < text.size() && text[probe] == '[') {
    ++probe;
    while (probe < text.size() && std::isspace(static_cast<unsigned char>(text[probe]))) ++probe;
    outer = probe < text.size() && (text[probe] == '[' || text[probe] == ']');
  }
  if (outer) {
    expect('[');
    if (peek() == ']') {
      ++i;
    } else {
      while (true) {
        clause();
        if (peek() == ',') {
          ++i;
          continue;
        }
        expect(']');
        break;
      }
    }
  } else if (peek() != '\0') {
    while (true) {
      clause();
      if (peek() == ',') {
        ++i;
        continue;
      }
      break;
    }
  }
  if (peek() != '\0') syntax(where(), "trailing characters");
  return doc;
}

ParsedInstance to_instance(const InputDocument& doc, std::optional<Var> vars) {
  Var n = 0;
  for (const auto& clause : doc.raw) {
    for (auto v : clause) n = std::max(n, static_cast<Var>(v < 0 ? -v : v));
  }
  if (doc.declared_n) {
    n = *doc.declared_n;
  } else if (vars) {
    if (*vars < n) throw Error(Errc::VarOutOfRange, "variable " + std::to_string(n) + " exceeds --vars " + std::to_string(*vars));
    n = *vars;
  }
  auto ingested = ingest(n, doc.raw);
  for (std::size_t i = 0; i < doc.raw.size(); ++i) {
    std::vector<Literal> lits;
    for (auto v : doc.raw[i]) lits.push_back(Literal::from_int(v));
    auto c = canonicalize(lits);
    if (auto* clause = std::get_if<Clause>(&c); clause && clause->width() > kEngineWidth) {
      throw Error(Errc::WidthTooLarge, "clause " + std::to_string(i) + " " + clause->to_string() + " has width " +
                                           std::to_string(clause->width()));
    }
  }
  return {std::move(ingested.instance), ingested.tautologies_dropped};
}

ParsedInstance parse_dimacs(std::string_view text) { return to_instance(read_dimacs(text)); }

ParsedInstance parse_paper_lists(std::string_view text, std::optional<Var> vars) {
  return to_instance(read_paper_lists(text), vars);
}

InputFormat detect_format(std::string_view text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '[' ? InputFormat::PaperLists : InputFormat::Dimacs;
  }
  return InputFormat::Dimacs;
}

std::string emit_dimacs(const Instance& inst) {
  std::string out = "p cnf " + std::to_string(inst.n_vars) + " " + std::to_string(inst.clauses.size()) + "\n";
  for (const auto& c : inst.clauses) {
    out += literals_text(c);
    out += '\n';
  }
  return out;
}

std::string emit_paper_lists(const Instance& inst) {
  std::string out = "[";
  for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
    if (i > 0) out += ", ";
    out += inst.clauses[i].to_string();
  }
  out += "]\n";
  return out;
}

std::string emit_trace(std::span<const DerivationStep> steps, std::optional<Var> refuted_var) {
  std::string out = "# w3sat trace v1\n";
  if (refuted_var) out += "# refuted " + std::to_string(*refuted_var) + "\n";
  for (const auto& s : steps) {
    out += std::to_string(s.id);
    out += ' ';
    out += to_string(s.rule);
    out += ' ';
    if (s.parents.empty()) {
      out += '-';
    } else {
      for (std::size_t i = 0; i < s.parents.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s.parents[i]);
      }
    }
    out += ' ';
    out += literals_text(s.clause);
    out += '\n';
  }
  return out;
}

std::string emit_trace(const Verdict& verdict) {
  if (!verdict.refuted()) throw Error(Errc::NotRefuted, "saturated verdicts carry no trace");
  return emit_trace(verdict.trace, verdict.var);
}

ParsedTrace parse_trace(std::string_view text) {
  ParsedTrace out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "#") {
      if (tokens.size() == 3 && tokens[1] == "refuted") {
        auto v = to_int(tokens[2]);
        if (!v || *v <= 0) syntax(where, "bad refuted variable");
        out.refuted_var = static_cast<Var>(*v);
      }
      continue;
    }
    if (tokens.size() < 5 || tokens.back() != "0") syntax(where, "expected '<id> <rule> <parents> <literals...> 0'");
    DerivationStep step;
    auto id = to_int(tokens[0]);
    if (!id || *id < 0) syntax(where, "bad step id");
    step.id = static_cast<ClauseId>(*id);
    if (tokens[1] == "given") step.rule = Rule::Given;
    else if (tokens[1] == "resolve") step.rule = Rule::Resolve;
    else if (tokens[1] == "expand") step.rule = Rule::Expand;
    else if (tokens[1] == "resolve2") step.rule = Rule::ResolveChain;
    else syntax(where, "unknown rule '" + std::string(tokens[1]) + "'");
    if (tokens[2] != "-") {
      std::string_view parents = tokens[2];
      while (!parents.empty()) {
        const auto comma = std::min(parents.find(','), parents.size());
        auto p = to_int(parents.substr(0, comma));
        if (!p || *p < 0) syntax(where, "bad parent id");
        step.parents.push_back(static_cast<ClauseId>(*p));
        parents.remove_prefix(std::min(comma + 1, parents.size()));
      }
    }
    std::vector<Literal> lits;
    for (std::size_t t = 3; t + 1 < tokens.size(); ++t) {
      auto v = to_int(tokens[t]);
      if (!v || *v == 0) syntax(where, "bad literal");
      lits.push_back(Literal::from_int(*v));
    }
    auto c = canonicalize(lits);
    if (std::holds_alternative<Tautology>(c)) syntax(where, "tautological clause");
    step.clause = std::get<Clause>(std::move(c));
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::Internal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadConfig, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadConfig, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace w3sat
