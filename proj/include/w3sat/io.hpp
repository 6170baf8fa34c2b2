#pragma once

// Text formats: DIMACS CNF, the bracketed list-of-lists notation
// ("[[-1, 2, 3], [1, 4, 5]]"), the line-oriented derivation trace, and
// content digests for run records.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "w3sat/core.hpp"
#include "w3sat/engine.hpp"

namespace w3sat {

enum class InputFormat { Dimacs, PaperLists };

struct InputDocument {
  InputFormat format = InputFormat::Dimacs;
  std::optional<Var> declared_n;
  std::vector<std::vector<std::int64_t>> raw;
};

/// Syntax-level readers. Throw SyntaxError with a line (DIMACS) or byte
/// offset (lists), and VarOutOfRange when |v| exceeds the declared n.
InputDocument read_dimacs(std::string_view text);
InputDocument read_paper_lists(std::string_view text);

struct ParsedInstance {
  Instance instance;
  std::size_t tautologies_dropped = 0;
};

/// Canonicalizes a document into an Instance of width <= 3. n is the
/// declared n, else `vars`, else the largest variable used. Throws
/// WidthTooLarge (naming the clause index) and VarOutOfRange.
ParsedInstance to_instance(const InputDocument& doc, std::optional<Var> vars = std::nullopt);

ParsedInstance parse_dimacs(std::string_view text);
ParsedInstance parse_paper_lists(std::string_view text, std::optional<Var> vars = std::nullopt);

/// Lists when the first non-blank character is '[', DIMACS otherwise.
InputFormat detect_format(std::string_view text);

std::string emit_dimacs(const Instance& inst);
std::string emit_paper_lists(const Instance& inst);

/// One record per line: `<id> <rule> <parents> <literals...> 0`, where
/// parents is `-` or a comma-separated id list. Lines starting with '#'
/// are comments; a `# refuted <var>` comment names the variable.
std::string emit_trace(const Verdict& verdict);
std::string emit_trace(std::span<const DerivationStep> steps, std::optional<Var> refuted_var = std::nullopt);

struct ParsedTrace {
  std::optional<Var> refuted_var;
  std::vector<DerivationStep> steps;
};
ParsedTrace parse_trace(std::string_view text);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace w3sat
