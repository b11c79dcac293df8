#pragma once

// Bundled core-language programs and the expression corpus used to compare
// the evaluator's modes with each other and with the tree encoding.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ndl/core_syntax.hpp"

namespace ndl::core {

/// Source text of programs/peano.core and programs/lists.core.
std::string_view peano_source();
std::string_view lists_source();

/// Parsed once, on first use.
const Program& peano_program();
const Program& lists_program();

/// "peano" or "lists". Throws std::out_of_range otherwise.
const Program& bundled_program(std::string_view name);

struct CorpusEntry {
  std::string program;  // bundled program name
  std::string expr;
  /// Value set every mode must produce when the expression does not copy
  /// choices; empty when modes are expected to differ.
  std::optional<std::set<std::string>> agreed;
};

/// Expressions over the bundled programs, each closed and terminating.
const std::vector<CorpusEntry>& semantics_corpus();

/// Cons 1 (Cons 2 Nil) for {1, 2}; elements as numerals.
std::string list_literal(const std::vector<int>& xs);

/// Reads a ground Cons/Nil list of numerals back. nullopt if not one.
std::optional<std::vector<int>> read_int_list(const ExprPtr& value);
std::optional<std::uint64_t> read_numeral(const ExprPtr& value);

}  // namespace ndl::core
