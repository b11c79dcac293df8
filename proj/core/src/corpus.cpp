#include "ndl/corpus.hpp"

#include <stdexcept>

#include "corpus_sources.hpp"
#include "ndl/core_parser.hpp"

namespace ndl::core {

std::string_view peano_source() { return generated::kPeanoSource; }
std::string_view lists_source() { return generated::kListsSource; }

const Program& peano_program() {
  static const Program p = parse_program(peano_source());
  return p;
}

const Program& lists_program() {
  static const Program p = parse_program(lists_source());
  return p;
}

const Program& bundled_program(std::string_view name) {
  if (name == "peano") return peano_program();
  if (name == "lists") return lists_program();
  throw std::out_of_range("no bundled program named '" + std::string(name) + "'");
}

const std::vector<CorpusEntry>& semantics_corpus() {
  using S = std::set<std::string>;
  static const std::vector<CorpusEntry> corpus{
      {"peano", "double (0 ? 1)", std::nullopt},
      {"peano", "double coin", std::nullopt},
      {"peano", "even (double (eo 3))", std::nullopt},
      {"peano", "double (eo 2)", std::nullopt},
      {"peano", "add coin coin", S{"0", "1", "2"}},
      {"peano", "let x = coin in add x x", std::nullopt},
      {"peano", "double (double (0 ? 1))", std::nullopt},
      {"peano", "pick 1 2", S{"1", "2"}},
      {"peano", "double (pick 1 2)", std::nullopt},
      {"peano", "add 2 3", S{"5"}},
      {"peano", "even (double 7)", S{"True"}},
      {"peano", "even (add 3 4)", S{"False"}},
      {"lists", "perm (Cons 1 (Cons 2 Nil))",
       S{"Cons 1 (Cons 2 Nil)", "Cons 2 (Cons 1 Nil)"}},
      {"lists", "ndinsert 1 (Cons 3 Nil)", S{"Cons 1 (Cons 3 Nil)", "Cons 3 (Cons 1 Nil)"}},
      {"lists", "dup (0 ? 1)", std::nullopt},
      {"lists", "head (Cons 0 Nil)", S{"0"}},
      {"lists", "append (Cons 1 Nil) (Cons 2 Nil)", S{"Cons 1 (Cons 2 Nil)"}},
      {"lists", "head (perm (Cons 1 (Cons 2 (Cons 3 Nil))))", S{"1", "2", "3"}},
  };
  return corpus;
}

std::string list_literal(const std::vector<int>& xs) {
  std::string out = "Nil";
  for (std::size_t i = xs.size(); i-- > 0;) {
    const bool paren = i + 1 < xs.size();
    out = "Cons " + std::to_string(xs[i]) + " " + (paren ? "(" + out + ")" : out);
  }
  return out;
}

std::optional<std::uint64_t> read_numeral(const ExprPtr& value) {
  std::uint64_t k = 0;
  const Expr* at = value.get();
  while (const auto* c = std::get_if<CtorApp>(&at->node)) {
    if (c->name == "Z" && c->args.empty()) return k;
    if (c->name != "S" || c->args.size() != 1) return std::nullopt;
    ++k;
    at = c->args[0].get();
  }
  return std::nullopt;
}

std::optional<std::vector<int>> read_int_list(const ExprPtr& value) {
  std::vector<int> out;
  const Expr* at = value.get();
  while (const auto* c = std::get_if<CtorApp>(&at->node)) {
    if (c->name == "Nil" && c->args.empty()) return out;
    if (c->name != "Cons" || c->args.size() != 2) return std::nullopt;
    auto k = read_numeral(c->args[0]);
    if (!k) return std::nullopt;
    out.push_back(static_cast<int>(*k));
    at = c->args[1].get();
  }
  return std::nullopt;
}

}  // namespace ndl::core
