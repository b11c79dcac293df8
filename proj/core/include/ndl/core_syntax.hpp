#pragma once

// Abstract syntax of the first-order functional-logic core language.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ndl::core {

/// Identity of a function-call or let node inside one evaluation. 0 means
/// "not yet assigned" (freshly parsed syntax).
using NodeId = std::uint64_t;

/// Label of a choice occurrence. Copies of a shared occurrence carry the same
/// id, so an evaluation can select the same side for all of them.
struct ChoiceId {
  std::uint64_t value = 0;
  friend auto operator<=>(const ChoiceId&, const ChoiceId&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Var {
  std::string name;
};
struct CtorApp {
  std::string name;
  std::vector<ExprPtr> args;
};
struct FunApp {
  std::string name;
  std::vector<ExprPtr> args;
  NodeId node = 0;
};
struct ChoiceExpr {
  ExprPtr left;
  ExprPtr right;
  ChoiceId id;
};
struct FailExpr {};
struct Let {
  std::string name;
  ExprPtr bound;
  ExprPtr body;
  NodeId node = 0;
};

struct Expr {
  std::variant<Var, CtorApp, FunApp, ChoiceExpr, FailExpr, Let> node;
};

ExprPtr make_var(std::string name);
ExprPtr make_ctor(std::string name, std::vector<ExprPtr> args = {});
ExprPtr make_call(std::string name, std::vector<ExprPtr> args = {}, NodeId node = 0);
ExprPtr make_choice(ExprPtr left, ExprPtr right, ChoiceId id = {});
ExprPtr make_fail();
ExprPtr make_let(std::string name, ExprPtr bound, ExprPtr body, NodeId node = 0);
/// S (S ... Z) with k successors.
ExprPtr make_numeral(std::uint64_t k);

template <class T>
const T* as(const ExprPtr& e) {
  return std::get_if<T>(&e->node);
}

/// A constructor term with no calls, choices, lets, variables or failures.
bool is_ground_value(const ExprPtr& e);
/// Equality ignoring node and choice ids.
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Renders an expression in surface syntax. Peano chains print as decimal
/// numerals; with show_ids, choices print as "?<id>".
std::string show(const ExprPtr& e, bool show_ids = false);

struct Pattern {
  enum class Kind { Var, Ctor };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<Pattern> args;

  static Pattern var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  static Pattern ctor(std::string n, std::vector<Pattern> a = {}) {
    return {Kind::Ctor, std::move(n), std::move(a)};
  }
};

struct Rule {
  std::string function;
  std::vector<Pattern> params;
  ExprPtr rhs;
  std::size_t line = 0;
};

struct FunctionDecl {
  std::size_t arity = 0;
  std::vector<Rule> rules;  // source order; overlapping rules all apply
};

struct Program {
  std::map<std::string, std::size_t> constructors;  // name -> arity
  std::map<std::string, FunctionDecl> functions;

  std::size_t rule_count() const;
  const FunctionDecl* find_function(const std::string& name) const;
};

}  // namespace ndl::core
