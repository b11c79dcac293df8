#include "ndl/core_syntax.hpp"

#include <optional>

namespace ndl::core {

ExprPtr make_var(std::string name) {
  return std::make_shared<const Expr>(Expr{Var{std::move(name)}});
}
ExprPtr make_ctor(std::string name, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{CtorApp{std::move(name), std::move(args)}});
}
ExprPtr make_call(std::string name, std::vector<ExprPtr> args, NodeId node) {
  return std::make_shared<const Expr>(Expr{FunApp{std::move(name), std::move(args), node}});
}
ExprPtr make_choice(ExprPtr left, ExprPtr right, ChoiceId id) {
  return std::make_shared<const Expr>(Expr{ChoiceExpr{std::move(left), std::move(right), id}});
}
ExprPtr make_fail() {
  static const ExprPtr leaf = std::make_shared<const Expr>(Expr{FailExpr{}});
  return leaf;
}
ExprPtr make_let(std::string name, ExprPtr bound, ExprPtr body, NodeId node) {
  return std::make_shared<const Expr>(
      Expr{Let{std::move(name), std::move(bound), std::move(body), node}});
}

ExprPtr make_numeral(std::uint64_t k) {
  ExprPtr e = make_ctor("Z");
  for (std::uint64_t i = 0; i < k; ++i) e = make_ctor("S", {e});
  return e;
}

bool is_ground_value(const ExprPtr& e) {
  const auto* c = as<CtorApp>(e);
  if (!c) return false;
  for (const auto& a : c->args)
    if (!is_ground_value(a)) return false;
  return true;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  const auto same_args = [](const std::vector<ExprPtr>& x, const std::vector<ExprPtr>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!structurally_equal(x[i], y[i])) return false;
    return true;
  };
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Var>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, CtorApp> || std::is_same_v<T, FunApp>) {
          return na.name == nb.name && same_args(na.args, nb.args);
        } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
          return structurally_equal(na.left, nb.left) && structurally_equal(na.right, nb.right);
        } else if constexpr (std::is_same_v<T, FailExpr>) {
          return true;
        } else {
          return na.name == nb.name && structurally_equal(na.bound, nb.bound) &&
                 structurally_equal(na.body, nb.body);
        }
      },
      a->node);
}

namespace {

std::optional<std::uint64_t> numeral_value(const ExprPtr& e) {
  std::uint64_t k = 0;
  const Expr* at = e.get();
  while (true) {
    const auto* c = std::get_if<CtorApp>(&at->node);
    if (!c) return std::nullopt;
    if (c->name == "Z" && c->args.empty()) return k;
    if (c->name != "S" || c->args.size() != 1) return std::nullopt;
    ++k;
    at = c->args[0].get();
  }
}

enum class Ctx { Top, ChoiceOperand, Argument };

void render(const ExprPtr& e, Ctx ctx, bool ids, std::string& out) {
  if (auto k = numeral_value(e)) {
    out += std::to_string(*k);
    return;
  }
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, CtorApp> || std::is_same_v<T, FunApp>) {
          const bool paren = ctx == Ctx::Argument && !n.args.empty();
          if (paren) out += '(';
          out += n.name;
          for (const auto& a : n.args) {
            out += ' ';
            render(a, Ctx::Argument, ids, out);
          }
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
          const bool paren = ctx != Ctx::Top;
          if (paren) out += '(';
          render(n.left, Ctx::ChoiceOperand, ids, out);
          out += ids ? " ?" + std::to_string(n.id.value) + " " : " ? ";
          render(n.right, Ctx::Top, ids, out);
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, FailExpr>) {
          out += "fail";
        } else {
          const bool paren = ctx != Ctx::Top;
          if (paren) out += '(';
          out += "let " + n.name + " = ";
          render(n.bound, Ctx::Top, ids, out);
          out += " in ";
          render(n.body, Ctx::Top, ids, out);
          if (paren) out += ')';
        }
      },
      e->node);
}

}  // namespace

std::string show(const ExprPtr& e, bool show_ids) {
  std::string out;
  render(e, Ctx::Top, show_ids, out);
  return out;
}

std::size_t Program::rule_count() const {
  std::size_t n = 0;
  for (const auto& [name, decl] : functions) n += decl.rules.size();
  return n;
}

const FunctionDecl* Program::find_function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

}  // namespace ndl::core
