#include "ndl/core_eval.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "ndl/core_parser.hpp"

namespace ndl::core {

const char* to_string(Semantics s) { return s == Semantics::RunTime ? "runtime" : "calltime"; }
const char* to_string(Strategy s) { return s == Strategy::Eager ? "eager" : "lazy"; }

// --- ChoiceTree --------------------------------------------------------------

ChoiceTree ChoiceTree::value(ExprPtr v) {
  return ChoiceTree(std::make_shared<const Node>(Node{Kind::Value, std::move(v), {}, {}}));
}
ChoiceTree ChoiceTree::choice(ChoiceId id, ChoiceTree l, ChoiceTree r) {
  std::vector<ChoiceTree> kids;
  kids.reserve(2);
  kids.push_back(std::move(l));
  kids.push_back(std::move(r));
  return ChoiceTree(std::make_shared<const Node>(Node{Kind::Choice, nullptr, id, std::move(kids)}));
}
ChoiceTree ChoiceTree::failed() {
  static const ChoiceTree leaf(std::make_shared<const Node>(Node{Kind::Failed, nullptr, {}, {}}));
  return leaf;
}
ChoiceTree ChoiceTree::exhausted() {
  static const ChoiceTree leaf(
      std::make_shared<const Node>(Node{Kind::Exhausted, nullptr, {}, {}}));
  return leaf;
}

ChoiceTree choice_tree_of(const ExprPtr& e) {
  if (const auto* c = as<ChoiceExpr>(e))
    return ChoiceTree::choice(c->id, choice_tree_of(c->left), choice_tree_of(c->right));
  if (as<FailExpr>(e)) return ChoiceTree::failed();
  if (is_ground_value(e)) return ChoiceTree::value(e);
  throw std::invalid_argument("choice_tree_of: not a choice-rooted normal form: " + show(e));
}

// --- ResultSet ---------------------------------------------------------------

std::vector<std::string> ResultSet::sorted_values() const {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(show(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> ResultSet::value_set() const {
  std::set<std::string> out;
  for (const auto& v : values) out.insert(show(v));
  return out;
}

std::string ResultSet::to_text() const {
  std::string out;
  for (const auto& v : sorted_values()) out += v + "\n";
  out += "failed=" + std::to_string(failed) + " fuel_exhausted=" + std::to_string(fuel_exhausted) +
         "\n";
  return out;
}

nlohmann::json ResultSet::to_json() const {
  return nlohmann::json{
      {"values", sorted_values()}, {"failed", failed}, {"fuel_exhausted", fuel_exhausted}};
}

namespace {
void extract(const ChoiceTree& t, std::map<std::uint64_t, bool>& assignment, ResultSet& out) {
  switch (t.kind()) {
    case ChoiceTree::Kind::Value: out.values.push_back(t.value()); return;
    case ChoiceTree::Kind::Failed: ++out.failed; return;
    case ChoiceTree::Kind::Exhausted: ++out.fuel_exhausted; return;
    case ChoiceTree::Kind::Choice: break;
  }
  const std::uint64_t id = t.id().value;
  if (auto it = assignment.find(id); it != assignment.end()) {
    extract(it->second ? t.left() : t.right(), assignment, out);
    return;
  }
  assignment[id] = true;
  extract(t.left(), assignment, out);
  assignment[id] = false;
  extract(t.right(), assignment, out);
  assignment.erase(id);
}
}  // namespace

ResultSet extract_values(const ChoiceTree& t) {
  ResultSet out;
  std::map<std::uint64_t, bool> assignment;
  extract(t, assignment, out);
  return out;
}

// --- pull-tab ----------------------------------------------------------------

ExprPtr pull_tab(const ExprPtr& app, std::size_t arg) {
  const auto split = [&](const ExprPtr& target) -> const ChoiceExpr& {
    const auto* c = as<ChoiceExpr>(target);
    if (!c) throw std::invalid_argument("pull_tab: argument " + std::to_string(arg) +
                                        " is not a choice in " + show(app));
    return *c;
  };
  if (const auto* f = as<FunApp>(app)) {
    if (arg >= f->args.size()) throw std::invalid_argument("pull_tab: argument out of range");
    const ChoiceExpr& c = split(f->args[arg]);
    auto la = f->args;
    auto ra = f->args;
    la[arg] = c.left;
    ra[arg] = c.right;
    return make_choice(make_call(f->name, std::move(la), f->node),
                       make_call(f->name, std::move(ra), f->node), c.id);
  }
  if (const auto* k = as<CtorApp>(app)) {
    if (arg >= k->args.size()) throw std::invalid_argument("pull_tab: argument out of range");
    const ChoiceExpr& c = split(k->args[arg]);
    auto la = k->args;
    auto ra = k->args;
    la[arg] = c.left;
    ra[arg] = c.right;
    return make_choice(make_ctor(k->name, std::move(la)), make_ctor(k->name, std::move(ra)), c.id);
  }
  if (const auto* l = as<Let>(app)) {
    if (arg != 0) throw std::invalid_argument("pull_tab: a let has only its bound expression");
    const ChoiceExpr& c = split(l->bound);
    return make_choice(make_let(l->name, c.left, l->body, l->node),
                       make_let(l->name, c.right, l->body, l->node), c.id);
  }
  throw std::invalid_argument("pull_tab: not an application: " + show(app));
}

// --- evaluation machine ------------------------------------------------------

namespace {

// Deterministic id minting: the same key always yields the same id within
// one evaluation, so shared calls instantiated in different places agree.
class IdSource {
 public:
  std::uint64_t mint(std::vector<std::uint64_t> key) {
    auto [it, inserted] = table_.emplace(std::move(key), next_);
    if (inserted) ++next_;
    return it->second;
  }

 private:
  std::map<std::vector<std::uint64_t>, std::uint64_t> table_;
  std::uint64_t next_ = 1;
};

enum Tag : std::uint64_t {
  kRoot = 1,
  kCall = 2,
  kChoice = 3,
  kLet = 4,
  kRename = 5,
  kSelect = 6,
  kLetSubst = 7,
  kFresh = 8,
};

using Bindings = std::map<std::string, ExprPtr>;

}  // namespace

class Evaluator::Machine {
 public:
  Machine(const Program& program, EvalConfig config, EvalFaults faults)
      : prog_(program), cfg_(config), faults_(faults) {}

  ChoiceTree run(const ExprPtr& expr) {
    std::size_t counter = 0;
    ExprPtr t = number(expr, {0, kRoot}, counter);
    Ctx ctx{{}, cfg_.fuel};
    return explore(t, ctx);
  }

 private:
  enum class Status { Done, Pending, Failed, Exhausted };
  enum class Match { Matched, Mismatch, Pending, Failed, Exhausted };

  struct Out {
    Status st;
    ExprPtr term;
  };

  struct Ctx {
    std::map<std::uint64_t, bool> decided;
    std::uint64_t fuel;
  };

  bool lazy() const { return cfg_.strategy == Strategy::Lazy && !faults_.force_eager; }
  bool share() const {
    return cfg_.semantics == Semantics::CallTime && !faults_.copy_shared_arguments;
  }

  std::optional<bool> decided(const Ctx& ctx, ChoiceId id) const {
    if (faults_.ignore_choice_ids) return std::nullopt;
    auto it = ctx.decided.find(id.value);
    if (it == ctx.decided.end()) return std::nullopt;
    return it->second;
  }

  static bool spend(Ctx& ctx) {
    if (ctx.fuel == 0) return false;
    --ctx.fuel;
    return true;
  }

  static std::vector<std::uint64_t> extend(std::vector<std::uint64_t> key,
                                           std::initializer_list<std::uint64_t> more) {
    key.insert(key.end(), more);
    return key;
  }

  // Assigns ids to every call, choice and let in freshly parsed syntax.
  ExprPtr number(const ExprPtr& e, const std::vector<std::uint64_t>& prefix, std::size_t& k) {
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var> || std::is_same_v<T, FailExpr>) {
            return e;
          } else if constexpr (std::is_same_v<T, CtorApp>) {
            std::vector<ExprPtr> args;
            for (const auto& a : n.args) args.push_back(number(a, prefix, k));
            return make_ctor(n.name, std::move(args));
          } else if constexpr (std::is_same_v<T, FunApp>) {
            const NodeId id = ids_.mint(extend(prefix, {kCall, k++}));
            std::vector<ExprPtr> args;
            for (const auto& a : n.args) args.push_back(number(a, prefix, k));
            return make_call(n.name, std::move(args), id);
          } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
            const ChoiceId id{ids_.mint(extend(prefix, {kChoice, k++}))};
            auto l = number(n.left, prefix, k);
            auto r = number(n.right, prefix, k);
            return make_choice(std::move(l), std::move(r), id);
          } else {
            const NodeId id = ids_.mint(extend(prefix, {kLet, k++}));
            auto b = number(n.bound, prefix, k);
            auto body = number(n.body, prefix, k);
            return make_let(n.name, std::move(b), std::move(body), id);
          }
        },
        e->node);
  }

  // A copy of `e` whose every call, choice and let id is replaced by one
  // derived from `key`, making the copy independent of the original.
  ExprPtr rename(const ExprPtr& e, const std::vector<std::uint64_t>& key) {
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var> || std::is_same_v<T, FailExpr>) {
            return e;
          } else if constexpr (std::is_same_v<T, CtorApp>) {
            std::vector<ExprPtr> args;
            for (const auto& a : n.args) args.push_back(rename(a, key));
            return make_ctor(n.name, std::move(args));
          } else if constexpr (std::is_same_v<T, FunApp>) {
            std::vector<ExprPtr> args;
            for (const auto& a : n.args) args.push_back(rename(a, key));
            return make_call(n.name, std::move(args), ids_.mint(extend(key, {n.node})));
          } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
            return make_choice(rename(n.left, key), rename(n.right, key),
                               ChoiceId{ids_.mint(extend(key, {n.id.value}))});
          } else {
            return make_let(n.name, rename(n.bound, key), rename(n.body, key),
                            ids_.mint(extend(key, {n.node})));
          }
        },
        e->node);
  }

  ExprPtr share_or_copy(const ExprPtr& bound, std::vector<std::uint64_t> key) {
    return share() ? bound : rename(bound, key);
  }

  // Right-hand side of rule `r_idx` of the call `node`, with pattern
  // variables replaced by their bindings.
  ExprPtr instantiate(const Rule& rule, std::size_t r_idx, NodeId node, const Bindings& b) {
    std::size_t k = 0;
    std::size_t occurrence = 0;
    std::vector<std::string> let_scope;
    const std::vector<std::uint64_t> prefix{node, r_idx};

    auto rec = [&](auto&& self, const ExprPtr& e) -> ExprPtr {
      return std::visit(
          [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
              if (std::find(let_scope.rbegin(), let_scope.rend(), n.name) != let_scope.rend())
                return e;
              auto it = b.find(n.name);
              if (it == b.end()) throw EvalError("unbound variable '" + n.name + "'");
              return share_or_copy(it->second, {node, kRename, r_idx, occurrence++});
            } else if constexpr (std::is_same_v<T, FailExpr>) {
              return e;
            } else if constexpr (std::is_same_v<T, CtorApp>) {
              std::vector<ExprPtr> args;
              for (const auto& a : n.args) args.push_back(self(self, a));
              return make_ctor(n.name, std::move(args));
            } else if constexpr (std::is_same_v<T, FunApp>) {
              const NodeId id = ids_.mint(extend(prefix, {kCall, k++}));
              std::vector<ExprPtr> args;
              for (const auto& a : n.args) args.push_back(self(self, a));
              return make_call(n.name, std::move(args), id);
            } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
              const ChoiceId id{ids_.mint(extend(prefix, {kChoice, k++}))};
              auto l = self(self, n.left);
              auto r = self(self, n.right);
              return make_choice(std::move(l), std::move(r), id);
            } else {
              const NodeId id = ids_.mint(extend(prefix, {kLet, k++}));
              auto bound = self(self, n.bound);
              let_scope.push_back(n.name);
              auto body = self(self, n.body);
              let_scope.pop_back();
              return make_let(n.name, std::move(bound), std::move(body), id);
            }
          },
          e->node);
    };
    return rec(rec, rule.rhs);
  }

  ExprPtr substitute_let(const Let& let, const ExprPtr& bound) {
    std::size_t occurrence = 0;
    auto rec = [&](auto&& self, const ExprPtr& e) -> ExprPtr {
      return std::visit(
          [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) {
              if (n.name != let.name) return e;
              return share_or_copy(bound, {let.node, kLetSubst, occurrence++});
            } else if constexpr (std::is_same_v<T, FailExpr>) {
              return e;
            } else if constexpr (std::is_same_v<T, CtorApp>) {
              std::vector<ExprPtr> args;
              for (const auto& a : n.args) args.push_back(self(self, a));
              return make_ctor(n.name, std::move(args));
            } else if constexpr (std::is_same_v<T, FunApp>) {
              std::vector<ExprPtr> args;
              for (const auto& a : n.args) args.push_back(self(self, a));
              return make_call(n.name, std::move(args), n.node);
            } else if constexpr (std::is_same_v<T, ChoiceExpr>) {
              return make_choice(self(self, n.left), self(self, n.right), n.id);
            } else {
              auto b2 = self(self, n.bound);
              if (n.name == let.name) return make_let(n.name, std::move(b2), n.body, n.node);
              return make_let(n.name, std::move(b2), self(self, n.body), n.node);
            }
          },
          e->node);
    };
    return rec(rec, let.body);
  }

  Match match(const Pattern& p, ExprPtr& slot, Bindings& b, Ctx& ctx) {
    if (p.kind == Pattern::Kind::Var) {
      b[p.name] = slot;
      return Match::Matched;
    }
    Out o = whnf(slot, ctx);
    if (o.st == Status::Failed) return Match::Failed;
    if (o.st == Status::Exhausted) return Match::Exhausted;
    slot = o.term;
    if (o.st == Status::Pending) return Match::Pending;

    const auto* c = as<CtorApp>(slot);
    if (c->name != p.name || c->args.size() != p.args.size()) return Match::Mismatch;
    const std::string name = c->name;
    std::vector<ExprPtr> args = c->args;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      const Match st = match(p.args[i], args[i], b, ctx);
      if (st == Match::Pending) {
        if (!spend(ctx)) return Match::Exhausted;
        slot = pull_tab(make_ctor(name, std::move(args)), i);
        return Match::Pending;
      }
      if (st != Match::Matched) {
        slot = make_ctor(name, std::move(args));
        return st;
      }
    }
    slot = make_ctor(name, std::move(args));
    return Match::Matched;
  }

  Out whnf(ExprPtr t, Ctx& ctx) {
    while (true) {
      if (as<CtorApp>(t)) return {Status::Done, t};
      if (as<FailExpr>(t)) return {Status::Failed, nullptr};
      if (const auto* v = as<Var>(t)) throw EvalError("free variable '" + v->name + "'");

      if (const auto* c = as<ChoiceExpr>(t)) {
        if (auto side = decided(ctx, c->id)) {
          t = *side ? c->left : c->right;
          continue;
        }
        return {Status::Pending, t};
      }

      if (const auto* l = as<Let>(t)) {
        if (lazy()) {
          t = substitute_let(*l, l->bound);
          continue;
        }
        Out b = nf(l->bound, ctx);
        if (b.st == Status::Failed || b.st == Status::Exhausted) return {b.st, nullptr};
        if (b.st == Status::Pending) {
          if (!spend(ctx)) return {Status::Exhausted, nullptr};
          return {Status::Pending, pull_tab(make_let(l->name, b.term, l->body, l->node), 0)};
        }
        t = substitute_let(*l, b.term);
        continue;
      }

      const auto& call = std::get<FunApp>(t->node);
      const FunctionDecl* decl = prog_.find_function(call.name);
      if (!decl) throw EvalError("unbound function '" + call.name + "'");
      if (decl->arity != call.args.size())
        throw EvalError("function '" + call.name + "' applied to the wrong number of arguments");
      std::vector<ExprPtr> args = call.args;

      if (!lazy()) {
        for (std::size_t i = 0; i < args.size(); ++i) {
          Out a = nf(args[i], ctx);
          if (a.st == Status::Failed || a.st == Status::Exhausted) return {a.st, nullptr};
          args[i] = a.term;
          if (a.st == Status::Pending) {
            if (!spend(ctx)) return {Status::Exhausted, nullptr};
            return {Status::Pending, pull_tab(make_call(call.name, std::move(args), call.node), i)};
          }
        }
      }

      std::vector<std::pair<std::size_t, Bindings>> matched;
      for (std::size_t r = 0; r < decl->rules.size(); ++r) {
        const Rule& rule = decl->rules[r];
        Bindings b;
        Match st = Match::Matched;
        std::size_t at = 0;
        for (; at < rule.params.size(); ++at) {
          st = match(rule.params[at], args[at], b, ctx);
          if (st != Match::Matched) break;
        }
        if (st == Match::Matched) {
          matched.emplace_back(r, std::move(b));
        } else if (st == Match::Exhausted) {
          return {Status::Exhausted, nullptr};
        } else if (st == Match::Pending) {
          if (!spend(ctx)) return {Status::Exhausted, nullptr};
          return {Status::Pending, pull_tab(make_call(call.name, std::move(args), call.node), at)};
        }
        // Mismatch or a failed demanded argument: this rule does not apply.
      }
      if (matched.empty()) return {Status::Failed, nullptr};
      if (!spend(ctx)) return {Status::Exhausted, nullptr};

      // Overlapping rules all apply; the alternatives are joined by choices
      // whose ids come from the call's node id.
      ExprPtr alt = instantiate(decl->rules[matched.back().first], matched.back().first, call.node,
                                matched.back().second);
      for (std::size_t j = matched.size() - 1; j-- > 0;) {
        ExprPtr inst =
            instantiate(decl->rules[matched[j].first], matched[j].first, call.node, matched[j].second);
        alt = make_choice(std::move(inst), std::move(alt),
                          ChoiceId{ids_.mint({call.node, kSelect, j})});
      }
      t = std::move(alt);
    }
  }

  Out nf(const ExprPtr& t, Ctx& ctx) {
    Out o = whnf(t, ctx);
    if (o.st != Status::Done) return o;
    const auto& c = std::get<CtorApp>(o.term->node);
    std::vector<ExprPtr> args = c.args;
    for (std::size_t i = 0; i < args.size(); ++i) {
      Out a = nf(args[i], ctx);
      if (a.st == Status::Failed || a.st == Status::Exhausted) return a;
      args[i] = a.term;
      if (a.st == Status::Pending) {
        if (!spend(ctx)) return {Status::Exhausted, nullptr};
        return {Status::Pending, pull_tab(make_ctor(c.name, std::move(args)), i)};
      }
    }
    return {Status::Done, make_ctor(c.name, std::move(args))};
  }

  ChoiceTree explore(const ExprPtr& t, Ctx& ctx) {
    Out o = nf(t, ctx);
    switch (o.st) {
      case Status::Done: return ChoiceTree::value(o.term);
      case Status::Failed: return ChoiceTree::failed();
      case Status::Exhausted: return ChoiceTree::exhausted();
      case Status::Pending: break;
    }
    const auto& c = std::get<ChoiceExpr>(o.term->node);
    Ctx left = ctx;
    Ctx right = std::move(ctx);
    ChoiceId label = c.id;
    if (faults_.ignore_choice_ids) {
      label = ChoiceId{ids_.mint({0, kFresh, forks_++})};
    } else {
      left.decided[c.id.value] = true;
      right.decided[c.id.value] = false;
    }
    ChoiceTree l = explore(c.left, left);
    ChoiceTree r = explore(c.right, right);
    return ChoiceTree::choice(label, std::move(l), std::move(r));
  }

  const Program& prog_;
  EvalConfig cfg_;
  EvalFaults faults_;
  IdSource ids_;
  std::uint64_t forks_ = 0;
};

Evaluator::Evaluator(const Program& program, EvalConfig config, EvalFaults faults)
    : machine_(std::make_unique<Machine>(program, config, faults)) {}

Evaluator::~Evaluator() = default;

ChoiceTree Evaluator::normal_form(const ExprPtr& expr) { return machine_->run(expr); }

ResultSet Evaluator::eval(const ExprPtr& expr) { return extract_values(normal_form(expr)); }

ResultSet eval(const Program& program, const ExprPtr& expr, const EvalConfig& config,
               const EvalFaults& faults) {
  return Evaluator(program, config, faults).eval(expr);
}

// --- reports -------------------------------------------------------------------

namespace {
bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}
}  // namespace

bool SemanticsReport::calltime_within_runtime_eager() const {
  return subset(calltime_eager.value_set(), runtime_eager.value_set());
}
bool SemanticsReport::calltime_within_runtime_lazy() const {
  return subset(calltime_lazy.value_set(), runtime_lazy.value_set());
}
bool SemanticsReport::all_agree() const {
  const auto s = calltime_lazy.value_set();
  return s == calltime_eager.value_set() && s == runtime_eager.value_set() &&
         s == runtime_lazy.value_set();
}

nlohmann::json SemanticsReport::to_json() const {
  return nlohmann::json{
      {"runtime_eager", runtime_eager.to_json()},
      {"runtime_lazy", runtime_lazy.to_json()},
      {"calltime_eager", calltime_eager.to_json()},
      {"calltime_lazy", calltime_lazy.to_json()},
      {"calltime_within_runtime_eager", calltime_within_runtime_eager()},
      {"calltime_within_runtime_lazy", calltime_within_runtime_lazy()},
      {"all_agree", all_agree()},
  };
}

std::string SemanticsReport::to_text() const {
  std::ostringstream os;
  const auto line = [&os](const char* label, const ResultSet& rs) {
    os << label << ": {";
    const auto vs = rs.value_set();
    bool first = true;
    for (const auto& v : vs) {
      os << (first ? "" : ", ") << v;
      first = false;
    }
    os << "} failed=" << rs.failed << " fuel_exhausted=" << rs.fuel_exhausted << "\n";
  };
  line("runtime+eager ", runtime_eager);
  line("runtime+lazy  ", runtime_lazy);
  line("calltime+eager", calltime_eager);
  line("calltime+lazy ", calltime_lazy);
  os << "calltime within runtime (eager): " << (calltime_within_runtime_eager() ? "yes" : "no")
     << "\n";
  os << "calltime within runtime (lazy):  " << (calltime_within_runtime_lazy() ? "yes" : "no")
     << "\n";
  os << "all modes agree: " << (all_agree() ? "yes" : "no") << "\n";
  return os.str();
}

SemanticsReport compare_semantics(const Program& program, const ExprPtr& expr,
                                  std::uint64_t fuel, const EvalFaults& faults) {
  const auto run = [&](Semantics s, Strategy st) {
    return eval(program, expr, EvalConfig{s, st, fuel}, faults);
  };
  return SemanticsReport{
      run(Semantics::RunTime, Strategy::Eager),
      run(Semantics::RunTime, Strategy::Lazy),
      run(Semantics::CallTime, Strategy::Eager),
      run(Semantics::CallTime, Strategy::Lazy),
  };
}

LazyFailureDemo eval_lazy_failure_demo(const Program& program, const EvalFaults& faults) {
  const ExprPtr expr = parse_expression(program, "head (Cons 0 (tail Nil))");
  return LazyFailureDemo{
      eval(program, expr, EvalConfig{Semantics::CallTime, Strategy::Lazy, kDefaultFuel}, faults),
      eval(program, expr, EvalConfig{Semantics::CallTime, Strategy::Eager, kDefaultFuel}, faults),
  };
}

}  // namespace ndl::core
