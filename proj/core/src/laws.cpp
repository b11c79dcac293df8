#include "ndl/laws.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>

#include "ndl/choice_plan.hpp"
#include "ndl/core_eval.hpp"
#include "ndl/core_parser.hpp"
#include "ndl/corpus.hpp"
#include "ndl/nat.hpp"
#include "ndl/nd_json.hpp"
#include "ndl/nd_tree.hpp"
#include "ndl/programs.hpp"

namespace ndl::laws {

using json = nlohmann::json;
using programs::IntList;
using Tree = NDTree<int>;

const char* to_string(Mutant m) {
  switch (m) {
    case Mutant::None: return "none";
    case Mutant::DropRightMap: return "drop-right-map";
    case Mutant::InconsistentChoiceIds: return "inconsistent-choice-ids";
    case Mutant::EagerOnly: return "eager-only";
    case Mutant::OffByOneInsert: return "off-by-one-insert";
    case Mutant::UnsharedDouble: return "unshared-double";
  }
  return "none";
}

Mutant parse_mutant(std::string_view name) {
  for (Mutant m : {Mutant::None, Mutant::DropRightMap, Mutant::InconsistentChoiceIds,
                   Mutant::EagerOnly, Mutant::OffByOneInsert, Mutant::UnsharedDouble})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown mutant '" + std::string(name) + "'");
}

const std::vector<Mutant>& all_mutants() {
  static const std::vector<Mutant> ms{Mutant::DropRightMap, Mutant::InconsistentChoiceIds,
                                      Mutant::EagerOnly, Mutant::OffByOneInsert,
                                      Mutant::UnsharedDouble};
  return ms;
}

json LawBounds::to_json() const {
  return json{{"exhaustive_tree_depth", exhaustive_tree_depth},
              {"random_tree_depth", random_tree_depth},
              {"random_trials", random_trials},
              {"function_pairs", function_pairs},
              {"list_length", list_length},
              {"sort_random_length", sort_random_length},
              {"sort_exhaustive_length", sort_exhaustive_length},
              {"last_length", last_length},
              {"max_natural", max_natural},
              {"seed", seed}};
}

json LawReport::to_json(bool timing) const {
  return json{{"name", name},
              {"status", passed ? "pass" : "fail"},
              {"cases", cases},
              {"counterexample", counterexample},
              {"millis", timing ? millis : 0.0},
              {"seed", seed}};
}

json reports_to_json(const std::vector<LawReport>& reports, bool timing) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(r.to_json(timing));
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return mix(a ^ mix(b)); }

// --- property runner ---------------------------------------------------------

template <class In>
struct Property {
  std::function<bool(const In&)> holds;
  std::function<json(const In&)> show;
  std::function<In(const json&)> read;
  std::function<std::vector<In>(const In&)> shrink;  // smaller candidates, smallest first
};

// Calls the visitor on every input until it returns false.
template <class In>
using Domain = std::function<void(const std::function<bool(const In&)>&)>;

struct Law {
  std::function<LawReport()> run;
  std::function<bool(const json&)> replay;
};

template <class In>
bool safe_holds(const Property<In>& p, const In& in) {
  try {
    return p.holds(in);
  } catch (const std::exception&) {
    return false;
  }
}

template <class In>
In shrink_counterexample(const Property<In>& p, In bad) {
  for (std::size_t round = 0; round < 10'000; ++round) {
    bool progressed = false;
    for (const In& c : p.shrink(bad)) {
      if (!safe_holds(p, c)) {
        bad = c;
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  return bad;
}

template <class In>
Law make_law(std::string name, std::uint64_t seed, Property<In> prop, Domain<In> domain) {
  auto p = std::make_shared<const Property<In>>(std::move(prop));
  Law law;
  law.run = [name, seed, p, domain] {
    LawReport r;
    r.name = name;
    r.seed = seed;
    std::optional<In> bad;
    domain([&](const In& in) {
      ++r.cases;
      if (safe_holds(*p, in)) return true;
      bad = in;
      return false;
    });
    if (bad) {
      r.passed = false;
      r.counterexample = p->show(shrink_counterexample(*p, *bad));
    }
    return r;
  };
  law.replay = [p](const json& j) { return safe_holds(*p, p->read(j)); };
  return law;
}

// --- shared generators -------------------------------------------------------

// Odometer over all lists of length <= max_len with elements in [lo, hi].
void for_each_list(std::size_t max_len, int lo, int hi,
                   const std::function<bool(const IntList&)>& visit) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    IntList xs(len, lo);
    while (true) {
      if (!visit(xs)) return;
      std::size_t i = 0;
      while (i < len && xs[i] == hi) xs[i++] = lo;
      if (i == len) break;
      ++xs[i];
    }
  }
}

std::vector<IntList> all_lists(std::size_t max_len, int lo, int hi) {
  std::vector<IntList> out;
  for_each_list(max_len, lo, hi, [&](const IntList& xs) {
    out.push_back(xs);
    return true;
  });
  return out;
}

std::vector<IntList> list_shrinks(const IntList& xs) {
  std::vector<IntList> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    IntList ys = xs;
    ys.erase(ys.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(ys));
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0) continue;
    IntList ys = xs;
    ys[i] = 0;
    out.push_back(ys);
    if (xs[i] > 1) {
      ys[i] = xs[i] - 1;
      out.push_back(std::move(ys));
    }
  }
  return out;
}

IntList iota_list(std::size_t n) {
  IntList xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<int>(i);
  return xs;
}

// Plans reaching every behaviour of a plan-indexed program whose consulted
// addresses depend only on the input length.
std::vector<std::vector<ChoicePlan>> plans_by_length(
    std::size_t max_len, const std::function<void(const ChoicePlan&, const IntList&)>& run) {
  std::vector<std::vector<ChoicePlan>> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    const IntList xs = iota_list(n);
    out.push_back(
        explore_plans([&](const ChoicePlan& p) { run(p, xs); }, PlanBudget{n + 1}).plans);
  }
  return out;
}

// --- functions and predicates ------------------------------------------------

// The k-th seeded function/predicate/tree-valued triple. Pair 0 has the
// identity function and the constant-true predicate.
struct Fns {
  std::uint64_t seed;
  std::size_t k;

  std::uint64_t h(int x, std::uint64_t salt) const {
    return mix(mix(seed, k * 0x100 + salt), static_cast<std::uint64_t>(x) + 1);
  }
  int f(int x) const { return k == 0 ? x : static_cast<int>(h(x, 1) % 8); }
  bool p(int x) const {
    switch (k % 4) {
      case 0: return true;
      case 1: return h(x, 2) % 2 == 0;
      case 2: return h(x, 2) % 4 != 0;
      default: return x % 2 == 0;
    }
  }
  // Precomputed g(0..kCachedG-1); trees are immutable, so sharing is safe.
  const std::vector<Tree>* g_cache = nullptr;
  static constexpr int kCachedG = 8;

  Tree g(int x) const {
    if (g_cache && x >= 0 && x < kCachedG) return (*g_cache)[static_cast<std::size_t>(x)];
    return make_g(x);
  }
  Tree make_g(int x) const {
    const std::uint64_t v = h(x, 3);
    const int a = static_cast<int>((v >> 8) % 8);
    const int b = static_cast<int>((v >> 16) % 8);
    const int c = static_cast<int>((v >> 24) % 8);
    switch (v % 6) {
      case 0: return val(a);
      case 1: return choice(val(a), val(b));
      case 2: return choice(val(a), fail<int>());
      case 3: return choice(choice(val(a), val(b)), val(c));
      case 4: return fail<int>();
      default: return choice(fail<int>(), val(f(x)));
    }
  }
};

// --- mutant-aware building blocks ----------------------------------------------

template <class F, class B = std::decay_t<std::invoke_result_t<F&, const int&>>>
NDTree<B> drop_right_map(F&& f, const Tree& t) {
  if (t.is_choice()) return drop_right_map(f, t.left());
  return map_det(f, t);
}

IntList off_by_one_insert(int x, const IntList& xs) {
  if (xs.empty()) return {x};
  if (x < xs.front()) {
    IntList out{x};
    out.insert(out.end(), xs.begin() + 1, xs.end());
    return out;
  }
  IntList rest(xs.begin() + 1, xs.end());
  IntList out{xs.front()};
  const IntList tail = off_by_one_insert(x, rest);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

struct Ops {
  Mutant m = Mutant::None;

  template <class F>
  auto map(F&& f, const Tree& t) const {
    return m == Mutant::DropRightMap ? drop_right_map(f, t) : map_det(f, t);
  }
  IntList insert(int x, const IntList& xs) const {
    return m == Mutant::OffByOneInsert ? off_by_one_insert(x, xs) : programs::insert(x, xs);
  }
  IntList sort(const IntList& xs) const {
    IntList out;
    for (std::size_t i = xs.size(); i-- > 0;) out = insert(xs[i], out);
    return out;
  }
  core::EvalFaults faults() const {
    core::EvalFaults f;
    f.ignore_choice_ids = m == Mutant::InconsistentChoiceIds;
    f.force_eager = m == Mutant::EagerOnly;
    f.copy_shared_arguments = m == Mutant::UnsharedDouble;
    return f;
  }
};

// --- tree domain ----------------------------------------------------------------

struct TreeCase {
  Tree tree;
  std::size_t pair = 0;
};

// Preorder shape strings: 'C' choice, 'V' value leaf, 'F' fail leaf.
std::vector<std::string> shapes(std::size_t depth, bool with_fail) {
  std::vector<std::string> out{"V"};
  if (with_fail) out.push_back("F");
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::string> next{"V"};
    if (with_fail) next.push_back("F");
    for (const auto& a : out)
      for (const auto& b : out) next.push_back("C" + a + b);
    out = std::move(next);
  }
  return out;
}

Tree build_shape(std::string_view s, std::size_t& at, std::uint64_t key, std::size_t& leaf) {
  const char c = s[at++];
  if (c == 'F') return fail<int>();
  if (c == 'V') return val(static_cast<int>(mix(key, leaf++) % 4));
  Tree l = build_shape(s, at, key, leaf);
  Tree r = build_shape(s, at, key, leaf);
  return choice(std::move(l), std::move(r));
}

Tree build_shape(std::string_view s, std::uint64_t key) {
  std::size_t at = 0;
  std::size_t leaf = 0;
  return build_shape(s, at, key, leaf);
}

std::vector<Tree> labelled_trees(std::size_t depth) {
  std::vector<Tree> out{fail<int>()};
  for (int v = 0; v < 4; ++v) out.push_back(val(v));
  const std::vector<Tree> leaves = out;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Tree> next = leaves;
    for (const auto& a : out)
      for (const auto& b : out) next.push_back(choice(a, b));
    out = std::move(next);
  }
  return out;
}

Tree random_tree(std::mt19937_64& rng, std::size_t depth) {
  const std::uint64_t r = rng();
  if (depth == 0 || r % 3 == 0) {
    if ((r >> 8) % 6 == 0) return fail<int>();
    return val(static_cast<int>((r >> 16) % 4));
  }
  Tree l = random_tree(rng, depth - 1);
  Tree rt = random_tree(rng, depth - 1);
  return choice(std::move(l), std::move(rt));
}

// Every labelled tree up to depth 2 and every mixed Val/Fail shape up to
// depth D-2 with all function pairs; every Val-only shape up to depth D with
// one pair each; then random trees.
Domain<TreeCase> tree_domain(const LawBounds& b, std::uint64_t salt) {
  return [b, salt](const std::function<bool(const TreeCase&)>& visit) {
    const std::size_t pairs = std::max<std::size_t>(b.function_pairs, 1);
    std::uint64_t idx = 0;
    for (const Tree& t : labelled_trees(std::min<std::size_t>(2, b.exhaustive_tree_depth)))
      for (std::size_t k = 0; k < pairs; ++k)
        if (!visit(TreeCase{t, k})) return;

    const std::size_t mixed = b.exhaustive_tree_depth >= 2 ? b.exhaustive_tree_depth - 2 : 0;
    for (const auto& s : shapes(mixed, true)) {
      for (std::size_t k = 0; k < pairs; ++k)
        if (!visit(TreeCase{build_shape(s, mix(b.seed, ++idx)), k})) return;
    }

    if (b.exhaustive_tree_depth > 0) {
      const auto sub = shapes(b.exhaustive_tree_depth - 1, false);
      if (!visit(TreeCase{build_shape("V", mix(b.seed, ++idx)), 0})) return;
      std::string s;
      for (const auto& l : sub) {
        for (const auto& r : sub) {
          s = "C" + l + r;
          ++idx;
          if (!visit(TreeCase{build_shape(s, mix(b.seed, idx)), idx % pairs})) return;
        }
      }
    }

    std::mt19937_64 rng(mix(b.seed, salt));
    for (std::size_t i = 0; i < b.random_trials; ++i) {
      Tree t = random_tree(rng, b.random_tree_depth);
      if (!visit(TreeCase{std::move(t), static_cast<std::size_t>(rng() % pairs)})) return;
    }
  };
}

std::vector<Tree> tree_reductions(const Tree& t) {
  std::vector<Tree> out;
  if (t.is_choice()) {
    out.push_back(t.left());
    out.push_back(t.right());
    for (auto& l : tree_reductions(t.left())) out.push_back(choice(l, t.right()));
    for (auto& r : tree_reductions(t.right())) out.push_back(choice(t.left(), r));
  } else if (t.is_val()) {
    out.push_back(fail<int>());
    if (t.value() != 0) out.push_back(val(0));
    if (t.value() > 1) out.push_back(val(t.value() - 1));
  }
  return out;
}

Property<TreeCase> tree_property(std::uint64_t seed, std::function<bool(const Tree&, const Fns&)> holds) {
  Property<TreeCase> p;
  auto caches = std::make_shared<std::vector<std::vector<Tree>>>();
  p.holds = [seed, holds, caches](const TreeCase& c) {
    if (caches->size() <= c.pair) caches->resize(c.pair + 1);
    auto& cache = (*caches)[c.pair];
    if (cache.empty())
      for (int x = 0; x < Fns::kCachedG; ++x) cache.push_back(Fns{seed, c.pair}.make_g(x));
    return holds(c.tree, Fns{seed, c.pair, &cache});
  };
  p.show = [](const TreeCase& c) { return json{{"tree", tree_to_json(c.tree)}, {"pair", c.pair}}; };
  p.read = [](const json& j) {
    return TreeCase{tree_from_json<int>(j.at("tree")), j.at("pair").get<std::size_t>()};
  };
  p.shrink = [](const TreeCase& c) {
    std::vector<TreeCase> out;
    for (auto& t : tree_reductions(c.tree)) out.push_back(TreeCase{std::move(t), c.pair});
    std::stable_sort(out.begin(), out.end(), [](const TreeCase& a, const TreeCase& b) {
      return a.tree.size() < b.tree.size();
    });
    if (c.pair != 0) out.push_back(TreeCase{c.tree, 0});
    return out;
  };
  return p;
}

void small_value_mask(const Tree& t, std::uint64_t& mask, bool& large) {
  if (t.is_val()) {
    const int v = t.value();
    if (v >= 0 && v < 64) mask |= std::uint64_t{1} << v;
    else large = true;
  } else if (t.is_choice()) {
    small_value_mask(t.left(), mask, large);
    small_value_mask(t.right(), mask, large);
  }
}

// Sorted distinct values; payloads below 64 avoid the full value list.
std::vector<int> distinct_values(const Tree& t) {
  std::uint64_t mask = 0;
  bool large = false;
  small_value_mask(t, mask, large);
  if (!large) {
    std::vector<int> out;
    for (int v = 0; mask; ++v, mask >>= 1)
      if (mask & 1) out.push_back(v);
    return out;
  }
  auto vs = values(t);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void collect_leaves(const Tree& t, Witness& path, std::vector<std::pair<int, Witness>>& out) {
  if (t.is_val()) {
    out.emplace_back(t.value(), path);
  } else if (t.is_choice()) {
    path.steps.push_back(Step::Left);
    collect_leaves(t.left(), path, out);
    path.steps.back() = Step::Right;
    collect_leaves(t.right(), path, out);
    path.steps.pop_back();
  }
}

// --- the laws ---------------------------------------------------------------------

using LawTable = std::map<std::string, Law, std::less<>>;

void add_tree_laws(LawTable& laws, const LawBounds& b, const Ops& ops) {
  const std::uint64_t seed = b.seed;

  laws["satisfy-map"] = make_law<TreeCase>(
      "satisfy-map", seed,
      tree_property(seed,
                    [ops](const Tree& t, const Fns& fn) {
                      auto f = [&fn](int x) { return fn.f(x); };
                      auto p = [&fn](int x) { return fn.p(x); };
                      return satisfy(ops.map(f, t), p) ==
                             satisfy(t, [&](int x) { return p(f(x)); });
                    }),
      tree_domain(b, 1));

  // The lemma's premise implies the conclusion; checking both directions
  // is strictly stronger and still holds.
  laws["satisfy-bind"] = make_law<TreeCase>(
      "satisfy-bind", seed,
      tree_property(seed,
                    [](const Tree& t, const Fns& fn) {
                      auto g = [&fn](int x) { return fn.g(x); };
                      auto p = [&fn](int x) { return fn.p(x); };
                      bool premise = true;
                      for (int y : values(t)) premise = premise && satisfy(g(y), p);
                      return satisfy(bind_nd(g, t), p) == premise;
                    }),
      tree_domain(b, 2));

  laws["always-map"] = make_law<TreeCase>(
      "always-map", seed,
      tree_property(seed,
                    [ops](const Tree& t, const Fns& fn) {
                      auto p = [&fn](int x) { return fn.p(x); };
                      return always(ops.map(p, t)) == satisfy(t, p);
                    }),
      tree_domain(b, 3));

  laws["member-map"] = make_law<TreeCase>(
      "member-map", seed,
      tree_property(seed,
                    [ops](const Tree& t, const Fns& fn) {
                      auto f = [&fn](int x) { return fn.f(x); };
                      const auto present = distinct_values(t);
                      const auto mapped = ops.map(f, t);
                      for (int x = 0; x < 8; ++x) {
                        const bool in = std::binary_search(present.begin(), present.end(), x);
                        const auto w = member(x, t);
                        if (w.has_value() != in) return false;
                        if (!w) continue;
                        if (!check_witness(x, t, *w)) return false;
                        const Witness w2 = map_witness(f, x, t, *w);
                        if (!check_witness(f(x), mapped, w2)) return false;
                      }
                      return true;
                    }),
      tree_domain(b, 4));

  laws["member-bind"] = make_law<TreeCase>(
      "member-bind", seed,
      tree_property(seed,
                    [](const Tree& t, const Fns& fn) {
                      auto g = [&fn](int x) { return fn.g(x); };
                      const Tree bound = bind_nd(g, t);
                      for (int x : distinct_values(t)) {
                        const auto wo = member(x, t);
                        if (!wo || !check_witness(x, t, *wo)) return false;
                        const Tree gx = g(x);
                        for (int y : distinct_values(gx)) {
                          const auto wi = member(y, gx);
                          if (!wi) return false;
                          const auto fdet = [y](int) { return y; };
                          const Witness w = bind_witness(x, t, fdet, g, *wo, *wi);
                          if (!check_witness(y, bound, w)) return false;
                        }
                      }
                      return true;
                    }),
      tree_domain(b, 5));

  laws["if-intro"] = make_law<TreeCase>(
      "if-intro", seed,
      tree_property(seed,
                    [](const Tree& t, const Fns& fn) {
                      std::vector<std::pair<int, Witness>> leaves;
                      Witness path;
                      collect_leaves(t, path, leaves);
                      const std::size_t n = leaves.size();
                      const auto check = [&](std::size_t i, std::size_t j) {
                        for (bool c : {true, false}) {
                          const int chosen = c ? leaves[i].first : leaves[j].first;
                          if (!check_witness(chosen, t,
                                             if_intro(c, leaves[i].second, leaves[j].second)))
                            return false;
                        }
                        return true;
                      };
                      // All pairs on small trees; a spread of pairs on large ones.
                      for (std::size_t i = 0; i < n; ++i) {
                        if (n <= 8) {
                          for (std::size_t j = 0; j < n; ++j)
                            if (!check(i, j)) return false;
                        } else if (!check(i, (i * 7 + fn.k) % n)) {
                          return false;
                        }
                      }
                      return true;
                    }),
      tree_domain(b, 6));
}

struct InsertCase {
  int y = 0;
  IntList xs;
};

struct PlanCase {
  IntList xs;
  ChoicePlan plan;
};

struct LastCase {
  IntList ys1;
  int x1 = 0;
  IntList ys2;
  int x2 = 0;
};

struct EncodingCase {
  std::string example;  // perm, eo or min
  IntList xs;
  std::uint64_t n = 0;
};

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

void add_program_laws(LawTable& laws, const LawBounds& b, const Ops& ops) {
  const std::uint64_t seed = b.seed;
  const auto list_property = [](std::function<bool(const IntList&)> holds) {
    Property<IntList> p;
    p.holds = std::move(holds);
    p.show = [](const IntList& xs) { return json{{"xs", xs}}; };
    p.read = [](const json& j) { return j.at("xs").get<IntList>(); };
    p.shrink = list_shrinks;
    return p;
  };
  const auto lists_over = [](std::size_t len, int lo, int hi) -> Domain<IntList> {
    return [=](const std::function<bool(const IntList&)>& visit) {
      for_each_list(len, lo, hi, visit);
    };
  };

  {
    Property<InsertCase> p;
    p.holds = [ops](const InsertCase& c) {
      const IntList r = ops.insert(c.y, c.xs);
      const auto t = programs::ndinsert_nd(c.y, c.xs);
      const auto w = member(r, t);
      return w && check_witness(r, t, *w);
    };
    p.show = [](const InsertCase& c) { return json{{"y", c.y}, {"xs", c.xs}}; };
    p.read = [](const json& j) { return InsertCase{j.at("y").get<int>(), j.at("xs").get<IntList>()}; };
    p.shrink = [](const InsertCase& c) {
      std::vector<InsertCase> out;
      for (auto& xs : list_shrinks(c.xs)) out.push_back(InsertCase{c.y, std::move(xs)});
      if (c.y > 0) out.push_back(InsertCase{c.y - 1, c.xs});
      return out;
    };
    const std::size_t len = b.list_length;
    laws["insert-ndinsert"] = make_law<InsertCase>(
        "insert-ndinsert", seed, std::move(p), [len](const auto& visit) {
          for (int y = 0; y <= 3; ++y) {
            bool go = true;
            for_each_list(len, 0, 3, [&](const IntList& xs) {
              go = visit(InsertCase{y, xs});
              return go;
            });
            if (!go) return;
          }
        });
  }

  laws["perm-length-nd"] = make_law<IntList>(
      "perm-length-nd", seed, list_property([](const IntList& xs) {
        const auto t = programs::perm_nd(xs);
        const std::size_t n = xs.size();
        return satisfy(t, [n](const IntList& ys) { return ys.size() == n; }) &&
               values(t).size() == factorial(n);
      }),
      lists_over(b.list_length, 0, 3));

  {
    Property<PlanCase> p;
    p.holds = [](const PlanCase& c) {
      return programs::perm_plan(c.plan, c.xs).size() == c.xs.size();
    };
    p.show = [](const PlanCase& c) { return json{{"xs", c.xs}, {"plan", c.plan.to_literal()}}; };
    p.read = [](const json& j) {
      return PlanCase{j.at("xs").get<IntList>(), ChoicePlan::parse(j.at("plan").get<std::string>())};
    };
    p.shrink = [](const PlanCase& c) {
      std::vector<PlanCase> out;
      for (auto& xs : list_shrinks(c.xs)) out.push_back(PlanCase{std::move(xs), c.plan});
      return out;
    };
    laws["perm-length-plan"] = make_law<PlanCase>(
        "perm-length-plan", seed, std::move(p), [b](const auto& visit) {
          const auto plans = plans_by_length(b.list_length, [](const ChoicePlan& ch, const IntList& xs) {
            programs::perm_plan(ch, xs);
          });
          bool go = true;
          for_each_list(b.list_length, 0, 3, [&](const IntList& xs) {
            for (const auto& ch : plans[xs.size()])
              if (!(go = visit(PlanCase{xs, ch}))) return false;
            return true;
          });
          if (!go) return;
          std::mt19937_64 rng(mix(b.seed, 7));
          for (const auto& ch : sample_plans(b.random_trials, b.seed, b.list_length + 1)) {
            IntList xs(rng() % (b.list_length + 1));
            for (auto& x : xs) x = static_cast<int>(rng() % 10);
            if (!visit(PlanCase{std::move(xs), ch})) return;
          }
        });
  }

  laws["sortPerm"] = make_law<IntList>(
      "sortPerm", seed, list_property([ops](const IntList& xs) {
        const IntList s = ops.sort(xs);
        const auto t = programs::perm_nd(xs);
        const auto w = member(s, t);
        return w && check_witness(s, t, *w);
      }),
      [b](const std::function<bool(const IntList&)>& visit) {
        bool go = true;
        for_each_list(b.sort_exhaustive_length, 0, 2, [&](const IntList& xs) {
          go = visit(xs);
          return go;
        });
        if (!go) return;
        std::mt19937_64 rng(mix(b.seed, 10));
        for (std::size_t i = 0; i < b.random_trials; ++i) {
          IntList xs(rng() % (b.sort_random_length + 1));
          for (auto& x : xs) x = static_cast<int>(rng() % 10);
          if (!visit(xs)) return;
        }
      });

  const auto nat_property = [](std::function<bool(std::uint64_t)> holds) {
    Property<std::uint64_t> p;
    p.holds = [holds](const std::uint64_t& n) { return holds(n); };
    p.show = [](const std::uint64_t& n) { return json{{"n", n}}; };
    p.read = [](const json& j) { return j.at("n").get<std::uint64_t>(); };
    p.shrink = [](const std::uint64_t& n) {
      std::vector<std::uint64_t> out;
      if (n > 0) out = {0, n / 2, n - 1};
      return out;
    };
    return p;
  };
  const auto naturals = [max = b.max_natural](const std::function<bool(const std::uint64_t&)>& visit) {
    for (std::uint64_t n = 0; n <= max; ++n)
      if (!visit(n)) return;
  };

  laws["even-double"] = make_law<std::uint64_t>(
      "even-double", seed, nat_property([](std::uint64_t n) {
        const Nat u = Nat::from_int(n);
        return u.to_int() == n && double_of(u).to_int() == double_of(n) && even(double_of(u)) &&
               even(double_of(n));
      }),
      naturals);

  laws["even-double-eo-nd"] = make_law<std::uint64_t>(
      "even-double-eo-nd", seed, nat_property([](std::uint64_t n) {
        const auto ed_nat = [](const Nat& x) { return even(double_of(x)); };
        const auto ed_int = [](std::uint64_t x) { return even(double_of(x)); };
        return always(map_det(ed_nat, programs::eo_nd(Nat::from_int(n)))) &&
               always(map_det(ed_int, programs::eo_nd(n)));
      }),
      naturals);

  {
    const auto eo_plans = std::make_shared<const std::vector<ChoicePlan>>(
        explore_plans([](const ChoicePlan& ch) { programs::eo_plan(ch, std::uint64_t{0}); },
                      PlanBudget{1})
            .plans);
    laws["even-double-eo-plan"] = make_law<std::uint64_t>(
        "even-double-eo-plan", seed, nat_property([eo_plans](std::uint64_t n) {
          const Nat u = Nat::from_int(n);
          for (const auto& ch : *eo_plans)
            if (!even(double_of(programs::eo_plan(ch, u))) ||
                !even(double_of(programs::eo_plan(ch, n))))
              return false;
          return true;
        }),
        naturals);
  }

  {
    Property<LastCase> p;
    p.holds = [](const LastCase& c) {
      // ys1 ++ [x1] == ys2 ++ [x2] implies x1 == x2.
      const std::size_t n1 = c.ys1.size() + 1;
      if (n1 != c.ys2.size() + 1) return true;
      const auto at1 = [&](std::size_t i) { return i < c.ys1.size() ? c.ys1[i] : c.x1; };
      const auto at2 = [&](std::size_t i) { return i < c.ys2.size() ? c.ys2[i] : c.x2; };
      for (std::size_t i = 0; i < n1; ++i)
        if (at1(i) != at2(i)) return true;
      return c.x1 == c.x2;
    };
    p.show = [](const LastCase& c) {
      return json{{"ys1", c.ys1}, {"x1", c.x1}, {"ys2", c.ys2}, {"x2", c.x2}};
    };
    p.read = [](const json& j) {
      return LastCase{j.at("ys1").get<IntList>(), j.at("x1").get<int>(),
                      j.at("ys2").get<IntList>(), j.at("x2").get<int>()};
    };
    p.shrink = [](const LastCase&) { return std::vector<LastCase>{}; };
    laws["last-det"] = make_law<LastCase>(
        "last-det", seed, std::move(p), [len = b.last_length](const auto& visit) {
          const auto lists = all_lists(len, 0, 4);
          LastCase c;
          for (const auto& ys1 : lists) {
            c.ys1 = ys1;
            for (const auto& ys2 : lists) {
              c.ys2 = ys2;
              for (c.x1 = 0; c.x1 <= 4; ++c.x1)
                for (c.x2 = 0; c.x2 <= 4; ++c.x2)
                  if (!visit(c)) return;
            }
          }
        });
  }

  {
    const auto min_plans = std::make_shared<const std::vector<std::vector<ChoicePlan>>>(
        plans_by_length(b.list_length,
                        [](const ChoicePlan& ch, const IntList& xs) { programs::min_plan(ch, xs); }));
    laws["min-theorem"] = make_law<IntList>(
        "min-theorem", seed, list_property([min_plans](const IntList& xs) {
          const auto t = programs::min_nd(xs);
          if (xs.empty()) return values(t).empty();
          const int m = programs::min_det(xs);
          const auto& plans = xs.size() < min_plans->size() ? (*min_plans)[xs.size()]
                                                            : (*min_plans).back();
          for (const auto& ch : plans) {
            const auto z = programs::min_plan(ch, xs);
            if (z && *z != m) return false;
          }
          for (int v : values(t))
            if (v != m) return false;
          return !values(t).empty();
        }),
        lists_over(b.list_length, 0, 5));
  }

  {
    const auto perm_plans = std::make_shared<const std::vector<std::vector<ChoicePlan>>>(
        plans_by_length(b.list_length,
                        [](const ChoicePlan& ch, const IntList& xs) { programs::perm_plan(ch, xs); }));
    const auto min_plans = std::make_shared<const std::vector<std::vector<ChoicePlan>>>(
        plans_by_length(b.list_length,
                        [](const ChoicePlan& ch, const IntList& xs) { programs::min_plan(ch, xs); }));
    const auto eo_plans = std::make_shared<const std::vector<ChoicePlan>>(
        explore_plans([](const ChoicePlan& ch) { programs::eo_plan(ch, std::uint64_t{0}); },
                      PlanBudget{1})
            .plans);

    Property<EncodingCase> p;
    p.holds = [perm_plans, min_plans, eo_plans](const EncodingCase& c) {
      const auto plans_for = [](const std::vector<std::vector<ChoicePlan>>& table, std::size_t n) {
        if (n >= table.size()) throw std::out_of_range("list longer than the explored plans");
        return table[n];
      };
      if (c.example == "perm") {
        std::set<IntList> from_plans;
        for (const auto& ch : plans_for(*perm_plans, c.xs.size()))
          from_plans.insert(programs::perm_plan(ch, c.xs));
        const auto vs = values(programs::perm_nd(c.xs));
        return from_plans == std::set<IntList>(vs.begin(), vs.end());
      }
      if (c.example == "min") {
        std::set<int> from_plans;
        for (const auto& ch : plans_for(*min_plans, c.xs.size()))
          if (auto z = programs::min_plan(ch, c.xs)) from_plans.insert(*z);
        const auto vs = values(programs::min_nd(c.xs));
        return from_plans == std::set<int>(vs.begin(), vs.end());
      }
      if (c.example == "eo") {
        std::set<std::uint64_t> from_plans;
        for (const auto& ch : *eo_plans) from_plans.insert(programs::eo_plan(ch, c.n));
        const auto vs = values(programs::eo_nd(c.n));
        return from_plans == std::set<std::uint64_t>(vs.begin(), vs.end());
      }
      throw std::invalid_argument("unknown example '" + c.example + "'");
    };
    p.show = [](const EncodingCase& c) {
      if (c.example == "eo") return json{{"example", c.example}, {"n", c.n}};
      return json{{"example", c.example}, {"xs", c.xs}};
    };
    p.read = [](const json& j) {
      EncodingCase c;
      c.example = j.at("example").get<std::string>();
      if (c.example == "eo")
        c.n = j.at("n").get<std::uint64_t>();
      else
        c.xs = j.at("xs").get<IntList>();
      return c;
    };
    p.shrink = [](const EncodingCase& c) {
      std::vector<EncodingCase> out;
      for (auto& xs : list_shrinks(c.xs)) out.push_back(EncodingCase{c.example, std::move(xs), c.n});
      if (c.n > 0) out.push_back(EncodingCase{c.example, c.xs, c.n / 2});
      return out;
    };
    laws["encodings-agree"] = make_law<EncodingCase>(
        "encodings-agree", seed, std::move(p), [b](const auto& visit) {
          bool go = true;
          for_each_list(b.list_length, 0, 3, [&](const IntList& xs) {
            go = visit(EncodingCase{"perm", xs, 0});
            return go;
          });
          if (!go) return;
          for (std::uint64_t n = 0; n <= b.max_natural; ++n)
            if (!visit(EncodingCase{"eo", {}, n})) return;
          for_each_list(b.list_length, 0, 5, [&](const IntList& xs) {
            return visit(EncodingCase{"min", xs, 0});
          });
        });
  }
}

// --- evaluator laws ---------------------------------------------------------------

struct ModeSets {
  std::set<std::string> runtime_eager, runtime_lazy, calltime_eager, calltime_lazy;
};

// Expressions whose four results are pinned down exactly.
const std::map<std::string, ModeSets>& exact_semantics() {
  static const std::map<std::string, ModeSets> table{
      {"double (0 ? 1)", {{"0", "2"}, {"0", "1", "2"}, {"0", "2"}, {"0", "2"}}},
      {"double coin", {{"0", "2"}, {"0", "1", "2"}, {"0", "2"}, {"0", "2"}}},
      {"let x = coin in add x x", {{"0", "2"}, {"0", "1", "2"}, {"0", "2"}, {"0", "2"}}},
      {"dup (0 ? 1)",
       {{"Pair 0 0", "Pair 1 1"},
        {"Pair 0 0", "Pair 0 1", "Pair 1 0", "Pair 1 1"},
        {"Pair 0 0", "Pair 1 1"},
        {"Pair 0 0", "Pair 1 1"}}},
  };
  return table;
}

struct SemCase {
  std::string program;
  std::string expr;
  std::optional<std::set<std::string>> agreed;
};

std::set<std::string> shown_lists(const core::Program& prog, const std::vector<IntList>& lists) {
  std::set<std::string> out;
  for (const auto& xs : lists) out.insert(core::show(core::parse_expression(prog, core::list_literal(xs))));
  return out;
}

// The bundled corpus plus expressions whose value sets come from the tree
// encoding of the same program.
std::vector<SemCase> semantics_cases() {
  std::vector<SemCase> out;
  for (const auto& e : core::semantics_corpus()) out.push_back(SemCase{e.program, e.expr, e.agreed});
  const core::Program& lists = core::lists_program();
  for (std::size_t n = 0; n <= 3; ++n) {
    const IntList xs = [&] {
      IntList v;
      for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<int>(i + 1));
      return v;
    }();
    out.push_back(SemCase{"lists", "perm (" + core::list_literal(xs) + ")",
                          shown_lists(lists, values(programs::perm_nd(xs)))});
    out.push_back(SemCase{"lists", "ndinsert 0 (" + core::list_literal(xs) + ")",
                          shown_lists(lists, values(programs::ndinsert_nd(0, xs)))});
  }
  for (std::uint64_t n = 0; n <= 4; ++n) {
    std::set<std::string> expected;
    for (auto v : values(programs::eo_nd(n))) expected.insert(std::to_string(v));
    out.push_back(SemCase{"peano", "eo " + std::to_string(n), expected});
  }
  return out;
}

void add_evaluator_laws(LawTable& laws, const LawBounds& b, const Ops& ops) {
  const core::EvalFaults faults = ops.faults();
  {
    Property<SemCase> p;
    p.holds = [faults](const SemCase& c) {
      const core::Program& prog = core::bundled_program(c.program);
      const auto r = core::compare_semantics(prog, core::parse_expression(prog, c.expr),
                                             core::kDefaultFuel, faults);
      for (const auto* rs : {&r.runtime_eager, &r.runtime_lazy, &r.calltime_eager, &r.calltime_lazy})
        if (rs->fuel_exhausted != 0) return false;
      if (!r.calltime_within_runtime_eager() || !r.calltime_within_runtime_lazy()) return false;
      if (auto it = exact_semantics().find(c.expr); it != exact_semantics().end()) {
        const ModeSets& m = it->second;
        if (r.runtime_eager.value_set() != m.runtime_eager ||
            r.runtime_lazy.value_set() != m.runtime_lazy ||
            r.calltime_eager.value_set() != m.calltime_eager ||
            r.calltime_lazy.value_set() != m.calltime_lazy)
          return false;
      }
      if (c.agreed && (!r.all_agree() || r.calltime_eager.value_set() != *c.agreed)) return false;
      return true;
    };
    p.show = [](const SemCase& c) {
      json j{{"program", c.program}, {"expr", c.expr}};
      if (c.agreed) j["agreed"] = *c.agreed;
      return j;
    };
    p.read = [](const json& j) {
      SemCase c{j.at("program").get<std::string>(), j.at("expr").get<std::string>(), std::nullopt};
      if (j.contains("agreed")) c.agreed = j.at("agreed").get<std::set<std::string>>();
      return c;
    };
    p.shrink = [](const SemCase&) { return std::vector<SemCase>{}; };
    laws["semantics-contrast"] =
        make_law<SemCase>("semantics-contrast", b.seed, std::move(p), [](const auto& visit) {
          for (const auto& c : semantics_cases())
            if (!visit(c)) return;
        });
  }

  {
    struct Expect {
      std::set<std::string> lazy;
      std::size_t lazy_failed;
      std::set<std::string> eager;
      bool eager_fails;
    };
    static const std::map<std::string, Expect> cases{
        {"head (Cons 0 (tail Nil))", {{"0"}, 0, {}, true}},
        {"head (Cons 0 Nil)", {{"0"}, 0, {"0"}, false}},
        {"head (tail (Cons 1 (Cons 0 Nil)))", {{"0"}, 0, {"0"}, false}},
    };
    Property<std::string> p;
    p.holds = [faults](const std::string& expr) {
      const Expect& e = cases.at(expr);
      const core::Program& prog = core::lists_program();
      const auto parsed = core::parse_expression(prog, expr);
      const auto lazy = core::eval(prog, parsed, {core::Semantics::CallTime, core::Strategy::Lazy}, faults);
      const auto eager =
          core::eval(prog, parsed, {core::Semantics::CallTime, core::Strategy::Eager}, faults);
      return lazy.value_set() == e.lazy && lazy.failed == e.lazy_failed &&
             eager.value_set() == e.eager && (eager.failed >= 1) == e.eager_fails;
    };
    p.show = [](const std::string& expr) { return json{{"expr", expr}}; };
    p.read = [](const json& j) { return j.at("expr").get<std::string>(); };
    p.shrink = [](const std::string&) { return std::vector<std::string>{}; };
    laws["laziness-failure"] =
        make_law<std::string>("laziness-failure", b.seed, std::move(p), [](const auto& visit) {
          for (const auto& [expr, e] : cases)
            if (!visit(expr)) return;
        });
  }
}

}  // namespace

struct LawSuite::Impl {
  LawBounds bounds;
  Mutant mutant;
  LawTable laws;
};

LawSuite::LawSuite(LawBounds bounds, Mutant mutant) : impl_(std::make_unique<Impl>()) {
  impl_->bounds = bounds;
  impl_->mutant = mutant;
  const Ops ops{mutant};
  add_tree_laws(impl_->laws, bounds, ops);
  add_program_laws(impl_->laws, bounds, ops);
  add_evaluator_laws(impl_->laws, bounds, ops);
}

LawSuite::~LawSuite() = default;

std::vector<std::string> LawSuite::names() const {
  std::vector<std::string> out;
  for (const auto& [name, law] : impl_->laws) out.push_back(name);
  return out;
}

bool LawSuite::has_law(std::string_view name) const { return impl_->laws.find(name) != impl_->laws.end(); }

LawReport LawSuite::run_law(std::string_view name) const {
  auto it = impl_->laws.find(name);
  if (it == impl_->laws.end()) throw UnknownLawError("unknown law '" + std::string(name) + "'");
  const auto start = std::chrono::steady_clock::now();
  LawReport r = it->second.run();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<LawReport> LawSuite::run_all() const {
  std::vector<LawReport> out;
  for (const auto& name : names()) out.push_back(run_law(name));
  return out;
}

bool LawSuite::replay(std::string_view name, const json& counterexample) const {
  auto it = impl_->laws.find(name);
  if (it == impl_->laws.end()) throw UnknownLawError("unknown law '" + std::string(name) + "'");
  return it->second.replay(counterexample);
}

const LawBounds& LawSuite::bounds() const { return impl_->bounds; }
Mutant LawSuite::mutant() const { return impl_->mutant; }

}  // namespace ndl::laws
