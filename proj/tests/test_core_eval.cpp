#include <doctest.h>

#include <random>

#include "ndl/core_eval.hpp"
#include "ndl/core_parser.hpp"
#include "ndl/corpus.hpp"
#include "ndl/programs.hpp"
#include "oracles.hpp"

using namespace ndl::core;
using Values = std::set<std::string>;
using IntList = std::vector<int>;

namespace {

const EvalConfig kModes[] = {
    {Semantics::RunTime, Strategy::Eager},
    {Semantics::RunTime, Strategy::Lazy},
    {Semantics::CallTime, Strategy::Eager},
    {Semantics::CallTime, Strategy::Lazy},
};

ResultSet run(const Program& p, std::string_view src, EvalConfig cfg) {
  return eval(p, parse_expression(p, src), cfg);
}

Values run_set(const Program& p, std::string_view src, EvalConfig cfg) {
  return run(p, src, cfg).value_set();
}

std::multiset<std::string> rendered(const std::vector<IntList>& lists) {
  std::multiset<std::string> out;
  for (const auto& xs : lists) out.insert(show(parse_expression(lists_program(), list_literal(xs))));
  return out;
}

ExprPtr num(std::uint64_t k) { return make_numeral(k); }
ExprPtr ch(std::uint64_t id, ExprPtr l, ExprPtr r) {
  return make_choice(std::move(l), std::move(r), ChoiceId{id});
}

ExprPtr random_choice_expr(std::mt19937_64& rng, int depth, std::uint64_t id_range) {
  std::uniform_int_distribution<int> kind(0, 3);
  const int k = depth == 0 ? kind(rng) % 2 : kind(rng);
  if (k == 0) return make_fail();
  if (k == 1) return num(rng() % 4);
  return ch(1 + rng() % id_range, random_choice_expr(rng, depth - 1, id_range),
            random_choice_expr(rng, depth - 1, id_range));
}

}  // namespace

TEST_CASE("double (0 ? 1) across the four modes") {
  const auto& p = peano_program();
  CHECK(run_set(p, "double (0 ? 1)", kModes[0]) == Values{"0", "2"});
  CHECK(run_set(p, "double (0 ? 1)", kModes[1]) == Values{"0", "1", "2"});
  CHECK(run_set(p, "double (0 ? 1)", kModes[2]) == Values{"0", "2"});
  CHECK(run_set(p, "double (0 ? 1)", kModes[3]) == Values{"0", "2"});
  // Runtime choice under lazy evaluation copies the choice before it is
  // resolved, so the two copies of the argument pick independently.
  CHECK(run(p, "double (0 ? 1)", kModes[1]).values.size() == 4);
}

TEST_CASE("deterministic and choice-free expressions agree in every mode") {
  const auto& p = peano_program();
  for (const auto& cfg : kModes) {
    CHECK(run_set(p, "add 2 3", cfg) == Values{"5"});
    CHECK(run_set(p, "even (double 7)", cfg) == Values{"True"});
    CHECK(run_set(p, "even 3", cfg) == Values{"False"});
    CHECK(run_set(p, "pick 1 2", cfg) == Values{"1", "2"});
    CHECK(run_set(p, "eo 3", cfg) == Values{"3", "4"});
    CHECK(run(p, "fail", cfg).failed == 1);
  }
}

TEST_CASE("a let binding shares its choice under call-time choice") {
  const auto& p = peano_program();
  CHECK(run_set(p, "let x = coin in add x x", kModes[3]) == Values{"0", "2"});
  CHECK(run_set(p, "let x = coin in add x x", kModes[1]) == Values{"0", "1", "2"});
  CHECK(run_set(p, "add coin coin", kModes[3]) == Values{"0", "1", "2"});
}

TEST_CASE("lazy evaluation ignores an undemanded failure") {
  const auto& lists = lists_program();
  const auto demo = eval_lazy_failure_demo(lists);
  CHECK(demo.lazy.value_set() == Values{"0"});
  CHECK(demo.lazy.failed == 0);
  CHECK(demo.eager.values.empty());
  CHECK(demo.eager.failed == 1);
  for (const auto& cfg : kModes) CHECK(run_set(lists, "head (Cons 0 Nil)", cfg) == Values{"0"});
  CHECK(run(lists, "head Nil", kModes[3]).failed == 1);
}

TEST_CASE("pull-tab moves a choice above its application") {
  const auto& p = peano_program();
  const auto e = make_call("even", {ch(5, num(0), num(1))});
  const auto pulled = pull_tab(e, 0);
  CHECK(show(pulled, true) == "even 0 ?5 even 1");
  CHECK(structurally_equal(pulled, parse_expression(p, "even 0 ? even 1")));

  const auto k = make_ctor("Pair", {num(2), ch(3, num(0), make_fail())});
  CHECK(show(pull_tab(k, 1), true) == "Pair 2 0 ?3 Pair 2 fail");

  const auto l = make_let("x", ch(9, num(0), num(1)), make_call("add", {make_var("x"), make_var("x")}));
  CHECK(show(pull_tab(l, 0), true) == "(let x = 0 in add x x) ?9 let x = 1 in add x x");

  CHECK_THROWS_AS(pull_tab(e, 1), std::invalid_argument);
  CHECK_THROWS_AS(pull_tab(make_call("even", {num(1)}), 0), std::invalid_argument);
  CHECK_THROWS_AS(pull_tab(l, 1), std::invalid_argument);
  CHECK_THROWS_AS(pull_tab(num(0), 0), std::invalid_argument);
}

TEST_CASE("extraction selects consistently per choice id") {
  const auto same = choice_tree_of(ch(1, ch(1, num(0), num(1)), ch(1, num(2), num(3))));
  CHECK(extract_values(same).value_set() == Values{"0", "3"});
  CHECK(extract_values(same).value_set() == oracle::assignment_values(same));

  const auto fresh = choice_tree_of(ch(1, ch(2, num(0), num(1)), ch(3, num(2), num(3))));
  CHECK(extract_values(fresh).value_set() == Values{"0", "1", "2", "3"});

  const auto with_fail = extract_values(choice_tree_of(ch(1, num(0), make_fail())));
  CHECK(with_fail.value_set() == Values{"0"});
  CHECK(with_fail.failed == 1);

  CHECK_THROWS_AS(choice_tree_of(make_call("coin")), std::invalid_argument);
  CHECK_THROWS_AS(choice_tree_of(make_var("x")), std::invalid_argument);
}

TEST_CASE("property: extraction against brute-force assignments") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1500; ++trial) {
    const auto shared = choice_tree_of(random_choice_expr(rng, 5, 3));
    CHECK(extract_values(shared).value_set() == oracle::assignment_values(shared));

    // With every id distinct, consistency never prunes, so extraction is
    // plain path enumeration.
    std::uint64_t next = 1;
    std::function<ExprPtr(int)> distinct = [&](int depth) -> ExprPtr {
      const auto e = random_choice_expr(rng, 0, 1);
      if (depth == 0 || rng() % 3 == 0) return e;
      const std::uint64_t id = next++;
      return ch(id, distinct(depth - 1), distinct(depth - 1));
    };
    const auto t = choice_tree_of(distinct(5));
    const auto vs = extract_values(t).sorted_values();
    CHECK(std::multiset<std::string>(vs.begin(), vs.end()) == oracle::path_values(t));
  }
}

TEST_CASE("perm agrees with the permutation oracle in every mode") {
  for (const IntList& xs : {IntList{}, IntList{1}, IntList{1, 2}, IntList{1, 2, 3}, IntList{2, 2, 1}}) {
    const auto src = "perm (" + list_literal(xs) + ")";
    const auto expected = rendered(oracle::permutations(xs));
    for (const auto& cfg : kModes) {
      CAPTURE(src);
      CAPTURE(to_string(cfg.semantics));
      CAPTURE(to_string(cfg.strategy));
      const auto r = run(lists_program(), src, cfg);
      const auto vs = r.sorted_values();
      CHECK(std::multiset<std::string>(vs.begin(), vs.end()) == expected);
      CHECK(r.fuel_exhausted == 0);
    }
  }
}

TEST_CASE("call-time eager matches the tree encoding") {
  for (std::uint64_t n = 0; n <= 6; ++n) {
    std::multiset<std::string> expected;
    for (auto v : ndl::values(ndl::programs::eo_nd(n))) expected.insert(std::to_string(v));
    const auto vs = run(peano_program(), "eo " + std::to_string(n), kModes[2]).sorted_values();
    CHECK(std::multiset<std::string>(vs.begin(), vs.end()) == expected);
  }
  for (const auto& xs : oracle::lists(3, 1, 3)) {
    for (int x : {0, 2}) {
      const auto r = run(lists_program(),
                         "ndinsert " + std::to_string(x) + " (" + list_literal(xs) + ")", kModes[2]);
      const auto vs = r.sorted_values();
      CHECK(std::multiset<std::string>(vs.begin(), vs.end()) ==
            rendered(ndl::values(ndl::programs::ndinsert_nd(x, xs))));
    }
  }
}

TEST_CASE("call-time values stay within run-time values on the corpus") {
  for (const auto& entry : semantics_corpus()) {
    CAPTURE(entry.expr);
    const auto& prog = bundled_program(entry.program);
    const auto report = compare_semantics(prog, parse_expression(prog, entry.expr));
    CHECK(report.calltime_within_runtime_eager());
    CHECK(report.calltime_within_runtime_lazy());
    if (entry.agreed) {
      CHECK(report.all_agree());
      CHECK(report.calltime_lazy.value_set() == *entry.agreed);
    }
  }
}

TEST_CASE("fuel cuts branches without inventing values") {
  const auto& lists = lists_program();
  const auto e = parse_expression(lists, "perm (" + list_literal({1, 2, 3}) + ")");
  for (const auto& cfg : kModes) {
    auto full_cfg = cfg;
    const auto full = eval(lists, e, full_cfg);
    REQUIRE(full.fuel_exhausted == 0);
    const auto fv = full.sorted_values();
    const std::multiset<std::string> all(fv.begin(), fv.end());
    bool saw_cut = false;
    for (std::uint64_t fuel = 0; fuel < 60; ++fuel) {
      auto small = cfg;
      small.fuel = fuel;
      const auto r = eval(lists, e, small);
      saw_cut = saw_cut || r.fuel_exhausted > 0;
      const auto sv = r.sorted_values();
      CHECK(std::includes(all.begin(), all.end(), sv.begin(), sv.end()));
    }
    CHECK(saw_cut);
  }
}

TEST_CASE("result rendering") {
  const auto r = run(peano_program(), "pick 2 (0 ? fail)", kModes[3]);
  CHECK(r.sorted_values() == std::vector<std::string>{"0", "2"});
  CHECK(r.to_text() == "0\n2\nfailed=1 fuel_exhausted=0\n");
  CHECK(r.to_json().dump() == R"({"failed":1,"fuel_exhausted":0,"values":["0","2"]})");
  const auto rep = compare_semantics(peano_program(), parse_expression(peano_program(), "double (0 ? 1)"));
  CHECK_FALSE(rep.all_agree());
  CHECK(rep.to_text().find("runtime+lazy") != std::string::npos);
  CHECK(rep.to_json().contains("calltime_lazy"));
}
