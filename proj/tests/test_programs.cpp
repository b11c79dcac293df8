#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ndl/programs.hpp"
#include "ndl/registry.hpp"
#include "oracles.hpp"

using namespace ndl;
using IntList = std::vector<int>;
namespace pg = ndl::programs;

namespace {

template <class F>
std::vector<std::invoke_result_t<F, const ChoicePlan&>> explored(F f, std::size_t depth) {
  std::vector<std::invoke_result_t<F, const ChoicePlan&>> out;
  const auto ex = explore_plans([&](const ChoicePlan& p) { (void)f(p); }, PlanBudget{depth});
  for (const auto& p : ex.plans) out.push_back(f(p));
  return out;
}

}  // namespace

TEST_CASE("ndinsert matches every insertion position") {
  for (const auto& xs : oracle::lists(4, 0, 2)) {
    CHECK(values(pg::ndinsert_nd(7, xs)) == oracle::insertions(7, xs));
    CHECK(values(pg::ndins_split_nd(7, xs)) == oracle::insertions(7, xs));
    const auto via_plan = explored([&](const ChoicePlan& p) { return pg::ndinsert_plan(p, 7, xs); },
                                   xs.size() + 1);
    CHECK(oracle::multiset_of(via_plan) == oracle::multiset_of(oracle::insertions(7, xs)));
    const auto via_split = explored(
        [&](const ChoicePlan& p) { return pg::ndins_split_plan(p, 7, xs); }, xs.size() + 1);
    CHECK(oracle::multiset_of(via_split) == oracle::multiset_of(oracle::insertions(7, xs)));
  }
}

TEST_CASE("perm in both encodings yields the permutations") {
  for (const auto& xs : oracle::lists(5, 0, 2)) {
    CAPTURE(xs.size());
    const auto expected = oracle::multiset_of(oracle::permutations(xs));
    CHECK(oracle::multiset_of(values(pg::perm_nd(xs))) == expected);
    const auto planned =
        explored([&](const ChoicePlan& p) { return pg::perm_plan(p, xs); }, xs.size() + 1);
    CHECK(oracle::multiset_of(planned) == expected);
  }
}

TEST_CASE("eo offers n and its successor") {
  CHECK(values(pg::eo_nd(std::uint64_t{4})) == std::vector<std::uint64_t>{4, 5});
  CHECK(pg::eo_plan(ChoicePlan({{"", true}}), std::uint64_t{4}) == 4);
  CHECK(pg::eo_plan(ChoicePlan({{"", false}}), std::uint64_t{4}) == 5);
  CHECK(values(pg::eo_nd(Nat::from_int(2)))[1].to_int() == 3);
}

TEST_CASE("insert and sort agree with std::sort") {
  CHECK(pg::insert(2, {1, 3}) == IntList{1, 2, 3});
  CHECK(pg::insert(2, {}) == IntList{2});
  CHECK(pg::insert(1, {1}) == IntList{1, 1});
  std::mt19937_64 rng(gen::kSeed);
  for (int i = 0; i < 1000; ++i) {
    const auto xs = gen::list(rng, 9, 6);
    CHECK(pg::sort(xs) == oracle::sorted(xs));
  }
}

TEST_CASE("min in three encodings") {
  CHECK(values(pg::min_nd({3, 1, 2, 1})) == IntList{1, 1});
  CHECK(values(pg::min_nd({})).empty());
  CHECK(pg::min_det({3, 1, 2}) == 1);
  CHECK_THROWS_AS(pg::min_det({}), std::invalid_argument);
  CHECK_FALSE(pg::min_plan(ChoicePlan{}, {}).has_value());

  for (const auto& xs : oracle::lists(5, 0, 3)) {
    if (xs.empty()) continue;
    const int m = *std::min_element(xs.begin(), xs.end());
    CHECK(pg::min_det(xs) == m);
    for (int v : values(pg::min_nd(xs))) CHECK(v == m);
    const auto planned =
        explored([&](const ChoicePlan& p) { return pg::min_plan(p, xs); }, xs.size());
    bool some = false;
    for (const auto& r : planned) {
      if (r) CHECK(*r == m);
      some = some || r.has_value();
    }
    CHECK(some);
  }
}

TEST_CASE("last by splitting has only the final element as a value") {
  CHECK(values(pg::last_splits(IntList{})).empty());
  for (const auto& xs : oracle::lists(4, 0, 2)) {
    if (xs.empty()) continue;
    CHECK(values(pg::last_splits(xs)) == IntList{xs.back()});
    const auto planned =
        explored([&](const ChoicePlan& p) { return pg::last_plan(p, xs); }, xs.size() + 1);
    std::size_t hits = 0;
    for (const auto& r : planned)
      if (r) {
        CHECK(*r == xs.back());
        ++hits;
      }
    CHECK(hits == 1);
  }
}

TEST_CASE("unary naturals") {
  CHECK(Nat{}.is_zero());
  CHECK(Nat::from_int(0) == Nat::zero());
  CHECK_THROWS(Nat{}.pred());
  for (std::uint64_t n = 0; n < 40; ++n) {
    const Nat u = Nat::from_int(n);
    CHECK(u.to_int() == n);
    CHECK(succ(u).to_int() == n + 1);
    CHECK(double_of(u).to_int() == 2 * n);
    CHECK(add(u, Nat::from_int(3)).to_int() == n + 3);
    CHECK(even(u) == (n % 2 == 0));
    CHECK(even(n) == even(u));
    CHECK(double_of(n) == 2 * n);
  }
}

TEST_CASE("registry runs examples by name") {
  std::vector<std::string> names;
  for (const auto& e : examples()) names.push_back(e.name);
  CHECK(names == std::vector<std::string>{"perm", "ndinsert", "ndins", "eo", "double-even", "sort",
                                          "min", "last"});

  const std::vector<std::string> args{"[1,2]"};
  const auto vs = values(find_example("perm").nd(args));
  CHECK(vs.size() == 2);
  CHECK(vs[0].dump() == "[1,2]");
  CHECK(find_example("min").plan(ChoicePlan{}, std::vector<std::string>{"[]"}) == std::nullopt);
  CHECK(find_example("eo").plan(ChoicePlan{}, std::vector<std::string>{"3"})->get<int>() == 4);

  CHECK_THROWS_AS(find_example("nope"), UnknownExampleError);
  CHECK_THROWS_AS(find_example("perm").nd(std::vector<std::string>{}), ExampleArgumentError);
  CHECK_THROWS_AS(parse_int_list("[1,x]"), ExampleArgumentError);
  CHECK_THROWS_AS(parse_int_list("[1,2.5]"), ExampleArgumentError);
  CHECK_THROWS_AS(parse_int_list("3"), ExampleArgumentError);
  CHECK_THROWS_AS(parse_natural("-1"), ExampleArgumentError);
  CHECK_THROWS_AS(parse_natural(""), ExampleArgumentError);
  CHECK_THROWS_AS(parse_int("1a"), ExampleArgumentError);
  CHECK(parse_int("-4") == -4);
  CHECK(parse_int_list(" [ 3 , -1 ] ") == IntList{3, -1});
}
