#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ndl/nd_json.hpp"
#include "ndl/nd_tree.hpp"
#include "ndl/programs.hpp"
#include "oracles.hpp"

using namespace ndl;
using IntList = std::vector<int>;

namespace {
const NDTree<bool> coin = choice(val(true), val(false));
bool is_even(int x) { return x % 2 == 0; }
int successor(int x) { return x + 1; }
}  // namespace

TEST_CASE("val, choice and fail build the expected value lists") {
  CHECK(values(val(3)) == IntList{3});
  CHECK(values(coin) == std::vector<bool>{true, false});
  CHECK(values(choice(fail<int>(), val(1))) == IntList{1});
  CHECK(values(choice(val(0), choice(val(1), val(2)))) == IntList{0, 1, 2});
  CHECK(values(fail<int>()).empty());
  CHECK(NDTree<int>().is_fail());
}

TEST_CASE("member finds the leftmost witness") {
  CHECK(member(3, val(3)) == Witness{});
  CHECK(member(true, coin)->to_string() == "L");
  CHECK(member(false, coin)->to_string() == "R");
  CHECK_FALSE(member(2, val(3)).has_value());
  CHECK_FALSE(member(0, fail<int>()).has_value());
  CHECK(member(1, choice(choice(val(0), val(1)), val(1)))->to_string() == "LR");
}

TEST_CASE("check_witness follows the path to a matching value") {
  CHECK(check_witness(true, coin, Witness::parse("L")));
  CHECK_FALSE(check_witness(true, coin, Witness::parse("R")));
  CHECK(check_witness(7, val(7), Witness{}));
  CHECK_FALSE(check_witness(7, val(7), Witness::parse("L")));
  CHECK_FALSE(check_witness(7, choice(val(7), val(8)), Witness{}));
  CHECK_THROWS_AS(Witness::parse("LX"), std::invalid_argument);
}

TEST_CASE("map_det maps values and keeps the shape") {
  CHECK(values(map_det(successor, choice(val(1), val(2)))) == IntList{2, 3});
  const auto t = choice(val(1), choice(fail<int>(), val(5)));
  CHECK(map_det([](int x) { return x; }, t) == t);

  const auto prepend2 = [](const IntList& ys) {
    IntList out{2};
    out.insert(out.end(), ys.begin(), ys.end());
    return out;
  };
  const auto mapped = map_det(prepend2, programs::ndinsert_nd(1, IntList{3}));
  std::vector<IntList> expected;
  for (const auto& ys : oracle::insertions(1, {3})) expected.push_back(prepend2(ys));
  CHECK(values(mapped) == expected);
}

TEST_CASE("bind_nd substitutes trees for values") {
  const auto eo = [](std::uint64_t n) { return programs::eo_nd(n); };
  CHECK(values(bind_nd(eo, val(std::uint64_t{0}))) == std::vector<std::uint64_t>{0, 1});

  const auto t = choice(val(1), choice(fail<int>(), val(5)));
  CHECK(bind_nd([](int x) { return val(x); }, t) == t);

  const auto perms = bind_nd([](const IntList& ys) { return programs::ndinsert_nd(1, ys); },
                             programs::perm_nd(IntList{2, 3}));
  CHECK(oracle::multiset_of(values(perms)) == oracle::multiset_of(oracle::permutations({1, 2, 3})));
}

TEST_CASE("satisfy and always") {
  CHECK(satisfy(choice(val(0), val(2)), is_even));
  CHECK_FALSE(satisfy(choice(val(0), val(1)), is_even));
  CHECK(satisfy(fail<int>(), [](int) { return false; }));
  for (int x = 0; x < 4; ++x) CHECK(satisfy(val(x), is_even) == is_even(x));

  CHECK(always(choice(val(true), val(true))));
  CHECK_FALSE(always(choice(val(true), val(false))));
  const auto even_double = [](std::uint64_t n) { return even(double_of(n)); };
  CHECK(always(map_det(even_double, programs::eo_nd(std::uint64_t{5}))));
}

TEST_CASE("values of perm_nd are the permutations") {
  CHECK(values(programs::perm_nd(IntList{})) == std::vector<IntList>{IntList{}});
  const auto vs = values(programs::perm_nd(IntList{1, 2, 3}));
  CHECK(vs.size() == 6);
  CHECK(oracle::set_of(vs) == oracle::set_of(oracle::permutations({1, 2, 3})));
}

TEST_CASE("map_witness and bind_witness transport witnesses") {
  const auto t = choice(val(1), val(2));
  const auto w = map_witness(successor, 1, t, Witness::parse("L"));
  CHECK(w.to_string() == "L");
  CHECK(check_witness(2, map_det(successor, t), w));
  CHECK_THROWS_AS(map_witness(successor, 1, t, Witness::parse("R")), std::invalid_argument);

  const auto prepend2 = [](const IntList& ys) {
    IntList out{2};
    out.insert(out.end(), ys.begin(), ys.end());
    return out;
  };
  const auto ins = programs::ndinsert_nd(1, IntList{3});
  const auto w13 = *member(IntList{1, 3}, ins);
  const auto w213 = map_witness(prepend2, IntList{1, 3}, ins, w13);
  CHECK(w213 == *member(IntList{2, 1, 3}, map_det(prepend2, ins)));

  const auto eo = [](std::uint64_t n) { return programs::eo_nd(n); };
  const auto id = [](std::uint64_t n) { return n; };
  const auto wb = bind_witness(std::uint64_t{0}, val(std::uint64_t{0}), id, eo, Witness{},
                               Witness::parse("L"));
  CHECK(wb.to_string() == "L");
  CHECK(check_witness(std::uint64_t{0}, bind_nd(eo, val(std::uint64_t{0})), wb));
  CHECK(bind_witness(5, val(5), [](int x) { return x; }, [](int x) { return val(x); }, Witness{},
                     Witness{}) == Witness{});
  CHECK_THROWS_AS(bind_witness(std::uint64_t{0}, val(std::uint64_t{0}), id, eo, Witness{},
                               Witness::parse("R")),
                  std::invalid_argument);
}

TEST_CASE("sortPerm witness by composing insert and perm witnesses") {
  // sort (x:xs) = insert x (sort xs), and perm (x:xs) = ndinsert x *$* perm xs:
  // the outer witness locates sort xs in perm xs, the inner one locates
  // insert x (sort xs) in ndinsert x (sort xs).
  const IntList xs{2, 1};
  const int x = xs.front();
  const IntList rest(xs.begin() + 1, xs.end());
  const auto outer_tree = programs::perm_nd(rest);
  const IntList sorted_rest = programs::sort(rest);
  const auto w_outer = *member(sorted_rest, outer_tree);
  const auto ins = [x](const IntList& ys) { return programs::ndinsert_nd(x, ys); };
  const auto ins_det = [x](const IntList& ys) { return programs::insert(x, ys); };
  const auto w_inner = *member(ins_det(sorted_rest), ins(sorted_rest));
  const auto w = bind_witness(sorted_rest, outer_tree, ins_det, ins, w_outer, w_inner);
  CHECK(check_witness(programs::sort(xs), programs::perm_nd(xs), w));
  CHECK(programs::sort(xs) == IntList{1, 2});
}

TEST_CASE("if_intro picks the witness for the selected value") {
  const auto t = choice(val(4), choice(val(7), val(9)));
  const auto w4 = *member(4, t);
  const auto w9 = *member(9, t);
  CHECK(check_witness(4, t, if_intro(true, w4, w9)));
  CHECK(check_witness(9, t, if_intro(false, w4, w9)));
}

TEST_CASE("json round trip for trees and witnesses") {
  const auto t = choice(val(1), choice(fail<int>(), val(2)));
  const auto j = tree_to_json(t);
  CHECK(j.dump() == R"({"l":{"val":1},"r":{"l":"fail","r":{"val":2}}})");
  CHECK(tree_from_json<int>(j) == t);
  CHECK(witness_to_json(Witness::parse("LRR")) == "LRR");
  CHECK(witness_from_json(nlohmann::json("RL")).to_string() == "RL");
  CHECK_THROWS_AS(tree_from_json<int>(nlohmann::json("nope")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json<int>(nlohmann::json::object({{"x", 1}})), std::invalid_argument);
}

TEST_CASE("property: tree invariants on random trees") {
  std::mt19937_64 rng(gen::kSeed);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto t = gen::tree(rng, 6);
    const auto f = [k = trial](int x) { return (x * 3 + k) % 5; };
    const auto g = [](int x) { return x * 2; };
    const auto p = [k = trial](int x) { return (x + k) % 3 != 0; };
    const auto nd = [](int x) { return x % 2 ? choice(val(x), fail<int>()) : val(x + 10); };
    const auto vs = oracle::leaves(t);
    CAPTURE(tree_to_json(t).dump());

    CHECK(values(t) == vs);
    CHECK(satisfy(t, p) == std::all_of(vs.begin(), vs.end(), p));
    CHECK(satisfy(map_det(f, t), p) == satisfy(t, [&](int x) { return p(f(x)); }));
    CHECK(always(map_det(p, t)) == satisfy(t, p));
    CHECK(map_det(f, map_det(g, t)) == map_det([&](int x) { return f(g(x)); }, t));
    CHECK(map_det(f, t).depth() == t.depth());

    IntList mapped;
    for (int x : vs) mapped.push_back(f(x));
    CHECK(values(map_det(f, t)) == mapped);

    IntList bound;
    for (int x : vs)
      for (int y : values(nd(x))) bound.push_back(y);
    CHECK(values(bind_nd(nd, t)) == bound);

    for (int x = 0; x < 5; ++x) {
      const auto w = member(x, t);
      CHECK(w.has_value() == (std::find(vs.begin(), vs.end(), x) != vs.end()));
      if (w) CHECK(check_witness(x, t, *w));
    }
  }
}

TEST_CASE("property: always equals satisfy with identity on boolean trees") {
  std::mt19937_64 rng(gen::kSeed + 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = map_det([](int x) { return x != 0; }, gen::tree(rng, 5, 3));
    CHECK(always(t) == satisfy(t, [](bool b) { return b; }));
  }
}
