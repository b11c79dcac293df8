#pragma once

// The example programs in both encodings: value-set trees (suffix _nd) and
// planned choices (suffix _plan), plus their deterministic counterparts.

#include <cstddef>
#include <optional>
#include <vector>

#include "ndl/choice_plan.hpp"
#include "ndl/nat.hpp"
#include "ndl/nd_tree.hpp"

namespace ndl::programs {

using IntList = std::vector<int>;

/// Just(x) or Nothing; Nothing marks a failed top-level application.
template <class A>
using MaybeValue = std::optional<A>;

namespace detail {

template <class A>
std::vector<A> cons(const A& x, const std::vector<A>& xs) {
  std::vector<A> out;
  out.reserve(xs.size() + 1);
  out.push_back(x);
  out.insert(out.end(), xs.begin(), xs.end());
  return out;
}

template <class A>
NDTree<std::vector<A>> ndinsert_from(const A& x, const std::vector<A>& xs, std::size_t i) {
  std::vector<A> rest(xs.begin() + static_cast<std::ptrdiff_t>(i), xs.end());
  if (rest.empty()) return val(std::vector<A>{x});
  const A y = rest.front();
  return choice(val(cons(x, rest)),
                map_det([&y](const std::vector<A>& ys) { return cons(y, ys); },
                        ndinsert_from(x, xs, i + 1)));
}

/// Walks a chain of `count` alternatives: at position k < count-1 the plan
/// picks k when choose() is true and otherwise descends with lchoice().
inline std::size_t select_position(ChoicePlan p, std::size_t count) {
  std::size_t k = 0;
  while (k + 1 < count && !p.choose()) {
    p = p.lchoice();
    ++k;
  }
  return k;
}

/// Right-nested choice chain over leaves 0..count-1.
template <class A, class Leaf>
NDTree<A> chain(std::size_t count, Leaf&& leaf) {
  if (count == 0) return fail<A>();
  NDTree<A> t = leaf(count - 1);
  for (std::size_t k = count - 1; k-- > 0;) t = choice(leaf(k), std::move(t));
  return t;
}

}  // namespace detail

// --- permutations ---------------------------------------------------------

/// All insertions of x into xs: ndinsert x [] = Val [x];
/// ndinsert x (y:ys) = Val (x:y:ys) ?? (y:) $* ndinsert x ys.
template <class A>
NDTree<std::vector<A>> ndinsert_nd(const A& x, const std::vector<A>& xs) {
  return detail::ndinsert_from(x, xs, 0);
}

template <class A>
NDTree<std::vector<A>> perm_nd(const std::vector<A>& xs) {
  NDTree<std::vector<A>> acc = val(std::vector<A>{});
  for (std::size_t i = xs.size(); i-- > 0;) {
    const A& x = xs[i];
    acc = bind_nd([&x](const std::vector<A>& ys) { return ndinsert_nd(x, ys); }, acc);
  }
  return acc;
}

template <class A>
std::vector<A> ndinsert_plan(const ChoicePlan& ch, const A& n, const std::vector<A>& xs) {
  std::vector<A> out;
  out.reserve(xs.size() + 1);
  ChoicePlan at = ch;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (at.choose()) {
      out.push_back(n);
      out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(i), xs.end());
      return out;
    }
    out.push_back(xs[i]);
    at = at.lchoice();
  }
  out.push_back(n);
  return out;
}

/// perm ch (y:ys) = ndinsert (lchoice ch) y (perm (rchoice ch) ys).
template <class A>
std::vector<A> perm_plan(const ChoicePlan& ch, const std::vector<A>& xs) {
  if (xs.empty()) return {};
  const std::vector<A> tail(xs.begin() + 1, xs.end());
  return ndinsert_plan(ch.lchoice(), xs.front(), perm_plan(ch.rchoice(), tail));
}

/// ndins x xs | xs == ys ++ zs = ys ++ [x] ++ zs, with the free ys, zs
/// generated as the |xs|+1 splits of xs.
template <class A>
NDTree<std::vector<A>> ndins_split_nd(const A& x, const std::vector<A>& xs) {
  return detail::chain<std::vector<A>>(xs.size() + 1, [&](std::size_t k) {
    std::vector<A> out(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back(x);
    out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
    return val(std::move(out));
  });
}

template <class A>
std::vector<A> ndins_split_plan(const ChoicePlan& ch, const A& x, const std::vector<A>& xs) {
  const std::size_t k = detail::select_position(ch, xs.size() + 1);
  std::vector<A> out(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
  out.push_back(x);
  out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return out;
}

// --- even / odd ------------------------------------------------------------

/// eo n = Val n ?? Val (S n). N is Nat or std::uint64_t.
template <class N>
NDTree<N> eo_nd(const N& n) {
  return choice(val(n), val(succ(n)));
}

template <class N>
N eo_plan(const ChoicePlan& ch, const N& n) {
  return ch.choose() ? n : succ(n);
}

// --- sorting ---------------------------------------------------------------

/// insert x (y:ys) = if x < y then x:y:ys else y : insert x ys.
IntList insert(int x, const IntList& xs);
IntList sort(const IntList& xs);

// --- partial functions -----------------------------------------------------

/// minND xs@(_ ++ [x] ++ _) | all (x <=) xs = x, with one alternative per
/// element position; non-minimal positions are Fail leaves.
NDTree<int> min_nd(const IntList& xs);
MaybeValue<int> min_plan(const ChoicePlan& ch, const IntList& xs);
/// Deterministic minimum by list traversal. Throws std::invalid_argument on
/// an empty list.
int min_det(const IntList& xs);

/// last xs | ys ++ [x] == xs = x, with (ys, x) generated from the splits of
/// xs; splits failing the condition are Fail leaves.
template <class A>
NDTree<A> last_splits(const std::vector<A>& xs) {
  return detail::chain<A>(xs.size() + 1, [&](std::size_t k) {
    if (k >= xs.size()) return fail<A>();
    std::vector<A> candidate(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
    candidate.push_back(xs[k]);
    return candidate == xs ? val(xs[k]) : fail<A>();
  });
}

template <class A>
MaybeValue<A> last_plan(const ChoicePlan& ch, const std::vector<A>& xs) {
  const std::size_t k = detail::select_position(ch, xs.size() + 1);
  if (k >= xs.size()) return std::nullopt;
  std::vector<A> candidate(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
  candidate.push_back(xs[k]);
  if (candidate != xs) return std::nullopt;
  return xs[k];
}

}  // namespace ndl::programs
