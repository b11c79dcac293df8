#pragma once

// Reference implementations used by the tests. They are written from the
// definitions directly (brute force, standard algorithms) and share no code
// with the library beyond its data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ndl/core_eval.hpp"
#include "ndl/nd_tree.hpp"

namespace oracle {

using IntList = std::vector<int>;

/// Val payloads left to right, by explicit stack walk.
template <class A>
std::vector<A> leaves(const ndl::NDTree<A>& t) {
  std::vector<A> out;
  std::vector<const ndl::NDTree<A>*> stack{&t};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (n->is_val()) {
      out.push_back(n->value());
    } else if (n->is_choice()) {
      stack.push_back(&n->right());
      stack.push_back(&n->left());
    }
  }
  return out;
}

/// All |xs|! orderings, duplicates kept, via index permutations.
inline std::vector<IntList> permutations(const IntList& xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<IntList> out;
  do {
    IntList p;
    for (auto i : idx) p.push_back(xs[i]);
    out.push_back(std::move(p));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

/// x placed at each of the |xs|+1 positions.
inline std::vector<IntList> insertions(int x, const IntList& xs) {
  std::vector<IntList> out;
  for (std::size_t k = 0; k <= xs.size(); ++k) {
    IntList p = xs;
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(k), x);
    out.push_back(std::move(p));
  }
  return out;
}

inline IntList sorted(IntList xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

template <class T>
std::multiset<T> multiset_of(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

template <class T>
std::set<T> set_of(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

/// Every list of length <= n over [lo, hi], recursively.
inline std::vector<IntList> lists(std::size_t n, int lo, int hi) {
  std::vector<IntList> out{{}};
  std::vector<IntList> layer{{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<IntList> next;
    for (const auto& xs : layer)
      for (int v = lo; v <= hi; ++v) {
        IntList ys = xs;
        ys.push_back(v);
        next.push_back(ys);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace detail {
inline void collect_ids(const ndl::core::ChoiceTree& t, std::set<std::uint64_t>& ids) {
  if (t.kind() != ndl::core::ChoiceTree::Kind::Choice) return;
  ids.insert(t.id().value);
  collect_ids(t.left(), ids);
  collect_ids(t.right(), ids);
}
}  // namespace detail

/// Consistent-selection semantics by brute force: for each of the 2^k
/// assignments to the ids present, follow the tree and collect the value.
/// Returns rendered values as a set.
inline std::set<std::string> assignment_values(const ndl::core::ChoiceTree& t) {
  using ndl::core::ChoiceTree;
  std::set<std::uint64_t> id_set;
  detail::collect_ids(t, id_set);
  const std::vector<std::uint64_t> ids(id_set.begin(), id_set.end());
  std::set<std::string> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    std::map<std::uint64_t, bool> side;
    for (std::size_t i = 0; i < ids.size(); ++i) side[ids[i]] = (mask >> i) & 1;
    const ChoiceTree* at = &t;
    while (at->kind() == ChoiceTree::Kind::Choice) at = side[at->id().value] ? &at->left() : &at->right();
    if (at->kind() == ChoiceTree::Kind::Value) out.insert(ndl::core::show(at->value()));
  }
  return out;
}

/// Every root-to-leaf path of a ChoiceTree, ignoring ids.
inline std::multiset<std::string> path_values(const ndl::core::ChoiceTree& t) {
  using ndl::core::ChoiceTree;
  std::multiset<std::string> out;
  std::vector<const ChoiceTree*> stack{&t};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (n->kind() == ChoiceTree::Kind::Value) out.insert(ndl::core::show(n->value()));
    if (n->kind() == ChoiceTree::Kind::Choice) {
      stack.push_back(&n->left());
      stack.push_back(&n->right());
    }
  }
  return out;
}

}  // namespace oracle
