#pragma once

// Value-set encoding of non-determinism: a finite binary tree whose Val
// leaves are the possible results of a computation, Choice nodes are the
// points where a computation could go either way, and Fail leaves are
// branches that produced nothing.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace ndl {

template <class A>
class NDTree;

template <class A>
struct NDVal {
  A value;
};

template <class A>
struct NDChoice {
  NDTree<A> left;
  NDTree<A> right;
};

struct NDFail {};

/// Immutable choice tree. Copies share structure; every combinator returns
/// a fresh tree and never mutates its inputs.
template <class A>
class NDTree {
 public:
  using value_type = A;
  using Node = std::variant<NDVal<A>, NDChoice<A>, NDFail>;

  /// A default-constructed tree is the Fail leaf.
  NDTree() : node_(fail_node()) {}

  static NDTree make_val(A x) {
    return NDTree(std::make_shared<const Node>(NDVal<A>{std::move(x)}));
  }
  static NDTree make_choice(NDTree l, NDTree r) {
    return NDTree(std::make_shared<const Node>(NDChoice<A>{std::move(l), std::move(r)}));
  }
  static NDTree make_fail() { return NDTree(fail_node()); }

  bool is_val() const { return std::holds_alternative<NDVal<A>>(*node_); }
  bool is_choice() const { return std::holds_alternative<NDChoice<A>>(*node_); }
  bool is_fail() const { return std::holds_alternative<NDFail>(*node_); }

  const A& value() const { return std::get<NDVal<A>>(*node_).value; }
  const NDTree& left() const { return std::get<NDChoice<A>>(*node_).left; }
  const NDTree& right() const { return std::get<NDChoice<A>>(*node_).right; }

  const Node& node() const { return *node_; }

  /// Pattern match over the three node kinds.
  template <class OnVal, class OnChoice, class OnFail>
  decltype(auto) visit(OnVal&& on_val, OnChoice&& on_choice, OnFail&& on_fail) const {
    if (auto* v = std::get_if<NDVal<A>>(node_.get())) return on_val(v->value);
    if (auto* c = std::get_if<NDChoice<A>>(node_.get())) return on_choice(c->left, c->right);
    return on_fail();
  }

  std::size_t depth() const {
    if (!is_choice()) return 0;
    return 1 + std::max(left().depth(), right().depth());
  }

  std::size_t size() const {
    if (!is_choice()) return 1;
    return 1 + left().size() + right().size();
  }

  /// Structural equality: same shape, same failures, equal payloads.
  friend bool operator==(const NDTree& a, const NDTree& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->index() != b.node_->index()) return false;
    if (a.is_val()) return a.value() == b.value();
    if (a.is_fail()) return true;
    return a.left() == b.left() && a.right() == b.right();
  }

 private:
  explicit NDTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static const std::shared_ptr<const Node>& fail_node() {
    static const auto leaf = std::make_shared<const Node>(NDFail{});
    return leaf;
  }

  std::shared_ptr<const Node> node_;
};

template <class A>
NDTree<std::decay_t<A>> val(A&& x) {
  return NDTree<std::decay_t<A>>::make_val(std::forward<A>(x));
}

template <class A>
NDTree<A> choice(NDTree<A> l, NDTree<A> r) {
  return NDTree<A>::make_choice(std::move(l), std::move(r));
}

template <class A>
NDTree<A> fail() {
  return NDTree<A>::make_fail();
}

/// Applies a deterministic function to every value, keeping the shape.
template <class F, class A, class B = std::decay_t<std::invoke_result_t<F&, const A&>>>
NDTree<B> map_det(F&& f, const NDTree<A>& t) {
  return t.visit([&](const A& x) { return NDTree<B>::make_val(std::invoke(f, x)); },
                 [&](const NDTree<A>& l, const NDTree<A>& r) {
                   return NDTree<B>::make_choice(map_det(f, l), map_det(f, r));
                 },
                 [] { return NDTree<B>::make_fail(); });
}

/// Replaces every Val(x) leaf by the tree f(x).
template <class F, class A,
          class B = typename std::decay_t<std::invoke_result_t<F&, const A&>>::value_type>
NDTree<B> bind_nd(F&& f, const NDTree<A>& t) {
  return t.visit([&](const A& x) -> NDTree<B> { return std::invoke(f, x); },
                 [&](const NDTree<A>& l, const NDTree<A>& r) {
                   return NDTree<B>::make_choice(bind_nd(f, l), bind_nd(f, r));
                 },
                 [] { return NDTree<B>::make_fail(); });
}

/// True iff p holds for every value; vacuously true on trees without values.
template <class A, class P>
bool satisfy(const NDTree<A>& t, P&& p) {
  return t.visit([&](const A& x) { return static_cast<bool>(std::invoke(p, x)); },
                 [&](const NDTree<A>& l, const NDTree<A>& r) {
                   return satisfy(l, p) && satisfy(r, p);
                 },
                 [] { return true; });
}

inline bool always(const NDTree<bool>& t) {
  return t.visit([](bool b) { return b; },
                 [](const NDTree<bool>& l, const NDTree<bool>& r) { return always(l) && always(r); },
                 [] { return true; });
}

template <class A>
using ValueList = std::vector<A>;

namespace detail {
template <class A>
void collect_values(const NDTree<A>& t, ValueList<A>& out) {
  t.visit([&](const A& x) { out.push_back(x); },
          [&](const NDTree<A>& l, const NDTree<A>& r) {
            collect_values(l, out);
            collect_values(r, out);
          },
          [] {});
}
}  // namespace detail

/// Val payloads in left-to-right depth-first order.
template <class A>
ValueList<A> values(const NDTree<A>& t) {
  ValueList<A> out;
  detail::collect_values(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Membership witnesses

enum class Step : std::uint8_t { Left, Right };

/// A root-to-leaf path certifying that a value occurs in a tree. The empty
/// path certifies x in Val(x).
struct Witness {
  std::vector<Step> steps;

  friend bool operator==(const Witness&, const Witness&) = default;

  std::string to_string() const {
    std::string s;
    s.reserve(steps.size());
    for (Step st : steps) s.push_back(st == Step::Left ? 'L' : 'R');
    return s;
  }

  static Witness parse(std::string_view text) {
    Witness w;
    w.steps.reserve(text.size());
    for (char c : text) {
      if (c == 'L')
        w.steps.push_back(Step::Left);
      else if (c == 'R')
        w.steps.push_back(Step::Right);
      else
        throw std::invalid_argument("witness may only contain 'L' and 'R': " + std::string(text));
    }
    return w;
  }
};

inline Witness concat(const Witness& a, const Witness& b) {
  Witness w;
  w.steps.reserve(a.steps.size() + b.steps.size());
  w.steps = a.steps;
  w.steps.insert(w.steps.end(), b.steps.begin(), b.steps.end());
  return w;
}

namespace detail {
template <class A>
bool find_leftmost(const A& x, const NDTree<A>& t, std::vector<Step>& path) {
  return t.visit([&](const A& y) { return y == x; },
                 [&](const NDTree<A>& l, const NDTree<A>& r) {
                   path.push_back(Step::Left);
                   if (find_leftmost(x, l, path)) return true;
                   path.back() = Step::Right;
                   if (find_leftmost(x, r, path)) return true;
                   path.pop_back();
                   return false;
                 },
                 [] { return false; });
}
}  // namespace detail

/// Leftmost witness for x in t, if x is one of t's values.
template <class A>
std::optional<Witness> member(const A& x, const NDTree<A>& t) {
  Witness w;
  w.steps.reserve(16);
  if (detail::find_leftmost(x, t, w.steps)) return w;
  return std::nullopt;
}

template <class A>
bool check_witness(const A& x, const NDTree<A>& t, const Witness& w) {
  const NDTree<A>* at = &t;
  for (Step s : w.steps) {
    if (!at->is_choice()) return false;
    at = s == Step::Left ? &at->left() : &at->right();
  }
  return at->is_val() && at->value() == x;
}

/// Transports a witness for x in t to one for f(x) in map_det(f, t). map_det
/// keeps the shape, so the path is unchanged.
template <class F, class A>
Witness map_witness(F&& /*f*/, const A& x, const NDTree<A>& t, const Witness& w) {
  if (!check_witness(x, t, w))
    throw std::invalid_argument("map_witness: witness " + w.to_string() + " is not valid");
  return w;
}

/// Given w_outer locating x in t and w_inner locating f_det(x) in f_nd(x),
/// returns the witness for f_det(x) in bind_nd(f_nd, t).
template <class FDet, class FNd, class A>
Witness bind_witness(const A& x, const NDTree<A>& t, FDet&& f_det, FNd&& f_nd,
                     const Witness& w_outer, const Witness& w_inner) {
  if (!check_witness(x, t, w_outer))
    throw std::invalid_argument("bind_witness: outer witness " + w_outer.to_string() +
                                " is not valid");
  if (!check_witness(std::invoke(f_det, x), std::invoke(f_nd, x), w_inner))
    throw std::invalid_argument("bind_witness: inner witness " + w_inner.to_string() +
                                " is not valid");
  return concat(w_outer, w_inner);
}

/// Selects between two witnesses into the same tree by a boolean; the
/// result certifies (c ? x : y).
inline const Witness& if_intro(bool c, const Witness& wx, const Witness& wy) {
  return c ? wx : wy;
}

}  // namespace ndl
