#include "ndl/nat.hpp"

#include <stdexcept>

namespace ndl {

Nat Nat::succ(const Nat& n) { return Nat(std::make_shared<const Nat>(n)); }

Nat Nat::from_int(std::uint64_t n) {
  Nat out;
  for (std::uint64_t i = 0; i < n; ++i) out = succ(out);
  return out;
}

const Nat& Nat::pred() const {
  if (!pred_) throw std::domain_error("Nat::pred: Z has no predecessor");
  return *pred_;
}

std::uint64_t Nat::to_int() const {
  std::uint64_t n = 0;
  for (const Nat* at = this; !at->is_zero(); at = at->pred_.get()) ++n;
  return n;
}

bool operator==(const Nat& a, const Nat& b) {
  const Nat* x = &a;
  const Nat* y = &b;
  while (!x->is_zero() && !y->is_zero()) {
    if (x->pred_ == y->pred_) return true;
    x = x->pred_.get();
    y = y->pred_.get();
  }
  return x->is_zero() && y->is_zero();
}

Nat succ(const Nat& n) { return Nat::succ(n); }
std::uint64_t succ(std::uint64_t n) { return n + 1; }

Nat add(const Nat& x, const Nat& y) {
  if (x.is_zero()) return y;
  return succ(add(x.pred(), y));
}

Nat double_of(const Nat& x) { return add(x, x); }
std::uint64_t double_of(std::uint64_t x) { return x + x; }

bool even(const Nat& x) {
  const Nat* at = &x;
  while (true) {
    if (at->is_zero()) return true;
    if (at->pred().is_zero()) return false;
    at = &at->pred().pred();
  }
}

bool even(std::uint64_t x) { return x % 2 == 0; }

}  // namespace ndl
