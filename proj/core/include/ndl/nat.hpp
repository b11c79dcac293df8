#pragma once

#include <cstdint>
#include <memory>
#include <ostream>

namespace ndl {

/// Unary natural number: Z or S of a Nat. Successors share their
/// predecessor chain, so S is O(1).
class Nat {
 public:
  Nat() = default;  // Z

  static Nat zero() { return Nat{}; }
  static Nat succ(const Nat& n);
  static Nat from_int(std::uint64_t n);

  bool is_zero() const { return pred_ == nullptr; }
  /// Predecessor of a successor; Z has none.
  const Nat& pred() const;

  std::uint64_t to_int() const;

  friend bool operator==(const Nat& a, const Nat& b);
  friend std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_int(); }

 private:
  explicit Nat(std::shared_ptr<const Nat> pred) : pred_(std::move(pred)) {}
  std::shared_ptr<const Nat> pred_;
};

Nat succ(const Nat& n);
std::uint64_t succ(std::uint64_t n);

/// Peano addition: Z + y = y; S x + y = S (x + y).
Nat add(const Nat& x, const Nat& y);

Nat double_of(const Nat& x);
std::uint64_t double_of(std::uint64_t x);

/// even Z = True; even (S Z) = False; even (S (S x)) = even x.
bool even(const Nat& x);
bool even(std::uint64_t x);

}  // namespace ndl
