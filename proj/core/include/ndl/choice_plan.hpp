#pragma once

// Planned-choice encoding of non-determinism. A ChoicePlan is an oracle
// that answers "left or right?" at every would-be choice. Plans are
// address-indexed bit tables: each plan sits at an address (a string over
// {L, R}); choose() reads the bit at that address and lchoice()/rchoice()
// descend to disjoint sub-addresses.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndl {

/// Addresses consulted through a traced plan, in consultation order.
class ConsultLog {
 public:
  void record(const std::string& address) { consulted_.push_back(address); }
  const std::vector<std::string>& consulted() const { return consulted_; }
  void clear() { consulted_.clear(); }

 private:
  std::vector<std::string> consulted_;
};

class PlanSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PlanBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChoicePlan {
 public:
  using BitTable = std::map<std::string, bool>;

  ChoicePlan() : ChoicePlan(BitTable{}, false) {}
  explicit ChoicePlan(BitTable bits, bool default_bit = false);

  /// The bit at the current address, or the default bit if unset.
  bool choose() const;
  ChoicePlan lchoice() const { return descend('L'); }
  ChoicePlan rchoice() const { return descend('R'); }

  /// Copy of this plan with one table entry overwritten (absolute address).
  ChoicePlan with_bit(const std::string& address, bool bit) const;

  const std::string& address() const { return address_; }
  bool default_bit() const { return default_bit_; }
  const BitTable& bits() const { return *bits_; }

  /// Copy of this plan that reports every consulted address to `log`.
  ChoicePlan traced(std::shared_ptr<ConsultLog> log) const;

  /// Literal form "=1,L=0,RL=1,default=0"; the empty address is spelled "=".
  std::string to_literal() const;
  static ChoicePlan parse(std::string_view literal);

  /// Equal tables, default bits and positions.
  friend bool operator==(const ChoicePlan& a, const ChoicePlan& b) {
    return a.default_bit_ == b.default_bit_ && a.address_ == b.address_ && *a.bits_ == *b.bits_;
  }

 private:
  ChoicePlan descend(char step) const;

  std::shared_ptr<const BitTable> bits_;
  bool default_bit_ = false;
  std::string address_;
  std::shared_ptr<ConsultLog> log_;
};

/// Upper bound on the length of addresses an enumeration may assign.
struct PlanBudget {
  std::size_t depth = 0;
};

/// Maximum number of distinct addresses any enumeration will assign.
inline constexpr std::size_t kMaxEnumeratedAddresses = 20;

/// Every total assignment over all addresses of length <= depth (2^k plans
/// for k addresses). Throws PlanBudgetError when k exceeds
/// kMaxEnumeratedAddresses.
std::vector<ChoicePlan> enumerate_plans(PlanBudget budget);

struct PlanExploration {
  std::vector<ChoicePlan> plans;
  std::set<std::string> consulted;
  std::size_t depth_used = 0;
};

/// Enumerates plans for one plan-indexed computation by closing over the
/// addresses it actually consults: the probe is re-run under each partial
/// assignment until no unassigned address is consulted. The returned plans
/// reach every behaviour of the probe; each assigns exactly the addresses
/// consulted on its own run. Throws PlanBudgetError if an address longer
/// than budget.depth is consulted or more than kMaxEnumeratedAddresses
/// distinct addresses are seen.
PlanExploration explore_plans(const std::function<void(const ChoicePlan&)>& probe,
                              PlanBudget budget);

/// Fixed-seed random plans with random bits over every address of length
/// <= depth and a random default bit.
std::vector<ChoicePlan> sample_plans(std::size_t count, std::uint64_t seed, std::size_t depth);

}  // namespace ndl
