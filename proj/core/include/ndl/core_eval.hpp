#pragma once

// Evaluator for the core language with two choice semantics and two
// strategies.
//
// Choices are never resolved in place. When a choice is needed as an
// argument, the surrounding application is duplicated over it (a pull-tab
// step), so choices travel to the root of the term where the driver forks
// the evaluation. Every choice carries a ChoiceId; a fork records the side
// taken for that id and later copies of the same id follow the record.
//
// RunTime semantics gives every substituted copy of an argument fresh ids,
// so copies choose independently. CallTime semantics shares arguments, and
// ids minted while evaluating shared calls are derived from the call's node
// id, so all copies choose consistently.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ndl/core_syntax.hpp"

namespace ndl::core {

enum class Semantics { RunTime, CallTime };
enum class Strategy { Eager, Lazy };

const char* to_string(Semantics s);
const char* to_string(Strategy s);

inline constexpr std::uint64_t kDefaultFuel = 10'000;

struct EvalConfig {
  Semantics semantics = Semantics::CallTime;
  Strategy strategy = Strategy::Lazy;
  /// Rule applications plus pull-tab steps allowed along each branch.
  std::uint64_t fuel = kDefaultFuel;
};

/// Deliberately broken evaluator variants, used to show that the law suite
/// detects them.
struct EvalFaults {
  bool ignore_choice_ids = false;      // every fork gets a fresh id, so copies choose apart
  bool copy_shared_arguments = false;  // CallTime copies arguments like RunTime
  bool force_eager = false;            // Lazy behaves as Eager
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Choice-rooted normal form: id-labelled choices over ground values,
/// failures and fuel-exhausted branches.
class ChoiceTree {
 public:
  enum class Kind { Value, Choice, Failed, Exhausted };

  static ChoiceTree value(ExprPtr v);
  static ChoiceTree choice(ChoiceId id, ChoiceTree l, ChoiceTree r);
  static ChoiceTree failed();
  static ChoiceTree exhausted();

  Kind kind() const { return node_->kind; }
  const ExprPtr& value() const { return node_->value; }
  ChoiceId id() const { return node_->id; }
  const ChoiceTree& left() const { return node_->kids[0]; }
  const ChoiceTree& right() const { return node_->kids[1]; }

 private:
  struct Node {
    Kind kind;
    ExprPtr value;
    ChoiceId id;
    std::vector<ChoiceTree> kids;
  };
  explicit ChoiceTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Reads a ground expression built from ChoiceExpr, FailExpr and constructor
/// values as a ChoiceTree. Throws std::invalid_argument on anything else.
ChoiceTree choice_tree_of(const ExprPtr& e);

struct ResultSet {
  std::vector<ExprPtr> values;  // multiset, in exploration order
  std::size_t failed = 0;
  std::size_t fuel_exhausted = 0;

  /// Rendered values, sorted; duplicates kept.
  std::vector<std::string> sorted_values() const;
  std::set<std::string> value_set() const;
  /// Sorted values one per line, then "failed=<n> fuel_exhausted=<m>".
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Enumerates consistent selections: an id takes the same side everywhere
/// along one path. Paths reaching Failed or Exhausted are counted, not
/// collected.
ResultSet extract_values(const ChoiceTree& t);

/// f(..., c(a, b), ...) -> c(f(..., a, ...), f(..., b, ...)) for the choice
/// at argument `arg` of a function or constructor application, and
/// let x = c(a, b) in e -> c(let x = a in e, let x = b in e) for arg 0 of a
/// let. Node and choice ids are preserved. Throws std::invalid_argument when
/// the argument is not a choice.
ExprPtr pull_tab(const ExprPtr& app, std::size_t arg);

class Evaluator {
 public:
  Evaluator(const Program& program, EvalConfig config, EvalFaults faults = {});
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  /// Explores every branch of a closed expression.
  ChoiceTree normal_form(const ExprPtr& expr);
  ResultSet eval(const ExprPtr& expr);

 private:
  class Machine;
  std::unique_ptr<Machine> machine_;
};

ResultSet eval(const Program& program, const ExprPtr& expr, const EvalConfig& config,
               const EvalFaults& faults = {});

struct SemanticsReport {
  ResultSet runtime_eager;
  ResultSet runtime_lazy;
  ResultSet calltime_eager;
  ResultSet calltime_lazy;

  /// CallTime value set within RunTime value set, per strategy.
  bool calltime_within_runtime_eager() const;
  bool calltime_within_runtime_lazy() const;
  /// All four value sets equal.
  bool all_agree() const;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

SemanticsReport compare_semantics(const Program& program, const ExprPtr& expr,
                                  std::uint64_t fuel = kDefaultFuel,
                                  const EvalFaults& faults = {});

struct LazyFailureDemo {
  ResultSet lazy;   // Lazy + CallTime
  ResultSet eager;  // Eager + CallTime
};

/// Evaluates head (Cons 0 (tail Nil)) under both strategies. The program
/// must define head, tail, Cons and Nil.
LazyFailureDemo eval_lazy_failure_demo(const Program& program, const EvalFaults& faults = {});

}  // namespace ndl::core
