#pragma once

// Executable checks of the lemmas and theorems about both encodings and the
// core evaluator. Each law enumerates a bounded input domain (exhaustively,
// or by fixed-seed sampling where the domain is too large) and reports the
// smallest failing input it can find.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ndl::laws {

/// Deliberately broken building blocks. Each should make some law fail.
enum class Mutant {
  None,
  DropRightMap,           // map_det forgets right subtrees
  InconsistentChoiceIds,  // copies of one choice fork independently
  EagerOnly,              // lazy strategy behaves eagerly
  OffByOneInsert,         // insert x (y:ys) drops y when x < y
  UnsharedDouble,         // call-time arguments are copied, not shared
};

const char* to_string(Mutant m);
/// "none", "drop-right-map", ... Throws std::invalid_argument.
Mutant parse_mutant(std::string_view name);
/// Every mutant except None.
const std::vector<Mutant>& all_mutants();

struct LawBounds {
  std::size_t exhaustive_tree_depth = 5;  // Val-only shapes; mixed shapes go 2 levels less
  std::size_t random_tree_depth = 8;
  std::size_t random_trials = 500;
  std::size_t function_pairs = 32;
  std::size_t list_length = 6;
  std::size_t sort_random_length = 7;
  std::size_t sort_exhaustive_length = 5;
  std::size_t last_length = 4;
  std::uint64_t max_natural = 1000;
  std::uint64_t seed = 20240601;

  nlohmann::json to_json() const;
};

struct LawReport {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  nlohmann::json counterexample;  // null when passed
  double millis = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json(bool timing = true) const;
};

class UnknownLawError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class LawSuite {
 public:
  explicit LawSuite(LawBounds bounds = {}, Mutant mutant = Mutant::None);
  ~LawSuite();
  LawSuite(const LawSuite&) = delete;
  LawSuite& operator=(const LawSuite&) = delete;

  /// Registered law names, sorted.
  std::vector<std::string> names() const;
  bool has_law(std::string_view name) const;

  LawReport run_law(std::string_view name) const;
  /// Reports in name order.
  std::vector<LawReport> run_all() const;

  /// Re-checks one recorded input. True when the law holds on it.
  bool replay(std::string_view name, const nlohmann::json& counterexample) const;

  const LawBounds& bounds() const;
  Mutant mutant() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

nlohmann::json reports_to_json(const std::vector<LawReport>& reports, bool timing = true);

}  // namespace ndl::laws
