#pragma once

// Name -> program registry for the command-line front end. Arguments arrive
// as strings ("[1,2,3]" for lists, decimal for naturals) and results leave as
// JSON values so every example can be printed uniformly.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ndl/choice_plan.hpp"
#include "ndl/nd_tree.hpp"

namespace ndl {

class ExampleArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownExampleError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Example {
  using Args = std::span<const std::string>;

  std::string name;
  std::string usage;  // argument synopsis, e.g. "<list>"
  std::size_t arity = 0;
  /// Set-of-values encoding.
  std::function<NDTree<nlohmann::json>(Args)> nd;
  /// Planned-choice encoding; nullopt is a failed (Nothing) outcome.
  std::function<std::optional<nlohmann::json>(const ChoicePlan&, Args)> plan;
};

/// Registered examples: perm, ndinsert, ndins, eo, double-even, sort, min, last.
const std::vector<Example>& examples();
const Example& find_example(std::string_view name);

/// "[1,2,3]" -> {1,2,3}. Throws ExampleArgumentError on malformed input.
std::vector<int> parse_int_list(std::string_view text);
/// Decimal natural number. Throws ExampleArgumentError on malformed input.
std::uint64_t parse_natural(std::string_view text);
int parse_int(std::string_view text);

}  // namespace ndl
