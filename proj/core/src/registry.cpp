#include "ndl/registry.hpp"

#include <algorithm>
#include <charconv>

#include "ndl/programs.hpp"

namespace ndl {

namespace {

using nlohmann::json;
namespace pg = programs;

void expect_arity(const Example& ex, Example::Args args) {
  if (args.size() != ex.arity)
    throw ExampleArgumentError("example '" + ex.name + "' expects " + std::to_string(ex.arity) +
                               " argument(s): " + ex.usage);
}

template <class A>
NDTree<json> to_json_tree(const NDTree<A>& t) {
  return map_det([](const A& x) { return json(x); }, t);
}

template <class A>
std::optional<json> to_json_maybe(const std::optional<A>& v) {
  if (!v) return std::nullopt;
  return json(*v);
}

std::vector<Example> build_examples() {
  std::vector<Example> out;

  out.push_back(Example{
      "perm", "<list>", 1,
      [](Example::Args a) { return to_json_tree(pg::perm_nd(parse_int_list(a[0]))); },
      [](const ChoicePlan& p, Example::Args a) -> std::optional<json> {
        return json(pg::perm_plan(p, parse_int_list(a[0])));
      }});
  out.push_back(Example{
      "ndinsert", "<int> <list>", 2,
      [](Example::Args a) {
        return to_json_tree(pg::ndinsert_nd(parse_int(a[0]), parse_int_list(a[1])));
      },
      [](const ChoicePlan& p, Example::Args a) -> std::optional<json> {
        return json(pg::ndinsert_plan(p, parse_int(a[0]), parse_int_list(a[1])));
      }});
  out.push_back(Example{
      "ndins", "<int> <list>", 2,
      [](Example::Args a) {
        return to_json_tree(pg::ndins_split_nd(parse_int(a[0]), parse_int_list(a[1])));
      },
      [](const ChoicePlan& p, Example::Args a) -> std::optional<json> {
        return json(pg::ndins_split_plan(p, parse_int(a[0]), parse_int_list(a[1])));
      }});
  out.push_back(Example{
      "eo", "<nat>", 1,
      [](Example::Args a) { return to_json_tree(pg::eo_nd(parse_natural(a[0]))); },
      [](const ChoicePlan& p, Example::Args a) -> std::optional<json> {
        return json(pg::eo_plan(p, parse_natural(a[0])));
      }});
  out.push_back(Example{
      "double-even", "<nat>", 1,
      [](Example::Args a) {
        const auto even_double = [](std::uint64_t n) { return even(double_of(n)); };
        return to_json_tree(map_det(even_double, pg::eo_nd(parse_natural(a[0]))));
      },
      [](const ChoicePlan& p, Example::Args a) -> std::optional<json> {
        return json(even(double_of(pg::eo_plan(p, parse_natural(a[0])))));
      }});
  out.push_back(Example{
      "sort", "<list>", 1,
      [](Example::Args a) { return to_json_tree(val(pg::sort(parse_int_list(a[0])))); },
      [](const ChoicePlan&, Example::Args a) -> std::optional<json> {
        return json(pg::sort(parse_int_list(a[0])));
      }});
  out.push_back(Example{
      "min", "<list>", 1,
      [](Example::Args a) { return to_json_tree(pg::min_nd(parse_int_list(a[0]))); },
      [](const ChoicePlan& p, Example::Args a) {
        return to_json_maybe(pg::min_plan(p, parse_int_list(a[0])));
      }});
  out.push_back(Example{
      "last", "<list>", 1,
      [](Example::Args a) { return to_json_tree(pg::last_splits(parse_int_list(a[0]))); },
      [](const ChoicePlan& p, Example::Args a) {
        return to_json_maybe(pg::last_plan(p, parse_int_list(a[0])));
      }});

  // Wrap every entry point with the arity check.
  for (auto& ex : out) {
    auto nd = ex.nd;
    auto plan = ex.plan;
    const Example shape{ex.name, ex.usage, ex.arity, {}, {}};
    ex.nd = [nd, shape](Example::Args a) {
      expect_arity(shape, a);
      return nd(a);
    };
    ex.plan = [plan, shape](const ChoicePlan& p, Example::Args a) {
      expect_arity(shape, a);
      return plan(p, a);
    };
  }
  return out;
}

}  // namespace

const std::vector<Example>& examples() {
  static const std::vector<Example> registry = build_examples();
  return registry;
}

const Example& find_example(std::string_view name) {
  const auto& all = examples();
  auto it = std::find_if(all.begin(), all.end(), [&](const Example& e) { return e.name == name; });
  if (it == all.end()) throw UnknownExampleError("unknown example '" + std::string(name) + "'");
  return *it;
}

std::vector<int> parse_int_list(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_array())
    throw ExampleArgumentError("expected a list like [1,2,3], got '" + std::string(text) + "'");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw ExampleArgumentError("list elements must be integers in '" + std::string(text) + "'");
    out.push_back(e.get<int>());
  }
  return out;
}

std::uint64_t parse_natural(std::string_view text) {
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ExampleArgumentError("expected a natural number, got '" + std::string(text) + "'");
  return n;
}

int parse_int(std::string_view text) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ExampleArgumentError("expected an integer, got '" + std::string(text) + "'");
  return n;
}

}  // namespace ndl
