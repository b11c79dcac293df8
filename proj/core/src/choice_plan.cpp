#include "ndl/choice_plan.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace ndl {

namespace {

bool valid_address(std::string_view a) {
  return std::all_of(a.begin(), a.end(), [](char c) { return c == 'L' || c == 'R'; });
}

std::vector<std::string> addresses_up_to(std::size_t depth) {
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      out.push_back(out[i] + 'L');
      out.push_back(out[i] + 'R');
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace

ChoicePlan::ChoicePlan(BitTable bits, bool default_bit)
    : bits_(std::make_shared<const BitTable>(std::move(bits))), default_bit_(default_bit) {
  for (const auto& [addr, bit] : *bits_) {
    if (!valid_address(addr)) throw PlanSyntaxError("invalid plan address '" + addr + "'");
  }
}

bool ChoicePlan::choose() const {
  if (log_) log_->record(address_);
  auto it = bits_->find(address_);
  return it == bits_->end() ? default_bit_ : it->second;
}

ChoicePlan ChoicePlan::descend(char step) const {
  ChoicePlan p = *this;
  p.address_.push_back(step);
  return p;
}

ChoicePlan ChoicePlan::with_bit(const std::string& address, bool bit) const {
  if (!valid_address(address)) throw PlanSyntaxError("invalid plan address '" + address + "'");
  BitTable table = *bits_;
  table[address] = bit;
  ChoicePlan p = *this;
  p.bits_ = std::make_shared<const BitTable>(std::move(table));
  return p;
}

ChoicePlan ChoicePlan::traced(std::shared_ptr<ConsultLog> log) const {
  ChoicePlan p = *this;
  p.log_ = std::move(log);
  return p;
}

std::string ChoicePlan::to_literal() const {
  std::string out;
  for (const auto& [addr, bit] : *bits_) {
    out += addr;
    out += bit ? "=1," : "=0,";
  }
  out += default_bit_ ? "default=1" : "default=0";
  return out;
}

ChoicePlan ChoicePlan::parse(std::string_view literal) {
  BitTable table;
  bool default_bit = false;
  bool saw_default = false;
  std::size_t pos = 0;
  while (pos <= literal.size()) {
    std::size_t comma = literal.find(',', pos);
    if (comma == std::string_view::npos) comma = literal.size();
    std::string_view item = literal.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) {
      if (comma == literal.size() && literal.empty()) break;
      throw PlanSyntaxError("empty item in plan literal '" + std::string(literal) + "'");
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq + 2 != item.size())
      throw PlanSyntaxError("plan item '" + std::string(item) + "' is not of the form address=bit");
    const char bit_char = item.back();
    if (bit_char != '0' && bit_char != '1')
      throw PlanSyntaxError("plan bit must be 0 or 1 in '" + std::string(item) + "'");
    const bool bit = bit_char == '1';
    std::string_view key = item.substr(0, eq);
    if (key == "default") {
      if (saw_default) throw PlanSyntaxError("duplicate default in plan literal");
      saw_default = true;
      default_bit = bit;
      continue;
    }
    if (!valid_address(key))
      throw PlanSyntaxError("invalid plan address '" + std::string(key) + "'");
    if (!table.emplace(std::string(key), bit).second)
      throw PlanSyntaxError("duplicate address '" + std::string(key) + "' in plan literal");
  }
  return ChoicePlan(std::move(table), default_bit);
}

std::vector<ChoicePlan> enumerate_plans(PlanBudget budget) {
  if (budget.depth + 1 >= 64)
    throw PlanBudgetError("plan budget depth " + std::to_string(budget.depth) + " is too large");
  const std::size_t count = (std::size_t{1} << (budget.depth + 1)) - 1;
  if (count > kMaxEnumeratedAddresses)
    throw PlanBudgetError("depth " + std::to_string(budget.depth) + " needs " +
                          std::to_string(count) + " addresses; at most " +
                          std::to_string(kMaxEnumeratedAddresses) + " can be enumerated");
  const auto addrs = addresses_up_to(budget.depth);
  std::vector<ChoicePlan> plans;
  plans.reserve(std::size_t{1} << count);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    ChoicePlan::BitTable table;
    for (std::size_t i = 0; i < count; ++i) table.emplace(addrs[i], ((mask >> i) & 1U) != 0);
    plans.emplace_back(std::move(table), false);
  }
  return plans;
}

PlanExploration explore_plans(const std::function<void(const ChoicePlan&)>& probe,
                              PlanBudget budget) {
  PlanExploration result;
  auto log = std::make_shared<ConsultLog>();

  std::vector<ChoicePlan::BitTable> pending{ChoicePlan::BitTable{}};
  // Depth-first, false before true, so the plan order is stable.
  while (!pending.empty()) {
    ChoicePlan::BitTable table = std::move(pending.back());
    pending.pop_back();

    log->clear();
    ChoicePlan plan(table, false);
    probe(plan.traced(log));

    const std::string* open = nullptr;
    for (const auto& addr : log->consulted()) {
      if (addr.size() > budget.depth)
        throw PlanBudgetError("address '" + addr + "' exceeds plan budget depth " +
                              std::to_string(budget.depth));
      result.consulted.insert(addr);
      result.depth_used = std::max(result.depth_used, addr.size());
      if (!open && !table.contains(addr)) open = &addr;
    }
    if (result.consulted.size() > kMaxEnumeratedAddresses)
      throw PlanBudgetError("more than " + std::to_string(kMaxEnumeratedAddresses) +
                            " consulted addresses");

    if (!open) {
      result.plans.push_back(std::move(plan));
      continue;
    }
    ChoicePlan::BitTable with_true = table;
    with_true.emplace(*open, true);
    table.emplace(*open, false);
    pending.push_back(std::move(with_true));
    pending.push_back(std::move(table));
  }
  return result;
}

std::vector<ChoicePlan> sample_plans(std::size_t count, std::uint64_t seed, std::size_t depth) {
  if (depth >= 24) throw PlanBudgetError("sample depth " + std::to_string(depth) + " is too large");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const auto addrs = addresses_up_to(depth);
  std::vector<ChoicePlan> plans;
  plans.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ChoicePlan::BitTable table;
    for (const auto& a : addrs) table.emplace(a, coin(rng));
    plans.emplace_back(std::move(table), coin(rng));
  }
  return plans;
}

}  // namespace ndl
