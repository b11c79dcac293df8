#include "ndl/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndl/choice_plan.hpp"
#include "ndl/core_eval.hpp"
#include "ndl/core_parser.hpp"
#include "ndl/corpus.hpp"
#include "ndl/laws.hpp"
#include "ndl/nd_json.hpp"
#include "ndl/registry.hpp"

namespace ndl::cli {

namespace {

using nlohmann::json;

// Raised for invalid flag combinations and inputs found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValuesOptions {
  std::string example;
  std::vector<std::string> args;
  std::string encoding = "nd";
  std::string plan;
  std::size_t depth = 20;
  std::string format = "text";
  bool expect_values = false;
};

struct EvalOptions {
  std::string program;
  std::string expr;
  std::string semantics = "calltime";
  std::string strategy = "lazy";
  std::uint64_t fuel = core::kDefaultFuel;
  bool all_modes = false;
  std::string format = "text";
  bool expect_values = false;
};

struct LawsOptions {
  std::vector<std::string> filter;
  std::string format = "text";
  std::string mutant = "none";
  bool no_timing = false;
  bool list = false;
  laws::LawBounds bounds;
};

struct PlansOptions {
  std::vector<std::string> target;  // example name and its arguments, or empty
  std::size_t depth = 1;
  bool depth_given = false;
  std::string format = "text";
};

std::vector<std::string> sorted_dumps(const std::vector<json>& vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(v.dump());
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_values(const ValuesOptions& o, std::ostream& out) {
  if (o.encoding != "plan" && !o.plan.empty())
    throw UsageError("--plan requires --encoding plan");
  const Example& ex = find_example(o.example);
  const Example::Args args(o.args);

  std::size_t produced = 0;
  if (o.encoding == "nd") {
    const NDTree<json> t = ex.nd(args);
    const auto vs = values(t);
    produced = vs.size();
    if (o.format == "json") {
      out << json{{"example", o.example}, {"args", o.args}, {"encoding", "nd"},
                  {"tree", tree_to_json(t)}, {"values", vs}}
                 .dump()
          << "\n";
    } else {
      for (const auto& s : sorted_dumps(vs)) out << s << "\n";
    }
  } else if (!o.plan.empty()) {
    const ChoicePlan plan = ChoicePlan::parse(o.plan);
    const auto r = ex.plan(plan, args);
    produced = r ? 1 : 0;
    if (o.format == "json") {
      out << json{{"example", o.example}, {"args", o.args}, {"encoding", "plan"},
                  {"plan", plan.to_literal()}, {"result", r ? *r : json(nullptr)}}
                 .dump()
          << "\n";
    } else {
      out << (r ? r->dump() : std::string("nothing")) << "\n";
    }
  } else {
    // Validate the arguments once before exploring.
    ex.plan(ChoicePlan{}, args);
    const PlanExploration e =
        explore_plans([&](const ChoicePlan& p) { ex.plan(p, args); }, PlanBudget{o.depth});
    std::set<std::string> distinct;
    std::vector<json> results;
    std::size_t nothing = 0;
    for (const auto& p : e.plans) {
      if (auto r = ex.plan(p, args)) {
        if (distinct.insert(r->dump()).second) results.push_back(*r);
      } else {
        ++nothing;
      }
    }
    produced = results.size();
    if (o.format == "json") {
      out << json{{"example", o.example}, {"args", o.args}, {"encoding", "plan"},
                  {"depth_used", e.depth_used}, {"plans", e.plans.size()},
                  {"nothing", nothing}, {"values", sorted_dumps(results)}}
                 .dump()
          << "\n";
    } else {
      for (const auto& s : distinct) out << s << "\n";
      out << "depth=" << e.depth_used << " plans=" << e.plans.size() << "\n";
    }
  }
  return o.expect_values && produced == 0 ? kFailure : kOk;
}

std::string read_program_text(const std::string& path) {
  std::ifstream in(path);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  // Fall back to the bundled copies so the examples work from any directory.
  const std::string name = std::filesystem::path(path).filename().string();
  if (name == "peano.core") return std::string(core::peano_source());
  if (name == "lists.core") return std::string(core::lists_source());
  throw UsageError("cannot read program '" + path + "'");
}

core::Semantics parse_semantics(const std::string& s) {
  return s == "runtime" ? core::Semantics::RunTime : core::Semantics::CallTime;
}
core::Strategy parse_strategy(const std::string& s) {
  return s == "eager" ? core::Strategy::Eager : core::Strategy::Lazy;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  if (o.fuel == 0) throw UsageError("--fuel must be positive");
  const std::string text = read_program_text(o.program);
  core::Program prog;
  try {
    prog = core::parse_program(text);
  } catch (const core::ParseError& e) {
    throw UsageError(o.program + ":" + e.what());
  }
  core::ExprPtr expr;
  try {
    expr = core::parse_expression(prog, o.expr);
  } catch (const core::ParseError& e) {
    throw UsageError("<expr>:" + std::string(e.what()));
  }

  if (o.all_modes) {
    const auto r = core::compare_semantics(prog, expr, o.fuel);
    if (o.format == "json")
      out << r.to_json().dump() << "\n";
    else
      out << r.to_text();
    const bool any = !r.runtime_eager.values.empty() || !r.runtime_lazy.values.empty() ||
                     !r.calltime_eager.values.empty() || !r.calltime_lazy.values.empty();
    return o.expect_values && !any ? kFailure : kOk;
  }

  const core::EvalConfig cfg{parse_semantics(o.semantics), parse_strategy(o.strategy), o.fuel};
  const auto rs = core::eval(prog, expr, cfg);
  if (o.format == "json") {
    json j = rs.to_json();
    j["semantics"] = o.semantics;
    j["strategy"] = o.strategy;
    j["fuel"] = o.fuel;
    out << j.dump() << "\n";
  } else {
    out << rs.to_text();
  }
  return o.expect_values && rs.values.empty() ? kFailure : kOk;
}

int cmd_laws(const LawsOptions& o, std::ostream& out) {
  const laws::LawSuite suite(o.bounds, laws::parse_mutant(o.mutant));
  if (o.list) {
    for (const auto& n : suite.names()) out << n << "\n";
    return kOk;
  }
  std::vector<std::string> selected = o.filter.empty() ? suite.names() : o.filter;
  for (const auto& n : selected)
    if (!suite.has_law(n)) throw UsageError("unknown law '" + n + "'");
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  std::vector<laws::LawReport> reports;
  for (const auto& n : selected) reports.push_back(suite.run_law(n));
  const bool all_passed =
      std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });

  if (o.format == "json") {
    out << json{{"bounds", o.bounds.to_json()},
                {"mutant", o.mutant},
                {"passed", all_passed},
                {"laws", laws::reports_to_json(reports, !o.no_timing)}}
               .dump(2)
        << "\n";
  } else {
    std::size_t passed = 0;
    double total = 0;
    for (const auto& r : reports) {
      passed += r.passed ? 1 : 0;
      total += r.millis;
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases;
      if (!o.no_timing) out << " millis=" << static_cast<long long>(r.millis);
      if (!r.passed) out << " counterexample=" << r.counterexample.dump();
      out << "\n";
    }
    out << passed << "/" << reports.size() << " laws passed";
    if (!o.no_timing) out << " in " << static_cast<long long>(total) << " ms";
    out << "\n";
  }
  return all_passed ? kOk : kFailure;
}

int cmd_plans(const PlansOptions& o, std::ostream& out) {
  if (o.target.empty()) {
    const auto plans = enumerate_plans(PlanBudget{o.depth});
    if (o.format == "json") {
      json arr = json::array();
      for (const auto& p : plans) arr.push_back(p.to_literal());
      out << json{{"depth", o.depth}, {"plans", arr}}.dump() << "\n";
    } else {
      for (const auto& p : plans) out << p.to_literal() << "\n";
    }
    return kOk;
  }
  const Example& ex = find_example(o.target.front());
  const std::vector<std::string> args(o.target.begin() + 1, o.target.end());
  const Example::Args a(args);
  ex.plan(ChoicePlan{}, a);
  const PlanExploration e = explore_plans([&](const ChoicePlan& p) { ex.plan(p, a); },
                                          PlanBudget{o.depth_given ? o.depth : 20});
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& p : e.plans) {
      const auto r = ex.plan(p, a);
      arr.push_back(json{{"plan", p.to_literal()}, {"result", r ? *r : json(nullptr)}});
    }
    out << json{{"example", ex.name}, {"args", args}, {"depth_used", e.depth_used},
                {"plans", arr}}
               .dump()
        << "\n";
  } else {
    for (const auto& p : e.plans) {
      const auto r = ex.plan(p, a);
      out << p.to_literal() << "\t" << (r ? r->dump() : std::string("nothing")) << "\n";
    }
    out << "depth=" << e.depth_used << " plans=" << e.plans.size() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-deterministic computation in two encodings, a core evaluator and a law suite",
               "ndl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  const std::vector<std::string> formats{"text", "json"};

  ValuesOptions vo;
  auto* values_cmd = app.add_subcommand("values", "Print the values of an example program");
  values_cmd->add_option("example", vo.example, "Example name")
      ->required()
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& e : examples()) names.push_back(e.name);
        return names;
      }()));
  // Example arguments are taken from the unmatched tokens: CLI11 would
  // otherwise split "[1,2,3]" into three values.
  values_cmd->allow_extras();
  values_cmd->footer("Arguments after the example name are passed to it, e.g. [1,2,3] or 4.");
  values_cmd->add_option("--encoding", vo.encoding, "nd or plan")
      ->check(CLI::IsMember({"nd", "plan"}));
  values_cmd->add_option("--plan", vo.plan, "Plan literal, e.g. \"=1,L=0,default=0\"");
  values_cmd->add_option("--depth", vo.depth, "Longest plan address to explore");
  values_cmd->add_option("--format", vo.format)->check(CLI::IsMember(formats));
  values_cmd->add_flag("--expect-values", vo.expect_values, "Exit 1 when nothing is produced");

  EvalOptions eo;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a core-language expression");
  eval_cmd->add_option("program", eo.program, "Program file")->required();
  eval_cmd->add_option("expr", eo.expr, "Closed expression")->required();
  eval_cmd->add_option("--semantics", eo.semantics, "calltime or runtime")
      ->check(CLI::IsMember({"calltime", "runtime"}));
  eval_cmd->add_option("--strategy", eo.strategy, "lazy or eager")
      ->check(CLI::IsMember({"lazy", "eager"}));
  eval_cmd->add_option("--fuel", eo.fuel, "Steps allowed per branch");
  eval_cmd->add_flag("--all-modes", eo.all_modes, "Compare all four mode combinations");
  eval_cmd->add_option("--format", eo.format)->check(CLI::IsMember(formats));
  eval_cmd->add_flag("--expect-values", eo.expect_values, "Exit 1 when no value is produced");

  LawsOptions lo;
  auto* laws_cmd = app.add_subcommand("laws", "Run the law suite");
  laws_cmd->add_option("--filter", lo.filter, "Law names to run")->expected(1, -1);
  laws_cmd->add_option("--format", lo.format)->check(CLI::IsMember(formats));
  laws_cmd->add_option("--mutant", lo.mutant, "Run against a deliberately broken variant");
  laws_cmd->add_flag("--no-timing", lo.no_timing, "Report zero timings for byte-stable output");
  laws_cmd->add_flag("--list", lo.list, "List law names and exit");
  laws_cmd->add_option("--seed", lo.bounds.seed);
  laws_cmd->add_option("--tree-depth", lo.bounds.exhaustive_tree_depth);
  laws_cmd->add_option("--random-tree-depth", lo.bounds.random_tree_depth);
  laws_cmd->add_option("--random-trials", lo.bounds.random_trials);
  laws_cmd->add_option("--function-pairs", lo.bounds.function_pairs)->check(CLI::PositiveNumber);
  laws_cmd->add_option("--list-length", lo.bounds.list_length)->check(CLI::Range(0, 6));
  laws_cmd->add_option("--sort-length", lo.bounds.sort_random_length)->check(CLI::Range(0, 9));
  laws_cmd->add_option("--sort-exhaustive-length", lo.bounds.sort_exhaustive_length)
      ->check(CLI::Range(0, 8));
  laws_cmd->add_option("--last-length", lo.bounds.last_length)->check(CLI::Range(0, 5));
  laws_cmd->add_option("--max-natural", lo.bounds.max_natural);

  PlansOptions po;
  auto* plans_cmd = app.add_subcommand("plans", "Print enumerated plan tables");
  plans_cmd->allow_extras();
  plans_cmd->footer("Give an example name and its arguments to explore that example's plans.");
  plans_cmd->add_option("--depth", po.depth, "Longest address to assign");
  plans_cmd->add_option("--format", po.format)->check(CLI::IsMember(formats));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  po.depth_given = plans_cmd->count("--depth") > 0;
  const auto extras = [&err](const CLI::App* cmd, std::vector<std::string>& into) {
    into = cmd->remaining();
    for (const auto& a : into) {
      if (a.size() > 1 && a[0] == '-' && !std::isdigit(static_cast<unsigned char>(a[1]))) {
        err << "error: unknown option '" << a << "'\n";
        return false;
      }
    }
    return true;
  };
  if (*values_cmd && !extras(values_cmd, vo.args)) return kUsage;
  if (*plans_cmd && !extras(plans_cmd, po.target)) return kUsage;

  try {
    if (*values_cmd) return cmd_values(vo, out);
    if (*eval_cmd) return cmd_eval(eo, out);
    if (*laws_cmd) return cmd_laws(lo, out);
    if (*plans_cmd) return cmd_plans(po, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ExampleArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PlanSyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PlanBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const core::EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ndl::cli
