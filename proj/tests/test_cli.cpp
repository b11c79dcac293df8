#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "ndl/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ndl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kSmallLaws{"--tree-depth", "3", "--random-trials", "20",
                                          "--function-pairs", "4", "--list-length", "4",
                                          "--sort-length", "5", "--max-natural", "30"};

std::vector<std::string> laws_args(std::vector<std::string> extra) {
  std::vector<std::string> args{"laws"};
  args.insert(args.end(), kSmallLaws.begin(), kSmallLaws.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

TEST_CASE("values prints every result of an example") {
  const auto r = run({"values", "perm", "[1,2,3]"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 6);
  CHECK(r.out.find("[3,2,1]") != std::string::npos);

  const auto j = run({"values", "perm", "[1,2]", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["values"].size() == 2);

  const auto plan = run({"values", "eo", "4", "--encoding", "plan", "--plan", "=1"});
  CHECK(plan.code == 0);
  CHECK(plan.out.find('4') != std::string::npos);
}

TEST_CASE("values usage errors exit with 2") {
  CHECK(run({"values", "eo", "4", "--plan", "=1"}).code == 2);
  CHECK(run({"values", "nosuch", "1"}).code == 2);
  CHECK(run({"values", "perm", "[1,x]"}).code == 2);
  CHECK(run({"values", "perm"}).code == 2);
  CHECK(run({"values", "perm", "[1]", "--bogus"}).code == 2);
  CHECK(run({"values", "eo", "1", "--encoding", "plan", "--plan", "Q=1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("expect-values turns an empty result into exit 1") {
  CHECK(run({"values", "min", "[]", "--expect-values"}).code == 1);
  CHECK(run({"values", "min", "[]"}).code == 0);
  CHECK(run({"values", "min", "[2,1]", "--expect-values"}).code == 0);
  CHECK(run({"eval", "lists.core", "tail Nil", "--expect-values"}).code == 1);
}

TEST_CASE("eval runs the bundled programs") {
  const auto r = run({"eval", "peano.core", "double (0 ? 1)", "--semantics", "runtime", "--strategy",
                      "lazy"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n1\n1\n2\nfailed=0 fuel_exhausted=0\n");

  const auto all = run({"eval", "peano.core", "double (0 ? 1)", "--all-modes"});
  CHECK(all.code == 0);
  CHECK(all.out.find("all modes agree: no") != std::string::npos);

  const auto j = run({"eval", "lists.core", "head (Cons 0 (tail Nil))", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["values"] == nlohmann::json::array({"0"}));

  CHECK(run({"eval", "peano.core", "double"}).code == 2);
  CHECK(run({"eval", "/no/such/file.core", "coin"}).code == 2);
  CHECK(run({"eval", "peano.core", "coin", "--semantics", "quantum"}).code == 2);
}

TEST_CASE("laws subcommand") {
  const auto one = run(laws_args({"--filter", "sortPerm"}));
  CHECK(one.code == 0);
  CHECK(one.out.rfind("PASS sortPerm", 0) == 0);

  CHECK(run(laws_args({"--filter", "nosuch"})).code == 2);
  CHECK(run(laws_args({"--mutant", "bogus"})).code == 2);

  const auto caught = run(laws_args({"--filter", "sortPerm", "--mutant", "off-by-one-insert"}));
  CHECK(caught.code == 1);
  CHECK(caught.out.find("FAIL sortPerm") != std::string::npos);

  const auto list = run({"laws", "--list"});
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 18);
}

TEST_CASE("law json is byte-identical across runs without timing") {
  const auto args = laws_args({"--filter", "sortPerm", "even-double", "last-det", "--format", "json",
                               "--no-timing"});
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["passed"] == true);
  CHECK(j["laws"].size() == 3);
  CHECK(j["bounds"]["list_length"] == 4);
}

TEST_CASE("plans lists explored tables") {
  const auto r = run({"plans", "perm", "[1,2,3]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("plans=6") != std::string::npos);
  const auto full = run({"plans", "--depth", "1"});
  CHECK(full.code == 0);
  CHECK(run({"plans", "--depth", "9"}).code == 2);
}
