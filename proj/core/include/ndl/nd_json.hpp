#pragma once

// Text form of choice trees and witnesses: Val as {"val": v}, Choice as
// {"l": ..., "r": ...}, Fail as the string "fail"; a witness is a string
// over {L, R}.

#include <stdexcept>

#include <json.hpp>

#include "ndl/nd_tree.hpp"

namespace ndl {

template <class A>
nlohmann::json tree_to_json(const NDTree<A>& t) {
  return t.visit([](const A& x) { return nlohmann::json{{"val", x}}; },
                 [](const NDTree<A>& l, const NDTree<A>& r) {
                   return nlohmann::json{{"l", tree_to_json(l)}, {"r", tree_to_json(r)}};
                 },
                 [] { return nlohmann::json("fail"); });
}

template <class A>
NDTree<A> tree_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "fail")
      throw std::invalid_argument("tree_from_json: unexpected string " + j.dump());
    return fail<A>();
  }
  if (j.is_object() && j.size() == 1 && j.contains("val")) return val(j.at("val").get<A>());
  if (j.is_object() && j.size() == 2 && j.contains("l") && j.contains("r"))
    return choice(tree_from_json<A>(j.at("l")), tree_from_json<A>(j.at("r")));
  throw std::invalid_argument("tree_from_json: malformed node " + j.dump());
}

inline nlohmann::json witness_to_json(const Witness& w) { return w.to_string(); }

inline Witness witness_from_json(const nlohmann::json& j) {
  return Witness::parse(j.get<std::string>());
}

}  // namespace ndl
