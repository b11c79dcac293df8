#include "ndl/programs.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndl::programs {

IntList insert(int x, const IntList& xs) {
  IntList out;
  out.reserve(xs.size() + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (x < xs[i]) {
      out.push_back(x);
      out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(i), xs.end());
      return out;
    }
    out.push_back(xs[i]);
  }
  out.push_back(x);
  return out;
}

IntList sort(const IntList& xs) {
  IntList acc;
  for (std::size_t i = xs.size(); i-- > 0;) acc = insert(xs[i], acc);
  return acc;
}

namespace {
bool minimal_at(const IntList& xs, std::size_t k) {
  return std::all_of(xs.begin(), xs.end(), [&](int e) { return xs[k] <= e; });
}
}  // namespace

NDTree<int> min_nd(const IntList& xs) {
  return detail::chain<int>(xs.size(), [&](std::size_t k) {
    return minimal_at(xs, k) ? val(xs[k]) : fail<int>();
  });
}

MaybeValue<int> min_plan(const ChoicePlan& ch, const IntList& xs) {
  if (xs.empty()) return std::nullopt;
  const std::size_t k = detail::select_position(ch, xs.size());
  if (!minimal_at(xs, k)) return std::nullopt;
  return xs[k];
}

int min_det(const IntList& xs) {
  if (xs.empty()) throw std::invalid_argument("min_det: empty list");
  int z = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) z = xs[i] <= z ? xs[i] : z;
  return z;
}

}  // namespace ndl::programs
