#pragma once

#include <optional>

#include "hyperspace.hpp"

namespace qu {

/// Raised when no base entourage V has V(x) = {x} or V^{-1}(x) = {x} at every x.
class hypothesis_violation : public error {
 public:
  hypothesis_violation(std::size_t point, const std::string& msg) : error(msg), point_(point) {}
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

namespace detail {
inline std::optional<std::size_t> first_bad_point(const Relation& v) {
  for (std::size_t x = 0; x < v.size(); ++x) {
    const PointSet single = PointSet::singleton(v.size(), x);
    if (v.row(x) != single && v.preimage(single) != single) return x;
  }
  return std::nullopt;
}
}  // namespace detail

/// Index into filter_base() of the first entourage satisfying the hypothesis.
/// Every entourage contains M, so when M fails at x every V fails there too.
inline std::size_t bei_entourage(const QUSpace& s) {
  for (std::size_t k = 0; k < s.filter_base().size(); ++k)
    if (!detail::first_bad_point(s.filter_base()[k])) return k;
  const std::size_t x = *detail::first_bad_point(s.min_entourage());
  throw hypothesis_violation(x, "bei: hypothesis fails at point " + s.ground().label(x) +
                                    ": neither M(x) nor M^{-1}(x) is a singleton");
}

/// For every doubly stable F: V_F = C(F) and C(F) ∈ F, so the Künzi-Ryser
/// condition holds and the lift is bicomplete.
inline Findings verify_bei(const QUSpace& s, const Caps& caps = {}) {
  const std::size_t k = bei_entourage(s);
  const Relation& v = s.filter_base()[k];
  Findings r;
  for (const auto& f : all_filters(s.size())) {
    if (!stability_profile(s, f).doubly_stable) continue;
    const PointSet c = double_cluster_points(s, f);
    const PointSet vf = u_sub_f(v, f);
    r.expect(vf == c && f.contains(c), [&] {
      return json{{"filter", witness_filter(f)}, {"V_F", vf.to_string()}, {"C(F)", c.to_string()}};
    });
  }
  r.expect(kunzi_ryser_check(s).holds, [] { return json{{"failed", "Kunzi-Ryser condition"}}; });
  if (s.size() <= caps.lift)
    r.expect(is_bicomplete(HyperSpace::lift(s, caps).space()), [] { return json{{"failed", "lift bicomplete"}}; });
  else
    r.note("lift above cap; bicompleteness of the lift not materialized");
  r.note(k < s.base().size() ? "hypothesis entourage: base relation " + std::to_string(k + 1)
                             : std::string("hypothesis entourage: the min-entourage"));
  return r;
}

}  // namespace qu
