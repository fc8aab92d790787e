#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "findings.hpp"
#include "space.hpp"

namespace qu {

/// A filter on a finite set; every such filter is principal, so it is
/// determined by its smallest member.
class PFilter {
 public:
  PFilter() = default;
  explicit PFilter(PointSet gen) : gen_(std::move(gen)) {
    if (gen_.empty()) throw error("PFilter: generator must be nonempty");
  }

  const PointSet& gen() const { return gen_; }
  std::size_t universe() const { return gen_.universe(); }
  bool contains(const PointSet& a) const { return gen_.subset_of(a); }
  /// Every member of *this is a member of o.
  bool coarser_than(const PFilter& o) const { return o.gen_.subset_of(gen_); }

  friend bool operator==(const PFilter&, const PFilter&) = default;
  friend auto operator<=>(const PFilter& a, const PFilter& b) { return a.gen_ <=> b.gen_; }

 private:
  PointSet gen_;
};

/// U_F = U^{-1}(gen) ∩ U(gen). For principal filters the intersection over
/// all members collapses to the generator since both sides are monotone.
inline PointSet u_sub_f(const Relation& u, const PFilter& f) {
  return u.preimage(f.gen()) & u.image(f.gen());
}

/// Every relation obtainable as an intersection of finitely many members of `base`.
inline std::vector<Relation> intersection_closure(const std::vector<Relation>& base) {
  std::vector<Relation> out;
  auto known = [&](const Relation& r) { return std::find(out.begin(), out.end(), r) != out.end(); };
  for (const auto& r : base)
    if (!known(r)) out.push_back(r);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Relation r = out[i] & out[j];
      if (!known(r)) out.push_back(std::move(r));
    }
  }
  return out;
}

struct StabilityProfile {
  bool stable = false;
  bool conj_stable = false;
  bool doubly_stable = false;
  bool s_stable = false;
  bool s_cauchy = false;

  friend bool operator==(const StabilityProfile&, const StabilityProfile&) = default;
};

/// Each predicate is antitone in the entourage, so checking the filter base
/// (which contains M) decides it for the whole quasi-uniformity.
inline StabilityProfile stability_profile(const QUSpace& s, const PFilter& f) {
  StabilityProfile p{true, true, true, true, true};
  const PointSet& g = f.gen();
  for (const auto& u : s.filter_base()) {
    const Relation us = symmetrize(u);
    p.stable = p.stable && f.contains(u.image(g));
    p.conj_stable = p.conj_stable && f.contains(u.preimage(g));
    p.doubly_stable = p.doubly_stable && f.contains(u_sub_f(u, f));
    p.s_stable = p.s_stable && f.contains(us.image(g));
    bool square = true;
    g.for_each([&](std::size_t x) { square = square && g.subset_of(us.row(x)); });
    p.s_cauchy = p.s_cauchy && square;
  }
  return p;
}

/// D_U(F): principal on M^{-1}(gen) ∩ M(gen).
inline PFilter two_envelope(const QUSpace& s, const PFilter& f) {
  return PFilter(u_sub_f(s.min_entourage(), f));
}

inline bool is_two_round(const QUSpace& s, const PFilter& f) { return two_envelope(s, f) == f; }

/// F_U, generated by {U_F : U in U}. Computed over every finite intersection
/// of base members rather than through M, so it stays an independent path
/// to the 2-envelope.
inline PFilter f_sub_u(const QUSpace& s, const PFilter& f) {
  PointSet acc = s.all();
  for (const auto& w : intersection_closure(s.base())) acc &= u_sub_f(w, f);
  return PFilter(acc);
}

/// Adherence of f: x such that every neighbourhood of x meets gen.
inline PointSet cluster_points(const QUSpace& s, const PFilter& f, Direction d) {
  const Relation& m = s.min_entourage();
  PointSet out = s.none();
  for (std::size_t x = 0; x < s.size(); ++x) {
    const bool meets = d == Direction::forward ? m.row(x).intersects(f.gen())
                                               : m.preimage(s.point(x)).intersects(f.gen());
    if (meets) out.insert(x);
  }
  return out;
}

inline PointSet double_cluster_points(const QUSpace& s, const PFilter& f) {
  return cluster_points(s, f, Direction::forward) & cluster_points(s, f, Direction::conjugate);
}

/// (f,g) is a Cauchy pair iff some F x G lies in every entourage, i.e. gen_f x gen_g ⊆ M.
inline bool is_cauchy_pair(const QUSpace& s, const PFilter& f, const PFilter& g) {
  bool ok = true;
  f.gen().for_each([&](std::size_t x) { ok = ok && g.gen().subset_of(s.min_entourage().row(x)); });
  return ok;
}

enum class Convergence { forward, conjugate, symmetric };

/// All limits of f in the chosen topology; several in a non-T0 space.
inline PointSet limits(const QUSpace& s, const PFilter& f, Convergence c) {
  PointSet out = s.none();
  const Relation& m = s.min_entourage();
  for (std::size_t x = 0; x < s.size(); ++x) {
    PointSet nb = c == Convergence::forward     ? m.row(x)
                  : c == Convergence::conjugate ? m.preimage(s.point(x))
                                                : s.min_symmetric().row(x);
    if (f.contains(nb)) out.insert(x);
  }
  return out;
}

namespace detail {
// A U^s-Cauchy principal filter has its generator inside a clique of M^s,
// and convergence is inherited by finer filters, so maximal cliques suffice.
inline bool cauchy_filters_converge(const QUSpace& s, Convergence c) {
  for (const auto& k : maximal_cliques(s.min_symmetric()))
    if (limits(s, PFilter(k), c).empty()) return false;
  return true;
}
}  // namespace detail

inline bool is_bicomplete(const QUSpace& s) { return detail::cauchy_filters_converge(s, Convergence::symmetric); }

/// Every U^s-Cauchy filter converges in tau(U).
inline bool is_half_complete(const QUSpace& s) { return detail::cauchy_filters_converge(s, Convergence::forward); }

inline bool check_filterbase_trace(const PFilter& f, const PointSet& a) { return f.gen().intersects(a); }

/// Every nonempty subset, as a principal filter, in mask order.
inline std::vector<PFilter> all_filters(std::size_t n) {
  std::vector<PFilter> out;
  for_each_nonempty_subset(n, [&](const PointSet& g) { out.emplace_back(g); });
  return out;
}

inline json witness_filter(const PFilter& f) { return f.gen().to_string(); }

namespace checks {

/// Stable filters on a subspace generate stable filters on X.
inline Findings lemma_subs(const QUSpace& s) {
  Findings r;
  for_each_nonempty_subset(s.size(), [&](const PointSet& a) {
    const QUSpace sub = subspace(s, a);
    for (const auto& fa : all_filters(sub.size())) {
      if (!stability_profile(sub, fa).stable) continue;
      const PFilter fx(embed_subset(a, fa.gen()));
      r.expect(stability_profile(s, fx).stable,
               [&] { return json{{"subspace", a.to_string()}, {"filter", witness_filter(fx)}}; });
    }
  });
  return r;
}

/// 2-envelope is idempotent, 2-round, and keeps both cluster sets.
inline Findings lemma_zwei(const QUSpace& s) {
  Findings r;
  for (const auto& f : all_filters(s.size())) {
    const PFilter d = two_envelope(s, f);
    auto w = [&](const char* what) {
      return [&, what] { return json{{"filter", witness_filter(f)}, {"envelope", witness_filter(d)}, {"failed", what}}; };
    };
    r.expect(two_envelope(s, d) == d, w("idempotent"));
    r.expect(is_two_round(s, d), w("2-round"));
    r.expect(cluster_points(s, d, Direction::forward) == cluster_points(s, f, Direction::forward), w("forward cluster set"));
    r.expect(cluster_points(s, d, Direction::conjugate) == cluster_points(s, f, Direction::conjugate),
             w("conjugate cluster set"));
    r.expect(f.gen().subset_of(d.gen()), w("coarser"));
  }
  return r;
}

/// F_U = D_U(F), and the double cluster set is the double closure of gen.
inline Findings lemma_drei(const QUSpace& s) {
  Findings r;
  for (const auto& f : all_filters(s.size())) {
    const PFilter a = f_sub_u(s, f), b = two_envelope(s, f);
    r.expect(a == b, [&] {
      return json{{"filter", witness_filter(f)}, {"F_U", witness_filter(a)}, {"D_U", witness_filter(b)}};
    });
    r.expect(double_cluster_points(s, f) == s.double_closure(f.gen()),
             [&] { return json{{"filter", witness_filter(f)}, {"failed", "C(F) = dc(gen)"}}; });
  }
  return r;
}

/// The generator of F_U is open in tau(U^s).
inline Findings corollary_base(const QUSpace& s) {
  Findings r;
  for (const auto& f : all_filters(s.size())) {
    const PointSet g = f_sub_u(s, f).gen();
    r.expect(s.symmetric_interior(g) == g,
             [&] { return json{{"filter", witness_filter(f)}, {"F_U", g.to_string()}}; });
  }
  return r;
}

/// Finite spaces are totally bounded, so every filter is doubly stable;
/// also audits the implications inside each profile.
inline Findings totally_bounded_lemma(const QUSpace& s) {
  Findings r;
  for (const auto& f : all_filters(s.size())) {
    const StabilityProfile p = stability_profile(s, f);
    r.expect(p.doubly_stable && p.doubly_stable == (p.stable && p.conj_stable) &&
                 (!p.s_cauchy || p.s_stable) && (!p.s_stable || p.doubly_stable),
             [&] { return json{{"filter", witness_filter(f)}}; });
  }
  return r;
}

inline Findings completeness(const QUSpace& s) {
  Findings r;
  const bool bi = is_bicomplete(s), half = is_half_complete(s);
  r.expect(bi, [] { return json{{"failed", "bicomplete"}}; });
  r.expect(!bi || half, [] { return json{{"failed", "bicomplete implies half-complete"}}; });
  return r;
}

}  // namespace checks
}  // namespace qu
