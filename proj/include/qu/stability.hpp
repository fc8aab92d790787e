#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <optional>
#include <vector>

#include "hyperspace.hpp"

namespace qu {

/// (F,G) ∈ U_+  iff  ∩_{F'∈F} U(F') = U(gen_F) belongs to G.
inline bool upper_related(const Relation& u, const PFilter& f, const PFilter& g) { return g.contains(u.image(f.gen())); }

/// (F,G) ∈ U_-  iff  U^{-1}(gen_G) belongs to F.
inline bool lower_related(const Relation& u, const PFilter& f, const PFilter& g) { return f.contains(u.preimage(g.gen())); }

/// (F,G) ∈ U_⊕  iff  U(F') ∈ G for every F' ∈ F. Enumerates the members of F.
inline bool oplus_related(const Relation& u, const PFilter& f, const PFilter& g) {
  bool ok = true;
  for_each_superset(f.gen(), [&](const PointSet& fp) { ok = ok && g.contains(u.image(fp)); });
  return ok;
}

/// U_⊖ = ((U^{-1})_⊕)^{-1}.
inline bool ominus_related(const Relation& u, const PFilter& f, const PFilter& g) {
  return oplus_related(inverse(u), g, f);
}

/// (S_D(X), U_D) over the principal filters that test doubly stable.
class StabilitySpace {
 public:
  static StabilitySpace build(const QUSpace& s, const Caps& caps = {}) {
    if (s.size() > caps.lift)
      throw cap_exceeded("stability space: " + std::to_string(s.size()) + " points exceeds lift cap " +
                         std::to_string(caps.lift));
    StabilitySpace sd;
    sd.base_space_ = s;
    for (const auto& f : all_filters(s.size()))
      if (stability_profile(s, f).doubly_stable) sd.points_.push_back(f);
    const std::size_t m = sd.points_.size();
    for (std::size_t i = 0; i < m; ++i) sd.index_.emplace(sd.points_[i].gen(), i);
    for (const auto& u : s.filter_base()) {
      std::vector<PointSet> img, pre;
      for (const auto& f : sd.points_) {
        img.push_back(u.image(f.gen()));
        pre.push_back(u.preimage(f.gen()));
      }
      Relation plus(m), minus(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (sd.points_[j].contains(img[i])) plus.insert(i, j);
          if (sd.points_[i].contains(pre[j])) minus.insert(i, j);
        }
      }
      sd.dmin_.push_back(plus & minus);
      sd.plus_.push_back(std::move(plus));
      sd.minus_.push_back(std::move(minus));
    }
    sd.space_ = QUSpace::make(m, sd.dmin_);
    return sd;
  }

  const QUSpace& base_space() const { return base_space_; }
  const QUSpace& space() const { return space_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<PFilter>& points() const { return points_; }
  const PFilter& point(std::size_t i) const { return points_.at(i); }
  std::optional<std::size_t> index_of(const PointSet& gen) const {
    auto it = index_.find(gen);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const PFilter& f) const {
    auto i = index_of(f.gen());
    if (!i) throw error("stability space: filter " + f.gen().to_string() + " is not a point");
    return *i;
  }

  /// Parallel to base_space().filter_base().
  const std::vector<Relation>& plus() const { return plus_; }
  const std::vector<Relation>& minus() const { return minus_; }
  const std::vector<Relation>& d() const { return dmin_; }

  /// Members of F as points: the filters C_F' for F' ⊇ gen (the embedded hyperspace).
  PointSet embedded_members(const PFilter& f) const {
    PointSet out(size());
    for_each_superset(f.gen(), [&](const PointSet& fp) {
      if (auto i = index_of(fp)) out.insert(*i);
    });
    return out;
  }

 private:
  QUSpace base_space_;
  QUSpace space_;
  std::vector<PFilter> points_;
  std::map<PointSet, std::size_t> index_;
  std::vector<Relation> plus_, minus_, dmin_;
};

inline bool is_generalized_cauchy_pair(const StabilitySpace& sd, const PFilter& f, const PFilter& g) {
  return sd.space().min_entourage().contains(sd.index_of(f), sd.index_of(g));
}

/// F and G are U_D-equivalent: related both ways by every U_D.
inline bool ud_equivalent(const QUSpace& s, const PFilter& f, const PFilter& g) {
  for (const auto& u : s.filter_base()) {
    const bool fg = upper_related(u, f, g) && lower_related(u, f, g);
    const bool gf = upper_related(u, g, f) && lower_related(u, g, f);
    if (!fg || !gf) return false;
  }
  return true;
}

/// The T0-quotient qS_D(X): one 2-round filter F_U per U_D-class.
struct QuotientStability {
  std::vector<PFilter> points;  ///< 2-round representatives, sorted
  QUSpace space;                ///< U_D restricted to the representatives
};

inline QuotientStability t0_stability_space(const StabilitySpace& sd) {
  const QUSpace& x = sd.base_space();
  std::set<PointSet> reps;
  for (const auto& f : sd.points()) reps.insert(f_sub_u(x, f).gen());
  PointSet chosen(sd.size());
  QuotientStability q;
  for (const auto& g : reps) {
    q.points.emplace_back(g);
    chosen.insert(sd.index_of(q.points.back()));
  }
  q.space = subspace(sd.space(), chosen);
  return q;
}

/// Explicit bicompletion of a T0 space: minimal U^s-Cauchy filters with
/// (F,G) ∈ Ũ iff gen_F x gen_G ⊆ U.
struct Bicompletion {
  QUSpace source;
  std::vector<PFilter> points;
  QUSpace space;
  std::vector<std::size_t> embedding;  ///< x -> index of U^s(x)
};

inline Bicompletion bicompletion(const QUSpace& s) {
  if (!s.is_t0()) throw error("bicompletion: space is not T0");
  Bicompletion b;
  b.source = s;
  for (const auto& k : maximal_cliques(s.min_symmetric())) b.points.emplace_back(k);
  const std::size_t m = b.points.size();
  std::vector<Relation> base;
  for (const auto& u : s.base()) {
    Relation t(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        bool ok = true;
        b.points[i].gen().for_each([&](std::size_t x) { ok = ok && b.points[j].gen().subset_of(u.row(x)); });
        if (ok) t.insert(i, j);
      }
    base.push_back(std::move(t));
  }
  b.space = QUSpace::make(m, std::move(base));
  for (std::size_t x = 0; x < s.size(); ++x) {
    const PointSet nb = s.min_symmetric().row(x);
    std::size_t idx = m;
    for (std::size_t i = 0; i < m; ++i)
      if (b.points[i].gen() == nb) idx = i;
    b.embedding.push_back(idx);
  }
  return b;
}

/// f_D(F) = [f(F)], the image filter.
inline PFilter lift_map(const PFilter& f, const std::vector<std::size_t>& map, std::size_t target) {
  return PFilter(map_set(f.gen(), map, target));
}

struct MapVerdict {
  bool continuous = true;
  std::optional<std::size_t> bad_target_entourage;  ///< V in Y's filter base with no matching U
  std::vector<PFilter> images;                      ///< f_D on S_D(X), in point order
};

inline MapVerdict lift_map_fD(const std::vector<std::size_t>& f, const QUSpace& x, const QUSpace& y) {
  if (f.size() != x.size()) throw error("lift_map_fD: map length does not match the source ground set");
  for (auto v : f)
    if (v >= y.size()) throw error("lift_map_fD: map value outside the target ground set");
  MapVerdict mv;
  for (std::size_t v = 0; v < y.filter_base().size(); ++v) {
    bool some = false;
    for (const auto& u : x.filter_base()) some = some || map_relation(u, f, y.size()).subset_of(y.filter_base()[v]);
    if (!some) {
      mv.continuous = false;
      mv.bad_target_entourage = v;
      break;
    }
  }
  for (const auto& g : all_filters(x.size()))
    if (stability_profile(x, g).doubly_stable) mv.images.push_back(lift_map(g, f, y.size()));
  return mv;
}

namespace checks {

/// Reflexivity and V² ⊆ U ⇒ lifted squares, for U_+, U_- and U_D.
inline Findings stability_axioms(const StabilitySpace& sd) {
  Findings r;
  const auto& fb = sd.base_space().filter_base();
  r.merge(lifted_axioms(fb, sd.plus(), "U_+"));
  r.merge(lifted_axioms(fb, sd.minus(), "U_-"));
  r.merge(lifted_axioms(fb, sd.d(), "U_D"));
  return r;
}

/// (U_+)^{-1} = (U^{-1})_-, (U_-)^{-1} = (U^{-1})_+, (U_D)^{-1} = (U^{-1})_D.
inline Findings conjugation(const StabilitySpace& sd, const Caps& caps = {}) {
  Findings r;
  const StabilitySpace cj = StabilitySpace::build(conjugate(sd.base_space()), caps);
  r.expect(cj.points() == sd.points(), [] { return json{{"failed", "conjugate has different doubly stable filters"}}; });
  if (!r.pass()) return r;
  const std::size_t k = std::min(sd.plus().size(), cj.plus().size());
  for (std::size_t i = 0; i < k; ++i) {
    auto w = [&](const char* law) { return [&, law] { return json{{"entourage", i + 1}, {"law", law}}; }; };
    r.expect(inverse(sd.plus()[i]) == cj.minus()[i], w("(U_+)^-1 = (U^-1)_-"));
    r.expect(inverse(sd.minus()[i]) == cj.plus()[i], w("(U_-)^-1 = (U^-1)_+"));
    r.expect(inverse(sd.d()[i]) == cj.d()[i], w("(U_D)^-1 = (U^-1)_D"));
  }
  return r;
}

/// U_+ ⊆ U_⊕ ⊆ (U²)_+ and U_- ⊆ U_⊖ ⊆ (U²)_-, plus Cauchy pairs in U_⊕ ∩ U_⊖.
inline Findings oplus_sandwich(const StabilitySpace& sd) {
  Findings r;
  const QUSpace& x = sd.base_space();
  for (std::size_t k = 0; k < x.filter_base().size(); ++k) {
    const Relation& u = x.filter_base()[k];
    const Relation u2 = compose(u, u);
    for (const auto& f : sd.points())
      for (const auto& g : sd.points()) {
        const bool op = oplus_related(u, f, g), om = ominus_related(u, f, g);
        auto w = [&](const char* what) {
          return [&, what] { return json{{"entourage", k + 1}, {"F", witness_filter(f)}, {"G", witness_filter(g)}, {"failed", what}}; };
        };
        r.expect(!upper_related(u, f, g) || op, w("U_+ in U_oplus"));
        r.expect(!op || upper_related(u2, f, g), w("U_oplus in (U^2)_+"));
        r.expect(!lower_related(u, f, g) || om, w("U_- in U_ominus"));
        r.expect(!om || lower_related(u2, f, g), w("U_ominus in (U^2)_-"));
        if (is_cauchy_pair(x, f, g)) r.expect(op && om, w("Cauchy pair in U_oplus and U_ominus"));
      }
  }
  return r;
}

/// (A,B) ∈ U_H  iff  (C_A, C_B) ∈ U_D, and A -> C_A is injective.
inline Findings embed_hyper(const StabilitySpace& sd) {
  Findings r;
  const QUSpace& x = sd.base_space();
  std::set<std::size_t> seen;
  for_each_nonempty_subset(x.size(), [&](const PointSet& a) {
    const auto ia = sd.index_of(a);
    r.expect(ia.has_value() && seen.insert(*ia).second, [&] { return json{{"set", a.to_string()}, {"failed", "embedding"}}; });
  });
  if (!r.pass()) return r;
  for (std::size_t k = 0; k < x.filter_base().size(); ++k) {
    const Relation& u = x.filter_base()[k];
    for_each_nonempty_subset(x.size(), [&](const PointSet& a) {
      for_each_nonempty_subset(x.size(), [&](const PointSet& b) {
        const bool h = hausdorff_related(u, a, b);
        const bool d = sd.d()[k].contains(*sd.index_of(a), *sd.index_of(b));
        r.expect(h == d, [&] { return json{{"entourage", k + 1}, {"A", a.to_string()}, {"B", b.to_string()}, {"U_H", h}, {"U_D", d}}; });
      });
    });
  }
  return r;
}

/// U_D-equivalence iff equal F_U; and A ~ dc(A) for principal filters.
inline Findings lemma_rep(const StabilitySpace& sd) {
  Findings r;
  const QUSpace& x = sd.base_space();
  std::vector<PointSet> fu;
  for (const auto& f : sd.points()) fu.push_back(f_sub_u(x, f).gen());
  for (std::size_t i = 0; i < sd.size(); ++i) {
    for (std::size_t j = 0; j < sd.size(); ++j) {
      const bool eq = ud_equivalent(x, sd.point(i), sd.point(j));
      r.expect(eq == (fu[i] == fu[j]), [&] {
        return json{{"F", witness_filter(sd.point(i))}, {"G", witness_filter(sd.point(j))}, {"equivalent", eq}};
      });
    }
    const PFilter dc(x.double_closure(sd.point(i).gen()));
    r.expect(ud_equivalent(x, sd.point(i), dc), [&] { return json{{"F", witness_filter(sd.point(i))}, {"failed", "F ~ C_dc(gen)"}}; });
  }
  return r;
}

/// qS_D is T0 with one point per nonempty doubly closed set.
inline Findings quotient(const StabilitySpace& sd) {
  Findings r;
  const QuotientStability q = t0_stability_space(sd);
  r.expect(q.space.is_t0(), [] { return json{{"failed", "quotient is not T0"}}; });
  const std::size_t closed = hyper_t0_representatives(sd.base_space()).size();
  r.expect(q.points.size() == closed, [&] { return json{{"points", q.points.size()}, {"doubly_closed", closed}}; });
  for (const auto& p : q.points)
    r.expect(is_two_round(sd.base_space(), p), [&] { return json{{"point", witness_filter(p)}, {"failed", "2-round"}}; });
  return r;
}

/// Lemma on S_D: bicomplete, the embedded hyperspace is dense, and the
/// family (C_F)_{F∈F} is Cauchy and converges to F. The family is indexed
/// by the members of F ordered by reverse inclusion; its tail filter is
/// generated by T_F = {C_F' : F' ∈ F, F' ⊆ F}.
inline Findings lemma_major(const StabilitySpace& sd) {
  Findings r;
  const QUSpace& sp = sd.space();
  r.expect(is_bicomplete(sp), [] { return json{{"clause", "a"}, {"failed", "S_D bicomplete"}}; });

  PointSet embedded(sd.size());
  for_each_nonempty_subset(sd.base_space().size(), [&](const PointSet& a) {
    if (auto i = sd.index_of(a)) embedded.insert(*i);
  });
  const PointSet cl = sp.min_symmetric().preimage(embedded);
  r.expect(cl.is_full(), [&] { return json{{"clause", "b"}, {"missing", (cl.complement()).to_string()}}; });

  for (std::size_t i = 0; i < sd.size(); ++i) {
    const PFilter& f = sd.point(i);
    PointSet tail_min = PointSet::full(sd.size());
    for_each_superset(f.gen(), [&](const PointSet& fp) {
      PointSet tail(sd.size());
      for_each_superset(f.gen(), [&](const PointSet& fq) {
        if (fq.subset_of(fp))
          if (auto j = sd.index_of(fq)) tail.insert(*j);
      });
      tail_min &= tail;
    });
    bool cauchy = !tail_min.empty();
    tail_min.for_each([&](std::size_t a) { cauchy = cauchy && tail_min.subset_of(sp.min_symmetric().row(a)); });
    const bool converges = !tail_min.empty() && tail_min.subset_of(sp.min_symmetric().row(i));
    r.expect(cauchy && converges, [&] {
      return json{{"clause", "c"}, {"filter", witness_filter(f)}, {"cauchy", cauchy}, {"converges", converges}};
    });
  }
  r.note("nets realized as tail filters over the members of F ordered by reverse inclusion");
  return r;
}

/// qS_D bicomplete and T0, equal to q C P0 = {D(C_C) : C doubly closed}.
inline Findings theorem_main(const StabilitySpace& sd) {
  Findings r;
  const QuotientStability q = t0_stability_space(sd);
  r.expect(is_bicomplete(q.space), [] { return json{{"failed", "qS_D bicomplete"}}; });
  r.expect(q.space.is_t0(), [] { return json{{"failed", "qS_D T0"}}; });
  std::vector<PFilter> qc;
  for (const auto& c : hyper_t0_representatives(sd.base_space())) qc.push_back(two_envelope(sd.base_space(), PFilter(c)));
  std::sort(qc.begin(), qc.end());
  r.expect(qc == q.points, [&] { return json{{"qS_D", q.points.size()}, {"qCP0", qc.size()}}; });
  return r;
}

/// Finite T0 bicompletion: the embedding is bijective, Ũ matches the base,
/// and Ũ agrees with U_D on the bicompletion's points.
inline Findings bicompletion_iso(const QUSpace& s) {
  Findings r;
  const Bicompletion b = bicompletion(s);
  std::set<std::size_t> img(b.embedding.begin(), b.embedding.end());
  r.expect(img.size() == s.size() && b.points.size() == s.size() && !img.count(b.points.size()),
           [] { return json{{"failed", "embedding is not a bijection"}}; });
  if (!r.pass()) return r;
  for (std::size_t k = 0; k < s.base().size(); ++k) {
    const Relation mapped = map_relation(s.base()[k], b.embedding, b.points.size());
    r.expect(mapped == b.space.base()[k], [&] { return json{{"entourage", k + 1}, {"failed", "base not preserved"}}; });
    for (std::size_t i = 0; i < b.points.size(); ++i)
      for (std::size_t j = 0; j < b.points.size(); ++j) {
        const Relation& u = s.base()[k];
        const bool ud = upper_related(u, b.points[i], b.points[j]) && lower_related(u, b.points[i], b.points[j]);
        r.expect(ud == b.space.base()[k].contains(i, j),
                 [&] { return json{{"entourage", k + 1}, {"F", witness_filter(b.points[i])}, {"G", witness_filter(b.points[j])}}; });
      }
  }
  return r;
}

/// qe : qS_D(X) -> qS_D(X~) is a bijection preserving each qU_D (T0 input).
inline Findings prop_bc(const QUSpace& s, const Caps& caps = {}) {
  Findings r;
  const Bicompletion b = bicompletion(s);
  const StabilitySpace sx = StabilitySpace::build(s, caps), sb = StabilitySpace::build(b.space, caps);
  const QuotientStability qx = t0_stability_space(sx), qb = t0_stability_space(sb);
  std::vector<std::size_t> qe;
  for (const auto& p : qx.points) {
    const PFilter moved = f_sub_u(b.space, lift_map(p, b.embedding, b.points.size()));
    auto it = std::find(qb.points.begin(), qb.points.end(), moved);
    qe.push_back(static_cast<std::size_t>(it - qb.points.begin()));
  }
  std::set<std::size_t> img(qe.begin(), qe.end());
  r.expect(img.size() == qb.points.size() && qe.size() == qb.points.size() && !img.count(qb.points.size()),
           [] { return json{{"failed", "qe is not a bijection"}}; });
  if (!r.pass()) return r;
  for (std::size_t k = 0; k < qx.space.base().size(); ++k)
    r.expect(map_relation(qx.space.base()[k], qe, qb.points.size()) == qb.space.base()[k],
             [&] { return json{{"entourage", k + 1}, {"failed", "qe does not preserve qU_D"}}; });
  r.note("finite-degenerate: the bicompletion of a finite T0 space is the space itself");
  return r;
}

/// Every doubly stable F is U_D-equivalent to some C_C, iff the lift is bicomplete.
inline Findings prop_tres(const StabilitySpace& sd, const Caps& caps = {}) {
  Findings r;
  const QUSpace& x = sd.base_space();
  const bool left = is_bicomplete(HyperSpace::lift(x, caps).space());
  bool right = true;
  for (const auto& f : sd.points()) {
    std::optional<PointSet> witness;
    for_each_nonempty_subset(x.size(), [&](const PointSet& c) {
      if (!witness && f_sub_u(x, f) == two_envelope(x, PFilter(c))) witness = c;
    });
    right = right && witness.has_value();
    r.expect(witness.has_value(), [&] { return json{{"filter", witness_filter(f)}, {"failed", "no C_C"}}; });
  }
  r.expect(left == right, [&] { return json{{"lift_bicomplete", left}, {"filters_condition", right}}; });
  return r;
}

/// T0 spaces only: every doubly stable F is U_D-equivalent to an
/// intersection of U^s-Cauchy filters iff the lifted bicompletion is bicomplete.
inline Findings prop_bchar(const QUSpace& s, const Caps& caps = {}) {
  Findings r;
  const Bicompletion b = bicompletion(s);
  const bool left = is_bicomplete(HyperSpace::lift(b.space, caps).space());
  std::vector<PFilter> cauchy;
  for (const auto& f : all_filters(s.size()))
    if (stability_profile(s, f).s_cauchy) cauchy.push_back(f);
  const bool enumerate = cauchy.size() <= caps.family_log2;
  if (!enumerate) r.note("Cauchy families above cap; witness family {U^s(x) : x in gen} used");
  bool right = true;
  for (const auto& f : all_filters(s.size())) {
    if (!stability_profile(s, f).doubly_stable) continue;
    const PFilter target = f_sub_u(s, f);
    bool found = false;
    if (enumerate) {
      const std::uint64_t end = std::uint64_t{1} << cauchy.size();
      for (std::uint64_t m = 1; m < end && !found; ++m) {
        PointSet u = s.none();
        for (std::size_t i = 0; i < cauchy.size(); ++i)
          if ((m >> i) & 1U) u |= cauchy[i].gen();
        found = f_sub_u(s, PFilter(u)) == target;
      }
    } else {
      PointSet u = s.none();
      f.gen().for_each([&](std::size_t x) { u |= s.min_symmetric().row(x); });
      found = f_sub_u(s, PFilter(u)) == target;
    }
    // The neighbourhood-filter family reproduces the 2-envelope.
    PointSet nb = s.none();
    f.gen().for_each([&](std::size_t x) { nb |= s.min_symmetric().row(x); });
    r.expect(f_sub_u(s, PFilter(nb)) == two_envelope(s, f),
             [&] { return json{{"filter", witness_filter(f)}, {"failed", "neighbourhood family"}}; });
    right = right && found;
    r.expect(found, [&] { return json{{"filter", witness_filter(f)}, {"failed", "no Cauchy family"}}; });
  }
  r.expect(left == right, [&] { return json{{"lift_bicomplete", left}, {"filters_condition", right}}; });
  return r;
}

/// Uniform T0 spaces only: every stable filter is contained in a Cauchy
/// filter iff the lifted completion is complete.
inline Findings prop_unifor(const QUSpace& s, const Caps& caps = {}) {
  if (!s.is_uniform()) throw error("unifor: space is not uniform (a base relation is not symmetric)");
  Findings r;
  const Bicompletion b = bicompletion(s);
  const bool left = is_bicomplete(HyperSpace::lift(b.space, caps).space());
  bool right = true;
  for (const auto& f : all_filters(s.size())) {
    if (!stability_profile(s, f).stable) continue;
    std::optional<PointSet> witness;
    for_each_nonempty_subset(s.size(), [&](const PointSet& g) {
      if (!witness && g.subset_of(f.gen()) && stability_profile(s, PFilter(g)).s_cauchy) witness = g;
    });
    right = right && witness.has_value();
    r.expect(witness.has_value(), [&] { return json{{"filter", witness_filter(f)}, {"failed", "no Cauchy refinement"}}; });
  }
  r.expect(left == right, [&] { return json{{"lift_complete", left}, {"filters_condition", right}}; });
  return r;
}

/// Requires M^s(a) = X. For each F: the trace {U_F ∩ a} is a filter base,
/// its filter is doubly stable on the subspace, and [F_U|a] ~ F.
inline Findings lemma_dense(const QUSpace& s, const PointSet& a) {
  if (!s.min_symmetric().image(a).is_full()) throw error("lemma dense: set " + a.to_string() + " is not dense in tau(U^s)");
  Findings r;
  const QUSpace sub = subspace(s, a);
  const auto idx = a.elements();
  for (const auto& f : all_filters(s.size())) {
    bool base_ok = true;
    for (const auto& u : s.filter_base()) base_ok = base_ok && u_sub_f(u, f).intersects(a);
    r.expect(base_ok, [&] { return json{{"filter", witness_filter(f)}, {"failed", "trace is not a filter base"}}; });
    if (!base_ok) continue;
    const PointSet tr = f_sub_u(s, f).gen() & a;
    PointSet local(sub.size());
    for (std::size_t p = 0; p < idx.size(); ++p)
      if (tr.contains(idx[p])) local.insert(p);
    r.expect(stability_profile(sub, PFilter(local)).doubly_stable,
             [&] { return json{{"filter", witness_filter(f)}, {"failed", "trace filter not doubly stable"}}; });
    r.expect(ud_equivalent(s, PFilter(tr), f),
             [&] { return json{{"filter", witness_filter(f)}, {"failed", "[F_U|A] not equivalent to F"}}; });
  }
  return r;
}

namespace detail {
inline std::size_t min_cover_size(const Relation& u) {
  const std::size_t n = u.size();
  if (n > 20) return greedy_cover(u).count();
  for (std::size_t k = 1; k <= n; ++k) {
    // Subsets of size k in colex order.
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (m < end) {
      PointSet f(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((m >> i) & 1U) f.insert(i);
      if (covers(u, f)) return k;
      const std::uint64_t c = m & (~m + 1), rr = m + c;
      m = (((rr ^ m) >> 2) / c) | rr;
    }
  }
  return n;
}
}  // namespace detail

/// Precompactness and total boundedness on X and on S_D(X) agree, checked
/// by the greedy predicate and by an exhaustive cover search.
inline Findings boundedness(const StabilitySpace& sd) {
  Findings r;
  const QUSpace& x = sd.base_space();
  const QUSpace& sp = sd.space();
  const bool px = is_precompact(x), tx = is_totally_bounded(x), ps = is_precompact(sp), ts = is_totally_bounded(sp);
  r.expect(px == ps && tx == ts && px && tx,
           [&] { return json{{"X_precompact", px}, {"X_totally_bounded", tx}, {"SD_precompact", ps}, {"SD_totally_bounded", ts}}; });
  for (const auto& u : sp.filter_base()) {
    const std::size_t g = greedy_cover(u).count(), m = detail::min_cover_size(u);
    r.expect(m <= g && m >= 1, [&] { return json{{"greedy", g}, {"exhaustive", m}}; });
  }
  // x -> C_{x} embeds X into S_D(X).
  std::vector<std::size_t> e;
  for (std::size_t i = 0; i < x.size(); ++i) e.push_back(sd.index_of(PFilter(x.point(i))));
  for (std::size_t k = 0; k < x.filter_base().size(); ++k)
    r.expect(sd.d()[k].restrict_to(PointSet::from_elements(sd.size(), e)) ==
                 x.filter_base()[k].restrict_to(x.all()),
             [&] { return json{{"entourage", k + 1}, {"failed", "x -> C_{x} is not an embedding"}}; });
  return r;
}

/// Over every point map X -> Y: the continuity verdict matches (f x f)(M_X) ⊆ M_Y,
/// images of doubly stable filters are doubly stable, and f_D is continuous
/// on the stability spaces whenever f is.
inline Findings functor_fD(const QUSpace& x, const QUSpace& y, const Caps& caps = {}) {
  Findings r;
  const StabilitySpace sx = StabilitySpace::build(x, caps), sy = StabilitySpace::build(y, caps);
  std::vector<std::size_t> f(x.size(), 0);
  for (;;) {
    const MapVerdict mv = lift_map_fD(f, x, y);
    auto w = [&](const char* what) {
      return [&, what] {
        json m = json::array();
        for (auto v : f) m.push_back(v + 1);
        return json{{"map", m}, {"failed", what}};
      };
    };
    r.expect(mv.continuous == is_qu_continuous(x, y, f), w("continuity verdict"));
    if (mv.continuous) {
      std::vector<std::size_t> fd;
      for (const auto& img : mv.images) {
        const auto j = sy.index_of(img.gen());
        r.expect(j.has_value(), w("image filter not doubly stable"));
        fd.push_back(j.value_or(0));
      }
      if (fd.size() == sx.size()) r.expect(is_qu_continuous(sx.space(), sy.space(), fd), w("f_D continuous"));
    }
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == y.size()) f[i++] = 0;
    if (i == f.size()) break;
  }
  return r;
}

}  // namespace checks
}  // namespace qu
