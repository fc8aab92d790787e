#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "filters.hpp"

namespace qu {

/// (A,B) ∈ U_H  iff  B ⊆ U(A) and A ⊆ U^{-1}(B).
inline bool hausdorff_related(const Relation& u, const PointSet& a, const PointSet& b) {
  return b.subset_of(u.image(a)) && a.subset_of(u.preimage(b));
}

/// Hyper-point k stands for the subset with bit mask k+1.
inline PointSet hyper_point(std::size_t n, std::size_t k) { return PointSet::from_mask(n, std::uint64_t{k} + 1); }
inline std::size_t hyper_index(const PointSet& a) { return static_cast<std::size_t>(a.mask() - 1); }
inline std::size_t hyper_count(std::size_t n) {
  if (n > 62) throw cap_exceeded("hyperspace: ground set too large");
  return static_cast<std::size_t>((std::uint64_t{1} << n) - 1);
}

/// U_H materialized on all 2^n - 1 nonempty subsets.
inline Relation lift_relation(const Relation& u) {
  const std::size_t n = u.size(), h = hyper_count(n);
  std::vector<PointSet> img, pre;
  img.reserve(h);
  pre.reserve(h);
  for (std::size_t k = 0; k < h; ++k) {
    const PointSet a = hyper_point(n, k);
    img.push_back(u.image(a));
    pre.push_back(u.preimage(a));
  }
  Relation out(h);
  for (std::size_t i = 0; i < h; ++i) {
    const PointSet a = hyper_point(n, i);
    for (std::size_t j = 0; j < h; ++j) {
      const PointSet b = hyper_point(n, j);
      if (b.subset_of(img[i]) && a.subset_of(pre[j])) out.insert(i, j);
    }
  }
  return out;
}

/// The Hausdorff hyperspace (P0(X), U_H), built over the filter base of X
/// so that its min-entourage is M_H.
class HyperSpace {
 public:
  static HyperSpace lift(const QUSpace& s, const Caps& caps = {}) {
    if (s.size() > caps.lift)
      throw cap_exceeded("lift: " + std::to_string(s.size()) + " points exceeds lift cap " + std::to_string(caps.lift));
    std::vector<Relation> base;
    for (const auto& u : s.filter_base()) base.push_back(lift_relation(u));
    HyperSpace h;
    h.base_space_ = s;
    h.space_ = QUSpace::make(hyper_count(s.size()), std::move(base));
    return h;
  }

  const QUSpace& base_space() const { return base_space_; }
  const QUSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  PointSet point(std::size_t k) const { return hyper_point(base_space_.size(), k); }

 private:
  QUSpace base_space_;
  QUSpace space_;
};

/// U_H membership without materializing the lift; same kernel as lift_relation.
class HyperView {
 public:
  explicit HyperView(QUSpace s) : s_(std::move(s)) {}
  const QUSpace& base_space() const { return s_; }
  bool related(std::size_t u_index, const PointSet& a, const PointSet& b) const {
    return hausdorff_related(s_.filter_base().at(u_index), a, b);
  }
  bool min_related(const PointSet& a, const PointSet& b) const { return hausdorff_related(s_.min_entourage(), a, b); }

 private:
  QUSpace s_;
};

/// The doubly closed nonempty subsets, one per U_H-equivalence class.
inline std::vector<PointSet> hyper_t0_representatives(const QUSpace& s) {
  std::vector<PointSet> out;
  for_each_nonempty_subset(s.size(), [&](const PointSet& a) {
    if (s.is_doubly_closed(a)) out.push_back(a);
  });
  return out;
}

namespace checks {

/// Each U_H-class holds exactly one doubly closed set and every A is
/// equivalent to its double closure.
inline Findings hyper_classes(const HyperSpace& h) {
  Findings r;
  const QUSpace& x = h.base_space();
  const auto classes = h.space().t0_classes();
  for (const auto& c : classes) {
    std::size_t closed = 0;
    c.for_each([&](std::size_t k) { closed += x.is_doubly_closed(h.point(k)) ? 1 : 0; });
    r.expect(closed == 1, [&] {
      json members = json::array();
      c.for_each([&](std::size_t k) { members.push_back(h.point(k).to_string()); });
      return json{{"class", members}, {"doubly_closed_members", closed}};
    });
  }
  const Relation& ms = h.space().min_symmetric();
  for (std::size_t k = 0; k < h.size(); ++k) {
    const PointSet a = h.point(k);
    const PointSet d = x.double_closure(a);
    r.expect(ms.contains(k, hyper_index(d)), [&] { return json{{"set", a.to_string()}, {"double_closure", d.to_string()}}; });
  }
  r.expect(classes.size() == hyper_t0_representatives(x).size(), [&] {
    return json{{"classes", classes.size()}, {"doubly_closed", hyper_t0_representatives(x).size()}};
  });
  return r;
}

/// Base axioms for a lifted family: reflexive, and V² ⊆ U implies V_L² ⊆ U_L.
inline Findings lifted_axioms(const std::vector<Relation>& base, const std::vector<Relation>& lifted,
                              const std::string& name) {
  Findings r;
  for (std::size_t i = 0; i < lifted.size(); ++i)
    r.expect(lifted[i].is_reflexive(), [&] { return json{{"lift", name}, {"relation", i + 1}, {"failed", "reflexive"}}; });
  for (std::size_t u = 0; u < base.size(); ++u) {
    for (std::size_t v = 0; v < base.size(); ++v) {
      if (!compose(base[v], base[v]).subset_of(base[u])) continue;
      r.expect(compose(lifted[v], lifted[v]).subset_of(lifted[u]), [&] {
        return json{{"lift", name}, {"U", u + 1}, {"V", v + 1}, {"failed", "square"}};
      });
    }
  }
  return r;
}

}  // namespace checks

struct KunziRyserResult {
  bool holds = true;
  std::optional<PointSet> filter;  ///< first violating filter generator
  std::optional<std::size_t> entourage;  ///< index into filter_base
};

/// For each filter F and base entourage U: some member of F lies in
/// U^{-1}(C(F)) ∩ U(C(F)); for principal F that member can be gen itself.
inline KunziRyserResult kunzi_ryser_check(const QUSpace& s) {
  KunziRyserResult res;
  for (const auto& f : all_filters(s.size())) {
    if (!stability_profile(s, f).doubly_stable) continue;
    const PointSet c = double_cluster_points(s, f);
    for (std::size_t u = 0; u < s.filter_base().size(); ++u) {
      const Relation& rel = s.filter_base()[u];
      if (!f.contains(rel.preimage(c) & rel.image(c))) {
        res.holds = false;
        res.filter = f.gen();
        res.entourage = u;
        return res;
      }
    }
  }
  return res;
}

/// Variant: some V has V_F ⊆ U^{-1}(C(F)) ∩ U(C(F)).
inline KunziRyserResult kunzi_ryser_reformulated(const QUSpace& s) {
  KunziRyserResult res;
  const auto vs = intersection_closure(s.filter_base());
  for (const auto& f : all_filters(s.size())) {
    if (!stability_profile(s, f).doubly_stable) continue;
    const PointSet c = double_cluster_points(s, f);
    for (std::size_t u = 0; u < s.filter_base().size(); ++u) {
      const Relation& rel = s.filter_base()[u];
      const PointSet target = rel.preimage(c) & rel.image(c);
      bool found = false;
      for (const auto& v : vs) found = found || u_sub_f(v, f).subset_of(target);
      if (!found) {
        res.holds = false;
        res.filter = f.gen();
        res.entourage = u;
        return res;
      }
    }
  }
  return res;
}

/// Smallest-first greedy cover: a finite F with ∪_{x∈F} U(x) = X.
inline PointSet greedy_cover(const Relation& u) {
  const std::size_t n = u.size();
  PointSet covered(n), chosen(n);
  while (!covered.is_full()) {
    std::size_t best = n, gain = 0;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t g = (u.row(x) - covered).count();
      if (g > gain) {
        gain = g;
        best = x;
      }
    }
    if (best == n) break;
    chosen.insert(best);
    covered |= u.row(best);
  }
  return chosen;
}

inline bool covers(const Relation& u, const PointSet& f) { return u.image(f).is_full(); }

inline bool is_precompact(const QUSpace& s) {
  for (const auto& u : s.filter_base())
    if (!covers(u, greedy_cover(u))) return false;
  return true;
}

inline bool is_totally_bounded(const QUSpace& s) {
  for (const auto& u : s.filter_base()) {
    const Relation us = symmetrize(u);
    if (!covers(us, greedy_cover(us))) return false;
  }
  return true;
}

/// Point map f: X -> Y is quasi-uniformly continuous iff (f x f)(M_X) ⊆ M_Y.
inline bool is_qu_continuous(const QUSpace& x, const QUSpace& y, const std::vector<std::size_t>& f) {
  return map_relation(x.min_entourage(), f, y.size()).subset_of(y.min_entourage());
}

inline PointSet map_set(const PointSet& a, const std::vector<std::size_t>& f, std::size_t target) {
  PointSet out(target);
  a.for_each([&](std::size_t i) { out.insert(f.at(i)); });
  return out;
}

namespace checks {

inline Findings kunzi_ryser(const QUSpace& s, const Caps& caps = {}) {
  Findings r;
  const auto direct = kunzi_ryser_check(s);
  const auto reform = kunzi_ryser_reformulated(s);
  auto w = [&](const KunziRyserResult& k, const char* form) {
    return [&, form] {
      return json{{"form", form}, {"filter", k.filter ? k.filter->to_string() : ""},
                  {"entourage", k.entourage ? *k.entourage + 1 : 0}};
    };
  };
  r.expect(direct.holds, w(direct, "direct"));
  r.expect(direct.holds == reform.holds, w(reform, "reformulated"));
  if (s.size() <= caps.lift) {
    const bool lifted = is_bicomplete(HyperSpace::lift(s, caps).space());
    r.expect(direct.holds == lifted, [&] { return json{{"failed", "verdict differs from bicompleteness of the lift"}}; });
    r.expect(!lifted || is_bicomplete(s), [] { return json{{"failed", "lift bicomplete but space not"}}; });
  } else {
    r.note("lift above cap; cross-check against the lifted space skipped");
  }
  return r;
}

inline Findings precompactness(const QUSpace& s, const Caps& caps = {}) {
  Findings r;
  const bool pc = is_precompact(s), tb = is_totally_bounded(s);
  r.expect(pc && tb, [&] { return json{{"precompact", pc}, {"totally_bounded", tb}}; });
  r.expect(!tb || pc, [] { return json{{"failed", "totally bounded implies precompact"}}; });
  if (s.size() <= caps.lift) {
    const bool lpc = is_precompact(HyperSpace::lift(s, caps).space());
    r.expect(lpc == pc, [&] { return json{{"lift_precompact", lpc}, {"precompact", pc}}; });
  }
  return r;
}

/// For every continuous map X -> Y the hypermap A -> f(A) is continuous
/// between the lifts. Maps are enumerated exhaustively.
inline Findings hyper_functoriality(const QUSpace& x, const QUSpace& y, const Caps& caps = {}) {
  Findings r;
  const HyperSpace hx = HyperSpace::lift(x, caps), hy = HyperSpace::lift(y, caps);
  std::vector<std::size_t> f(x.size(), 0);
  std::vector<std::size_t> hyper_map(hx.size());
  for (;;) {
    if (is_qu_continuous(x, y, f)) {
      for (std::size_t k = 0; k < hx.size(); ++k) hyper_map[k] = hyper_index(map_set(hx.point(k), f, y.size()));
      r.expect(is_qu_continuous(hx.space(), hy.space(), hyper_map), [&] {
        json m = json::array();
        for (auto v : f) m.push_back(v + 1);
        return json{{"map", m}};
      });
    }
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == y.size()) f[i++] = 0;
    if (i == f.size()) break;
  }
  return r;
}

}  // namespace checks
}  // namespace qu
