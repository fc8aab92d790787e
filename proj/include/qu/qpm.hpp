#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "findings.hpp"
#include "hyperspace.hpp"
#include "intervals.hpp"

namespace qu {

/// s(x,y) = y - x when y ≥ x, and 1 otherwise.
inline Rational sorgenfrey(const Rational& x, const Rational& y) { return y >= x ? Rational(y - x) : Rational(1); }

/// A finite quasi-pseudometric space: d(x,x) = 0, d ≥ 0, triangle
/// inequality; symmetry is not required.
class QPSpace {
 public:
  using Metric = std::function<Rational(const Rational&, const Rational&)>;

  static QPSpace make(std::vector<Rational> pts, const Metric& d) {
    const std::size_t n = pts.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = d(pts[i], pts[j]);
    return from_matrix(std::move(pts), std::move(m));
  }

  static QPSpace from_matrix(std::vector<Rational> pts, std::vector<std::vector<Rational>> m) {
    const std::size_t n = pts.size();
    if (n == 0) throw error("QPSpace: no points");
    if (m.size() != n) throw error("QPSpace: distance matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw error("QPSpace: distance matrix size mismatch");
      if (m[i][i] != 0) throw error("QPSpace: d(x,x) != 0 at point " + std::to_string(i + 1));
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][j] < 0) throw error("QPSpace: negative distance");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (m[i][k] > m[i][j] + m[j][k])
            throw error("QPSpace: triangle inequality fails at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        "," + std::to_string(k + 1) + ")");
    QPSpace s;
    s.pts_ = std::move(pts);
    s.d_ = std::move(m);
    return s;
  }

  static QPSpace sorgenfrey_space(std::vector<Rational> pts) { return make(std::move(pts), sorgenfrey); }

  std::size_t size() const { return pts_.size(); }
  const std::vector<Rational>& points() const { return pts_; }
  const Rational& point(std::size_t i) const { return pts_.at(i); }
  const Rational& d(std::size_t i, std::size_t j) const { return d_.at(i).at(j); }
  const std::vector<std::vector<Rational>>& matrix() const { return d_; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (d_[i][j] != d_[j][i]) return false;
    return true;
  }

  /// U_ε = {(x,y) : d(x,y) < ε}.
  Relation ball_relation(const Rational& eps) const {
    Relation r(size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (d_[i][j] < eps) r.insert(i, j);
    return r;
  }

  /// Smallest nonzero distance, if any.
  std::optional<Rational> min_positive() const {
    std::optional<Rational> m;
    for (const auto& row : d_)
      for (const auto& v : row)
        if (v > 0 && (!m || v < *m)) m = v;
    return m;
  }

  PointSet all() const { return PointSet::full(size()); }

 private:
  std::vector<Rational> pts_;
  std::vector<std::vector<Rational>> d_;
};

/// d^{-1}(x,y) = d(y,x).
inline QPSpace conjugate(const QPSpace& s) {
  auto m = s.matrix();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s.d(j, i);
  return QPSpace::from_matrix(s.points(), std::move(m));
}

/// d^s = max(d, d^{-1}).
inline QPSpace symmetrize(const QPSpace& s) {
  auto m = s.matrix();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = std::max(s.d(i, j), s.d(j, i));
  return QPSpace::from_matrix(s.points(), std::move(m));
}

/// max( sup_{y∈b} min_{x∈a} d(x,y), sup_{x∈a} min_{y∈b} d(x,y) ).
inline Rational hausdorff_qpm(const QPSpace& s, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw error("hausdorff_qpm: empty point set");
  Rational h = 0;
  b.for_each([&](std::size_t y) {
    std::optional<Rational> m;
    a.for_each([&](std::size_t x) { if (!m || s.d(x, y) < *m) m = s.d(x, y); });
    h = std::max(h, *m);
  });
  a.for_each([&](std::size_t x) {
    std::optional<Rational> m;
    b.for_each([&](std::size_t y) { if (!m || s.d(x, y) < *m) m = s.d(x, y); });
    h = std::max(h, *m);
  });
  return h;
}

/// Dyadic scales 2^{-j}, j ≥ 0, strictly above the smallest positive distance.
inline std::vector<Rational> default_scales(const QPSpace& s) {
  std::vector<Rational> out;
  const auto m = s.min_positive();
  Rational e = 1;
  if (!m) return {e};
  while (e > *m && out.size() < 64) {
    out.push_back(e);
    e /= 2;
  }
  if (out.empty()) out.push_back(e);
  return out;
}

/// x such that every forward and every backward ball of a listed radius meets a.
inline PointSet double_closure_metric(const QPSpace& s, const PointSet& a, const std::vector<Rational>& scales) {
  PointSet out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    bool in = true;
    for (const auto& eps : scales) {
      bool fwd = false, bwd = false;
      a.for_each([&](std::size_t y) {
        fwd = fwd || s.d(x, y) < eps;
        bwd = bwd || s.d(y, x) < eps;
      });
      in = in && fwd && bwd;
    }
    if (in) out.insert(x);
  }
  return out;
}

inline PointSet double_closure_metric(const QPSpace& s, const PointSet& a) {
  return double_closure_metric(s, a, default_scales(s));
}

/// Greedy sweep: each point not yet covered becomes a centre.
inline PointSet eps_net(const QPSpace& s, const Rational& eps) {
  if (eps <= 0) throw error("eps_net: eps must be positive");
  PointSet net(s.size()), covered(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (covered.contains(x)) continue;
    net.insert(x);
    for (std::size_t y = 0; y < s.size(); ++y)
      if (s.d(x, y) < eps) covered.insert(y);
  }
  return net;
}

inline bool is_eps_net(const QPSpace& s, const PointSet& net, const Rational& eps) {
  for (std::size_t y = 0; y < s.size(); ++y) {
    bool hit = false;
    net.for_each([&](std::size_t x) { hit = hit || s.d(x, y) < eps; });
    if (!hit) return false;
  }
  return true;
}

inline bool is_precompact_at(const QPSpace& s, const Rational& eps) { return is_eps_net(s, eps_net(s, eps), eps); }

struct CoverFact {
  std::vector<Rational> uncovered_forward;   ///< samples of ]y, y+2^{-n}[ outside every [b, b+2^{-n}[
  std::vector<Rational> uncovered_backward;  ///< samples of ]y-2^{-n}, y[ outside every ]b-2^{-n}, b]
  std::size_t samples = 0;
  bool covered() const { return uncovered_forward.empty() && uncovered_backward.empty(); }
};

/// Sampled check of the covering property of a sequence b_m -> y at
/// resolution r = 2^{-n-4}. A finite sequence only gets within
/// tol = min |b_m - y| of y, so samples are drawn from the intervals
/// shrunk by tol; tol > r is rejected as non-convergent.
inline CoverFact cover_fact_check(const Rational& y, const std::vector<Rational>& seq, int n) {
  if (seq.empty()) throw error("cover_fact_check: empty sequence");
  if (n < 0) throw error("cover_fact_check: n must be nonnegative");
  const Rational w = pow2(-n), r = pow2(-n - 4);
  Rational tol = abs(seq.front() - y);
  for (const auto& b : seq) tol = std::min(tol, Rational(abs(b - y)));
  if (tol > r)
    throw error("cover_fact_check: sequence does not approach " + to_string(y) + " within 2^-" + std::to_string(n + 4));
  CoverFact cf;
  for (Rational z = y + r; z < y + w - tol; z += r) {
    ++cf.samples;
    bool hit = false;
    for (const auto& b : seq) hit = hit || (b <= z && z < b + w);
    if (!hit) cf.uncovered_forward.push_back(z);
  }
  for (Rational z = y - r; z > y - w + tol; z -= r) {
    ++cf.samples;
    bool hit = false;
    for (const auto& b : seq) hit = hit || (b - w < z && z <= b);
    if (!hit) cf.uncovered_backward.push_back(z);
  }
  return cf;
}

/// F_n = ⋂_{F} S^{-1}_{2^{-n}}(F) ∩ ⋂_{F} S_{2^{-n}}(F) over a descending chain.
inline IntervalSet fn_sets(const std::vector<IntervalSet>& chain, int n) {
  if (chain.empty()) throw error("fn_sets: empty filter base");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i].subset_of(chain[i - 1])) throw error("fn_sets: filter base is not descending at position " + std::to_string(i + 1));
  const Rational eps = pow2(-n);
  IntervalSet acc{Interval::line()};
  for (const auto& f : chain) acc = acc & sorgenfrey_preimage(f, eps) & sorgenfrey_image(f, eps);
  return acc;
}

/// Index from which F_n no longer changes: 2^{-n} below half of every
/// positive gap between consecutive parts of the last chain member, so the
/// collars of neighbouring parts no longer overlap.
inline int fn_stable_index(const std::vector<IntervalSet>& chain) {
  const auto& parts = chain.back().parts();
  std::optional<Rational> gap;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i - 1].hi.infinite || parts[i].lo.infinite) continue;
    const Rational g = parts[i].lo.v - parts[i - 1].hi.v;
    if (g > 0 && (!gap || g < *gap)) gap = g;
  }
  int n = 0;
  while (gap && 2 * pow2(-n) >= *gap) ++n;
  return n;
}

/// Double cluster set of the principal filter on the last chain member,
/// from the two Sorgenfrey closures.
inline IntervalSet double_cluster_trace(const std::vector<IntervalSet>& chain) {
  return sorgenfrey_closure(chain.back()) & sorgenfrey_conj_closure(chain.back());
}

/// A_{n,m} = E ∖ S_ε(E_m) and B_{n,m} = E ∖ S^{-1}_ε(E_m), ε = 2^{-n}. Queries only.
inline IntervalSet set_a(const IntervalSet& e, const IntervalSet& em, int n) { return e - sorgenfrey_image(em, pow2(-n)); }
inline IntervalSet set_b(const IntervalSet& e, const IntervalSet& em, int n) { return e - sorgenfrey_preimage(em, pow2(-n)); }

struct CauchyProbe {
  bool cauchy = false;
  std::optional<Rational> limit;
};

/// d^s-Cauchy on the last half of seq (all pairwise d^s < tol), and a
/// d^s-limit among `candidates` (the sequence itself when empty).
inline CauchyProbe cauchy_probe(const QPSpace::Metric& d, const std::vector<Rational>& seq, const Rational& tol,
                                std::vector<Rational> candidates = {}) {
  if (seq.empty()) throw error("cauchy_probe: empty sequence");
  auto ds = [&](const Rational& x, const Rational& y) { return std::max(d(x, y), d(y, x)); };
  const std::size_t start = seq.size() / 2;
  CauchyProbe p;
  p.cauchy = true;
  for (std::size_t i = start; i < seq.size() && p.cauchy; ++i)
    for (std::size_t j = start; j < seq.size() && p.cauchy; ++j) p.cauchy = ds(seq[i], seq[j]) < tol;
  if (candidates.empty()) candidates = seq;
  for (const auto& c : candidates) {
    bool near = true;
    for (std::size_t i = start; i < seq.size() && near; ++i) near = ds(c, seq[i]) < tol;
    if (near) {
      p.limit = c;
      break;
    }
  }
  return p;
}

namespace checks {

/// h(a,a) = 0, the triangle inequality over all subset triples, and
/// h(a,b) < ε  iff  (a,b) ∈ (U_ε)_H for each scale.
inline Findings hausdorff_laws(const QPSpace& s, const std::vector<Rational>& scales) {
  Findings r;
  const std::size_t n = s.size(), h = hyper_count(n);
  std::vector<std::vector<Rational>> table(h, std::vector<Rational>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) table[i][j] = hausdorff_qpm(s, hyper_point(n, i), hyper_point(n, j));
  for (std::size_t i = 0; i < h; ++i)
    r.expect(table[i][i] == 0, [&] { return json{{"set", hyper_point(n, i).to_string()}, {"failed", "h(a,a) = 0"}}; });
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (std::size_t k = 0; k < h; ++k)
        r.expect(table[i][k] <= table[i][j] + table[j][k], [&] {
          return json{{"a", hyper_point(n, i).to_string()}, {"b", hyper_point(n, j).to_string()}, {"c", hyper_point(n, k).to_string()}};
        });
  for (const auto& eps : scales) {
    const Relation u = s.ball_relation(eps);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        const bool lhs = table[i][j] < eps, rhs = hausdorff_related(u, hyper_point(n, i), hyper_point(n, j));
        r.expect(lhs == rhs, [&] {
          return json{{"eps", to_string(eps)}, {"a", hyper_point(n, i).to_string()}, {"b", hyper_point(n, j).to_string()}};
        });
      }
  }
  return r;
}

/// An ε-net for d gives a 3ε-net for h on all nonempty subsets, and one
/// point from each member of that hyper-net is a 3ε-net for d again.
inline Findings eps_net_transfer(const QPSpace& s, const Rational& eps) {
  Findings r;
  const std::size_t n = s.size();
  const PointSet net = eps_net(s, eps);
  r.expect(is_eps_net(s, net, eps), [&] { return json{{"eps", to_string(eps)}, {"failed", "base net"}}; });
  const auto centres = net.elements();
  std::set<PointSet> hyper_net;
  for_each_nonempty_subset(n, [&](const PointSet& a) {
    std::optional<PointSet> found;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << centres.size()) && !found; ++m) {
      PointSet e(n);
      for (std::size_t k = 0; k < centres.size(); ++k)
        if ((m >> k) & 1U) e.insert(centres[k]);
      if (hausdorff_qpm(s, e, a) < 3 * eps) found = e;
    }
    r.expect(found.has_value(), [&] { return json{{"eps", to_string(eps)}, {"set", a.to_string()}, {"failed", "no 3eps centre"}}; });
    if (found) hyper_net.insert(*found);
  });
  PointSet back(n);
  for (const auto& e : hyper_net) back.insert(e.first());
  r.expect(is_eps_net(s, back, 3 * eps), [&] { return json{{"eps", to_string(eps)}, {"failed", "back transfer"}, {"net", back.to_string()}}; });
  return r;
}

/// F_0 ⊇ F_1 ⊇ ... up to a few steps past the stable index, the stable
/// value repeats, and it equals the double cluster trace.
inline Findings fn_chain(const std::vector<IntervalSet>& chain) {
  Findings r;
  const int stable = fn_stable_index(chain);
  IntervalSet prev = fn_sets(chain, 0);
  for (int n = 1; n <= stable + 5; ++n) {
    IntervalSet cur = fn_sets(chain, n);
    r.expect(cur.subset_of(prev), [&] { return json{{"n", n}, {"F_n", cur.to_string()}, {"F_n-1", prev.to_string()}}; });
    if (n > stable)
      r.expect(cur == fn_sets(chain, stable), [&] { return json{{"n", n}, {"F_n", cur.to_string()}, {"failed", "not stable"}}; });
    prev = std::move(cur);
  }
  const IntervalSet oracle = double_cluster_trace(chain), fn = fn_sets(chain, stable);
  r.expect(fn == oracle, [&] { return json{{"F_n", fn.to_string()}, {"double cluster", oracle.to_string()}}; });
  return r;
}

}  // namespace checks
}  // namespace qu
