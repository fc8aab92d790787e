#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "findings.hpp"
#include "relation.hpp"

namespace qu::nat {

using Int = std::uint64_t;

/// A finite or cofinite set of positive integers. `elems` is the set itself
/// when finite and its complement when cofinite; always sorted, no zero.
class CofSet {
 public:
  CofSet() = default;

  static CofSet finite(std::vector<Int> e) { return CofSet(false, std::move(e)); }
  static CofSet cofinite(std::vector<Int> missing) { return CofSet(true, std::move(missing)); }
  static CofSet empty_set() { return finite({}); }
  static CofSet naturals() { return cofinite({}); }

  /// [a, b], empty when b < a.
  static CofSet interval(Int a, Int b) {
    std::vector<Int> e;
    for (Int x = std::max<Int>(a, 1); x <= b; ++x) e.push_back(x);
    return finite(std::move(e));
  }

  /// [a, ∞).
  static CofSet ray(Int a) {
    std::vector<Int> e;
    for (Int x = 1; x < a; ++x) e.push_back(x);
    return cofinite(std::move(e));
  }

  bool is_cofinite() const { return cof_; }
  bool is_finite() const { return !cof_; }
  bool empty() const { return !cof_ && e_.empty(); }
  bool is_naturals() const { return cof_ && e_.empty(); }
  const std::vector<Int>& elems() const { return e_; }

  bool contains(Int x) const {
    if (x == 0) return false;
    return std::binary_search(e_.begin(), e_.end(), x) != cof_;
  }

  CofSet complement() const { return CofSet(!cof_, e_); }

  friend CofSet operator|(const CofSet& a, const CofSet& b) {
    if (!a.cof_ && !b.cof_) return finite(set_union(a.e_, b.e_));
    if (a.cof_ && b.cof_) return cofinite(set_intersection(a.e_, b.e_));
    const CofSet& f = a.cof_ ? b : a;
    const CofSet& c = a.cof_ ? a : b;
    return cofinite(set_difference(c.e_, f.e_));
  }

  friend CofSet operator&(const CofSet& a, const CofSet& b) {
    if (!a.cof_ && !b.cof_) return finite(set_intersection(a.e_, b.e_));
    if (a.cof_ && b.cof_) return cofinite(set_union(a.e_, b.e_));
    const CofSet& f = a.cof_ ? b : a;
    const CofSet& c = a.cof_ ? a : b;
    return finite(set_difference(f.e_, c.e_));
  }

  friend CofSet operator-(const CofSet& a, const CofSet& b) { return a & b.complement(); }

  bool subset_of(const CofSet& o) const { return (*this - o).empty(); }

  /// Smallest element; the set must be nonempty.
  Int min() const {
    if (empty()) throw error("CofSet::min: empty set");
    if (!cof_) return e_.front();
    Int x = 1;
    for (Int m : e_) {
      if (m != x) break;
      ++x;
    }
    return x;
  }

  /// Largest element of a nonempty finite set.
  Int max() const {
    if (cof_ || e_.empty()) throw error("CofSet::max: set is cofinite or empty");
    return e_.back();
  }

  /// Trace on {1..n} as a PointSet where point i stands for i+1.
  PointSet truncate(std::size_t n) const {
    PointSet out = cof_ ? PointSet::full(n) : PointSet(n);
    for (Int x : e_) {
      if (x > n) break;
      if (cof_) out.erase(x - 1);
      else out.insert(x - 1);
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (Int x : e_) s += (s.empty() ? "" : ",") + std::to_string(x);
    return cof_ ? (e_.empty() ? "N" : "N\\{" + s + "}") : "{" + s + "}";
  }

  friend bool operator==(const CofSet&, const CofSet&) = default;

 private:
  CofSet(bool cof, std::vector<Int> e) : cof_(cof), e_(std::move(e)) {
    std::sort(e_.begin(), e_.end());
    e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
    if (!e_.empty() && e_.front() == 0) throw error("CofSet: elements must be positive integers");
  }

  static std::vector<Int> set_union(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }
  static std::vector<Int> set_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }
  static std::vector<Int> set_difference(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }

  bool cof_ = false;
  std::vector<Int> e_;
};

/// (≤ or N×N) ∩ ⋂_{x∈S} T_x with T_x = ({x}×N) ∪ (N×(N∖{x})).
/// So (x,y) belongs iff [x ≤ y when with_leq] and y ∉ S∖{x}.
struct SymEntourage {
  bool with_leq = true;
  std::vector<Int> punctures;

  static SymEntourage make(bool leq, std::vector<Int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.front() == 0) throw error("SymEntourage: punctures must be positive");
    return {leq, std::move(s)};
  }

  CofSet punctured() const { return CofSet::finite(punctures); }

  bool contains(Int x, Int y) const {
    if (with_leq && x > y) return false;
    return x == y || !std::binary_search(punctures.begin(), punctures.end(), y);
  }

  friend SymEntourage operator&(const SymEntourage& a, const SymEntourage& b) {
    std::vector<Int> s = a.punctures;
    s.insert(s.end(), b.punctures.begin(), b.punctures.end());
    return make(a.with_leq || b.with_leq, std::move(s));
  }

  friend bool operator==(const SymEntourage&, const SymEntourage&) = default;

  std::string to_string() const {
    return std::string(with_leq ? "(<=," : "(NxN,") + punctured().to_string() + ")";
  }

  /// Explicit relation on {1..n}; point i stands for i+1.
  Relation truncate(std::size_t n) const {
    std::vector<PointSet> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      PointSet row = PointSet::full(n);
      if (with_leq)
        for (std::size_t j = 0; j < i; ++j) row.erase(j);
      for (Int s : punctures)
        if (s <= n && s != i + 1) row.erase(s - 1);
      rows.push_back(std::move(row));
    }
    return Relation(std::move(rows));
  }
};

namespace detail {

inline CofSet image_raw(const SymEntourage& e, const CofSet& a) {
  if (a.empty()) return a;
  const CofSet rest = CofSet::naturals() - e.punctured();
  // A point y outside A is reached only through some x ∈ A with y ∉ S,
  // and with ≤ the best x is min A.
  return a | (e.with_leq ? CofSet::ray(a.min()) & rest : rest);
}

inline CofSet preimage_raw(const SymEntourage& e, const CofSet& b) {
  if (b.empty()) return b;
  const CofSet free = b - e.punctured();
  if (free.empty()) return b;
  if (!e.with_leq || free.is_cofinite()) return CofSet::naturals();
  return b | CofSet::interval(1, free.max());
}

inline CofSet sym_image_raw(const SymEntourage& e, const CofSet& a) {
  if (e.with_leq || a.subset_of(e.punctured())) return a;
  return a | (CofSet::naturals() - e.punctured());
}

}  // namespace detail

inline CofSet sym_image(const SymEntourage& e, const CofSet& a) {
  if (a.empty()) throw error("sym_image: empty input set");
  return detail::image_raw(e, a);
}

inline CofSet sym_preimage(const SymEntourage& e, const CofSet& b) {
  if (b.empty()) throw error("sym_preimage: empty input set");
  return detail::preimage_raw(e, b);
}

/// E^s(a) for E^s = E ∩ E^{-1}.
inline CofSet sym_symmetric_image(const SymEntourage& e, const CofSet& a) {
  if (a.empty()) throw error("sym_symmetric_image: empty input set");
  return detail::sym_image_raw(e, a);
}

/// Filters on N used by the example: tail filters generated by
/// {core ∪ [k,∞) : k ≥ 1} with a finite core, and principal filters.
class SymFilter {
 public:
  static SymFilter gfilter() { return SymFilter(Kind::tails, CofSet::finite({1})); }
  static SymFilter cofinite() { return SymFilter(Kind::tails, CofSet::empty_set()); }
  static SymFilter tails(CofSet core) {
    if (!core.is_finite()) throw error("SymFilter::tails: core must be finite");
    return SymFilter(Kind::tails, std::move(core));
  }
  static SymFilter principal(CofSet b) {
    if (b.empty()) throw error("SymFilter::principal: generator must be nonempty");
    return SymFilter(Kind::principal, std::move(b));
  }

  bool is_principal() const { return kind_ == Kind::principal; }
  const CofSet& core() const { return set_; }

  bool contains(const CofSet& a) const {
    if (kind_ == Kind::principal) return set_.subset_of(a);
    return a.is_cofinite() && set_.subset_of(a);
  }

  /// ⋂ of all members.
  CofSet intersection() const { return set_; }

  /// A base member: core ∪ [k,∞) for tail filters, the generator otherwise.
  CofSet member(Int k) const { return kind_ == Kind::principal ? set_ : set_ | CofSet::ray(k); }

  std::string to_string() const {
    if (kind_ == Kind::principal) return "principal" + set_.to_string();
    if (set_ == CofSet::finite({1})) return "G";
    if (set_.empty()) return "cofinite";
    return "tails" + set_.to_string();
  }

  friend bool operator==(const SymFilter&, const SymFilter&) = default;

 private:
  enum class Kind { tails, principal };
  SymFilter(Kind k, CofSet s) : kind_(k), set_(std::move(s)) {}
  Kind kind_;
  CofSet set_;
};

// For a tail filter, ⋂_F φ(F) with φ monotone and union-preserving equals
// φ(core) ∪ ⋂_k φ([k,∞)), because the tails are cofinal in the base and
// decreasing. The tail limits below are the closed forms of ⋂_k φ([k,∞)).

/// ⋂_k E([k,∞)): nothing survives under ≤; otherwise N∖S.
inline CofSet image_tail_limit(const SymEntourage& e) {
  return e.with_leq ? CofSet::empty_set() : CofSet::naturals() - e.punctured();
}

/// ⋂_k E^{-1}([k,∞)) = N: every tail has infinitely many points outside S.
inline CofSet preimage_tail_limit(const SymEntourage&) { return CofSet::naturals(); }

inline CofSet sym_image_tail_limit(const SymEntourage& e) { return image_tail_limit(e); }

/// ⋂_{F∈f} E(F).
inline CofSet image_meet(const SymEntourage& e, const SymFilter& f) {
  if (f.is_principal()) return detail::image_raw(e, f.core());
  return detail::image_raw(e, f.core()) | image_tail_limit(e);
}

/// ⋂_{F∈f} E^{-1}(F).
inline CofSet preimage_meet(const SymEntourage& e, const SymFilter& f) {
  if (f.is_principal()) return detail::preimage_raw(e, f.core());
  return detail::preimage_raw(e, f.core()) | preimage_tail_limit(e);
}

inline CofSet sym_image_meet(const SymEntourage& e, const SymFilter& f) {
  if (f.is_principal()) return detail::sym_image_raw(e, f.core());
  return detail::sym_image_raw(e, f.core()) | sym_image_tail_limit(e);
}

/// U_F = ⋂_{F∈f} (E^{-1}(F) ∩ E(F)).
inline CofSet sym_u_sub_f(const SymEntourage& e, const SymFilter& f) { return preimage_meet(e, f) & image_meet(e, f); }

/// The residue filter {F ∖ r : F ∈ f}.
inline SymFilter residue(const SymFilter& f, const CofSet& r) {
  if (f.is_principal()) return SymFilter::principal(f.core() - r);
  return SymFilter::tails(f.core() - r);
}

/// All base entourages with S ⊆ [1..bound], both with and without ≤.
inline std::vector<SymEntourage> entourage_family(Int bound) {
  if (bound > 20) throw error("entourage_family: puncture bound too large to enumerate");
  std::vector<SymEntourage> out;
  for (int leq = 1; leq >= 0; --leq)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << bound); ++m) {
      std::vector<Int> s;
      for (Int i = 0; i < bound; ++i)
        if ((m >> i) & 1U) s.push_back(i + 1);
      out.push_back(SymEntourage::make(leq == 1, std::move(s)));
    }
  return out;
}

namespace oracle {

inline bool agree_below(const PointSet& truncated, const CofSet& symbolic, std::size_t upto) {
  const PointSet t = symbolic.truncate(truncated.universe());
  for (std::size_t i = 0; i + 1 < upto && i < truncated.universe(); ++i)
    if (truncated.contains(i) != t.contains(i)) return false;
  return true;
}

/// ⋂_{k=2..K} (R^{-1}(F_k) ∩ R(F_k)) on a truncation, for the tail filter
/// with F_k = core ∪ [k..n]; valid on {1..K-1}. `inv` is R^{-1}.
inline PointSet tail_u_sub_f(const Relation& r, const Relation& inv, const CofSet& core, std::size_t k_max) {
  const std::size_t n = r.size();
  const PointSet c = core.truncate(n);
  const PointSet rc = r.image(c), pc = inv.image(c);
  PointSet acc = PointSet::full(n), img_tail(n), pre_tail(n);
  for (std::size_t k = n; k >= 2; --k) {
    img_tail |= r.row(k - 1);
    pre_tail |= inv.row(k - 1);
    if (k <= k_max) acc &= (rc | img_tail) & (pc | pre_tail);
  }
  return acc;
}

}  // namespace oracle

/// Explicit relation on {1..n} with its inverse and symmetric part.
struct Truncation {
  Relation r, inv, sym;
  Truncation(const SymEntourage& e, std::size_t n) : r(e.truncate(n)), inv(inverse(r)), sym(r & inv) {}
};

/// Compares every closed form against explicit relations on {1..n}.
inline Findings closed_form_audit(const SymEntourage& e, const Truncation& t, const std::vector<CofSet>& sets) {
  Findings r;
  const std::size_t n = t.r.size();
  for (const auto& a : sets) {
    const PointSet ta = a.truncate(n);
    auto w = [&](const char* op) { return [&, op] { return json{{"entourage", e.to_string()}, {"set", a.to_string()}, {"op", op}, {"N", n}}; }; };
    r.expect(oracle::agree_below(t.r.image(ta), sym_image(e, a), n), w("image"));
    r.expect(oracle::agree_below(t.inv.image(ta), sym_preimage(e, a), n), w("preimage"));
    r.expect(oracle::agree_below(t.sym.image(ta), sym_symmetric_image(e, a), n), w("symmetric image"));
  }
  return r;
}

inline Findings tail_audit(const SymEntourage& e, const Truncation& t, const SymFilter& f) {
  Findings r;
  const std::size_t n = t.r.size(), k = n / 2;
  const PointSet got = oracle::tail_u_sub_f(t.r, t.inv, f.core(), k);
  r.expect(oracle::agree_below(got, sym_u_sub_f(e, f), k),
           [&] { return json{{"entourage", e.to_string()}, {"filter", f.to_string()}, {"op", "U_F"}, {"N", n}}; });
  return r;
}

struct StabilityVerdict {
  bool stable = true;
  bool conj_stable = true;
  bool doubly_stable = true;
  bool s_stable = true;
  std::optional<SymEntourage> witness;  ///< first entourage breaking double stability
};

inline StabilityVerdict stability(const SymFilter& f, const std::vector<SymEntourage>& family) {
  StabilityVerdict v;
  for (const auto& e : family) {
    v.stable = v.stable && f.contains(image_meet(e, f));
    v.conj_stable = v.conj_stable && f.contains(preimage_meet(e, f));
    const bool d = f.contains(sym_u_sub_f(e, f));
    if (!d && v.doubly_stable) v.witness = e;
    v.doubly_stable = v.doubly_stable && d;
    v.s_stable = v.s_stable && f.contains(sym_image_meet(e, f));
  }
  return v;
}

/// Filters the example reasons about.
inline std::vector<SymFilter> filter_catalogue(Int bound) {
  std::vector<SymFilter> out{SymFilter::gfilter(), SymFilter::cofinite(), SymFilter::principal(CofSet::naturals())};
  out.push_back(SymFilter::tails(CofSet::finite({2})));
  out.push_back(SymFilter::tails(CofSet::finite({1, bound})));
  out.push_back(SymFilter::principal(CofSet::finite({1})));
  out.push_back(SymFilter::principal(CofSet::finite({2, 3})));
  out.push_back(SymFilter::principal(CofSet::interval(1, bound)));
  out.push_back(SymFilter::principal(CofSet::ray(2)));
  out.push_back(SymFilter::principal(CofSet::ray(bound + 1) | CofSet::finite({1})));
  return out;
}

struct ContraBounds {
  Int bound_s = 12;
  std::size_t bound_n = 200;
};

/// Certifies the counterexample on N up to the puncture bound: G doubly
/// stable, C(G) = {1}, Künzi-Ryser failing at U = ≤, residue filter equal
/// to the cofinite filter, and stable catalogued filters with nonempty
/// intersection. Every closed form used is audited on {1..bound_n}.
inline Findings verify_contra(const ContraBounds& b) {
  if (b.bound_s < 3 || b.bound_n < 4 * b.bound_s)
    throw error("verify_contra: bounds too small (need bound_s >= 3 and bound_n >= 4*bound_s)");
  Findings r;
  const std::size_t n = b.bound_n;
  const auto family = entourage_family(b.bound_s);
  const SymFilter g = SymFilter::gfilter();
  const Int hi = static_cast<Int>(n / 2);
  const std::vector<CofSet> probes{CofSet::finite({1}),      CofSet::finite({b.bound_s}), CofSet::finite({2, 3}),
                                   CofSet::interval(1, b.bound_s), CofSet::naturals(),  CofSet::cofinite({2}),
                                   g.member(b.bound_s + 1),  CofSet::ray(2),              CofSet::finite({hi})};

  Findings audit;
  for (const auto& e : family) {
    const Truncation t(e, n);
    audit.merge(closed_form_audit(e, t, probes));
    audit.merge(tail_audit(e, t, g));
    audit.merge(tail_audit(e, t, SymFilter::cofinite()));
  }
  r.merge(audit, "closed forms");

  // (i)
  const StabilityVerdict gv = stability(g, family);
  r.expect(gv.doubly_stable, [&] {
    return json{{"clause", 1}, {"failed", "G doubly stable"}, {"entourage", gv.witness ? gv.witness->to_string() : ""}};
  });

  // (ii) τ(U) is cofinite: every E(x) is cofinite, and each y ≠ x is cut
  // off from E(x) by T_y. τ(U^{-1}) is discrete: (≤ ∩ T_x)^{-1}(x) = {x}.
  // These per-point witnesses go beyond the puncture bound and are
  // checked on [1..bound_n].
  bool cofinite_top = true, discrete_conj = true;
  for (const auto& e : family)
    for (Int x = 1; x <= 2 * b.bound_s && cofinite_top; ++x) cofinite_top = sym_image(e, CofSet::finite({x})).is_cofinite();
  for (Int x = 1; x <= n && (cofinite_top || discrete_conj); ++x) {
    for (Int y = 1; y <= n && cofinite_top; ++y)
      if (y != x) cofinite_top = !sym_image(SymEntourage::make(false, {y}), CofSet::finite({x})).contains(y);
    discrete_conj = discrete_conj && sym_preimage(SymEntourage::make(true, {x}), CofSet::finite({x})) == CofSet::finite({x});
  }
  r.expect(cofinite_top, [] { return json{{"clause", 2}, {"failed", "tau(U) cofinite on window"}}; });
  r.expect(discrete_conj, [] { return json{{"clause", 2}, {"failed", "tau(U^-1) discrete on window"}}; });
  // Adherence of G on the window. Forward: every E(x) is cofinite and
  // every member of G is infinite, so each x adheres. Conjugate: x adheres
  // iff {x} = (≤ ∩ T_x)^{-1}(x) meets every member.
  const CofSet meet = g.intersection();
  std::vector<Int> c_elems;
  for (Int x = 1; x <= n; ++x) {
    const CofSet nb = sym_preimage(SymEntourage::make(true, {x}), CofSet::finite({x}));
    bool adheres = cofinite_top;
    for (Int k = 2; k <= n + 1 && adheres; ++k) adheres = !(nb & g.member(k)).empty();
    if (adheres) c_elems.push_back(x);
  }
  const CofSet c_g = CofSet::finite(c_elems);
  r.expect(meet == CofSet::finite({1}), [&] { return json{{"clause", 2}, {"meet", meet.to_string()}}; });
  r.expect(c_g == CofSet::finite({1}), [&] { return json{{"clause", 2}, {"C(G)", c_g.to_string()}}; });

  // (iii)
  const SymEntourage leq = SymEntourage::make(true, {});
  const CofSet back = sym_preimage(leq, c_g);
  const CofSet target = back & sym_image(leq, c_g);
  r.expect(back == CofSet::finite({1}), [&] { return json{{"clause", 3}, {"U^-1(C(G))", back.to_string()}}; });
  r.expect(!g.contains(target), [&] { return json{{"clause", 3}, {"failed", "a member of G lies in U^-1(C) ∩ U(C)"}}; });

  // (iv)
  const SymFilter res = residue(g, back);
  r.expect(res == SymFilter::cofinite(), [&] { return json{{"clause", 4}, {"residue", res.to_string()}}; });

  // (v)
  for (const auto& f : filter_catalogue(b.bound_s)) {
    const StabilityVerdict v = stability(f, family);
    r.expect(!v.stable || !f.intersection().empty(), [&] { return json{{"clause", 5}, {"filter", f.to_string()}}; });
  }

  // G is not U^s-stable, so it has no τ(U^s)-limit.
  r.expect(!gv.s_stable, [] { return json{{"clause", "s"}, {"failed", "G should not be U^s-stable"}}; });

  r.note("entourages: " + std::to_string(family.size()) + " with punctures in [1.." + std::to_string(b.bound_s) + "]");
  r.note("truncation window: {1.." + std::to_string(b.bound_n) + "}, compared below the top element");
  return r;
}

}  // namespace qu::nat
