#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pointset.hpp"

namespace qu {

/// Binary relation on {0..n-1}, stored as one PointSet per row:
/// row(i) contains j iff (i,j) is in the relation, so row(i) = R(i).
///
/// Entourages are reflexive; reflexivity is not forced here so that
/// validation can report a missing diagonal. See QUSpace.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, PointSet(n)) {}

  explicit Relation(std::vector<PointSet> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.universe() != rows_.size()) throw error("Relation: row universe does not match row count");
  }

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
    return r;
  }

  static Relation full(std::size_t n) {
    return Relation(std::vector<PointSet>(n, PointSet::full(n)));
  }

  /// Pairs are 0-based. The diagonal is not added.
  static Relation from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Relation r(n);
    for (auto [i, j] : pairs) r.insert(i, j);
    return r;
  }

  /// Identity plus the given pairs.
  static Relation reflexive_from_pairs(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    return from_pairs(n, pairs).reflexive_closure();
  }

  std::size_t size() const { return rows_.size(); }
  const PointSet& row(std::size_t i) const { return rows_.at(i); }
  bool contains(std::size_t i, std::size_t j) const { return rows_.at(i).contains(j); }
  void insert(std::size_t i, std::size_t j) {
    if (i >= size()) throw error("Relation::insert: row out of range");
    rows_[i].insert(j);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) rows_[i].for_each([&](std::size_t j) { out.emplace_back(i, j); });
    return out;
  }

  /// R(a) = { y : exists x in a, (x,y) in R }.
  PointSet image(const PointSet& a) const {
    check_universe(a);
    PointSet out(size());
    a.for_each([&](std::size_t x) { out |= rows_[x]; });
    return out;
  }

  /// R^{-1}(a) = { x : R(x) meets a }.
  PointSet preimage(const PointSet& a) const {
    check_universe(a);
    PointSet out(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (rows_[x].intersects(a)) out.insert(x);
    return out;
  }

  bool is_reflexive() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].contains(i)) return false;
    return true;
  }

  /// First point whose diagonal entry is missing, or size().
  std::size_t first_irreflexive_point() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].contains(i)) return i;
    return size();
  }

  bool is_symmetric() const;
  bool is_transitive() const;

  bool subset_of(const Relation& o) const {
    same_size(o);
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].subset_of(o.rows_[i])) return false;
    return true;
  }

  Relation reflexive_closure() const {
    Relation r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.rows_[i].insert(i);
    return r;
  }

  Relation transitive_closure() const {
    Relation r = *this;
    // Warshall on rows: if k in R(i) then R(i) absorbs R(k).
    for (std::size_t k = 0; k < size(); ++k)
      for (std::size_t i = 0; i < size(); ++i)
        if (r.rows_[i].contains(k)) r.rows_[i] |= r.rows_[k];
    return r;
  }

  /// Restriction to a x a, reindexed onto 0..|a|-1 in increasing order.
  Relation restrict_to(const PointSet& a) const {
    check_universe(a);
    const auto idx = a.elements();
    Relation r(idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = 0; q < idx.size(); ++q)
        if (contains(idx[p], idx[q])) r.insert(p, q);
    return r;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

  friend Relation operator&(const Relation& a, const Relation& b) {
    a.same_size(b);
    Relation r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r.rows_[i] &= b.rows_[i];
    return r;
  }

  friend Relation operator|(const Relation& a, const Relation& b) {
    a.same_size(b);
    Relation r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r.rows_[i] |= b.rows_[i];
    return r;
  }

 private:
  void check_universe(const PointSet& a) const {
    if (a.universe() != size()) throw error("Relation: point set over a different ground set");
  }
  void same_size(const Relation& o) const {
    if (o.size() != size()) throw error("Relation: ground-set mismatch");
  }

  std::vector<PointSet> rows_;
};

/// r;s = { (x,z) : exists y, (x,y) in r and (y,z) in s }.
inline Relation compose(const Relation& r, const Relation& s) {
  if (r.size() != s.size()) throw error("compose: ground-set mismatch");
  std::vector<PointSet> rows;
  rows.reserve(r.size());
  for (std::size_t x = 0; x < r.size(); ++x) rows.push_back(s.image(r.row(x)));
  return Relation(std::move(rows));
}

inline Relation inverse(const Relation& r) {
  Relation t(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) r.row(i).for_each([&](std::size_t j) { t.insert(j, i); });
  return t;
}

/// U^s = U intersected with its inverse.
inline Relation symmetrize(const Relation& r) { return r & inverse(r); }

inline bool Relation::is_symmetric() const { return *this == inverse(*this); }

inline bool Relation::is_transitive() const { return compose(*this, *this).subset_of(*this); }

/// Image of a relation under a point map f x f, into a ground set of `target_size` points.
inline Relation map_relation(const Relation& r, const std::vector<std::size_t>& f, std::size_t target_size) {
  if (f.size() != r.size()) throw error("map_relation: map length does not match ground set");
  Relation out(target_size);
  for (std::size_t i = 0; i < r.size(); ++i)
    r.row(i).for_each([&](std::size_t j) { out.insert(f.at(i), f.at(j)); });
  return out;
}

/// Maximal cliques of the undirected graph given by a symmetric relation
/// (diagonal ignored), each returned as a PointSet, in canonical order.
inline std::vector<PointSet> maximal_cliques(const Relation& sym) {
  const std::size_t n = sym.size();
  std::vector<PointSet> out;
  // Bron-Kerbosch with pivoting.
  auto rec = [&](auto&& self, PointSet r, PointSet p, PointSet x) -> void {
    if (p.empty() && x.empty()) {
      out.push_back(std::move(r));
      return;
    }
    const PointSet px = p | x;
    const std::size_t pivot = px.first();
    PointSet candidates = p - sym.row(pivot);
    candidates.erase(pivot);
    if (p.contains(pivot)) candidates.insert(pivot);
    candidates.for_each([&](std::size_t v) {
      if (!p.contains(v)) return;
      PointSet nbrs = sym.row(v);
      nbrs.erase(v);
      PointSet r2 = r;
      r2.insert(v);
      self(self, r2, p & nbrs, x & nbrs);
      p.erase(v);
      x.insert(v);
    });
  };
  if (n > 0) rec(rec, PointSet(n), PointSet::full(n), PointSet(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qu
