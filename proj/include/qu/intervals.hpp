#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qu {

/// One end of an interval; `infinite` means -∞ for a lower end, +∞ for an upper end.
struct End {
  Rational v;
  bool closed = true;
  bool infinite = false;

  friend bool operator==(const End& a, const End& b) {
    return a.infinite == b.infinite && (a.infinite || (a.v == b.v && a.closed == b.closed));
  }
};

struct Interval {
  End lo, hi;

  static Interval closed(Rational a, Rational b) { return {{std::move(a), true}, {std::move(b), true}}; }
  static Interval open(Rational a, Rational b) { return {{std::move(a), false}, {std::move(b), false}}; }
  /// [a, b)
  static Interval closed_open(Rational a, Rational b) { return {{std::move(a), true}, {std::move(b), false}}; }
  /// (a, b]
  static Interval open_closed(Rational a, Rational b) { return {{std::move(a), false}, {std::move(b), true}}; }
  static Interval point(const Rational& a) { return closed(a, a); }
  static Interval line() { return {{0, false, true}, {0, false, true}}; }

  bool empty() const {
    if (lo.infinite || hi.infinite) return false;
    if (lo.v != hi.v) return lo.v > hi.v;
    return !(lo.closed && hi.closed);
  }

  bool contains(const Rational& x) const {
    const bool above = lo.infinite || x > lo.v || (x == lo.v && lo.closed);
    const bool below = hi.infinite || x < hi.v || (x == hi.v && hi.closed);
    return above && below;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

namespace detail {
// "a admits more points than b" for lower ends.
inline bool lower_before(const End& a, const End& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  if (a.v != b.v) return a.v < b.v;
  return a.closed && !b.closed;
}
// "a admits more points than b" for upper ends.
inline bool upper_after(const End& a, const End& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  if (a.v != b.v) return a.v > b.v;
  return a.closed && !b.closed;
}
// Upper end `h` of one interval meets or overlaps lower end `l` of the next.
inline bool touches(const End& h, const End& l) {
  if (h.infinite || l.infinite) return true;
  if (l.v != h.v) return l.v < h.v;
  return h.closed || l.closed;
}
inline std::string end_string(const End& e, bool lower) {
  if (e.infinite) return lower ? "(-inf" : "+inf)";
  return lower ? (e.closed ? "[" : "(") + to_string(e.v) : to_string(e.v) + (e.closed ? "]" : ")");
}
}  // namespace detail

/// Finite union of rational intervals, kept disjoint, non-adjacent and sorted.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts) : parts_(parts) { normalize(); }
  explicit IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

  static IntervalSet points(const std::vector<Rational>& xs) {
    std::vector<Interval> p;
    for (const auto& x : xs) p.push_back(Interval::point(x));
    return IntervalSet(std::move(p));
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Rational& x) const {
    for (const auto& p : parts_)
      if (p.contains(x)) return true;
    return false;
  }

  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> p = a.parts_;
    p.insert(p.end(), b.parts_.begin(), b.parts_.end());
    return IntervalSet(std::move(p));
  }

  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> p;
    for (const auto& x : a.parts_)
      for (const auto& y : b.parts_) {
        Interval z{detail::lower_before(x.lo, y.lo) ? y.lo : x.lo, detail::upper_after(x.hi, y.hi) ? y.hi : x.hi};
        if (!z.empty()) p.push_back(z);
      }
    return IntervalSet(std::move(p));
  }

  IntervalSet complement() const {
    std::vector<Interval> p;
    End cur{0, false, true};
    for (const auto& x : parts_) {
      if (!x.lo.infinite) p.push_back({cur, {x.lo.v, !x.lo.closed}});
      if (x.hi.infinite) return IntervalSet(std::move(p));
      cur = {x.hi.v, !x.hi.closed};
    }
    p.push_back({cur, {0, false, true}});
    return IntervalSet(std::move(p));
  }

  friend IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) { return a & b.complement(); }

  bool subset_of(const IntervalSet& o) const { return (*this - o).empty(); }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (const auto& p : parts_) {
      if (!s.empty()) s += " u ";
      if (!p.lo.infinite && !p.hi.infinite && p.lo.v == p.hi.v) s += "{" + qu::to_string(p.lo.v) + "}";
      else s += detail::end_string(p.lo, true) + "," + detail::end_string(p.hi, false);
    }
    return s;
  }

 private:
  void normalize() {
    std::erase_if(parts_, [](const Interval& i) { return i.empty(); });
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return detail::lower_before(a.lo, b.lo); });
    std::vector<Interval> out;
    for (const auto& p : parts_) {
      if (!out.empty() && detail::touches(out.back().hi, p.lo)) {
        if (detail::upper_after(p.hi, out.back().hi)) out.back().hi = p.hi;
      } else {
        out.push_back(p);
      }
    }
    parts_ = std::move(out);
  }

  std::vector<Interval> parts_;
};

// Sorgenfrey balls: S_ε(x) = [x, x+ε), S_ε^{-1}(x) = (x-ε, x].

/// S_ε(E) = ∪_{x∈E} [x, x+ε): each part <a,b> becomes <a, b+ε).
inline IntervalSet sorgenfrey_image(const IntervalSet& e, const Rational& eps) {
  std::vector<Interval> p;
  for (auto x : e.parts()) {
    if (!x.hi.infinite) x.hi = {x.hi.v + eps, false};
    p.push_back(x);
  }
  return IntervalSet(std::move(p));
}

/// S_ε^{-1}(E) = ∪_{x∈E} (x-ε, x]: each part <a,b> becomes (a-ε, b>.
inline IntervalSet sorgenfrey_preimage(const IntervalSet& e, const Rational& eps) {
  std::vector<Interval> p;
  for (auto x : e.parts()) {
    if (!x.lo.infinite) x.lo = {x.lo.v - eps, false};
    p.push_back(x);
  }
  return IntervalSet(std::move(p));
}

/// Closure in the topology of s (neighbourhoods [x, x+ε)): left ends close.
inline IntervalSet sorgenfrey_closure(const IntervalSet& e) {
  std::vector<Interval> p;
  for (auto x : e.parts()) {
    if (!x.lo.infinite) x.lo.closed = true;
    p.push_back(x);
  }
  return IntervalSet(std::move(p));
}

/// Closure in the topology of s^{-1} (neighbourhoods (x-ε, x]): right ends close.
inline IntervalSet sorgenfrey_conj_closure(const IntervalSet& e) {
  std::vector<Interval> p;
  for (auto x : e.parts()) {
    if (!x.hi.infinite) x.hi.closed = true;
    p.push_back(x);
  }
  return IntervalSet(std::move(p));
}

}  // namespace qu
