#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qu {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset of the finite ground set {0, ..., universe-1}.
///
/// Sets over different universes never compare equal; mixing them in a
/// binary operation is a programming error and throws.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : bits_(universe) {}

  static PointSet full(std::size_t universe) {
    PointSet s(universe);
    s.bits_.set();
    return s;
  }

  static PointSet singleton(std::size_t universe, std::size_t i) {
    PointSet s(universe);
    s.insert(i);
    return s;
  }

  /// Bit i of `mask` becomes point i. Requires universe <= 64.
  static PointSet from_mask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64) throw error("PointSet::from_mask: universe exceeds 64 points");
    PointSet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
      if ((mask >> i) & 1U) s.bits_.set(i);
    return s;
  }

  static PointSet from_elements(std::size_t universe, const std::vector<std::size_t>& elems) {
    PointSet s(universe);
    for (auto i : elems) s.insert(i);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }

  bool contains(std::size_t i) const { return i < bits_.size() && bits_.test(i); }
  void insert(std::size_t i) {
    if (i >= bits_.size()) throw error("PointSet::insert: point " + std::to_string(i) + " outside universe");
    bits_.set(i);
  }
  void erase(std::size_t i) {
    if (i < bits_.size()) bits_.reset(i);
  }

  bool subset_of(const PointSet& other) const {
    same_universe(other);
    return bits_.is_subset_of(other.bits_);
  }
  bool intersects(const PointSet& other) const {
    same_universe(other);
    return bits_.intersects(other.bits_);
  }

  PointSet& operator|=(const PointSet& o) { same_universe(o); bits_ |= o.bits_; return *this; }
  PointSet& operator&=(const PointSet& o) { same_universe(o); bits_ &= o.bits_; return *this; }
  PointSet& operator-=(const PointSet& o) { same_universe(o); bits_ -= o.bits_; return *this; }

  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  PointSet complement() const {
    PointSet s = *this;
    s.bits_.flip();
    return s;
  }

  /// Smallest element, or universe() when empty.
  std::size_t first() const {
    auto p = bits_.find_first();
    return p == boost::dynamic_bitset<std::uint64_t>::npos ? universe() : p;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto p = bits_.find_first(); p != boost::dynamic_bitset<std::uint64_t>::npos;
         p = bits_.find_next(p))
      fn(static_cast<std::size_t>(p));
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::uint64_t mask() const {
    if (universe() > 64) throw error("PointSet::mask: universe exceeds 64 points");
    std::uint64_t m = 0;
    for_each([&](std::size_t i) { m |= std::uint64_t{1} << i; });
    return m;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.bits_ == b.bits_; }

  /// Canonical order: by universe, then as binary numbers (bit i has weight 2^i).
  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
    if (auto c = a.universe() <=> b.universe(); c != 0) return c;
    for (std::size_t i = a.universe(); i-- > 0;) {
      bool x = a.bits_.test(i), y = b.bits_.test(i);
      if (x != y) return x ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

  /// 1-based listing such as "{1,3}", used in reports.
  std::string to_string() const {
    std::string s = "{";
    bool first_elem = true;
    for_each([&](std::size_t i) {
      if (!first_elem) s += ',';
      s += std::to_string(i + 1);
      first_elem = false;
    });
    return s + "}";
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(universe());
    for_each([&](std::size_t i) { h ^= std::hash<std::size_t>{}(i) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); });
    return h;
  }

 private:
  void same_universe(const PointSet& o) const {
    if (o.universe() != universe()) throw error("PointSet: universe mismatch");
  }

  boost::dynamic_bitset<std::uint64_t> bits_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

/// Calls fn(PointSet) for every nonempty subset of {0..n-1}, in increasing mask order.
template <class Fn>
void for_each_nonempty_subset(std::size_t n, Fn&& fn) {
  if (n > 62) throw error("for_each_nonempty_subset: universe too large to enumerate");
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t m = 1; m < end; ++m) fn(PointSet::from_mask(n, m));
}

/// Calls fn(PointSet) for every superset of `base` inside its universe.
template <class Fn>
void for_each_superset(const PointSet& base, Fn&& fn) {
  const auto free = base.complement().elements();
  if (free.size() > 62) throw error("for_each_superset: too many free points");
  const std::uint64_t end = std::uint64_t{1} << free.size();
  for (std::uint64_t m = 0; m < end; ++m) {
    PointSet s = base;
    for (std::size_t k = 0; k < free.size(); ++k)
      if ((m >> k) & 1U) s.insert(free[k]);
    fn(s);
  }
}

}  // namespace qu
