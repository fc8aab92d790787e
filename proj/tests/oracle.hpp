#pragma once

// Brute-force reference implementations on plain boolean matrices. They
// share no code with the library.

#include <cstdint>
#include <random>
#include <vector>

#include "qu/relation.hpp"
#include "qu/space.hpp"

namespace oracle {

using Mat = std::vector<std::vector<bool>>;
using Set = std::vector<bool>;

inline Mat to_mat(const qu::Relation& r) {
  Mat m(r.size(), std::vector<bool>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m[i][j] = r.contains(i, j);
  return m;
}

inline Set to_set(const qu::PointSet& a) {
  Set s(a.universe());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.contains(i);
  return s;
}

inline Mat product(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k] && b[k][j]) c[i][j] = true;
  return c;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.size(), std::vector<bool>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Set image(const Mat& r, const Set& a) {
  Set out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x])
      for (std::size_t y = 0; y < a.size(); ++y)
        if (r[x][y]) out[y] = true;
  return out;
}

inline bool subset(const Set& a, const Set& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline Set meet(const Set& a, const Set& b) {
  Set c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] && b[i];
  return c;
}

/// Nonempty subsets of {0..n-1} as boolean vectors, mask order.
inline std::vector<Set> subsets(std::size_t n) {
  std::vector<Set> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    Set s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (m >> i) & 1U;
    out.push_back(s);
  }
  return out;
}

/// Reflexive random relation.
inline qu::Relation random_relation(std::size_t n, std::mt19937_64& rng) {
  qu::Relation r = qu::Relation::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 3 == 0) r.insert(i, j);
  return r;
}

/// Random valid space: a random reflexive relation closed transitively, plus
/// up to two supersets of it as further base members.
inline qu::QUSpace random_space(std::size_t n, std::mt19937_64& rng) {
  const qu::Relation m = random_relation(n, rng).transitive_closure();
  std::vector<qu::Relation> base{m};
  const std::size_t extra = rng() % 3;
  for (std::size_t k = 0; k < extra; ++k) base.push_back(m | random_relation(n, rng));
  std::shuffle(base.begin(), base.end(), rng);
  return qu::QUSpace::make(n, base);
}

}  // namespace oracle
