#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "space.hpp"

namespace qu {

/// k random reflexive relations on n points. When the intersection M is not
/// transitive every relation is enlarged by the transitive closure of M,
/// which makes the new intersection exactly that closure. `repaired`
/// receives the number of relations that changed.
inline QUSpace gen_space(std::size_t n, std::size_t k, std::uint64_t seed, const Caps& caps = {},
                         std::size_t* repaired = nullptr) {
  if (n == 0) throw error("gen: n must be at least 1");
  if (n > caps.ground) throw cap_exceeded("gen: n = " + std::to_string(n) + " exceeds ground cap " + std::to_string(caps.ground));
  if (k == 0) throw error("gen: k must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Relation> base;
  for (std::size_t r = 0; r < k; ++r) {
    Relation u = Relation::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && (rng() >> 63) != 0) u.insert(i, j);
    base.push_back(std::move(u));
  }
  Relation m = base.front();
  for (const auto& u : base) m = m & u;
  std::size_t changed = 0;
  if (!m.is_transitive()) {
    const Relation t = m.transitive_closure();
    for (auto& u : base) {
      const Relation v = u | t;
      if (!(v == u)) ++changed;
      u = v;
    }
  }
  if (repaired) *repaired = changed;
  return QUSpace::make(n, std::move(base));
}

/// Seed of the i-th space in a seeded family.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(i),
                    static_cast<std::uint32_t>(i >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

/// `count` spaces, the i-th with n = 1 + (i mod max_n) points (or exactly
/// max_n when `fixed`) and 1..3 base relations.
inline std::vector<QUSpace> random_spaces(std::uint64_t seed, std::size_t count, std::size_t max_n, bool fixed,
                                          const Caps& caps = {}) {
  std::vector<QUSpace> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const std::size_t n = fixed ? max_n : 1 + i % max_n;
    out.push_back(gen_space(n, 1 + s % 3, s, caps));
  }
  return out;
}

/// Named reflexive relation used to build catalogue bases.
struct Generator {
  std::string name;
  Relation rel;
};

inline std::vector<Generator> generators(std::size_t n) {
  std::vector<Generator> g;
  if (n <= 3) {
    // All preorders, in mask order of their off-diagonal pairs.
    std::vector<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off.emplace_back(i, j);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << off.size()); ++m) {
      Relation r = Relation::identity(n);
      for (std::size_t b = 0; b < off.size(); ++b)
        if ((m >> b) & 1U) r.insert(off[b].first, off[b].second);
      if (r.is_transitive()) g.push_back({"preorder#" + std::to_string(m), r});
    }
    if (n == 3) {
      g.push_back({"path", Relation::reflexive_from_pairs(3, {{0, 1}, {1, 2}})});
      g.push_back({"cycle", Relation::reflexive_from_pairs(3, {{0, 1}, {1, 2}, {2, 0}})});
    }
    return g;
  }
  if (n != 4) throw error("generators: catalogue covers 1..4 points");
  auto rel = [](std::vector<std::pair<std::size_t, std::size_t>> p) { return Relation::reflexive_from_pairs(4, p); };
  std::vector<std::pair<std::size_t, std::size_t>> chain, rchain, out, in;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      chain.emplace_back(i, j);
      rchain.emplace_back(j, i);
    }
  for (std::size_t j = 1; j < 4; ++j) {
    out.emplace_back(0, j);
    in.emplace_back(j, 0);
  }
  g.push_back({"identity", Relation::identity(4)});
  g.push_back({"full", Relation::full(4)});
  g.push_back({"chain", rel(chain)});
  g.push_back({"reverse-chain", rel(rchain)});
  g.push_back({"sierpinski", rel({{0, 1}})});
  g.push_back({"path", rel({{0, 1}, {1, 2}, {2, 3}})});
  g.push_back({"pair-12", rel({{0, 1}, {1, 0}})});
  g.push_back({"star-out", rel(out)});
  g.push_back({"star-in", rel(in)});
  g.push_back({"cycle", rel({{0, 1}, {1, 2}, {2, 3}, {3, 0}})});
  g.push_back({"zigzag", rel({{0, 1}, {2, 1}, {2, 3}})});
  g.push_back({"two-block", rel({{0, 1}, {1, 0}, {2, 3}, {3, 2}})});
  return g;
}

struct CatalogueEntry {
  std::string name;
  QUSpace space;
};

/// Every base of 1..3 distinct generators on 1..4 points whose
/// intersection is transitive.
inline std::vector<CatalogueEntry> catalogue(std::size_t max_n = 4) {
  std::vector<CatalogueEntry> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto g = generators(n);
    const std::size_t m = g.size();
    auto add = [&](std::vector<std::size_t> idx) {
      std::vector<Relation> base;
      std::string name = std::to_string(n) + ":";
      Relation meet = Relation::full(n);
      for (std::size_t i : idx) {
        base.push_back(g[i].rel);
        meet = meet & g[i].rel;
        name += (name.back() == ':' ? "" : "+") + g[i].name;
      }
      if (!meet.is_transitive()) return;
      out.push_back({name, QUSpace::make(n, std::move(base))});
    };
    for (std::size_t a = 0; a < m; ++a) {
      add({a});
      for (std::size_t b = a + 1; b < m; ++b) {
        add({a, b});
        for (std::size_t c = b + 1; c < m; ++c) add({a, b, c});
      }
    }
  }
  return out;
}

}  // namespace qu
