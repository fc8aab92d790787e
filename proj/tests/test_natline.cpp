#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "qu/natline.hpp"

using qu::nat::CofSet;
using qu::nat::Int;
using qu::nat::SymEntourage;
using qu::nat::SymFilter;

namespace {

// Truncation oracle on {1..n}, written straight from the definition:
// (x,y) ∈ E iff (x ≤ y when ≤ is used) and for each s ∈ S, x = s or y ≠ s.
struct Trunc {
  std::size_t n;
  std::vector<std::vector<bool>> m;

  Trunc(const SymEntourage& e, std::size_t n_) : n(n_), m(n_ + 1, std::vector<bool>(n_ + 1)) {
    const std::set<Int> s(e.punctures.begin(), e.punctures.end());
    for (Int x = 1; x <= n; ++x)
      for (Int y = 1; y <= n; ++y) m[x][y] = (!e.with_leq || x <= y) && (x == y || !s.count(y));
  }

  std::vector<bool> image(const std::vector<bool>& a) const {
    std::vector<bool> out(n + 1);
    for (Int x = 1; x <= n; ++x)
      if (a[x])
        for (Int y = 1; y <= n; ++y) out[y] = out[y] || m[x][y];
    return out;
  }
  std::vector<bool> preimage(const std::vector<bool>& b) const {
    std::vector<bool> out(n + 1);
    for (Int y = 1; y <= n; ++y)
      if (b[y])
        for (Int x = 1; x <= n; ++x) out[x] = out[x] || m[x][y];
    return out;
  }
  std::vector<bool> sym_image(const std::vector<bool>& a) const {
    std::vector<bool> out(n + 1);
    for (Int x = 1; x <= n; ++x)
      if (a[x])
        for (Int y = 1; y <= n; ++y) out[y] = out[y] || (m[x][y] && m[y][x]);
    return out;
  }
};

std::vector<bool> bits(const CofSet& a, std::size_t n) {
  std::vector<bool> out(n + 1);
  for (Int x = 1; x <= n; ++x) out[x] = a.contains(x);
  return out;
}

// Agreement on {1..upto-1}.
bool agree(const std::vector<bool>& t, const CofSet& a, std::size_t upto) {
  for (Int x = 1; x < upto; ++x)
    if (t[x] != a.contains(x)) return false;
  return true;
}

CofSet random_cofset(std::mt19937_64& rng, Int range, bool allow_empty = true) {
  for (;;) {
    std::vector<Int> e;
    const std::size_t k = rng() % 5;
    for (std::size_t i = 0; i < k; ++i) e.push_back(1 + rng() % range);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    const CofSet c = (rng() & 1U) ? CofSet::cofinite(e) : CofSet::finite(e);
    if (allow_empty || !c.empty()) return c;
  }
}

SymEntourage random_entourage(std::mt19937_64& rng, Int bound) {
  std::vector<Int> s;
  for (Int i = 1; i <= bound; ++i)
    if (rng() % 3 == 0) s.push_back(i);
  return SymEntourage::make(rng() % 4 != 0, s);
}

}  // namespace

TEST_CASE("cofinite set algebra against a truncation") {
  std::mt19937_64 rng(51);
  const std::size_t n = 500;
  for (int k = 0; k < 1000; ++k) {
    const CofSet a = random_cofset(rng, 60), b = random_cofset(rng, 60);
    const auto ta = bits(a, n), tb = bits(b, n);
    std::vector<bool> u(n + 1), i(n + 1), d(n + 1), c(n + 1);
    for (Int x = 1; x <= n; ++x) {
      u[x] = ta[x] || tb[x];
      i[x] = ta[x] && tb[x];
      d[x] = ta[x] && !tb[x];
      c[x] = !ta[x];
    }
    CHECK(agree(u, a | b, n + 1));
    CHECK(agree(i, a & b, n + 1));
    CHECK(agree(d, a - b, n + 1));
    CHECK(agree(c, a.complement(), n + 1));
    CHECK(a.complement().complement() == a);
    CHECK((a | b).complement() == (a.complement() & b.complement()));
    CHECK((a & b).complement() == (a.complement() | b.complement()));
    CHECK((a | b).is_cofinite() == (a.is_cofinite() || b.is_cofinite()));
    CHECK(a.subset_of(a | b));
  }
  CHECK(CofSet::naturals().is_naturals());
  CHECK(CofSet::empty_set().empty());
  CHECK(CofSet::finite({}) != CofSet::cofinite({}));
  CHECK(CofSet::ray(3) == CofSet::cofinite({1, 2}));
  CHECK(CofSet::interval(2, 4) == CofSet::finite({2, 3, 4}));
}

TEST_CASE("closed-form images") {
  const SymEntourage leq = SymEntourage::make(true, {});
  CHECK(qu::nat::sym_image(leq, CofSet::finite({1})).is_naturals());
  CHECK(qu::nat::sym_preimage(leq, CofSet::cofinite({1, 5})).is_naturals());
  CHECK(qu::nat::sym_preimage(leq, CofSet::finite({3})) == CofSet::interval(1, 3));
  const SymEntourage e = SymEntourage::make(true, {2, 3});
  CHECK(qu::nat::sym_image(e, CofSet::finite({1})) == CofSet::cofinite({2, 3}));
  CHECK(agree(Trunc(e, 50).image(bits(CofSet::finite({1}), 50)), qu::nat::sym_image(e, CofSet::finite({1})), 50));
  // T_x^{-1}(a) is {x} when a ⊆ {x}.
  CHECK(qu::nat::sym_preimage(SymEntourage::make(false, {4}), CofSet::finite({4})) == CofSet::finite({4}));
  CHECK(qu::nat::sym_preimage(SymEntourage::make(false, {4}), CofSet::finite({4, 7})).is_naturals());
  CHECK_THROWS_AS(qu::nat::sym_image(leq, CofSet::empty_set()), qu::error);
  CHECK_THROWS_AS(qu::nat::sym_preimage(leq, CofSet::empty_set()), qu::error);
}

TEST_CASE("closed forms agree with explicit relations on truncations") {
  std::mt19937_64 rng(52);
  for (std::size_t n : {20, 50, 200}) {
    for (int k = 0; k < 150; ++k) {
      const SymEntourage e = random_entourage(rng, 12);
      const Trunc t(e, n);
      // Keep finite parts well inside the window so the truncated set still sees them.
      const CofSet a = random_cofset(rng, std::min<Int>(n / 2, 30), false);
      const auto ta = bits(a, n);
      CHECK(agree(t.image(ta), qu::nat::sym_image(e, a), n));
      CHECK(agree(t.preimage(ta), qu::nat::sym_preimage(e, a), n));
      CHECK(agree(t.sym_image(ta), qu::nat::sym_symmetric_image(e, a), n));
    }
  }
}

TEST_CASE("entourages form a filter base") {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 100; ++k) {
    const SymEntourage a = random_entourage(rng, 10), b = random_entourage(rng, 10);
    const SymEntourage c = a & b;
    for (Int x = 1; x <= 15; ++x) {
      CHECK(c.contains(x, x));
      for (Int y = 1; y <= 15; ++y) CHECK(c.contains(x, y) == (a.contains(x, y) && b.contains(x, y)));
    }
  }
}

TEST_CASE("filters") {
  const SymFilter g = SymFilter::gfilter();
  CHECK(g.contains(CofSet::cofinite({2, 3})));
  CHECK_FALSE(g.contains(CofSet::cofinite({1})));
  CHECK_FALSE(g.contains(CofSet::finite({1})));
  CHECK(SymFilter::cofinite().contains(CofSet::cofinite({1})));
  CHECK(SymFilter::principal(CofSet::finite({2})).contains(CofSet::finite({2, 5})));
  CHECK(g.intersection() == CofSet::finite({1}));
  CHECK_THROWS_AS(SymFilter::principal(CofSet::empty_set()), qu::error);
  CHECK_THROWS_AS(SymFilter::tails(CofSet::naturals()), qu::error);
}

TEST_CASE("U_F for the filter G") {
  const SymFilter g = SymFilter::gfilter();
  const SymEntourage leq = SymEntourage::make(true, {});
  const CofSet u = qu::nat::sym_u_sub_f(leq, g);
  CHECK(u.is_cofinite());
  CHECK(u.contains(1));
  CHECK(g.contains(u));
  CHECK(qu::nat::sym_u_sub_f(SymEntourage::make(true, {3}), SymFilter::principal(CofSet::naturals())).is_naturals());

  // Oracle: intersect E^{-1}(F_k) ∩ E(F_k) over F_k = {1} ∪ [k..N], k = 2..K,
  // and compare on {1..K-1}.
  std::mt19937_64 rng(54);
  const std::size_t n = 200, kmax = n / 2;
  for (int k = 0; k < 20; ++k) {
    const SymEntourage e = random_entourage(rng, 12);
    const Trunc t(e, n);
    std::vector<bool> acc(n + 1, true);
    for (std::size_t j = 2; j <= kmax; ++j) {
      const auto fk = bits(g.member(j), n);
      const auto im = t.image(fk), pre = t.preimage(fk);
      for (Int x = 1; x <= n; ++x) acc[x] = acc[x] && im[x] && pre[x];
    }
    const CofSet sym = qu::nat::sym_u_sub_f(e, g);
    CHECK(agree(acc, sym, kmax));
    CHECK(g.contains(sym));
  }
}

TEST_CASE("G is doubly stable but not U^s-stable") {
  const auto family = qu::nat::entourage_family(8);
  CHECK(family.size() == 512);
  const auto v = qu::nat::stability(SymFilter::gfilter(), family);
  CHECK(v.doubly_stable);
  CHECK(v.stable);
  CHECK(v.conj_stable);
  CHECK_FALSE(v.s_stable);
  CHECK(qu::nat::residue(SymFilter::gfilter(), CofSet::finite({1})) == SymFilter::cofinite());
}

TEST_CASE("the counterexample certificate") {
  const auto r = qu::nat::verify_contra({12, 200});
  CHECK(r.pass());
  CHECK(r.cases > 0);
  CHECK(r.violations == 0);
  CHECK_THROWS_AS(qu::nat::verify_contra({2, 200}), qu::error);
  CHECK_THROWS_AS(qu::nat::verify_contra({12, 40}), qu::error);
  CHECK(qu::nat::verify_contra({4, 16}).pass());
}
