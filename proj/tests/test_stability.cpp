#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "qu/generate.hpp"
#include "qu/stability.hpp"

using qu::PFilter;
using qu::PointSet;
using qu::QUSpace;
using qu::Relation;
using qu::StabilitySpace;

namespace {

PointSet S(std::size_t n, std::vector<std::size_t> e) { return PointSet::from_elements(n, e); }
PFilter F(std::size_t n, std::vector<std::size_t> e) { return PFilter(S(n, std::move(e))); }

QUSpace sierpinski() { return QUSpace::make(2, {Relation::reflexive_from_pairs(2, {{0, 1}})}); }
QUSpace chain3() { return QUSpace::make(3, {Relation::reflexive_from_pairs(3, {{0, 1}, {0, 2}, {1, 2}})}); }

std::vector<QUSpace> sample(std::uint64_t seed, std::size_t count, std::size_t max_n = 4) {
  std::mt19937_64 rng(seed);
  std::vector<QUSpace> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(oracle::random_space(1 + rng() % max_n, rng));
  return out;
}

// U_+ from the definition: the intersection of U(F') over members F' ⊇ gen_f lies in g.
bool plus_oracle(const Relation& u, const PFilter& f, const PFilter& g) {
  const auto m = oracle::to_mat(u);
  const std::size_t n = u.size();
  oracle::Set acc(n, true);
  for (const auto& fp : oracle::subsets(n))
    if (oracle::subset(oracle::to_set(f.gen()), fp)) acc = oracle::meet(acc, oracle::image(m, fp));
  return oracle::subset(oracle::to_set(g.gen()), acc);
}

bool minus_oracle(const Relation& u, const PFilter& f, const PFilter& g) {
  const auto mt = oracle::transpose(oracle::to_mat(u));
  const std::size_t n = u.size();
  oracle::Set acc(n, true);
  for (const auto& gp : oracle::subsets(n))
    if (oracle::subset(oracle::to_set(g.gen()), gp)) acc = oracle::meet(acc, oracle::image(mt, gp));
  return oracle::subset(oracle::to_set(f.gen()), acc);
}

}  // namespace

TEST_CASE("discrete base: U_D is equality of generators") {
  const auto sd = StabilitySpace::build(QUSpace::make(3, {Relation::identity(3)}));
  REQUIRE(sd.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      CHECK(sd.plus()[0].contains(i, j) == sd.point(j).gen().subset_of(sd.point(i).gen()));
      CHECK(sd.d()[0].contains(i, j) == (i == j));
    }
  const auto q = qu::t0_stability_space(sd);
  CHECK(q.points.size() == 7);
}

TEST_CASE("U_+ and U_- match their definitions") {
  for (const auto& s : sample(41, 40)) {
    const auto sd = StabilitySpace::build(s);
    CHECK(sd.size() == (std::size_t{1} << s.size()) - 1);
    for (std::size_t k = 0; k < s.filter_base().size(); ++k) {
      const Relation& u = s.filter_base()[k];
      for (std::size_t i = 0; i < sd.size(); ++i)
        for (std::size_t j = 0; j < sd.size(); ++j) {
          const bool p = plus_oracle(u, sd.point(i), sd.point(j)), m = minus_oracle(u, sd.point(i), sd.point(j));
          CHECK(sd.plus()[k].contains(i, j) == p);
          CHECK(sd.minus()[k].contains(i, j) == m);
          CHECK(sd.d()[k].contains(i, j) == (p && m));
        }
      CHECK(sd.d()[k].is_reflexive());
    }
  }
}

TEST_CASE("stability axioms, conjugation and the oplus sandwich") {
  for (const auto& s : sample(42, 60)) {
    const auto sd = StabilitySpace::build(s);
    CHECK(qu::checks::stability_axioms(sd).pass());
    CHECK(qu::checks::conjugation(sd).pass());
    CHECK(qu::checks::oplus_sandwich(sd).pass());
  }
  for (const auto& f : qu::all_filters(3))
    for (const auto& g : qu::all_filters(3)) CHECK(qu::oplus_related(Relation::full(3), f, g));
}

TEST_CASE("Cauchy pairs lie in U_oplus and U_ominus") {
  for (const auto& s : sample(43, 40)) {
    for (const auto& f : qu::all_filters(s.size()))
      for (const auto& g : qu::all_filters(s.size())) {
        if (!qu::is_cauchy_pair(s, f, g)) continue;
        for (const auto& u : s.filter_base()) {
          CHECK(qu::oplus_related(u, f, g));
          CHECK(qu::ominus_related(u, f, g));
        }
      }
  }
}

TEST_CASE("hyperspace embeds into the stability space") {
  const auto s = chain3();
  const auto sd = StabilitySpace::build(s);
  const auto h = qu::HyperSpace::lift(s);
  // Both sides computed independently over the full 7 x 7 table.
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b)
      CHECK(h.space().min_entourage().contains(a, b) ==
            sd.space().min_entourage().contains(sd.index_of(PFilter(h.point(a))), sd.index_of(PFilter(h.point(b)))));
  for (const auto& x : sample(44, 40)) CHECK(qu::checks::embed_hyper(StabilitySpace::build(x)).pass());
}

TEST_CASE("U_D equivalence") {
  const auto s = sierpinski();
  CHECK(qu::ud_equivalent(s, F(2, {1}), F(2, {1})));
  CHECK_FALSE(qu::ud_equivalent(s, F(2, {1}), F(2, {0, 1})));
  for (const auto& x : sample(45, 40)) {
    const auto sd = StabilitySpace::build(x);
    for (const auto& f : sd.points()) CHECK(qu::ud_equivalent(x, f, PFilter(x.double_closure(f.gen()))));
    CHECK(qu::checks::lemma_rep(sd).pass());
  }
}

TEST_CASE("generalized Cauchy pairs read off the min-entourage of S_D") {
  const auto sd = StabilitySpace::build(sierpinski());
  for (const auto& f : sd.points()) CHECK(qu::is_generalized_cauchy_pair(sd, f, f));
}

TEST_CASE("quotient stability space") {
  for (const auto& e : qu::catalogue(3)) {
    const auto sd = StabilitySpace::build(e.space);
    const auto q = qu::t0_stability_space(sd);
    CHECK(q.space.is_t0());
    CHECK(q.points.size() == qu::hyper_t0_representatives(e.space).size());
  }
}

TEST_CASE("bicompletion") {
  const auto disc = qu::bicompletion(QUSpace::make(3, {Relation::identity(3)}));
  CHECK(disc.points.size() == 3);
  CHECK(disc.embedding == std::vector<std::size_t>{0, 1, 2});

  const auto b = qu::bicompletion(sierpinski());
  REQUIRE(b.points.size() == 2);
  std::vector<std::size_t> e = b.embedding;
  CHECK(qu::map_relation(sierpinski().min_entourage(), e, 2) == b.space.min_entourage());

  CHECK_THROWS_AS(qu::bicompletion(QUSpace::make(2, {Relation::full(2)})), qu::error);

  for (const auto& x : sample(46, 60)) {
    if (!x.is_t0()) continue;
    CHECK(qu::checks::bicompletion_iso(x).pass());
    CHECK(qu::checks::prop_bc(x).pass());
  }
}

TEST_CASE("lemma major, main theorem, quotient and boundedness") {
  for (const auto& s : qu::random_spaces(47, 200, 4, false)) {
    const auto sd = StabilitySpace::build(s);
    CHECK(qu::checks::lemma_major(sd).pass());
    CHECK(qu::checks::theorem_main(sd).pass());
    CHECK(qu::checks::quotient(sd).pass());
    CHECK(qu::checks::boundedness(sd).pass());
  }
  const auto disc = StabilitySpace::build(QUSpace::make(3, {Relation::identity(3)}));
  CHECK(qu::t0_stability_space(disc).points.size() == 7);
}

TEST_CASE("propositions on filters") {
  for (const auto& s : sample(48, 40)) {
    const auto sd = StabilitySpace::build(s);
    CHECK(qu::checks::prop_tres(sd).pass());
    if (s.is_t0()) CHECK(qu::checks::prop_bchar(s).pass());
    if (s.is_t0() && s.is_uniform()) CHECK(qu::checks::prop_unifor(s).pass());
  }
  const auto disc = QUSpace::make(3, {Relation::identity(3)});
  CHECK(qu::checks::prop_unifor(disc).pass());
  CHECK_THROWS_AS(qu::checks::prop_unifor(sierpinski()), qu::error);
}

TEST_CASE("dense subsets") {
  const auto indisc = QUSpace::make(2, {Relation::full(2)});
  const auto r = qu::checks::lemma_dense(indisc, S(2, {0}));
  CHECK(r.pass());
  CHECK(qu::checks::lemma_dense(sierpinski(), sierpinski().all()).pass());
  CHECK_THROWS_AS(qu::checks::lemma_dense(sierpinski(), S(2, {0})), qu::error);

  std::size_t proper = 0;
  for (const auto& s : sample(49, 100)) {
    if (s.is_t0()) continue;
    qu::for_each_nonempty_subset(s.size(), [&](const PointSet& a) {
      if (!s.min_symmetric().image(a).is_full() || a.is_full()) return;
      ++proper;
      CHECK(qu::checks::lemma_dense(s, a).pass());
    });
  }
  CHECK(proper > 0);
}

TEST_CASE("f_D") {
  const auto x = chain3();
  const auto y = sierpinski();
  const auto id = qu::lift_map_fD({0, 1, 2}, x, x);
  CHECK(id.continuous);
  const auto sdx = StabilitySpace::build(x);
  for (std::size_t i = 0; i < sdx.size(); ++i) CHECK(id.images[i] == sdx.point(i));
  const auto c = qu::lift_map_fD({1, 1, 1}, x, y);
  CHECK(c.continuous);
  for (const auto& f : c.images) CHECK(f == F(2, {1}));
  CHECK_FALSE(qu::lift_map_fD({1, 0, 0}, x, y).continuous);
  CHECK_THROWS_AS(qu::lift_map_fD({0, 1}, x, y), qu::error);

  // Monotone maps between chains: verdict against (f x f)(M_X) ⊆ M_Y by hand.
  std::mt19937_64 rng(50);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    std::vector<std::pair<std::size_t, std::size_t>> px, py;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) px.emplace_back(i, j);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) py.emplace_back(i, j);
    const auto cx = QUSpace::make(n, {Relation::reflexive_from_pairs(n, px)});
    const auto cy = QUSpace::make(m, {Relation::reflexive_from_pairs(m, py)});
    std::vector<std::size_t> f(n);
    for (auto& v : f) v = rng() % m;
    bool mono = true;
    for (std::size_t i = 0; i + 1 < n; ++i) mono = mono && f[i] <= f[i + 1];
    CHECK(qu::lift_map_fD(f, cx, cy).continuous == mono);
  }
  CHECK(qu::checks::functor_fD(x, y).pass());
  CHECK(qu::checks::functor_fD(y, x).pass());
}
