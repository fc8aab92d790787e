#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "qu/generate.hpp"
#include "qu/spacefile.hpp"

using qu::PointSet;
using qu::Relation;

namespace {

PointSet S(std::size_t n, std::vector<std::size_t> e) { return PointSet::from_elements(n, e); }

Relation sierpinski() { return Relation::reflexive_from_pairs(2, {{0, 1}}); }

}  // namespace

TEST_CASE("point sets print 1-based and order by mask") {
  CHECK(S(4, {0, 2}).to_string() == "{1,3}");
  CHECK(PointSet(3).to_string() == "{}");
  CHECK(S(3, {0}) < S(3, {1}));
  CHECK(S(3, {0, 1}).mask() == 3);
  CHECK(PointSet::from_mask(3, 5) == S(3, {0, 2}));
  std::size_t count = 0;
  qu::for_each_nonempty_subset(4, [&](const PointSet&) { ++count; });
  CHECK(count == 15);
}

TEST_CASE("compose") {
  const Relation r = Relation::reflexive_from_pairs(3, {{0, 1}});
  const Relation s = Relation::reflexive_from_pairs(3, {{1, 2}});
  CHECK(compose(Relation::identity(3), r) == r);
  CHECK(compose(r, s).contains(0, 2));
  CHECK(compose(Relation::full(3), r) == Relation::full(3));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Relation a = oracle::random_relation(n, rng), b = oracle::random_relation(n, rng);
    CHECK(oracle::to_mat(compose(a, b)) == oracle::product(oracle::to_mat(a), oracle::to_mat(b)));
  }
}

TEST_CASE("compose is associative and inverse reverses it") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Relation a = oracle::random_relation(n, rng), b = oracle::random_relation(n, rng), c = oracle::random_relation(n, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(inverse(compose(a, b)) == compose(inverse(b), inverse(a)));
  }
}

TEST_CASE("inverse and symmetrize") {
  CHECK(inverse(Relation::identity(3)) == Relation::identity(3));
  CHECK(inverse(Relation::reflexive_from_pairs(2, {{0, 1}})) == Relation::reflexive_from_pairs(2, {{1, 0}}));
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const Relation r = oracle::random_relation(1 + rng() % 6, rng);
    CHECK(inverse(inverse(r)) == r);
    CHECK(oracle::to_mat(inverse(r)) == oracle::transpose(oracle::to_mat(r)));
  }
  const Relation sym = Relation::reflexive_from_pairs(3, {{0, 1}, {1, 0}});
  CHECK(symmetrize(sym) == sym);
  CHECK(symmetrize(sierpinski()) == Relation::identity(2));
  CHECK(symmetrize(Relation::full(3)) == Relation::full(3));
}

TEST_CASE("image and preimage") {
  const PointSet a = S(4, {1, 3});
  CHECK(Relation::identity(4).image(a) == a);
  CHECK(sierpinski().image(S(2, {0})) == S(2, {0, 1}));
  CHECK(sierpinski().image(PointSet(2)).empty());
  std::mt19937_64 rng(14);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Relation r = oracle::random_relation(n, rng);
    const PointSet b = PointSet::from_mask(n, rng() % (std::uint64_t{1} << n));
    CHECK(oracle::to_set(r.image(b)) == oracle::image(oracle::to_mat(r), oracle::to_set(b)));
    CHECK(oracle::to_set(r.preimage(b)) == oracle::image(oracle::transpose(oracle::to_mat(r)), oracle::to_set(b)));
  }
}

TEST_CASE("image of an intersection lies in the intersection of images") {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + rng() % 5;
    const qu::QUSpace s = oracle::random_space(n, rng);
    for (const auto& u : s.base())
      for (const auto& v : s.base())
        qu::for_each_nonempty_subset(n, [&](const PointSet& a) { CHECK((u & v).image(a).subset_of(u.image(a) & v.image(a))); });
  }
}

TEST_CASE("validate") {
  CHECK(qu::QUSpace::make(3, {Relation::identity(3)}).validation().valid());
  CHECK(qu::QUSpace::make(3, {Relation::reflexive_from_pairs(3, {{0, 1}}), Relation::reflexive_from_pairs(3, {{1, 2}})})
            .min_entourage() == Relation::identity(3));

  const Relation bad = Relation::from_pairs(3, {{0, 0}, {2, 2}});
  std::vector<Relation> base{bad};
  const auto rep = qu::validate(qu::GroundSet{3, {}}, base);
  CHECK(rep.has(qu::IssueKind::non_reflexive));
  CHECK(rep.summary().find("non-reflexive") != std::string::npos);

  std::vector<Relation> path{Relation::reflexive_from_pairs(3, {{0, 1}, {1, 2}})};
  CHECK(qu::validate(qu::GroundSet{3, {}}, path).has(qu::IssueKind::non_transitive_min));
  CHECK_THROWS_AS(qu::QUSpace::make(3, path), qu::invalid_space);

  std::vector<Relation> repairable{bad};
  qu::ValidateOptions opt;
  opt.repair_reflexive = true;
  const auto fixed = qu::validate(qu::GroundSet{3, {}}, repairable, opt);
  CHECK(fixed.valid());
  CHECK(fixed.reflexive_repairs == std::vector<std::size_t>{0});
  CHECK(repairable[0].is_reflexive());

  std::vector<Relation> none;
  CHECK(qu::validate(qu::GroundSet{2, {}}, none).has(qu::IssueKind::empty_base));
  std::vector<Relation> dup{Relation::identity(2)};
  CHECK(qu::validate(qu::GroundSet{2, {"a", "a"}}, dup).has(qu::IssueKind::bad_labels));
}

TEST_CASE("closures on the Sierpinski space") {
  const auto s = qu::QUSpace::make(2, {sierpinski()});
  CHECK(s.closure(S(2, {0}), qu::Direction::forward) == S(2, {0}));
  CHECK(s.closure(S(2, {0}), qu::Direction::conjugate) == S(2, {0, 1}));
  CHECK(s.closure(s.all(), qu::Direction::forward) == s.all());
  CHECK(s.double_closure(S(2, {0})) == S(2, {0}));
  CHECK(s.double_closure(S(2, {1})) == S(2, {1}));
}

// Neighbourhood oracle: x is in the forward closure of a iff every base
// entourage's V(x) meets a.
TEST_CASE("closure agrees with the neighbourhood definition") {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const qu::QUSpace s = oracle::random_space(n, rng);
    qu::for_each_nonempty_subset(n, [&](const PointSet& a) {
      for (std::size_t x = 0; x < n; ++x) {
        bool fwd = true, bwd = true;
        for (const auto& v : s.base()) {
          fwd = fwd && v.row(x).intersects(a);
          bwd = bwd && v.preimage(s.point(x)).intersects(a);
        }
        CHECK(s.closure(a, qu::Direction::forward).contains(x) == fwd);
        CHECK(s.closure(a, qu::Direction::conjugate).contains(x) == bwd);
      }
    });
  }
}

TEST_CASE("double closure is a closure operator and contains the one-sided closed sets") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const qu::QUSpace s = oracle::random_space(n, rng);
    qu::for_each_nonempty_subset(n, [&](const PointSet& a) {
      const PointSet d = s.double_closure(a);
      CHECK(a.subset_of(d));
      CHECK(s.double_closure(d) == d);
      for (auto dir : {qu::Direction::forward, qu::Direction::conjugate}) {
        CHECK(s.closure(s.closure(a, dir), dir) == s.closure(a, dir));
        CHECK(s.is_doubly_closed(s.closure(a, dir)));
      }
      qu::for_each_nonempty_subset(n, [&](const PointSet& b) {
        if (a.subset_of(b)) CHECK(d.subset_of(s.double_closure(b)));
      });
    });
  }
}

TEST_CASE("singletons are doubly closed in T0 spaces") {
  for (const auto& e : qu::catalogue(3)) {
    if (!e.space.is_t0()) continue;
    for (std::size_t x = 0; x < e.space.size(); ++x) CHECK(e.space.is_doubly_closed(e.space.point(x)));
  }
}

TEST_CASE("union of doubly closed sets can fail to be doubly closed") {
  bool found = false;
  for (const auto& e : qu::catalogue(3)) {
    const auto& s = e.space;
    if (s.size() != 3) continue;
    qu::for_each_nonempty_subset(3, [&](const PointSet& a) {
      qu::for_each_nonempty_subset(3, [&](const PointSet& b) {
        if ((s.double_closure(a) | s.double_closure(b)) != s.double_closure(a | b)) found = true;
      });
    });
  }
  CHECK(found);
}

TEST_CASE("T0 classes") {
  CHECK(qu::QUSpace::make(3, {Relation::identity(3)}).t0_classes().size() == 3);
  const auto full = qu::QUSpace::make(2, {Relation::full(2)});
  REQUIRE(full.t0_classes().size() == 1);
  CHECK(full.t0_classes()[0] == S(2, {0, 1}));
  CHECK(qu::QUSpace::make(2, {sierpinski()}).is_t0());
  const auto q = qu::t0_quotient(full);
  CHECK(q.size() == 1);
  CHECK(q.is_t0());
}

TEST_CASE("caps parse") {
  const auto c = qu::Caps::parse("lift=8,family=10");
  CHECK(c.ground == 16);
  CHECK(c.lift == 8);
  CHECK(c.family_log2 == 10);
  CHECK_THROWS_AS(qu::Caps::parse("lift=x"), qu::error);
  CHECK_THROWS_AS(qu::Caps::parse("speed=3"), qu::error);
  CHECK(qu::Caps::parse(c.to_string()).lift == 8);
}

TEST_CASE("space files round-trip") {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 50; ++k) {
    const qu::QUSpace s = oracle::random_space(1 + rng() % 6, rng);
    CHECK(qu::parse_space(qu::serialize(s)) == s);
  }
  const auto labelled = qu::parse_space("points 2\nlabels a b\nrelation\n1 2\n");
  CHECK(labelled.ground().labels == std::vector<std::string>{"a", "b"});
  CHECK(qu::parse_space(qu::serialize(labelled)) == labelled);
}

TEST_CASE("space file parsing repairs diagonals and names bad lines") {
  const auto s = qu::parse_space("# demo\npoints 2\nrelation\n1 2  # a pair\n");
  CHECK(s.validation().reflexive_repairs.size() == 1);
  CHECK(s.min_entourage() == sierpinski());

  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      qu::parse_space(text);
    } catch (const qu::parse_error& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("points 2\nrelation\n1 3\n") == 3);
  CHECK(line_of("points 2\nrelation\n1\n") == 3);
  CHECK(line_of("relation\n") == 1);
  CHECK(line_of("points 2\n\n1 2\n") == 3);
  CHECK(line_of("points x\n") == 1);
  CHECK(line_of("points 0\n") == 1);
  CHECK(line_of("points 2\nlabels a\n") == 2);
  CHECK_THROWS_AS(qu::parse_space("points 3\nrelation\n1 2\n2 3\n"), qu::invalid_space);
}

TEST_CASE("point files") {
  const auto pts = qu::parse_points("0\n1/2\n# note\n-3/4\n");
  REQUIRE(pts.size() == 3);
  CHECK(pts[2] == qu::Rational(-3, 4));
  CHECK(qu::parse_points(qu::serialize_points(pts)) == pts);
  try {
    qu::parse_points("1\n2/0\n");
    FAIL("expected a parse error");
  } catch (const qu::parse_error& e) {
    CHECK(e.line() == 2);
  }
}
