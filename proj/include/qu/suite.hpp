#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bei.hpp"
#include "generate.hpp"
#include "natline.hpp"
#include "qpm.hpp"
#include "report.hpp"
#include "spacefile.hpp"
#include "stability.hpp"

namespace qu {

using SpaceCheck = std::function<Findings(const QUSpace&, const Caps&)>;

namespace detail {
// Bicompletion-based checks need T0; a non-T0 input is replaced by its quotient.
inline Findings on_t0(const QUSpace& s, const std::function<Findings(const QUSpace&)>& fn) {
  if (s.is_t0()) return fn(s);
  Findings r = fn(t0_quotient(s));
  r.note("run on the T0 quotient");
  return r;
}

inline Findings dense_sets(const QUSpace& s) {
  Findings r;
  for_each_nonempty_subset(s.size(), [&](const PointSet& a) {
    if (s.min_symmetric().image(a).is_full()) r.merge(checks::lemma_dense(s, a), a.to_string());
  });
  return r;
}

inline Findings bei_case(const QUSpace& s, const Caps& caps) {
  Findings r;
  try {
    bei_entourage(s);
  } catch (const hypothesis_violation& v) {
    const std::size_t x = v.point();
    const PointSet single = s.point(x);
    r.expect(s.min_entourage().row(x) != single && s.min_entourage().preimage(single) != single,
             [&] { return json{{"named_point", x + 1}, {"failed", "named point satisfies the hypothesis"}}; });
    r.note("hypothesis violated; witness point named");
    return r;
  }
  r.merge(verify_bei(s, caps));
  return r;
}
}  // namespace detail

/// Checks that run on one finite space, keyed by check id.
inline const std::map<std::string, SpaceCheck>& space_checks() {
  static const std::map<std::string, SpaceCheck> table = [] {
    std::map<std::string, SpaceCheck> t;
    auto sd = [](Findings (*fn)(const StabilitySpace&)) {
      return [fn](const QUSpace& s, const Caps& c) { return fn(StabilitySpace::build(s, c)); };
    };
    t["axioms.hyper"] = [](const QUSpace& s, const Caps& c) {
      const HyperSpace h = HyperSpace::lift(s, c);
      return checks::lifted_axioms(s.filter_base(), h.space().base(), "U_H");
    };
    t["axioms.stability"] = sd(&checks::stability_axioms);
    t["lemma.subs"] = [](const QUSpace& s, const Caps&) { return checks::lemma_subs(s); };
    t["lemma.zwei"] = [](const QUSpace& s, const Caps&) { return checks::lemma_zwei(s); };
    t["lemma.drei"] = [](const QUSpace& s, const Caps&) { return checks::lemma_drei(s); };
    t["corollary.base"] = [](const QUSpace& s, const Caps&) { return checks::corollary_base(s); };
    t["lemma.totally-bounded"] = [](const QUSpace& s, const Caps&) { return checks::totally_bounded_lemma(s); };
    t["completeness"] = [](const QUSpace& s, const Caps&) { return checks::completeness(s); };
    t["hyper.classes"] = [](const QUSpace& s, const Caps& c) { return checks::hyper_classes(HyperSpace::lift(s, c)); };
    t["kunzi-ryser"] = [](const QUSpace& s, const Caps& c) { return checks::kunzi_ryser(s, c); };
    t["precompactness"] = [](const QUSpace& s, const Caps& c) { return checks::precompactness(s, c); };
    t["conjugation"] = [](const QUSpace& s, const Caps& c) { return checks::conjugation(StabilitySpace::build(s, c), c); };
    t["oplus.sandwich"] = sd(&checks::oplus_sandwich);
    t["remark.categ"] = sd(&checks::embed_hyper);
    t["lemma.rep"] = sd(&checks::lemma_rep);
    t["quotient"] = sd(&checks::quotient);
    t["lemma.major"] = sd(&checks::lemma_major);
    t["theorem.main"] = sd(&checks::theorem_main);
    t["boundedness.sd"] = sd(&checks::boundedness);
    t["prop.tres"] = [](const QUSpace& s, const Caps& c) { return checks::prop_tres(StabilitySpace::build(s, c), c); };
    t["bicompletion.iso"] = [](const QUSpace& s, const Caps&) {
      return detail::on_t0(s, [](const QUSpace& q) { return checks::bicompletion_iso(q); });
    };
    t["prop.bc"] = [](const QUSpace& s, const Caps& c) {
      return detail::on_t0(s, [&](const QUSpace& q) { return checks::prop_bc(q, c); });
    };
    t["prop.bchar"] = [](const QUSpace& s, const Caps& c) {
      return detail::on_t0(s, [&](const QUSpace& q) { return checks::prop_bchar(q, c); });
    };
    t["prop.unifor"] = [](const QUSpace& s, const Caps& c) {
      if (!s.is_uniform()) throw not_applicable("space is not uniform");
      return detail::on_t0(s, [&](const QUSpace& q) { return checks::prop_unifor(q, c); });
    };
    t["lemma.dense"] = [](const QUSpace& s, const Caps&) { return detail::dense_sets(s); };
    t["example.bei"] = [](const QUSpace& s, const Caps& c) { return detail::bei_case(s, c); };
    return t;
  }();
  return table;
}

/// Accepts `lemma:major` as well as `lemma.major`.
inline std::string normalize_check_id(std::string id) {
  std::replace(id.begin(), id.end(), ':', '.');
  return id;
}

/// One check on one space.
inline CheckReport run_space_check(const std::string& check, const QUSpace& s, const Caps& caps) {
  const std::string id = normalize_check_id(check);
  const auto it = space_checks().find(id);
  if (it == space_checks().end()) throw error("unknown check '" + check + "'");
  json bounds{{"caps", caps.to_string()}, {"points", s.size()}};
  return run_check(id, space_hash(s), bounds, [&] { return it->second(s, caps); });
}

struct Corpus {
  std::string name;
  std::vector<std::string> labels;
  std::vector<QUSpace> spaces;
  std::string hash;
};

inline Corpus make_corpus(std::string name, std::vector<std::string> labels, std::vector<QUSpace> spaces) {
  std::string all;
  for (const auto& s : spaces) all += serialize(s) + "--\n";
  return Corpus{std::move(name), std::move(labels), std::move(spaces), sha256_hex(all)};
}

/// 200 random spaces on 1..5 points.
inline Corpus axiom_corpus(std::uint64_t seed, const Caps& caps) {
  auto sp = random_spaces(seed, 200, 5, false, caps);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sp.size(); ++i) labels.push_back("random#" + std::to_string(i));
  return make_corpus("random<=5", std::move(labels), std::move(sp));
}

/// The generator catalogue on 1..4 points plus 200 random 5-point spaces.
inline Corpus lemma_corpus(std::uint64_t seed, const Caps& caps) {
  std::vector<std::string> labels;
  std::vector<QUSpace> sp;
  for (auto& e : catalogue(4)) {
    labels.push_back(e.name);
    sp.push_back(std::move(e.space));
  }
  const auto rnd = random_spaces(derive_seed(seed, 5), 200, 5, true, caps);
  for (std::size_t i = 0; i < rnd.size(); ++i) {
    labels.push_back("random5#" + std::to_string(i));
    sp.push_back(rnd[i]);
  }
  return make_corpus("catalogue<=4+random5", std::move(labels), std::move(sp));
}

/// Runs a registered check over a corpus and folds the outcomes into one report.
inline CheckReport corpus_report(const std::string& id, const Corpus& c, const Caps& caps, std::uint64_t seed) {
  const SpaceCheck& fn = space_checks().at(id);
  json bounds{{"caps", caps.to_string()}, {"corpus", c.name}, {"seed", seed}, {"spaces", c.spaces.size()}};
  return run_check(id, c.hash, bounds, [&] {
    Findings all;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < c.spaces.size(); ++i) {
      try {
        all.merge(fn(c.spaces[i], caps), c.labels[i]);
      } catch (const not_applicable&) {
        ++skipped;
      } catch (const error& e) {
        all.fail(json{{"context", c.labels[i]}, {"error", e.what()}});
      }
    }
    if (skipped) all.note("not applicable on " + std::to_string(skipped) + " spaces");
    return all;
  });
}

/// Checks over pairs (x, y) of small catalogue spaces and every map x -> y.
inline CheckReport pair_report(const std::string& id, const Caps& caps) {
  std::vector<CatalogueEntry> small = catalogue(2);
  for (auto& e : catalogue(3))
    if (e.space.size() == 3 && e.space.base().size() == 1) small.push_back(std::move(e));
  std::string all;
  for (const auto& e : small) all += serialize(e.space) + "--\n";
  json bounds{{"caps", caps.to_string()},
              {"corpus", "pairs from the catalogue on <=2 points and single-generator 3-point spaces"},
              {"spaces", small.size()}};
  return run_check(id, sha256_hex(all), bounds, [&] {
    Findings r;
    for (const auto& x : small)
      for (const auto& y : small) {
        const Findings f = id == "functor.hyper" ? checks::hyper_functoriality(x.space, y.space, caps)
                                                  : checks::functor_fD(x.space, y.space, caps);
        r.merge(f, x.name + " -> " + y.name);
      }
    return r;
  });
}

inline const std::vector<std::string>& finite_check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : space_checks()) v.push_back(k);
    return v;
  }();
  return ids;
}

inline std::vector<CheckReport> finite_suite(std::uint64_t seed, const Caps& caps) {
  std::vector<CheckReport> out;
  const Corpus ax = axiom_corpus(seed, caps);
  const Corpus lc = lemma_corpus(seed, caps);
  for (const auto& id : finite_check_ids()) {
    if (id == "axioms.hyper" || id == "axioms.stability") out.push_back(corpus_report(id, ax, caps, seed));
    else out.push_back(corpus_report(id, lc, caps, seed));
  }
  out.push_back(pair_report("functor.hyper", caps));
  out.push_back(pair_report("functor.fD", caps));
  return out;
}

inline CheckReport contra_report(const nat::ContraBounds& b) {
  json bounds{{"bound_s", b.bound_s}, {"bound_n", b.bound_n}};
  const std::string hash = sha256_hex("contra bound_s=" + std::to_string(b.bound_s) + " bound_n=" + std::to_string(b.bound_n));
  return run_check("example.contra", hash, bounds, [&] { return nat::verify_contra(b); });
}

inline std::vector<CheckReport> symbolic_suite() { return {contra_report(nat::ContraBounds{})}; }

namespace detail {
inline Rational random_rational(std::mt19937_64& rng, std::int64_t num, std::int64_t den) {
  const auto p = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * num + 1)) - num;
  const auto q = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den)) + 1;
  return Rational(p, q);
}

inline std::vector<Rational> grid(const Rational& step, std::size_t count) {
  std::vector<Rational> g;
  for (std::size_t i = 0; i < count; ++i) g.push_back(step * static_cast<long long>(i));
  return g;
}

inline std::string points_hash(const std::vector<Rational>& pts) { return sha256_hex(serialize_points(pts)); }
}  // namespace detail

/// s(x, y) on literal cases, one "x y s(x,y)" triple per entry.
inline Findings sorgenfrey_table() {
  static const char* const cases[] = {
      "0 1/2 1/2", "1/2 0 1", "0 0 0", "1 1 0", "-1 0 1",
      "0 -1 1", "0 1 1", "1 0 1", "0 2 2", "2 0 1",
      "1/3 1/2 1/6", "1/2 1/3 1", "-1/2 1/2 1", "1/2 -1/2 1", "0 3/2 3/2",
      "3/2 0 1", "7/8 1 1/8", "1 7/8 1", "-3 -2 1", "-2 -3 1",
      "-1 -2 1", "10/3 -15/2 1", "-19/7 3 40/7", "-17/4 13/6 77/12", "-1 -14/5 1",
      "-7 -4/5 31/5", "-8/3 -1/5 37/15", "10/3 -5/2 1", "1 -9/4 1", "2 -3 1",
      "-4 16/5 36/5", "3 6/7 1", "18/5 7/8 1", "-5/2 -1/5 23/10", "-9 -9/4 27/4",
      "4 13/8 1", "1/3 -4 1", "3/2 5/2 1", "-1 2/7 9/7", "17/6 5 13/6",
      "0 -17/4 1", "-3/4 -13/6 1", "-9/5 9 54/5", "-3 -3 0", "0 3 3",
      "-1/2 8/5 21/10", "-12/5 4/3 56/15", "1 3 2", "3 1/2 1", "-1 2 3",
  };
  Findings r;
  for (const char* c : cases) {
    std::istringstream in(c);
    std::string x, y, e;
    in >> x >> y >> e;
    const Rational got = sorgenfrey(parse_rational(x), parse_rational(y));
    r.expect(got == parse_rational(e), [&] { return json{{"x", x}, {"y", y}, {"expected", e}, {"got", to_string(got)}}; });
  }
  return r;
}

/// s^s(x, y) = max(|x - y|, 1) on `count` random pairs with x != y.
inline Findings sorgenfrey_symmetric(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  Findings r;
  while (r.cases < count) {
    const Rational x = detail::random_rational(rng, 64, 16), y = detail::random_rational(rng, 64, 16);
    if (x == y) continue;
    const QPSpace ss = symmetrize(QPSpace::sorgenfrey_space({x, y}));
    const Rational oracle = std::max(Rational(abs(x - y)), Rational(1));
    r.expect(ss.d(0, 1) == oracle && ss.d(1, 0) == oracle && ss.is_symmetric(),
             [&] { return json{{"x", to_string(x)}, {"y", to_string(y)}, {"got", to_string(ss.d(0, 1))}}; });
  }
  return r;
}

/// Convergent sequences b_m -> y: |b_m - y| = 2^{-n} q_m / (m + 1) with
/// random signs and q_m in (0, 1], long enough to reach 2^{-n-4}.
inline std::vector<std::pair<Rational, std::vector<Rational>>> cover_fact_cases(std::uint64_t seed, std::size_t count,
                                                                               std::vector<int>* ns) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Rational, std::vector<Rational>>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Rational y = detail::random_rational(rng, 32, 8);
    const int n = static_cast<int>(rng() % 5);
    const std::size_t len = 16 + rng() % 48;
    std::vector<Rational> seq;
    for (std::size_t m = 1; m <= len; ++m) {
      const Rational q(static_cast<long long>(1 + rng() % 16), 16);
      const Rational delta = pow2(-n) * q / static_cast<long long>(m + 1);
      seq.push_back((rng() & 1U) ? Rational(y + delta) : Rational(y - delta));
    }
    if (i % 10 == 0) seq.push_back(y);
    std::shuffle(seq.begin(), seq.end(), rng);
    out.emplace_back(y, std::move(seq));
    if (ns) ns->push_back(n);
  }
  return out;
}

inline Findings cover_fact_suite(std::uint64_t seed, std::size_t count) {
  std::vector<int> ns;
  const auto cases = cover_fact_cases(seed, count, &ns);
  Findings r;
  std::size_t samples = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const CoverFact cf = cover_fact_check(cases[i].first, cases[i].second, ns[i]);
    samples += cf.samples;
    r.expect(cf.covered(), [&] {
      json w{{"y", to_string(cases[i].first)}, {"n", ns[i]}};
      if (!cf.uncovered_forward.empty()) w["uncovered_forward"] = to_string(cf.uncovered_forward.front());
      if (!cf.uncovered_backward.empty()) w["uncovered_backward"] = to_string(cf.uncovered_backward.front());
      return w;
    });
  }
  r.note("sample points: " + std::to_string(samples));
  return r;
}

/// Descending chains of interval sets with their names.
inline std::vector<std::pair<std::string, std::vector<IntervalSet>>> fn_catalogue() {
  const Rational h(1, 2), q(1, 4), e(1, 8);
  using I = Interval;
  return {
      {"{0}", {IntervalSet{I::point(0)}}},
      {"[0,1]", {IntervalSet{I::closed(0, 1)}}},
      {"[0,1]>[0,1/2]>[0,1/4]", {IntervalSet{I::closed(0, 1)}, IntervalSet{I::closed(0, h)}, IntervalSet{I::closed(0, q)}}},
      {"]0,1[>]0,1/2[", {IntervalSet{I::open(0, 1)}, IntervalSet{I::open(0, h)}}},
      {"]0,1[u]1,2[", {IntervalSet{I::open(0, 1), I::open(1, 2)}}},
      {"[0,1/2[u]1/2,1]", {IntervalSet{I::closed_open(0, h), I::open_closed(h, 1)}}},
      {"[0,1]u[3/2,2]>[1/2,1]u[3/2,7/4]",
       {IntervalSet{I::closed(0, 1), I::closed(Rational(3, 2), 2)}, IntervalSet{I::closed(h, 1), I::closed(Rational(3, 2), Rational(7, 4))}}},
      {"[0,1[>{0,1/8,1/4}", {IntervalSet{I::closed_open(0, 1)}, IntervalSet::points({0, e, q})}},
      {"]-inf,0]>]-inf,-1]", {IntervalSet{I{{0, false, true}, {0, true}}}, IntervalSet{I{{0, false, true}, {-1, true}}}}},
      {"]0,1/2]u[1,+inf[", {IntervalSet{I::open_closed(0, h), I{{1, true}, {0, false, true}}}}},
  };
}

inline Findings fn_suite() {
  Findings r;
  for (const auto& [name, chain] : fn_catalogue()) r.merge(checks::fn_chain(chain), name);
  return r;
}

inline Findings double_closure_suite() {
  Findings r;
  const auto g = detail::grid(Rational(1, 4), 9);  // 0, 1/4, ..., 2
  const QPSpace s = QPSpace::sorgenfrey_space(g);
  PointSet low(g.size()), both(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 0 && g[i] < 1) low.insert(i), both.insert(i);
    if (g[i] > 1 && g[i] < 2) both.insert(i);
  }
  const std::size_t one = 4;
  r.expect(double_closure_metric(s, both).contains(one), [] { return json{{"failed", "1 not in the double closure of the union"}}; });
  r.expect(double_closure_metric(s, low) == low, [&] {
    return json{{"failed", "grid trace of ]0,1[ not doubly closed"}, {"got", double_closure_metric(s, low).to_string()}};
  });
  r.expect(double_closure_metric(s, s.all()) == s.all(), [] { return json{{"failed", "whole grid"}}; });
  return r;
}

inline Findings eps_net_suite() {
  Findings r;
  const QPSpace s = QPSpace::sorgenfrey_space(detail::grid(Rational(1, 8), 8));
  for (const Rational eps : {Rational(1, 8), Rational(1, 4), Rational(1, 2)}) r.merge(checks::eps_net_transfer(s, eps), "eps=" + to_string(eps));
  return r;
}

/// Sorgenfrey: s^s-Cauchy sequences are eventually constant, hence converge.
inline Findings cauchy_suite(std::uint64_t seed, std::size_t count) {
  Findings r;
  const QPSpace::Metric s = sorgenfrey;
  std::vector<Rational> harmonic;
  for (int m = 1; m <= 32; ++m) harmonic.emplace_back(1, m);
  const auto p1 = cauchy_probe(s, harmonic, 1);
  r.expect(!p1.cauchy, [] { return json{{"sequence", "1/m"}, {"failed", "classified Cauchy"}}; });
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Rational> seq;
    const std::size_t len = 4 + rng() % 28, from = rng() % len;
    const Rational tail = detail::random_rational(rng, 16, 8);
    for (std::size_t k = 0; k < len; ++k) seq.push_back(k >= from ? tail : detail::random_rational(rng, 16, 8));
    bool constant_half = true;
    for (std::size_t k = seq.size() / 2; k < seq.size(); ++k) constant_half = constant_half && seq[k] == seq.back();
    const auto p = cauchy_probe(s, seq, 1);
    r.expect(p.cauchy == constant_half, [&] { return json{{"case", i}, {"failed", "Cauchy iff constant"}}; });
    if (p.cauchy)
      r.expect(p.limit && *p.limit == seq.back(), [&] { return json{{"case", i}, {"failed", "Cauchy sequence without limit"}}; });
  }
  return r;
}

inline std::vector<CheckReport> metric_suite(std::uint64_t seed) {
  std::vector<CheckReport> out;
  const std::string table_hash = sha256_hex("sorgenfrey formula table");
  out.push_back(run_check("qpm.sorgenfrey-table", table_hash, json{{"cases", 50}}, [] { return sorgenfrey_table(); }));
  out.push_back(run_check("qpm.sorgenfrey-symmetric", sha256_hex("sorgenfrey random pairs"), json{{"seed", seed}, {"pairs", 1000}},
                          [&] { return sorgenfrey_symmetric(derive_seed(seed, 61), 1000); }));
  const auto g6 = detail::grid(Rational(1, 4), 6);
  out.push_back(run_check("qpm.hausdorff-laws", detail::points_hash(g6), json{{"points", 6}}, [&] {
    const QPSpace s = QPSpace::sorgenfrey_space(g6);
    auto scales = default_scales(s);
    scales.push_back(Rational(3, 8));
    scales.push_back(2);
    return checks::hausdorff_laws(s, scales);
  }));
  out.push_back(run_check("qpm.cover-fact", sha256_hex("cover fact sequences"), json{{"seed", seed}, {"sequences", 500}},
                          [&] { return cover_fact_suite(derive_seed(seed, 62), 500); }));
  out.push_back(run_check("qpm.fn-sets", sha256_hex("fn catalogue"), json{{"chains", fn_catalogue().size()}}, [] { return fn_suite(); }));
  out.push_back(run_check("qpm.double-closure", detail::points_hash(detail::grid(Rational(1, 4), 9)), json::object(),
                          [] { return double_closure_suite(); }));
  out.push_back(run_check("qpm.eps-net-transfer", detail::points_hash(detail::grid(Rational(1, 8), 8)),
                          json{{"eps", {"1/8", "1/4", "1/2"}}, {"subsets", 255}}, [] { return eps_net_suite(); }));
  out.push_back(run_check("qpm.cauchy-probe", sha256_hex("sorgenfrey cauchy sequences"), json{{"seed", seed}, {"sequences", 200}},
                          [&] { return cauchy_suite(derive_seed(seed, 63), 200); }));
  return out;
}

/// suite: all | finite | symbolic | metric. Reports come back in canonical order.
inline std::vector<CheckReport> run_suite(const std::string& suite, std::uint64_t seed, const Caps& caps) {
  std::vector<CheckReport> out;
  auto add = [&](std::vector<CheckReport> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "finite" || suite == "all") add(finite_suite(seed, caps));
  if (suite == "symbolic" || suite == "all") add(symbolic_suite());
  if (suite == "metric" || suite == "all") add(metric_suite(seed));
  if (suite != "all" && suite != "finite" && suite != "symbolic" && suite != "metric") throw error("unknown suite '" + suite + "'");
  sort_reports(out);
  return out;
}

}  // namespace qu
