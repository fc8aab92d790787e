// qubench: command-line front end for the quasi-uniform space workbench.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qu/qu.hpp"

namespace {

struct Global {
  std::string format = "json";
  std::string caps_spec;
  bool no_runtime = false;

  qu::Format fmt() const { return format == "table" ? qu::Format::table : qu::Format::json; }
  qu::Caps caps() const { return qu::Caps::parse(caps_spec, qu::Caps::from_env()); }
};

int emit(const Global& g, const std::vector<qu::CheckReport>& rs) {
  std::cout << qu::emit_report(rs, g.fmt(), !g.no_runtime);
  return qu::any_failed(rs) ? 1 : 0;
}

// Space file with the given labels; serialize() already handles labels.
qu::QUSpace relabel(const qu::QUSpace& s, std::vector<std::string> labels) {
  return qu::QUSpace::make(qu::GroundSet{s.size(), std::move(labels)}, s.base());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubench: checks for finite quasi-uniform spaces, the symbolic contra example and Sorgenfrey facets"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--caps", g.caps_spec, "Cap overrides, e.g. ground=16,lift=10,family=12 (on top of QU_CAPS)");
  app.add_flag("--no-runtime", g.no_runtime, "Report runtime_ms as 0");

  std::string file, file_b, check_id, suite_name = "all";
  std::uint64_t seed = 1;
  std::size_t gen_n = 0, gen_k = 1, count = 500;
  qu::nat::ContraBounds contra;

  auto* validate = app.add_subcommand("validate", "Parse and validate a space file");
  validate->add_option("file", file)->required();

  auto* lift = app.add_subcommand("lift", "Print the Hausdorff hyperspace as a space file");
  lift->add_option("file", file)->required();

  auto* classes = app.add_subcommand("classes", "Equivalence classes of the hyperspace with their doubly closed member");
  classes->add_option("file", file)->required();

  auto* stability = app.add_subcommand("stability", "Stability space");
  stability->require_subcommand(1);
  auto* build = stability->add_subcommand("build", "Print S_D(X) as a space file");
  build->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "Run one check on a space file");
  check->add_option("id", check_id, "Check id (see 'check list')")->required();
  check->add_option("file", file);

  auto* example = app.add_subcommand("example", "Worked examples");
  example->require_subcommand(1);
  auto* ex_contra = example->add_subcommand("contra", "Symbolic counterexample on the naturals");
  ex_contra->add_option("--bound-s", contra.bound_s, "Largest puncture point");
  ex_contra->add_option("--bound-n", contra.bound_n, "Truncation window for the oracle");
  auto* ex_bei = example->add_subcommand("bei", "Singleton-neighbourhood hypothesis and its consequences");
  ex_bei->add_option("file", file)->required();

  auto* qpm = app.add_subcommand("qpm", "Quasi-pseudometric checks");
  qpm->require_subcommand(1);
  auto* hausdorff = qpm->add_subcommand("hausdorff", "Hausdorff quasi-pseudometric for the Sorgenfrey metric");
  hausdorff->add_option("file", file, "Point file (one rational per line)")->required();
  hausdorff->add_option("other", file_b, "Second point file: print h(A,B) and h(B,A)");
  auto* sorg = qpm->add_subcommand("sorgenfrey-suite", "All metric checks");
  sorg->add_option("--seed", seed);
  auto* cover = qpm->add_subcommand("cover-fact", "Covering property on random convergent sequences");
  cover->add_option("--seed", seed);
  cover->add_option("--count", count);

  auto* suite = app.add_subcommand("suite", "Run a check suite");
  suite->add_option("name", suite_name)->check(CLI::IsMember({"all", "finite", "symbolic", "metric"}));
  suite->add_option("--seed", seed);

  auto* gen = app.add_subcommand("gen", "Random space file");
  gen->add_option("n", gen_n)->required();
  gen->add_option("k", gen_k)->required();
  gen->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const qu::Caps caps = g.caps();

    if (*validate) {
      qu::ParsedSpace p = qu::parse_space_syntax(qu::detail::read_file(file));
      qu::ValidateOptions opt;
      opt.repair_reflexive = true;
      opt.max_points = caps.ground;
      const qu::ValidationReport rep = qu::validate(p.ground, p.base, opt);
      qu::CheckReport r;
      r.check = "validate";
      r.verdict = rep.valid() ? qu::Verdict::pass : qu::Verdict::fail;
      for (const auto& i : rep.issues) {
        qu::json w{{"issue", qu::to_string(i.kind)}};
        if (i.base_index) w["relation"] = *i.base_index + 1;
        if (!i.detail.empty()) w["detail"] = i.detail;
        r.witnesses.push_back(w);
      }
      r.bounds = qu::json{{"caps", caps.to_string()}, {"points", p.ground.size}, {"relations", p.base.size()}};
      if (!rep.reflexive_repairs.empty()) {
        qu::json rr = qu::json::array();
        for (auto k : rep.reflexive_repairs) rr.push_back(k + 1);
        r.bounds["reflexive_repairs"] = rr;
      }
      r.space_hash = rep.valid() ? qu::space_hash(qu::QUSpace::make(p.ground, p.base)) : qu::sha256_hex(qu::detail::read_file(file));
      return emit(g, {r});
    }

    if (*lift || *classes) {
      const qu::QUSpace s = qu::load_space(file, caps);
      const qu::HyperSpace h = qu::HyperSpace::lift(s, caps);
      if (*lift) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < h.size(); ++k) labels.push_back(h.point(k).to_string());
        std::cout << qu::serialize(relabel(h.space(), std::move(labels)));
        return 0;
      }
      qu::json out = qu::json::array();
      for (const auto& c : h.space().t0_classes()) {
        qu::json members = qu::json::array();
        std::string rep;
        c.for_each([&](std::size_t k) {
          members.push_back(h.point(k).to_string());
          if (s.is_doubly_closed(h.point(k))) rep = h.point(k).to_string();
        });
        out.push_back(qu::json{{"doubly_closed", rep}, {"members", members}});
      }
      if (g.fmt() == qu::Format::json) {
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& c : out) {
          std::cout << c["doubly_closed"].get<std::string>() << ":";
          for (const auto& m : c["members"]) std::cout << " " << m.get<std::string>();
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (*build) {
      const qu::QUSpace s = qu::load_space(file, caps);
      const qu::StabilitySpace sd = qu::StabilitySpace::build(s, caps);
      std::vector<std::string> labels;
      for (const auto& f : sd.points()) labels.push_back("<" + f.gen().to_string() + ">");
      std::cout << qu::serialize(relabel(sd.space(), std::move(labels)));
      return 0;
    }

    if (*check) {
      if (check_id == "list") {
        for (const auto& id : qu::finite_check_ids()) std::cout << id << "\n";
        return 0;
      }
      if (file.empty()) throw qu::error("check " + check_id + ": missing space file");
      const qu::QUSpace s = qu::load_space(file, caps);
      return emit(g, {qu::run_space_check(check_id, s, caps)});
    }

    if (*ex_contra) return emit(g, {qu::contra_report(contra)});

    if (*ex_bei) return emit(g, {qu::run_space_check("example.bei", qu::load_space(file, caps), caps)});

    if (*hausdorff) {
      const auto a = qu::load_points(file);
      if (file_b.empty()) {
        qu::json bounds{{"points", a.size()}};
        const std::string hash = qu::sha256_hex(qu::serialize_points(a));
        if (a.size() > 6) {
          bounds["skipped"] = "exhaustive subset triples limited to 6 points";
          return emit(g, {qu::CheckReport{"qpm.hausdorff-laws", hash, qu::Verdict::skipped, {}, bounds, 0}});
        }
        return emit(g, {qu::run_check("qpm.hausdorff-laws", hash, bounds, [&] {
          const qu::QPSpace s = qu::QPSpace::sorgenfrey_space(a);
          return qu::checks::hausdorff_laws(s, qu::default_scales(s));
        })});
      }
      const auto b = qu::load_points(file_b);
      std::vector<qu::Rational> all = a;
      all.insert(all.end(), b.begin(), b.end());
      const qu::QPSpace s = qu::QPSpace::sorgenfrey_space(all);
      qu::PointSet pa(all.size()), pb(all.size());
      for (std::size_t i = 0; i < a.size(); ++i) pa.insert(i);
      for (std::size_t i = a.size(); i < all.size(); ++i) pb.insert(i);
      const qu::json out{{"h(A,B)", qu::to_string(qu::hausdorff_qpm(s, pa, pb))}, {"h(B,A)", qu::to_string(qu::hausdorff_qpm(s, pb, pa))}};
      if (g.fmt() == qu::Format::json) std::cout << out.dump(2) << "\n";
      else std::cout << "h(A,B) = " << out["h(A,B)"].get<std::string>() << "\nh(B,A) = " << out["h(B,A)"].get<std::string>() << "\n";
      return 0;
    }

    if (*sorg) return emit(g, qu::run_suite("metric", seed, caps));

    if (*cover) {
      return emit(g, {qu::run_check("qpm.cover-fact", qu::sha256_hex("cover fact sequences"), qu::json{{"seed", seed}, {"sequences", count}},
                                    [&] { return qu::cover_fact_suite(qu::derive_seed(seed, 62), count); })});
    }

    if (*suite) return emit(g, qu::run_suite(suite_name, seed, caps));

    if (*gen) {
      std::size_t repaired = 0;
      const qu::QUSpace s = qu::gen_space(gen_n, gen_k, seed, caps, &repaired);
      if (repaired) std::cout << "# repaired " << repaired << " relation(s) with the transitive closure of their intersection\n";
      std::cout << qu::serialize(s);
      return 0;
    }
  } catch (const qu::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
