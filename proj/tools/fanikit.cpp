#include "fanikit/fibration.hpp"
#include "fanikit/io.hpp"
#include "fanikit/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace fanikit;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kInvalid = 2;

struct Options {
  std::string input;
  std::string out;
  std::string polytopes;
  std::string fan;
  std::string triangulation;
  std::string svg;
  std::string csv;
  std::string dir;
  std::string mode;
  std::string gram;
  std::vector<std::string> points;
  std::vector<double> ts{1e2, 1e3, 1e4};
  std::size_t cone = 0;
  std::size_t samples = 0;
  std::size_t radii = 64;
  std::size_t phases = 64;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
};

void emit(const Options& o, const Json& j) {
  if (o.out.empty())
    std::cout << dump(j);
  else
    write_text_file(o.out, dump(j));
}

RatVector parse_point(const std::string& text) {
  RatVector v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      v.push_back(parse_rational(piece));
    } catch (const std::exception&) {
      throw InputError("bad coordinate '" + piece + "' in point '" + text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

Json gluing_json(const FanifoldData& phi) {
  Json j = document("filtration");
  Json stages = Json::array();
  for (const auto& g : filtration(phi)) {
    Json s;
    s["stage"] = g.stage;
    Json pieces = Json::array(), added = Json::array(), interfaces = Json::array();
    for (auto p : g.pieces) pieces.push_back(phi.strata[p].id);
    for (auto p : g.added) added.push_back(phi.strata[p].id);
    for (const auto& f : g.interfaces) {
      Json in = Json::array();
      for (auto x : f.in_facets) in.push_back(phi.strata[x].id);
      interfaces.push_back({{"stratum", phi.strata[f.stratum].id}, {"glued_along", in}});
    }
    s["pieces"] = pieces;
    s["added"] = added;
    s["interfaces"] = interfaces;
    stages.push_back(s);
  }
  j["stages"] = stages;
  j["closed"] = is_closed(phi);
  return j;
}

Json schedule_json(const FanifoldData& phi) {
  Json j = document("handle_schedule");
  Json rows = Json::array();
  for (const auto& h : handle_schedule(phi)) {
    Json locus = Json::array();
    for (const auto& g : h.gluing_locus) locus.push_back({{"stratum", phi.strata[g.stratum].id}, {"cone", g.cone}});
    rows.push_back({{"stage", h.stage},
                    {"stratum", phi.strata[h.stratum].id},
                    {"label", phi.strata[h.stratum].label},
                    {"torus_rank", h.torus_rank},
                    {"gluing_locus", locus}});
  }
  j["handles"] = rows;
  return j;
}

int cmd_validate(const Options& o) {
  const Json j = read_json_file(o.input);
  const std::string kind = kind_of(j);
  if (kind == "fan") {
    const FanReport r = validate_fan(fan_from_json(j));
    emit(o, to_json(r));
    return r.valid() ? kOk : kInvalid;
  }
  if (kind == "fanifold") {
    const FanifoldData phi = fanifold_from_json(j);
    const FanifoldReport r = validate_fanifold(phi);
    Json out = to_json(r, phi);
    if (r.valid()) {
      try {
        out["closed"] = is_closed(phi);
      } catch (const std::logic_error& e) {
        out["valid"] = false;
        out["issues"].push_back({{"kind", "flag"}, {"arrows", Json::array()}, {"detail", e.what()}});
        emit(o, out);
        return kInvalid;
      }
    }
    emit(o, out);
    return r.valid() ? kOk : kInvalid;
  }
  if (kind == "stacky_fan") {
    const StackyReport r = validate_stacky(stacky_fan_from_json(j));
    Json out = document("stacky_report");
    out["valid"] = r.valid();
    out["finite_cokernel"] = r.finite_cokernel;
    Json inv = Json::array();
    for (const auto& x : r.cokernel.invariant_factors) inv.push_back(x.get_str());
    out["cokernel_invariant_factors"] = inv;
    out["failures"] = r.failures;
    emit(o, out);
    return r.valid() ? kOk : kInvalid;
  }
  if (kind == "triangulation") {
    const auto t = triangulation_from_json(j);
    const auto r = validate_triangulation(t.triangulation);
    Json out = document("triangulation_report");
    out["valid"] = r.valid();
    out["failures"] = r.failures;
    emit(o, out);
    return r.valid() ? kOk : kInvalid;
  }
  throw InputError("validate: unsupported kind '" + kind + "'");
}

int cmd_quotient(const Options& o) {
  const Fan fan = fan_from_json(read_json_file(o.input));
  const FanReport r = validate_fan(fan);
  if (!r.valid()) {
    emit(o, to_json(r));
    return kInvalid;
  }
  if (o.cone >= fan.size()) throw InputError("quotient: no cone " + std::to_string(o.cone));
  const QuotientFan q = quotient_fan(fan, o.cone);
  Json out = to_json(q.fan);
  out["projection"] = to_json(q.lattice.projection);
  Json map = Json::array();
  for (const auto& m : q.cone_map) map.push_back(m ? Json(*m) : Json(nullptr));
  out["cone_map"] = map;
  if (!o.svg.empty() && q.fan.rank() == 2) write_text_file(o.svg, svg_fan(q.fan));
  emit(o, out);
  return kOk;
}

int cmd_fltz(const Options& o) {
  const Json j = read_json_file(o.input);
  if (kind_of(j) == "stacky_fan") {
    const StackyFan sf = stacky_fan_from_json(j);
    const StackyReport r = validate_stacky(sf);
    if (!r.valid()) {
      Json out = document("stacky_report");
      out["valid"] = false;
      out["failures"] = r.failures;
      emit(o, out);
      return kInvalid;
    }
    emit(o, to_json(fltz_skeleton(sf)));
    return kOk;
  }
  const Fan fan = fan_from_json(j);
  const FanReport r = validate_fan(fan);
  if (!r.valid()) {
    emit(o, to_json(r));
    return kInvalid;
  }
  Json out = to_json(fltz_skeleton(fan));
  Json fact = Json::array();
  bool ok = true;
  for (std::size_t s = 0; s < fan.size(); ++s) {
    const auto f = local_factorization(fan, s);
    ok = ok && f.ok();
    fact.push_back({{"sigma", s}, {"pairs", f.entries.size()}, {"ok", f.ok()}});
  }
  out["local_factorization"] = fact;
  emit(o, out);
  return ok ? kOk : kInvalid;
}

FanifoldData load_valid_fanifold(const Options& o, int& status) {
  const FanifoldData phi = fanifold_from_json(read_json_file(o.input));
  const FanifoldReport r = validate_fanifold(phi);
  status = kOk;
  if (!r.valid()) {
    emit(o, to_json(r, phi));
    status = kInvalid;
  }
  return phi;
}

int cmd_filtration(const Options& o) {
  int status;
  const FanifoldData phi = load_valid_fanifold(o, status);
  if (status != kOk) return status;
  emit(o, gluing_json(phi));
  return kOk;
}

int cmd_schedule(const Options& o) {
  int status;
  const FanifoldData phi = load_valid_fanifold(o, status);
  if (status != kOk) return status;
  emit(o, schedule_json(phi));
  return kOk;
}

int cmd_retract(const Options& o) {
  const Fan fan = fan_from_json(read_json_file(o.input));
  const FanReport fr = validate_fan(fan);
  if (!fr.valid()) {
    emit(o, to_json(fr));
    return kInvalid;
  }
  RatMatrix gram;
  if (!o.gram.empty()) {
    const Json g = read_json_file(o.gram);
    std::vector<RatVector> rows;
    for (const auto& r : g.contains("gram") ? g["gram"] : g) rows.push_back(rat_vector_from_json(r));
    gram = RatMatrix::from_rows(rows, fan.rank());
  }
  const RetractionContext ctx(fan, gram);
  const Retraction r(ctx);
  std::vector<RatVector> pts;
  for (const auto& p : o.points) {
    pts.push_back(parse_point(p));
    if (pts.back().size() != fan.rank()) throw InputError("retract: point has the wrong dimension");
  }
  Json out = document("retraction");
  out["complete"] = r.complete();
  Json rows = Json::array();
  for (const auto& p : pts) {
    const auto cap = r.capturing_cone(p);
    rows.push_back({{"point", to_json(p)}, {"image", to_json(r(p))}, {"capturing_cone", cap ? Json(*cap) : Json(nullptr)}});
  }
  out["points"] = rows;
  if (o.samples > 0) {
    const auto samples = random_rational_points(fan.rank(), o.samples, o.seed);
    std::size_t idempotent = 0, fixed = 0;
    for (const auto& p : samples) {
      const auto q = r(p);
      idempotent += r(q) == q ? 1 : 0;
      fixed += fan.support_contains(p) ? (q == p ? 1 : 0) : 1;
    }
    const auto oracle = retract_oracle_check(ctx, samples);
    out["samples"] = {{"count", samples.size()},
                      {"seed", o.seed},
                      {"idempotent", idempotent},
                      {"identity_on_support", fixed},
                      {"oracle_mismatches", oracle.mismatches.size()}};
  }
  emit(o, out);
  return kOk;
}

int cmd_dual(const Options& o) {
  int status;
  const FanifoldData phi = load_valid_fanifold(o, status);
  if (status != kOk) return status;
  if (o.polytopes.empty()) throw InputError("dual: --polytopes is required");
  const DualSpaceData data = dual_data_from_json(read_json_file(o.polytopes), phi);
  const ConditionViReport rep = condition_vi_check(phi, data);
  Json out = document("dual");
  out["condition_vi"] = to_json(rep);
  if (!rep.pass()) {
    emit(o, out);
    return kInvalid;
  }
  const DualComplex psi = dual_space(phi, data);
  out["psi"] = to_json(psi);
  if (!o.svg.empty()) write_text_file(o.svg, svg_dual_complex(psi));
  emit(o, out);
  return kOk;
}

TropicalComplex complex_for(const TriangulationInput& t) { return dual_complex(t.triangulation, t.mu); }

int cmd_tropical(const Options& o) {
  const TriangulationInput t = triangulation_from_json(read_json_file(o.input));
  const auto tr = validate_triangulation(t.triangulation);
  if (!tr.valid()) {
    Json out = document("triangulation_report");
    out["valid"] = false;
    out["failures"] = tr.failures;
    emit(o, out);
    return kInvalid;
  }
  const AdaptedReport ar = adapted_check(t.triangulation, t.mu);
  const std::string mode = o.mode.empty() ? "complex" : o.mode;
  if (mode == "adapted" || !ar.adapted()) {
    Json out = document("adapted_report");
    out["adapted"] = ar.adapted();
    out["failures"] = ar.failures;
    const auto origin = t.triangulation.origin();
    out["star_shaped"] = origin ? Json(star_shaped_check(t.triangulation)) : Json(nullptr);
    emit(o, out);
    return ar.adapted() ? kOk : kInvalid;
  }
  if (mode == "complex") {
    const TropicalComplex pi = complex_for(t);
    if (!o.svg.empty()) write_text_file(o.svg, svg_tropical(pi));
    emit(o, to_json(pi));
    return kOk;
  }
  if (mode == "components") {
    Json out = document("complement_components");
    Json regions = Json::array();
    for (const auto& r : complement_components(t.triangulation, t.mu)) regions.push_back({{"vertex", r.vertex}, {"witness", to_json(r.witness)}});
    out["regions"] = regions;
    out["vertices"] = t.triangulation.vertices.size();
    emit(o, out);
    return kOk;
  }
  if (mode == "psi") {
    if (o.fan.empty()) throw InputError("tropical --mode psi needs --fan");
    const Fan fan = fan_from_json(read_json_file(o.fan));
    const auto rep = psi_embedding_check(fan, t.triangulation, t.mu);
    const FanifoldData phi = sphere_fanifold(fan);
    Json out = document("psi_embedding");
    out["ok"] = rep.ok();
    Json map = Json::array();
    for (std::size_t s = 0; s < rep.map.size(); ++s) map.push_back({{"stratum", phi.strata[s].id}, {"cell", rep.map[s]}});
    out["map"] = map;
    out["boundary_cells"] = rep.boundary_cells;
    out["mismatches"] = rep.mismatches;
    emit(o, out);
    return rep.ok() ? kOk : kInvalid;
  }
  throw InputError("tropical: unknown mode '" + mode + "'");
}

int cmd_amoeba(const Options& o) {
  const LaurentFamily fam = family_from_json(read_json_file(o.input));
  SliceGrid grid;
  grid.radii = o.radii;
  grid.phases = o.phases;
  const std::string mode = o.mode.empty() ? "sample" : o.mode;
  std::optional<TropicalComplex> pi;
  if (!o.triangulation.empty()) pi = complex_for(triangulation_from_json(read_json_file(o.triangulation)));
  if (mode == "sample") {
    const SampleCloud cloud = sample_curve(fam, grid, o.tolerance);
    if (!o.csv.empty()) write_text_file(o.csv, cloud_csv(cloud));
    if (!o.svg.empty() && pi) write_text_file(o.svg, svg_tropical(*pi, &cloud));
    Json out = document("sample_cloud");
    out["t"] = fam.t;
    out["slices"] = cloud.slices;
    out["samples"] = cloud.points.size();
    out["skipped_slices"] = cloud.skipped_slices;
    out["zero_roots"] = cloud.zero_roots;
    out["rejected_roots"] = cloud.rejected_roots;
    if (pi) {
      const auto d = rescaled_distance(cloud, *pi);
      out["sup_distance"] = d.sup;
      out["mean_distance"] = d.mean;
    }
    emit(o, out);
    return kOk;
  }
  if (mode == "convergence") {
    if (!pi) throw InputError("amoeba --mode convergence needs --triangulation");
    const ConvergenceReport r = convergence_report(fam, *pi, o.ts, grid);
    emit(o, to_json(r));
    return r.converging() ? kOk : kInvalid;
  }
  throw InputError("amoeba: unknown mode '" + mode + "'");
}

int cmd_report(const Options& o) {
  if (o.dir.empty()) throw InputError("report: --dir is required");
  int status;
  const FanifoldData phi = load_valid_fanifold(o, status);
  if (status != kOk) return status;
  std::filesystem::create_directories(o.dir);
  const auto path = [&](const std::string& name) { return (std::filesystem::path(o.dir) / name).string(); };
  Json bundle = document("report");
  bundle["input"] = o.input;
  bundle["fanifold"] = to_json(phi);
  bundle["validation"] = to_json(validate_fanifold(phi), phi);
  bundle["filtration"] = gluing_json(phi);
  bundle["schedule"] = schedule_json(phi);
  Json charts = Json::array();
  for (std::size_t s = 0; s < phi.strata.size(); ++s) {
    const auto c = chart_data(phi, s);
    charts.push_back({{"stratum", phi.strata[s].id}, {"codim", c.codim}, {"skeleton", to_json(c.skeleton)["strata"]}});
    if (phi.strata[s].fan.rank() == 2) write_text_file(path("chart_" + phi.strata[s].id + ".svg"), svg_fan(phi.strata[s].fan));
  }
  bundle["charts"] = charts;
  int rc = kOk;
  if (!o.polytopes.empty()) {
    const DualSpaceData data = dual_data_from_json(read_json_file(o.polytopes), phi);
    const auto rep = condition_vi_check(phi, data);
    bundle["condition_vi"] = to_json(rep);
    if (rep.pass()) {
      const DualComplex psi = dual_space(phi, data);
      bundle["psi"] = to_json(psi);
      if (psi.ambient == 2) write_text_file(path("psi.svg"), svg_dual_complex(psi));
    } else {
      rc = kInvalid;
    }
  }
  write_text_file(path("report.json"), dump(bundle));
  Json summary = document("report_summary");
  summary["directory"] = o.dir;
  summary["strata"] = phi.strata.size();
  summary["closed"] = bundle["filtration"]["closed"];
  if (bundle.contains("condition_vi")) summary["condition_vi"] = bundle["condition_vi"]["pass"];
  emit(o, summary);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fanikit: fans, fanifolds, dual spaces and tropical limits"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--out", o.out, "Write the JSON result here instead of stdout");

  auto input = [&](CLI::App* sub, const std::string& what) { sub->add_option("input", o.input, what)->required()->check(CLI::ExistingFile); };

  auto* validate = app.add_subcommand("validate", "Validate a fan, stacky fan, fanifold or triangulation");
  input(validate, "JSON document");
  auto* quotient = app.add_subcommand("quotient", "Quotient fan by a cone");
  input(quotient, "Fan JSON");
  quotient->add_option("--cone", o.cone, "Cone index")->required();
  quotient->add_option("--svg", o.svg, "SVG of a rank-2 quotient");
  auto* fltz = app.add_subcommand("fltz", "FLTZ skeleton strata and local factorization");
  input(fltz, "Fan or stacky fan JSON");
  auto* filt = app.add_subcommand("filtration", "Gluing filtration by stratum dimension");
  input(filt, "Fanifold JSON");
  auto* sched = app.add_subcommand("schedule", "Handle attachment schedule");
  input(sched, "Fanifold JSON");
  auto* retract = app.add_subcommand("retract", "Retraction onto the support of a fan");
  input(retract, "Fan JSON");
  retract->add_option("--point", o.points, "Point as comma-separated rationals, repeatable");
  retract->add_option("--samples", o.samples, "Check idempotence and the oracle on random points");
  retract->add_option("--seed", o.seed, "Sampling seed");
  retract->add_option("--gram", o.gram, "Inner product matrix JSON")->check(CLI::ExistingFile);
  auto* dual = app.add_subcommand("dual", "Condition (vi) and the dual stratified space");
  input(dual, "Fanifold JSON");
  dual->add_option("--polytopes", o.polytopes, "Polytope data JSON")->required()->check(CLI::ExistingFile);
  dual->add_option("--svg", o.svg, "SVG of a rank-2 dual space");
  auto* trop = app.add_subcommand("tropical", "Adaptedness, dual complex, complement regions, psi check");
  input(trop, "Triangulation JSON");
  trop->add_option("--mode", o.mode, "adapted | complex | components | psi")->check(CLI::IsMember({"adapted", "complex", "components", "psi"}));
  trop->add_option("--fan", o.fan, "Fan JSON for --mode psi")->check(CLI::ExistingFile);
  trop->add_option("--svg", o.svg, "SVG of a rank-2 complex");
  auto* amoeba = app.add_subcommand("amoeba", "Amoeba sampling and convergence");
  input(amoeba, "Family JSON");
  amoeba->add_option("--mode", o.mode, "sample | convergence")->check(CLI::IsMember({"sample", "convergence"}));
  amoeba->add_option("--triangulation", o.triangulation, "Triangulation JSON defining the limit complex")->check(CLI::ExistingFile);
  amoeba->add_option("--t", o.ts, "Parameters for --mode convergence");
  amoeba->add_option("--radii", o.radii, "Radii per sliced coordinate")->check(CLI::PositiveNumber);
  amoeba->add_option("--phases", o.phases, "Phases per sliced coordinate")->check(CLI::PositiveNumber);
  amoeba->add_option("--tolerance", o.tolerance, "Residual bound for kept samples")->check(CLI::PositiveNumber);
  amoeba->add_option("--csv", o.csv, "Write the sample cloud as CSV");
  amoeba->add_option("--svg", o.svg, "SVG overlay, needs --triangulation");
  auto* report = app.add_subcommand("report", "Bundle JSON and SVG output for a fanifold");
  input(report, "Fanifold JSON");
  report->add_option("--polytopes", o.polytopes, "Polytope data JSON")->check(CLI::ExistingFile);
  report->add_option("--dir", o.dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kIoError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*quotient) return cmd_quotient(o);
    if (*fltz) return cmd_fltz(o);
    if (*filt) return cmd_filtration(o);
    if (*sched) return cmd_schedule(o);
    if (*retract) return cmd_retract(o);
    if (*dual) return cmd_dual(o);
    if (*trop) return cmd_tropical(o);
    if (*amoeba) return cmd_amoeba(o);
    if (*report) return cmd_report(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  }
  return kIoError;
}
