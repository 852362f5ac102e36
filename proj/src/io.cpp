#include "fanikit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fanikit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

std::size_t size_value(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) throw InputError("expected a non-negative integer");
  return j.get<std::size_t>();
}

std::size_t size_field(const Json& j, const char* key) {
  try {
    return size_value(field(j, key));
  } catch (const InputError& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

std::string string_field(const Json& j, const char* key) {
  const Json& s = field(j, key);
  if (!s.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return s.get<std::string>();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("expected an integer, got " + j.dump());
}

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

std::vector<std::size_t> index_list(const Json& j) {
  if (!j.is_array()) throw InputError("expected an index list");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(size_value(x));
  return out;
}

std::vector<RatVector> rat_rows(const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of vectors");
  std::vector<RatVector> out;
  for (const auto& v : j) out.push_back(rat_vector_from_json(v));
  return out;
}

Json rows_to_json(const std::vector<RatVector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

Json fan_body(const Fan& fan) {
  Json j;
  j["rank"] = fan.rank();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) rays.push_back(to_json(r));
  j["rays"] = rays;
  j["cones"] = fan.cones();
  return j;
}

Fan fan_parse(const Json& j) {
  const std::size_t rank = size_field(j, "rank");
  std::vector<IntVector> rays;
  for (const auto& r : array_field(j, "rays")) rays.push_back(int_vector_from_json(r));
  for (const auto& r : rays)
    if (r.size() != rank) throw InputError("ray length differs from the rank");
  std::vector<RaySet> cones;
  const bool maximal = !j.contains("cones") && j.contains("maximal_cones");
  for (const auto& c : array_field(j, maximal ? "maximal_cones" : "cones")) {
    RaySet s = index_list(c);
    for (auto i : s)
      if (i >= rays.size()) throw InputError("cone refers to a missing ray");
    cones.push_back(std::move(s));
  }
  try {
    return maximal ? Fan::generated_by(rank, rays, cones) : Fan(rank, rays, cones);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json polytope_body(const LatticePolytope& q) { return rows_to_json(q.vertices); }

LatticePolytope polytope_parse(const Json& j, std::optional<std::size_t> ambient = std::nullopt) {
  const Json& verts = j.is_object() ? array_field(j, "vertices") : j;
  auto pts = rat_rows(verts);
  if (pts.empty()) throw InputError("polytope without vertices");
  const std::size_t n = ambient.value_or(pts.front().size());
  for (const auto& p : pts)
    if (p.size() != n) throw InputError("polytope vertex has the wrong length");
  return LatticePolytope::hull(n, pts);
}

Json vrep_body(const VRep& v) {
  Json j;
  j["ambient"] = v.ambient;
  j["vertices"] = rows_to_json(v.vertices);
  j["rays"] = rows_to_json(v.rays);
  j["lineality"] = rows_to_json(v.lineality);
  return j;
}

VRep vrep_parse(const Json& j) {
  VRep v;
  v.ambient = size_field(j, "ambient");
  v.vertices = rat_rows(field(j, "vertices"));
  v.rays = rat_rows(field(j, "rays"));
  v.lineality = rat_rows(field(j, "lineality"));
  return v;
}

Json polyhedron_body(const Polyhedron& p) {
  Json j;
  j["dim"] = p.dim;
  j["eq_rows"] = rows_to_json(p.eq_rows);
  j["eq_rhs"] = to_json(p.eq_rhs);
  j["ge_rows"] = rows_to_json(p.ineq_rows);
  j["ge_rhs"] = to_json(p.ineq_rhs);
  return j;
}

Polyhedron polyhedron_parse(const Json& j) {
  Polyhedron p(size_field(j, "dim"));
  p.eq_rows = rat_rows(field(j, "eq_rows"));
  p.eq_rhs = rat_vector_from_json(field(j, "eq_rhs"));
  p.ineq_rows = rat_rows(field(j, "ge_rows"));
  p.ineq_rhs = rat_vector_from_json(field(j, "ge_rhs"));
  if (p.eq_rows.size() != p.eq_rhs.size() || p.ineq_rows.size() != p.ineq_rhs.size()) throw InputError("polyhedron rows and right-hand sides differ in number");
  return p;
}

std::size_t stratum_ref(const Json& j, const FanifoldData& phi) {
  if (!j.is_string()) throw InputError("strata are referenced by id");
  const auto s = phi.find_stratum(j.get<std::string>());
  if (!s) throw InputError("unknown stratum '" + j.get<std::string>() + "'");
  return *s;
}

Json pairs_to_json(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Json a = Json::array();
  for (const auto& [x, y] : pairs) a.push_back({x, y});
  return a;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_parse(const Json& j) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (!j.is_array()) throw InputError("expected a list of pairs");
  for (const auto& p : j) {
    const auto v = index_list(p);
    if (v.size() != 2) throw InputError("expected a pair");
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto cut = msg.find("syntax error");
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " +
                     (cut == std::string::npos ? msg : msg.substr(cut)));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (string_field(j, "schema") != kSchema) throw InputError("unsupported schema '" + string_field(j, "schema") + "'");
  if (string_field(j, "kind") != kind) throw InputError("expected kind '" + kind + "', found '" + string_field(j, "kind") + "'");
}

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw InputError("document has no kind");
  return j["kind"].get<std::string>();
}

Json to_json(const Rational& r) { return Json(to_string(r)); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("expected a rational \"p/q\", got " + j.dump());
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a vector");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer vector");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j, std::size_t cols_if_empty) {
  if (!j.is_array()) throw InputError("expected a matrix as a list of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InputError("ragged matrix");
  return IntMatrix::from_rows(rows, cols_if_empty);
}

Json to_json(const Fan& fan) {
  Json j = document("fan");
  j.update(fan_body(fan));
  return j;
}

Fan fan_from_json(const Json& j) {
  expect_kind(j, "fan");
  return fan_parse(j);
}

Json to_json(const StackyFan& sf) {
  Json j = document("stacky_fan");
  j["beta"] = to_json(sf.beta);
  j["fan_tilde"] = fan_body(sf.fan_tilde);
  j["fan"] = fan_body(sf.fan);
  j["cone_bijection"] = sf.cone_bijection;
  return j;
}

StackyFan stacky_fan_from_json(const Json& j) {
  expect_kind(j, "stacky_fan");
  StackyFan sf;
  sf.fan_tilde = fan_parse(field(j, "fan_tilde"));
  sf.fan = fan_parse(field(j, "fan"));
  sf.beta = int_matrix_from_json(field(j, "beta"), sf.fan_tilde.rank());
  if (sf.beta.rows() != sf.fan.rank() || sf.beta.cols() != sf.fan_tilde.rank()) throw InputError("beta must be rank(fan) x rank(fan_tilde)");
  sf.cone_bijection = index_list(field(j, "cone_bijection"));
  return sf;
}

Json to_json(const LatticePolytope& q) {
  Json j = document("polytope");
  j["ambient"] = q.ambient;
  j["vertices"] = polytope_body(q);
  return j;
}

LatticePolytope polytope_from_json(const Json& j) {
  expect_kind(j, "polytope");
  return polytope_parse(j, size_field(j, "ambient"));
}

Json to_json(const FanifoldData& phi) {
  Json j = document("fanifold");
  j["dim"] = phi.dim;
  j["ambient_rank"] = phi.ambient_rank;
  Json strata = Json::array();
  for (const auto& s : phi.strata) {
    Json o;
    o["id"] = s.id;
    o["dim"] = s.dim;
    o["label"] = s.label;
    o["interior"] = s.interior;
    o["fan"] = fan_body(s.fan);
    Json facets = Json::array();
    for (const auto& f : s.facets) {
      Json fo;
      fo["stratum"] = f.stratum ? Json(phi.strata[*f.stratum].id) : Json(nullptr);
      fo["in"] = f.in;
      facets.push_back(fo);
    }
    o["facets"] = facets;
    if (s.trivialization) o["trivialization"] = to_json(*s.trivialization);
    if (!s.geometry.empty()) o["geometry"] = rows_to_json(s.geometry);
    strata.push_back(o);
  }
  j["strata"] = strata;
  Json arrows = Json::array();
  for (const auto& a : phi.arrows) {
    Json o;
    o["src"] = phi.strata[a.src].id;
    o["dst"] = phi.strata[a.dst].id;
    o["cone"] = a.cone;
    o["quotient"] = to_json(a.quotient);
    arrows.push_back(o);
  }
  j["arrows"] = arrows;
  return j;
}

FanifoldData fanifold_from_json(const Json& j) {
  expect_kind(j, "fanifold");
  FanifoldData phi;
  phi.dim = size_field(j, "dim");
  phi.ambient_rank = j.contains("ambient_rank") ? size_field(j, "ambient_rank") : 0;
  for (const auto& o : array_field(j, "strata")) {
    Stratum s;
    s.id = string_field(o, "id");
    if (phi.find_stratum(s.id)) throw InputError("duplicate stratum id '" + s.id + "'");
    s.dim = size_field(o, "dim");
    s.label = o.contains("label") ? string_field(o, "label") : "";
    s.interior = o.contains("interior") ? field(o, "interior").get<bool>() : true;
    s.fan = fan_parse(field(o, "fan"));
    if (o.contains("trivialization")) s.trivialization = int_matrix_from_json(o["trivialization"], phi.ambient_rank);
    if (o.contains("geometry")) s.geometry = rat_rows(o["geometry"]);
    phi.strata.push_back(std::move(s));
  }
  // Facets may name strata that appear later in the list.
  const auto& strata = array_field(j, "strata");
  for (std::size_t i = 0; i < strata.size(); ++i) {
    if (!strata[i].contains("facets")) continue;
    for (const auto& f : array_field(strata[i], "facets")) {
      BoundaryFacet b;
      const Json& ref = field(f, "stratum");
      if (!ref.is_null()) b.stratum = stratum_ref(ref, phi);
      b.in = field(f, "in").get<bool>();
      phi.strata[i].facets.push_back(b);
    }
  }
  for (const auto& o : array_field(j, "arrows")) {
    ExitArrow a;
    a.src = stratum_ref(field(o, "src"), phi);
    a.dst = stratum_ref(field(o, "dst"), phi);
    a.cone = index_list(field(o, "cone"));
    a.quotient = int_matrix_from_json(field(o, "quotient"), phi.strata[a.src].lattice_rank());
    phi.arrows.push_back(std::move(a));
  }
  return phi;
}

Json to_json(const DualSpaceData& d, const FanifoldData& phi) {
  Json j = document("dual_data");
  Json polys = Json::object();
  for (std::size_t i = 0; i < d.polytopes.size(); ++i)
    if (d.polytopes[i]) polys[phi.strata.at(i).id] = polytope_body(*d.polytopes[i]);
  j["polytopes"] = polys;
  if (!d.scales.empty()) {
    Json sc = Json::object();
    for (std::size_t i = 0; i < d.scales.size(); ++i) sc[phi.strata.at(i).id] = integer_to_json(d.scales[i]);
    j["scales"] = sc;
  }
  if (d.anchor) j["anchor"] = {{"stratum", phi.strata.at(d.anchor->stratum).id}, {"position", to_json(d.anchor->position)}};
  Json ids = Json::array();
  for (const auto& id : d.identifications)
    ids.push_back({{"stratum", phi.strata.at(id.stratum).id},
                   {"from", phi.strata.at(id.from).id},
                   {"to", phi.strata.at(id.to).id},
                   {"matrix", to_json(id.matrix)}});
  j["identifications"] = ids;
  return j;
}

DualSpaceData dual_data_from_json(const Json& j, const FanifoldData& phi) {
  expect_kind(j, "dual_data");
  DualSpaceData d;
  d.polytopes.resize(phi.strata.size());
  const Json& polys = field(j, "polytopes");
  if (!polys.is_object()) throw InputError("'polytopes' maps stratum ids to vertex lists");
  for (auto it = polys.begin(); it != polys.end(); ++it) {
    const auto s = phi.find_stratum(it.key());
    if (!s) throw InputError("unknown stratum '" + it.key() + "'");
    d.polytopes[*s] = polytope_parse(it.value(), phi.strata[*s].lattice_rank());
  }
  if (j.contains("scales")) {
    d.scales.assign(phi.strata.size(), Integer(1));
    for (auto it = j["scales"].begin(); it != j["scales"].end(); ++it) {
      const auto s = phi.find_stratum(it.key());
      if (!s) throw InputError("unknown stratum '" + it.key() + "'");
      d.scales[*s] = integer_from_json(it.value());
    }
  }
  if (j.contains("anchor") && !j["anchor"].is_null()) {
    DualSpaceData::Anchor a;
    a.stratum = stratum_ref(field(j["anchor"], "stratum"), phi);
    a.position = rat_vector_from_json(field(j["anchor"], "position"));
    d.anchor = a;
  }
  if (j.contains("identifications"))
    for (const auto& o : array_field(j, "identifications")) {
      Identification id;
      id.stratum = stratum_ref(field(o, "stratum"), phi);
      id.from = stratum_ref(field(o, "from"), phi);
      id.to = stratum_ref(field(o, "to"), phi);
      id.matrix = int_matrix_from_json(field(o, "matrix"), phi.strata[id.stratum].lattice_rank());
      d.identifications.push_back(std::move(id));
    }
  return d;
}

Json to_json(const VRep& v) {
  Json j = document("vrep");
  j.update(vrep_body(v));
  return j;
}

VRep vrep_from_json(const Json& j) {
  expect_kind(j, "vrep");
  return vrep_parse(j);
}

Json to_json(const Polyhedron& p) {
  Json j = document("polyhedron");
  j.update(polyhedron_body(p));
  return j;
}

Polyhedron polyhedron_from_json(const Json& j) {
  expect_kind(j, "polyhedron");
  return polyhedron_parse(j);
}

Json to_json(const DualComplex& psi) {
  Json j = document("dual_complex");
  j["ambient"] = psi.ambient;
  j["dim"] = psi.dim;
  Json cells = Json::array();
  for (const auto& c : psi.cells)
    cells.push_back({{"stratum", c.stratum}, {"label", c.label}, {"dim", c.dim}, {"shape", vrep_body(c.shape)}});
  j["cells"] = cells;
  j["incidence"] = pairs_to_json(psi.incidence);
  Json tr = Json::array();
  for (const auto& t : psi.translations) tr.push_back(t ? to_json(*t) : Json(nullptr));
  j["translations"] = tr;
  return j;
}

DualComplex dual_complex_from_json(const Json& j) {
  expect_kind(j, "dual_complex");
  DualComplex psi;
  psi.ambient = size_field(j, "ambient");
  psi.dim = size_field(j, "dim");
  for (const auto& o : array_field(j, "cells")) {
    DualCell c;
    c.stratum = size_field(o, "stratum");
    c.label = string_field(o, "label");
    c.dim = size_field(o, "dim");
    c.shape = vrep_parse(field(o, "shape"));
    psi.cells.push_back(std::move(c));
  }
  psi.incidence = pairs_parse(field(j, "incidence"));
  for (const auto& t : array_field(j, "translations")) psi.translations.push_back(t.is_null() ? std::nullopt : std::optional(rat_vector_from_json(t)));
  return psi;
}

Json to_json(const TriangulationInput& t) {
  Json j = document("triangulation");
  if (t.triangulation.delta_vee) j["delta_vee"] = polytope_body(*t.triangulation.delta_vee);
  Json verts = Json::array();
  for (const auto& v : t.triangulation.vertices) verts.push_back(to_json(v));
  j["vertices"] = verts;
  j["simplices"] = t.triangulation.simplices;
  j["mu"] = to_json(t.mu.values);
  return j;
}

TriangulationInput triangulation_from_json(const Json& j) {
  expect_kind(j, "triangulation");
  TriangulationInput t;
  for (const auto& v : array_field(j, "vertices")) t.triangulation.vertices.push_back(int_vector_from_json(v));
  for (const auto& s : array_field(j, "simplices")) t.triangulation.simplices.push_back(index_list(s));
  if (j.contains("delta_vee")) t.triangulation.delta_vee = polytope_parse(j["delta_vee"], t.triangulation.rank());
  t.mu.values = rat_vector_from_json(field(j, "mu"));
  if (t.mu.values.size() != t.triangulation.vertices.size()) throw InputError("'mu' needs one value per vertex");
  return t;
}

Json to_json(const TropicalComplex& pi) {
  Json j = document("tropical_complex");
  j["ambient"] = pi.ambient;
  Json cells = Json::array();
  for (const auto& c : pi.cells)
    cells.push_back({{"label", c.label}, {"dim", c.dim}, {"h", polyhedron_body(c.h)}, {"shape", vrep_body(c.shape)}});
  j["cells"] = cells;
  j["incidence"] = pairs_to_json(pi.incidence);
  return j;
}

TropicalComplex tropical_complex_from_json(const Json& j) {
  expect_kind(j, "tropical_complex");
  TropicalComplex pi;
  pi.ambient = size_field(j, "ambient");
  for (const auto& o : array_field(j, "cells")) {
    TropicalCell c;
    c.label = index_list(field(o, "label"));
    c.dim = size_field(o, "dim");
    c.h = polyhedron_parse(field(o, "h"));
    c.shape = vrep_parse(field(o, "shape"));
    pi.cells.push_back(std::move(c));
  }
  pi.incidence = pairs_parse(field(j, "incidence"));
  return pi;
}

Json to_json(const LaurentFamily& fam) {
  Json j = document("family");
  Json terms = Json::array();
  for (const auto& t : fam.terms) terms.push_back({{"c", {t.c.real(), t.c.imag()}}, {"alpha", to_json(t.alpha)}, {"mu", to_json(t.mu)}});
  j["terms"] = terms;
  j["t"] = fam.t;
  return j;
}

LaurentFamily family_from_json(const Json& j) {
  expect_kind(j, "family");
  LaurentFamily fam;
  for (const auto& o : array_field(j, "terms")) {
    LaurentTerm t;
    const Json& c = field(o, "c");
    if (c.is_number()) {
      t.c = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      t.c = {c[0].get<double>(), c[1].get<double>()};
    } else {
      throw InputError("coefficient 'c' must be [re, im]");
    }
    t.alpha = int_vector_from_json(field(o, "alpha"));
    t.mu = o.contains("mu") ? rational_from_json(o["mu"]) : Rational(0);
    fam.terms.push_back(std::move(t));
  }
  const Json& t = field(j, "t");
  if (!t.is_number()) throw InputError("'t' must be a number");
  fam.t = t.get<double>();
  try {
    fam.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return fam;
}

Json to_json(const FanReport& r) {
  Json j = document("fan_report");
  j["valid"] = r.valid();
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"cones", x.cones}, {"detail", x.detail}});
  j["violations"] = v;
  return j;
}

Json to_json(const FanifoldReport& r, const FanifoldData& phi) {
  Json j = document("fanifold_report");
  j["valid"] = r.valid();
  Json v = Json::array();
  for (const auto& x : r.issues) {
    Json arrows = Json::array();
    for (auto a : x.arrows)
      if (a < phi.arrows.size()) arrows.push_back({phi.strata[phi.arrows[a].src].id, phi.strata[phi.arrows[a].dst].id});
    v.push_back({{"kind", x.kind}, {"arrows", arrows}, {"detail", x.detail}});
  }
  j["issues"] = v;
  return j;
}

Json to_json(const std::vector<FltzStratum>& skeleton) {
  Json j = document("fltz_skeleton");
  Json strata = Json::array();
  for (const auto& s : skeleton) {
    Json rays = Json::array();
    for (const auto& r : s.cone.rays) rays.push_back(to_json(r));
    Json ann = Json::array();
    for (const auto& g : s.annihilator.generators()) ann.push_back(to_json(g));
    strata.push_back({{"cone", s.cone_index},
                      {"rays", rays},
                      {"annihilator", ann},
                      {"torus_dim", s.annihilator.rank()},
                      {"component_order", integer_to_json(s.component_order)}});
  }
  j["strata"] = strata;
  return j;
}

Json to_json(const ConditionViReport& r) {
  Json j = document("condition_vi");
  j["pass"] = r.pass();
  Json va = Json::array();
  for (const auto& v : r.very_ample) va.push_back(v.text());
  j["very_ample"] = va;
  Json issues = Json::array();
  for (const auto& i : r.issues) issues.push_back({{"kind", i.kind}, {"detail", i.detail}});
  j["issues"] = issues;
  return j;
}

Json to_json(const ConvergenceReport& r) {
  Json j = document("convergence");
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"t", row.t},
                    {"samples", row.distance.samples},
                    {"sup", row.distance.sup},
                    {"mean", row.distance.mean},
                    {"rejected", row.rejected}});
  j["rows"] = rows;
  j["sup_decreasing"] = r.sup_decreasing;
  j["mean_trend"] = r.mean_trend;
  j["converging"] = r.converging();
  return j;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace fanikit
