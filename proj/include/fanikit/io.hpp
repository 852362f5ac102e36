#pragma once

// JSON documents tagged {"schema": "fanikit/1", "kind": ...}. Rationals are
// strings "p/q"; floats only appear in amoeba data.

#include "fanikit/amoeba.hpp"
#include "fanikit/dual_space.hpp"
#include "fanikit/fan.hpp"
#include "fanikit/fanifold.hpp"
#include "fanikit/fltz.hpp"
#include "fanikit/tropical.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace fanikit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fanikit/1";

// Malformed or ill-typed input. `where` is "file:line:col" when known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const Json& j);

Json document(const std::string& kind);
// Throws InputError unless j is a fanikit/1 document of the given kind.
void expect_kind(const Json& j, const std::string& kind);
std::string kind_of(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const RatVector& v);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
RatVector rat_vector_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j, std::size_t cols_if_empty);

// Fan documents list all cones, or only "maximal_cones" to be closed under faces.
Json to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

Json to_json(const StackyFan& sf);
StackyFan stacky_fan_from_json(const Json& j);

Json to_json(const LatticePolytope& q);
LatticePolytope polytope_from_json(const Json& j);

// Strata and arrows refer to each other by id.
Json to_json(const FanifoldData& phi);
FanifoldData fanifold_from_json(const Json& j);

// Keys of "polytopes", "scales" and the anchor are stratum ids of phi.
Json to_json(const DualSpaceData& d, const FanifoldData& phi);
DualSpaceData dual_data_from_json(const Json& j, const FanifoldData& phi);

Json to_json(const VRep& v);
VRep vrep_from_json(const Json& j);
Json to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j);

Json to_json(const DualComplex& psi);
DualComplex dual_complex_from_json(const Json& j);

struct TriangulationInput {
  Triangulation triangulation;
  PLFunction mu;
  bool operator==(const TriangulationInput&) const = default;
};
Json to_json(const TriangulationInput& t);
TriangulationInput triangulation_from_json(const Json& j);

Json to_json(const TropicalComplex& pi);
TropicalComplex tropical_complex_from_json(const Json& j);

Json to_json(const LaurentFamily& fam);
LaurentFamily family_from_json(const Json& j);

Json to_json(const FanReport& r);
Json to_json(const FanifoldReport& r, const FanifoldData& phi);
Json to_json(const std::vector<FltzStratum>& skeleton);
Json to_json(const ConditionViReport& r);
Json to_json(const ConvergenceReport& r);

std::string format_double(double x);  // 17 significant digits

}  // namespace fanikit
