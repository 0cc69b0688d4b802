#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "nilgeo/construct.hpp"
#include "nilgeo/group.hpp"
#include "nilgeo/metric_geometry.hpp"

namespace nilgeo::io {

using Json = nlohmann::ordered_json;

Json rat_json(const Rat& value);
Json vector_json(const RatVector& v);
Json matrix_json(const RatMatrix& m);

/// Schema errors name the offending location as a JSON pointer.
Rat parse_rat_at(const Json& j, const std::string& pointer);
RatVector parse_vector_at(const Json& j, const std::string& pointer);
RatMatrix parse_matrix_at(const Json& j, const std::string& pointer);

/// {"dim", "basis", "brackets": [{"i", "j", "coeffs": {"k": "p/q"}}]}, 1-based.
Json algebra_json(const LieAlgebra& alg);
/// The algebra fields plus "metric".
Json metric_algebra_json(const MetricNilLieAlgebra& m);
/// The algebra fields of g plus "metric_g", "rep", "metric_V", "v_basis".
Json data_set_json(const DataSet& d);
Json lattice_json(const LatticeSpec& spec);

LieAlgebra parse_algebra(const Json& j);
MetricNilLieAlgebra parse_metric_algebra(const Json& j);
DataSet parse_data_set(const Json& j);
LatticeSpec parse_lattice(const Json& j);

using Document = std::variant<MetricNilLieAlgebra, DataSet, LatticeSpec>;

/// A document with "scaling" is a lattice, one with "rep" a data set, and
/// anything else a metric algebra.
Document parse_document(const Json& j);
Json document_json(const Document& doc);

Json read_json_file(const std::string& path);
Document parse_input(const std::string& path);

}  // namespace nilgeo::io
