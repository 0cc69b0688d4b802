#include "nilgeo_tools/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nilgeo::io {

namespace {

[[noreturn]] void schema_fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

void allow_keys(const Json& j, const std::string& pointer, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema_fail(pointer, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) schema_fail(pointer + "/" + key, "unknown key");
}

const Json& member(const Json& j, const std::string& pointer, const char* key) {
  if (!j.contains(key)) schema_fail(pointer + "/" + key, "missing required key");
  return j.at(key);
}

std::size_t parse_index(const Json& j, const std::string& pointer, std::size_t dim) {
  if (!j.is_number_integer()) schema_fail(pointer, "expected an integer index");
  const auto value = j.get<long long>();
  if (value < 1 || static_cast<std::size_t>(value) > dim) {
    schema_fail(pointer, "index out of range 1.." + std::to_string(dim));
  }
  return static_cast<std::size_t>(value - 1);
}

std::size_t parse_dim(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 1) schema_fail(pointer, "expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

std::vector<std::string> parse_names(const Json& j, const std::string& pointer, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) schema_fail(pointer, "expected " + std::to_string(dim) + " names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_fail(pointer + "/" + std::to_string(i), "expected a string");
    names.push_back(j[i].get<std::string>());
  }
  return names;
}

void write_algebra_fields(Json& out, const LieAlgebra& alg) {
  out["dim"] = alg.dim();
  out["basis"] = alg.names();
  Json brackets = Json::array();
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Json coeffs = Json::object();
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(alg.c(i, j, k)) != 0) coeffs[std::to_string(k + 1)] = rat_json(alg.c(i, j, k));
      if (!coeffs.empty()) brackets.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"coeffs", coeffs}});
    }
  out["brackets"] = brackets;
}

LieAlgebra parse_algebra_fields(const Json& j, const std::string& pointer) {
  const std::size_t dim = parse_dim(member(j, pointer, "dim"), pointer + "/dim");
  std::vector<std::string> names;
  if (j.contains("basis")) names = parse_names(j.at("basis"), pointer + "/basis", dim);
  const Json& brackets = member(j, pointer, "brackets");
  if (!brackets.is_array()) schema_fail(pointer + "/brackets", "expected an array");
  std::vector<BracketEntry> entries;
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string here = pointer + "/brackets/" + std::to_string(b);
    const Json& entry = brackets[b];
    allow_keys(entry, here, {"i", "j", "coeffs"});
    BracketEntry e;
    e.i = parse_index(member(entry, here, "i"), here + "/i", dim);
    e.j = parse_index(member(entry, here, "j"), here + "/j", dim);
    const Json& coeffs = member(entry, here, "coeffs");
    if (!coeffs.is_object()) schema_fail(here + "/coeffs", "expected an object");
    for (const auto& [key, value] : coeffs.items()) {
      const std::string at = here + "/coeffs/" + key;
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        const long long parsed = std::stoll(key, &used);
        if (used != key.size() || parsed < 1 || static_cast<std::size_t>(parsed) > dim) throw std::out_of_range(key);
        k = static_cast<std::size_t>(parsed - 1);
      } catch (const std::exception&) {
        schema_fail(at, "coefficient key must be an index 1.." + std::to_string(dim));
      }
      e.coeffs[k] = parse_rat_at(value, at);
    }
    entries.push_back(std::move(e));
  }
  return LieAlgebra::from_brackets(dim, entries, std::move(names));
}

}  // namespace

Json rat_json(const Rat& value) { return to_string(value); }

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

Json matrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

Rat parse_rat_at(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) schema_fail(pointer, "expected a rational string \"p/q\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const Error& e) {
    schema_fail(pointer, e.what());
  }
}

RatVector parse_vector_at(const Json& j, const std::string& pointer) {
  if (!j.is_array()) schema_fail(pointer, "expected an array");
  RatVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rat_at(j[i], pointer + "/" + std::to_string(i)));
  return out;
}

RatMatrix parse_matrix_at(const Json& j, const std::string& pointer) {
  if (!j.is_array()) schema_fail(pointer, "expected an array of rows");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_vector_at(j[i], pointer + "/" + std::to_string(i)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) schema_fail(pointer + "/" + std::to_string(i), "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  }
  return m;
}

Json algebra_json(const LieAlgebra& alg) {
  Json out = Json::object();
  write_algebra_fields(out, alg);
  return out;
}

Json metric_algebra_json(const MetricNilLieAlgebra& m) {
  Json out = algebra_json(m.algebra());
  out["metric"] = matrix_json(m.metric().gram());
  return out;
}

Json data_set_json(const DataSet& d) {
  Json out = algebra_json(d.g);
  out["metric_g"] = matrix_json(d.metric_g.gram());
  Json rep = Json::array();
  for (const auto& r : d.rep) rep.push_back(matrix_json(r));
  out["rep"] = rep;
  out["metric_V"] = matrix_json(d.metric_v.gram());
  if (!d.v_names.empty()) out["v_basis"] = d.v_names;
  return out;
}

Json lattice_json(const LatticeSpec& spec) { return Json{{"scaling", vector_json(spec.scaling)}}; }

LieAlgebra parse_algebra(const Json& j) {
  allow_keys(j, "", {"dim", "basis", "brackets", "metric", "generated_by"});
  return parse_algebra_fields(j, "");
}

MetricNilLieAlgebra parse_metric_algebra(const Json& j) {
  allow_keys(j, "", {"dim", "basis", "brackets", "metric", "generated_by"});
  LieAlgebra alg = parse_algebra_fields(j, "");
  const RatMatrix gram = parse_matrix_at(member(j, "", "metric"), "/metric");
  if (gram.rows() != alg.dim() || gram.cols() != alg.dim()) schema_fail("/metric", "metric must be dim×dim");
  if (!gram.is_symmetric()) schema_fail("/metric", "metric must be symmetric");
  return MetricNilLieAlgebra(NilLieAlgebra(std::move(alg)), SymmetricForm(gram));
}

DataSet parse_data_set(const Json& j) {
  allow_keys(j, "", {"dim", "basis", "brackets", "metric_g", "rep", "metric_V", "v_basis", "generated_by"});
  LieAlgebra g = parse_algebra_fields(j, "");
  const RatMatrix gram_g = parse_matrix_at(member(j, "", "metric_g"), "/metric_g");
  if (!gram_g.is_square() || !gram_g.is_symmetric()) schema_fail("/metric_g", "expected a symmetric matrix");
  const RatMatrix gram_v = parse_matrix_at(member(j, "", "metric_V"), "/metric_V");
  if (!gram_v.is_square() || !gram_v.is_symmetric()) schema_fail("/metric_V", "expected a symmetric matrix");
  const Json& rep_json = member(j, "", "rep");
  if (!rep_json.is_array()) schema_fail("/rep", "expected an array of matrices");
  std::vector<RatMatrix> rep;
  for (std::size_t i = 0; i < rep_json.size(); ++i) {
    rep.push_back(parse_matrix_at(rep_json[i], "/rep/" + std::to_string(i)));
  }
  std::vector<std::string> v_names;
  if (j.contains("v_basis")) v_names = parse_names(j.at("v_basis"), "/v_basis", gram_v.rows());
  return DataSet{std::move(g), SymmetricForm(gram_g), std::move(rep), SymmetricForm(gram_v), std::move(v_names)};
}

LatticeSpec parse_lattice(const Json& j) {
  allow_keys(j, "", {"scaling", "generated_by"});
  return LatticeSpec{parse_vector_at(member(j, "", "scaling"), "/scaling")};
}

Document parse_document(const Json& j) {
  if (!j.is_object()) schema_fail("", "expected a JSON object");
  if (j.contains("scaling")) return parse_lattice(j);
  if (j.contains("rep")) return parse_data_set(j);
  return parse_metric_algebra(j);
}

Json document_json(const Document& doc) {
  return std::visit(
      [](const auto& value) -> Json {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, MetricNilLieAlgebra>) return metric_algebra_json(value);
        else if constexpr (std::is_same_v<T, DataSet>) return data_set_json(value);
        else return lattice_json(value);
      },
      doc);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

Document parse_input(const std::string& path) { return parse_document(read_json_file(path)); }

}  // namespace nilgeo::io
