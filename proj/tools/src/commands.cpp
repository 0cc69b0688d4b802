#include "nilgeo_tools/commands.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "nilgeo/reductive.hpp"
#include "nilgeo_tools/json_io.hpp"

namespace nilgeo::cli {

namespace {

using io::Json;

enum Exit { kOk = 0, kInputError = 1, kPropertyFails = 2, kInapplicable = 3 };

struct Loaded {
  io::Document doc;
  Json canonical;
  std::optional<LatticeSpec> lattice;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InternalInconsistency, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

/// Digest over key-sorted JSON so formatting and key order do not matter.
std::string digest_of(const Json& j) {
  Json payload = j;
  if (payload.is_object()) payload.erase("generated_by");
  return "sha256:" + sha256_hex(nlohmann::json::parse(payload.dump()).dump());
}

Json header(const std::string& command, const std::string& digest) {
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"input_digest", digest}};
}

RatVector parse_list(const std::string& text, const char* flag) {
  RatVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rat(item));
    } catch (const Error&) {
      throw Error(ErrorCode::SchemaError, std::string("--") + flag + ": '" + item + "' is not a rational");
    }
  }
  if (out.empty()) throw Error(ErrorCode::SchemaError, std::string("--") + flag + " needs a comma-separated list");
  return out;
}

Json witness_json(const std::vector<std::string>& names, const std::vector<std::size_t>& indices) {
  Json idx = Json::array();
  Json labels = Json::array();
  for (auto i : indices) {
    idx.push_back(i + 1);
    labels.push_back(i < names.size() ? names[i] : std::to_string(i + 1));
  }
  return Json{{"indices", idx}, {"names", labels}};
}

Json basis_json(const RatMatrix& basis) {
  Json out = Json::array();
  for (std::size_t c = 0; c < basis.cols(); ++c) out.push_back(io::vector_json(basis.column(c)));
  return out;
}

Json signature_json(const SymmetricForm& form) {
  const Signature s = signature(form);
  return Json{{"p", s.p}, {"q", s.q}, {"r", s.r}};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidShape:
    case ErrorCode::InvalidBasis:
    case ErrorCode::InvalidForm:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::JacobiViolation:
    case ErrorCode::NotNilpotent:
    case ErrorCode::UnknownExample:
      return kInputError;
    case ErrorCode::DegenerateCenter:
    case ErrorCode::NotTwoStep:
    case ErrorCode::NotAdInvariant:
    case ErrorCode::DegeneratePlane:
      return kInapplicable;
    default:
      return kPropertyFails;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

class Runner {
 public:
  explicit Runner(const Command& cmd) : cmd_(cmd) {}

  RunResult execute() {
    try {
      load();
      if (!loaded_) return catalog(nullptr);
      return dispatch(cmd_.name, *loaded_);
    } catch (const DataSetError& e) {
      Json report = header(cmd_.name, digest_);
      report["status"] = "error";
      Json list = Json::array();
      for (const auto& v : e.violations()) {
        Json item{{"code", std::string(to_string(v.code))}, {"message", v.message}};
        Json w = Json::array();
        for (auto i : v.witness) w.push_back(i + 1);
        item["witness"] = w;
        list.push_back(item);
      }
      report["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"violations", list}};
      return {kPropertyFails, dump(report)};
    } catch (const Error& e) {
      Json report = header(cmd_.name, digest_);
      report["status"] = "error";
      report["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      if (!e.witness().empty()) report["error"]["witness"] = witness_json(names_, e.witness());
      return {exit_for(e.code()), dump(report)};
    }
  }

 private:
  void load() {
    if (cmd_.name == "catalog" && cmd_.catalog.empty()) return;
    Json canonical;
    io::Document doc = [&]() -> io::Document {
      if (!cmd_.catalog.empty()) {
        if (!cmd_.input.empty()) throw Error(ErrorCode::SchemaError, "--input and --catalog are exclusive");
        auto entry = example_catalog(cmd_.catalog);
        return std::visit([](auto&& v) -> io::Document { return v; }, std::move(entry));
      }
      if (cmd_.input.empty()) throw Error(ErrorCode::SchemaError, "--input or --catalog is required");
      return io::parse_document(io::read_json_file(cmd_.input));
    }();
    canonical = io::document_json(doc);
    Json digest_payload{{"input", canonical}};
    std::optional<LatticeSpec> lattice;
    if (!cmd_.lattice.empty()) {
      const Json lj = io::read_json_file(cmd_.lattice);
      lattice = io::parse_lattice(lj);
      digest_payload["lattice"] = io::lattice_json(*lattice);
    }
    digest_ = digest_of(digest_payload);
    if (const auto* m = std::get_if<MetricNilLieAlgebra>(&doc)) names_ = m->algebra().names();
    loaded_ = Loaded{std::move(doc), std::move(canonical), std::move(lattice)};
  }

  MetricNilLieAlgebra metric_of(const Loaded& in) {
    if (const auto* m = std::get_if<MetricNilLieAlgebra>(&in.doc)) return *m;
    if (const auto* d = std::get_if<DataSet>(&in.doc)) {
      MetricNilLieAlgebra m = from_data_set(*d);
      names_ = m.algebra().names();
      return m;
    }
    throw Error(ErrorCode::SchemaError, "command '" + cmd_.name + "' needs an algebra or data set, not a lattice");
  }

  RunResult dispatch(const std::string& name, Loaded& in) {
    if (name == "catalog") return catalog(in);
    if (name == "validate") return validate(in);
    if (name == "isotropy") return isotropy(in);
    if (name == "construct") return construct(in);
    const MetricNilLieAlgebra m = metric_of(in);
    if (name == "report") return report(m);
    if (name == "curvature") return curvature(m);
    if (name == "sectional") return sectional(m);
    if (name == "ricci") return ricci_cmd(m);
    if (name == "geodesic") return geodesic_cmd(m);
    if (name == "reductive") return reductive(m);
    if (name == "adinv") return adinv(m);
    if (name == "corank") return corank(m);
    if (name == "lattice") return lattice(m, in);
    throw Error(ErrorCode::SchemaError, "unknown command '" + name + "'");
  }

  Json base(const std::string& command) const {
    Json out = header(command, digest_);
    out["status"] = "ok";
    return out;
  }

  RunResult catalog(const Loaded* in) {
    if (!in) {
      Json out = header("catalog", "");
      out.erase("input_digest");
      out["status"] = "ok";
      out["ids"] = catalog_ids();
      return {kOk, dump(out)};
    }
    Json doc = in->canonical;
    doc["generated_by"] = Json{{"tool", kToolName}, {"version", kToolVersion}, {"catalog", cmd_.catalog}};
    return {kOk, dump(doc)};
  }
  RunResult catalog(Loaded& in) { return catalog(&in); }

  RunResult validate(Loaded& in) {
    Json out = base("validate");
    if (const auto* d = std::get_if<DataSet>(&in.doc)) {
      out["kind"] = "data_set";
      const auto violations = validate_data_set(*d);
      out["valid"] = violations.empty();
      Json list = Json::array();
      for (const auto& v : violations) {
        Json w = Json::array();
        for (auto i : v.witness) w.push_back(i + 1);
        list.push_back(Json{{"code", std::string(to_string(v.code))}, {"message", v.message}, {"witness", w}});
      }
      out["violations"] = list;
      out["signature_g"] = signature_json(d->metric_g);
      out["signature_V"] = signature_json(d->metric_v);
      if (!violations.empty()) out["status"] = "fails";
      return {violations.empty() ? kOk : kPropertyFails, dump(out)};
    }
    if (const auto* l = std::get_if<LatticeSpec>(&in.doc)) {
      out["kind"] = "lattice";
      out["valid"] = true;
      out["scaling"] = io::vector_json(l->scaling);
      return {kOk, dump(out)};
    }
    const auto& m = std::get<MetricNilLieAlgebra>(in.doc);
    out["kind"] = "metric_algebra";
    out["valid"] = true;
    out["dim"] = m.dim();
    out["step"] = *m.algebra().nilpotency_step();
    out["two_step"] = m.is_two_step();
    out["signature"] = signature_json(m.metric());
    return {kOk, dump(out)};
  }

  static std::vector<DataSetViolation> validate_data_set(const DataSet& d) { return nilgeo::validate(d); }

  RunResult report(const MetricNilLieAlgebra& m) {
    const StructureReport r = structure_report(m.algebra());
    Json out = base("report");
    out["dim"] = m.dim();
    out["basis"] = m.algebra().names();
    out["step"] = *r.step;
    out["two_step"] = m.is_two_step();
    out["center"] = basis_json(r.center);
    out["commutator"] = basis_json(r.commutator);
    out["corank"] = r.corank;
    out["commutator_in_center"] = r.commutator_in_center;
    out["signature"] = signature_json(m.metric());
    out["center_signature"] = signature_json(m.metric().restrict_to(r.center));
    out["ad_invariant"] = is_ad_invariant(m).invariant;
    if (m.is_two_step()) {
      try {
        const CenterSplitting s = center_splitting(m);
        Json split{{"z", basis_json(s.z_basis)}, {"v", basis_json(s.v_basis)}, {"j_injective", s.j_injective}};
        Json js = Json::array();
        for (const auto& j : s.j_ops) js.push_back(io::matrix_json(j));
        split["j"] = js;
        const NonsingularityResult ns = is_nonsingular(m, s);
        static const char* kVerdicts[] = {"Nonsingular", "SingularWitness", "ProbablyNonsingular"};
        split["nonsingularity"] = Json{{"verdict", kVerdicts[static_cast<int>(ns.verdict)]}};
        if (!ns.witness.empty()) split["nonsingularity"]["witness_z_coords"] = io::vector_json(ns.witness);
        out["center_splitting"] = split;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateCenter) throw;
        const WittParts w = witt_decompose(m.metric(), r.center);
        out["center_splitting"] = nullptr;
        out["witt"] = Json{{"u", basis_json(w.u)},
                           {"v", basis_json(w.v)},
                           {"z_tilde", basis_json(w.z_tilde)},
                           {"v_tilde", basis_json(w.v_tilde)}};
      }
    }
    return {kOk, dump(out)};
  }

  RunResult curvature(const MetricNilLieAlgebra& m) {
    Json out = base("curvature");
    const std::size_t n = m.dim();
    const LeviCivita lc(m);
    if (!cmd_.x.empty() || !cmd_.y.empty() || !cmd_.z.empty()) {
      const RatVector x = sized(parse_list(cmd_.x, "x"), n, "x");
      const RatVector y = sized(parse_list(cmd_.y, "y"), n, "y");
      const RatVector z = sized(parse_list(cmd_.z, "z"), n, "z");
      out["value"] = io::vector_json(lc.curvature(x, y, z));
      return {kOk, dump(out)};
    }
    Json entries = Json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const RatMatrix r = lc.curvature_operator(unit_vector(n, i), unit_vector(n, j));
        for (std::size_t k = 0; k < n; ++k) {
          const RatVector v = r.column(k);
          if (!is_zero(v)) entries.push_back(Json{{"x", i + 1}, {"y", j + 1}, {"z", k + 1}, {"R", io::vector_json(v)}});
        }
      }
    const FlatnessResult f = flatness_check(m);
    out["flat"] = f.flat;
    if (f.witness) out["witness"] = witness_json(names_, {(*f.witness)[0], (*f.witness)[1], (*f.witness)[2]});
    out["nonzero"] = entries;
    return {kOk, dump(out)};
  }

  RunResult sectional(const MetricNilLieAlgebra& m) {
    Json out = base("sectional");
    const std::size_t n = m.dim();
    if (!cmd_.x.empty() || !cmd_.y.empty()) {
      const RatVector x = sized(parse_list(cmd_.x, "x"), n, "x");
      const RatVector y = sized(parse_list(cmd_.y, "y"), n, "y");
      out["K"] = io::rat_json(sectional_curvature(m, x, y));
      return {kOk, dump(out)};
    }
    Json table = Json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Json row{{"x", i + 1}, {"y", j + 1}};
        try {
          row["K"] = io::rat_json(sectional_curvature(m, unit_vector(n, i), unit_vector(n, j)));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegeneratePlane) throw;
          row["K"] = nullptr;
          row["degenerate"] = true;
        }
        table.push_back(row);
      }
    out["basis_planes"] = table;
    return {kOk, dump(out)};
  }

  RunResult ricci_cmd(const MetricNilLieAlgebra& m) {
    const RicciReport r = ricci(m);
    Json out = base("ricci");
    out["ric"] = io::matrix_json(r.ric);
    out["transformation"] = io::matrix_json(r.transformation);
    out["block_formulas_checked"] = r.block_formulas_checked;
    return {kOk, dump(out)};
  }

  RunResult geodesic_cmd(const MetricNilLieAlgebra& m) {
    const CenterSplitting s = center_splitting(m);
    if (cmd_.z0.empty() || cmd_.v0.empty()) {
      throw Error(ErrorCode::SchemaError, "geodesic needs --z0 and --v0 (splitting coordinates)");
    }
    const auto z0 = to_double(sized(parse_list(cmd_.z0, "z0"), s.dim_z(), "z0"));
    const auto v0 = to_double(sized(parse_list(cmd_.v0, "v0"), s.dim_v(), "v0"));
    if (!(cmd_.t_step > 0) || !std::isfinite(cmd_.t_start) || !std::isfinite(cmd_.t_end) ||
        cmd_.t_end < cmd_.t_start) {
      throw Error(ErrorCode::SchemaError, "need t-start ≤ t-end and t-step > 0");
    }
    const auto count = static_cast<std::size_t>(std::llround((cmd_.t_end - cmd_.t_start) / cmd_.t_step)) + 1;
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(cmd_.t_start + static_cast<double>(i) * cmd_.t_step);
    const auto samples = geodesic(m, s, z0, v0, grid);

    std::string csv = "t";
    for (std::size_t a = 0; a < s.dim_z(); ++a) csv += ",z" + std::to_string(a + 1);
    for (std::size_t a = 0; a < s.dim_v(); ++a) csv += ",v" + std::to_string(a + 1);
    for (std::size_t a = 0; a < m.dim(); ++a) csv += ",vel_" + m.algebra().names()[a];
    csv += ",residual\n";
    double worst = 0.0;
    for (const auto& smp : samples) {
      csv += format_double(smp.t);
      for (double x : smp.z) csv += "," + format_double(x);
      for (double x : smp.v) csv += "," + format_double(x);
      for (double x : smp.velocity) csv += "," + format_double(x);
      csv += "," + format_double(smp.residual) + "\n";
      worst = std::max(worst, smp.residual);
    }
    return {worst <= cmd_.tolerance ? kOk : kPropertyFails, csv};
  }

  RunResult reductive(const MetricNilLieAlgebra& m) {
    const ReductivityReport r = naturally_reductive_check(m);
    Json out = base("reductive");
    static const char* kVerdicts[] = {"NaturallyReductive", "Fails", "Inapplicable"};
    out["verdict"] = kVerdicts[static_cast<int>(r.verdict)];
    out["j_injective"] = r.j_injective;
    out["closed_under_bracket"] = r.closed_under_bracket;
    out["tau_skew"] = r.tau_skew;
    if (!r.reason.empty()) out["reason"] = r.reason;
    if (!r.witness.empty()) {
      Json w = Json::array();
      for (auto i : r.witness) w.push_back(i + 1);
      out["witness_z_indices"] = w;
    }
    out["z_basis"] = basis_json(r.splitting.z_basis);
    if (auto tau = r.tau_algebra()) out["tau"] = io::algebra_json(*tau)["brackets"];
    switch (r.verdict) {
      case ReductivityVerdict::NaturallyReductive:
        return {kOk, dump(out)};
      case ReductivityVerdict::Fails:
        out["status"] = "fails";
        return {kPropertyFails, dump(out)};
      default:
        out["status"] = "inapplicable";
        return {kInapplicable, dump(out)};
    }
  }

  RunResult isotropy(Loaded& in) {
    const IsotropyAlgebra h = [&] {
      if (const auto* d = std::get_if<DataSet>(&in.doc)) return isotropy_algebra(*d);
      return isotropy_algebra(metric_of(in));
    }();
    Json out = base("isotropy");
    out["dim"] = h.dim();
    Json basis = Json::array();
    for (const auto& e : h.basis) basis.push_back(Json{{"A", io::matrix_json(e.a)}, {"B", io::matrix_json(e.b)}});
    out["basis"] = basis;
    out["z_basis"] = basis_json(h.splitting.z_basis);
    out["v_basis"] = basis_json(h.splitting.v_basis);
    return {kOk, dump(out)};
  }

  RunResult adinv(const MetricNilLieAlgebra& m) {
    const AdInvarianceResult r = is_ad_invariant(m);
    Json out = base("adinv");
    out["ad_invariant"] = r.invariant;
    if (r.invariant) return {kOk, dump(out)};
    out["status"] = "fails";
    out["witness"] = witness_json(names_, {(*r.witness)[0], (*r.witness)[1], (*r.witness)[2]});
    return {kPropertyFails, dump(out)};
  }

  RunResult corank(const MetricNilLieAlgebra& m) {
    const CorankNormalForm f = corank_decomposition(m);
    Json out = base("corank");
    out["corank"] = f.corank;
    out["z_tilde"] = basis_json(f.z_tilde_basis);
    out["n_tilde"] = basis_json(f.n_tilde_basis);
    out["u"] = basis_json(f.u_basis);
    out["v"] = basis_json(f.v_basis);
    out["inner_v"] = io::matrix_json(f.inner_v.gram());
    Json rho = Json::array();
    for (const auto& r : f.rho) rho.push_back(io::matrix_json(r));
    out["rho"] = rho;
    out["embedding"] = io::matrix_json(f.embedding);
    if (f.rebuilt) out["modified_cotangent"] = io::metric_algebra_json(*f.rebuilt);
    return {kOk, dump(out)};
  }

  RunResult lattice(const MetricNilLieAlgebra& m, const Loaded& in) {
    if (!in.lattice) throw Error(ErrorCode::SchemaError, "lattice needs --lattice <file>");
    const LatticeClosure c = lattice_closure_check(m.algebra(), *in.lattice);
    Json out = base("lattice");
    out["scaling"] = io::vector_json(in.lattice->scaling);
    out["closed"] = c.closed;
    if (c.closed) return {kOk, dump(out)};
    out["status"] = "fails";
    out["witness"] = witness_json(names_, {c.witness->first, c.witness->second});
    return {kPropertyFails, dump(out)};
  }

  RunResult construct(Loaded& in) {
    std::string builder = cmd_.builder;
    if (builder.empty()) builder = std::holds_alternative<DataSet>(in.doc) ? "from-data-set" : "";
    MetricNilLieAlgebra built = [&] {
      if (builder == "from-data-set") {
        const auto* d = std::get_if<DataSet>(&in.doc);
        if (!d) throw Error(ErrorCode::SchemaError, "from-data-set needs a data set input");
        return from_data_set(*d);
      }
      if (builder == "cotangent") return cotangent_double(metric_of(in).algebra());
      if (builder == "flip-center") return flip_center_sign(metric_of(in));
      throw Error(ErrorCode::SchemaError, "--builder must be from-data-set, cotangent or flip-center");
    }();
    names_ = built.algebra().names();
    if (!cmd_.then.empty()) {
      if (cmd_.then == "construct" || cmd_.then == "catalog") {
        throw Error(ErrorCode::SchemaError, "--then cannot chain construct or catalog");
      }
      Json canonical = io::metric_algebra_json(built);
      digest_ = digest_of(Json{{"input", canonical}});
      Loaded next{io::Document(built), std::move(canonical), in.lattice};
      Command chained = cmd_;
      chained.name = cmd_.then;
      cmd_.name = cmd_.then;
      return dispatch(chained.name, next);
    }
    Json doc = io::metric_algebra_json(built);
    doc["generated_by"] =
        Json{{"tool", kToolName}, {"version", kToolVersion}, {"builder", builder}, {"input_digest", digest_}};
    return {kOk, dump(doc)};
  }

  static RatVector sized(RatVector v, std::size_t n, const char* flag) {
    if (v.size() != n) {
      throw Error(ErrorCode::SchemaError,
                  std::string("--") + flag + " needs " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
    return v;
  }

  Command cmd_;
  std::optional<Loaded> loaded_;
  std::string digest_;
  std::vector<std::string> names_;
};

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate",  "report",  "curvature", "sectional", "ricci",
                                                 "geodesic",  "reductive", "isotropy", "adinv",     "corank",
                                                 "construct", "lattice", "catalog"};
  return names;
}

RunResult run(const Command& cmd) { return Runner(cmd).execute(); }

}  // namespace nilgeo::cli
