#include "sicpovm/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "sicpovm/errors.hpp"

namespace sicpovm {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

json parse_json(std::istream& source) {
  try {
    return json::parse(source);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& member(const json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return object.at(key);
}

int positive_int(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 1 || value.get<long long>() > 4096) {
    throw ParseError(std::string(what) + " must be a positive integer");
  }
  return value.get<int>();
}

json basis_to_json(const ErrorBasis& basis) {
  json ops = json::array();
  for (const Matrix& op : basis.ops()) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
      for (Eigen::Index c = 0; c < op.cols(); ++c) entries.push_back(complex_to_json(op(r, c)));
    }
    ops.push_back(std::move(entries));
  }
  json labels = json::array();
  for (const BasisLabel& label : basis.labels()) {
    if (label.index) {
      labels.push_back(json::array({(*label.index)[0], (*label.index)[1]}));
    } else {
      labels.push_back(label.name);
    }
  }
  return json{{"d", basis.dimension()}, {"ops", std::move(ops)}, {"labels", std::move(labels)}};
}

ErrorBasis basis_from_json(const json& j) {
  const int d = positive_int(member(j, "d"), "basis \"d\"");
  const json& ops_json = member(j, "ops");
  if (!ops_json.is_array()) throw ParseError("basis \"ops\" must be an array");

  std::vector<Matrix> ops;
  ops.reserve(ops_json.size());
  for (const json& entries : ops_json) {
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
      throw ParseError("each basis operator needs d*d = " + std::to_string(d * d) + " entries");
    }
    Matrix op(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) op(r, c) = complex_from_json(entries[static_cast<std::size_t>(r * d + c)]);
    }
    ops.push_back(std::move(op));
  }

  std::vector<BasisLabel> labels;
  if (j.contains("labels")) {
    const json& labels_json = j.at("labels");
    if (!labels_json.is_array()) throw ParseError("basis \"labels\" must be an array");
    for (const json& label : labels_json) {
      if (label.is_array() && label.size() == 2 && label[0].is_number_integer() &&
          label[1].is_number_integer()) {
        labels.push_back(BasisLabel::pair(label[0].get<int>(), label[1].get<int>()));
      } else if (label.is_string()) {
        labels.push_back(BasisLabel::named(label.get<std::string>()));
      } else {
        throw ParseError("basis labels must be [j,k] pairs or strings");
      }
    }
  } else {
    for (std::size_t g = 0; g < ops.size(); ++g) labels.push_back(BasisLabel::named(std::to_string(g)));
  }

  try {
    return ErrorBasis(d, std::move(ops), std::move(labels));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("basis structure: ") + e.what());
  }
}

ErrorBasis validated(ErrorBasis basis) {
  const BasisValidation report = validate_error_basis(basis, 1e-10);
  if (!report.passed) {
    std::ostringstream msg;
    msg << "basis rejected: unitarity deviation " << report.max_unitarity_deviation
        << ", orthogonality deviation " << report.max_orthogonality_deviation
        << ", identity elements " << report.identity_count;
    throw RejectedBasisError(msg.str(), report.max_unitarity_deviation,
                             report.max_orthogonality_deviation);
  }
  return canonicalize_identity(basis, 1e-10);
}

json optional_number(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

const char* flag_name(CertificateFlag flag) {
  switch (flag) {
    case CertificateFlag::insufficient_support:
      return "insufficient_support";
    case CertificateFlag::wrong_cardinality:
      return "wrong_cardinality";
    case CertificateFlag::none:
      break;
  }
  return "none";
}

}  // namespace

std::string serialize_error_basis(const ErrorBasis& basis) { return basis_to_json(basis).dump(); }

ErrorBasis parse_error_basis(std::istream& source) { return basis_from_json(parse_json(source)); }

ErrorBasis load_error_basis(std::istream& source) { return validated(parse_error_basis(source)); }

ErrorBasis load_error_basis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open basis file " + path.string());
  return load_error_basis(in);
}

std::shared_ptr<const ErrorBasis> FiducialFile::resolved_basis() const {
  if (basis) return basis;
  return std::make_shared<const ErrorBasis>(build_wh_basis(fiducial.dimension()));
}

std::string serialize_fiducial_file(const FiducialFile& file) {
  json basis_json;
  if (file.basis_file) {
    basis_json = json{{"file", *file.basis_file}};
  } else if (file.basis && !file.basis->is_weyl_heisenberg()) {
    basis_json = basis_to_json(*file.basis);
  } else {
    basis_json = "wh";
  }

  json provenance{{"method", file.provenance.method}};
  provenance["seed"] = file.provenance.seed ? json(*file.provenance.seed) : json(nullptr);
  provenance["objective"] = optional_number(file.provenance.objective);
  provenance["sic_deviation"] = optional_number(file.provenance.sic_deviation);
  provenance["timestamp"] = file.provenance.timestamp ? json(*file.provenance.timestamp) : json(nullptr);

  const json out{{"format_version", file.format_version},
                 {"d", file.fiducial.dimension()},
                 {"amplitudes", vector_to_json(file.fiducial.amplitudes())},
                 {"basis", std::move(basis_json)},
                 {"provenance", std::move(provenance)}};
  return out.dump(2);
}

FiducialFile parse_fiducial_file(std::istream& source, const std::filesystem::path& base_dir) {
  const json j = parse_json(source);
  FiducialFile file;

  const json& version = member(j, "format_version");
  if (!version.is_number_integer()) throw ParseError("format_version must be an integer");
  file.format_version = version.get<int>();
  if (file.format_version != kFiducialFormatVersion) {
    throw ParseError("unsupported format_version " + std::to_string(file.format_version));
  }

  const int d = positive_int(member(j, "d"), "\"d\"");
  const json& amplitudes = member(j, "amplitudes");
  if (!amplitudes.is_array() || amplitudes.size() != static_cast<std::size_t>(d)) {
    throw ParseError("amplitudes must hold exactly d entries");
  }
  Vector v(d);
  for (int k = 0; k < d; ++k) v(k) = complex_from_json(amplitudes[static_cast<std::size_t>(k)]);
  const double norm = v.norm();
  const double drift = std::abs(norm - 1.0);
  if (!(drift <= kLoadNormTolerance)) {
    throw ParseError("amplitudes are not normalized (norm " + std::to_string(norm) + ")");
  }
  if (drift > kLoadNormWarning) {
    file.warnings.push_back("amplitudes renormalized (norm drift " + std::to_string(drift) + ")");
    v /= norm;
  } else if (drift > kNormTolerance) {
    v /= norm;
  }
  file.fiducial = Fiducial(v);

  if (j.contains("basis")) {
    const json& basis = j.at("basis");
    if (basis.is_string()) {
      if (basis.get<std::string>() != "wh") throw ParseError("unknown basis name");
    } else if (basis.is_object() && basis.contains("file")) {
      if (!basis.at("file").is_string()) throw ParseError("basis file must be a string");
      file.basis_file = basis.at("file").get<std::string>();
      std::filesystem::path path(*file.basis_file);
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      file.basis = std::make_shared<const ErrorBasis>(load_error_basis(path));
    } else if (basis.is_object()) {
      file.basis = std::make_shared<const ErrorBasis>(validated(basis_from_json(basis)));
    } else {
      throw ParseError("basis must be \"wh\", an inline basis or {\"file\": path}");
    }
    if (file.basis && file.basis->dimension() != d) throw ParseError("basis dimension mismatch");
  }

  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    if (!p.is_object()) throw ParseError("provenance must be an object");
    if (p.contains("method") && p.at("method").is_string()) file.provenance.method = p.at("method");
    if (p.contains("seed") && p.at("seed").is_number_unsigned()) file.provenance.seed = p.at("seed").get<std::uint64_t>();
    if (p.contains("objective") && p.at("objective").is_number()) file.provenance.objective = p.at("objective").get<double>();
    if (p.contains("sic_deviation") && p.at("sic_deviation").is_number()) {
      file.provenance.sic_deviation = p.at("sic_deviation").get<double>();
    }
    if (p.contains("timestamp") && p.at("timestamp").is_string()) file.provenance.timestamp = p.at("timestamp");
  }
  return file;
}

FiducialFile read_fiducial_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fiducial file " + path.string());
  return parse_fiducial_file(in, path.parent_path());
}

std::string serialize_certificate(const DesignCertificate& cert) {
  json out{{"t", cert.t},
           {"n", cert.n},
           {"d", cert.d},
           {"potential", cert.potential},
           {"threshold", cert.threshold},
           {"deviation", cert.deviation},
           {"max_overlap_error", optional_number(cert.max_overlap_error)},
           {"passed", cert.passed},
           {"tol", cert.tol}};
  if (cert.flag != CertificateFlag::none) out["flag"] = flag_name(cert.flag);
  return out.dump();
}

std::string serialize_search_record(const SearchResult& result) {
  const json out{{"restart", result.restart_index},     {"seed", result.seed},
                 {"objective", result.objective},       {"sic_deviation", result.sic_deviation},
                 {"iterations", result.iterations},     {"converged", result.converged}};
  return out.dump();
}

std::string serialize_census(const Census& census) {
  json reps = json::array();
  for (const Fiducial& f : census.representatives) reps.push_back(vector_to_json(f.amplitudes()));
  json curve = json::array();
  for (const auto& [run, count] : census.new_solution_curve) curve.push_back(json::array({run, count}));
  const json out{{"d", census.d},
                 {"count", census.count},
                 {"runs", census.runs},
                 {"converged_runs", census.converged_runs},
                 {"continuum_suspected", census.continuum_suspected},
                 {"low_confidence", census.low_confidence},
                 {"min_inter_class_distance", census.min_inter_class_distance},
                 {"new_solution_curve", std::move(curve)},
                 {"representatives", std::move(reps)}};
  return out.dump(2);
}

}  // namespace sicpovm
