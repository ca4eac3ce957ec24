#include "grassconv/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grassconv {

const char* to_string(ReportFormat format) {
  return format == ReportFormat::json ? "json" : "csv";
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failure: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

// Hand-rolled JSON writer: fixed key order and 17-significant-digit numbers
// keep the reports byte-stable, which the determinism guarantee relies on.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  void raw(const std::string& text) { out_ += text; }
  void key(const std::string& name) { raw('"' + name + "\":"); }
  void string(const std::string& value) { raw('"' + value + '"'); }
  void number(double value) { raw(format_real(value)); }
  void integer(long long value) { raw(std::to_string(value)); }
  void boolean(bool value) { raw(value ? "true" : "false"); }

  void matrix(const Matrix& m) {
    raw("[");
    for (Index i = 0; i < m.rows(); ++i) {
      if (i) raw(",");
      raw("[");
      for (Index j = 0; j < m.cols(); ++j) {
        if (j) raw(",");
        number(m(i, j));
      }
      raw("]");
    }
    raw("]");
  }

  void vector(const Vector& v) {
    raw("[");
    for (Index i = 0; i < v.size(); ++i) {
      if (i) raw(",");
      number(v(i));
    }
    raw("]");
  }

 private:
  std::string out_;
};

void write_meta(JsonWriter& w, bool timing, double wall_clock_ms) {
  w.key("meta");
  w.raw("{");
  w.key("version");
  w.string(kVersion);
  w.raw(",");
  w.key("rng");
  w.string(kRngName);
  if (timing) {
    w.raw(",");
    w.key("wall_clock_ms");
    w.number(wall_clock_ms);
  }
  w.raw("}");
}

std::string join_semicolon(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_real(v(i));
  }
  return out;
}

std::string join_semicolon(const Matrix& m) { return join_semicolon(flatten(m)); }

}  // namespace

void CampaignConfig::validate() const {
  if (n < 1 || m < 1 || n > kMaxDim || m > kMaxDim)
    throw std::invalid_argument("n and m must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(margin > 0) || margin >= 0.5) throw std::invalid_argument("margin must lie in (0, 0.5)");
  if (estimates.empty()) throw std::invalid_argument("estimate set must not be empty");
  if (std::min(n, m) < 2)
    for (EstimateKind kind : estimates)
      if (kind == EstimateKind::h1 || kind == EstimateKind::h2 || kind == EstimateKind::h3 ||
          kind == EstimateKind::h4)
        throw std::invalid_argument(std::string("estimate ") + to_string(kind) +
                                    " requires min(n, m) >= 2");
}

bool VerificationReport::all_passed() const {
  for (const EstimateSummary& summary : results)
    if (summary.failed > 0) return false;
  return true;
}

std::string to_json(const VerificationReport& report) {
  JsonWriter w;
  w.raw("{");
  w.key("config");
  w.raw("{");
  w.key("n");
  w.integer(report.config.n);
  w.raw(",");
  w.key("m");
  w.integer(report.config.m);
  w.raw(",");
  w.key("samples");
  w.integer(report.config.samples);
  w.raw(",");
  w.key("seed");
  w.string(std::to_string(report.config.seed));
  w.raw(",");
  w.key("tolerance");
  w.number(report.config.tolerance);
  w.raw(",");
  w.key("margin");
  w.number(report.config.margin);
  w.raw(",");
  w.key("estimates");
  w.raw("[");
  for (std::size_t k = 0; k < report.config.estimates.size(); ++k) {
    if (k) w.raw(",");
    w.string(to_string(report.config.estimates[k]));
  }
  w.raw("]},");
  w.key("results");
  w.raw("[");
  for (std::size_t k = 0; k < report.results.size(); ++k) {
    const EstimateSummary& s = report.results[k];
    if (k) w.raw(",");
    w.raw("{");
    w.key("estimate");
    w.string(to_string(s.kind));
    w.raw(",");
    w.key("passed");
    w.integer(s.passed);
    w.raw(",");
    w.key("failed");
    w.integer(s.failed);
    w.raw(",");
    w.key("min_eig");
    w.number(s.min_eigenvalue);
    w.raw(",");
    w.key("argmin");
    w.raw("{");
    w.key("Z");
    w.matrix(s.argmin_z);
    w.raw(",");
    w.key("theta");
    w.vector(s.argmin_theta);
    w.raw("}}");
  }
  w.raw("],");
  w.key("failures");
  w.raw("[");
  for (std::size_t k = 0; k < report.failures.size(); ++k) {
    const FailureRecord& f = report.failures[k];
    if (k) w.raw(",");
    w.raw("{");
    w.key("estimate");
    w.string(to_string(f.kind));
    w.raw(",");
    w.key("sample");
    w.integer(f.sample_index);
    w.raw(",");
    w.key("min_eig");
    w.number(f.min_eigenvalue);
    w.raw(",");
    w.key("Z");
    w.matrix(f.z);
    w.raw(",");
    w.key("theta");
    w.vector(f.theta);
    w.raw("}");
  }
  w.raw("],");
  write_meta(w, report.config.timing, report.wall_clock_ms);
  w.raw("}");
  return w.str();
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "estimate,passed,failed,min_eig,argmin_theta,argmin_Z\n";
  for (const EstimateSummary& s : report.results) {
    out += to_string(s.kind);
    out += ',' + std::to_string(s.passed) + ',' + std::to_string(s.failed) + ',';
    out += format_real(s.min_eigenvalue) + ',';
    out += join_semicolon(s.argmin_theta) + ',' + join_semicolon(s.argmin_z) + '\n';
  }
  return out;
}

namespace {

Matrix matrix_from_json(const nlohmann::json& j) {
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows ? static_cast<Index>(j.at(0).size()) : 0;
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) out(i, c) = j.at(i).at(c).get<double>();
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  Vector out(static_cast<Index>(j.size()));
  for (Index i = 0; i < out.size(); ++i) out(i) = j.at(i).get<double>();
  return out;
}

}  // namespace

VerificationReport verification_report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport report;
  const auto& c = j.at("config");
  report.config.n = c.at("n").get<Index>();
  report.config.m = c.at("m").get<Index>();
  report.config.samples = c.at("samples").get<int>();
  report.config.seed = std::stoull(c.at("seed").get<std::string>());
  report.config.tolerance = c.at("tolerance").get<double>();
  report.config.margin = c.at("margin").get<double>();
  report.config.estimates.clear();
  for (const auto& name : c.at("estimates"))
    report.config.estimates.push_back(estimate_from_string(name.get<std::string>()));
  for (const auto& r : j.at("results")) {
    EstimateSummary s;
    s.kind = estimate_from_string(r.at("estimate").get<std::string>());
    s.passed = r.at("passed").get<int>();
    s.failed = r.at("failed").get<int>();
    s.min_eigenvalue = r.at("min_eig").get<double>();
    s.argmin_z = matrix_from_json(r.at("argmin").at("Z"));
    s.argmin_theta = vector_from_json(r.at("argmin").at("theta"));
    report.results.push_back(std::move(s));
  }
  for (const auto& r : j.at("failures")) {
    FailureRecord f;
    f.kind = estimate_from_string(r.at("estimate").get<std::string>());
    f.sample_index = r.at("sample").get<int>();
    f.min_eigenvalue = r.at("min_eig").get<double>();
    f.z = matrix_from_json(r.at("Z"));
    f.theta = vector_from_json(r.at("theta"));
    report.failures.push_back(std::move(f));
  }
  if (j.at("meta").contains("wall_clock_ms")) {
    report.config.timing = true;
    report.wall_clock_ms = j.at("meta").at("wall_clock_ms").get<double>();
  }
  return report;
}

void BoundaryConfig::validate() const {
  if (n < 1 || m < 1 || n > kMaxDim || m > kMaxDim)
    throw std::invalid_argument("n and m must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(angle_margin > 0) || angle_margin >= 0.5)
    throw std::invalid_argument("angle margin must lie in (0, 0.5)");
}

double BoundarySummary::agreement() const {
  const int total = inside + outside;
  if (total == 0) return 1.0;
  return static_cast<double>(inside_definite + outside_indefinite) / total;
}

bool BoundaryReport::all_passed() const {
  for (const BoundarySummary& s : results)
    if (s.agreement() != 1.0) return false;
  return true;
}

std::string to_json(const BoundaryReport& report) {
  JsonWriter w;
  w.raw("{");
  w.key("config");
  w.raw("{");
  w.key("n");
  w.integer(report.config.n);
  w.raw(",");
  w.key("m");
  w.integer(report.config.m);
  w.raw(",");
  w.key("samples");
  w.integer(report.config.samples);
  w.raw(",");
  w.key("seed");
  w.string(std::to_string(report.config.seed));
  w.raw(",");
  w.key("angle_margin");
  w.number(report.config.angle_margin);
  w.raw("},");
  w.key("results");
  w.raw("[");
  for (std::size_t k = 0; k < report.results.size(); ++k) {
    const BoundarySummary& s = report.results[k];
    if (k) w.raw(",");
    w.raw("{");
    w.key("function");
    w.string(s.function);
    w.raw(",");
    w.key("inside");
    w.integer(s.inside);
    w.raw(",");
    w.key("inside_definite");
    w.integer(s.inside_definite);
    w.raw(",");
    w.key("outside");
    w.integer(s.outside);
    w.raw(",");
    w.key("outside_indefinite");
    w.integer(s.outside_indefinite);
    w.raw(",");
    w.key("boundary_excluded");
    w.integer(s.boundary_excluded);
    w.raw(",");
    w.key("agreement");
    w.number(s.agreement());
    w.raw("}");
  }
  w.raw("],");
  write_meta(w, report.config.timing, report.wall_clock_ms);
  w.raw("}");
  return w.str();
}

std::string to_csv(const BoundaryReport& report) {
  std::string out =
      "function,inside,inside_definite,outside,outside_indefinite,boundary_excluded,agreement\n";
  for (const BoundarySummary& s : report.results) {
    out += s.function + ',' + std::to_string(s.inside) + ',' + std::to_string(s.inside_definite) +
           ',' + std::to_string(s.outside) + ',' + std::to_string(s.outside_indefinite) + ',' +
           std::to_string(s.boundary_excluded) + ',' + format_real(s.agreement()) + '\n';
  }
  return out;
}

void GraphConfig::validate() const {
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(minimality_tol > 0)) throw std::invalid_argument("minimality tolerance must be > 0");
  if (!(fd_step > 0) || fd_step > 1e-2)
    throw std::invalid_argument("fd step must lie in (0, 1e-2]");
  if (graph != "affine" && graph != "holomorphic-pair" && graph != "lawson-osserman" &&
      graph.rfind("file:", 0) != 0)
    throw std::invalid_argument("unknown graph kind: " + graph);
  if (graph == "affine" && (n < 1 || m < 1 || n > kMaxDim || m > kMaxDim))
    throw std::invalid_argument("affine graph needs valid n, m");
}

std::string to_json(const GraphReport& report) {
  JsonWriter w;
  w.raw("{");
  w.key("config");
  w.raw("{");
  w.key("graph");
  w.string(report.config.graph);
  w.raw(",");
  w.key("points");
  w.integer(report.config.points);
  w.raw(",");
  w.key("seed");
  w.string(std::to_string(report.config.seed));
  w.raw(",");
  w.key("tolerance");
  w.number(report.config.tolerance);
  w.raw(",");
  w.key("minimality_tol");
  w.number(report.config.minimality_tol);
  w.raw(",");
  w.key("fd_step");
  w.number(report.config.fd_step);
  w.raw("},");
  w.key("results");
  w.raw("[");
  for (std::size_t k = 0; k < report.points.size(); ++k) {
    const GraphPointRecord& r = report.points[k];
    if (k) w.raw(",");
    w.raw("{");
    w.key("index");
    w.integer(r.index);
    w.raw(",");
    w.key("x");
    w.vector(r.x);
    w.raw(",");
    w.key("delta_f");
    w.number(r.delta_f);
    w.raw(",");
    w.key("lambda_f");
    w.number(r.lambda_f);
    w.raw(",");
    w.key("norm_B2");
    w.number(r.norm_b2);
    w.raw(",");
    w.key("mean_curvature");
    w.number(r.mean_curvature_norm);
    w.raw(",");
    w.key("energy_identity_gap");
    if (r.energy_identity_gap)
      w.number(*r.energy_identity_gap);
    else
      w.raw("null");
    for (int h = 0; h < 4; ++h) {
      w.raw(",");
      w.key(std::string("h") + std::to_string(h + 1));
      w.raw("{");
      w.key("status");
      w.string(r.dh[h].status);
      if (r.dh[h].margin) {
        w.raw(",");
        w.key("margin");
        w.number(*r.dh[h].margin);
      }
      w.raw("}");
    }
    w.raw("}");
  }
  w.raw("],");
  w.key("summary");
  w.raw("{");
  w.key("points");
  w.integer(static_cast<long long>(report.points.size()));
  w.raw(",");
  w.key("identity_failures");
  w.integer(report.identity_failures);
  w.raw(",");
  w.key("inequality_failures");
  w.integer(report.inequality_failures);
  w.raw(",");
  w.key("delta_f_min");
  w.number(report.delta_f_min);
  w.raw(",");
  w.key("delta_f_max");
  w.number(report.delta_f_max);
  w.raw(",");
  w.key("max_mean_curvature");
  w.number(report.max_mean_curvature);
  w.raw("},");
  write_meta(w, report.config.timing, report.wall_clock_ms);
  w.raw("}");
  return w.str();
}

std::string to_csv(const GraphReport& report) {
  std::string out =
      "index,x,delta_f,lambda_f,norm_B2,mean_curvature,energy_identity_gap,"
      "h1_status,h1_margin,h2_status,h2_margin,h3_status,h3_margin,h4_status,h4_margin\n";
  for (const GraphPointRecord& r : report.points) {
    out += std::to_string(r.index) + ',' + join_semicolon(r.x) + ',';
    out += format_real(r.delta_f) + ',' + format_real(r.lambda_f) + ',';
    out += format_real(r.norm_b2) + ',' + format_real(r.mean_curvature_norm) + ',';
    out += r.energy_identity_gap ? format_real(*r.energy_identity_gap) : std::string();
    for (int h = 0; h < 4; ++h) {
      out += ',' + r.dh[h].status + ',';
      if (r.dh[h].margin) out += format_real(*r.dh[h].margin);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::optional<std::string> diff_json(const nlohmann::json& a, const nlohmann::json& b,
                                     const std::string& path) {
  if (a.type() != b.type()) return path + ": type mismatch";
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + ": missing key " + it.key();
      if (auto d = diff_json(it.value(), b.at(it.key()), path + "." + it.key())) return d;
    }
    for (auto it = b.begin(); it != b.end(); ++it)
      if (!a.contains(it.key())) return path + ": extra key " + it.key();
    return std::nullopt;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + ": array length differs";
    for (std::size_t k = 0; k < a.size(); ++k)
      if (auto d = diff_json(a.at(k), b.at(k), path + "[" + std::to_string(k) + "]")) return d;
    return std::nullopt;
  }
  if (a.is_number()) {
    if (a.get<double>() != b.get<double>())
      return path + ": " + a.dump() + " != " + b.dump();
    return std::nullopt;
  }
  if (a != b) return path + ": " + a.dump() + " != " + b.dump();
  return std::nullopt;
}

}  // namespace

std::optional<std::string> json_numeric_diff(const std::string& a, const std::string& b) {
  return diff_json(nlohmann::json::parse(a), nlohmann::json::parse(b), "$");
}

}  // namespace grassconv
