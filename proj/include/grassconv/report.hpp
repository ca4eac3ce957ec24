#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassconv/estimates.hpp"
#include "grassconv/graphs.hpp"

namespace grassconv {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kRngName = "splitmix64";

enum class ReportFormat { json, csv };

const char* to_string(ReportFormat format);

// ---------------------------------------------------------------------------
// verify-hessians

struct CampaignConfig {
  Index n = 3;
  Index m = 2;
  int samples = 1000;
  std::uint64_t seed = 42;
  double tolerance = 1e-8;
  double margin = 1e-3;  // kept distance to the domain boundary
  std::vector<EstimateKind> estimates = all_estimates();
  std::string output_path;  // empty = stdout
  ReportFormat format = ReportFormat::json;
  bool timing = false;  // wall clock is opt-in; default reports are byte-stable
  int workers = 0;      // 0 = automatic

  void validate() const;  // throws std::invalid_argument
};

struct EstimateSummary {
  EstimateKind kind;
  int passed = 0;
  int failed = 0;
  double min_eigenvalue = 0.0;
  Matrix argmin_z;
  Vector argmin_theta;
};

struct FailureRecord {
  EstimateKind kind;
  int sample_index = 0;
  double min_eigenvalue = 0.0;
  Matrix z;
  Vector theta;
};

struct VerificationReport {
  CampaignConfig config;
  std::vector<EstimateSummary> results;
  std::vector<FailureRecord> failures;  // capped at kMaxFailureRecords
  double wall_clock_ms = 0.0;

  static constexpr int kMaxFailureRecords = 100;

  bool all_passed() const;
};

std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);
VerificationReport verification_report_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// convexity-boundary

struct BoundaryConfig {
  Index n = 3;
  Index m = 2;
  int samples = 500;
  std::uint64_t seed = 42;
  double angle_margin = 1e-2;
  std::string output_path;
  ReportFormat format = ReportFormat::json;
  bool timing = false;
  int workers = 0;

  void validate() const;
};

struct BoundarySummary {
  std::string function;  // "v" or "u"
  int inside = 0;
  int inside_definite = 0;
  int outside = 0;
  int outside_indefinite = 0;
  int boundary_excluded = 0;

  double agreement() const;
};

struct BoundaryReport {
  BoundaryConfig config;
  std::vector<BoundarySummary> results;
  double wall_clock_ms = 0.0;

  bool all_passed() const;
};

std::string to_json(const BoundaryReport& report);
std::string to_csv(const BoundaryReport& report);

// Classification of one angle tuple, shared by the campaign and tests.
struct ConvexityClass {
  bool pd_v = false;
  bool pd_u = false;
  bool on_boundary = false;  // some pair of angles sums to pi/2 exactly
};

ConvexityClass boundary_classify(const JordanAngles& angles, Index n, Index m);

// ---------------------------------------------------------------------------
// graph-check

struct GraphConfig {
  std::string graph = "affine";  // affine | holomorphic-pair | lawson-osserman | file:<path>
  Index n = 3;                   // affine only
  Index m = 2;
  int points = 100;
  std::uint64_t seed = 42;
  double tolerance = 1e-4;       // energy identity, relative
  double minimality_tol = 1e-6;
  double fd_step = 1e-5;
  std::string output_path;
  ReportFormat format = ReportFormat::json;
  bool timing = false;

  void validate() const;
};

struct LaplacianOutcome {
  std::string status;  // holds | fails | out_of_domain | not_applicable
  std::optional<double> margin;
};

struct GraphPointRecord {
  int index = 0;
  Vector x;
  double delta_f = 0.0;
  double lambda_f = 0.0;
  double norm_b2 = 0.0;
  double mean_curvature_norm = 0.0;
  std::optional<double> energy_identity_gap;  // relative; absent for tabulated graphs
  LaplacianOutcome dh[4];                      // h1..h4
};

struct GraphReport {
  GraphConfig config;
  std::vector<GraphPointRecord> points;
  int identity_failures = 0;
  int inequality_failures = 0;
  double delta_f_min = 0.0;
  double delta_f_max = 0.0;
  double max_mean_curvature = 0.0;
  double wall_clock_ms = 0.0;

  bool all_passed() const { return identity_failures == 0 && inequality_failures == 0; }
};

std::string to_json(const GraphReport& report);
std::string to_csv(const GraphReport& report);

// ---------------------------------------------------------------------------

/// Doubles rendered with 17 significant digits so text -> double recovers the
/// exact bits. 64-bit seeds travel as strings.
std::string format_real(double value);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Recursive comparison of two parsed JSON documents; numeric leaves compare
/// exactly after parsing. Returns a description of the first difference, or
/// nothing when equal.
std::optional<std::string> json_numeric_diff(const std::string& a, const std::string& b);

}  // namespace grassconv
