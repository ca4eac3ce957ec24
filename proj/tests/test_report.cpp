#include <doctest.h>

#include <sstream>

#include "grassconv/campaign.hpp"
#include "test_support.hpp"

using namespace grassconv;

namespace {

CampaignConfig small_config() {
  CampaignConfig config;
  config.n = 3;
  config.m = 2;
  config.samples = 60;
  config.seed = 42;
  return config;
}

std::vector<double> csv_numbers(const std::string& csv, int row, int column) {
  std::istringstream in(csv);
  std::string line;
  for (int k = 0; k <= row + 1; ++k) std::getline(in, line);  // +1 skips the header
  std::istringstream fields(line);
  std::string cell;
  for (int k = 0; k <= column; ++k) std::getline(fields, cell, ',');
  std::vector<double> out;
  std::istringstream parts(cell);
  std::string token;
  while (std::getline(parts, token, ';')) out.push_back(std::stod(token));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("report");

TEST_CASE("config validation") {
  CampaignConfig config = small_config();
  config.samples = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.tolerance = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.margin = 0.7;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = small_config();
  config.m = 1;
  config.estimates = {EstimateKind::h1};
  CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("min(n, m)"), std::invalid_argument);

  config = small_config();
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("verification campaign passes and counts line up") {
  CampaignConfig config = small_config();
  const VerificationReport report = run_hessian_campaign(config);
  CHECK(report.all_passed());
  REQUIRE(report.results.size() == config.estimates.size());
  for (const EstimateSummary& summary : report.results) {
    CHECK(summary.passed + summary.failed == config.samples);
    CHECK(summary.failed == 0);
  }
  CHECK(report.failures.empty());
}

TEST_CASE("report JSON round-trips exactly") {
  const VerificationReport report = run_hessian_campaign(small_config());
  const std::string json = to_json(report);
  const VerificationReport parsed = verification_report_from_json(json);

  REQUIRE(parsed.results.size() == report.results.size());
  for (std::size_t k = 0; k < report.results.size(); ++k) {
    CHECK(parsed.results[k].kind == report.results[k].kind);
    CHECK(parsed.results[k].passed == report.results[k].passed);
    CHECK(parsed.results[k].min_eigenvalue == report.results[k].min_eigenvalue);  // bitwise
    CHECK((parsed.results[k].argmin_z - report.results[k].argmin_z).norm() == 0.0);
    CHECK((parsed.results[k].argmin_theta - report.results[k].argmin_theta).norm() == 0.0);
  }
  CHECK(parsed.config.seed == report.config.seed);
  CHECK(to_json(parsed) == json);
}

TEST_CASE("csv and json carry the same numbers") {
  const VerificationReport report = run_hessian_campaign(small_config());
  const std::string csv = to_csv(report);
  for (std::size_t row = 0; row < report.results.size(); ++row) {
    const EstimateSummary& summary = report.results[row];
    CHECK(csv_numbers(csv, static_cast<int>(row), 3)[0] == summary.min_eigenvalue);
    const std::vector<double> theta = csv_numbers(csv, static_cast<int>(row), 4);
    REQUIRE(static_cast<Index>(theta.size()) == summary.argmin_theta.size());
    for (Index k = 0; k < summary.argmin_theta.size(); ++k)
      CHECK(theta[static_cast<std::size_t>(k)] == summary.argmin_theta(k));
    const std::vector<double> z = csv_numbers(csv, static_cast<int>(row), 5);
    const Vector z_flat = flatten(summary.argmin_z);
    REQUIRE(static_cast<Index>(z.size()) == z_flat.size());
    for (Index k = 0; k < z_flat.size(); ++k) CHECK(z[static_cast<std::size_t>(k)] == z_flat(k));
  }
}

TEST_CASE("reports are byte-identical across worker counts") {
  CampaignConfig config = small_config();
  config.workers = 1;
  const std::string serial = to_json(run_hessian_campaign(config));
  config.workers = 8;
  const std::string parallel = to_json(run_hessian_campaign(config));
  CHECK(serial == parallel);
  CHECK_FALSE(json_numeric_diff(serial, parallel).has_value());
}

TEST_CASE("json_numeric_diff pinpoints changes") {
  CampaignConfig config = small_config();
  const std::string a = to_json(run_hessian_campaign(config));
  config.seed = 43;
  const std::string b = to_json(run_hessian_campaign(config));
  const auto diff = json_numeric_diff(a, b);
  REQUIRE(diff.has_value());
  CHECK(diff->find("seed") != std::string::npos);
}

TEST_CASE("sharp manifold shows up as a near-zero minimum eigenvalue") {
  CampaignConfig config;
  config.n = 2;
  config.m = 2;
  config.samples = 200;
  config.seed = 42;
  config.estimates = {EstimateKind::es4};
  const VerificationReport report = run_hessian_campaign(config);
  CHECK(report.all_passed());
  CHECK(std::abs(report.results[0].min_eigenvalue) <= 1e-4);
  // the minimizer should sit near the equal-angle manifold
  const Vector theta = report.results[0].argmin_theta;
  CHECK(std::abs(theta(0) - theta(1)) < 0.05);
}

TEST_CASE("boundary classification is two-sided") {
  BoundaryConfig config;
  config.n = 3;
  config.m = 2;
  config.samples = 200;
  config.seed = 7;
  config.angle_margin = 1e-2;
  const BoundaryReport report = run_boundary_campaign(config);
  CHECK(report.all_passed());
  for (const BoundarySummary& summary : report.results) {
    CHECK(summary.inside + summary.outside == config.samples);
    CHECK(summary.agreement() == 1.0);
  }
}

TEST_CASE("single-column charts classify as convex everywhere") {
  BoundaryConfig config;
  config.n = 3;
  config.m = 1;
  config.samples = 50;
  const BoundaryReport report = run_boundary_campaign(config);
  for (const BoundarySummary& summary : report.results) {
    CHECK(summary.inside == config.samples);
    CHECK(summary.inside_definite == config.samples);
    CHECK(summary.outside == 0);
  }
}

TEST_CASE("exact boundary points are flagged and excluded") {
  Vector lambda(2);
  lambda << std::tan(M_PI / 4), std::tan(M_PI / 4);
  const ConvexityClass cls = boundary_classify(angles_from_lambda(lambda), 2, 2);
  CHECK(cls.on_boundary);
}

TEST_CASE("graph campaign on the cone") {
  GraphConfig config;
  config.graph = "lawson-osserman";
  config.points = 25;
  config.seed = 9;
  const GraphReport report = run_graph_campaign(config);
  CHECK(report.all_passed());
  CHECK(report.max_mean_curvature <= 1e-6);
  CHECK(report.delta_f_max - report.delta_f_min <= 1e-8);
  for (const GraphPointRecord& rec : report.points) {
    REQUIRE(rec.energy_identity_gap.has_value());
    CHECK(*rec.energy_identity_gap <= config.tolerance);
    for (const LaplacianOutcome& outcome : rec.dh) CHECK(outcome.status == "out_of_domain");
  }
}

TEST_CASE("graph campaign on an affine graph satisfies every margin") {
  GraphConfig config;
  config.graph = "affine";
  config.n = 3;
  config.m = 2;
  config.points = 10;
  const GraphReport report = run_graph_campaign(config);
  CHECK(report.all_passed());
  for (const GraphPointRecord& rec : report.points) {
    CHECK(rec.delta_f < 2.0);
    for (const LaplacianOutcome& outcome : rec.dh) CHECK(outcome.status == "holds");
  }
}

TEST_CASE("graph reports are stable across the thread cap") {
  GraphConfig config;
  config.graph = "holomorphic-pair";
  config.points = 30;
  config.seed = 11;
  setenv("GRASSCONV_THREADS", "1", 1);
  const std::string serial = to_json(run_graph_campaign(config));
  setenv("GRASSCONV_THREADS", "8", 1);
  const std::string parallel = to_json(run_graph_campaign(config));
  unsetenv("GRASSCONV_THREADS");
  CHECK(serial == parallel);
}

TEST_CASE("graph report renders to json and csv") {
  GraphConfig config;
  config.graph = "holomorphic-pair";
  config.points = 5;
  const GraphReport report = run_graph_campaign(config);
  const std::string json = to_json(report);
  CHECK(json.find("\"delta_f\"") != std::string::npos);
  CHECK_FALSE(json_numeric_diff(json, json).has_value());
  const std::string csv = to_csv(report);
  CHECK(csv.find("h4_status") != std::string::npos);
}

TEST_SUITE_END();
