// Command-line driver for the verification campaigns.
//
// Exit codes: 0 all checks pass, 1 verification failures, 2 usage or parse
// errors, 3 I/O failures.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grassconv/campaign.hpp"
#include "grassconv/jetfile.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

grassconv::ReportFormat parse_format(const std::string& name) {
  if (name == "json") return grassconv::ReportFormat::json;
  if (name == "csv") return grassconv::ReportFormat::csv;
  throw CLI::ValidationError("--format", "expected json or csv");
}

std::vector<grassconv::EstimateKind> parse_estimates(const std::string& list) {
  if (list == "all") return grassconv::all_estimates();
  std::vector<grassconv::EstimateKind> out;
  std::size_t begin = 0;
  while (begin <= list.size()) {
    const std::size_t end = list.find(',', begin);
    const std::string token = list.substr(begin, end == std::string::npos ? end : end - begin);
    if (!token.empty()) out.push_back(grassconv::estimate_from_string(token));
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty estimate set");
  return out;
}

int emit(const std::string& rendered, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << rendered << std::endl;
    return kExitPass;
  }
  try {
    grassconv::write_text_file(output_path, rendered);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitIo;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmannian convexity and minimal-graph verification campaigns"};
  app.require_subcommand(1);

  // verify-hessians
  grassconv::CampaignConfig hess;
  std::string hess_estimates = "all";
  std::string hess_format = "json";
  auto* verify = app.add_subcommand("verify-hessians",
                                    "PSD-test the Hessian bound gap forms on sampled chart points");
  verify->add_option("--n", hess.n, "rows of the coordinate matrix");
  verify->add_option("--m", hess.m, "columns of the coordinate matrix");
  verify->add_option("--samples", hess.samples, "points per estimate");
  verify->add_option("--seed", hess.seed, "campaign seed");
  verify->add_option("--tol", hess.tolerance, "PSD tolerance (relative to spectral scale)");
  verify->add_option("--margin", hess.margin, "kept distance to the domain boundary");
  verify->add_option("--estimates", hess_estimates, "comma list of labels, or 'all'");
  verify->add_option("--output", hess.output_path, "report path (default stdout)");
  verify->add_option("--format", hess_format, "json or csv");
  verify->add_flag("--timing", hess.timing, "include wall clock in the report meta");
  verify->add_option("--workers", hess.workers, "worker threads (default GRASSCONV_THREADS)");

  // convexity-boundary
  grassconv::BoundaryConfig boundary;
  std::string boundary_format = "json";
  auto* convexity = app.add_subcommand(
      "convexity-boundary", "classify Hessian definiteness on both sides of the angle-sum boundary");
  convexity->add_option("--n", boundary.n, "rows of the coordinate matrix");
  convexity->add_option("--m", boundary.m, "columns of the coordinate matrix");
  convexity->add_option("--samples", boundary.samples, "straddling samples");
  convexity->add_option("--seed", boundary.seed, "campaign seed");
  convexity->add_option("--margin", boundary.angle_margin, "angle margin around the boundary");
  convexity->add_option("--output", boundary.output_path, "report path (default stdout)");
  convexity->add_option("--format", boundary_format, "json or csv");
  convexity->add_flag("--timing", boundary.timing, "include wall clock in the report meta");
  convexity->add_option("--workers", boundary.workers, "worker threads");

  // graph-check
  grassconv::GraphConfig graph;
  std::string graph_format = "json";
  auto* graph_cmd = app.add_subcommand("graph-check",
                                       "per-point diagnostics for graphical submanifolds");
  graph_cmd->add_option("--graph", graph.graph,
                        "affine | holomorphic-pair | lawson-osserman | file:<path>");
  graph_cmd->add_option("--n", graph.n, "domain dimension (affine)");
  graph_cmd->add_option("--m", graph.m, "codomain dimension (affine)");
  graph_cmd->add_option("--points", graph.points, "sample points");
  graph_cmd->add_option("--seed", graph.seed, "campaign seed");
  graph_cmd->add_option("--tol", graph.tolerance, "energy identity tolerance (relative)");
  graph_cmd->add_option("--minimality-tol", graph.minimality_tol, "mean-curvature gate");
  graph_cmd->add_option("--fd-step", graph.fd_step, "Gauss map differentiation step");
  graph_cmd->add_option("--output", graph.output_path, "report path (default stdout)");
  graph_cmd->add_option("--format", graph_format, "json or csv");
  graph_cmd->add_flag("--timing", graph.timing, "include wall clock in the report meta");

  // report-diff
  std::string diff_a, diff_b;
  auto* diff_cmd = app.add_subcommand("report-diff", "compare the numeric content of two JSON reports");
  diff_cmd->add_option("first", diff_a, "first report")->required();
  diff_cmd->add_option("second", diff_b, "second report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      hess.estimates = parse_estimates(hess_estimates);
      hess.format = parse_format(hess_format);
      hess.validate();
      const grassconv::VerificationReport report = grassconv::run_hessian_campaign(hess);
      const int io = emit(grassconv::render(report), hess.output_path);
      if (io != kExitPass) return io;
      return report.all_passed() ? kExitPass : kExitVerificationFailure;
    }
    if (convexity->parsed()) {
      boundary.format = parse_format(boundary_format);
      boundary.validate();
      const grassconv::BoundaryReport report = grassconv::run_boundary_campaign(boundary);
      const int io = emit(grassconv::render(report), boundary.output_path);
      if (io != kExitPass) return io;
      return report.all_passed() ? kExitPass : kExitVerificationFailure;
    }
    if (graph_cmd->parsed()) {
      graph.format = parse_format(graph_format);
      graph.validate();
      const grassconv::GraphReport report = grassconv::run_graph_campaign(graph);
      const int io = emit(grassconv::render(report), graph.output_path);
      if (io != kExitPass) return io;
      return report.all_passed() ? kExitPass : kExitVerificationFailure;
    }
    if (diff_cmd->parsed()) {
      std::string a, b;
      try {
        a = grassconv::read_text_file(diff_a);
        b = grassconv::read_text_file(diff_b);
      } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return kExitIo;
      }
      try {
        if (const auto diff = grassconv::json_numeric_diff(a, b)) {
          std::cout << *diff << std::endl;
          return kExitVerificationFailure;
        }
      } catch (const std::exception& err) {
        std::cerr << "error: malformed report: " << err.what() << std::endl;
        return kExitUsage;
      }
      std::cout << "reports are identical" << std::endl;
      return kExitPass;
    }
  } catch (const grassconv::JetFileError& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
