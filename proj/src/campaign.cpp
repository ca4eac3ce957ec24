#include "grassconv/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "grassconv/jetfile.hpp"
#include "grassconv/numerics.hpp"

namespace grassconv {

int resolve_worker_count(int requested) {
  int workers = requested;
  if (workers <= 0) {
    if (const char* env = std::getenv("GRASSCONV_THREADS")) {
      workers = std::atoi(env);
    }
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, workers);
}

namespace {

// Runs fn(index) for index in [0, count) across workers. Output slots are
// preallocated by the caller and written by index, so the merge order never
// depends on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> cursor{0};
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int k = cursor.fetch_add(1);
        if (k >= count || failed.load()) return;
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct SampleOutcome {
  double min_eigenvalue;
  Matrix z;
  Vector theta;
  bool psd;
};

}  // namespace

VerificationReport run_hessian_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int workers = resolve_worker_count(config.workers);
  const Index p = std::min(config.n, config.m);

  VerificationReport report;
  report.config = config;

  for (EstimateKind kind : config.estimates) {
    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(config.samples));
    const std::uint64_t label_salt = fnv1a(to_string(kind));

    parallel_for(config.samples, workers, [&](int sample) {
      SplitMix64 rng(mix_seed(config.seed ^ static_cast<std::uint64_t>(sample), label_salt));
      const bool adversarial = sample % 10 == 0;
      JordanAngles angles;
      if (estimate_uses_v(kind)) {
        const double v_hi = 2.0 - config.margin;
        angles = adversarial ? sample_angles_adversarial_v(rng, p, v_hi)
                             : sample_angles_v_uniform(rng, p, 1.0, v_hi);
      } else {
        const double u_hi = 2.0 - config.margin;
        angles = adversarial ? sample_angles_adversarial_u(rng, p, u_hi)
                             : sample_angles_u_uniform(rng, p, 0.0, u_hi);
      }
      const ChartPoint point = rotate_to_chart(angles, config.n, config.m, rng);
      const GapForm gap = gap_form(kind, point, config.tolerance);
      outcomes[static_cast<std::size_t>(sample)] =
          SampleOutcome{gap.min_eigenvalue, point.z, gap.point.angles.theta, gap.psd};
    });

    EstimateSummary summary;
    summary.kind = kind;
    summary.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int sample = 0; sample < config.samples; ++sample) {
      const SampleOutcome& o = outcomes[static_cast<std::size_t>(sample)];
      if (o.psd) {
        ++summary.passed;
      } else {
        ++summary.failed;
        if (report.failures.size() < VerificationReport::kMaxFailureRecords)
          report.failures.push_back(FailureRecord{kind, sample, o.min_eigenvalue, o.z, o.theta});
      }
      if (o.min_eigenvalue < summary.min_eigenvalue) {
        summary.min_eigenvalue = o.min_eigenvalue;
        summary.argmin_z = o.z;
        summary.argmin_theta = o.theta;
      }
    }
    report.results.push_back(std::move(summary));
  }

  report.wall_clock_ms = elapsed_ms(start);
  return report;
}

ConvexityClass boundary_classify(const JordanAngles& angles, Index n, Index m) {
  ConvexityClass out;
  for (Index a = 0; a < angles.p(); ++a)
    for (Index b = a + 1; b < angles.p(); ++b)
      if (std::abs(angles.theta(a) + angles.theta(b) - M_PI / 2) <= 1e-12) out.on_boundary = true;
  const Matrix gram = metric_gram_diag(angles, n, m);
  out.pd_v = gen_sym_eig(v_jet(angles, n, m).hessian, gram)(0) > 0;
  out.pd_u = gen_sym_eig(u_jet(angles, n, m).hessian, gram)(0) > 0;
  return out;
}

BoundaryReport run_boundary_campaign(const BoundaryConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int workers = resolve_worker_count(config.workers);
  const Index p = std::min(config.n, config.m);

  BoundaryReport report;
  report.config = config;
  BoundarySummary v_summary, u_summary;
  v_summary.function = "v";
  u_summary.function = "u";

  if (p < 2) {
    // no angle pair exists; every point is on the convex side
    for (int sample = 0; sample < config.samples; ++sample) {
      SplitMix64 rng(mix_seed(config.seed ^ static_cast<std::uint64_t>(sample), fnv1a("boundary")));
      const JordanAngles angles =
          angles_from_lambda(Vector::Constant(1, std::tan(rng.uniform(0.0, M_PI / 2 - 0.01))));
      const ConvexityClass cls = boundary_classify(angles, config.n, config.m);
      ++v_summary.inside;
      ++u_summary.inside;
      if (cls.pd_v) ++v_summary.inside_definite;
      if (cls.pd_u) ++u_summary.inside_definite;
    }
  } else {
    struct Outcome {
      bool expected_inside;
      bool on_boundary;
      bool pd_v;
      bool pd_u;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(config.samples));
    parallel_for(config.samples, workers, [&](int sample) {
      SplitMix64 rng(mix_seed(config.seed ^ static_cast<std::uint64_t>(sample), fnv1a("boundary")));
      const bool inside = sample % 2 == 0;
      const double pair_sum = M_PI / 2 + (inside ? -config.angle_margin : config.angle_margin);
      const double lo = 0.05 * pair_sum, hi = 0.95 * pair_sum;
      const double theta1 = rng.uniform(lo, hi);
      const double theta2 = pair_sum - theta1;
      Vector lambda(p);
      lambda(0) = std::tan(theta1);
      lambda(1) = std::tan(theta2);
      const double theta_max = std::max(theta1, theta2);
      for (Index a = 2; a < p; ++a) {
        const double cap = std::max(0.0, M_PI / 2 - theta_max - 2 * config.angle_margin);
        lambda(a) = std::tan(rng.uniform(0.0, 0.8 * cap));
      }
      const ConvexityClass cls = boundary_classify(angles_from_lambda(lambda), config.n, config.m);
      outcomes[static_cast<std::size_t>(sample)] =
          Outcome{inside, cls.on_boundary, cls.pd_v, cls.pd_u};
    });
    for (const Outcome& o : outcomes) {
      if (o.on_boundary) {
        ++v_summary.boundary_excluded;
        ++u_summary.boundary_excluded;
        continue;
      }
      if (o.expected_inside) {
        ++v_summary.inside;
        ++u_summary.inside;
        if (o.pd_v) ++v_summary.inside_definite;
        if (o.pd_u) ++u_summary.inside_definite;
      } else {
        ++v_summary.outside;
        ++u_summary.outside;
        if (!o.pd_v) ++v_summary.outside_indefinite;
        if (!o.pd_u) ++u_summary.outside_indefinite;
      }
    }
  }

  report.results.push_back(std::move(v_summary));
  report.results.push_back(std::move(u_summary));
  report.wall_clock_ms = elapsed_ms(start);
  return report;
}

namespace {

AnalyticGraph build_graph(const GraphConfig& config) {
  if (config.graph == "affine") {
    SplitMix64 rng(mix_seed(config.seed, fnv1a("affine-slope")));
    Matrix slope(config.n, config.m);
    // scaled so the slope functionals stay inside the flat regime
    const double scale = 0.3 / std::sqrt(static_cast<double>(config.n * config.m));
    for (Index i = 0; i < config.n; ++i)
      for (Index a = 0; a < config.m; ++a) slope(i, a) = scale * rng.normal();
    return AnalyticGraph::affine(std::move(slope));
  }
  if (config.graph == "holomorphic-pair") return AnalyticGraph::holomorphic_pair();
  if (config.graph == "lawson-osserman") return AnalyticGraph::lawson_osserman();
  return AnalyticGraph::tabulated(load_jet_file(config.graph.substr(5)));
}

Vector sample_base_point(const AnalyticGraph& graph, SplitMix64& rng) {
  const Index n = graph.domain_dim();
  Vector x(n);
  switch (graph.kind()) {
    case GraphKind::holomorphic_pair:
      // radius where the Gauss image mostly stays under the slope bound
      do {
        for (Index i = 0; i < n; ++i) x(i) = rng.uniform(-0.45, 0.45);
      } while (x.norm() > 0.45);
      return x;
    case GraphKind::lawson_osserman:
      for (Index i = 0; i < n; ++i) x(i) = rng.normal();
      return x / x.norm();
    default:
      for (Index i = 0; i < n; ++i) x(i) = rng.uniform(-1.0, 1.0);
      return x;
  }
}

}  // namespace

GraphReport run_graph_campaign(const GraphConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const AnalyticGraph graph = build_graph(config);

  GraphReport report;
  report.config = config;
  const int count = graph.pointwise_only() ? static_cast<int>(graph.table().size()) : config.points;
  report.points.resize(static_cast<std::size_t>(count));

  parallel_for(count, resolve_worker_count(0), [&](int index) {
    GraphPointRecord rec;
    rec.index = index;
    GraphJet jet = [&] {
      if (graph.pointwise_only()) return graph.table()[static_cast<std::size_t>(index)];
      SplitMix64 rng(mix_seed(config.seed ^ static_cast<std::uint64_t>(index), fnv1a("graph-point")));
      return graph.jet_at(sample_base_point(graph, rng));
    }();
    rec.x = jet.x;
    rec.delta_f = delta_f(jet);
    rec.lambda_f = lambda_f(jet);
    const SecondFundamentalForm sff = second_fundamental_form(jet);
    rec.norm_b2 = sff.norm_b2;
    rec.mean_curvature_norm = sff.mean_norm;

    if (!graph.pointwise_only()) {
      const EnergyIdentity identity = gauss_energy_identity(graph, jet.x, config.fd_step);
      rec.energy_identity_gap = identity.relative_gap;
    }

    const HKind kinds[4] = {HKind::h1, HKind::h2, HKind::h3, HKind::h4};
    for (int h = 0; h < 4; ++h) {
      if (graph.pointwise_only() || sff.mean_norm > config.minimality_tol) {
        rec.dh[h].status = "not_applicable";
        continue;
      }
      const LaplacianCheck check =
          composed_laplacian_check(graph, jet.x, kinds[h], config.minimality_tol);
      switch (check.status) {
        case LaplacianStatus::holds:
          rec.dh[h].status = "holds";
          rec.dh[h].margin = check.margin;
          break;
        case LaplacianStatus::fails:
          rec.dh[h].status = "fails";
          rec.dh[h].margin = check.margin;
          break;
        case LaplacianStatus::out_of_domain:
          rec.dh[h].status = "out_of_domain";
          break;
      }
    }
    report.points[static_cast<std::size_t>(index)] = std::move(rec);
  });

  report.delta_f_min = std::numeric_limits<double>::infinity();
  report.delta_f_max = -std::numeric_limits<double>::infinity();
  for (const GraphPointRecord& rec : report.points) {
    report.delta_f_min = std::min(report.delta_f_min, rec.delta_f);
    report.delta_f_max = std::max(report.delta_f_max, rec.delta_f);
    report.max_mean_curvature = std::max(report.max_mean_curvature, rec.mean_curvature_norm);
    if (rec.energy_identity_gap && *rec.energy_identity_gap > config.tolerance)
      ++report.identity_failures;
    for (const LaplacianOutcome& outcome : rec.dh)
      if (outcome.status == "fails") ++report.inequality_failures;
  }

  report.wall_clock_ms = elapsed_ms(start);
  return report;
}

std::string render(const VerificationReport& report) {
  return report.config.format == ReportFormat::json ? to_json(report) : to_csv(report);
}

std::string render(const BoundaryReport& report) {
  return report.config.format == ReportFormat::json ? to_json(report) : to_csv(report);
}

std::string render(const GraphReport& report) {
  return report.config.format == ReportFormat::json ? to_json(report) : to_csv(report);
}

}  // namespace grassconv
