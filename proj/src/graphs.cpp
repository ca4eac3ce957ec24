#include "grassconv/graphs.hpp"

#include <cmath>

#include "grassconv/estimates.hpp"
#include "grassconv/numerics.hpp"
#include "grassconv/rng.hpp"

namespace grassconv {

GraphJet make_graph_jet(Vector x, Matrix df, std::vector<Matrix> d2f) {
  const Index n = df.rows(), m = df.cols();
  if (x.size() != n) throw std::invalid_argument("graph jet: base point has wrong dimension");
  if (static_cast<Index>(d2f.size()) != m)
    throw std::invalid_argument("graph jet: expected one second-derivative slice per component");
  require_finite(df, "graph jet Df");
  for (const Matrix& slice : d2f) {
    if (slice.rows() != n || slice.cols() != n)
      throw std::invalid_argument("graph jet: second-derivative slice has wrong shape");
    require_finite(slice, "graph jet D2f");
    if ((slice - slice.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("graph jet: D2f is not symmetric in (i, j)");
  }
  return GraphJet{std::move(x), std::move(df), std::move(d2f)};
}

ChartPoint gauss_point(const GraphJet& jet) { return ChartPoint(jet.df); }

double delta_f(const GraphJet& jet) { return v_value_of(jet.df); }

double lambda_f(const GraphJet& jet) { return u_value_of(jet.df); }

SecondFundamentalForm second_fundamental_form(const GraphJet& jet, std::uint64_t frame_seed) {
  const Index n = jet.n(), m = jet.m();
  SecondFundamentalForm out;
  out.induced_metric = Matrix::Identity(n, n) + jet.df * jet.df.transpose();
  const auto metric_llt = out.induced_metric.llt();

  // Tangent frame columns in R^{n+m}: [e_i; df.row(i)^T].
  Matrix tangent(n + m, n);
  tangent.topRows(n) = Matrix::Identity(n, n);
  tangent.bottomRows(m) = jet.df.transpose();

  // Normal frame: project the codomain axes off the tangent space, then
  // Gram-Schmidt in fixed order.
  Matrix frame(n + m, m);
  for (Index a = 0; a < m; ++a) {
    Vector axis = Vector::Zero(n + m);
    axis(n + a) = 1.0;
    const Vector coeff = metric_llt.solve(jet.df.col(a));
    frame.col(a) = axis - tangent * coeff;
  }
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < a; ++b) frame.col(a) -= frame.col(b).dot(frame.col(a)) * frame.col(b);
    const double norm = frame.col(a).norm();
    if (norm < 1e-12)
      throw std::domain_error("second_fundamental_form: degenerate normal frame");
    frame.col(a) /= norm;
  }
  if (frame_seed != 0) {
    SplitMix64 rng(frame_seed);
    frame = frame * random_orthogonal(rng, m);
  }
  out.normal_frame = frame;

  // B^a_{ij} = <d_i d_j F, nu_a>; only the codomain block of nu_a matters.
  out.b.resize(static_cast<std::size_t>(m));
  for (Index a = 0; a < m; ++a) {
    Matrix slice = Matrix::Zero(n, n);
    for (Index al = 0; al < m; ++al) slice += frame(n + al, a) * jet.d2f[static_cast<std::size_t>(al)];
    out.b[static_cast<std::size_t>(a)] = std::move(slice);
  }

  const Matrix g_inv = metric_llt.solve(Matrix::Identity(n, n));
  out.norm_b2 = 0.0;
  out.mean_curvature = Vector::Zero(m);
  for (Index a = 0; a < m; ++a) {
    const Matrix gb = g_inv * out.b[static_cast<std::size_t>(a)];
    out.norm_b2 += (gb * gb).trace();
    out.mean_curvature(a) = gb.trace();
  }
  out.mean_norm = out.mean_curvature.norm();
  return out;
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::affine: return "affine";
    case GraphKind::holomorphic_pair: return "holomorphic-pair";
    case GraphKind::lawson_osserman: return "lawson-osserman";
    case GraphKind::user_supplied: return "user-supplied";
  }
  return "?";
}

AnalyticGraph AnalyticGraph::affine(Matrix slope) {
  require_finite(slope, "affine graph slope");
  AnalyticGraph g;
  g.kind_ = GraphKind::affine;
  g.n_ = slope.rows();
  g.m_ = slope.cols();
  g.evaluate_ = [slope = std::move(slope)](const Vector& x) {
    std::vector<Matrix> d2f(static_cast<std::size_t>(slope.cols()),
                            Matrix::Zero(slope.rows(), slope.rows()));
    return make_graph_jet(x, slope, std::move(d2f));
  };
  return g;
}

AnalyticGraph AnalyticGraph::holomorphic_pair() {
  // f(x, y) = (Re (x+iy)^2, Im (x+iy)^2); complex graphs are minimal
  AnalyticGraph g;
  g.kind_ = GraphKind::holomorphic_pair;
  g.n_ = 2;
  g.m_ = 2;
  g.evaluate_ = [](const Vector& x) {
    Matrix df(2, 2);
    df << 2 * x(0), 2 * x(1), -2 * x(1), 2 * x(0);
    std::vector<Matrix> d2f(2, Matrix(2, 2));
    d2f[0] << 2, 0, 0, -2;
    d2f[1] << 0, 2, 2, 0;
    return make_graph_jet(x, std::move(df), std::move(d2f));
  };
  return g;
}

AnalyticGraph AnalyticGraph::lawson_osserman() {
  AnalyticGraph g;
  g.kind_ = GraphKind::lawson_osserman;
  g.n_ = 4;
  g.m_ = 3;
  g.evaluate_ = [](const Vector& x) { return lawson_osserman_jet(x); };
  return g;
}

AnalyticGraph AnalyticGraph::tabulated(std::vector<GraphJet> jets) {
  if (jets.empty()) throw std::invalid_argument("tabulated graph: no jets");
  AnalyticGraph g;
  g.kind_ = GraphKind::user_supplied;
  g.n_ = jets.front().n();
  g.m_ = jets.front().m();
  g.table_ = std::move(jets);
  return g;
}

AnalyticGraph AnalyticGraph::custom(Index n, Index m, std::function<GraphJet(const Vector&)> evaluate) {
  if (!evaluate) throw std::invalid_argument("custom graph: empty evaluator");
  AnalyticGraph g;
  g.kind_ = GraphKind::user_supplied;
  g.n_ = n;
  g.m_ = m;
  g.evaluate_ = std::move(evaluate);
  return g;
}

GraphJet AnalyticGraph::jet_at(const Vector& x) const {
  if (!evaluate_)
    throw std::logic_error("tabulated graphs only provide jets at their stored points");
  return evaluate_(x);
}

namespace {

// Hopf polynomial map on R^4 = C^2 and its derivatives; each component is a
// quadratic form.
struct HopfComponents {
  Vector q;     // 3
  Matrix grad;  // 4 x 3
  std::vector<Matrix> hess;  // 3 slices, 4 x 4 constant
};

HopfComponents hopf_components(const Vector& x) {
  HopfComponents h;
  h.q.resize(3);
  h.q(0) = x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3);
  h.q(1) = 2 * (x(0) * x(2) + x(1) * x(3));
  h.q(2) = 2 * (x(1) * x(2) - x(0) * x(3));

  h.grad.resize(4, 3);
  h.grad.col(0) << 2 * x(0), 2 * x(1), -2 * x(2), -2 * x(3);
  h.grad.col(1) << 2 * x(2), 2 * x(3), 2 * x(0), 2 * x(1);
  h.grad.col(2) << -2 * x(3), 2 * x(2), 2 * x(1), -2 * x(0);

  h.hess.assign(3, Matrix::Zero(4, 4));
  h.hess[0].diagonal() << 2, 2, -2, -2;
  h.hess[1](0, 2) = h.hess[1](2, 0) = 2;
  h.hess[1](1, 3) = h.hess[1](3, 1) = 2;
  h.hess[2](1, 2) = h.hess[2](2, 1) = 2;
  h.hess[2](0, 3) = h.hess[2](3, 0) = -2;
  return h;
}

constexpr double kConeScale = 1.118033988749894848;  // sqrt(5)/2
constexpr double kApexGuard = 1e-6;

void check_cone_point(const Vector& x) {
  if (x.size() != 4) throw std::invalid_argument("cone graph: base point must lie in R^4");
  if (x.norm() < kApexGuard)
    throw std::domain_error("cone graph: point too close to the apex");
}

}  // namespace

Vector lawson_osserman_value(const Vector& x) {
  check_cone_point(x);
  return kConeScale / x.norm() * hopf_components(x).q;
}

GraphJet lawson_osserman_jet(const Vector& x) {
  check_cone_point(x);
  const HopfComponents h = hopf_components(x);
  const double r = x.norm(), r3 = r * r * r, r5 = r3 * r * r;

  Matrix df(4, 3);
  std::vector<Matrix> d2f(3, Matrix(4, 4));
  for (Index a = 0; a < 3; ++a) {
    df.col(a) = kConeScale * (h.grad.col(a) / r - h.q(a) / r3 * x);
    d2f[static_cast<std::size_t>(a)] =
        kConeScale * (h.hess[static_cast<std::size_t>(a)] / r -
                      (h.grad.col(a) * x.transpose() + x * h.grad.col(a).transpose()) / r3 -
                      h.q(a) / r3 * Matrix::Identity(4, 4) +
                      3 * h.q(a) / r5 * (x * x.transpose()));
  }
  return make_graph_jet(x, std::move(df), std::move(d2f));
}

namespace {

// Orthonormal tangent frame expressed in domain coordinates: the columns of
// the inverse square root of the induced metric.
Matrix tangent_frame_coefficients(const Matrix& df) {
  const Index n = df.rows();
  const Matrix g = Matrix::Identity(n, n) + df * df.transpose();
  return sym_inverse_sqrt(g);
}

}  // namespace

EnergyIdentity gauss_energy_identity(const AnalyticGraph& graph, const Vector& x, double fd_step) {
  if (graph.pointwise_only())
    throw std::logic_error("gauss_energy_identity needs an evaluator-backed graph");
  if (!(fd_step > 0) || fd_step > 1e-2)
    throw std::invalid_argument("gauss_energy_identity: step must lie in (0, 1e-2]");

  const GraphJet jet = graph.jet_at(x);
  const ChartPoint point = gauss_point(jet);
  const Matrix frame = tangent_frame_coefficients(jet.df);

  double lhs = 0.0;
  for (Index s = 0; s < jet.n(); ++s) {
    const Vector dir = frame.col(s);
    const Matrix zp = graph.jet_at(x + fd_step * dir).df;
    const Matrix zm = graph.jet_at(x - fd_step * dir).df;
    const Matrix push = (zp - zm) / (2 * fd_step);
    lhs += metric_inner(point, push, push);
  }

  const double rhs = second_fundamental_form(jet).norm_b2;
  EnergyIdentity out{lhs, rhs, 0.0};
  out.relative_gap = std::abs(lhs - rhs) / std::max(1e-12, std::max(std::abs(lhs), std::abs(rhs)));
  return out;
}

LaplacianCheck composed_laplacian_check(const AnalyticGraph& graph, const Vector& x, HKind kind,
                                        double minimality_tol) {
  if (graph.pointwise_only())
    throw std::logic_error("composed_laplacian_check needs an evaluator-backed graph");
  const GraphJet jet = graph.jet_at(x);
  const SecondFundamentalForm sff = second_fundamental_form(jet);
  if (sff.mean_norm > minimality_tol)
    throw std::domain_error("composed_laplacian_check: graph is not minimal at this point (|H| = " +
                            std::to_string(sff.mean_norm) + "); the Gauss map tension term is not zero");

  LaplacianCheck out;
  out.kind = kind;
  out.norm_b2 = sff.norm_b2;

  const ChartPoint point = gauss_point(jet);
  const double s = h_uses_v(kind) ? v_value(point) : u_value(point);
  if (s >= 2.0 - kHDomainMargin) {
    out.status = LaplacianStatus::out_of_domain;
    return out;
  }

  const Index n = jet.n(), m = jet.m();
  const Index p = std::min(n, m);
  const NormalizedJet nj = h_jet_at(kind, point);
  const Matrix frame = tangent_frame_coefficients(jet.df);

  // Exact Gauss map differential along the orthonormal tangent frame,
  // rotated into the normalized chart frame.
  double laplacian = 0.0, grad_sq = 0.0;
  for (Index sdir = 0; sdir < n; ++sdir) {
    Matrix push = Matrix::Zero(n, m);
    for (Index k = 0; k < n; ++k)
      for (Index a = 0; a < m; ++a)
        for (Index i = 0; i < n; ++i)
          push(i, a) += frame(k, sdir) * jet.d2f[static_cast<std::size_t>(a)](k, i);
    const Matrix rotated = nj.frame.to_normalized(push);
    const Vector flat = flatten(rotated);
    laplacian += flat.dot(nj.jet.hessian * flat);
    const double directional = (nj.jet.gradient.array() * rotated.array()).sum();
    grad_sq += directional * directional;
  }

  out.laplacian = laplacian;
  out.grad_norm2 = grad_sq;
  out.composed_value = nj.jet.value;

  const double pd = static_cast<double>(p);
  double bound = 0.0;
  bool upper = true;  // claim is laplacian <= bound
  switch (kind) {
    case HKind::h1:
      bound = -(1.5 + 1.0 / pd) * sff.norm_b2 * nj.jet.value;
      upper = true;
      break;
    case HKind::h2:
      bound = 3 * nj.jet.value * sff.norm_b2 + (1.5 + 1.0 / (3 * pd)) / nj.jet.value * grad_sq;
      upper = false;
      break;
    case HKind::h3:
      bound = -(1.0 + 2.0 / pd) * sff.norm_b2 * nj.jet.value;
      upper = true;
      break;
    case HKind::h4:
      bound = 3 * nj.jet.value * sff.norm_b2 + (4.0 / 3 + 2.0 / (3 * pd)) / nj.jet.value * grad_sq;
      upper = false;
      break;
  }
  out.bound = bound;
  out.margin = upper ? bound - laplacian : laplacian - bound;
  const double tol = 1e-8 * (1 + std::abs(laplacian) + std::abs(bound));
  out.status = out.margin >= -tol ? LaplacianStatus::holds : LaplacianStatus::fails;
  return out;
}

}  // namespace grassconv
