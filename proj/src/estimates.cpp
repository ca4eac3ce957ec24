#include "grassconv/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "grassconv/numerics.hpp"

namespace grassconv {

namespace {

bool is_diagonal_descending(const Matrix& z, double tol = 1e-12) {
  double prev = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < z.rows(); ++i)
    for (Index a = 0; a < z.cols(); ++a) {
      if (i == a) {
        if (z(i, a) < -tol || z(i, a) > prev + tol) return false;
        prev = z(i, a);
      } else if (std::abs(z(i, a)) > tol) {
        return false;
      }
    }
  return true;
}

Matrix fd_hessian_raw(const ScalarField& f, const Matrix& z0, double h) {
  const Index n = z0.rows(), m = z0.cols();
  const double f0 = f(ChartPoint(z0));
  Matrix out(n * m, n * m);
  auto shifted = [&](Index p, double s, Index q, double t) {
    Matrix z = z0;
    z(p / m, p % m) += s;
    z(q / m, q % m) += t;
    return f(ChartPoint(z));
  };
  for (Index p = 0; p < n * m; ++p) {
    out(p, p) = (shifted(p, h, p, 0) - 2 * f0 + shifted(p, -h, p, 0)) / (h * h);
    for (Index q = p + 1; q < n * m; ++q) {
      const double val = (shifted(p, h, q, h) - shifted(p, h, q, -h) -
                          shifted(p, -h, q, h) + shifted(p, -h, q, -h)) /
                         (4 * h * h);
      out(p, q) = out(q, p) = val;
    }
  }
  return out;
}

Matrix fd_gradient_raw(const ScalarField& f, const Matrix& z0, double h) {
  const Index n = z0.rows(), m = z0.cols();
  Matrix out(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a) {
      Matrix zp = z0, zm = z0;
      zp(i, a) += h;
      zm(i, a) -= h;
      out(i, a) = (f(ChartPoint(zp)) - f(ChartPoint(zm))) / (2 * h);
    }
  return out;
}

void check_fd_inputs(const ChartPoint& point, double step) {
  if (step < 1e-6 || step > 1e-2)
    throw std::invalid_argument("fd step must lie in [1e-6, 1e-2]");
  if (!is_diagonal_descending(point.z, 1e-10))
    throw std::invalid_argument("fd oracle requires a diagonal chart point; normalize first");
}

}  // namespace

Matrix fd_gradient(const ScalarField& f, const ChartPoint& diag_point, double step) {
  check_fd_inputs(diag_point, step);
  const Matrix coarse = fd_gradient_raw(f, diag_point.z, step);
  const Matrix fine = fd_gradient_raw(f, diag_point.z, step / 2);
  return (4 * fine - coarse) / 3;
}

Matrix fd_hessian(const ScalarField& f, const ChartPoint& diag_point, double step) {
  check_fd_inputs(diag_point, step);
  const Matrix coarse = fd_hessian_raw(f, diag_point.z, step);
  const Matrix fine = fd_hessian_raw(f, diag_point.z, step / 2);
  const Matrix second = (4 * fine - coarse) / 3;
  const Matrix grad = fd_gradient(f, diag_point, step);
  const JordanAngles angles = angles_from_lambda(diag_point.z.diagonal().head(diag_point.p()));
  const Matrix correction = christoffel_diag(angles, diag_point.n(), diag_point.m()).contract(grad);
  Matrix out = second - correction;
  return 0.5 * (out + out.transpose());
}

const char* to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::es1: return "es1";
    case EstimateKind::es2: return "es2";
    case EstimateKind::es4: return "es4";
    case EstimateKind::es7: return "es7";
    case EstimateKind::h1: return "h1";
    case EstimateKind::h2: return "h2";
    case EstimateKind::h3: return "h3";
    case EstimateKind::h4: return "h4";
  }
  return "?";
}

EstimateKind estimate_from_string(const std::string& name) {
  for (EstimateKind kind : all_estimates())
    if (name == to_string(kind)) return kind;
  throw std::invalid_argument("unknown estimate label: " + name);
}

std::vector<EstimateKind> all_estimates() {
  return {EstimateKind::es1, EstimateKind::es2, EstimateKind::es4, EstimateKind::es7,
          EstimateKind::h1,  EstimateKind::h2,  EstimateKind::h3,  EstimateKind::h4};
}

bool estimate_uses_v(EstimateKind kind) {
  return kind == EstimateKind::es1 || kind == EstimateKind::es4 || kind == EstimateKind::h1 ||
         kind == EstimateKind::h2;
}

double es4_ratio(double v, Index p) {
  const double num = v - 1;
  const double den = std::pow(v, 2.0 / static_cast<double>(p)) - 1;
  // removable singularity at v = 1
  if (std::abs(num) < 1e-9 || std::abs(den) < 1e-300) return static_cast<double>(p) / 2.0;
  return num / den;
}

double es4_coefficient(double v, Index p) {
  const double pd = static_cast<double>(p);
  return es4_ratio(v, p) / (pd * v) + (pd + 1) / (pd * v);
}

double es7_coefficient(double u, Index p) {
  const double pd = static_cast<double>(p);
  return ((3 + pd * pd / 4) * u + 4 * pd) / (2 * (u + pd) * (u + pd));
}

GapForm gap_form(EstimateKind kind, const ChartPoint& point, double tol) {
  DiagonalNormalization frame = normalize_diagonal(point);
  const Index n = point.n(), m = point.m(), p = point.p();
  const Matrix gram = metric_gram_diag(frame.angles, n, m);

  Matrix a;
  if (estimate_uses_v(kind)) {
    const ScalarJet2 vj = v_jet(frame.angles, n, m);
    const double v = vj.value;
    const Vector dv = flatten(vj.gradient);
    switch (kind) {
      case EstimateKind::es1:
        if (v > 2.0)
          throw std::domain_error("es1: requires v <= 2, got " + std::to_string(v));
        a = vj.hessian - v * (2 - v) * gram - (dv * dv.transpose()) / v;
        break;
      case EstimateKind::es4:
        if (v > 2.0)
          throw std::domain_error("es4: requires v <= 2, got " + std::to_string(v));
        a = vj.hessian - v * (2 - v) * gram - es4_coefficient(v, p) * (dv * dv.transpose());
        break;
      case EstimateKind::h1: {
        const ScalarJet2 hj = h_jet(HKind::h1, frame.angles, n, m);
        a = -(hj.hessian + (1.5 + 1.0 / p) * hj.value * gram);
        break;
      }
      case EstimateKind::h2: {
        const ScalarJet2 hj = h_jet(HKind::h2, frame.angles, n, m);
        const Vector dh = flatten(hj.gradient);
        a = hj.hessian - 3 * hj.value * gram -
            (1.5 + 1.0 / (3 * p)) / hj.value * (dh * dh.transpose());
        break;
      }
      default: break;
    }
  } else {
    const ScalarJet2 uj = u_jet(frame.angles, n, m);
    const double u = uj.value;
    const Vector du = flatten(uj.gradient);
    switch (kind) {
      case EstimateKind::es2:
        if (u > 2.0)
          throw std::domain_error("es2: requires u <= 2, got " + std::to_string(u));
        a = uj.hessian - (2 - u * u / 2) * gram;
        break;
      case EstimateKind::es7:
        if (u > 2.0)
          throw std::domain_error("es7: requires u <= 2, got " + std::to_string(u));
        a = uj.hessian - (2 - u * u / 2) * gram - es7_coefficient(u, p) * (du * du.transpose());
        break;
      case EstimateKind::h3: {
        const ScalarJet2 hj = h_jet(HKind::h3, frame.angles, n, m);
        a = -(hj.hessian + (1.0 + 2.0 / p) * hj.value * gram);
        break;
      }
      case EstimateKind::h4: {
        const ScalarJet2 hj = h_jet(HKind::h4, frame.angles, n, m);
        const Vector dh = flatten(hj.gradient);
        a = hj.hessian - 3 * hj.value * gram -
            (4.0 / 3 + 2.0 / (3 * p)) / hj.value * (dh * dh.transpose());
        break;
      }
      default: break;
    }
  }

  GapForm out{std::move(a), gram, kind, std::move(frame), 0.0, 0.0, false};
  const Vector eigs = gen_sym_eig(out.a, out.gram);
  out.min_eigenvalue = eigs(0);
  out.scale = 1.0 + eigs.cwiseAbs().maxCoeff();
  out.psd = out.min_eigenvalue >= -tol * out.scale;
  return out;
}

RadialCompensation radial_compensation(const Matrix& h, const Vector& omega,
                                       const std::vector<Index>& v1_indices, double tol) {
  const Index dim = h.rows();
  if (h.cols() != dim || omega.size() != dim)
    throw std::invalid_argument("radial_compensation: dimension mismatch");

  std::vector<bool> in_v1(dim, false);
  for (Index idx : v1_indices) in_v1.at(static_cast<std::size_t>(idx)) = true;
  std::vector<Index> v2;
  for (Index k = 0; k < dim; ++k)
    if (!in_v1[static_cast<std::size_t>(k)]) v2.push_back(k);

  const double h_scale = 1.0 + h.cwiseAbs().maxCoeff();
  const double w_scale = 1.0 + omega.cwiseAbs().maxCoeff();

  const Vector h_eigs = sym_eig(h).eigenvalues;
  if (h_eigs(0) < -tol * h_scale)
    throw std::domain_error("radial_compensation: h is not nonnegative definite (min eigenvalue " +
                            std::to_string(h_eigs(0)) + ")");

  const Index d1 = static_cast<Index>(v1_indices.size());
  Matrix h11(d1, d1);
  Vector w1(d1);
  for (Index r = 0; r < d1; ++r) {
    w1(r) = omega(v1_indices[static_cast<std::size_t>(r)]);
    for (Index c = 0; c < d1; ++c)
      h11(r, c) = h(v1_indices[static_cast<std::size_t>(r)], v1_indices[static_cast<std::size_t>(c)]);
  }
  const Vector h11_eigs = sym_eig(h11).eigenvalues;
  if (h11_eigs(0) <= tol * h_scale)
    throw std::domain_error("radial_compensation: h is not positive definite on V1 (min eigenvalue " +
                            std::to_string(h11_eigs(0)) + ")");

  for (Index r : v1_indices)
    for (Index c : v2)
      if (std::abs(h(r, c)) > tol * h_scale)
        throw std::domain_error("radial_compensation: h(V1, V2) != 0 at entry (" +
                                std::to_string(r) + ", " + std::to_string(c) + ")");
  for (Index c : v2)
    if (std::abs(omega(c)) > tol * w_scale)
      throw std::domain_error("radial_compensation: omega(V2) != 0 at index " + std::to_string(c));

  RadialCompensation out;
  out.omega_star = Vector::Zero(dim);
  if (w1.cwiseAbs().maxCoeff() <= tol * w_scale) {
    out.coefficient = 0.0;
    out.residual_min_eigenvalue = h_eigs(0);
    return out;
  }

  const Vector star = h11.ldlt().solve(w1);
  for (Index r = 0; r < d1; ++r) out.omega_star(v1_indices[static_cast<std::size_t>(r)]) = star(r);
  out.coefficient = w1.dot(star);

  const Matrix residual = h - (omega * omega.transpose()) / out.coefficient;
  out.residual_min_eigenvalue = sym_eig(residual).eigenvalues(0);
  if (out.residual_min_eigenvalue < -10 * tol * h_scale)
    throw std::domain_error("radial_compensation: compensated form lost nonnegativity");
  return out;
}

namespace {

Vector barycenter(const SimplexDomain& domain) {
  return Vector::Constant(domain.dim, domain.budget / static_cast<double>(domain.dim));
}

void check_domain(const SimplexDomain& domain) {
  if (domain.dim < 1) throw std::invalid_argument("simplex dimension must be >= 1");
  if (!(domain.budget >= 0)) throw std::invalid_argument("simplex budget must be >= 0");
  if (!domain.nonneg)
    throw std::invalid_argument("unbounded simplex domains are not compact; nonneg is required");
}

}  // namespace

Vector simplex_uniform(SplitMix64& rng, Index dim, double budget) {
  if (dim == 1) return Vector::Constant(1, budget);
  Vector gaps(dim);
  double total = 0.0;
  for (Index k = 0; k < dim; ++k) {
    double u;
    do {
      u = rng.uniform01();
    } while (u <= 0.0);
    gaps(k) = -std::log(u);
    total += gaps(k);
  }
  return gaps * (budget / total);
}

SupResult symmetric_sup(const SimplexDomain& domain, const SimplexObjective& f,
                        std::uint64_t seed, int random_checks) {
  check_domain(domain);
  const Vector center = barycenter(domain);
  const double value = f(center);

  // Concavity spot check: ambient coordinate second differences at a few
  // feasible points. The objectives this serves have diagonal Hessians, so
  // coordinate directions see the full curvature.
  SplitMix64 rng(mix_seed(seed, fnv1a("symmetric-sup")));
  const double h = std::max(1e-5, 1e-4 * domain.budget);
  for (int trial = 0; trial < 16; ++trial) {
    const Vector x = trial == 0 ? center : Vector(simplex_uniform(rng, domain.dim, domain.budget));
    const double fx = f(x);
    for (Index a = 0; a < domain.dim; ++a) {
      if (x(a) < h) continue;
      Vector xp = x, xm = x;
      xp(a) += h;
      xm(a) -= h;
      const double second = (f(xp) - 2 * fx + f(xm)) / (h * h);
      if (second > 1e-4 * (1 + std::abs(fx)))
        throw std::domain_error("symmetric_sup: objective is not concave along coordinate " +
                                std::to_string(a));
    }
  }

  // Certify against the vertices and random feasible points.
  const double cert_tol = 1e-9 * (1 + std::abs(value));
  for (Index a = 0; a < domain.dim; ++a) {
    Vector vertex = Vector::Zero(domain.dim);
    vertex(a) = domain.budget;
    if (f(vertex) > value + cert_tol)
      throw std::domain_error("symmetric_sup: vertex exceeds barycenter value");
  }
  for (int k = 0; k < random_checks; ++k) {
    const Vector x = simplex_uniform(rng, domain.dim, domain.budget);
    if (f(x) > value + cert_tol)
      throw std::domain_error("symmetric_sup: sampled point exceeds barycenter value");
  }
  return SupResult{center, value};
}

namespace {

void grid_scan(const SimplexObjective& f, Vector& point, Index coord, double remaining,
               int steps_left, double step, SupResult& best) {
  if (coord == point.size() - 1) {
    point(coord) = remaining;
    const double val = f(point);
    if (val > best.value) best = SupResult{point, val};
    return;
  }
  for (int k = 0; k <= steps_left; ++k) {
    point(coord) = k * step;
    grid_scan(f, point, coord + 1, remaining - k * step, steps_left - k, step, best);
  }
}

// Pairwise mass-transfer descent: move budget between coordinate pairs while
// it improves, halving the transfer. Stays exactly on the simplex.
void transfer_refine(const SimplexObjective& f, SupResult& best, double initial_step) {
  const Index dim = best.argmax.size();
  if (dim < 2) return;
  Vector x = best.argmax;
  double val = best.value;
  for (double step = initial_step; step > 1e-13; step /= 2) {
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 64) {
      improved = false;
      for (Index a = 0; a < dim; ++a)
        for (Index b = 0; b < dim; ++b) {
          if (a == b || x(b) < step) continue;
          Vector y = x;
          y(a) += step;
          y(b) -= step;
          const double cand = f(y);
          if (cand > val) {
            x = y;
            val = cand;
            improved = true;
          }
        }
    }
  }
  if (val > best.value) best = SupResult{x, val};
}

}  // namespace

SupResult simplex_grid_sup(const SimplexDomain& domain, const SimplexObjective& f,
                           int resolution, int random_points, std::uint64_t seed, bool refine) {
  check_domain(domain);
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");

  SupResult best{Vector::Zero(domain.dim), -std::numeric_limits<double>::infinity()};
  if (domain.budget == 0.0) {
    best.value = f(best.argmax);
    return best;
  }

  Vector point = Vector::Zero(domain.dim);
  grid_scan(f, point, 0, domain.budget, resolution, domain.budget / resolution, best);

  SplitMix64 rng(mix_seed(seed, fnv1a("simplex-grid")));
  for (int k = 0; k < random_points; ++k) {
    const Vector x = simplex_uniform(rng, domain.dim, domain.budget);
    const double val = f(x);
    if (val > best.value) best = SupResult{x, val};
  }

  if (refine) transfer_refine(f, best, domain.budget / resolution);
  return best;
}

double v_case_objective(const Vector& nu, double v) {
  double total = 0.0;
  for (Index a = 0; a < nu.size(); ++a) {
    const double e = std::exp(nu(a));
    total += (e - 1) / (v - 2 + e);
  }
  return total;
}

double u_case_objective(const Vector& nu, double u) {
  const double c = u * u / 4;
  double total = 0.0;
  for (Index a = 0; a < nu.size(); ++a) {
    const double t = nu(a);
    total += 2 * t * (1 + t) * (1 + t) / (3 * t * t + 4 * t + c);
  }
  return total;
}

double v_case_sup_closed_form(double v, Index m) {
  const double md = static_cast<double>(m);
  const double vm = std::pow(v, 2.0 / md);
  return md * (vm - 1) / (v - 2 + vm);
}

double u_case_sup_closed_form(double u, Index m) {
  const double md = static_cast<double>(m);
  return 2 * (u + md) * (u + md) / ((3 + md * md / 4) * u + 4 * md);
}

double f_polynomial_value(double u, double t) {
  const double c = u * u / 4;
  return (3 * c - 1) * t * t * t + 6 * c * t * t + (9 * c - 3 * c * c) * t + 4 * c - 2 * c * c;
}

PolyMin f_polynomial_min(double u) {
  if (!(u > 0.0) || u > 2.0)
    throw std::invalid_argument("f_polynomial_min: u must lie in (0, 2]");
  const double c = u * u / 4;
  auto F = [&](double t) { return f_polynomial_value(u, t); };
  PolyMin out{F(0.0), 0.0};
  if (F(u) < out.min_value) out = PolyMin{F(u), u};
  // critical points of the cubic: 3(3C-1)t^2 + 12Ct + (9C-3C^2) = 0
  const double qa = 3 * (3 * c - 1), qb = 12 * c, qc = 9 * c - 3 * c * c;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-14) {
      const double t = -qc / qb;
      if (t > 0 && t < u && F(t) < out.min_value) out = PolyMin{F(t), t};
    }
  } else {
    const double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      const double root = std::sqrt(disc);
      for (double t : {(-qb + root) / (2 * qa), (-qb - root) / (2 * qa)})
        if (t > 0 && t < u && F(t) < out.min_value) out = PolyMin{F(t), t};
    }
  }
  return out;
}

bool f_polynomial_nonneg(double u) { return f_polynomial_min(u).min_value >= 0.0; }

bool monotone_ratio_check(Index p, double v_max, int grid) {
  if (p < 1 || grid < 2 || v_max < 1.0 || v_max > 2.0)
    throw std::invalid_argument("monotone_ratio_check: bad arguments");
  double prev = -std::numeric_limits<double>::infinity();
  const double target = static_cast<double>(p) / 2.0;
  for (int k = 0; k <= grid; ++k) {
    const double v = 1.0 + (v_max - 1.0) * k / grid;
    const double r = es4_ratio(v, p);
    if (r < target - 1e-12) return false;
    if (r < prev - 1e-12) return false;
    prev = r;
  }
  return true;
}

JordanAngles sample_angles_v_uniform(SplitMix64& rng, Index p, double v_lo, double v_hi) {
  const double v = rng.uniform(v_lo, v_hi);
  const Vector nu = simplex_uniform(rng, p, 2 * std::log(v));
  Vector lambda(p);
  for (Index a = 0; a < p; ++a) lambda(a) = std::sqrt(std::max(0.0, std::exp(nu(a)) - 1));
  return angles_from_lambda(lambda);
}

JordanAngles sample_angles_u_uniform(SplitMix64& rng, Index p, double u_lo, double u_hi) {
  const double u = rng.uniform(u_lo, u_hi);
  const Vector nu = simplex_uniform(rng, p, u);
  return angles_from_lambda(nu.cwiseSqrt());
}

JordanAngles sample_angles_adversarial_v(SplitMix64& rng, Index p, double v_hi) {
  if (p < 2) return sample_angles_v_uniform(rng, p, 1.0, v_hi);
  // two equal angles, the rest near zero; small jitter keeps the draw just
  // off the exact equality manifold
  const double v = rng.uniform(1.0, std::max(1.0, v_hi - 0.01));
  const double lam = std::sqrt(std::max(0.0, v - 1));
  Vector lambda = Vector::Zero(p);
  lambda(0) = std::max(0.0, lam + 1e-3 * rng.normal());
  lambda(1) = std::max(0.0, lam + 1e-3 * rng.normal());
  for (Index a = 2; a < p; ++a) lambda(a) = std::abs(1e-4 * rng.normal());
  return angles_from_lambda(lambda);
}

JordanAngles sample_angles_adversarial_u(SplitMix64& rng, Index p, double u_hi) {
  const double u = rng.uniform(0.0, std::max(0.0, u_hi - 0.01));
  const double lam = std::sqrt(u / static_cast<double>(p));
  Vector lambda(p);
  for (Index a = 0; a < p; ++a) lambda(a) = std::max(0.0, lam + 1e-4 * rng.normal());
  return angles_from_lambda(lambda);
}

Matrix random_orthogonal(SplitMix64& rng, Index k) {
  Matrix gauss(k, k);
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < k; ++c) gauss(r, c) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index c = 0; c < k; ++c)
    if (r(c, c) < 0) q.col(c) *= -1;
  return q;
}

ChartPoint rotate_to_chart(const JordanAngles& angles, Index n, Index m, SplitMix64& rng) {
  Matrix z0 = Matrix::Zero(n, m);
  for (Index k = 0; k < angles.p(); ++k) z0(k, k) = angles.lambda(k);
  const Matrix u = random_orthogonal(rng, n);
  const Matrix v = random_orthogonal(rng, m);
  return ChartPoint(u.transpose() * z0 * v.transpose());
}

}  // namespace grassconv
