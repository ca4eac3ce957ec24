#pragma once

#include <functional>
#include <vector>

#include "grassconv/rng.hpp"
#include "grassconv/scalarfuncs.hpp"

namespace grassconv {

using ScalarField = std::function<double(const ChartPoint&)>;

/// Covariant Hessian of a scalar field at a diagonal chart point by central
/// second differences with the connection correction, Richardson-extrapolated
/// over step and step/2. step must lie in [1e-6, 1e-2]. Stencil points that
/// leave the field's domain propagate the field's domain error.
Matrix fd_hessian(const ScalarField& f, const ChartPoint& diag_point, double step = 1e-3);

/// Central-difference differential at a diagonal point, Richardson-extrapolated.
Matrix fd_gradient(const ScalarField& f, const ChartPoint& diag_point, double step = 1e-3);

enum class EstimateKind { es1, es2, es4, es7, h1, h2, h3, h4 };

const char* to_string(EstimateKind kind);
EstimateKind estimate_from_string(const std::string& name);
std::vector<EstimateKind> all_estimates();

/// Whether the estimate constrains the v-side (es1, es4, h1, h2) or the
/// u-side (es2, es7, h3, h4) of the geometry.
bool estimate_uses_v(EstimateKind kind);

// Difference between a closed-form Hessian and its claimed bound, oriented so
// the claim is equivalent to "a is PSD with respect to gram".
struct GapForm {
  Matrix a;      // (nm) x (nm), symmetric
  Matrix gram;   // metric Gram at the diagonal point
  EstimateKind kind;
  DiagonalNormalization point;
  double min_eigenvalue;  // smallest generalized eigenvalue of (a, gram)
  double scale;           // 1 + largest absolute generalized eigenvalue
  bool psd;               // min_eigenvalue >= -tol * scale
};

GapForm gap_form(EstimateKind kind, const ChartPoint& point, double tol = 1e-8);

/// The factor (v-1)/(v^{2/p}-1) appearing in the sharpened v-bound, extended
/// continuously by p/2 at v = 1.
double es4_ratio(double v, Index p);

/// Coefficient of dv (x) dv in the sharpened v-bound.
double es4_coefficient(double v, Index p);

/// Coefficient of du (x) du in the sharpened u-bound.
double es7_coefficient(double u, Index p);

// Sharp lower-bound coefficient for adding a rank-one term to a nonnegative
// form: given h >= 0 that is positive definite on a subspace V1, vanishes
// between V1 and its complement, and a covector supported on V1, the form
// h - coefficient^{-1} omega (x) omega stays nonnegative.
struct RadialCompensation {
  double coefficient;  // omega(omega*), zero for omega = 0
  Vector omega_star;   // representer in V1, embedded in the full space
  double residual_min_eigenvalue;  // of h - coefficient^{-1} omega omega^T
};

RadialCompensation radial_compensation(const Matrix& h, const Vector& omega,
                                       const std::vector<Index>& v1_indices,
                                       double tol = 1e-10);

// Permutation-invariant budget simplex {x : x_alpha >= 0, sum x = budget}.
// Both optimization domains used here carry the nonnegativity constraint;
// it is what makes the set compact.
struct SimplexDomain {
  Index dim = 1;
  double budget = 0.0;
  bool nonneg = true;
};

using SimplexObjective = std::function<double(const Vector&)>;

struct SupResult {
  Vector argmax;
  double value;
};

/// Supremum of a symmetric concave function over the simplex: the barycenter
/// value. Concavity is spot-checked by sampling coordinate second differences
/// (the objectives used here have diagonal ambient Hessians); the barycenter
/// value is certified against the vertices and seeded random feasible points.
SupResult symmetric_sup(const SimplexDomain& domain, const SimplexObjective& f,
                        std::uint64_t seed = 1, int random_checks = 2000);

/// Brute-force oracle: deterministic barycentric grid plus seeded random
/// feasible points, followed by pairwise mass-transfer descent from the best
/// candidate. Makes no use of symmetry or the barycenter.
SupResult simplex_grid_sup(const SimplexDomain& domain, const SimplexObjective& f,
                           int resolution = 200, int random_points = 10000,
                           std::uint64_t seed = 1, bool refine = true);

/// The two concrete objectives behind the sharpened bounds.
double v_case_objective(const Vector& nu, double v);
double u_case_objective(const Vector& nu, double u);
double v_case_sup_closed_form(double v, Index m);
double u_case_sup_closed_form(double u, Index m);

struct PolyMin {
  double min_value;
  double argmin;
};

/// The cubic (3C-1)t^3 + 6Ct^2 + (9C-3C^2)t + 4C - 2C^2 with C = u^2/4.
double f_polynomial_value(double u, double t);

/// Minimum of that cubic over [0, u], by checking endpoints and interior
/// critical points.
PolyMin f_polynomial_min(double u);
bool f_polynomial_nonneg(double u);

/// True when (v-1)/(v^{2/p}-1) is nondecreasing on a grid over [1, v_max] and
/// everywhere at least p/2.
bool monotone_ratio_check(Index p, double v_max = 2.0, int grid = 100);

// Deterministic samplers for the verification campaigns. Angle tuples are
// drawn so that v (resp. u) is uniform on the requested range, with the
// remaining freedom split uniformly over the budget simplex. Adversarial
// draws sit near the equality manifold of the v-bound (two equal angles,
// the rest near zero) resp. the all-equal manifold of the u-bound.
Vector simplex_uniform(SplitMix64& rng, Index dim, double budget);
JordanAngles sample_angles_v_uniform(SplitMix64& rng, Index p, double v_lo, double v_hi);
JordanAngles sample_angles_u_uniform(SplitMix64& rng, Index p, double u_lo, double u_hi);
JordanAngles sample_angles_adversarial_v(SplitMix64& rng, Index p, double v_hi);
JordanAngles sample_angles_adversarial_u(SplitMix64& rng, Index p, double u_hi);

/// Haar-ish orthogonal matrix from a seeded Gaussian ensemble (QR with sign
/// fix, deterministic).
Matrix random_orthogonal(SplitMix64& rng, Index k);

/// Conjugate a diagonal point by random orthogonal factors, producing a
/// generic chart point with the given angles.
ChartPoint rotate_to_chart(const JordanAngles& angles, Index n, Index m, SplitMix64& rng);

}  // namespace grassconv
