#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grassconv/scalarfuncs.hpp"

namespace grassconv {

// Second-order data of a graph map f: R^n -> R^m at one base point, enough to
// evaluate the Gauss map, its differential and the second fundamental form.
struct GraphJet {
  Vector x;                 // base point in R^n
  Matrix df;                // n x m, df(i, alpha) = d f^alpha / d x^i
  std::vector<Matrix> d2f;  // m slices, each n x n symmetric

  Index n() const { return df.rows(); }
  Index m() const { return df.cols(); }
};

/// Validates shapes, finiteness and symmetry of the second derivatives.
GraphJet make_graph_jet(Vector x, Matrix df, std::vector<Matrix> d2f);

/// The tangent plane of the graph in chart coordinates: Z = Df.
ChartPoint gauss_point(const GraphJet& jet);

/// det(I + Df Df^T)^{1/2}; the graph slope functional bounded by 2 in the
/// flat-enough regime.
double delta_f(const GraphJet& jet);

/// tr(Df Df^T), the squared slope.
double lambda_f(const GraphJet& jet);

inline bool delta_f_below_two(const GraphJet& jet) { return delta_f(jet) < 2.0; }
inline bool lambda_f_below_two(const GraphJet& jet) { return lambda_f(jet) < 2.0; }

struct SecondFundamentalForm {
  std::vector<Matrix> b;   // m slices: components in an orthonormal normal frame
  Matrix induced_metric;   // n x n, delta_ij + sum_a d_i f^a d_j f^a
  Matrix normal_frame;     // (n+m) x m, orthonormal columns
  double norm_b2;          // |B|^2, frame independent
  Vector mean_curvature;   // H^a = g^{ij} B^a_{ij} in the normal frame
  double mean_norm;        // |H|
};

/// Normal frame via Gram-Schmidt in deterministic order; frame_seed != 0
/// remixes it by a seeded orthogonal rotation (the invariants must not move).
SecondFundamentalForm second_fundamental_form(const GraphJet& jet,
                                              std::uint64_t frame_seed = 0);

enum class GraphKind { affine, holomorphic_pair, lawson_osserman, user_supplied };

const char* to_string(GraphKind kind);

// A graph given by an evaluator producing jets at arbitrary base points, or by
// a fixed table of jets loaded from a file. Tabulated graphs support only the
// pointwise quantities; anything that differentiates the Gauss map needs the
// evaluator.
class AnalyticGraph {
 public:
  static AnalyticGraph affine(Matrix slope);
  static AnalyticGraph holomorphic_pair();
  static AnalyticGraph lawson_osserman();
  static AnalyticGraph tabulated(std::vector<GraphJet> jets);
  static AnalyticGraph custom(Index n, Index m, std::function<GraphJet(const Vector&)> evaluate);

  GraphKind kind() const { return kind_; }
  bool pointwise_only() const { return !static_cast<bool>(evaluate_); }
  const std::vector<GraphJet>& table() const { return table_; }

  GraphJet jet_at(const Vector& x) const;

  Index domain_dim() const { return n_; }
  Index codomain_dim() const { return m_; }

 private:
  AnalyticGraph() = default;

  GraphKind kind_ = GraphKind::affine;
  std::function<GraphJet(const Vector&)> evaluate_;
  std::vector<GraphJet> table_;
  Index n_ = 0;
  Index m_ = 0;
};

/// The minimal cone over the Hopf fibration: R^4 -> R^3,
/// f(x) = (sqrt(5)/2) |x| eta(x/|x|). Guarded away from the apex.
Vector lawson_osserman_value(const Vector& x);
GraphJet lawson_osserman_jet(const Vector& x);

struct EnergyIdentity {
  double gauss_energy_twice;  // sum of squared chart norms of the Gauss map differential
  double sff_norm2;           // |B|^2
  double relative_gap;
};

/// Both sides of 2 e(gamma) = |B|^2. The left side differentiates the Gauss
/// coordinate by central differences along an orthonormal tangent frame and
/// measures it in the chart metric; the right side is the second fundamental
/// form contraction.
EnergyIdentity gauss_energy_identity(const AnalyticGraph& graph, const Vector& x,
                                     double fd_step = 1e-5);

enum class LaplacianStatus { holds, fails, out_of_domain };

struct LaplacianCheck {
  HKind kind;
  LaplacianStatus status;
  double laplacian = 0.0;    // of the composed function, via the chain rule
  double bound = 0.0;        // right side of the claimed inequality
  double margin = 0.0;       // slack in the favorable direction
  double composed_value = 0.0;
  double grad_norm2 = 0.0;   // |grad of the composed function|^2 on the graph
  double norm_b2 = 0.0;
};

/// Pointwise Laplacian inequality for one auxiliary function composed with
/// the Gauss map. Requires numerical minimality (|H| <= minimality_tol);
/// points whose Gauss image leaves {v < 2} (resp. {u < 2}) come back with
/// status out_of_domain instead of a verdict.
LaplacianCheck composed_laplacian_check(const AnalyticGraph& graph, const Vector& x,
                                        HKind kind, double minimality_tol = 1e-6);

}  // namespace grassconv
