#pragma once

#include "grassconv/report.hpp"

namespace grassconv {

/// Worker count: explicit request, else GRASSCONV_THREADS, else hardware.
int resolve_worker_count(int requested);

/// Sample chart points and test every configured estimate's gap form.
/// Deterministic for a given config: per-sample generators are derived from
/// seed ^ sample-index plus the estimate label, and every tenth sample is an
/// adversarial draw near the relevant sharp manifold.
VerificationReport run_hessian_campaign(const CampaignConfig& config);

/// Sample angle tuples straddling the pair-sum boundary by +/- the margin and
/// classify definiteness of both Hessians.
BoundaryReport run_boundary_campaign(const BoundaryConfig& config);

/// Per-point graph diagnostics: slope functionals, second fundamental form,
/// energy identity and the composed Laplacian inequalities.
GraphReport run_graph_campaign(const GraphConfig& config);

/// Serialize per the configured format.
std::string render(const VerificationReport& report);
std::string render(const BoundaryReport& report);
std::string render(const GraphReport& report);

}  // namespace grassconv
