#include "grassconv/scalarfuncs.hpp"

#include <cmath>

namespace grassconv {

double v_value(const ChartPoint& point) { return v_value_of(point.z); }

double u_value(const ChartPoint& point) { return u_value_of(point.z); }

double w_value(const ChartPoint& point) { return 1.0 / v_value(point); }

ScalarJet2 v_jet(const JordanAngles& angles, Index n, Index m) {
  double v = 1.0;
  for (Index k = 0; k < angles.p(); ++k) v *= std::sqrt(1 + angles.lambda(k) * angles.lambda(k));

  ScalarJet2 jet;
  jet.value = v;
  jet.gradient = Matrix::Zero(n, m);
  for (Index a = 0; a < std::min(n, m); ++a) {
    const double la = angles.lam(a);
    jet.gradient(a, a) = la / (1 + la * la) * v;
  }

  jet.hessian = Matrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a)
      for (Index j = 0; j < n; ++j)
        for (Index b = 0; b < m; ++b) {
          const double la = angles.lam(a), lb = angles.lam(b);
          double h = 0.0;
          if (i == j && a == b) {
            if (i == a) {
              h = (1 + 2 * la * la) / ((1 + la * la) * (1 + la * la)) * v;
            } else {
              const double li = angles.lam(i);
              h = v / ((1 + li * li) * (1 + la * la));
            }
          } else if (a != b && ((i == b && j == a) || (i == a && j == b))) {
            h = la * lb / ((1 + la * la) * (1 + lb * lb)) * v;
          }
          jet.hessian(flat_index(i, a, m), flat_index(j, b, m)) = h;
        }
  return jet;
}

ScalarJet2 u_jet(const JordanAngles& angles, Index n, Index m) {
  double u = 0.0;
  for (Index k = 0; k < angles.p(); ++k) u += angles.lambda(k) * angles.lambda(k);

  ScalarJet2 jet;
  jet.value = u;
  jet.gradient = Matrix::Zero(n, m);
  for (Index a = 0; a < std::min(n, m); ++a) jet.gradient(a, a) = 2 * angles.lam(a);

  jet.hessian = Matrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a)
      for (Index j = 0; j < n; ++j)
        for (Index b = 0; b < m; ++b) {
          const double la = angles.lam(a), lb = angles.lam(b);
          double h = 0.0;
          if (i == j && a == b) {
            h = (i == a) ? 2 + 4 * la * la / (1 + la * la) : 2.0;
          } else if (a != b && i == b && j == a) {
            h = 2 * la * lb * (1 / (1 + la * la) + 1 / (1 + lb * lb));
          }
          jet.hessian(flat_index(i, a, m), flat_index(j, b, m)) = h;
        }
  return jet;
}

const char* to_string(HKind kind) {
  switch (kind) {
    case HKind::h1: return "h1";
    case HKind::h2: return "h2";
    case HKind::h3: return "h3";
    case HKind::h4: return "h4";
  }
  return "?";
}

bool h_uses_v(HKind kind) { return kind == HKind::h1 || kind == HKind::h2; }

namespace {

void check_h_domain(HKind kind, double s) {
  if (s >= 2.0 - kHDomainMargin)
    throw std::domain_error(std::string(to_string(kind)) + ": requires " +
                            (h_uses_v(kind) ? "v" : "u") + " < 2, got " + std::to_string(s));
}

}  // namespace

ScalarProfile h_profile(HKind kind, double s, Index p) {
  check_h_domain(kind, s);
  const double pd = static_cast<double>(p);
  switch (kind) {
    case HKind::h1: {
      // v^{-k} (2-v)^k with k = 3/4 + 1/(2p)
      const double k = 0.75 + 0.5 / pd;
      const double value = std::pow(s, -k) * std::pow(2 - s, k);
      const double d1 = -2 * k * std::pow(s, -k - 1) * std::pow(2 - s, k - 1);
      const double d2 = 4 * k * std::pow(s, -k - 2) * std::pow(2 - s, k - 2) * (k + 1 - s);
      return ScalarProfile{value, d1, d2};
    }
    case HKind::h2: {
      // v^{3/2} (2-v)^{-3/2}
      const double value = std::pow(s, 1.5) * std::pow(2 - s, -1.5);
      const double d1 = 3 * std::sqrt(s) * std::pow(2 - s, -2.5);
      const double d2 = 1.5 / std::sqrt(s) * std::pow(2 - s, -3.5) * (2 + 4 * s);
      return ScalarProfile{value, d1, d2};
    }
    case HKind::h3: {
      // (u+p)^{-1} (2-u)
      const double value = (2 - s) / (s + pd);
      const double d1 = -(2 + pd) / ((s + pd) * (s + pd));
      const double d2 = 2 * (2 + pd) / ((s + pd) * (s + pd) * (s + pd));
      return ScalarProfile{value, d1, d2};
    }
    case HKind::h4: {
      // (u+p)^c (2-u)^{-c} with c = 3p/(p+2)
      const double c = 3 * pd / (pd + 2);
      const double value = std::pow(s + pd, c) * std::pow(2 - s, -c);
      const double d1 = c * (pd + 2) * std::pow(s + pd, c - 1) * std::pow(2 - s, -c - 1);
      const double d2 = c * (pd + 2) * std::pow(s + pd, c - 2) * std::pow(2 - s, -c - 2) *
                        ((c - 1) * (2 - s) + (c + 1) * (s + pd));
      return ScalarProfile{value, d1, d2};
    }
  }
  throw std::logic_error("h_profile: unreachable");
}

double h_value(HKind kind, const ChartPoint& point) {
  const double s = h_uses_v(kind) ? v_value(point) : u_value(point);
  return h_profile(kind, s, point.p()).value;
}

ScalarJet2 h_jet(HKind kind, const JordanAngles& angles, Index n, Index m) {
  const ScalarJet2 base = h_uses_v(kind) ? v_jet(angles, n, m) : u_jet(angles, n, m);
  const ScalarProfile prof = h_profile(kind, base.value, std::min(n, m));
  ScalarJet2 jet;
  jet.value = prof.value;
  jet.gradient = prof.d1 * base.gradient;
  const Vector ds = flatten(base.gradient);
  jet.hessian = prof.d1 * base.hessian + prof.d2 * (ds * ds.transpose());
  return jet;
}

NormalizedJet v_jet_at(const ChartPoint& point) {
  DiagonalNormalization frame = normalize_diagonal(point);
  ScalarJet2 jet = v_jet(frame.angles, point.n(), point.m());
  return NormalizedJet{std::move(frame), std::move(jet)};
}

NormalizedJet u_jet_at(const ChartPoint& point) {
  DiagonalNormalization frame = normalize_diagonal(point);
  ScalarJet2 jet = u_jet(frame.angles, point.n(), point.m());
  return NormalizedJet{std::move(frame), std::move(jet)};
}

NormalizedJet h_jet_at(HKind kind, const ChartPoint& point) {
  DiagonalNormalization frame = normalize_diagonal(point);
  ScalarJet2 jet = h_jet(kind, frame.angles, point.n(), point.m());
  return NormalizedJet{std::move(frame), std::move(jet)};
}

}  // namespace grassconv
