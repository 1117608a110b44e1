#include "isw/stratification.hpp"

#include <cmath>

namespace isw {

double ModePair::eval(double y, int order) const {
  if (y < -1e-12 || y > 1.0 + 1e-12)
    throw ConfigError("mode_function: y outside [0,1]");
  if (order < 0 || order > 3) throw ConfigError("mode_function: deriv_order must be 0..3");
  // phi = C * Im[ e^{z y} ] with z = growth + i*wavenumber, so
  // phi^{(k)} = C * Im[ z^k e^{z y} ].
  const Complex z(growth, wavenumber);
  Complex zk(1.0, 0.0);
  for (int k = 0; k < order; ++k) zk *= z;
  return norm_const * std::imag(zk * std::exp(z * y));
}

double mode_eigenvalue(const Stratification& strat, int n) {
  if (n < 0) throw ConfigError("mode index must be nonnegative");
  const double kn = (n + 1) * M_PI;
  return (0.25 * strat.delta * strat.delta + kn * kn) / strat.delta;
}

ModePair mode_pair(const Stratification& strat, int n) {
  ModePair m;
  m.n = n;
  m.lambda = mode_eigenvalue(strat, n);
  m.growth = 0.5 * strat.delta;
  m.wavenumber = (n + 1) * M_PI;
  m.norm_const = std::sqrt(2.0 / strat.delta);
  return m;
}

double mode_function(const Stratification& strat, int n, double y, int deriv_order) {
  return mode_pair(strat, n).eval(y, deriv_order);
}

double critical_speed(const Stratification& strat) {
  return std::sqrt(strat.g / mode_eigenvalue(strat, 0));
}

StateVector basis_state(const Stratification& strat, const QuadratureRule& quad,
                        int M, int k) {
  if (k < 1 || k > 4) throw ConfigError("basis slot k must be 1..4");
  StateVector U(quad);
  const ModePair m = mode_pair(strat, M);
  for (int i = 0; i < quad.size(); ++i) {
    const double y = quad.nodes()[i];
    const double phi = m.eval(y, 0);
    U.comp[k - 1][i] = (k == 1) ? strat.drho(y) * phi : phi;
  }
  return U;
}

Complex weighted_inner_product(const Stratification& strat, const StateVector& U,
                               const StateVector& V) {
  if (U.quad == nullptr || V.quad == nullptr || !U.quad->same_grid(*V.quad))
    throw ConfigError("weighted_inner_product: grid mismatch");
  const QuadratureRule& q = *U.quad;
  Complex acc(0.0, 0.0);
  for (int i = 0; i < q.size(); ++i) {
    const double y = q.nodes()[i];
    const double w = -strat.drho(y);  // positive weight
    const double dr = strat.drho(y);
    Complex term = U.comp[0][i] * V.comp[0][i] / (dr * dr);
    for (int k = 1; k < 4; ++k) term += U.comp[k][i] * V.comp[k][i];
    acc += q.weights()[i] * w * term;
  }
  return acc;
}

}  // namespace isw
