#pragma once

#include <array>
#include <vector>

#include "isw/quadrature.hpp"
#include "isw/types.hpp"

namespace isw {

/// Exponential rest-state density profile rho(y) = exp(-delta*y) on the
/// channel cross-section [0,1], together with gravity. Immutable.
struct Stratification {
  double delta;  // stratification rate, > 0
  double g;      // gravity, > 0

  Stratification(double delta_, double g_) : delta(delta_), g(g_) {
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    if (!(g > 0.0)) throw ConfigError("g must be positive");
  }

  double rho(double y) const { return std::exp(-delta * y); }
  double drho(double y) const { return -delta * std::exp(-delta * y); }
};

/// One eigenpair of the weighted vertical problem
///   d/dy( rho(y) phi'(y) ) = lambda * rho'(y) * phi(y),  phi(0)=phi(1)=0,
/// restricted to the exponential stratification where everything is in
/// closed form:
///   lambda_n = (delta^2/4 + (n+1)^2 pi^2) / delta,
///   phi_n(y) = sqrt(2/delta) * exp(delta*y/2) * sin((n+1)*pi*y),
/// normalized so that  int_0^1 (-rho') phi_n phi_m dy = delta_{nm}.
struct ModePair {
  int n;
  double lambda;
  double growth;      // delta/2
  double wavenumber;  // (n+1)*pi
  double norm_const;  // sqrt(2/delta)

  /// phi_n^{(order)}(y), order <= 3, via d^k/dy^k Im[(a+ib)^k e^{(a+ib)y}].
  double eval(double y, int order = 0) const;
};

double mode_eigenvalue(const Stratification& strat, int n);
ModePair mode_pair(const Stratification& strat, int n);
double mode_function(const Stratification& strat, int n, double y, int deriv_order = 0);

/// Critical speed c0 = sqrt(g/lambda_0). Every supercritical speed c > c0
/// puts lambda = g/c^2 strictly below the principal eigenvalue.
double critical_speed(const Stratification& strat);

/// Four component functions on [0,1], sampled on a shared quadrature grid.
/// Slot 1 carries the density perturbation, slots 2-4 the stream function
/// and its first two horizontal derivatives.
struct StateVector {
  const QuadratureRule* quad = nullptr;
  std::array<std::vector<Complex>, 4> comp;

  StateVector() = default;
  explicit StateVector(const QuadratureRule& q) : quad(&q) {
    for (auto& c : comp) c.assign(q.size(), Complex(0.0, 0.0));
  }
};

/// Basis element U_M^k: slot k holds phi_M, except k=1 which holds rho'*phi_M.
StateVector basis_state(const Stratification& strat, const QuadratureRule& quad,
                        int M, int k);

/// The weighted product
///   <U,V> = int_0^1 (-rho') ( U1 V1/(rho')^2 + U2 V2 + U3 V3 + U4 V4 ) dy,
/// extended bilinearly (no conjugation) to complex-valued samples; the basis
/// functions are real, so this is what Galerkin coefficient extraction needs.
Complex weighted_inner_product(const Stratification& strat, const StateVector& U,
                               const StateVector& V);

}  // namespace isw
