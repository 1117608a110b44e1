#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isw/jet.hpp"
#include "isw/quadrature.hpp"
#include "isw/stratification.hpp"
#include "isw/types.hpp"

namespace isw {

/// Coefficients of the long-wave reduction about the principal mode.
/// Both are negative for the exponential stratification.
struct KdvCoefficients {
  double r;
  double s;
  double c0;
  double lambda0;
};

/// r and s by quadrature of their integral formulas
///   s = -(c0/2) int rho phi0^2 / int rho (phi0')^2
///   r = -(3/4)  int rho (phi0')^3 / int rho (phi0')^2 .
KdvCoefficients kdv_coefficients(const Stratification& strat, int quad_nodes = 128);

/// Closed forms for the exponential stratification, kept as an independent
/// cross-check of the quadrature route.
double kdv_s_closed_form(const Stratification& strat);
double kdv_r_closed_form(const Stratification& strat);

/// The soliton A(Xi) = -(3/2r) sech^2(Xi / (2 sqrt(-s))) of
///   A'' = -(1/s) A - (r/s) A^2 .
/// Note the width: the half-width 2*sqrt(-s) is the one that makes the
/// equation residual vanish together with the amplitude -3/(2r); a width of
/// sqrt(-s) is inconsistent with that amplitude.
struct KdvSoliton {
  KdvCoefficients coeffs;
  double amplitude;   // -3/(2r)
  double inv_width;   // 1/(2 sqrt(-s))

  explicit KdvSoliton(const KdvCoefficients& c);

  /// A^{(order)}(Xi). Orders 0..2 come from sech/tanh algebra; orders 3 and 4
  /// are produced by differentiating the profile equation.
  double eval(double Xi, int order = 0) const;
};

double kdv_soliton(const KdvCoefficients& coeffs, double Xi, int deriv_order = 0);

/// All partials of the wave fields at one point, to third order.
struct ProfileJets {
  Jet psi;  // stream function of the wave, relative to the quiescent state
  Jet rho;  // density field of the wave
};

class ProfileEvaluator {
public:
  virtual ~ProfileEvaluator() = default;
  virtual ProfileJets eval(double xi, double y) const = 0;
  virtual void eval_column(double xi, const std::vector<double>& ys,
                           std::vector<ProfileJets>& out) const;
};

struct RegularityReport {
  bool smoothness_ok = false;     // all sampled partials finite
  bool decay_ok = false;          // fitted rate consistent with expected
  bool monotonicity_ok = false;   // rho_y < 0 and psi_y - c bounded away from 0
  double fitted_decay_rate = 0.0;
  double expected_decay_rate = 0.0;
  double max_psi_y_minus_c = 0.0;  // should stay negative
  double max_rho_y = 0.0;          // should stay negative
  double min_rho = 0.0, max_rho = 0.0;
  bool pass() const { return smoothness_ok && decay_ok && monotonicity_ok; }
};

/// Small-amplitude internal solitary wave of speed c = c0 + eps^2.
///
/// The stream function is the leading-order separated product
///   psi(xi,y) = a(xi) phi0(y),  a(xi) = eps^2 A(eps xi),
/// and the density is slaved exactly through rho = rho_bar(y) e^{delta psi/c},
/// so all density partials follow from the chain rule, never from finite
/// differences. Immutable; evaluation is pure and reentrant.
class WaveProfile {
public:
  WaveProfile(const Stratification& strat, double epsilon,
              double validity_threshold = 0.25, int quad_nodes = 128);

  /// Externally tabulated profile hook (plain text, header row, columns
  /// xi y psi rho on a tensor grid). Speed derivatives are unavailable.
  static WaveProfile from_table(const Stratification& strat, const std::string& path,
                                double c, double validity_threshold = 0.25);

  const Stratification& strat() const { return strat_; }
  double epsilon() const { return epsilon_; }
  double speed() const { return c_; }
  double decay_rate() const { return decay_rate_; }
  const KdvCoefficients& coeffs() const { return coeffs_; }
  bool has_speed_derivatives() const { return analytic_; }
  const KdvSoliton& soliton() const;

  ProfileJets eval(double xi, double y) const { return evaluator_->eval(xi, y); }
  void eval_column(double xi, const std::vector<double>& ys,
                   std::vector<ProfileJets>& out) const {
    evaluator_->eval_column(xi, ys, out);
  }

  /// Jets of the speed derivatives (d/dc psi, d/dc rho) along the solitary
  /// family c = c0 + eps^2, by the chain rule d/dc = (1/2eps) d/deps.
  ProfileJets eval_speed_derivative(double xi, double y) const;

  RegularityReport check_regularity(double xi_max, int n_xi, int n_y) const;

private:
  WaveProfile(const Stratification& strat, double c, double validity_threshold);

  Stratification strat_;
  double epsilon_ = 0.0;
  double c_;
  double decay_rate_ = 0.0;
  double validity_threshold_;
  bool analytic_ = true;
  KdvCoefficients coeffs_{};
  std::shared_ptr<const KdvSoliton> soliton_;
  std::shared_ptr<const ProfileEvaluator> evaluator_;
};

}  // namespace isw
