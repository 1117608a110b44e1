#include "isw/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace isw {

KdvCoefficients kdv_coefficients(const Stratification& strat, int quad_nodes) {
  const QuadratureRule quad(quad_nodes);
  const ModePair phi0 = mode_pair(strat, 0);
  double i_phi2 = 0.0, i_dphi2 = 0.0, i_dphi3 = 0.0;
  for (int i = 0; i < quad.size(); ++i) {
    const double y = quad.nodes()[i];
    const double w = quad.weights()[i] * strat.rho(y);
    const double p = phi0.eval(y, 0);
    const double dp = phi0.eval(y, 1);
    i_phi2 += w * p * p;
    i_dphi2 += w * dp * dp;
    i_dphi3 += w * dp * dp * dp;
  }
  KdvCoefficients c;
  c.c0 = critical_speed(strat);
  c.lambda0 = mode_eigenvalue(strat, 0);
  c.s = -0.5 * c.c0 * i_phi2 / i_dphi2;
  c.r = -0.75 * i_dphi3 / i_dphi2;
  if (!(c.s < 0.0) || !(c.r < 0.0))
    throw NumericalError("kdv_coefficients: expected r < 0 and s < 0");
  return c;
}

double kdv_s_closed_form(const Stratification& strat) {
  return -critical_speed(strat) / (2.0 * strat.delta * mode_eigenvalue(strat, 0));
}

double kdv_r_closed_form(const Stratification& strat) {
  const double d = strat.delta;
  const double pi3 = M_PI * M_PI * M_PI;
  const double q1 = 0.25 * d * d + M_PI * M_PI;
  const double q2 = 0.25 * d * d + 9.0 * M_PI * M_PI;
  return -3.0 * d * pi3 * (std::exp(0.5 * d) + 1.0) / (2.0 * q1 * q2);
}

KdvSoliton::KdvSoliton(const KdvCoefficients& c) : coeffs(c) {
  amplitude = -1.5 / c.r;
  inv_width = 0.5 / std::sqrt(-c.s);
}

double KdvSoliton::eval(double Xi, int order) const {
  const double b = inv_width;
  const double S = 1.0 / std::cosh(b * Xi);
  const double T = std::tanh(b * Xi);
  const double S2 = S * S, T2 = T * T;
  switch (order) {
    case 0:
      return amplitude * S2;
    case 1:
      return -2.0 * amplitude * b * S2 * T;
    case 2:
      return -2.0 * amplitude * b * b * S2 * (S2 - 2.0 * T2);
    case 3:
      return -8.0 * amplitude * b * b * b * S2 * T * (T2 - 2.0 * S2);
    case 4: {
      // second derivative of the profile equation
      const double A = eval(Xi, 0), A1 = eval(Xi, 1), A2 = eval(Xi, 2);
      const double s = coeffs.s, r = coeffs.r;
      return -(1.0 / s) * A2 - (2.0 * r / s) * (A1 * A1 + A * A2);
    }
    default:
      throw ConfigError("kdv_soliton: deriv_order must be 0..4");
  }
}

double kdv_soliton(const KdvCoefficients& coeffs, double Xi, int deriv_order) {
  return KdvSoliton(coeffs).eval(Xi, deriv_order);
}

void ProfileEvaluator::eval_column(double xi, const std::vector<double>& ys,
                                   std::vector<ProfileJets>& out) const {
  out.resize(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) out[i] = eval(xi, ys[i]);
}

namespace {

std::array<double, 4> mode_jet(const ModePair& m, double y) {
  return {m.eval(y, 0), m.eval(y, 1), m.eval(y, 2), m.eval(y, 3)};
}

Jet rho_bar_jet(const Stratification& strat, double y) {
  std::array<double, 4> one{1.0, 0.0, 0.0, 0.0};
  std::array<double, 4> rb;
  double v = strat.rho(y);
  for (int j = 0; j < 4; ++j) {
    rb[j] = v;
    v *= -strat.delta;
  }
  return Jet::separated(one, rb);
}

class AnalyticEvaluator final : public ProfileEvaluator {
public:
  AnalyticEvaluator(const Stratification& strat, double epsilon, double c,
                    const KdvSoliton& sol)
      : strat_(strat), eps_(epsilon), c_(c), sol_(sol), phi0_(mode_pair(strat, 0)) {}

  std::array<double, 4> amplitude_jet(double xi) const {
    // a(xi) = eps^2 A(eps xi)
    std::array<double, 4> a{};
    if (eps_ == 0.0) return a;
    double p = eps_ * eps_;
    for (int k = 0; k < 4; ++k) {
      a[k] = p * sol_.eval(eps_ * xi, k);
      p *= eps_;
    }
    return a;
  }

  ProfileJets jets_from_amplitude(const std::array<double, 4>& a, double y) const {
    ProfileJets out;
    out.psi = Jet::separated(a, mode_jet(phi0_, y));
    out.rho = rho_bar_jet(strat_, y) * exp_jet(out.psi * (strat_.delta / c_));
    return out;
  }

  ProfileJets eval(double xi, double y) const override {
    return jets_from_amplitude(amplitude_jet(xi), y);
  }

  void eval_column(double xi, const std::vector<double>& ys,
                   std::vector<ProfileJets>& out) const override {
    const auto a = amplitude_jet(xi);
    out.resize(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) out[i] = jets_from_amplitude(a, ys[i]);
  }

  /// d/dc of the amplitude along the family c = c0 + eps^2, i.e.
  /// (1/2eps) d/deps [eps^2 A(eps xi)] = A + (eps xi/2) A', with xi-derivatives.
  std::array<double, 4> speed_amplitude_jet(double xi) const {
    const double e = eps_, X = e * xi;
    std::array<double, 4> ca;
    ca[0] = sol_.eval(X, 0) + 0.5 * e * xi * sol_.eval(X, 1);
    ca[1] = 1.5 * e * sol_.eval(X, 1) + 0.5 * e * e * xi * sol_.eval(X, 2);
    ca[2] = 2.0 * e * e * sol_.eval(X, 2) + 0.5 * e * e * e * xi * sol_.eval(X, 3);
    ca[3] = 2.5 * e * e * e * sol_.eval(X, 3) +
            0.5 * e * e * e * e * xi * sol_.eval(X, 4);
    return ca;
  }

  ProfileJets speed_derivative(double xi, double y) const {
    const ProfileJets base = eval(xi, y);
    ProfileJets out;
    out.psi = Jet::separated(speed_amplitude_jet(xi), mode_jet(phi0_, y));
    // d/dc rho = rho * delta * ( (d/dc psi)/c - psi/c^2 )
    out.rho = base.rho * (out.psi * (strat_.delta / c_) +
                          base.psi * (-strat_.delta / (c_ * c_)));
    return out;
  }

private:
  Stratification strat_;
  double eps_, c_;
  KdvSoliton sol_;
  ModePair phi0_;
};

// Cubic through four points in Newton form, converted to monomials about x=0;
// returns value and first three derivatives at x.
void cubic_fit_eval(const double* xs, const double* fs, double x, double* out) {
  double dd[4] = {fs[0], fs[1], fs[2], fs[3]};
  for (int level = 1; level < 4; ++level)
    for (int i = 3; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // Horner-like expansion of the Newton form and its derivatives at x
  double p = dd[3];
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  for (int i = 2; i >= 0; --i) {
    const double t = x - xs[i];
    p3 = p3 * t + 3.0 * p2;
    p2 = p2 * t + 2.0 * p1;
    p1 = p1 * t + p;
    p = p * t + dd[i];
  }
  out[0] = p;
  out[1] = p1;
  out[2] = p2;
  out[3] = p3 * 2.0;  // p3 accumulated 3!*c3/3 pattern; fix to the true 3rd deriv
}

class TabulatedEvaluator final : public ProfileEvaluator {
public:
  TabulatedEvaluator(const Stratification& strat, const std::string& path)
      : strat_(strat) {
    std::ifstream in(path);
    if (!in) throw ConfigError("profile.table: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::map<double, std::map<double, std::pair<double, double>>> rows;
    double xi, y, psi, rho;
    while (in >> xi >> y >> psi >> rho) rows[xi][y] = {psi, rho};
    if (rows.size() < 4) throw ConfigError("profile.table: need at least 4 xi rows");
    for (auto& [x, m] : rows) xs_.push_back(x);
    for (auto& [x, m] : rows.begin()->second) ys_.push_back(x);
    nx_ = static_cast<int>(xs_.size());
    ny_ = static_cast<int>(ys_.size());
    if (ny_ < 4) throw ConfigError("profile.table: need at least 4 y columns");
    psi_.resize(nx_ * ny_);
    rho_.resize(nx_ * ny_);
    int i = 0;
    for (auto& [x, m] : rows) {
      if (static_cast<int>(m.size()) != ny_)
        throw ConfigError("profile.table: not a tensor grid");
      int j = 0;
      for (auto& [yy, v] : m) {
        psi_[i * ny_ + j] = v.first;
        rho_[i * ny_ + j] = v.second;
        ++j;
      }
      ++i;
    }
  }

  ProfileJets eval(double xi, double y) const override {
    const int i0 = stencil(xs_, xi);
    const int j0 = stencil(ys_, y);
    ProfileJets out;
    out.psi = interp(psi_, i0, j0, xi, y);
    out.rho = interp(rho_, i0, j0, xi, y);
    // store the perturbation relative to the rest state in psi, absolute rho
    return out;
  }

  double xi_max() const { return xs_.back(); }

private:
  static int stencil(const std::vector<double>& v, double x) {
    auto it = std::upper_bound(v.begin(), v.end(), x);
    int i = static_cast<int>(it - v.begin()) - 1;
    i = std::clamp(i - 1, 0, static_cast<int>(v.size()) - 4);
    return i;
  }

  Jet interp(const std::vector<double>& f, int i0, int j0, double xi, double y) const {
    // interpolate in y on each of the four xi-stencil rows, then in xi
    double g[4][4];  // [xi-node][y-order]
    for (int a = 0; a < 4; ++a) {
      double fs[4];
      for (int b = 0; b < 4; ++b) fs[b] = f[(i0 + a) * ny_ + (j0 + b)];
      cubic_fit_eval(&ys_[j0], fs, y, g[a]);
    }
    Jet out;
    for (int jorder = 0; jorder < 4; ++jorder) {
      double vals[4] = {g[0][jorder], g[1][jorder], g[2][jorder], g[3][jorder]};
      double dx[4];
      cubic_fit_eval(&xs_[i0], vals, xi, dx);
      for (int iorder = 0; iorder + jorder <= 3; ++iorder)
        out.at(iorder, jorder) = dx[iorder];
    }
    return out;
  }

  Stratification strat_;
  std::vector<double> xs_, ys_;
  std::vector<double> psi_, rho_;
  int nx_ = 0, ny_ = 0;
};

}  // namespace

WaveProfile::WaveProfile(const Stratification& strat, double epsilon,
                         double validity_threshold, int quad_nodes)
    : strat_(strat), epsilon_(epsilon), c_(0.0),
      validity_threshold_(validity_threshold) {
  if (epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");
  if (epsilon > validity_threshold)
    throw ConfigError("epsilon above validity threshold (monotonicity may fail)");
  coeffs_ = kdv_coefficients(strat, quad_nodes);
  c_ = coeffs_.c0 + epsilon * epsilon;
  decay_rate_ = epsilon / std::sqrt(-coeffs_.s);
  soliton_ = std::make_shared<KdvSoliton>(coeffs_);
  evaluator_ = std::make_shared<AnalyticEvaluator>(strat_, epsilon_, c_, *soliton_);
}

WaveProfile::WaveProfile(const Stratification& strat, double c, double validity_threshold)
    : strat_(strat), c_(c), validity_threshold_(validity_threshold) {}

WaveProfile WaveProfile::from_table(const Stratification& strat, const std::string& path,
                                    double c, double validity_threshold) {
  WaveProfile p(strat, c, validity_threshold);
  p.analytic_ = false;
  p.epsilon_ = std::numeric_limits<double>::quiet_NaN();
  p.coeffs_ = kdv_coefficients(strat);
  if (!(c > p.coeffs_.c0)) throw ConfigError("tabulated profile speed must exceed c0");
  p.soliton_ = std::make_shared<KdvSoliton>(p.coeffs_);
  auto tab = std::make_shared<TabulatedEvaluator>(strat, path);
  // fit the decay rate from the tail of the table
  const double xmax = tab->xi_max();
  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  int n = 0;
  for (int i = 0; i < 16; ++i) {
    const double xi = 0.6 * xmax + 0.35 * xmax * i / 15.0;
    const double a = std::abs(tab->eval(xi, 0.5).psi(0, 0));
    if (a <= 0.0) continue;
    const double l = std::log(a);
    sx += xi;
    sy += l;
    sxx += xi * xi;
    sxy += xi * l;
    ++n;
  }
  p.decay_rate_ = (n >= 2) ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  p.evaluator_ = tab;
  return p;
}

const KdvSoliton& WaveProfile::soliton() const { return *soliton_; }

ProfileJets WaveProfile::eval_speed_derivative(double xi, double y) const {
  if (!analytic_)
    throw NumericalError("speed derivatives unavailable for tabulated profiles");
  return static_cast<const AnalyticEvaluator&>(*evaluator_).speed_derivative(xi, y);
}

RegularityReport WaveProfile::check_regularity(double xi_max, int n_xi, int n_y) const {
  RegularityReport rep;
  rep.expected_decay_rate = decay_rate_;
  rep.max_psi_y_minus_c = -std::numeric_limits<double>::infinity();
  rep.max_rho_y = -std::numeric_limits<double>::infinity();
  rep.min_rho = std::numeric_limits<double>::infinity();
  rep.max_rho = -std::numeric_limits<double>::infinity();
  bool finite = true;
  for (int ix = 0; ix < n_xi; ++ix) {
    const double xi = -xi_max + 2.0 * xi_max * ix / std::max(1, n_xi - 1);
    for (int iy = 0; iy < n_y; ++iy) {
      const double y = (iy + 0.5) / n_y;
      const ProfileJets j = eval(xi, y);
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
          if (!std::isfinite(j.psi(a, b)) || !std::isfinite(j.rho(a, b))) finite = false;
      rep.max_psi_y_minus_c = std::max(rep.max_psi_y_minus_c, j.psi(0, 1) - c_);
      rep.max_rho_y = std::max(rep.max_rho_y, j.rho(0, 1));
      rep.min_rho = std::min(rep.min_rho, j.rho(0, 0));
      rep.max_rho = std::max(rep.max_rho, j.rho(0, 0));
    }
  }
  rep.smoothness_ok = finite;
  rep.monotonicity_ok = finite && rep.max_psi_y_minus_c < 0.0 && rep.max_rho_y < 0.0 &&
                        rep.min_rho >= strat_.rho(1.0) - 1e-12 &&
                        rep.max_rho <= strat_.rho(0.0) + 1e-12;

  if (analytic_ && epsilon_ == 0.0) {
    rep.decay_ok = true;  // quiescent state, nothing to fit
    rep.fitted_decay_rate = 0.0;
    return rep;
  }
  // least-squares slope of log |psi(xi, y=1/2)| over a tail window
  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  int n = 0;
  const double x1 = 0.45 * xi_max, x2 = 0.95 * xi_max;
  for (int i = 0; i < 24; ++i) {
    const double xi = x1 + (x2 - x1) * i / 23.0;
    const double a = std::abs(eval(xi, 0.5).psi(0, 0));
    if (a <= 1e-300) continue;
    const double l = std::log(a);
    sx += xi;
    sy += l;
    sxx += xi * xi;
    sxy += xi * l;
    ++n;
  }
  rep.fitted_decay_rate = (n >= 2) ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  if (analytic_) {
    rep.decay_ok = rep.fitted_decay_rate > 0.0 &&
                   std::abs(rep.fitted_decay_rate / rep.expected_decay_rate - 1.0) < 0.25;
  } else {
    rep.decay_ok = rep.fitted_decay_rate > 0.0;
    rep.expected_decay_rate = rep.fitted_decay_rate;
  }
  return rep;
}

}  // namespace isw
