#pragma once

#include <array>
#include <cmath>

namespace isw {

/// Partial derivatives of a scalar field f(xi,y) up to total order ORDER,
/// stored as raw partials d[i][j] = d^{i+j} f / dxi^i dy^j (i+j <= ORDER).
/// Products and exp are exact truncated-Leibniz operations, so chained
/// fields (like the density slaved to the stream function) inherit exact
/// derivatives with no numerical differentiation.
template <int ORDER = 3>
struct Jet2 {
  static constexpr int order = ORDER;
  std::array<std::array<double, ORDER + 1>, ORDER + 1> d{};

  double operator()(int i, int j) const { return d[i][j]; }
  double& at(int i, int j) { return d[i][j]; }

  static Jet2 constant(double v) {
    Jet2 r;
    r.d[0][0] = v;
    return r;
  }

  /// Separated product a(xi) * b(y) from 1-D derivative lists.
  static Jet2 separated(const std::array<double, ORDER + 1>& a,
                        const std::array<double, ORDER + 1>& b) {
    Jet2 r;
    for (int i = 0; i <= ORDER; ++i)
      for (int j = 0; i + j <= ORDER; ++j) r.d[i][j] = a[i] * b[j];
    return r;
  }

  Jet2 operator+(const Jet2& o) const {
    Jet2 r;
    for (int i = 0; i <= ORDER; ++i)
      for (int j = 0; i + j <= ORDER; ++j) r.d[i][j] = d[i][j] + o.d[i][j];
    return r;
  }

  Jet2 operator*(double s) const {
    Jet2 r;
    for (int i = 0; i <= ORDER; ++i)
      for (int j = 0; i + j <= ORDER; ++j) r.d[i][j] = d[i][j] * s;
    return r;
  }

  /// Truncated Leibniz product.
  Jet2 operator*(const Jet2& o) const {
    Jet2 r;
    for (int i = 0; i <= ORDER; ++i)
      for (int j = 0; i + j <= ORDER; ++j) {
        double acc = 0.0;
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q)
            acc += binom(i, p) * binom(j, q) * d[p][q] * o.d[i - p][j - q];
        r.d[i][j] = acc;
      }
    return r;
  }

  static double binom(int n, int k) {
    static const double table[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    return table[n][k];
  }
};

/// exp(f) with all partials, by the recursions E_xi = f_xi E and E_y = f_y E
/// applied in increasing total order.
template <int ORDER>
Jet2<ORDER> exp_jet(const Jet2<ORDER>& f) {
  Jet2<ORDER> e;
  e.d[0][0] = std::exp(f.d[0][0]);
  for (int total = 1; total <= ORDER; ++total) {
    for (int i = 0; i <= total; ++i) {
      const int j = total - i;
      if (i >= 1) {
        // d^{i-1}_xi d^j_y (f_xi * e)
        double acc = 0.0;
        for (int p = 0; p <= i - 1; ++p)
          for (int q = 0; q <= j; ++q)
            acc += Jet2<ORDER>::binom(i - 1, p) * Jet2<ORDER>::binom(j, q) *
                   f.d[p + 1][q] * e.d[i - 1 - p][j - q];
        e.d[i][j] = acc;
      } else {
        // i == 0, j >= 1: d^{j-1}_y (f_y * e)
        double acc = 0.0;
        for (int q = 0; q <= j - 1; ++q)
          acc += Jet2<ORDER>::binom(j - 1, q) * f.d[0][q + 1] * e.d[0][j - 1 - q];
        e.d[i][j] = acc;
      }
    }
  }
  return e;
}

using Jet = Jet2<3>;

}  // namespace isw
