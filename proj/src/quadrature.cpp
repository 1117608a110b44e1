#include "isw/quadrature.hpp"

#include <cmath>

namespace isw {

// Nodes and weights by Newton iteration on the Legendre polynomial P_n,
// evaluated with the three-term recurrence, then mapped from [-1,1] to [0,1].
QuadratureRule::QuadratureRule(int nodes) {
  if (nodes < 1) throw ConfigError("quadrature.nodes must be >= 1");
  const int n = nodes;
  nodes_.resize(n);
  weights_.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map to [0,1]
    nodes_[i] = 0.5 * (1.0 - x);
    nodes_[n - 1 - i] = 0.5 * (1.0 + x);
    weights_[i] = 0.5 * w;
    weights_[n - 1 - i] = 0.5 * w;
  }
}

double QuadratureRule::dot(const std::vector<double>& values) const {
  if (static_cast<int>(values.size()) != size())
    throw ConfigError("quadrature grid mismatch");
  double acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += weights_[i] * values[i];
  return acc;
}

bool QuadratureRule::same_grid(const QuadratureRule& other) const {
  return size() == other.size() && nodes_ == other.nodes_;
}

}  // namespace isw
