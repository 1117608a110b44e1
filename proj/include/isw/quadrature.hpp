#pragma once

#include <vector>

#include "isw/types.hpp"

namespace isw {

/// Gauss-Legendre rule on [0,1]. Integrands in this project are smooth
/// products of exponentials and trigonometric functions, so convergence in
/// the node count is superexponential; 128 nodes is far beyond what the
/// target tolerances need.
class QuadratureRule {
public:
  explicit QuadratureRule(int nodes = 128);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

  /// Sum of w_i * values[i]; `values` must live on this rule's grid.
  double dot(const std::vector<double>& values) const;

  bool same_grid(const QuadratureRule& other) const;

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace isw
