#pragma once

#include <cmath>
#include <vector>

#include "hyperlap/calculus.hpp"

namespace hyperlap::test {

// Graph p-Laplacian over a dense weight matrix. Only the manifold primitives are
// shared with the library; the hypergraph code paths are not touched.
class GraphLaplacianOracle {
 public:
  explicit GraphLaplacianOracle(const OrientedHypergraph& g)
      : n_(g.num_vertices()), w_(n_ * n_, 0.0), adjacent_(n_ * n_, false) {
    for (const HyperEdge& e : g.edges()) {
      const std::size_t i = e.in.at(0) - 1;
      const std::size_t j = e.out.at(0) - 1;
      w_[i * n_ + j] = e.weight;
      adjacent_[i * n_ + j] = true;
    }
  }

  Vector operator()(const std::vector<Point>& f, std::size_t u, double p, bool isotropic,
                    bool normalize) const {
    const Point& x = f[u];
    Vector sum = Vector::Zero(x.coords().size());
    double aggregate = 0.0;
    std::size_t degree = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (!adjacent_[u * n_ + v]) continue;
      ++degree;
      const double w = w_[u * n_ + v];
      const Vector l = log_map(x, f[v]).coords();
      const double d = std::sqrt(x.manifold().inner(l, l));
      if (isotropic) {
        aggregate += w * d * d;
        sum += w * l;
      } else {
        sum += std::pow(w, p / 2) * std::pow(d, p - 2) * l;
      }
    }
    if (degree == 0) return sum;
    if (isotropic) sum *= std::pow(aggregate, (p - 2) / 2);
    if (normalize) sum /= static_cast<double>(degree);
    return -sum;
  }

 private:
  std::size_t n_;
  std::vector<double> w_;
  std::vector<bool> adjacent_;
};

}  // namespace hyperlap::test
