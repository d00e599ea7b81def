#pragma once

#include <initializer_list>
#include <memory>
#include <vector>

#include "hyperlap/calculus.hpp"

namespace hyperlap::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Point pt(const Manifold& m, std::initializer_list<double> xs) { return Point(m, vec(xs)); }

inline std::shared_ptr<const OrientedHypergraph> graph(std::size_t n, std::vector<HyperEdge> edges) {
  return std::make_shared<const OrientedHypergraph>(n, std::move(edges));
}

// Real-valued function on R^1.
inline VertexFunction scalar_function(std::shared_ptr<const OrientedHypergraph> g,
                                      std::initializer_list<double> values) {
  const Manifold r1 = Manifold::euclidean(1);
  std::vector<Point> points;
  for (double x : values) points.push_back(pt(r1, {x}));
  return VertexFunction(std::move(g), std::move(points));
}

}  // namespace hyperlap::test
