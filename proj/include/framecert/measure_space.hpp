#pragma once

#include <optional>
#include <vector>

#include "framecert/types.hpp"

namespace framecert {

// A quadrature-sampled measure space: m sample points with strictly positive
// weights w_i, optionally partitioned into blocks X_n with declared measures
// mu(X_n). Integrals over X become weighted sums.
class MeasureSpace {
 public:
  struct Block {
    std::vector<int> indices;
    double measure = 0.0;
  };

  MeasureSpace(RealVector weights, std::vector<Block> partition = {});

  static MeasureSpace counting(int m);
  // Trapezoidal weights on the interval [a, b] with m grid points.
  static MeasureSpace trapezoid(double a, double b, int m);

  int size() const { return static_cast<int>(weights_.size()); }
  const RealVector& weights() const { return weights_; }
  bool has_partition() const { return !partition_.empty(); }
  const std::vector<Block>& partition() const { return partition_; }

 private:
  RealVector weights_;
  std::vector<Block> partition_;
};

// Sum_i w_i a_i conj(b_i); the discretized L^2(X, mu) inner product.
Complex weighted_l2_inner(const Vector& a, const Vector& b,
                          const MeasureSpace& sp);

// Graph inner product <f,g> + <Af,Ag> carried by the Gram matrix I + A*A.
class GraphMetric {
 public:
  explicit GraphMetric(Matrix op);

  const Matrix& op() const { return op_; }
  const Matrix& gram() const { return gram_; }
  int dim() const { return static_cast<int>(op_.rows()); }

 private:
  Matrix op_;
  Matrix gram_;
};

Complex graph_inner(const Vector& f, const Vector& g, const GraphMetric& gm);

// e_1..e_d.
std::vector<Vector> standard_onb(int d);

}  // namespace framecert
