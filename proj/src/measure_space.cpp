#include "framecert/measure_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace framecert {

MeasureSpace::MeasureSpace(RealVector weights, std::vector<Block> partition)
    : weights_(std::move(weights)), partition_(std::move(partition)) {
  const int m = static_cast<int>(weights_.size());
  if (m < 1) throw std::invalid_argument("MeasureSpace: need at least one point");
  for (int i = 0; i < m; ++i) {
    if (!(weights_[i] > 0.0))
      throw std::invalid_argument("MeasureSpace: weight " + std::to_string(i) +
                                  " is not strictly positive");
  }
  if (!partition_.empty()) {
    std::vector<char> seen(m, 0);
    for (const auto& blk : partition_) {
      if (!(blk.measure > 0.0))
        throw std::invalid_argument("MeasureSpace: block measure must be positive");
      double wsum = 0.0;
      for (int idx : blk.indices) {
        if (idx < 0 || idx >= m)
          throw std::invalid_argument("MeasureSpace: block index out of range");
        if (seen[idx])
          throw std::invalid_argument("MeasureSpace: blocks are not disjoint");
        seen[idx] = 1;
        wsum += weights_[idx];
      }
      if (std::abs(wsum - blk.measure) > 1e-12 * std::max(1.0, blk.measure))
        throw std::invalid_argument(
            "MeasureSpace: block weights do not sum to the block measure");
    }
    for (int i = 0; i < m; ++i)
      if (!seen[i])
        throw std::invalid_argument("MeasureSpace: blocks do not cover all points");
  }
}

MeasureSpace MeasureSpace::counting(int m) {
  return MeasureSpace(RealVector::Ones(m));
}

MeasureSpace MeasureSpace::trapezoid(double a, double b, int m) {
  if (m < 2) throw std::invalid_argument("trapezoid: need at least two points");
  if (!(b > a)) throw std::invalid_argument("trapezoid: need b > a");
  const double h = (b - a) / (m - 1);
  RealVector w = RealVector::Constant(m, h);
  w[0] = h / 2;
  w[m - 1] = h / 2;
  return MeasureSpace(std::move(w));
}

Complex weighted_l2_inner(const Vector& a, const Vector& b,
                          const MeasureSpace& sp) {
  if (a.size() != sp.size() || b.size() != sp.size())
    throw std::invalid_argument("weighted_l2_inner: length mismatch");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < sp.size(); ++i)
    acc += sp.weights()[i] * a[i] * std::conj(b[i]);
  return acc;
}

GraphMetric::GraphMetric(Matrix op) : op_(std::move(op)) {
  if (op_.rows() != op_.cols())
    throw std::invalid_argument("GraphMetric: operator must be square");
  gram_ = Matrix::Identity(op_.rows(), op_.cols()) + op_.adjoint() * op_;
  gram_ = ((gram_ + gram_.adjoint()) / 2.0).eval();
}

Complex graph_inner(const Vector& f, const Vector& g, const GraphMetric& gm) {
  if (f.size() != gm.dim() || g.size() != gm.dim())
    throw std::invalid_argument("graph_inner: dimension mismatch");
  // <f,g>_A = <(I + A*A) f, g> = g^* G f with the inner product linear in f.
  return (g.adjoint() * gm.gram() * f)(0, 0);
}

std::vector<Vector> standard_onb(int d) {
  if (d < 1) throw std::invalid_argument("standard_onb: d must be >= 1");
  std::vector<Vector> basis;
  basis.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = Complex(1.0, 0.0);
    basis.push_back(std::move(e));
  }
  return basis;
}

}  // namespace framecert
