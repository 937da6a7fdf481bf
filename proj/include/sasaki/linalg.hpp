#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace sasaki {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3 array with every index ranging over 0..dim-1.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int i, int j, int k) { return data_[offset(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[offset(i, j, k)]; }

  double max_abs() const;
  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator*=(double s);
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b);

 private:
  std::size_t offset(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }

  double max_abs() const;
  Tensor4& operator+=(const Tensor4& o);
  Tensor4& operator*=(double s);
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b);

 private:
  std::size_t offset(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

inline double bilinear(const Mat& g, const Vec& a, const Vec& b) { return a.dot(g * b); }

}  // namespace sasaki
