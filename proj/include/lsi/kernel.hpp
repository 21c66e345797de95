#pragma once

#include "lsi/types.hpp"

namespace lsi {

/// Scaled radial basis function k(x,y) = c_k exp(−|x−y|²/ε²).
struct KernelParams {
  double epsilon = 1.0;  // length scale
  double c_k = 1.0;      // output scale

  void validate() const {
    if (epsilon <= 0.0 || c_k <= 0.0)
      throw std::invalid_argument("KernelParams: epsilon and c_k must be > 0");
  }
};

/// Kernel value. Dimensions of x and y must agree.
double kernel_value(const Vec& x, const Vec& y, const KernelParams& p);

/// Gradient with respect to the components of the first argument:
/// ∂k/∂x_a = −2(x_a − y_a) k / ε².
Vec kernel_grad_x(const Vec& x, const Vec& y, const KernelParams& p);

/// Second derivatives with respect to the first argument:
/// ∂²k/∂x_a∂x_b = (−2δ_ab/ε² + 4(x_a−y_a)(x_b−y_b)/ε⁴) k.
Mat kernel_hess_x(const Vec& x, const Vec& y, const KernelParams& p);

/// Gram matrix k(Z,Z). Entry (i,j) = k(z_i, z_j); rows of Z are points.
Mat gram_matrix(const Mat& Z, const KernelParams& p);

/// Serial Gram assembly, kept as a reference path for the OpenMP kernel.
Mat gram_matrix_serial(const Mat& Z, const KernelParams& p);

}  // namespace lsi
