#pragma once

#include <Eigen/Dense>

#include "tnrank/tensor.hpp"

namespace tnrank {

using ComplexMatrix = Eigen::MatrixXcd;

/// Float-mode order-2 tensor -> Eigen matrix (copies; handles the row-major layout).
ComplexMatrix to_eigen(const Tensor& m);
Tensor from_eigen(const ComplexMatrix& m);

}  // namespace tnrank
