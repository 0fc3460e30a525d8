#pragma once

#include <Eigen/Dense>

namespace egvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace egvi
