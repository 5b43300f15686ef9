#pragma once

#include <Eigen/Core>

namespace nsbench {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace nsbench
