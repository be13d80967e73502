#pragma once

#include <Eigen/Dense>

namespace pcsrk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace pcsrk
