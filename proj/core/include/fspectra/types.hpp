#pragma once

#include <Eigen/Core>

namespace fspectra {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;

}  // namespace fspectra
