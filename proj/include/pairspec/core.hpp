// Shared scalar/matrix aliases used across the library.

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <numbers>

namespace pairspec {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar>;

template <typename Scalar>
using Triplet = Eigen::Triplet<Scalar>;

template <typename Scalar>
inline constexpr Scalar pi = std::numbers::pi_v<Scalar>;

}  // namespace pairspec
