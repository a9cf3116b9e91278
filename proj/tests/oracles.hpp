// Brute-force dense references the library's fast paths are checked against.

#pragma once

#include "pairspec/core.hpp"

#include <Eigen/Dense>

#include <random>
#include <stdexcept>

namespace pairspec::testing {

inline DenseVector<double> dense_eigenvalues(const DenseMatrix<double>& A,
                                             const DenseMatrix<double>& B) {
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix<double>> es(A, B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense reference solve failed");
  return es.eigenvalues();
}

inline DenseVector<double> dense_eigenvalues(const SparseMatrix<double>& A,
                                             const SparseMatrix<double>& B) {
  return dense_eigenvalues(DenseMatrix<double>(A), DenseMatrix<double>(B));
}

inline Index dense_count_below(const DenseVector<double>& spectrum, double E) {
  Index n = 0;
  for (Index i = 0; i < spectrum.size(); ++i)
    if (spectrum[i] < E) ++n;
  return n;
}

struct RandomPencil {
  SparseMatrix<double> A;
  SparseMatrix<double> B;
};

/// Random symmetric A and well-conditioned SPD B, reproducible from `seed`.
inline RandomPencil random_pencil(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix<double> R(n, n), S(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      R(i, j) = u(rng);
      S(i, j) = u(rng);
    }
  DenseMatrix<double> A = 0.5 * (R + R.transpose());
  DenseMatrix<double> B =
      S * S.transpose() + static_cast<double>(n) * DenseMatrix<double>::Identity(n, n);
  RandomPencil p;
  p.A = A.sparseView();
  p.B = B.sparseView();
  return p;
}

/// Like random_pencil but with A positive semidefinite, matching the
/// stiffness/mass shape the iterative solver is built for.
inline RandomPencil random_psd_pencil(Index n, std::uint64_t seed) {
  RandomPencil p = random_pencil(n, seed);
  const DenseMatrix<double> R(p.A);
  p.A = DenseMatrix<double>(R * R.transpose()).sparseView();
  return p;
}

}  // namespace pairspec::testing
