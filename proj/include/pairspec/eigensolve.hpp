// Generalized symmetric eigenvalue tools for the pencil A u = lambda B u with
// A symmetric positive semidefinite and B positive definite:
//
//  * exact eigenvalue counting below a threshold through the inertia of an
//    LDL^T factorization of A - E*B (Sylvester's law), and
//  * certified lowest eigenpairs via shift-invert block Krylov iteration with
//    full reorthogonalization and thick restarts, in the B-inner product.
//
// The only convergence contract of the iterative solver is the per-pair
// residual ||A u - lambda B u|| / ||B u|| <= tol; non-convergence is reported
// explicitly, never silently.

#pragma once

#include "pairspec/core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace pairspec {

template <typename Scalar>
Scalar rayleigh_quotient(const SparseMatrix<Scalar>& A, const SparseMatrix<Scalar>& B,
                         const DenseVector<Scalar>& u) {
  if (u.size() != A.rows()) throw std::invalid_argument("rayleigh_quotient: size mismatch");
  const Scalar nb = u.dot(B * u);
  if (!(nb > Scalar(0)))
    throw std::invalid_argument("rayleigh_quotient: vector has zero B-norm");
  return u.dot(A * u) / nb;
}

/// Result of an inertia count.  `boundary` is raised when a pivot of the
/// factorization is negligible relative to the largest one, i.e. E sits
/// numerically on an eigenvalue; the count is then unreliable by +-multiplicity
/// and the caller should perturb E.
struct InertiaCount {
  Index count = 0;
  bool boundary = false;
};

namespace detail {

template <typename Solver>
InertiaCount read_inertia(const Solver& ldlt, bool factor_ok) {
  InertiaCount r;
  if (!factor_ok) {
    r.boundary = true;
    return r;
  }
  const auto d = ldlt.vectorD();
  double dmax = 0;
  for (Index i = 0; i < d.size(); ++i) dmax = std::max(dmax, std::abs(static_cast<double>(d[i])));
  const double floor = dmax * 1e-11;
  for (Index i = 0; i < d.size(); ++i) {
    const double di = static_cast<double>(d[i]);
    if (!std::isfinite(di) || std::abs(di) <= floor) r.boundary = true;
    if (di < 0) ++r.count;
  }
  return r;
}

template <typename Scalar>
Scalar one_norm(const SparseMatrix<Scalar>& a) {
  Scalar best = 0;
  for (Index j = 0; j < a.outerSize(); ++j) {
    Scalar s = 0;
    for (typename SparseMatrix<Scalar>::InnerIterator it(a, j); it; ++it)
      s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

/// Number of generalized eigenvalues of (A, B) strictly below E, computed as
/// the number of negative pivots of A - E*B.  Exact by inertia invariance
/// whenever E is not an eigenvalue; see InertiaCount for the tie case.
template <typename Scalar>
InertiaCount count_below(const SparseMatrix<Scalar>& A, const SparseMatrix<Scalar>& B, Scalar E) {
  SparseMatrix<Scalar> C = A - E * B;
  Eigen::SimplicialLDLT<SparseMatrix<Scalar>> ldlt;
  ldlt.compute(C);
  return detail::read_inertia(ldlt, ldlt.info() == Eigen::Success);
}

/// Counts below every threshold in `Es`, reusing one symbolic analysis (the
/// sparsity pattern of A - E*B does not depend on E).
template <typename Scalar>
std::vector<InertiaCount> count_below_grid(const SparseMatrix<Scalar>& A,
                                           const SparseMatrix<Scalar>& B,
                                           const std::vector<Scalar>& Es) {
  std::vector<InertiaCount> out;
  out.reserve(Es.size());
  SparseMatrix<Scalar> pattern = A + B;
  Eigen::SimplicialLDLT<SparseMatrix<Scalar>> ldlt;
  ldlt.analyzePattern(pattern);
  for (const Scalar E : Es) {
    SparseMatrix<Scalar> C = A - E * B;
    ldlt.factorize(C);
    out.push_back(detail::read_inertia(ldlt, ldlt.info() == Eigen::Success));
  }
  return out;
}

/// Tie-resolving wrapper: when the plain count comes back flagged, re-counts
/// at E -+ 10*eps*||A|| and returns the agreeing value.  If the two perturbed
/// counts disagree, E really is an eigenvalue; the strict below-count (the
/// lower one) is returned with the flag kept.
template <typename Scalar>
InertiaCount count_below_resolved(const SparseMatrix<Scalar>& A, const SparseMatrix<Scalar>& B,
                                  Scalar E) {
  InertiaCount plain = count_below(A, B, E);
  if (!plain.boundary) return plain;
  const Scalar scale = std::max(detail::one_norm(A), Scalar(1));
  const Scalar delta = Scalar(10) * std::numeric_limits<Scalar>::epsilon() * scale;
  const InertiaCount lo = count_below(A, B, E - delta);
  const InertiaCount hi = count_below(A, B, E + delta);
  if (!lo.boundary && !hi.boundary) {
    if (lo.count == hi.count) return lo;
    return {lo.count, true};
  }
  return plain;
}

struct EigOptions {
  std::uint64_t seed = 0;
  Index block = 0;         // 0: min(4, max(2, k))
  Index max_basis = 0;     // 0: min(n, max(8k + 80, 160))
  Index max_restarts = 80;
  double shift = std::numeric_limits<double>::quiet_NaN();  // NaN: automatic
};

template <typename Scalar>
struct SpectralResult {
  DenseVector<Scalar> eigenvalues;             // ascending
  DenseMatrix<Scalar> eigenvectors;            // B-orthonormal columns
  DenseVector<Scalar> residuals;               // ||A u - lambda B u|| / ||B u||
  std::map<Scalar, Index> count_thresholds;    // threshold E -> inertia count
  bool converged = false;
  Index iterations = 0;                        // operator applications
};

/// Computes the k smallest eigenpairs of A u = lambda B u.
///
/// A spectral transform T = (A - sigma*B)^{-1} B (sigma slightly below the
/// spectrum, so the shifted matrix stays definite) is applied blockwise; the
/// basis is kept B-orthonormal by two-pass Gram-Schmidt, the projected
/// operator is accumulated exactly as V^T B T V, and when the basis is full
/// the best Ritz vectors are kept and the iteration restarted.  Deterministic
/// for a fixed seed.
template <typename Scalar>
SpectralResult<Scalar> lowest_eigenpairs(const SparseMatrix<Scalar>& A,
                                         const SparseMatrix<Scalar>& B, Index k,
                                         Scalar tol = Scalar(1e-8),
                                         const EigOptions& opts = {}) {
  const Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n)
    throw std::invalid_argument("lowest_eigenpairs: A and B must be square and equally sized");
  if (k < 1) throw std::invalid_argument("lowest_eigenpairs: k must be at least 1");
  if (k >= n)
    throw std::invalid_argument("lowest_eigenpairs: k must be below the system dimension");
  if (!(tol > Scalar(0))) throw std::invalid_argument("lowest_eigenpairs: tol must be positive");

  Scalar sigma;
  if (std::isnan(opts.shift)) {
    // keep A - sigma*B positive definite even when A has a Neumann nullspace
    Scalar ratio = 0;
    const DenseVector<Scalar> da = A.diagonal(), db = B.diagonal();
    for (Index i = 0; i < n; ++i)
      if (db[i] > Scalar(0)) ratio = std::max(ratio, da[i] / db[i]);
    sigma = ratio > Scalar(0) ? Scalar(-1e-6) * ratio : Scalar(-1);
  } else {
    sigma = static_cast<Scalar>(opts.shift);
  }

  SparseMatrix<Scalar> C = A - sigma * B;
  Eigen::SimplicialLDLT<SparseMatrix<Scalar>> inv;
  inv.compute(C);
  if (inv.info() != Eigen::Success)
    throw std::runtime_error("lowest_eigenpairs: factorization of the shifted matrix failed");

  const Index b = opts.block > 0 ? std::min(opts.block, n)
                                 : std::min<Index>(n, std::max<Index>(2, std::min<Index>(4, k)));
  Index m_max = opts.max_basis > 0 ? opts.max_basis
                                   : std::max<Index>(8 * k + 80, Index(160));
  m_max = std::min(m_max, n);
  m_max = std::max<Index>(m_max, std::min(n, 2 * k + 2 * b));

  DenseMatrix<Scalar> V(n, m_max);
  DenseMatrix<Scalar> H = DenseMatrix<Scalar>::Zero(m_max, m_max);
  Index m = 0;  // basis columns
  Index p = 0;  // processed columns (operator applied, projections recorded)

  std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
  auto rand_unit = [&rng]() {
    return Scalar(2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
  };

  // Appends v after B-orthogonalization if it is independent of the basis.
  auto try_col = [&](DenseVector<Scalar> v) -> bool {
    const Scalar n0 = std::sqrt(std::max(Scalar(0), v.dot(B * v)));
    if (!(n0 > Scalar(0)) || !std::isfinite(static_cast<double>(n0))) return false;
    for (int pass = 0; pass < 2 && m > 0; ++pass)
      v -= V.leftCols(m) * (V.leftCols(m).transpose() * (B * v)).eval();
    const Scalar n1 = std::sqrt(std::max(Scalar(0), v.dot(B * v)));
    if (!(n1 > Scalar(1e-10) * n0)) return false;
    V.col(m) = v / n1;
    ++m;
    return true;
  };
  auto append_block = [&](const DenseMatrix<Scalar>& cand, Index want) -> Index {
    Index added = 0;
    for (Index c = 0; c < cand.cols() && m < m_max && added < want; ++c)
      if (try_col(cand.col(c))) ++added;
    int misses = 0;
    while (added < want && m < m_max && misses < 8) {
      DenseVector<Scalar> r(n);
      for (Index i = 0; i < n; ++i) r[i] = rand_unit();
      if (try_col(std::move(r))) ++added;
      else ++misses;
    }
    return added;
  };

  {
    DenseMatrix<Scalar> seed(n, b);
    for (Index j = 0; j < b; ++j)
      for (Index i = 0; i < n; ++i) seed(i, j) = rand_unit();
    if (append_block(seed, b) == 0)
      throw std::runtime_error("lowest_eigenpairs: could not build a start basis");
  }

  SpectralResult<Scalar> out;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es;
  DenseMatrix<Scalar> last_resid;

  for (Index cycle = 0; cycle <= opts.max_restarts; ++cycle) {
    // grow the basis to m_max, applying T block by block
    while (p < m) {
      const Index nb = std::min(b, m - p);
      DenseMatrix<Scalar> Tb = inv.solve((B * V.middleCols(p, nb)).eval());
      out.iterations += nb;
      const DenseMatrix<Scalar> G = V.leftCols(m).transpose() * (B * Tb).eval();  // m x nb
      H.block(0, p, m, nb) = G;
      H.block(p, 0, nb, m) = G.transpose();
      last_resid = Tb - V.leftCols(m) * G;
      p += nb;
      if (m < m_max) append_block(last_resid, std::min(b, m_max - m));
    }

    es.compute(Scalar(0.5) * (H.topLeftCorner(p, p) + H.topLeftCorner(p, p).transpose()));
    const DenseVector<Scalar> mu = es.eigenvalues();  // ascending; largest ~ smallest lambda
    const DenseMatrix<Scalar>& Y = es.eigenvectors();

    Index have = 0;  // usable Ritz pairs (positive transform eigenvalues)
    while (have < std::min(k, p) && mu[p - 1 - have] > Scalar(0)) ++have;

    out.eigenvalues.resize(have);
    out.eigenvectors.resize(n, have);
    out.residuals.resize(have);
    bool all_ok = have == k;
    for (Index j = 0; j < have; ++j) {
      const Index src = p - 1 - j;
      out.eigenvalues[j] = sigma + Scalar(1) / mu[src];
      out.eigenvectors.col(j) = V.leftCols(p) * Y.col(src);
      const DenseVector<Scalar> Bu = B * out.eigenvectors.col(j);
      out.residuals[j] =
          (A * out.eigenvectors.col(j) - out.eigenvalues[j] * Bu).norm() / Bu.norm();
      if (!(out.residuals[j] <= tol)) all_ok = false;
    }

    if (all_ok) {
      // polish B-orthonormality of the returned block
      const DenseMatrix<Scalar> Gram =
          out.eigenvectors.transpose() * (B * out.eigenvectors).eval();
      Eigen::LLT<DenseMatrix<Scalar>> llt(Gram);
      if (llt.info() == Eigen::Success)
        out.eigenvectors =
            llt.matrixU().template solve<Eigen::OnTheRight>(out.eigenvectors.eval());
      out.converged = true;
      // self-consistency point just above the last requested eigenvalue
      const Scalar probe =
          out.eigenvalues[k - 1] +
          std::max(Scalar(1e-10), Scalar(1e-6) * std::abs(out.eigenvalues[k - 1]));
      out.count_thresholds[probe] = count_below_resolved(A, B, probe).count;
      return out;
    }
    if (cycle == opts.max_restarts) break;

    // thick restart: keep the best Ritz vectors, reseed from the last residual
    Index keep = std::min<Index>(std::max<Index>(3 * k + 16, 2 * k + b), p > b ? p - b : p);
    keep = std::max<Index>(keep, std::min<Index>(k, p));
    keep = std::min<Index>(keep, m_max - std::min<Index>(b, m_max / 2));
    DenseMatrix<Scalar> Ykeep(p, keep);
    DenseVector<Scalar> theta(keep);
    for (Index j = 0; j < keep; ++j) {
      Ykeep.col(j) = Y.col(p - 1 - j);
      theta[j] = mu[p - 1 - j];
    }
    const DenseMatrix<Scalar> Vnew = V.leftCols(p) * Ykeep;
    V.leftCols(keep) = Vnew;
    H.setZero();
    H.topLeftCorner(keep, keep) = theta.asDiagonal();
    m = p = keep;
    if (last_resid.cols() > 0) append_block(last_resid, std::min(b, m_max - m));
    if (m == p) {
      DenseMatrix<Scalar> rnd(n, std::min(b, m_max - m));
      for (Index j = 0; j < rnd.cols(); ++j)
        for (Index i = 0; i < n; ++i) rnd(i, j) = rand_unit();
      append_block(rnd, rnd.cols());
    }
    if (m == p) break;  // basis saturated; best effort already recorded
  }
  return out;  // converged == false, achieved residuals included
}

}  // namespace pairspec
