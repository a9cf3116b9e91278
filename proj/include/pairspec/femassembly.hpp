// Piecewise-linear finite element assembly of the Laplace pencil (K, M) on a
// criss-cross mesh, with essential conditions removed by node elimination and
// optional reduction onto an exchange-symmetry sector.

#pragma once

#include "pairspec/core.hpp"
#include "pairspec/geometry.hpp"

#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pairspec {

enum class SectorLabel { Full, Symmetric, Antisymmetric };

inline const char* to_string(SectorLabel s) {
  switch (s) {
    case SectorLabel::Full: return "full";
    case SectorLabel::Symmetric: return "s";
    case SectorLabel::Antisymmetric: return "a";
  }
  return "?";
}

/// Stiffness/mass pencil restricted to the unconstrained degrees of freedom.
/// free_nodes[j] is the mesh node carrying coordinate j.  For a sector system
/// the mesh is the fundamental half-domain {y >= x} of the pair domain.
template <typename Scalar>
struct AssembledSystem {
  SparseMatrix<Scalar> stiffness;
  SparseMatrix<Scalar> mass;
  std::vector<Index> free_nodes;
  SectorLabel sector = SectorLabel::Full;
  std::shared_ptr<const Mesh> mesh;

  Index size() const { return stiffness.rows(); }
};

/// Assembles the P1 pencil on `mesh`, eliminating every node that touches a
/// Dirichlet-tagged boundary edge.  Element contributions are accumulated in
/// a fixed sequential order, so repeated runs are bitwise identical.
template <typename Scalar = double>
AssembledSystem<Scalar> assemble(std::shared_ptr<const Mesh> mesh) {
  const Mesh& m = *mesh;
  const Index n = m.num_nodes();

  std::vector<char> constrained(static_cast<std::size_t>(n), 0);
  for (const auto& e : m.boundary_edges)
    if (e.family == BoundaryFamily::Dirichlet) constrained[e.n0] = constrained[e.n1] = 1;

  AssembledSystem<Scalar> sys;
  sys.mesh = std::move(mesh);
  std::vector<Index> dof(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i)
    if (!constrained[i]) {
      dof[i] = static_cast<Index>(sys.free_nodes.size());
      sys.free_nodes.push_back(i);
    }
  const Index nf = static_cast<Index>(sys.free_nodes.size());
  if (nf == 0) throw std::runtime_error("assemble: every node is constrained");

  std::vector<Triplet<Scalar>> tk, tm;
  tk.reserve(m.triangles.size() * 9);
  tm.reserve(m.triangles.size() * 9);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const Eigen::Vector2d p0 = m.nodes[tri[0]], p1 = m.nodes[tri[1]], p2 = m.nodes[tri[2]];
    const double twoA = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                        (p2.x() - p0.x()) * (p1.y() - p0.y());
    const double area = twoA / 2.0;
    // gradient coefficients: grad(lambda_i) = (b_i, c_i) / twoA
    const double b[3] = {p1.y() - p2.y(), p2.y() - p0.y(), p0.y() - p1.y()};
    const double c[3] = {p2.x() - p1.x(), p0.x() - p2.x(), p1.x() - p0.x()};
    for (int i = 0; i < 3; ++i) {
      const Index di = dof[tri[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const Index dj = dof[tri[j]];
        if (dj < 0) continue;
        const Scalar kij = static_cast<Scalar>((b[i] * b[j] + c[i] * c[j]) / (2.0 * twoA));
        const Scalar mij = static_cast<Scalar>(area / (i == j ? 6.0 : 12.0));
        tk.emplace_back(di, dj, kij);
        tm.emplace_back(di, dj, mij);
      }
    }
  }
  sys.stiffness.resize(nf, nf);
  sys.mass.resize(nf, nf);
  sys.stiffness.setFromTriplets(tk.begin(), tk.end());
  sys.mass.setFromTriplets(tm.begin(), tm.end());
  return sys;
}

template <typename Scalar = double>
AssembledSystem<Scalar> assemble(const DomainSpec& spec) {
  return assemble<Scalar>(std::make_shared<Mesh>(triangulate(spec)));
}

/// Reduces a pair-domain system to one exchange sector by re-solving on the
/// fundamental half-domain {y >= x}: the exchange diagonal x = y becomes a
/// Neumann line for the symmetric sector and a Dirichlet line for the
/// antisymmetric one.  Restriction to the half-domain halves both quadratic
/// forms of a sector function, so the half-domain pencil has exactly the
/// sector eigenvalues, and the two sector spectra merge to the full spectrum
/// (the discrete space splits orthogonally under the exchange involution).
template <typename Scalar>
AssembledSystem<Scalar> reduce_to_sector(const AssembledSystem<Scalar>& full,
                                         SectorLabel sector) {
  if (sector == SectorLabel::Full) return full;
  if (full.sector != SectorLabel::Full)
    throw std::invalid_argument("reduce_to_sector: input is already sector-reduced");
  const Mesh& m = *full.mesh;
  if (m.spec.kind != DomainKind::PairDomain)
    throw std::invalid_argument("reduce_to_sector: sectors are defined on the pair domain only");
  try {
    node_index_map(m, m, Isometry::ReflectAcrossDiagonal);
  } catch (const std::exception&) {
    throw std::invalid_argument("reduce_to_sector: mesh is not exchange-symmetric");
  }

  const auto Q = static_cast<std::int64_t>(std::llround(m.spec.params.L / m.spec.spacing));
  const BoundaryFamily family = sector == SectorLabel::Symmetric ? BoundaryFamily::Neumann
                                                                 : BoundaryFamily::Dirichlet;
  const std::vector<BoundarySegment> cut = {
      {1, -1, 0, -4 * Q, 0, family, "exchange-diagonal x=y"}};
  Mesh half = submesh(m, [](std::int64_t X3, std::int64_t Y3) { return Y3 > X3; }, cut);
  AssembledSystem<Scalar> sys = assemble<Scalar>(std::make_shared<Mesh>(std::move(half)));
  sys.sector = sector;
  return sys;
}

/// Plain-text export of the upper triangle, one "row col value" line per
/// stored entry, 0-based, sorted by (row, col).
template <typename Scalar>
void write_matrix(std::ostream& os, const SparseMatrix<Scalar>& a) {
  std::vector<std::array<Index, 2>> coords;
  std::vector<Scalar> vals;
  coords.reserve(a.nonZeros());
  vals.reserve(a.nonZeros());
  for (Index col = 0; col < a.outerSize(); ++col)
    for (typename SparseMatrix<Scalar>::InnerIterator it(a, col); it; ++it)
      if (it.row() <= it.col()) {
        coords.push_back({it.row(), it.col()});
        vals.push_back(it.value());
      }
  std::vector<std::size_t> order(coords.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    return coords[p] != coords[q] ? coords[p] < coords[q] : false;
  });
  char buf[64];
  for (std::size_t i : order) {
    std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(vals[i]));
    os << coords[i][0] << ' ' << coords[i][1] << ' ' << buf << '\n';
  }
}

}  // namespace pairspec
