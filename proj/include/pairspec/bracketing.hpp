// Discrete counterparts of the two comparison arguments used to locate the
// isolated pair eigenvalue:
//
//  * embeddings of each exchange sector of the pair domain into a diagonal
//    cross, built from exact node-level reflections/translations, preserving
//    the Rayleigh quotient coefficient-by-coefficient; and
//  * the Neumann decomposition of the axis-aligned cross into its central
//    square and four arms, whose direct sum bounds the cross from below in
//    the counting-function sense.

#pragma once

#include "pairspec/core.hpp"
#include "pairspec/eigensolve.hpp"
#include "pairspec/femassembly.hpp"
#include "pairspec/geometry.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pairspec {

/// A sector of the pair problem embedded into a comparison cross.  The
/// prolongation acts on sector coefficients and produces cross coefficients;
/// it satisfies P^T K_cross P = copy_scale * K_sector (and the same for the
/// mass), so Rayleigh quotients are preserved exactly and the cross
/// eigenvalues bound the sector eigenvalues from below by min-max.
template <typename Scalar>
struct EmbeddingMap {
  SectorLabel sector = SectorLabel::Full;
  AssembledSystem<Scalar> source;  // pair system, reduced to the sector
  AssembledSystem<Scalar> target;  // comparison cross system
  SparseMatrix<Scalar> prolongation;  // target dofs x source dofs
  // per copy: source mesh node -> target mesh node, -1 outside the copy's
  // domain (the antisymmetric construction only transports {y > x})
  std::vector<std::vector<Index>> copy_node_maps;
  std::vector<Scalar> copy_signs;  // +1 throughout: plain reflected copies
  Scalar copy_scale = 1;
};

namespace detail {

template <typename Scalar>
std::vector<Index> dof_lookup(const AssembledSystem<Scalar>& sys) {
  std::vector<Index> dof(static_cast<std::size_t>(sys.mesh->num_nodes()), -1);
  for (Index j = 0; j < sys.size(); ++j) dof[sys.free_nodes[j]] = j;
  return dof;
}

}  // namespace detail

/// Builds the sector embedding at pair parameters `params`.
///
/// Full sector: four reflected copies of the pair domain (identity, across
/// each axis, across both) tile the diagonal cross of the same extension d;
/// the seams lie on natural-condition lines, so the copies glue in the energy
/// space.  Symmetric sector: the full dihedral orbit (eight copies) of the
/// fundamental half-domain {y >= x} tiles the same cross, with matching traces
/// on the diagonal seams.  Antisymmetric sector: the half-domain function
/// vanishes on y = x; it is translated by (0, -d/2), mirrored across x = 0
/// for a second copy, and extended by zero into the half-extension cross
/// 'cross(d/2)'.  The translation is node-exact only when d/h is even.
template <typename Scalar = double>
EmbeddingMap<Scalar> build_embedding(SectorLabel sector, const PairParameters& params) {
  EmbeddingMap<Scalar> map;
  map.sector = sector;

  auto pair_mesh = std::make_shared<Mesh>(triangulate(make_domain(DomainKind::PairDomain, params)));
  AssembledSystem<Scalar> full = assemble<Scalar>(pair_mesh);

  const double scale = sector == SectorLabel::Antisymmetric ? 0.5 : 1.0;
  auto cross_mesh =
      std::make_shared<Mesh>(triangulate(make_domain(DomainKind::CrossDiagonal, params, scale)));
  map.target = assemble<Scalar>(cross_mesh);
  const std::vector<Index> tdof = detail::dof_lookup(map.target);

  // copies as exact key-lattice maps k -> M k + (0, ty)
  struct KeyMap {
    int mxx, mxy, myx, myy;
    std::int64_t ty;
  };
  std::vector<KeyMap> copies;
  switch (sector) {
    case SectorLabel::Full:
      map.source = std::move(full);
      copies = {{1, 0, 0, 1, 0}, {-1, 0, 0, 1, 0}, {1, 0, 0, -1, 0}, {-1, 0, 0, -1, 0}};
      map.copy_scale = Scalar(4);
      break;
    case SectorLabel::Symmetric:
      map.source = reduce_to_sector(full, sector);
      copies = {{1, 0, 0, 1, 0},  {-1, 0, 0, 1, 0},  {1, 0, 0, -1, 0},  {-1, 0, 0, -1, 0},
                {0, 1, 1, 0, 0},  {0, -1, 1, 0, 0},  {0, 1, -1, 0, 0},  {0, -1, -1, 0, 0}};
      map.copy_scale = Scalar(8);
      break;
    case SectorLabel::Antisymmetric: {
      const auto P = static_cast<std::int64_t>(std::llround(params.d / params.h));
      if (P % 2 != 0) throw std::invalid_argument("antisymmetric embedding requires d/h even");
      map.source = reduce_to_sector(full, sector);
      copies = {{1, 0, 0, 1, -P}, {-1, 0, 0, 1, -P}};
      map.copy_scale = Scalar(2);
      break;
    }
  }

  const Mesh& src = *map.source.mesh;
  map.copy_signs.assign(copies.size(), Scalar(1));
  map.copy_node_maps.assign(copies.size(), std::vector<Index>(src.num_nodes(), -1));
  for (std::size_t c = 0; c < copies.size(); ++c) {
    const KeyMap& km = copies[c];
    for (Index i = 0; i < src.num_nodes(); ++i) {
      const auto& key = src.keys[i];
      map.copy_node_maps[c][i] = cross_mesh->find_key(
          km.mxx * key[0] + km.mxy * key[1], km.myx * key[0] + km.myy * key[1] + km.ty);
    }
  }

  std::vector<Triplet<Scalar>> tp;
  std::vector<Index> seen(cross_mesh->num_nodes(), -1);
  for (Index j = 0; j < map.source.size(); ++j) {
    const Index node = map.source.free_nodes[j];
    for (const auto& cm : map.copy_node_maps) {
      const Index img = cm[node];
      if (img < 0)
        throw std::runtime_error("embedding: isometry image of a source node is not a target node");
      if (seen[img] == j) continue;  // seam node reached by several copies; store once
      seen[img] = j;
      if (tdof[img] < 0)
        throw std::runtime_error("embedding: image of a free source node is not a free target node");
      tp.emplace_back(tdof[img], j, Scalar(1));
    }
  }
  map.prolongation.resize(map.target.size(), map.source.size());
  map.prolongation.setFromTriplets(tp.begin(), tp.end());
  return map;
}

/// Evaluates both Rayleigh quotients for a sector coefficient vector and its
/// embedded image.  They agree to rounding because numerator and denominator
/// each pick up the same factor copy_scale.
template <typename Scalar>
std::pair<Scalar, Scalar> check_rayleigh_preservation(const EmbeddingMap<Scalar>& map,
                                                      const DenseVector<Scalar>& u) {
  const Scalar src = rayleigh_quotient(map.source.stiffness, map.source.mass, u);
  const DenseVector<Scalar> v = map.prolongation * u;
  const Scalar tgt = rayleigh_quotient(map.target.stiffness, map.target.mass, v);
  return {src, tgt};
}

/// The axis-aligned cross split along the four interface segments of its
/// central square, with natural (Neumann) conditions on the cut: the central
/// square keeps no essential conditions at all, the arms keep their outer
/// Dirichlet walls.  Counting functions then satisfy, for every E,
/// N(cross, E) <= N(square, E) + N(arms, E).
template <typename Scalar>
struct BracketPair {
  std::shared_ptr<const Mesh> cross_mesh;
  AssembledSystem<Scalar> cross;
  AssembledSystem<Scalar> square;
  AssembledSystem<Scalar> arms;
};

template <typename Scalar = double>
BracketPair<Scalar> build_bracket_pair(const PairParameters& params) {
  BracketPair<Scalar> bp;
  const DomainSpec spec = make_domain(DomainKind::CrossAxis, params);
  bp.cross_mesh = std::make_shared<Mesh>(triangulate(spec));
  bp.cross = assemble<Scalar>(bp.cross_mesh);

  const auto W2 =
      2 * static_cast<std::int64_t>(std::llround(spec.snapped_half_width / spec.spacing));
  std::vector<BoundarySegment> cuts;
  for (int sgn : {+1, -1}) {
    cuts.push_back({1, 0, sgn * W2, -W2, W2, BoundaryFamily::Neumann, "bracket-cut x=+-w"});
    cuts.push_back({0, 1, sgn * W2, -W2, W2, BoundaryFamily::Neumann, "bracket-cut y=+-w"});
  }
  const auto in_square = [W2](std::int64_t X3, std::int64_t Y3) {
    return std::llabs(X3) < 3 * W2 && std::llabs(Y3) < 3 * W2;
  };
  bp.square = assemble<Scalar>(std::make_shared<Mesh>(submesh(*bp.cross_mesh, in_square, cuts)));
  bp.arms = assemble<Scalar>(std::make_shared<Mesh>(submesh(
      *bp.cross_mesh,
      [&in_square](std::int64_t X3, std::int64_t Y3) { return !in_square(X3, Y3); }, cuts)));
  return bp;
}

}  // namespace pairspec
