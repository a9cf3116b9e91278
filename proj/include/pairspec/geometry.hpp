// Lattice-exact polygonal domains and their criss-cross triangulations.
//
// Every domain handled here is bounded by lines from the four families
// x=c, y=c, x-y=c, x+y=c.  Meshes live on an integer half-step lattice:
// a node with key (kx,ky) sits at origin + key*(spacing/2).  Cell corners
// carry even keys, cell centers odd keys.  Splitting each square cell into
// four triangles through its center makes both 45-degree diagonal families
// exact unions of mesh edges, so none of the walls is approximated by a
// staircase.  All membership and tagging predicates are evaluated in exact
// integer arithmetic.

#pragma once

#include "pairspec/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pairspec {

// ---------------------------------------------------------------------------
// Parameters and domain description
// ---------------------------------------------------------------------------

/// Physical parameters shared by all domains: pair extension d, truncation
/// distance L for the unbounded arms, and target mesh spacing h.
struct PairParameters {
  double d = 1.0;
  double L = 8.0;
  double h = 1.0 / 32.0;
};

enum class DomainKind {
  PairDomain,     // {x>0, y>0, |x-y|<d}, truncated by x+y<2L
  CrossDiagonal,  // {|x-y|<d} u {|x+y|<d}, arms capped at distance 2L
  CrossAxis,      // axis-aligned cross of strip half-width ~ d/sqrt(2), arms capped at |x|,|y|=L
  NeumannSquare,  // (-w,w)^2 with w = d/sqrt(2), all-Neumann boundary
  ArmsDomain,     // the four rectangles of CrossAxis minus its central square
};

enum class BoundaryFamily { Dirichlet, Neumann };

inline const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::PairDomain: return "pair";
    case DomainKind::CrossDiagonal: return "cross-diag";
    case DomainKind::CrossAxis: return "cross-axis";
    case DomainKind::NeumannSquare: return "square";
    case DomainKind::ArmsDomain: return "arms";
  }
  return "?";
}

/// Half-plane a*kx + b*ky < c in lattice key units.
struct HalfPlane {
  int a = 0;
  int b = 0;
  std::int64_t c = 0;
};

/// Convex intersection of half-planes; a domain is a union of these.
struct ConvexPiece {
  std::vector<HalfPlane> constraints;
};

/// One straight wall of the domain: the line a*x + b*y = c in key units,
/// restricted to t in [lo,hi] where t = b*kx - a*ky is the tangential
/// lattice coordinate along the line.
struct BoundarySegment {
  int a = 0;
  int b = 0;
  std::int64_t c = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  BoundaryFamily family = BoundaryFamily::Dirichlet;
  std::string origin;  // which wall this discretises, e.g. "hard-wall x-y=+d"
};

/// A fully resolved, mesh-representable domain: physical parameters plus the
/// lattice frame and the exact half-plane/segment description of the shape.
struct DomainSpec {
  DomainKind kind = DomainKind::PairDomain;
  PairParameters params;
  double scale = 1.0;  // in {1, 1/2}, applied to d (comparison crosses)

  // lattice frame: node key k sits at origin + k*(spacing/2)
  double spacing = 0.0;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  std::int64_t cell_lo_x = 0, cell_hi_x = 0;  // candidate cell index ranges
  std::int64_t cell_lo_y = 0, cell_hi_y = 0;

  std::vector<ConvexPiece> interior;
  std::vector<BoundarySegment> boundary;

  double snapped_half_width = 0.0;  // transverse half-width actually meshed
  bool coarse_mesh = false;         // set when d/h == 1
};

namespace detail {

inline std::int64_t checked_ratio(double num, double den, const char* what) {
  const double r = num / den;
  const auto n = static_cast<std::int64_t>(std::llround(r));
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, std::abs(r)))
    throw std::invalid_argument(std::string(what) + " must be an integer multiple of h (got ratio " +
                                std::to_string(r) + ")");
  return n;
}

inline std::int64_t tangent_coord(const BoundarySegment& s, std::int64_t kx, std::int64_t ky) {
  return static_cast<std::int64_t>(s.b) * kx - static_cast<std::int64_t>(s.a) * ky;
}

inline bool on_segment(const BoundarySegment& s, std::int64_t kx, std::int64_t ky) {
  if (static_cast<std::int64_t>(s.a) * kx + static_cast<std::int64_t>(s.b) * ky != s.c) return false;
  const std::int64_t t = tangent_coord(s, kx, ky);
  return t >= s.lo && t <= s.hi;
}

}  // namespace detail

/// Validates the common parameter invariants: d > 0, h > 0, L >= 4d.
inline void validate(const PairParameters& p) {
  if (!(p.d > 0.0)) throw std::invalid_argument("pair extension d must be positive");
  if (!(p.h > 0.0)) throw std::invalid_argument("mesh spacing h must be positive");
  if (!(p.L >= 4.0 * p.d)) throw std::invalid_argument("truncation distance L must satisfy L >= 4d");
}

/// Builds the lattice description of one of the five domains.
///
/// For the lattice-frame domains (pair, crosses, arms) this requires d/h and
/// L/h to be integers so that every wall is a union of mesh edges; the
/// comparison cross at scale 1/2 additionally needs d/h even.  The standalone
/// Neumann square is meshed in its own frame with N = round(side/h) cells per
/// side, so h is honoured as a target spacing and the ideal side sqrt(2)*d is
/// kept exact.  The axis-aligned cross has the irrational strip half-width
/// d/sqrt(2) snapped to the nearest lattice line; the snapped value is
/// recorded in the spec and must be used when computing reference thresholds.
inline DomainSpec make_domain(DomainKind kind, const PairParameters& params, double scale = 1.0) {
  validate(params);
  if (scale != 1.0 && scale != 0.5)
    throw std::invalid_argument("scale_variant must be 1 or 1/2");
  if (scale == 0.5 && kind != DomainKind::CrossDiagonal && kind != DomainKind::CrossAxis)
    throw std::invalid_argument("scale_variant 1/2 is only meaningful for the comparison crosses");

  DomainSpec spec;
  spec.kind = kind;
  spec.params = params;
  spec.scale = scale;

  const double w_ideal = params.d / std::numbers::sqrt2;

  if (kind == DomainKind::NeumannSquare) {
    // own frame: N cells across the ideal side sqrt(2)*d
    const double side = 2.0 * w_ideal;
    const auto n = std::max<std::int64_t>(1, std::llround(side / params.h));
    spec.spacing = side / static_cast<double>(n);
    spec.origin = Eigen::Vector2d(-w_ideal, -w_ideal);
    spec.cell_lo_x = spec.cell_lo_y = 0;
    spec.cell_hi_x = spec.cell_hi_y = n;
    const std::int64_t K = 2 * n;
    spec.interior.push_back({{{-1, 0, 0}, {1, 0, K}, {0, -1, 0}, {0, 1, K}}});
    spec.boundary = {
        {1, 0, 0, -K, 0, BoundaryFamily::Neumann, "square-side x=-w"},
        {1, 0, K, -K, 0, BoundaryFamily::Neumann, "square-side x=+w"},
        {0, 1, 0, 0, K, BoundaryFamily::Neumann, "square-side y=-w"},
        {0, 1, K, 0, K, BoundaryFamily::Neumann, "square-side y=+w"},
    };
    spec.snapped_half_width = w_ideal;
    return spec;
  }

  // lattice-frame domains share the global grid of spacing h
  const std::int64_t P = detail::checked_ratio(params.d, params.h, "pair extension d");
  const std::int64_t Q = detail::checked_ratio(params.L, params.h, "truncation distance L");
  spec.spacing = params.h;
  spec.origin = Eigen::Vector2d::Zero();
  spec.coarse_mesh = (P == 1);

  const std::int64_t P2 = 2 * P;   // d in key units
  const std::int64_t Q2 = 2 * Q;   // L in key units

  switch (kind) {
    case DomainKind::PairDomain: {
      spec.cell_lo_x = spec.cell_lo_y = 0;
      spec.cell_hi_x = spec.cell_hi_y = Q2;
      spec.interior.push_back({{{-1, 0, 0}, {0, -1, 0}, {1, -1, P2}, {-1, 1, P2}, {1, 1, 2 * Q2}}});
      spec.boundary = {
          {1, -1, P2, -2 * Q2, -P2, BoundaryFamily::Dirichlet, "hard-wall x-y=+d"},
          {1, -1, -P2, -2 * Q2, -P2, BoundaryFamily::Dirichlet, "hard-wall x-y=-d"},
          {1, 1, 2 * Q2, -P2, P2, BoundaryFamily::Dirichlet, "truncation-cap x+y=2L"},
          {1, 0, 0, -P2, 0, BoundaryFamily::Neumann, "half-line-wall x=0"},
          {0, 1, 0, 0, P2, BoundaryFamily::Neumann, "half-line-wall y=0"},
      };
      spec.snapped_half_width = w_ideal;
      break;
    }
    case DomainKind::CrossDiagonal: {
      std::int64_t Pe2 = P2;
      if (scale == 0.5) {
        if (P % 2 != 0)
          throw std::invalid_argument("scale_variant 1/2 requires d/h to be even");
        Pe2 = P;
      }
      spec.cell_lo_x = spec.cell_lo_y = -Q2;
      spec.cell_hi_x = spec.cell_hi_y = Q2;
      spec.interior.push_back(
          {{{1, -1, Pe2}, {-1, 1, Pe2}, {1, 1, 2 * Q2}, {-1, -1, 2 * Q2}}});
      spec.interior.push_back(
          {{{1, 1, Pe2}, {-1, -1, Pe2}, {1, -1, 2 * Q2}, {-1, 1, 2 * Q2}}});
      const std::int64_t C = 2 * Q2;
      for (int sgn : {+1, -1}) {
        // walls of the strip |x-y| < d_e, outside the other strip
        spec.boundary.push_back({1, -1, sgn * Pe2, -C, -Pe2, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "wall x-y=+de (arm x+y>0)" : "wall x-y=-de (arm x+y>0)"});
        spec.boundary.push_back({1, -1, sgn * Pe2, Pe2, C, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "wall x-y=+de (arm x+y<0)" : "wall x-y=-de (arm x+y<0)"});
        // walls of the strip |x+y| < d_e
        spec.boundary.push_back({1, 1, sgn * Pe2, -C, -Pe2, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "wall x+y=+de (arm x-y<0)" : "wall x+y=-de (arm x-y<0)"});
        spec.boundary.push_back({1, 1, sgn * Pe2, Pe2, C, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "wall x+y=+de (arm x-y>0)" : "wall x+y=-de (arm x-y>0)"});
        // arm caps at distance 2L
        spec.boundary.push_back({1, 1, sgn * C, -Pe2, Pe2, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "truncation-cap x+y=+2L" : "truncation-cap x+y=-2L"});
        spec.boundary.push_back({1, -1, sgn * C, -Pe2, Pe2, BoundaryFamily::Dirichlet,
                                 sgn > 0 ? "truncation-cap x-y=+2L" : "truncation-cap x-y=-2L"});
      }
      spec.snapped_half_width = 0.5 * scale * params.d * std::numbers::sqrt2;
      break;
    }
    case DomainKind::CrossAxis:
    case DomainKind::ArmsDomain: {
      double Pw = static_cast<double>(P) * scale;
      const auto W = std::max<std::int64_t>(1, std::llround(Pw / std::numbers::sqrt2));
      const std::int64_t W2 = 2 * W;
      spec.snapped_half_width = static_cast<double>(W) * params.h;
      spec.cell_lo_x = spec.cell_lo_y = -Q;
      spec.cell_hi_x = spec.cell_hi_y = Q;
      if (kind == DomainKind::CrossAxis) {
        spec.interior.push_back({{{1, 0, W2}, {-1, 0, W2}, {0, 1, Q2}, {0, -1, Q2}}});
        spec.interior.push_back({{{0, 1, W2}, {0, -1, W2}, {1, 0, Q2}, {-1, 0, Q2}}});
        for (int sgn : {+1, -1}) {
          spec.boundary.push_back({1, 0, sgn * W2, -Q2, -W2, BoundaryFamily::Dirichlet, "strip-wall x=+-w (y>0)"});
          spec.boundary.push_back({1, 0, sgn * W2, W2, Q2, BoundaryFamily::Dirichlet, "strip-wall x=+-w (y<0)"});
          spec.boundary.push_back({0, 1, sgn * W2, -Q2, -W2, BoundaryFamily::Dirichlet, "strip-wall y=+-w (x<0)"});
          spec.boundary.push_back({0, 1, sgn * W2, W2, Q2, BoundaryFamily::Dirichlet, "strip-wall y=+-w (x>0)"});
          spec.boundary.push_back({1, 0, sgn * Q2, -W2, W2, BoundaryFamily::Dirichlet, "truncation-cap x=+-L"});
          spec.boundary.push_back({0, 1, sgn * Q2, -W2, W2, BoundaryFamily::Dirichlet, "truncation-cap y=+-L"});
        }
      } else {
        spec.interior.push_back({{{-1, 0, -W2}, {1, 0, Q2}, {0, 1, W2}, {0, -1, W2}}});
        spec.interior.push_back({{{1, 0, -W2}, {-1, 0, Q2}, {0, 1, W2}, {0, -1, W2}}});
        spec.interior.push_back({{{0, -1, -W2}, {0, 1, Q2}, {1, 0, W2}, {-1, 0, W2}}});
        spec.interior.push_back({{{0, 1, -W2}, {0, -1, Q2}, {1, 0, W2}, {-1, 0, W2}}});
        for (int sgn : {+1, -1}) {
          // interfaces shared with the central square carry the natural condition
          spec.boundary.push_back({1, 0, sgn * W2, -W2, W2, BoundaryFamily::Neumann, "arm-interface x=+-w"});
          spec.boundary.push_back({0, 1, sgn * W2, -W2, W2, BoundaryFamily::Neumann, "arm-interface y=+-w"});
          // outer strip walls and caps are inherited from the cross
          spec.boundary.push_back({1, 0, sgn * W2, -Q2, -W2, BoundaryFamily::Dirichlet, "strip-wall x=+-w (y>0)"});
          spec.boundary.push_back({1, 0, sgn * W2, W2, Q2, BoundaryFamily::Dirichlet, "strip-wall x=+-w (y<0)"});
          spec.boundary.push_back({0, 1, sgn * W2, -Q2, -W2, BoundaryFamily::Dirichlet, "strip-wall y=+-w (x<0)"});
          spec.boundary.push_back({0, 1, sgn * W2, W2, Q2, BoundaryFamily::Dirichlet, "strip-wall y=+-w (x>0)"});
          spec.boundary.push_back({1, 0, sgn * Q2, -W2, W2, BoundaryFamily::Dirichlet, "truncation-cap x=+-L"});
          spec.boundary.push_back({0, 1, sgn * Q2, -W2, W2, BoundaryFamily::Dirichlet, "truncation-cap y=+-L"});
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("unhandled domain kind");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

struct BoundaryEdge {
  Index n0 = 0;
  Index n1 = 0;
  BoundaryFamily family = BoundaryFamily::Dirichlet;
  std::string origin;
};

/// Conforming criss-cross triangulation.  Node ordering is lexicographic by
/// (y,x); node keys are kept alongside coordinates so isometries and submesh
/// extraction stay integer-exact.
struct Mesh {
  DomainSpec spec;
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<std::int64_t, 2>> keys;
  std::vector<std::array<Index, 3>> triangles;
  std::vector<double> element_area;
  std::vector<BoundaryEdge> boundary_edges;

  Index num_nodes() const { return static_cast<Index>(nodes.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles.size()); }

  Index find_key(std::int64_t kx, std::int64_t ky) const {
    auto it = key_index_.find(pack(kx, ky));
    return it == key_index_.end() ? Index(-1) : it->second;
  }

  static std::uint64_t pack(std::int64_t kx, std::int64_t ky) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(kx)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(ky));
  }

  void rebuild_key_index() {
    key_index_.clear();
    key_index_.reserve(keys.size() * 2);
    for (Index i = 0; i < num_nodes(); ++i) key_index_.emplace(pack(keys[i][0], keys[i][1]), i);
  }

 private:
  std::unordered_map<std::uint64_t, Index> key_index_;
};

namespace detail {

inline bool piece_contains_tripled(const ConvexPiece& piece, std::int64_t X3, std::int64_t Y3) {
  for (const auto& hp : piece.constraints)
    if (hp.a * X3 + hp.b * Y3 >= 3 * hp.c) return false;
  return true;
}

inline bool domain_contains_tripled(const DomainSpec& spec, std::int64_t X3, std::int64_t Y3) {
  for (const auto& piece : spec.interior)
    if (piece_contains_tripled(piece, X3, Y3)) return true;
  return false;
}

struct EdgeKey {
  Index a, b;
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};
struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(e.a) << 32) ^
                                      static_cast<std::uint64_t>(e.b));
  }
};

/// Assembles a Mesh from a list of kept triangles given by node keys.
/// Exterior edges are tagged against `segments` (first match wins); an
/// exterior edge matching no segment is a hard error.
inline Mesh finalize_mesh(DomainSpec spec,
                          const std::vector<std::array<std::array<std::int64_t, 2>, 3>>& tri_keys,
                          const std::vector<BoundarySegment>& segments) {
  Mesh mesh;

  std::vector<std::array<std::int64_t, 2>> all_keys;
  all_keys.reserve(tri_keys.size() * 3);
  for (const auto& t : tri_keys)
    for (const auto& k : t) all_keys.push_back(k);
  std::sort(all_keys.begin(), all_keys.end(),
            [](const auto& p, const auto& q) {
              return p[1] != q[1] ? p[1] < q[1] : p[0] < q[0];
            });
  all_keys.erase(std::unique(all_keys.begin(), all_keys.end()), all_keys.end());

  mesh.keys = std::move(all_keys);
  mesh.nodes.reserve(mesh.keys.size());
  const double u = spec.spacing / 2.0;
  for (const auto& k : mesh.keys)
    mesh.nodes.push_back(spec.origin + Eigen::Vector2d(static_cast<double>(k[0]) * u,
                                                       static_cast<double>(k[1]) * u));
  mesh.spec = std::move(spec);
  mesh.rebuild_key_index();

  const double area = mesh.spec.spacing * mesh.spec.spacing / 4.0;
  mesh.triangles.reserve(tri_keys.size());
  mesh.element_area.assign(tri_keys.size(), area);
  for (const auto& t : tri_keys) {
    std::array<Index, 3> tri{};
    for (int v = 0; v < 3; ++v) tri[v] = mesh.find_key(t[v][0], t[v][1]);
    mesh.triangles.push_back(tri);
  }

  std::unordered_map<EdgeKey, int, EdgeKeyHash> edge_count;
  edge_count.reserve(mesh.triangles.size() * 3);
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      Index a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }

  for (const auto& [edge, count] : edge_count) {
    if (count > 2) throw std::runtime_error("non-conforming mesh: edge shared by >2 triangles");
    if (count == 2) continue;
    const auto& ka = mesh.keys[edge.a];
    const auto& kb = mesh.keys[edge.b];
    const BoundarySegment* match = nullptr;
    for (const auto& s : segments)
      if (on_segment(s, ka[0], ka[1]) && on_segment(s, kb[0], kb[1])) {
        match = &s;
        break;
      }
    if (!match) {
      std::ostringstream msg;
      msg << "exterior edge not on any declared boundary line: keys (" << ka[0] << "," << ka[1]
          << ")-(" << kb[0] << "," << kb[1] << ")";
      throw std::runtime_error(msg.str());
    }
    mesh.boundary_edges.push_back({edge.a, edge.b, match->family, match->origin});
  }
  std::sort(mesh.boundary_edges.begin(), mesh.boundary_edges.end(),
            [](const BoundaryEdge& p, const BoundaryEdge& q) {
              return p.n0 != q.n0 ? p.n0 < q.n0 : p.n1 < q.n1;
            });
  return mesh;
}

}  // namespace detail

/// Triangulates the domain with the criss-cross pattern: every h-by-h cell
/// intersecting the domain is split into four triangles through its center,
/// and a triangle is kept iff its interior lies inside the domain.  Because
/// all walls are lattice lines, each triangle is entirely in or out and the
/// decision is exact.
inline Mesh triangulate(const DomainSpec& spec) {
  std::vector<std::array<std::array<std::int64_t, 2>, 3>> kept;
  for (std::int64_t i = spec.cell_lo_x; i < spec.cell_hi_x; ++i) {
    for (std::int64_t j = spec.cell_lo_y; j < spec.cell_hi_y; ++j) {
      const std::int64_t x0 = 2 * i, y0 = 2 * j;
      const std::array<std::int64_t, 2> c00{x0, y0}, c10{x0 + 2, y0}, c11{x0 + 2, y0 + 2},
          c01{x0, y0 + 2}, ctr{x0 + 1, y0 + 1};
      const std::array<std::array<std::array<std::int64_t, 2>, 3>, 4> cand{{
          {c00, c10, ctr},  // south
          {c10, c11, ctr},  // east
          {c11, c01, ctr},  // north
          {c01, c00, ctr},  // west
      }};
      for (const auto& tri : cand) {
        const std::int64_t X3 = tri[0][0] + tri[1][0] + tri[2][0];
        const std::int64_t Y3 = tri[0][1] + tri[1][1] + tri[2][1];
        if (detail::domain_contains_tripled(spec, X3, Y3)) kept.push_back(tri);
      }
    }
  }
  if (kept.empty()) throw std::invalid_argument("domain is empty at this mesh spacing");
  return detail::finalize_mesh(spec, kept, spec.boundary);
}

/// Extracts the submesh of triangles whose tripled centroid satisfies `keep`.
/// Exterior edges inherited from the parent keep their tags; newly exposed
/// edges must lie on one of `cut_segments`.
inline Mesh submesh(const Mesh& parent,
                    const std::function<bool(std::int64_t, std::int64_t)>& keep,
                    const std::vector<BoundarySegment>& cut_segments) {
  std::vector<std::array<std::array<std::int64_t, 2>, 3>> kept;
  for (const auto& t : parent.triangles) {
    std::int64_t X3 = 0, Y3 = 0;
    std::array<std::array<std::int64_t, 2>, 3> tk{};
    for (int v = 0; v < 3; ++v) {
      tk[v] = parent.keys[t[v]];
      X3 += tk[v][0];
      Y3 += tk[v][1];
    }
    if (keep(X3, Y3)) kept.push_back(tk);
  }
  if (kept.empty()) throw std::invalid_argument("submesh predicate selects no triangles");

  std::vector<BoundarySegment> segments = cut_segments;
  for (const auto& s : parent.spec.boundary) segments.push_back(s);
  return detail::finalize_mesh(parent.spec, kept, segments);
}

// ---------------------------------------------------------------------------
// Isometries between meshes
// ---------------------------------------------------------------------------

enum class Isometry {
  Identity,               // (x,y) -> (x,y), possibly between different meshes
  ReflectAcrossXAxis,     // (x,y) -> (x,-y)
  ReflectAcrossYAxis,     // (x,y) -> (-x,y)
  ReflectAcrossBothAxes,  // (x,y) -> (-x,-y)
  ReflectAcrossDiagonal,  // (x,y) -> (y,x)
  TranslateDownHalfPair,  // (x,y) -> (x, y - d/2)
};

/// Maps every node of `source` to the index of its image node in `target`
/// under the isometry.  Both meshes must share the lattice unit; the map is
/// computed on integer keys, so matching is exact.  Throws (naming the first
/// unmatched node) if the isometry does not carry the source node set into
/// the target node set.
inline std::vector<Index> node_index_map(const Mesh& source, const Mesh& target, Isometry iso) {
  const double u_s = source.spec.spacing / 2.0;
  const double u_t = target.spec.spacing / 2.0;
  if (u_s != u_t)
    throw std::invalid_argument("node_index_map: meshes do not share a lattice unit");

  // linear part in key units
  int mxx = 1, mxy = 0, myx = 0, myy = 1;
  Eigen::Vector2d image_origin = source.spec.origin;
  switch (iso) {
    case Isometry::Identity:
      break;
    case Isometry::ReflectAcrossXAxis:
      myy = -1;
      image_origin.y() = -image_origin.y();
      break;
    case Isometry::ReflectAcrossYAxis:
      mxx = -1;
      image_origin.x() = -image_origin.x();
      break;
    case Isometry::ReflectAcrossBothAxes:
      mxx = myy = -1;
      image_origin = -image_origin;
      break;
    case Isometry::ReflectAcrossDiagonal:
      mxx = myy = 0;
      mxy = myx = 1;
      std::swap(image_origin.x(), image_origin.y());
      break;
    case Isometry::TranslateDownHalfPair: {
      const std::int64_t P = detail::checked_ratio(source.spec.params.d, source.spec.spacing,
                                                   "pair extension d");
      if (P % 2 != 0)
        throw std::invalid_argument("translate by d/2 requires d/h even (node-exact translation)");
      image_origin.y() -= source.spec.params.d / 2.0;
      break;
    }
  }

  // key offset between the transformed source frame and the target frame
  const Eigen::Vector2d shift = (image_origin - target.spec.origin) / u_t;
  const auto tx = static_cast<std::int64_t>(std::llround(shift.x()));
  const auto ty = static_cast<std::int64_t>(std::llround(shift.y()));
  if (std::abs(shift.x() - static_cast<double>(tx)) > 1e-9 ||
      std::abs(shift.y() - static_cast<double>(ty)) > 1e-9)
    throw std::invalid_argument("node_index_map: isometry does not map lattice onto lattice");

  std::vector<Index> map(source.nodes.size());
  for (Index i = 0; i < source.num_nodes(); ++i) {
    const auto& k = source.keys[i];
    const std::int64_t ix = mxx * k[0] + mxy * k[1] + tx;
    const std::int64_t iy = myx * k[0] + myy * k[1] + ty;
    const Index j = target.find_key(ix, iy);
    if (j < 0) {
      std::ostringstream msg;
      msg << "isometry image of node " << i << " at (" << source.nodes[i].x() << ","
          << source.nodes[i].y() << ") is not a target node";
      throw std::invalid_argument(msg.str());
    }
    map[i] = j;
  }
  return map;
}

// ---------------------------------------------------------------------------
// Derived quantities and export
// ---------------------------------------------------------------------------

inline double mesh_area(const Mesh& mesh) {
  double a = 0.0;
  for (double t : mesh.element_area) a += t;
  return a;
}

/// Analytic area of the truncated polygonal domain actually meshed.
inline double analytic_area(const DomainSpec& spec) {
  const double d_e = spec.scale * spec.params.d;
  const double L = spec.params.L;
  const double w = spec.snapped_half_width;
  switch (spec.kind) {
    case DomainKind::PairDomain:
      return 2.0 * d_e * L - d_e * d_e / 2.0;
    case DomainKind::CrossDiagonal:
      return 8.0 * d_e * L - 2.0 * d_e * d_e;
    case DomainKind::CrossAxis:
      return 8.0 * w * L - 4.0 * w * w;
    case DomainKind::NeumannSquare:
      return 4.0 * w * w;
    case DomainKind::ArmsDomain:
      return 8.0 * w * (L - w);
  }
  return 0.0;
}

/// Plain-text mesh dump: "N T B", then N node lines "x y", T triangle lines
/// "i j k", and B boundary lines "i j TAG" with TAG in {D,N}.
inline void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << mesh.num_nodes() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges.size()
     << '\n';
  char buf[64];
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", p.x(), p.y());
    os << buf << '\n';
  }
  for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges)
    os << e.n0 << ' ' << e.n1 << ' '
       << (e.family == BoundaryFamily::Dirichlet ? 'D' : 'N') << '\n';
}

}  // namespace pairspec
