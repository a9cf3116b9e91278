// Closed-form reference data: the Neumann square spectrum and the essential
// spectrum thresholds of the strip-like comparison domains.

#pragma once

#include "pairspec/core.hpp"
#include "pairspec/femassembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pairspec {

/// Eigenvalues of the Neumann Laplacian on the square of side sqrt(2)*d:
/// pi^2 (m^2 + n^2) / (2 d^2) for m,n >= 0, listed with multiplicity in
/// ascending order.
template <typename Scalar = double>
std::vector<Scalar> square_neumann_spectrum(Scalar d, Index count) {
  if (!(d > Scalar(0))) throw std::invalid_argument("square side requires d > 0");
  if (count < 1) throw std::invalid_argument("requested spectrum length must be positive");
  // m,n < count suffices: pi^2 m^2/(2d^2) already exceeds the count-th value
  std::vector<Scalar> vals;
  vals.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(count));
  const Scalar unit = pi<Scalar> * pi<Scalar> / (Scalar(2) * d * d);
  for (Index m = 0; m < count; ++m)
    for (Index n = 0; n < count; ++n) vals.push_back(unit * static_cast<Scalar>(m * m + n * n));
  std::sort(vals.begin(), vals.end());
  vals.resize(static_cast<std::size_t>(count));
  return vals;
}

/// Bottom of the spectrum of -Laplace on an infinite strip of width `width`
/// with Dirichlet walls: pi^2 / width^2.
template <typename Scalar = double>
Scalar strip_threshold(Scalar width) {
  if (!(width > Scalar(0))) throw std::invalid_argument("strip width must be positive");
  return pi<Scalar> * pi<Scalar> / (width * width);
}

/// Essential-spectrum threshold of the pair operator in a given exchange
/// sector: pi^2/(2d^2) for the full and symmetric sectors (one particle
/// escapes down a strip of diagonal width sqrt(2)*d), 2pi^2/d^2 for the
/// antisymmetric sector (width halved by the diagonal node line).
template <typename Scalar = double>
Scalar sector_threshold(SectorLabel sector, Scalar d) {
  if (!(d > Scalar(0))) throw std::invalid_argument("pair extension d must be positive");
  // escape-channel widths: sqrt(2)*d (full, symmetric), sqrt(2)*d/2 (antisymmetric)
  Scalar width = std::numbers::sqrt2_v<Scalar> * d;
  if (sector == SectorLabel::Antisymmetric) width /= Scalar(2);
  return strip_threshold(width);
}

/// Reference thresholds for one pair extension d.  The full and symmetric
/// sectors share one essential-spectrum bottom; the antisymmetric bottom sits
/// exactly four times higher; the cross arms carry no state below the strip
/// bottom, so their infimum coincides with the full-sector threshold.
template <typename Scalar = double>
struct ThresholdCatalog {
  Scalar pair_full_and_symmetric = 0;  // pi^2 / (2 d^2)
  Scalar pair_antisymmetric = 0;       // 2 pi^2 / d^2
  Scalar arms_infimum = 0;             // pi^2 / (2 d^2)

  /// Spectral bottom of a diagonal cross built from extension `de` (arms of
  /// diagonal width sqrt(2)*de): the transverse strip mode.
  static Scalar cross(Scalar de) { return strip_threshold(std::numbers::sqrt2_v<Scalar> * de); }

  static ThresholdCatalog ideal(Scalar d) {
    return {sector_threshold<Scalar>(SectorLabel::Full, d),
            sector_threshold<Scalar>(SectorLabel::Antisymmetric, d),
            sector_threshold<Scalar>(SectorLabel::Full, d)};
  }
};

/// Threshold of a strip whose half-width was snapped to the mesh lattice.
template <typename Scalar = double>
Scalar snapped_threshold(Scalar half_width) {
  return strip_threshold(Scalar(2) * half_width);
}

}  // namespace pairspec
