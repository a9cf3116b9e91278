#include "doctest.h"

#include "oracles.hpp"
#include "pairspec/femassembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

using namespace pairspec;

TEST_CASE("patch tests: discrete energy and mass are exact on affine data") {
  // side-1 all-Neumann square so nothing is eliminated
  const PairParameters p{1.0 / std::numbers::sqrt2, 8.0 / std::numbers::sqrt2, 0.25};
  const auto sys = assemble<double>(make_domain(DomainKind::NeumannSquare, p));
  const Index n = sys.size();
  REQUIRE(n == sys.mesh->num_nodes());

  const double area = mesh_area(*sys.mesh);
  REQUIRE(area == doctest::Approx(1.0).epsilon(1e-12));

  const DenseVector<double> ones = DenseVector<double>::Ones(n);
  CHECK(std::abs(ones.dot(sys.stiffness * ones)) < 1e-12);
  CHECK(ones.dot(sys.mass * ones) == doctest::Approx(area).epsilon(1e-12));

  DenseVector<double> fx(n), faff(n);
  for (Index i = 0; i < n; ++i) {
    const auto& node = sys.mesh->nodes[sys.free_nodes[i]];
    fx[i] = node.x();
    faff[i] = 2.0 * node.x() - 3.0 * node.y() + 0.5;
  }
  CHECK(fx.dot(sys.stiffness * fx) == doctest::Approx(area).epsilon(1e-12));
  CHECK(faff.dot(sys.stiffness * faff) == doctest::Approx(13.0 * area).epsilon(1e-12));
  // exact L2 product of linears: integral of x^2 over the centred unit square
  CHECK(fx.dot(sys.mass * fx) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("pair assembly eliminates exactly the nodes on Dirichlet edges") {
  const auto sys = assemble<double>(make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.25}));
  const Mesh& m = *sys.mesh;
  std::vector<char> constrained(static_cast<std::size_t>(m.num_nodes()), 0);
  for (const auto& e : m.boundary_edges)
    if (e.family == BoundaryFamily::Dirichlet) constrained[e.n0] = constrained[e.n1] = 1;
  Index nc = 0;
  for (char c : constrained) nc += c;
  REQUIRE(sys.size() == m.num_nodes() - nc);
  for (Index j = 0; j < sys.size(); ++j) CHECK(!constrained[sys.free_nodes[j]]);

  const DenseMatrix<double> A(sys.stiffness), B(sys.mass);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((B - B.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<double>> esB(B, Eigen::EigenvaluesOnly);
  CHECK(esB.eigenvalues().minCoeff() > 0.0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<double>> esA(A, Eigen::EigenvaluesOnly);
  CHECK(esA.eigenvalues().minCoeff() > 0.0);  // hard wall present, so A is PD
}

TEST_CASE("sector reduction tags the exchange diagonal") {
  const auto full = assemble<double>(make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.25}));

  const auto same = reduce_to_sector(full, SectorLabel::Full);
  CHECK(same.size() == full.size());
  CHECK((same.stiffness - full.stiffness).norm() == 0.0);

  for (SectorLabel s : {SectorLabel::Symmetric, SectorLabel::Antisymmetric}) {
    CAPTURE(to_string(s));
    const auto sys = reduce_to_sector(full, s);
    CHECK(sys.sector == s);
    const Mesh& hm = *sys.mesh;
    int diag_edges = 0;
    for (const auto& e : hm.boundary_edges) {
      const bool on_diag = hm.keys[e.n0][0] == hm.keys[e.n0][1] && hm.keys[e.n1][0] == hm.keys[e.n1][1];
      if (!on_diag) continue;
      ++diag_edges;
      CHECK(e.family == (s == SectorLabel::Symmetric ? BoundaryFamily::Neumann
                                                     : BoundaryFamily::Dirichlet));
    }
    CHECK(diag_edges > 0);
    for (Index i = 0; i < hm.num_nodes(); ++i) CHECK(hm.keys[i][1] >= hm.keys[i][0]);
  }

  const auto sym = reduce_to_sector(full, SectorLabel::Symmetric);
  CHECK_THROWS_AS((void)reduce_to_sector(sym, SectorLabel::Antisymmetric), std::invalid_argument);
  const auto cross = assemble<double>(make_domain(DomainKind::CrossDiagonal, {1.0, 4.0, 0.25}));
  CHECK_THROWS_AS((void)reduce_to_sector(cross, SectorLabel::Symmetric), std::invalid_argument);
}

TEST_CASE("full spectrum equals the merged sector spectra") {
  const auto full = assemble<double>(make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.25}));
  const auto sym = reduce_to_sector(full, SectorLabel::Symmetric);
  const auto asym = reduce_to_sector(full, SectorLabel::Antisymmetric);

  const auto evF = testing::dense_eigenvalues(full.stiffness, full.mass);
  const auto evS = testing::dense_eigenvalues(sym.stiffness, sym.mass);
  const auto evA = testing::dense_eigenvalues(asym.stiffness, asym.mass);
  REQUIRE(evF.size() == evS.size() + evA.size());

  std::vector<double> merged(evS.data(), evS.data() + evS.size());
  merged.insert(merged.end(), evA.data(), evA.data() + evA.size());
  std::sort(merged.begin(), merged.end());
  for (Index i = 0; i < evF.size(); ++i)
    CHECK(std::abs(evF[i] - merged[static_cast<std::size_t>(i)]) <=
          1e-9 * std::max(1.0, std::abs(evF[i])));
}

TEST_CASE("refinement never raises a discrete eigenvalue") {
  const auto coarse = assemble<double>(make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.5}));
  const auto fine = assemble<double>(make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.25}));
  const auto evc = testing::dense_eigenvalues(coarse.stiffness, coarse.mass);
  const auto evf = testing::dense_eigenvalues(fine.stiffness, fine.mass);
  REQUIRE(evf.size() >= evc.size());
  for (Index k = 0; k < evc.size(); ++k) CHECK(evf[k] <= evc[k] * (1.0 + 1e-9));
}

TEST_CASE("assembly is deterministic") {
  const DomainSpec spec = make_domain(DomainKind::PairDomain, {1.0, 4.0, 0.25});
  const auto a = assemble<double>(spec);
  const auto b = assemble<double>(spec);
  CHECK((a.stiffness - b.stiffness).norm() == 0.0);
  CHECK((a.mass - b.mass).norm() == 0.0);
}

TEST_CASE("matrix export lists the sorted upper triangle") {
  const PairParameters p{std::numbers::sqrt2, 8.0 * std::numbers::sqrt2, 1.0};
  const auto sys = assemble<double>(make_domain(DomainKind::NeumannSquare, p));
  std::ostringstream os;
  write_matrix(os, sys.stiffness);

  std::istringstream is(os.str());
  Index row, col, prev_row = -1, prev_col = -1;
  double value;
  Eigen::Index seen = 0;
  while (is >> row >> col >> value) {
    CHECK(col >= row);
    CHECK((row > prev_row || (row == prev_row && col > prev_col)));
    CHECK(value == sys.stiffness.coeff(row, col));
    prev_row = row;
    prev_col = col;
    ++seen;
  }
  Eigen::Index upper = 0;
  for (Index c = 0; c < sys.stiffness.outerSize(); ++c)
    for (SparseMatrix<double>::InnerIterator it(sys.stiffness, c); it; ++it)
      if (it.row() <= it.col()) ++upper;
  CHECK(seen == upper);
}
