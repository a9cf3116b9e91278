#include "doctest.h"

#include "pairspec/report.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace pairspec;

TEST_CASE("parsers accept the documented vocabulary and nothing else") {
  CHECK(parse_domain("pair") == DomainKind::PairDomain);
  CHECK(parse_domain("cross-diag") == DomainKind::CrossDiagonal);
  CHECK(parse_domain("cross-axis") == DomainKind::CrossAxis);
  CHECK(parse_domain("square") == DomainKind::NeumannSquare);
  CHECK(parse_domain("arms") == DomainKind::ArmsDomain);
  CHECK_THROWS_AS((void)parse_domain("disk"), std::invalid_argument);
  CHECK(parse_sector("full") == SectorLabel::Full);
  CHECK(parse_sector("s") == SectorLabel::Symmetric);
  CHECK(parse_sector("a") == SectorLabel::Antisymmetric);
  CHECK_THROWS_AS((void)parse_sector("sym"), std::invalid_argument);
}

TEST_CASE("extrapolation recovers limit and order from model data") {
  const std::vector<double> hs = {0.4, 0.2, 0.1};

  SUBCASE("second order") {
    std::vector<double> v;
    for (double h : hs) v.push_back(5.0 + 3.0 * h * h);
    const auto ex = extrapolate(hs, v);
    CHECK(ex.flag == ExtrapFlag::Ok);
    CHECK(ex.limit == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(ex.order == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("first order") {
    std::vector<double> v;
    for (double h : hs) v.push_back(2.0 + 0.7 * h);
    const auto ex = extrapolate(hs, v);
    CHECK(ex.flag == ExtrapFlag::Ok);
    CHECK(ex.limit == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ex.order == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("fractional order") {
    std::vector<double> v;
    for (double h : hs) v.push_back(-1.0 + 2.0 * std::pow(h, 0.5));
    const auto ex = extrapolate(hs, v);
    CHECK(ex.flag == ExtrapFlag::Ok);
    CHECK(ex.limit == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(ex.order == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("longer history: only the three finest levels matter") {
    const std::vector<double> hs4 = {0.9, 0.4, 0.2, 0.1};
    std::vector<double> v = {123.0};  // outlier on the discarded level
    for (double h : {0.4, 0.2, 0.1}) v.push_back(5.0 + 3.0 * h * h);
    const auto ex = extrapolate(hs4, v);
    CHECK(ex.flag == ExtrapFlag::Ok);
    CHECK(ex.limit == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(ex.order == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("extrapolation flags degenerate tails instead of guessing") {
  const std::vector<double> hs = {0.4, 0.2, 0.1};

  const auto ex_const = extrapolate(hs, {5.0, 5.0, 5.0});
  CHECK(ex_const.flag == ExtrapFlag::Indeterminate);
  CHECK(ex_const.limit == 5.0);
  CHECK(ex_const.order == 0.0);

  const auto ex_bump = extrapolate(hs, {1.0, 0.5, 0.75});
  CHECK(ex_bump.flag == ExtrapFlag::NonMonotone);
  CHECK(ex_bump.limit == 0.75);

  // difference ratio below any representable order (p would be ~0)
  const auto ex_flat = extrapolate(hs, {3.0, 2.0, 1.0});
  CHECK(ex_flat.flag == ExtrapFlag::Indeterminate);
  // difference ratio beyond the order-12 bracket
  const auto ex_steep = extrapolate(hs, {5001.0, 1.0, 0.999});
  CHECK(ex_steep.flag == ExtrapFlag::Indeterminate);
}

TEST_CASE("extrapolation validates its inputs") {
  CHECK_THROWS_AS((void)extrapolate({0.4, 0.2, 0.1}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)extrapolate({0.4, 0.2}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)extrapolate({0.4, 0.4, 0.1}, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)extrapolate({0.4, 0.2, -0.1}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("solve report: canonical key order and a passing sector run") {
  SolveConfig cfg;
  cfg.domain = DomainKind::PairDomain;
  cfg.sector = SectorLabel::Symmetric;
  cfg.d = 1.0;
  cfg.L = 4.0;
  cfg.h = 1.0 / 8.0;
  cfg.k = 3;
  const SolveOutcome out = run_solve(cfg);

  REQUIRE(out.solver_ok);
  CHECK(out.pass);

  const std::vector<std::string> expected_keys = {
      "domain",      "sector",    "d",         "L",    "h", "snapped_width",
      "eigenvalues", "residuals", "threshold", "isolated_count", "pass"};
  std::vector<std::string> keys;
  for (const auto& item : out.report.items()) keys.push_back(item.key());
  CHECK(keys == expected_keys);

  CHECK(out.report["domain"] == "pair");
  CHECK(out.report["sector"] == "s");
  CHECK(out.report["snapped_width"].get<double>() ==
        doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(out.report["threshold"].get<double>() ==
        doctest::Approx(4.934802200544679).epsilon(1e-12));
  CHECK(out.report["isolated_count"].get<long long>() == 1);
  CHECK(out.report["pass"].get<bool>() == true);
  REQUIRE(out.report["eigenvalues"].size() == 3);
  REQUIRE(out.report["residuals"].size() == 3);
  // one bound state below the threshold, the rest above
  CHECK(out.report["eigenvalues"][0].get<double>() < out.report["threshold"].get<double>());
  CHECK(out.report["eigenvalues"][1].get<double>() >
        0.98 * out.report["threshold"].get<double>());
  for (const auto& r : out.report["residuals"]) CHECK(r.get<double>() <= 1e-6);
}

TEST_CASE("solve report: the arms pass by having no bound state") {
  SolveConfig cfg;
  cfg.domain = DomainKind::ArmsDomain;
  cfg.d = 1.0;
  cfg.L = 4.0;
  cfg.h = 1.0 / 4.0;
  cfg.k = 2;
  const SolveOutcome out = run_solve(cfg);
  REQUIRE(out.solver_ok);
  CHECK(out.pass);
  CHECK(out.report["isolated_count"].get<long long>() == 0);
  CHECK(out.report["snapped_width"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  // everything lives above the snapped strip threshold
  const double thr = out.report["threshold"].get<double>();
  CHECK(out.report["eigenvalues"][0].get<double>() > thr);
}

TEST_CASE("solve rejects sector requests off the pair domain") {
  SolveConfig cfg;
  cfg.domain = DomainKind::CrossAxis;
  cfg.sector = SectorLabel::Symmetric;
  cfg.L = 4.0;
  cfg.h = 0.25;
  CHECK_THROWS_AS((void)run_solve(cfg), std::invalid_argument);
}

TEST_CASE("solve csv carries one row per eigenvalue") {
  SolveConfig cfg;
  cfg.domain = DomainKind::NeumannSquare;
  cfg.d = 1.0;
  cfg.L = 4.0;
  cfg.h = 1.0 / 8.0;
  cfg.k = 3;
  const SolveOutcome out = run_solve(cfg);
  const std::string csv = solve_csv(out.report);
  REQUIRE(csv.rfind("index,eigenvalue,residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("\n0,") != std::string::npos);
  CHECK(csv.find("\n2,") != std::string::npos);
}

TEST_CASE("sweep plans are validated field by field") {
  nlohmann::json good = {{"domain", "pair"}, {"sector", "s"},   {"d", 1.0},
                         {"h", {0.5, 0.25}}, {"L", {4.0, 6.0}}, {"k", 2}};
  const SweepPlan plan = parse_sweep_plan(good);
  CHECK(plan.domain == DomainKind::PairDomain);
  CHECK(plan.sector == SectorLabel::Symmetric);
  CHECK(plan.d == 1.0);
  CHECK(plan.hs == std::vector<double>{0.5, 0.25});
  CHECK(plan.Ls == std::vector<double>{4.0, 6.0});
  CHECK(plan.k == 2);
  CHECK(plan.tol == 1e-8);  // defaults
  CHECK(plan.seed == 0);

  nlohmann::json no_sector = good;
  no_sector.erase("sector");
  CHECK(parse_sweep_plan(no_sector).sector == SectorLabel::Full);

  const auto rejects = [&](const char* key, nlohmann::json value) {
    nlohmann::json bad = good;
    bad[key] = std::move(value);
    CHECK_THROWS_AS((void)parse_sweep_plan(bad), std::invalid_argument);
  };
  rejects("domain", "disk");
  rejects("d", "one");            // wrong type
  rejects("d", -1.0);
  rejects("h", {0.5, 0.3});       // not nested by halving
  rejects("h", nlohmann::json::array());
  rejects("L", {4.0, 4.0});       // not strictly increasing
  rejects("k", 1);
  rejects("tol", 0.0);

  nlohmann::json missing = good;
  missing.erase("domain");
  CHECK_THROWS_AS((void)parse_sweep_plan(missing), std::invalid_argument);
}

TEST_CASE("sweep run reports monotone ground-state refinement") {
  SweepPlan plan;
  plan.domain = DomainKind::PairDomain;
  plan.sector = SectorLabel::Symmetric;
  plan.d = 1.0;
  plan.hs = {0.5, 0.25};
  plan.Ls = {4.0, 6.0};
  plan.k = 2;
  const SweepOutcome out = run_sweep(plan);

  REQUIRE(out.all_ok);
  CHECK(out.table["lambda1_monotone_h"].get<bool>());
  CHECK(out.table["lambda1_monotone_L"].get<bool>());
  REQUIRE(out.table["cells"].size() == 4);
  for (const auto& cell : out.table["cells"]) {
    CHECK(cell["converged"].get<bool>());
    CHECK(cell["isolated_count"].get<long long>() == 1);
  }
  // refinement differences are recorded coarse-minus-fine and stay >= 0
  CHECK(out.table["cells"][1]["dlambda1_h"].get<double>() >= -1e-10);
  CHECK(out.table["cells"][3]["dlambda1_h"].get<double>() >= -1e-10);
  CHECK(out.table["cells"][2]["dlambda1_L"].get<double>() >= -1e-10);
  CHECK(out.table["cells"][3]["dlambda1_L"].get<double>() >= -1e-10);
  CHECK(out.table["plan"]["domain"] == "pair");

  const std::string csv = sweep_csv(out.table);
  REQUIRE(csv.rfind("h,L,lambda1,lambda2,isolated_count,converged,dlambda1_h,dlambda1_L\n", 0) ==
          0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("theorem verification passes and is reproducible at modest resolution") {
  VerifyConfig cfg;
  cfg.d = 1.0;
  cfg.h = 1.0 / 8.0;
  cfg.L = 4.0;
  cfg.k = 4;

  VerifyOutcome a = verify_theorem(cfg);
  REQUIRE(a.solver_ok);
  CHECK(a.pass);
  CHECK(a.report["pass"].get<bool>());

  for (const char* sec : {"full", "s", "a"}) {
    CAPTURE(sec);
    const auto& js = a.report["sectors"][sec];
    CHECK(js["pass"].get<bool>());
    CHECK(js["isolated_count"].get<long long>() == 1);
    CHECK(js["lambda2_above_margin"].get<bool>());
    CHECK(js["gap"].get<double>() >= 1e-3 * js["threshold"].get<double>());
    CHECK(a.report["embeddings"][sec]["pass"].get<bool>());
    CHECK(a.report["embeddings"][sec]["max_rel_quotient_dev"].get<double>() <= 1e-9);
    CHECK(a.report["comparisons"]["domination"][sec].get<bool>());
  }
  // the ground state lives in the symmetric sector
  CHECK(a.report["comparisons"]["full_equals_symmetric_observed"].get<bool>());
  CHECK(a.report["comparisons"]["symmetric_is_minimizer_observed"].get<bool>());
  const double l1_full = a.report["sectors"]["full"]["eigenvalues"][0].get<double>();
  const double l1_anti = a.report["sectors"]["a"]["eigenvalues"][0].get<double>();
  CHECK(l1_full < l1_anti);

  const auto& jb = a.report["bracketing"];
  CHECK(jb["pass"].get<bool>());
  CHECK(jb["isolated_count"].get<long long>() == 1);
  CHECK(jb["counts_dominated"].get<bool>());
  CHECK(jb["arms_zero"].get<bool>());
  REQUIRE(jb["grid"].size() == 20);

  const std::string hash = a.report["provenance"]["canonical_hash"].get<std::string>();
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(a.report["provenance"].contains("timestamp"));

  // determinism: a second run differs at most in the timestamp
  VerifyOutcome b = verify_theorem(cfg);
  CHECK(b.report["provenance"]["canonical_hash"].get<std::string>() == hash);
  a.report["provenance"].erase("timestamp");
  b.report["provenance"].erase("timestamp");
  CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("verification validates its configuration") {
  VerifyConfig bad_d;
  bad_d.d = -1.0;
  CHECK_THROWS_AS((void)verify_theorem(bad_d), std::invalid_argument);
  VerifyConfig bad_k;
  bad_k.k = 1;
  bad_k.h = 0.25;
  bad_k.L = 4.0;
  CHECK_THROWS_AS((void)verify_theorem(bad_k), std::invalid_argument);
}
