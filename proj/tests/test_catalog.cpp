#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "critlab/catalog.hpp"
#include "critlab/errors.hpp"

using namespace critlab;

TEST_CASE("catalog inventory") {
  const auto& fams = list_families();
  std::set<std::string> ids;
  int nonsym = 0, sym = 0, aliases = 0;
  for (const auto& spec : fams) {
    CHECK(ids.insert(spec.id).second);  // each id exactly once
    if (!spec.alias_of.empty()) {
      ++aliases;
      continue;
    }
    if (spec.id.rfind("SYM.", 0) == 0)
      ++sym;
    else
      ++nonsym;
  }
  CHECK(sym == 5);
  CHECK(nonsym == 1 + 5 + 6 + 7);  // NS + E + H + R
  CHECK(aliases == 4);
  CHECK_THROWS_AS(family_spec("X.9"), UnknownFamily);
}

TEST_CASE("zero-energy flags follow the classification") {
  std::set<std::string> zero = {"R.1", "R.2", "R.3", "R.4", "R.5", "H.1",
                                "H.2", "H.3", "E.1", "NS.1", "SYM.1", "SYM.2",
                                "SYM.3"};
  for (const auto& spec : list_families()) {
    if (!spec.alias_of.empty()) continue;
    CHECK(spec.zero_energy == (zero.count(spec.id) > 0));
  }
}

TEST_CASE("soliton flags follow the classification") {
  std::set<std::string> sol = {"SYM.1", "SYM.2", "SYM.3", "NS.1", "E.1",
                               "H.1",   "H.2",   "H.3",   "R.1",  "R.2", "R.3"};
  for (const auto& spec : list_families()) {
    if (!spec.alias_of.empty()) continue;
    CHECK(spec.soliton == (sol.count(spec.id) > 0));
  }
}

TEST_CASE("closed-form instances of the classification") {
  FamilyInstance h2 = build_instance("H.2", {{"a", 0.0}});
  CHECK(h2.params.at("d") == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(h2.expected_t == doctest::Approx(-0.3).epsilon(1e-14));

  FamilyInstance r3 = build_instance("R.3", {{"f", 0.5}, {"p", 0.5}});
  CHECK(r3.expected_t == doctest::Approx(-3.0 / 11.0).epsilon(1e-14));

  FamilyInstance e3 = build_instance("E.3", {{"D", 2.0}});
  CHECK(e3.expected_t == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e3.expected_energy == doctest::Approx(-20.0).epsilon(1e-14));

  FamilyInstance h4 = build_instance("H.4", {{"a", 1.0}});
  CHECK(h4.expected_t == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(h4.expected_energy == doctest::Approx(-36.0).epsilon(1e-14));

  CHECK(family_t("R.1", {}) == doctest::Approx(-3.0));
  CHECK(family_energy("R.1", {}) == 0.0);
  CHECK(family_t("R.6", {{"h", 1.0}}) == doctest::Approx(-41.0 / 23.0));
  CHECK(family_energy("R.6", {{"h", 1.0}}) == doctest::Approx(-16.0 / 3.0));
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(build_instance("H.2", {{"a", 0.7}}), OutOfDomain);
  CHECK_THROWS_AS(build_instance("H.4", {{"a", -0.2}}), OutOfDomain);
  CHECK_THROWS_AS(build_instance("R.3", {{"f", 0.8}, {"p", 0.2}}), OutOfDomain);
  CHECK_THROWS_AS(build_instance("E.2", {{"lambda", 0.5}, {"branch", 1.0}}),
                  OutOfDomain);
  CHECK_THROWS_AS(build_instance("R.5", {{"p", -0.5}}), OutOfDomain);
  CHECK_THROWS_AS(build_instance("E.4", {{"lambda", 1.4}}), OutOfDomain);
}

TEST_CASE("dependent parameters satisfy their defining constraints") {
  Rng rng(88);
  for (int trial = 0; trial < 8; ++trial) {
    auto h5 = build_instance("H.5", sample_params(family_spec("H.5"), rng));
    double a = h5.params.at("a"), d = h5.params.at("d"), c = h5.params.at("c");
    CHECK(std::fabs(3 * a * a + 4 * c * c + 3 * d * d + 10 * a * d) < 1e-12);
    double c2 = c * c;
    CHECK(std::fabs(32 * c2 * c2 + (32 * a * d + 8) * c2 - 28 * a * d - 9) < 1e-11);
    CHECK(a < 0);
    CHECK(d > 0);
    CHECK(std::fabs(a) < d);

    auto h6 = build_instance("H.6", sample_params(family_spec("H.6"), rng));
    double H = h6.params.at("H"), dd = h6.params.at("d"), aa = h6.params.at("a");
    double u = dd * dd, H2 = H * H;
    CHECK(std::fabs(4 * u * u * u + 5 * (3 * H2 - 1) * u * u +
                    (18 * H2 * H2 + 6 * H2 + 13) * u +
                    (H2 + 1) * (H2 + 1) * (7 * H2 - 3)) < 1e-10);
    CHECK(aa > 0);

    auto r6 = build_instance("R.6", sample_params(family_spec("R.6"), rng));
    double f = r6.params.at("f"), h = r6.params.at("h");
    CHECK(std::fabs(36 * (f * f - h * h) - 24 * f - 5) < 1e-10);
    CHECK(f > 0);

    auto r7 = build_instance("R.7", sample_params(family_spec("R.7"), rng));
    double a7 = r7.params.at("a"), b7 = r7.params.at("b");
    CHECK(std::fabs(9 * a7 * a7 - 18 * b7 * b7 - 6 * a7 - 8) < 1e-10);

    auto e2 = build_instance("E.2", sample_params(family_spec("E.2"), rng));
    double lam = e2.params.at("lambda"), b = e2.params.at("b");
    CHECK(std::fabs(4 * std::pow(b, 4) - (3 * lam * lam - 2 * lam + 3) * b * b -
                    (lam - 1) * (lam - 1) * lam) < 1e-11);
  }
}

TEST_CASE("E.2 carries two ordered branches for lambda < 0") {
  auto lob = build_instance("E.2", {{"lambda", -0.5}, {"branch", 0.0}});
  auto hib = build_instance("E.2", {{"lambda", -0.5}, {"branch", 1.0}});
  CHECK(lob.params.at("b") < hib.params.at("b"));
  // both were classified critical
  auto c1 = solve_critical_t(lob.pkg);
  auto c2 = solve_critical_t(hib.pkg);
  CHECK(c1.kind == CriticalityResult::Kind::Unique);
  CHECK(c2.kind == CriticalityResult::Kind::Unique);
  CHECK(c1.t == doctest::Approx(lob.expected_t).epsilon(1e-10));
  CHECK(c2.t == doctest::Approx(hib.expected_t).epsilon(1e-10));
}

TEST_CASE("verify_family smoke runs") {
  for (auto id : {"H.2", "R.3", "SYM.4", "E.5"}) {
    VerificationReport rep = verify_family(id, 4, 1e-9, 1);
    INFO("family ", id, " worst residual ", rep.worst_residual);
    CHECK(rep.pass());
    CHECK(rep.worst_residual <= 1e-9);
  }
}

TEST_CASE("E.2 energy sign tracks the group and t peaks at 5-2*sqrt(7)") {
  // lambda > 0 realizes R|xE(2) with positive energy; lambda < 0 realizes
  // R|xE(1,1) with negative energy. The maximum critical t over the positive
  // branch is 5-2*sqrt(7).
  double t_max = -10;
  for (int s = 1; s < 4000; ++s) {
    double lam = s / 4000.0;
    if (lam >= 0.9999) break;
    FamilyInstance inst = build_instance("E.2", {{"lambda", lam}, {"branch", 0.0}});
    CHECK(inst.expected_energy > 0);
    t_max = std::max(t_max, inst.expected_t);
  }
  CHECK(t_max == doctest::Approx(5.0 - 2.0 * std::sqrt(7.0)).epsilon(1e-6));
  for (double lam : {-0.2, -0.5, -0.8}) {
    for (double branch : {0.0, 1.0}) {
      FamilyInstance inst = build_instance("E.2", {{"lambda", lam}, {"branch", branch}});
      CHECK(inst.expected_energy < 0);
    }
  }
}

TEST_CASE("catalog root constants solve their cubics") {
  double z = catalog_zeta();
  CHECK(std::fabs(((8 * z + 15) * z + 3) * z + 1) < 1e-12);
  CHECK(z == doctest::Approx(-1.697464).epsilon(1e-6));
  double th = catalog_theta();
  CHECK(std::fabs(((192 * th + 1152) * th + 1865) * th + 923) < 1e-9);
  CHECK(th == doctest::Approx(-3.753199).epsilon(1e-6));
}

TEST_CASE("alias identifications map product models onto the classification") {
  auto aliases = alias_identifications();
  REQUIRE(aliases.size() == 3);
  for (const auto& ai : aliases) {
    FamilyInstance alias_inst = build_instance(ai.alias_id, {});
    FamilyInstance target_inst = build_instance(ai.target_id, ai.target_params);
    CHECK(ai.map.is_orthogonal(1e-12));
    MetricLieAlgebra mapped =
        scale_structure(change_basis(alias_inst.mla, ai.map, true), ai.scale);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          CHECK(mapped.c[i][j][k] ==
                doctest::Approx(target_inst.mla.c[i][j][k]).epsilon(1e-12));
  }
}

TEST_CASE("solvsoliton aliases duplicate their targets") {
  for (const auto& spec : list_families()) {
    if (spec.alias_of.empty()) continue;
    Rng rng(3);
    auto ps = sample_params(spec, rng);
    FamilyInstance a = build_instance(spec.id, ps);
    FamilyInstance t = build_instance(spec.alias_of, ps);
    CHECK(a.expected_t == t.expected_t);
    CHECK(a.expected_energy == t.expected_energy);
  }
}

TEST_CASE("families json export") {
  std::string js = families_json();
  CHECK(js.find("\"SYM.1\"") != std::string::npos);
  CHECK(js.find("\"R.7\"") != std::string::npos);
  CHECK(js.find("\"alias_of\":\"R.1\"") != std::string::npos);
  CHECK(js == families_json());  // deterministic
}

TEST_CASE("matching recovers the family of a known instance") {
  FamilyInstance h4 = build_instance("H.4", {{"a", 0.8}});
  CatalogMatch m =
      match_to_catalog(invariant_vector(h4.pkg), solve_critical_t(h4.pkg));
  CHECK(m.family_id == "H.4");
  CHECK(m.distance < 1e-7);

  FamilyInstance r3 = build_instance("R.3", {{"f", -0.3}, {"p", 0.6}});
  CatalogMatch m2 =
      match_to_catalog(invariant_vector(r3.pkg), solve_critical_t(r3.pkg));
  CHECK(m2.family_id == "R.3");
  CHECK(m2.distance < 1e-7);
}
