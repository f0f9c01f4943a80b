#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <optional>
#include <random>

#include "gme/catalog.hpp"

namespace gme {
namespace test_catalog {

static bool same_coefficients(const MasterEqCoefficients& a, const MasterEqCoefficients& b) {
  return a.gamma == b.gamma && a.theta.v0 == b.theta.v0 && a.theta.v1 == b.theta.v1
      && a.theta.v2 == b.theta.v2 && a.eta.v0 == b.eta.v0 && a.eta.v1 == b.eta.v1
      && a.eta.v2 == b.eta.v2;
}

TEST_CASE("canonical family constructors", "[catalog]") {
  SECTION("pure damping row") {
    MasterEqCoefficients kl = canonical(EquationClass::KL, {});
    CHECK(kl.gamma == 1.0);
    CHECK(kl.theta.v0 == 2.0);
    CHECK(kl.theta.v1 == 0.0);
    CHECK(kl.theta.v2 == 0.0);
    CHECK(kl.eta.v0 == -2.0);
    CHECK(kl.eta.v1 == 0.0);
    CHECK(kl.eta.v2 == 0.0);
  }

  SECTION("rows tie the free slots to the fixed ones") {
    MasterEqCoefficients cl =
        canonical(EquationClass::CL, {.gamma = 1.0, .omega0 = 1.0, .b = 0.6, .theta1 = 0.2});
    CHECK(cl.theta.v2 == -1.0);
    CHECK(cl.eta.v0 == -1.2);
    CHECK(cl.eta.v1 == -1.2);
    CHECK(cl.eta.v2 == 0.0);

    MasterEqCoefficients ccl =
        canonical(EquationClass::ConjugateCL, {.b = 0.6, .theta1 = 0.2});
    CHECK(ccl.theta.v2 == 1.0);
    CHECK(ccl.eta.v1 == 1.2);

    MasterEqCoefficients gcl = canonical(EquationClass::GeneralizedCL, {.b = 0.6, .theta2 = 0.4});
    CHECK(gcl.theta.v1 == 0.0);
    CHECK(gcl.eta.v1 == Catch::Approx(0.48).epsilon(1e-15));

    MasterEqCoefficients gkl1 =
        canonical(EquationClass::GeneralizedKL1, {.b = 0.6, .theta1 = 0.9});
    CHECK(gkl1.theta.v2 == 0.0);
    CHECK(gkl1.eta.v1 == Catch::Approx(-0.54).epsilon(1e-15));

    MasterEqCoefficients gkl2 =
        canonical(EquationClass::GeneralizedKL2, {.b = 0.6, .theta1 = 0.5});
    CHECK(gkl2.theta.v2 == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(gkl2.eta.v1 == 0.0);

    MasterEqCoefficients hpz =
        canonical(EquationClass::HPZ, {.b = 1.0, .theta1 = 0.5, .eta2 = 0.875});
    CHECK(hpz.theta.v2 == -1.0);
    CHECK(hpz.eta.v0 == -2.0);
    CHECK(hpz.eta.v1 == -2.0);
    CHECK(hpz.eta.v2 == 0.875);
  }

  SECTION("family coincidences at shared corners") {
    CHECK(same_coefficients(canonical(EquationClass::GeneralizedCL, {.b = 0.7, .theta2 = -1.0}),
                            canonical(EquationClass::CL, {.b = 0.7})));
    CHECK(same_coefficients(canonical(EquationClass::GeneralizedCL, {.b = 0.7, .theta2 = 0.0}),
                            canonical(EquationClass::KL, {.b = 0.7})));
    CHECK(same_coefficients(canonical(EquationClass::GeneralizedKL2, {.b = 0.7, .theta1 = 0.0}),
                            canonical(EquationClass::KL, {.b = 0.7})));
    CHECK(same_coefficients(canonical(EquationClass::HPZ, {.b = 0.7, .theta1 = 0.3}),
                            canonical(EquationClass::CL, {.b = 0.7, .theta1 = 0.3})));
  }

  SECTION("parameter domains are enforced") {
    CHECK_THROWS_AS(canonical(EquationClass::KL, {.gamma = 0.0}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::KL, {.gamma = -1.0}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::KL, {.omega0 = 0.0}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::CL, {.b = 0.0}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::GeneralizedCL, {.theta2 = 1.5}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::GeneralizedCL, {.theta2 = -1.5}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::Generic, {}), DomainViolation);
    CHECK_THROWS_AS(canonical(EquationClass::GenericFactorized, {}), DomainViolation);
  }
}

TEST_CASE("classification recovers the generating family", "[catalog]") {
  SECTION("named rows round-trip") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> ug(0.5, 2.0);
    std::uniform_real_distribution<double> uw(0.6, 1.5);
    std::uniform_real_distribution<double> ub(0.3, 2.0);
    std::uniform_real_distribution<double> umag(0.1, 0.6);
    std::uniform_int_distribution<int> usign(0, 1);
    const EquationClass named[] = {
        EquationClass::KL,           EquationClass::CL,
        EquationClass::ConjugateCL,  EquationClass::GeneralizedCL,
        EquationClass::HPZ,          EquationClass::ConjugateHPZ,
        EquationClass::GeneralizedKL1, EquationClass::GeneralizedKL2,
    };
    for (int k = 0; k < 100; ++k) {
      EquationClass cls = named[k % 8];
      CanonicalParams p;
      p.gamma = ug(rng);
      p.omega0 = uw(rng);
      p.b = ub(rng);
      double sgn = usign(rng) ? 1.0 : -1.0;
      // Free slots stay away from the degenerate corners where one family
      // collapses onto another.
      if (cls != EquationClass::KL && cls != EquationClass::GeneralizedCL) {
        p.theta1 = sgn * umag(rng);
      }
      if (cls == EquationClass::GeneralizedCL) {
        p.theta2 = sgn * (0.1 + 0.8 * (umag(rng) - 0.1) / 0.5) * p.gamma;
      }
      if (cls == EquationClass::HPZ || cls == EquationClass::ConjugateHPZ) {
        p.eta2 = (usign(rng) ? 1.0 : -1.0) * (0.1 + umag(rng));
      }
      CHECK(classify(canonical(cls, p)) == cls);
    }
  }

  SECTION("degenerate corners resolve by precedence") {
    CHECK(classify(canonical(EquationClass::CL, {.b = 0.8})) == EquationClass::GeneralizedCL);
    CHECK(classify(canonical(EquationClass::ConjugateCL, {.b = 0.8}))
          == EquationClass::GeneralizedCL);
    CHECK(classify(canonical(EquationClass::HPZ, {.b = 0.8, .theta1 = 0.3}))
          == EquationClass::CL);
    CHECK(classify(canonical(EquationClass::GeneralizedKL1, {.b = 0.8}))
          == EquationClass::KL);
    CHECK(classify(canonical(EquationClass::GeneralizedCL, {.b = 0.8, .theta2 = 0.0}))
          == EquationClass::KL);
  }

  SECTION("factorized but unnamed") {
    MasterEqCoefficients fac{1.0, {2.0, 0.5, 0.3}, {-2.0, -0.7, 1.495 / 0.91}};
    CHECK(classify(fac) == EquationClass::GenericFactorized);
  }

  SECTION("fully generic coefficients") {
    MasterEqCoefficients od{1.5, {2.0, 1.9, 1.5}, {-2.0, -1.0, 0.3}};
    CHECK(classify(od) == EquationClass::Generic);
  }

  SECTION("classification tolerance separates noise from structure") {
    MasterEqCoefficients cl = canonical(EquationClass::CL, {.b = 0.6, .theta1 = 0.2});
    MasterEqCoefficients nudged = cl;
    nudged.theta.v2 += 1e-12;
    CHECK(classify(nudged) == EquationClass::CL);
    MasterEqCoefficients bent = cl;
    bent.theta.v2 += 1e-3;
    CHECK(classify(bent) == EquationClass::Generic);
  }

  SECTION("class names print") {
    CHECK(std::strcmp(to_string(EquationClass::KL), "KL") == 0);
    CHECK(std::strcmp(to_string(EquationClass::GeneralizedKL2), "GeneralizedKL2") == 0);
    CHECK(std::strcmp(to_string(EquationClass::GenericFactorized), "GenericFactorized") == 0);
  }
}

TEST_CASE("conjugation swaps the paired families", "[catalog]") {
  MasterEqCoefficients hpz =
      canonical(EquationClass::HPZ, {.b = 0.9, .theta1 = 0.4, .eta2 = 0.3});
  MasterEqCoefficients image = conjugate_image(hpz);
  CHECK(classify(image) == EquationClass::ConjugateHPZ);
  CHECK(same_coefficients(conjugate_image(image), hpz));

  MasterEqCoefficients cl = canonical(EquationClass::CL, {.b = 0.6, .theta1 = 0.2});
  CHECK(classify(conjugate_image(cl)) == EquationClass::ConjugateCL);

  for (EquationClass cls : {EquationClass::KL, EquationClass::GeneralizedKL1,
                            EquationClass::GeneralizedKL2}) {
    CanonicalParams p;
    p.b = 0.8;
    if (cls != EquationClass::KL) {
      p.theta1 = 0.5;
    }
    CHECK(classify(conjugate_image(canonical(cls, p))) == cls);
  }

  MasterEqCoefficients gcl = canonical(EquationClass::GeneralizedCL, {.b = 0.8, .theta2 = 0.4});
  CHECK(classify(conjugate_image(gcl)) == EquationClass::GeneralizedCL);
}

TEST_CASE("thermal occupation parameter", "[catalog]") {
  CHECK(thermal_b(1.0, 10.0) == Catch::Approx(10.00833194477505).epsilon(1e-14));
  CHECK(thermal_b(1.0, 10.0) == Catch::Approx(10.0).epsilon(0.01));
  CHECK(thermal_b(1.0, 0.5) == Catch::Approx(0.6565176427496656).epsilon(1e-14));
  CHECK(thermal_b(1.0, 0.5, ThermalExponent::half)
        == Catch::Approx(1.0819767068693265).epsilon(1e-14));

  SECTION("cold limit saturates at one half") {
    CHECK(thermal_b(1.0, 1e-3) == 0.5);
  }

  SECTION("monotone in temperature, larger with the halved exponent") {
    double prev = 0.0;
    for (double kT : {0.2, 0.5, 1.0, 2.0, 5.0}) {
      double full = thermal_b(1.0, kT);
      CHECK(full > prev);
      CHECK(thermal_b(1.0, kT, ThermalExponent::half) > full);
      prev = full;
    }
  }

  SECTION("domain checks") {
    CHECK_THROWS_AS(thermal_b(1.0, 0.0), DomainViolation);
    CHECK_THROWS_AS(thermal_b(1.0, -1.0), DomainViolation);
    CHECK_THROWS_AS(thermal_b(0.0, 1.0), DomainViolation);
  }
}

TEST_CASE("thermal stationary detection", "[catalog]") {
  CHECK(gibbs_stationary(canonical(EquationClass::KL, {.b = 0.7})));

  // eta2 = theta1 * eta0 / gamma cancels the transverse displacement.
  MasterEqCoefficients tuned{1.0, {2.0, 0.5, -1.0}, {-2.0, -2.0, -1.0}};
  CHECK(gibbs_stationary(tuned));

  CHECK_FALSE(gibbs_stationary(canonical(EquationClass::CL, {.b = 0.6, .theta1 = 0.2})));

  CHECK(gibbs_stationary(canonical(EquationClass::GeneralizedCL, {.b = 0.6, .theta2 = 0.4})));

  CHECK_THROWS_AS(gibbs_stationary(MasterEqCoefficients{-1.0, {2.0, 0.0, 0.0}, {-2.0, 0.0, 0.0}}),
                  DomainViolation);
}

TEST_CASE("complete-positivity witness", "[catalog]") {
  SECTION("frozen witnesses for the factorizable rows") {
    auto kl = cp_decompose(canonical(EquationClass::KL, {.b = 1.0}));
    REQUIRE(kl.has_value());
    CHECK(kl->c == Catch::Approx(0.3535533905932738).epsilon(1e-14));
    CHECK(kl->s1 == Catch::Approx(1.7320508075688772).epsilon(1e-12));
    CHECK(kl->s2 == Catch::Approx(-1.7320508075688772).epsilon(1e-12));

    auto gkl1 = cp_decompose(canonical(EquationClass::GeneralizedKL1, {.b = 0.6, .theta1 = 0.9}));
    REQUIRE(gkl1.has_value());
    CHECK(gkl1->c == Catch::Approx(0.15811388300841894).epsilon(1e-13));
    CHECK(gkl1->s1 == Catch::Approx(4.626136028425822).epsilon(1e-12));
    CHECK(gkl1->s2 == Catch::Approx(0.773863971574179).epsilon(1e-12));

    auto gkl2 = cp_decompose(canonical(EquationClass::GeneralizedKL2, {.b = 0.6, .theta1 = 0.5}));
    REQUIRE(gkl2.has_value());
    CHECK(gkl2->c == Catch::Approx(0.15811388300841894).epsilon(1e-13));
    CHECK(gkl2->s1 == Catch::Approx(3.3166247903554003).epsilon(1e-12));
    CHECK(gkl2->s2 == Catch::Approx(-3.3166247903554003).epsilon(1e-12));
  }

  SECTION("reconstruction closes on the inputs") {
    std::mt19937 rng(1618);
    std::uniform_real_distribution<double> ub(0.55, 1.5);
    std::uniform_real_distribution<double> uth(-0.6, 0.6);
    int found = 0;
    for (int k = 0; k < 40; ++k) {
      MasterEqCoefficients c =
          canonical(EquationClass::GeneralizedKL2, {.b = ub(rng), .theta1 = uth(rng)});
      auto w = cp_decompose(c);
      if (!w) {
        continue;
      }
      ++found;
      CHECK(std::abs(w->reconstructed.gamma - c.gamma) <= 1e-10 * (1.0 + c.gamma));
      CHECK(std::abs(w->reconstructed.eta0 - c.eta.v0) <= 1e-10 * (1.0 + std::abs(c.eta.v0)));
      CHECK(std::abs(w->reconstructed.eta1 - c.eta.v1) <= 1e-10 * (1.0 + std::abs(c.eta.v1)));
      CHECK(w->reconstructed.eta2 == 0.0);
      CHECK(stationary_params(c).positive != Verdict::no);
    }
    CHECK(found >= 30);
  }

  SECTION("the one-sided noise rows never admit a witness") {
    CHECK_FALSE(cp_decompose(canonical(EquationClass::CL, {.b = 0.6, .theta1 = 0.2})));
    CHECK_FALSE(cp_decompose(canonical(EquationClass::ConjugateCL, {.b = 1.4, .theta1 = 0.3})));
  }

  SECTION("transverse noise is outside the decomposable form") {
    CHECK_THROWS_AS(
        cp_decompose(canonical(EquationClass::HPZ, {.b = 1.0, .theta1 = 0.5, .eta2 = 0.5})),
        UnsupportedRealization);
  }

  SECTION("inverted or weak noise yields no witness") {
    CHECK_FALSE(cp_decompose(MasterEqCoefficients{1.0, {2.0, 0.0, 0.0}, {0.5, 0.0, 0.0}}));
    CHECK_FALSE(cp_decompose(canonical(EquationClass::KL, {.b = 0.4})));
    CHECK_THROWS_AS(cp_decompose(MasterEqCoefficients{-1.0, {2.0, 0.0, 0.0}, {-2.0, 0.0, 0.0}}),
                    DomainViolation);
  }

  SECTION("witness existence moves with the mixing angle") {
    CHECK(cp_decompose(canonical(EquationClass::GeneralizedCL, {.b = 0.6, .theta2 = 0.5}))
              .has_value());
    CHECK_FALSE(cp_decompose(canonical(EquationClass::GeneralizedCL, {.b = 0.6, .theta2 = 0.6}))
                    .has_value());
  }

  SECTION("witness existence tracks the in-plane tilt threshold") {
    CHECK(cp_decompose(canonical(EquationClass::GeneralizedKL1, {.b = 0.6, .theta1 = 0.9}))
              .has_value());
    CHECK_FALSE(cp_decompose(canonical(EquationClass::GeneralizedKL1, {.b = 0.5, .theta1 = 0.9}))
                    .has_value());
  }
}

}  // namespace test_catalog
}  // namespace gme
