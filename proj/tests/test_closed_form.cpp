#include "oracles.hpp"

#include <catch2/catch.hpp>

using namespace uhlmann;
using Catch::Matchers::WithinAbs;

TEST_CASE("composite Berry phase", "[closed_form]") {
  for (int j = 1; j <= 4; ++j) {
    for (double g : {0.1, 1.0, 4.0}) CHECK_THAT(berry_composite(j, pi / 2, g).angle, WithinAbs(0.0, 1e-14));
  }
  for (int j = 1; j <= 4; ++j) {
    for (auto [t, g] : {std::pair{0.4, 0.6}, std::pair{1.0, 1.5}, std::pair{2.2, 0.3}}) {
      const double quad = oracle::berry_quadrature(j, t, g);
      CHECK_THAT(berry_composite(j, t, g).unwrapped, WithinAbs(quad, 1e-8));
    }
  }
  // uncoupled ground state: solid-angle value of spin A
  const double t = 0.8;
  CHECK_THAT(berry_composite(2, t, 0.0).unwrapped, WithinAbs(pi * (1.0 - std::cos(t)) - pi, 1e-12));
}

TEST_CASE("level Berry phases", "[closed_form]") {
  for (double g : {0.2, 1.0, 3.0}) {
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const LevelBerry lb = berry_qubit_levels(reduce(2, pi / 2, g, s));
      CHECK_THAT(lb.gamma1, WithinAbs(pi, 1e-12));
      CHECK_THAT(lb.gamma2, WithinAbs(pi, 1e-12));
      CHECK_THAT(mean_berry(reduce(2, pi / 2, g, s)).unwrapped, WithinAbs(pi, 1e-12));
    }
  }
  for (auto [t, g] : {std::pair{0.5, 0.4}, std::pair{2.0, 1.3}}) {
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const QubitState qs = reduce(2, t, g, s);
      const LevelBerry lb = berry_qubit_levels(qs);
      CHECK_THAT(lb.gamma1, WithinAbs(oracle::qubit_berry_quadrature(qs, 1), 1e-8));
      CHECK_THAT(lb.gamma2, WithinAbs(oracle::qubit_berry_quadrature(qs, 2), 1e-8));
      CHECK_THAT(lb.gamma1 + lb.gamma2, WithinAbs(two_pi, 1e-12));
    }
  }
  // pure reduced state: occupied level follows the solid angle of the Bloch vector
  const QubitState pure = reduce(2, 0.7, 1e-12, Subsystem::A);
  const BlochVector b = bloch(pure, 0.0);
  // minus half the enclosed solid angle, taken in [0, 2 pi)
  const double half_solid = pi * (1.0 - b.n(2) / b.radius);
  CHECK_THAT(berry_qubit_levels(pure).gamma2, WithinAbs(two_pi - half_solid, 1e-10));

  const QubitState north = QubitState::from_coefficients(0.3, 1e-3, Subsystem::A);
  CHECK(std::abs(north.beta2) < 1e-2);
  CHECK(berry_qubit_levels(north).gamma2 < 1e-4);
  CHECK_THAT(berry_qubit_levels(north).gamma1, WithinAbs(two_pi, 1e-4));
  const QubitState half = QubitState::from_coefficients(0.5, 0.0, Subsystem::A);
  const LevelBerry lh = berry_qubit_levels(half);
  CHECK(lh.trivial);
  CHECK_THAT(mean_berry(half).unwrapped, WithinAbs(0.5 * (lh.gamma1 + lh.gamma2), 1e-15));
}

TEST_CASE("sum rule", "[closed_form]") {
  for (int a = 1; a <= 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      const double t = pi * a / 21.0;
      const double g = 0.05 + 0.2 * b;
      const double lhs = mean_berry(reduce(2, t, g, Subsystem::A)).unwrapped +
                         mean_berry(reduce(2, t, g, Subsystem::B)).unwrapped - two_pi;
      CHECK_THAT(lhs, WithinAbs(berry_composite(2, t, g).unwrapped, 1e-10));
    }
  }
}

TEST_CASE("Uhlmann phase on the equator", "[closed_form]") {
  for (double g : {0.2, 0.8, 1.1}) CHECK(uhlmann_subsystem(ModelParams(pi / 2, g), Subsystem::A).angle == pi);
  for (double g : {1.2, 1.5, 2.0, 5.0}) CHECK(uhlmann_subsystem(ModelParams(pi / 2, g), Subsystem::B).angle == 0.0);
  for (double q : {0.0, 0.05, 0.1}) {
    for (double g : {0.1, 0.6, 1.0, 3.0}) {
      for (int j = 1; j <= 4; ++j) {
        const PhaseValue a = uhlmann_subsystem(ModelParams(pi / 2, g, q, j), Subsystem::A);
        const PhaseValue e = uhlmann_equator(concurrence_equator(g), q);
        CHECK_THAT(a.angle, WithinAbs(e.angle, 1e-12));
      }
    }
  }
  CHECK(uhlmann_equator({0.0, ConcurrenceMethod::equator}, 0.0).angle == pi);
  CHECK(uhlmann_equator({0.5, ConcurrenceMethod::equator}, 0.0).status == PhaseStatus::degenerate);
  const double q = 0.1073;
  const ConcurrenceValue at_node = concurrence_equator(critical_coupling(q));
  CHECK(uhlmann_equator(at_node, q).status == PhaseStatus::degenerate);
  CHECK(uhlmann_equator(concurrence_equator(0.45), q).angle == pi);
  CHECK(uhlmann_equator(concurrence_equator(0.55), q).angle == 0.0);
  CHECK(uhlmann_subsystem(ModelParams(pi / 2, critical_coupling_pure), Subsystem::A).status == PhaseStatus::degenerate);
}

TEST_CASE("q = 0 reduces to the pure-state expression", "[closed_form]") {
  for (int a = 1; a < 10; ++a) {
    for (double g : {0.1, 0.7, 1.6, 4.0}) {
      for (Subsystem s : {Subsystem::A, Subsystem::B}) {
        const double t = pi * a / 10.0;
        const QubitState qs = reduce(2, t, g, s);
        const LevelBerry lb = berry_qubit_levels(qs);
        const double cc = concurrence_wootters(pure_density(2, t, g, 0.0)).value;
        const double direct = oracle::pure_phase_direct(lb.gamma1, lb.gamma2, qs.p1, qs.p2, cc);
        CHECK(std::abs(angle_difference(uhlmann_subsystem(ModelParams(t, g), s).angle, direct)) < 1e-10);
      }
    }
  }
}

TEST_CASE("r is built from the Bloch radius", "[closed_form]") {
  for (double q : {0.0, 0.05, 0.3}) {
    const QubitState qs = reduce(2, 1.1, 0.9, Subsystem::B);
    const UhlmannArgument ua = uhlmann_argument(qs, q);
    const LevelBerry lb = berry_qubit_levels(qs);
    const double radius = bloch(qs, 0.0).radius;
    const double expect = 1.0 - lb.gamma1 * lb.gamma2 * (1.0 - q) * (1.0 - q) * radius * radius / (pi * pi);
    CHECK_THAT(ua.r * ua.r, WithinAbs(expect, 1e-12));
  }
}

TEST_CASE("z point", "[closed_form]") {
  CHECK(std::abs(z_point(ModelParams(pi / 2, critical_coupling_pure), Subsystem::A)) < 1e-15);
  const cplx z = z_point(ModelParams(pi / 2, 0.1), Subsystem::A);
  CHECK(z.real() > 0.0);
  CHECK(z.imag() == 0.0);
  for (double q : {0.0, 0.08}) {
    for (double t : {0.3, 1.0, 2.5}) {
      for (double g : {0.4, 1.3}) {
        for (Subsystem s : {Subsystem::A, Subsystem::B}) {
          const ModelParams p(t, g, q);
          const double a = principal_arg(-2.0 * z_point(p, s));
          CHECK(std::abs(angle_difference(a, uhlmann_subsystem(p, s).angle)) < 1e-12);
        }
      }
    }
  }
  CHECK(z_point(ModelParams(0.0, 1.0), Subsystem::A) == cplx(-0.5, 0.0));
}

TEST_CASE("uncoupled limit", "[closed_form]") {
  for (double t : {pi / 6, pi / 4, 2 * pi / 3}) {
    const ModelParams p(t, 1e-6);
    CHECK_THAT(uhlmann_subsystem(p, Subsystem::A).angle, WithinAbs(wrap_angle(pi * (1.0 - std::cos(t))), 1e-5));
    CHECK_THAT(std::abs(uhlmann_subsystem(p, Subsystem::B).angle), WithinAbs(pi, 1e-5));
    CHECK_THAT(interferometric_subsystem(p, Subsystem::A).angle, WithinAbs(wrap_angle(pi * (1.0 - std::cos(t))), 1e-5));
    CHECK_THAT(std::abs(interferometric_subsystem(p, Subsystem::B).angle), WithinAbs(pi, 1e-5));
  }
}

TEST_CASE("weak coupling approach to the interferometric phase", "[closed_form]") {
  for (Subsystem s : {Subsystem::A, Subsystem::B}) {
    double last = 10.0;
    for (double g : {0.25, 0.2, 0.15, 0.1, 0.05, 0.02, 0.01}) {
      const ModelParams p(1.0, g);
      const double d = std::abs(angle_difference(uhlmann_subsystem(p, s).angle, interferometric_subsystem(p, s).angle));
      CHECK(d <= last);
      last = d;
    }
    const ModelParams zero(1.0, 0.0);
    CHECK(std::abs(angle_difference(uhlmann_subsystem(zero, s).angle, interferometric_subsystem(zero, s).angle)) <
          1e-12);
  }
}

TEST_CASE("strong coupling", "[closed_form]") {
  for (double t : {pi / 4, 3 * pi / 8, 3 * pi / 4}) {
    const ModelParams p(t, 50.0);
    const double berry = berry_composite(2, t, 50.0).angle;
    CHECK(std::abs(angle_difference(uhlmann_subsystem(p, Subsystem::B).angle, berry)) < 0.01 * pi);
  }
  CHECK(std::abs(uhlmann_subsystem(ModelParams(pi / 4, 50.0), Subsystem::A).angle) < 0.01 * pi);
}

TEST_CASE("interferometric phase", "[closed_form]") {
  CHECK(interferometric(0.3, 0.7, pi, pi).angle == pi);
  CHECK_THAT(interferometric(0.0, 1.0, 0.4, 2.2).angle, WithinAbs(2.2, 1e-15));
  CHECK(interferometric(0.5, 0.5, 0.0, pi).status == PhaseStatus::degenerate);
  CHECK_THROWS_AS(interferometric(0.5, 0.6, 0.0, 1.0), InvalidArgument);
  for (double g : {0.3, 2.0}) {
    for (double q : {0.0, 0.2}) {
      CHECK(interferometric_subsystem(ModelParams(pi / 2, g, q), Subsystem::A).angle == pi);
    }
  }
}

TEST_CASE("trivial routing", "[closed_form]") {
  CHECK(uhlmann_subsystem(ModelParams(0.0, 1.0), Subsystem::A).status == PhaseStatus::trivial_holonomy);
  CHECK(uhlmann_subsystem(ModelParams(1.0, 1.0, 1.0), Subsystem::B).status == PhaseStatus::trivial_holonomy);
  CHECK(uhlmann_subsystem(ModelParams(1.0, 1.0, 1.0), Subsystem::B).angle == 0.0);
  CHECK(numeric_uhlmann_subsystem(ModelParams(1.0, 1.0, 1.0), Subsystem::B).status == PhaseStatus::trivial_holonomy);
}
