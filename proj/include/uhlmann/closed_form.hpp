// closed_form.hpp: analytic phases. Composite Berry phase, level Berry phases
// of a reduced qubit, composed phase, exact subsystem Uhlmann phase (pure and
// depolarized), equator forms and interferometric phases.
//
// Level Berry phases and the composed phase are kept unwrapped; only the final
// outputs are mapped onto (-pi, pi].

#pragma once

#include "uhlmann/core.hpp"
#include "uhlmann/entanglement.hpp"
#include "uhlmann/spin_model.hpp"
#include "uhlmann/states.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace uhlmann {

/// Both |Re| and |Im| below this: the Arg is undefined.
inline constexpr double closed_form_degenerate_threshold = 1e-14;

// -------------------------------- Berry --------------------------------------

/// gamma = 2 pi ((u^1)^2 - (u^4)^2) / N_j.
inline PhaseValue berry_composite(int j, double theta, double g) {
  const EigenComponents ec = eigenvector_components(j, theta, g);
  return PhaseValue::from_angle(two_pi * (ec.u[0] * ec.u[0] - ec.u[3] * ec.u[3]) / ec.norm);
}

struct LevelBerry {
  double gamma1 = 0.0;  // radians, in [0, 2 pi]
  double gamma2 = 0.0;
  bool trivial = false;  // diagonal state, no loop in the eigenvectors
};

namespace detail {

inline double level_berry(double beta) noexcept {
  if (std::isinf(beta)) return two_pi;
  const double b2 = beta * beta;
  return two_pi * b2 / (1.0 + b2);
}

// gamma_2 - pi without cancellation: pi (beta^2 - 1) / (beta^2 + 1).
inline double level_berry_offset(double beta) noexcept {
  if (std::isinf(beta)) return pi;
  const double b2 = beta * beta;
  return pi * (b2 - 1.0) / (b2 + 1.0);
}

inline double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail

/// gamma^{s,l} = 2 pi beta_l^2 / N_l.
inline LevelBerry berry_qubit_levels(const QubitState& qs) {
  LevelBerry lb;
  lb.gamma1 = detail::level_berry(qs.beta1);
  lb.gamma2 = detail::level_berry(qs.beta2);
  lb.trivial = qs.trivial();
  return lb;
}

/// p1 gamma1 + p2 gamma2, unwrapped.
inline PhaseValue mean_berry(const QubitState& qs) {
  const LevelBerry lb = berry_qubit_levels(qs);
  PhaseValue v = PhaseValue::from_angle(qs.p1 * lb.gamma1 + qs.p2 * lb.gamma2);
  if (lb.trivial) v.status = PhaseStatus::trivial_holonomy;
  return v;
}

// ------------------------------- Uhlmann -------------------------------------

struct UhlmannArgument {
  double r = 0.0;
  double mean_berry = pi;  // unwrapped composed phase of the undepolarized state
  cplx z{-0.5, 0.0};       // Phi = Arg(-2 z)
  bool trivial = false;
};

/// r, composed phase and z for the reduced state `pure` sent through the
/// depolarizing channel of strength q. For the depolarized channel, z carries
/// the (1 - q) factor on its imaginary part.
inline UhlmannArgument uhlmann_argument(const QubitState& pure, double q) {
  detail::require_depolarization(q);
  if (pure.depolarization != 0.0) throw InvalidArgument("uhlmann_argument expects an undepolarized reduced state");
  UhlmannArgument out;
  const LevelBerry lb = berry_qubit_levels(pure);
  out.mean_berry = pure.p1 * lb.gamma1 + pure.p2 * lb.gamma2;
  const double keep = 1.0 - q;
  if (pure.trivial() || keep * std::abs(pure.c) < trivial_coherence_threshold) {
    out.trivial = true;
    out.r = 1.0;
    return out;
  }
  const double c2 = 4.0 * std::max(0.0, pure.determinant());
  const double r2 = 1.0 - lb.gamma1 * lb.gamma2 * keep * keep * (1.0 - c2) / (pi * pi);
  out.r = std::sqrt(std::max(0.0, r2));

  // (1 - q)(gamma_bar - pi) = (1 - q)(p2 - p1)(gamma2 - pi); coefficients at
  // rounding level (the equator) are zero.
  double kappa = keep * (pure.p2 - pure.p1) * detail::level_berry_offset(pure.beta2);
  if (std::abs(kappa) < 64.0 * std::numeric_limits<double>::epsilon()) kappa = 0.0;
  const double x = pi * out.r;
  out.z = 0.5 * cplx(std::cos(x), kappa * detail::sinc(x));
  return out;
}

inline PhaseValue phase_from_argument(const UhlmannArgument& ua) {
  if (ua.trivial) return PhaseValue::trivial();
  const cplx w = -2.0 * ua.z;
  if (std::abs(w.real()) < closed_form_degenerate_threshold && std::abs(w.imag()) < closed_form_degenerate_threshold) {
    return PhaseValue{0.0, 0.0, std::abs(w), PhaseStatus::degenerate};
  }
  const double a = principal_arg(w);
  return PhaseValue{a, a, std::abs(w), PhaseStatus::ok};
}

/// Phi_d^s = Arg{-cos(pi r) - i (1 - q)(gamma_bar - pi) sin(pi r) / (pi r)}.
inline PhaseValue uhlmann_subsystem(const QubitState& pure, double q) {
  return phase_from_argument(uhlmann_argument(pure, q));
}

inline PhaseValue uhlmann_subsystem(const ModelParams& params, Subsystem s) {
  params.validate();
  return uhlmann_subsystem(reduce(params.j, params.theta, params.g, s), params.q);
}

inline cplx z_point(const ModelParams& params, Subsystem s) {
  params.validate();
  return uhlmann_argument(reduce(params.j, params.theta, params.g, s), params.q).z;
}

/// Arg{-cos(pi r)}, r = sqrt(1 - (1 - q)^2 (1 - C^2)); at q = 0, r = C.
inline PhaseValue uhlmann_equator(ConcurrenceValue concurrence, double q) {
  detail::require_depolarization(q);
  const double cc = concurrence.value;
  if (!(cc >= 0.0 && cc <= 1.0)) throw InvalidArgument("concurrence must lie in [0, 1]");
  const double keep = 1.0 - q;
  const double r = q == 0.0 ? cc : std::sqrt(std::max(0.0, 1.0 - keep * keep * (1.0 - cc * cc)));
  const double w = -std::cos(pi * r);
  if (std::abs(w) < closed_form_degenerate_threshold) return PhaseValue{0.0, 0.0, std::abs(w), PhaseStatus::degenerate};
  const double a = w < 0.0 ? pi : 0.0;
  return PhaseValue{a, a, std::abs(w), PhaseStatus::ok};
}

// ---------------------------- interferometric --------------------------------

/// Arg{p1 e^{i gamma1} + p2 e^{i gamma2}}.
inline PhaseValue interferometric(double p1, double p2, double gamma1, double gamma2) {
  detail::require_finite(p1, "p1");
  detail::require_finite(p2, "p2");
  if (p1 < -1e-12 || p2 < -1e-12 || std::abs(p1 + p2 - 1.0) > 1e-12) {
    throw InvalidArgument("interferometric: probabilities must be non-negative and sum to 1");
  }
  const cplx sum = p1 * std::polar(1.0, gamma1) + p2 * std::polar(1.0, gamma2);
  return PhaseValue::from_complex(sum, closed_form_degenerate_threshold);
}

/// Interferometric phase of the depolarized reduced state.
inline PhaseValue interferometric_subsystem(const ModelParams& params, Subsystem s) {
  params.validate();
  const QubitState mixed = depolarize_reduced(reduce(params.j, params.theta, params.g, s), params.q);
  if (mixed.trivial()) return PhaseValue::trivial();
  const LevelBerry lb = berry_qubit_levels(mixed);
  return interferometric(mixed.p1, mixed.p2, lb.gamma1, lb.gamma2);
}

}  // namespace uhlmann
