// holonomy.hpp: Uhlmann connections along the phi loop and the path-ordered
// holonomy V(phi0 + 2 pi, phi0) from dV/dphi = A(phi) V, V(phi0) = 1.
//
// The ODE is integrated with fixed-step classical RK4. V is never
// re-unitarized; the defect |V^dagger V - 1| is reported instead.

#pragma once

#include "uhlmann/core.hpp"
#include "uhlmann/spin_model.hpp"
#include "uhlmann/states.hpp"

#include <array>
#include <cmath>
#include <concepts>
#include <string>

namespace uhlmann {

inline constexpr int default_holonomy_steps = 2000;
inline constexpr int min_holonomy_steps = 16;
inline constexpr int max_holonomy_steps = 1 << 16;
inline constexpr double default_phase_tolerance = 1e-8;
/// |Tr[rho0 V]| below this leaves the phase undefined.
inline constexpr double holonomy_trace_threshold = 1e-12;

template <int N>
struct ConnectionSample {
  CMat<N> generator;  // anti-Hermitian
  double phi = 0.0;
};

template <int N>
struct Holonomy {
  CMat<N> V;
  int steps = 0;
  double unitarity_defect = 0.0;  // Frobenius norm of V^dagger V - 1
};

/// Any callable phi -> N x N generator.
template <class F, int N>
concept ConnectionField = requires(const F& f, double phi) {
  { f(phi) } -> std::convertible_to<CMat<N>>;
};

// ------------------------------ connections ----------------------------------

/// Composite depolarized-state connection
///   A_d = sum_{i != k} i (sqrt p_k - sqrt p_i)^2 / (p_k + p_i)
///         (u_i^4 u_k^4 - u_i^1 u_k^1) / sqrt(N_i N_k) |u_i〉〈u_k|
/// with p_k = q/4 + (1 - q) delta_{k,j}.
class CompositeConnection {
 public:
  explicit CompositeConnection(const ModelParams& params) : params_(params) {
    params_.validate();
    const SpectralData sd = spectrum(params.theta, params.g);
    states_ = sd.states;
    for (int k = 0; k < 4; ++k) {
      populations_[static_cast<std::size_t>(k)] = 0.25 * params.q + (k + 1 == params.j ? 1.0 - params.q : 0.0);
    }
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (r == c) {
          weights_(r, c) = 0.0;
          continue;
        }
        const double pr = populations_[static_cast<std::size_t>(r)];
        const double pc = populations_[static_cast<std::size_t>(c)];
        const double gap = std::sqrt(pc) - std::sqrt(pr);
        const double factor = (pr + pc) > 0.0 ? gap * gap / (pr + pc) : 0.0;
        weights_(r, c) = factor * phi_derivative_overlap(states_[static_cast<std::size_t>(r)],
                                                         states_[static_cast<std::size_t>(c)]).imag();
      }
    }
  }

  /// True when every coefficient vanishes (q = 1).
  bool vanishes() const { return weights_.cwiseAbs().maxCoeff() == 0.0; }

  CMat<4> operator()(double phi) const {
    std::array<CVec<4>, 4> kets;
    for (std::size_t k = 0; k < 4; ++k) kets[k] = eigenstate(states_[k], phi);
    CMat<4> a = CMat<4>::Zero();
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (weights_(r, c) == 0.0) continue;
        a += cplx(0.0, weights_(r, c)) * kets[static_cast<std::size_t>(r)] * kets[static_cast<std::size_t>(c)].adjoint();
      }
    }
    return a;
  }

  ConnectionSample<4> sample(double phi) const { return {(*this)(phi), phi}; }

  /// rho_d at loop angle phi.
  CMat<4> density(double phi) const {
    const CVec<4> v = eigenstate(states_[static_cast<std::size_t>(params_.j - 1)], phi);
    return 0.25 * params_.q * CMat<4>::Identity() + (1.0 - params_.q) * (v * v.adjoint());
  }

  const ModelParams& params() const noexcept { return params_; }
  const std::array<double, 4>& populations() const noexcept { return populations_; }

 private:
  ModelParams params_;
  std::array<EigenComponents, 4> states_{};
  std::array<double, 4> populations_{};
  Eigen::Matrix4d weights_ = Eigen::Matrix4d::Zero();
};

inline ConnectionSample<4> connection_composite(const ModelParams& params, double phi) {
  return CompositeConnection(params).sample(phi);
}

/// Qubit connection -2i dp (n_delta . sigma) with n_delta = (-delta cos phi,
/// -delta sin phi, 1) and dp = (sqrt p2 - sqrt p1)^2 / (N1 N2).
class ReducedConnection {
 public:
  explicit ReducedConnection(const QubitState& qs) : state_(qs) {
    if (!qs.trivial()) {
      const double gap = std::sqrt(qs.p2) - std::sqrt(qs.p1);
      population_gap_ = gap * gap / (qs.norm1 * qs.norm2);
      delta_ = *qs.delta;
    }
  }

  /// Zero generator: diagonal or maximally mixed state.
  bool vanishes() const noexcept { return state_.trivial() || population_gap_ == 0.0; }

  /// (sqrt p2 - sqrt p1)^2 / (N1 N2); 0 for a diagonal state.
  double population_gap() const noexcept { return population_gap_; }

  Eigen::Matrix2cd operator()(double phi) const {
    const cplx scale(0.0, -2.0 * population_gap_);
    Eigen::Matrix2cd a;
    a << scale, scale * std::polar(-delta_, -phi), scale * std::polar(-delta_, phi), -scale;
    return a;
  }

  ConnectionSample<2> sample(double phi) const { return {(*this)(phi), phi}; }

  Eigen::Matrix2cd density(double phi) const { return state_.matrix(phi); }

  const QubitState& state() const noexcept { return state_; }

 private:
  QubitState state_;
  double population_gap_ = 0.0;
  double delta_ = 0.0;
};

inline ConnectionSample<2> connection_reduced(const QubitState& qs, double phi) {
  return ReducedConnection(qs).sample(phi);
}

// ------------------------------ integration ----------------------------------

template <int N>
double unitarity_defect(const CMat<N>& v) {
  return (v.adjoint() * v - CMat<N>::Identity()).norm();
}

/// V(phi0 + 2 pi, phi0) by `steps` fixed RK4 steps.
template <int N, class F>
  requires ConnectionField<F, N>
Holonomy<N> integrate_holonomy(const F& connection, double phi0, int steps) {
  detail::require_finite(phi0, "phi0");
  if (steps < min_holonomy_steps) throw InvalidArgument("integrate_holonomy: steps must be >= 16");
  const double h = two_pi / steps;
  CMat<N> v = CMat<N>::Identity();
  CMat<N> a0 = connection(phi0);
  for (int n = 0; n < steps; ++n) {
    const double phi = phi0 + n * h;
    const CMat<N> a_mid = connection(phi + 0.5 * h);
    const CMat<N> a1 = connection(phi + h);
    const CMat<N> k1 = a0 * v;
    const CMat<N> k2 = a_mid * (v + 0.5 * h * k1);
    const CMat<N> k3 = a_mid * (v + 0.5 * h * k2);
    const CMat<N> k4 = a1 * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    a0 = a1;
  }
  return {v, steps, unitarity_defect<N>(v)};
}

/// Arg Tr[rho0 V] on the principal branch; degenerate when |Tr[rho0 V]| is
/// below holonomy_trace_threshold.
template <int N>
PhaseValue uhlmann_phase(const CMat<N>& rho0, const Holonomy<N>& hol) {
  return PhaseValue::from_complex((rho0 * hol.V).trace(), holonomy_trace_threshold);
}

template <int N>
struct ConvergedPhase {
  PhaseValue phase;
  Holonomy<N> holonomy;
  double last_change = 0.0;  // phase change over the final doubling
};

/// Step doubling from `steps` until two successive phases agree to `tol`.
template <int N, class F>
  requires ConnectionField<F, N>
ConvergedPhase<N> converged_uhlmann_phase(const F& connection, const CMat<N>& rho0, double phi0,
                                          int steps = default_holonomy_steps,
                                          double tol = default_phase_tolerance,
                                          int max_steps = max_holonomy_steps) {
  Holonomy<N> coarse = integrate_holonomy<N>(connection, phi0, steps);
  PhaseValue coarse_phase = uhlmann_phase<N>(rho0, coarse);
  double change = 0.0;
  for (int n = 2 * steps; n <= max_steps; n *= 2) {
    Holonomy<N> fine = integrate_holonomy<N>(connection, phi0, n);
    const PhaseValue fine_phase = uhlmann_phase<N>(rho0, fine);
    if (!fine_phase.defined() && !coarse_phase.defined()) return {fine_phase, fine, 0.0};
    if (fine_phase.defined() && coarse_phase.defined()) {
      change = std::abs(angle_difference(fine_phase.angle, coarse_phase.angle));
      if (change <= tol) return {fine_phase, fine, change};
    }
    coarse = fine;
    coarse_phase = fine_phase;
  }
  throw ConvergenceFailure("holonomy phase did not converge to " + std::to_string(tol) + " within " +
                           std::to_string(max_steps) + " steps");
}

// ----------------------------- entry points ----------------------------------

/// Numerical Uhlmann phase of reduced state s of the depolarized eigenstate.
inline PhaseValue numeric_uhlmann_subsystem(const ModelParams& params, Subsystem s,
                                            int steps = default_holonomy_steps,
                                            double tol = default_phase_tolerance) {
  params.validate();
  const QubitState mixed = depolarize_reduced(reduce(params.j, params.theta, params.g, s), params.q);
  const ReducedConnection conn(mixed);
  if (conn.vanishes()) return PhaseValue::trivial();
  const auto result = converged_uhlmann_phase<2>(conn, conn.density(params.phi0), params.phi0, steps, tol);
  return result.phase;
}

/// Numerical Uhlmann phase of the composite depolarized eigenstate.
inline PhaseValue numeric_uhlmann_composite(const ModelParams& params, int steps = default_holonomy_steps,
                                            double tol = default_phase_tolerance) {
  const CompositeConnection conn(params);
  if (conn.vanishes()) return PhaseValue::trivial();
  const auto result = converged_uhlmann_phase<4>(conn, conn.density(params.phi0), params.phi0, steps, tol);
  return result.phase;
}

}  // namespace uhlmann
