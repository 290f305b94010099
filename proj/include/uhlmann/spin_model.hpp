// spin_model.hpp: spectrum of two coupled spin-1/2 particles, one of which is
// driven by a field along n = (sin t cos p, sin t sin p, cos t).
//
// Rescaled Hamiltonian in the ordered basis {|+-〉, |++〉, |--〉, |-+〉}:
//   H = sigma_1 . n + g (sigma_1^+ sigma_2^+ + sigma_1^- sigma_2^-)
// Eigenstate j is N_j^{-1/2} [u1 e^{-i phi}, u2, u3, u4 e^{+i phi}].

#pragma once

#include "uhlmann/core.hpp"

#include <array>
#include <cmath>

namespace uhlmann {

/// Below this coupling the separable (g -> 0) eigenvectors are used.
inline constexpr double coupling_limit_threshold = 1e-9;
/// Below this |1 - E_j^2| the component formula is reported as broken down.
inline constexpr double denominator_threshold = 1e-18;

/// Full control point: field direction, coupling, depolarization, eigenstate.
struct ModelParams {
  double theta = pi / 2.0;
  double g = 1.0;
  double q = 0.0;
  int j = 2;
  double phi0 = 0.0;

  ModelParams() = default;
  ModelParams(double theta_, double g_, double q_ = 0.0, int j_ = 2, double phi0_ = 0.0)
      : theta(theta_), g(g_), q(q_), j(j_), phi0(phi0_) {
    validate();
  }

  void validate() const {
    detail::require_finite(theta, "theta");
    detail::require_finite(g, "g");
    detail::require_finite(phi0, "phi0");
    if (theta < 0.0 || theta > pi) throw InvalidArgument("theta must lie in [0, pi]");
    if (g < 0.0) throw InvalidArgument("g must be non-negative");
    detail::require_depolarization(q);
    detail::require_index(j);
  }
};

/// Real eigenvector components of one eigenstate and their squared norm.
struct EigenComponents {
  std::array<double, 4> u{};
  double norm = 0.0;  // N_j = sum u_i^2
};

struct SpectralData {
  std::array<double, 4> energies{};
  std::array<EigenComponents, 4> states{};
};

namespace detail {

inline void require_angles(double theta, double g) {
  require_finite(theta, "theta");
  require_finite(g, "g");
  if (theta < 0.0 || theta > pi) throw InvalidArgument("theta must lie in [0, pi]");
  if (g < 0.0) throw InvalidArgument("g must be non-negative");
}

// 1 - E^2 for the two branches, in cancellation-free form.
inline double one_minus_e2(bool upper, double s, double g) noexcept {
  if (g == 0.0) return 0.0;
  const double rho = std::sqrt(g * g + 4.0 * s * s);
  return upper ? -0.5 * g * (g + rho) : 2.0 * g * s * s / (rho + g);
}

}  // namespace detail

/// Dense 4x4 Hamiltonian, used as an oracle for the analytic eigenpairs.
inline CMat<4> hamiltonian(double theta, double phi, double g) {
  detail::require_angles(theta, g);
  detail::require_finite(phi, "phi");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx em = std::polar(s, -phi);
  const cplx ep = std::polar(s, phi);
  CMat<4> h;
  // clang-format off
  h << c,   0.0, em,  0.0,
       0.0, c,   g,   em,
       ep,  g,   -c,  0.0,
       0.0, ep,  0.0, -c;
  // clang-format on
  return h;
}

/// E_1 = -E_2 >= E_3 = -E_4 >= 0.
inline std::array<double, 4> eigenvalues(double theta, double g) {
  detail::require_angles(theta, g);
  const double s = std::sin(theta);
  const double e1 = std::sqrt(1.0 - detail::one_minus_e2(true, s, g));
  const double e3 = std::sqrt(1.0 - detail::one_minus_e2(false, s, g));
  return {e1, -e1, e3, -e3};
}

/// Components u_j^(1..4) and N_j. Uses the separable limit for g below
/// coupling_limit_threshold; throws DomainBoundary where the formula has no
/// finite value (excited pair j = 3, 4 at the poles, or a vanishing norm).
inline EigenComponents eigenvector_components(int j, double theta, double g) {
  detail::require_index(j);
  detail::require_angles(theta, g);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const bool upper = j <= 2;

  EigenComponents out;
  if (g <= coupling_limit_threshold) {
    // Separable limit: spin A in an eigenstate of sigma.n, spin B in the
    // equatorial state selected by the vanishing coupling.
    switch (j) {
      case 1: out.u = {s, s, 1.0 - c, 1.0 - c}; break;
      case 2: out.u = {s, s, -(1.0 + c), -(1.0 + c)}; break;
      case 3: out.u = {s, -s, 1.0 - c, c - 1.0}; break;
      default: out.u = {s, -s, -(1.0 + c), 1.0 + c}; break;
    }
  } else {
    const double d = detail::one_minus_e2(upper, s, g);
    if (std::abs(d) < denominator_threshold) {
      throw DomainBoundary("eigenvector formula degenerates: 1 - E_j^2 vanishes");
    }
    const double e = eigenvalues(theta, g)[static_cast<std::size_t>(j - 1)];
    double k;  // cos^2 - E^2
    if (upper) {
      k = d - s * s;
    } else {
      const double rho = std::sqrt(g * g + 4.0 * s * s);
      k = -4.0 * s * s * s * s / ((rho + g) * (rho + g));
    }
    const double c_minus_e = (c * e > 0.0) ? k / (c + e) : c - e;
    out.u = {s, g * k / d, -c_minus_e, g * s * c_minus_e / d};
  }
  out.norm = out.u[0] * out.u[0] + out.u[1] * out.u[1] + out.u[2] * out.u[2] + out.u[3] * out.u[3];
  if (!(out.norm > 1e-280)) throw DomainBoundary("eigenvector norm vanishes");
  return out;
}

inline SpectralData spectrum(double theta, double g) {
  SpectralData out;
  out.energies = eigenvalues(theta, g);
  for (int j = 1; j <= 4; ++j) out.states[static_cast<std::size_t>(j - 1)] = eigenvector_components(j, theta, g);
  return out;
}

/// Normalized ket from precomputed components at loop angle phi.
inline CVec<4> eigenstate(const EigenComponents& ec, double phi) {
  const double inv = 1.0 / std::sqrt(ec.norm);
  CVec<4> v;
  v << std::polar(ec.u[0] * inv, -phi), ec.u[1] * inv, ec.u[2] * inv, std::polar(ec.u[3] * inv, phi);
  return v;
}

inline CVec<4> eigenstate(int j, double theta, double g, double phi) {
  detail::require_finite(phi, "phi");
  return eigenstate(eigenvector_components(j, theta, g), phi);
}

/// 〈u_i | d/dphi u_j〉 = i (u_i^4 u_j^4 - u_i^1 u_j^1) / sqrt(N_i N_j).
inline cplx phi_derivative_overlap(const EigenComponents& ui, const EigenComponents& uj) {
  return cplx(0.0, (ui.u[3] * uj.u[3] - ui.u[0] * uj.u[0]) / std::sqrt(ui.norm * uj.norm));
}

}  // namespace uhlmann
