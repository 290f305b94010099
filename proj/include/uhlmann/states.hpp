// states.hpp: composite density matrices, the depolarizing channel, reduced
// qubit states and their eigensystem / Bloch representation.
//
// A reduced state has the form
//   rho^s(phi) = [[a, c e^{-i phi}], [c e^{+i phi}, 1 - a]]
// with real (a, c) independent of phi. Subsystem A uses the basis {|+〉, |-〉};
// subsystem B uses {|-〉, |+〉}, the ordering in which its reduced matrix takes
// this form.

#pragma once

#include "uhlmann/core.hpp"
#include "uhlmann/spin_model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>

namespace uhlmann {

/// |c| below this is a diagonal reduced state (zero Uhlmann connection).
inline constexpr double trivial_coherence_threshold = 1e-14;

/// 4x4 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix4 {
 public:
  static constexpr double tolerance = 1e-12;

  explicit DensityMatrix4(const CMat<4>& m) : m_(m) { validate(); }

  const CMat<4>& matrix() const noexcept { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  Eigen::Vector4d eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMat<4>> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  void validate() const {
    if (!m_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tolerance) throw InvalidArgument("density matrix is not Hermitian");
    if (std::abs(m_.trace() - cplx(1.0)) > tolerance) throw InvalidArgument("density matrix trace differs from 1");
    if (eigenvalues().minCoeff() < -tolerance) throw InvalidArgument("density matrix is not positive semidefinite");
  }

  CMat<4> m_;
};

/// Projector onto eigenstate j at loop angle phi.
inline DensityMatrix4 pure_density(int j, double theta, double g, double phi) {
  const CVec<4> v = eigenstate(j, theta, g, phi);
  return DensityMatrix4(v * v.adjoint());
}

/// (q/4) 1 + (1 - q) rho.
inline DensityMatrix4 depolarize(const DensityMatrix4& rho, double q) {
  detail::require_depolarization(q);
  return DensityMatrix4((q / 4.0) * CMat<4>::Identity() + (1.0 - q) * rho.matrix());
}

/// Reduced qubit state with its eigensystem.
///
/// Eigenvalues p1 <= p2; eigenvectors (beta_l e^{-i phi}, 1) / sqrt(N_l) with
/// beta_l = c / (p_l - a). The betas are computed through whichever of p_l - a
/// is free of cancellation and the identity beta_1 beta_2 = -1, so a nearly
/// diagonal state yields one small and one large beta rather than 0/0.
struct QubitState {
  double a = 0.5;
  double c = 0.0;
  Subsystem subsystem = Subsystem::A;
  double depolarization = 0.0;  // q already applied to (a, c)

  double p1 = 0.5, p2 = 0.5;
  double beta1 = 0.0, beta2 = 0.0;
  double norm1 = 1.0, norm2 = 1.0;
  std::optional<double> delta;  // (2a - 1) / (2c), only when c != 0

  static QubitState from_coefficients(double a, double c, Subsystem s, double depolarization = 0.0) {
    detail::require_finite(a, "a");
    detail::require_finite(c, "c");
    detail::require_depolarization(depolarization);
    if (a < -1e-12 || a > 1.0 + 1e-12) throw InvalidArgument("population a must lie in [0, 1]");

    QubitState qs;
    qs.a = a;
    qs.c = c;
    qs.subsystem = s;
    qs.depolarization = depolarization;

    const double radius = std::hypot(1.0 - 2.0 * a, 2.0 * c);
    if (radius > 1.0 + 1e-12) throw InvalidArgument("coefficients do not describe a positive state");
    qs.p1 = std::max(0.0, 0.5 * (1.0 - radius));
    qs.p2 = 0.5 * (1.0 + radius);

    if (!qs.trivial()) qs.delta = (2.0 * a - 1.0) / (2.0 * c);

    if (radius == 0.0) {
      qs.beta1 = qs.beta2 = 0.0;
    } else if (1.0 - 2.0 * a >= 0.0) {
      qs.beta2 = c / (0.5 * (1.0 - 2.0 * a + radius));
      qs.beta1 = qs.beta2 == 0.0 ? -std::numeric_limits<double>::infinity() : -1.0 / qs.beta2;
    } else {
      qs.beta1 = c / (0.5 * (1.0 - 2.0 * a - radius));
      qs.beta2 = qs.beta1 == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / qs.beta1;
    }
    qs.norm1 = qs.beta1 * qs.beta1 + 1.0;
    qs.norm2 = qs.beta2 * qs.beta2 + 1.0;
    return qs;
  }

  /// Diagonal state: the Uhlmann connection vanishes identically.
  bool trivial() const noexcept { return std::abs(c) < trivial_coherence_threshold; }

  double determinant() const noexcept { return a * (1.0 - a) - c * c; }

  /// Length of the Bloch vector, p2 - p1.
  double bloch_radius() const noexcept { return std::hypot(1.0 - 2.0 * a, 2.0 * c); }

  Eigen::Matrix2cd matrix(double phi) const {
    Eigen::Matrix2cd m;
    m << a, std::polar(c, -phi), std::polar(c, phi), 1.0 - a;
    return m;
  }

  /// Eigenvector of level l (1 or 2) at loop angle phi.
  Eigen::Vector2cd eigenvector(int level, double phi) const {
    const double beta = level == 1 ? beta1 : beta2;
    Eigen::Vector2cd v;
    if (std::isinf(beta)) {
      v << std::polar(1.0, -phi), 0.0;
    } else {
      const double inv = 1.0 / std::sqrt(beta * beta + 1.0);
      v << std::polar(beta * inv, -phi), inv;
    }
    return v;
  }
};

/// Reduced state of eigenstate j on subsystem s (pure composite state).
inline QubitState reduce(const EigenComponents& ec, Subsystem s) {
  const auto& u = ec.u;
  double a, c;
  if (s == Subsystem::A) {
    a = (u[0] * u[0] + u[1] * u[1]) / ec.norm;
    c = (u[0] * u[2] + u[1] * u[3]) / ec.norm;
  } else {
    a = (u[0] * u[0] + u[2] * u[2]) / ec.norm;
    c = (u[0] * u[1] + u[2] * u[3]) / ec.norm;
  }
  return QubitState::from_coefficients(a, c, s, 0.0);
}

inline QubitState reduce(int j, double theta, double g, Subsystem s) {
  return reduce(eigenvector_components(j, theta, g), s);
}

/// (q/2) 1 + (1 - q) rho^s: a -> q/2 + (1-q) a, c -> (1-q) c.
inline QubitState depolarize_reduced(const QubitState& qs, double q) {
  detail::require_depolarization(q);
  const double keep = 1.0 - q;
  // Channels compose: (1 - q_total) = (1 - q_prev)(1 - q).
  const double total = qs.depolarization + q - qs.depolarization * q;
  return QubitState::from_coefficients(0.5 * q + keep * qs.a, keep * qs.c, qs.subsystem, total);
}

struct BlochVector {
  Eigen::Vector3d n;
  double radius = 0.0;
};

/// Bloch vector of rho^s(phi), so that rho^s = (1 + n . sigma) / 2.
inline BlochVector bloch(const QubitState& qs, double phi) {
  BlochVector b;
  if (qs.trivial()) {
    b.n = Eigen::Vector3d(0.0, 0.0, 2.0 * qs.a - 1.0);
  } else {
    const double twice_c = 2.0 * qs.c;
    b.n = Eigen::Vector3d(twice_c * std::cos(phi), twice_c * std::sin(phi), twice_c * *qs.delta);
  }
  b.radius = b.n.norm();
  return b;
}

}  // namespace uhlmann
