// entanglement.hpp: two-qubit concurrence and the critical couplings of the
// equator transition.

#pragma once

#include "uhlmann/core.hpp"
#include "uhlmann/states.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

namespace uhlmann {

enum class ConcurrenceMethod { wootters, purity, equator, depolarized_relation, transition };

inline constexpr std::string_view to_string(ConcurrenceMethod m) noexcept {
  switch (m) {
    case ConcurrenceMethod::wootters: return "wootters";
    case ConcurrenceMethod::purity: return "purity";
    case ConcurrenceMethod::equator: return "equator";
    case ConcurrenceMethod::depolarized_relation: return "depolarized-relation";
    case ConcurrenceMethod::transition: return "transition";
  }
  return "unknown";
}

struct ConcurrenceValue {
  double value = 0.0;  // in [0, 1]
  ConcurrenceMethod method = ConcurrenceMethod::wootters;
};

/// sigma_y (x) sigma_y in the model basis {|+-〉, |++〉, |--〉, |-+〉}.
inline Eigen::Matrix4d spin_flip_operator() {
  Eigen::Matrix4d y;
  // clang-format off
  y << 0,  0,  0, 1,
       0,  0, -1, 0,
       0, -1,  0, 0,
       1,  0,  0, 0;
  // clang-format on
  return y;
}

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, l_i the square roots of
/// the eigenvalues of rho (Y rho* Y) in descending order.
///
/// With rho = X X^dagger, those square roots are the singular values of
/// X^T Y X. Taking them from an SVD avoids square roots of rounding-level
/// eigenvalues, which would otherwise cost ~1e-8 on rank-deficient states.
inline ConcurrenceValue concurrence_wootters(const DensityMatrix4& rho) {
  Eigen::SelfAdjointEigenSolver<CMat<4>> es(rho.matrix());
  if (es.info() != Eigen::Success) throw Error("concurrence: eigendecomposition failed");
  const Eigen::Vector4d w = es.eigenvalues();
  if (w.minCoeff() < -1e-12) throw InvalidArgument("concurrence: density matrix is not positive semidefinite");

  CMat<4> x = es.eigenvectors();
  for (int k = 0; k < 4; ++k) x.col(k) *= std::sqrt(std::max(0.0, w(k)));
  const CMat<4> tau = x.transpose() * spin_flip_operator().cast<cplx>() * x;
  Eigen::JacobiSVD<CMat<4>> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  const double value = std::max(0.0, l(0) - l(1) - l(2) - l(3));
  return {std::min(value, 1.0), ConcurrenceMethod::wootters};
}

/// sqrt(2 (1 - Tr[(rho^s)^2])) = 2 sqrt(det rho^s); valid only for reduced
/// states of a pure composite state.
inline ConcurrenceValue concurrence_pure_from_subsystem(const QubitState& qs) {
  if (qs.depolarization != 0.0) {
    throw InvalidArgument("concurrence_pure_from_subsystem: state carries depolarization q > 0");
  }
  const double v = 2.0 * std::sqrt(std::max(0.0, qs.determinant()));
  return {std::min(v, 1.0), ConcurrenceMethod::purity};
}

/// Concurrence of any eigenstate for a field in the equatorial plane.
inline ConcurrenceValue concurrence_equator(double g) {
  detail::require_finite(g, "g");
  if (g < 0.0) throw InvalidArgument("g must be non-negative");
  return {g / std::sqrt(g * g + 4.0), ConcurrenceMethod::equator};
}

/// max{0, (1 - q) C(rho) - q/2} for the depolarized pure state.
inline ConcurrenceValue concurrence_depolarized(ConcurrenceValue pure, double q) {
  detail::require_depolarization(q);
  return {std::max(0.0, (1.0 - q) * pure.value - 0.5 * q), ConcurrenceMethod::depolarized_relation};
}

/// g_c sqrt(4q^2 - 8q + 1) for q in [0, 1 - sqrt(3)/2].
inline double critical_coupling(double q) {
  detail::require_depolarization(q);
  if (q > max_transition_depolarization) {
    throw OutOfTransitionRange("no equator transition for q > 1 - sqrt(3)/2");
  }
  return critical_coupling_pure * std::sqrt(std::max(0.0, 4.0 * q * q - 8.0 * q + 1.0));
}

/// Concurrence of the depolarized state at the critical coupling,
/// max{0, (g_dc / g_c - q) / 2}.
inline ConcurrenceValue transition_concurrence(double q) {
  const double ratio = critical_coupling(q) / critical_coupling_pure;
  return {std::max(0.0, 0.5 * (ratio - q)), ConcurrenceMethod::transition};
}

}  // namespace uhlmann
