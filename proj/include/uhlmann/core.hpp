// core.hpp: shared types, error hierarchy and angle utilities.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uhlmann {

using cplx = std::complex<double>;

template <int N>
using CMat = Eigen::Matrix<cplx, N, N>;
template <int N>
using CVec = Eigen::Matrix<cplx, N, 1>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Critical coupling of the undepolarized equator transition, 2/sqrt(3).
inline constexpr double critical_coupling_pure = 2.0 / std::numbers::sqrt3;

/// Largest depolarization strength that still admits an equator transition,
/// 1 - sqrt(3)/2.
inline constexpr double max_transition_depolarization = 1.0 - std::numbers::sqrt3 / 2.0;

// --------------------------------- errors ------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument (NaN, out-of-range parameter, misuse of a pure-state formula).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The eigenvector formula breaks down (vanishing denominator or norm).
class DomainBoundary : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Depolarization strength outside the interval that admits a transition.
class OutOfTransitionRange : public Error {
 public:
  using Error::Error;
};

/// Winding number requested on a curve that passes through the root.
class IllPosed : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

// ------------------------------- subsystems ----------------------------------

enum class Subsystem { A, B };

inline constexpr std::string_view to_string(Subsystem s) noexcept {
  return s == Subsystem::A ? "A" : "B";
}

// --------------------------------- angles ------------------------------------

/// Wrap an angle onto the principal branch (-pi, pi].
inline double wrap_angle(double x) noexcept {
  double r = std::remainder(x, two_pi);
  if (r <= -pi) r += two_pi;
  return r;
}

/// Shortest signed distance between two angles, in (-pi, pi].
inline double angle_difference(double a, double b) noexcept { return wrap_angle(a - b); }

/// Arg on the principal branch (-pi, pi]. Imaginary parts at rounding level
/// relative to the real part are treated as zero, so a negative real number
/// always maps to +pi and never to -pi + ulp.
inline double principal_arg(cplx z) noexcept {
  const double re = z.real();
  const double im = z.imag();
  if (std::abs(im) <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(re)) {
    return re < 0.0 ? pi : 0.0;
  }
  return std::atan2(im, re);
}

// ------------------------------- phase value ---------------------------------

enum class PhaseStatus {
  ok,
  trivial_holonomy,  // zero connection; phase defined as 0
  degenerate,        // Arg of a vanishing number (phase vortex)
};

inline constexpr std::string_view to_string(PhaseStatus s) noexcept {
  switch (s) {
    case PhaseStatus::ok: return "ok";
    case PhaseStatus::trivial_holonomy: return "trivial";
    case PhaseStatus::degenerate: return "degenerate";
  }
  return "unknown";
}

/// A geometric phase on the principal branch, with the raw (unwrapped) value
/// where one exists and the modulus of the complex number it is the Arg of.
struct PhaseValue {
  double angle = 0.0;     // radians, in (-pi, pi]
  double unwrapped = 0.0; // radians, as produced before wrapping
  double modulus = 1.0;   // |z| diagnostic; 1 for phases that are not an Arg
  PhaseStatus status = PhaseStatus::ok;

  bool defined() const noexcept { return status != PhaseStatus::degenerate; }

  /// Angle in units of pi, in (-1, 1].
  double in_pi() const noexcept { return angle / pi; }

  static PhaseValue from_angle(double raw) noexcept {
    return PhaseValue{wrap_angle(raw), raw, 1.0, PhaseStatus::ok};
  }

  /// Arg of z; degenerate when |z| < threshold.
  static PhaseValue from_complex(cplx z, double threshold) noexcept {
    const double m = std::abs(z);
    if (!(m >= threshold)) return PhaseValue{0.0, 0.0, m, PhaseStatus::degenerate};
    const double a = principal_arg(z);
    return PhaseValue{a, a, m, PhaseStatus::ok};
  }

  static PhaseValue trivial() noexcept {
    return PhaseValue{0.0, 0.0, 1.0, PhaseStatus::trivial_holonomy};
  }
};

// -------------------------------- checking -----------------------------------

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

inline void require_depolarization(double q) {
  require_finite(q, "q");
  if (q < 0.0 || q > 1.0) throw InvalidArgument("q must lie in [0, 1]");
}

inline void require_index(int j) {
  if (j < 1 || j > 4) throw InvalidArgument("eigenstate index must be 1, 2, 3 or 4");
}

}  // namespace detail

}  // namespace uhlmann
