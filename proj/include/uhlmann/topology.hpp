// topology.hpp: winding number of the curve w(theta) = -2 z(theta) about the
// origin, equator transition locator, and lattice vortex detection on (theta, g)
// phase maps.

#pragma once

#include "uhlmann/closed_form.hpp"
#include "uhlmann/core.hpp"
#include "uhlmann/entanglement.hpp"
#include "uhlmann/spin_model.hpp"
#include "uhlmann/states.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace uhlmann {

inline constexpr double winding_root_threshold = 1e-9;
inline constexpr double winding_residual_limit = 0.05;
inline constexpr double coarse_link_fraction = 0.05;

struct WindingResult {
  int winding = 0;              // |signed_winding|
  int signed_winding = 0;       // counterclockwise positive
  double accumulated = 0.0;     // total change of arg / 2 pi
  double residual = 0.0;        // |accumulated - signed_winding|
  std::vector<cplx> curve_samples;
  double closure_defect = 0.0;  // |w(pi) - w(0)|
};

/// Accumulated argument of w(theta) = -2 z(theta) over theta in [0, pi] (uniform
/// samples, closed by the chord back to the first point).
inline WindingResult winding_number(double g, double q, Subsystem s, int samples = 256, int j = 2) {
  if (samples < 64) throw InvalidArgument("winding_number: at least 64 theta samples are required");
  detail::require_finite(g, "g");
  if (g < 0.0) throw InvalidArgument("g must be non-negative");
  detail::require_depolarization(q);
  detail::require_index(j);

  auto curve = [&](double theta) { return -2.0 * z_point(ModelParams(theta, g, q, j), s); };

  // The root sits on the equator; probe it even when no sample lands there.
  if (std::abs(curve(pi / 2.0)) < winding_root_threshold) {
    throw IllPosed("winding_number: curve passes through the origin at theta = pi/2");
  }

  WindingResult out;
  out.curve_samples.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double theta = k == samples - 1 ? pi : pi * k / (samples - 1);
    const cplx w = curve(theta);
    if (std::abs(w) < winding_root_threshold) throw IllPosed("winding_number: curve passes through the origin");
    out.curve_samples.push_back(w);
  }

  double total = 0.0;
  for (std::size_t k = 1; k < out.curve_samples.size(); ++k) {
    total += angle_difference(std::arg(out.curve_samples[k]), std::arg(out.curve_samples[k - 1]));
  }
  total += angle_difference(std::arg(out.curve_samples.front()), std::arg(out.curve_samples.back()));
  out.closure_defect = std::abs(out.curve_samples.back() - out.curve_samples.front());

  out.accumulated = total / two_pi;
  out.signed_winding = static_cast<int>(std::lround(out.accumulated));
  out.winding = std::abs(out.signed_winding);
  out.residual = std::abs(out.accumulated - out.signed_winding);
  if (out.residual >= winding_residual_limit) {
    throw IllPosed("winding_number: accumulated argument is not close to an integer; increase samples");
  }
  return out;
}

/// r(g) - 1/2 on the equator, whose root is the transition.
inline double equator_node_function(double g, double q) {
  const double cc = concurrence_equator(g).value;
  const double keep = 1.0 - q;
  return std::sqrt(std::max(0.0, 1.0 - keep * keep * (1.0 - cc * cc))) - 0.5;
}

/// Equator transition coupling by bisection on equator_node_function.
inline double locate_equator_transition(double q, double tol = 1e-13) {
  detail::require_depolarization(q);
  double lo = 0.0;
  double hi = 1e3;
  if (equator_node_function(lo, q) >= 0.0) throw OutOfTransitionRange("no equator transition at this q");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (equator_node_function(mid, q) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// -------------------------------- vortices -----------------------------------

/// Phase values on a (theta, g) lattice, theta-major: value(i, k) at
/// (theta[i], g[k]).
struct PhaseGrid {
  std::vector<double> theta;
  std::vector<double> g;
  std::vector<PhaseValue> values;

  std::size_t index(std::size_t i, std::size_t k) const noexcept { return i * g.size() + k; }
  const PhaseValue& at(std::size_t i, std::size_t k) const { return values[index(i, k)]; }
};

struct VortexHit {
  double theta_cell = 0.0;  // cell center
  double g_cell = 0.0;
  double circulation = 0.0; // radians, counterclockwise in (theta, g)
  std::size_t i = 0, k = 0; // lower-left corner
  bool degenerate = false;  // a corner has no defined phase
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t k = 0; k < n; ++k) v[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return v;
}

/// Closed-form subsystem phase map.
inline PhaseGrid closed_form_phase_grid(const std::vector<double>& theta, const std::vector<double>& g, double q,
                                        Subsystem s, int j = 2) {
  PhaseGrid grid{theta, g, {}};
  grid.values.reserve(theta.size() * g.size());
  for (double t : theta) {
    for (double gg : g) {
      try {
        grid.values.push_back(uhlmann_subsystem(ModelParams(t, gg, q, j), s));
      } catch (const DomainBoundary&) {
        grid.values.push_back(PhaseValue{0.0, 0.0, 0.0, PhaseStatus::degenerate});
      }
    }
  }
  return grid;
}

namespace detail {

inline double link(const PhaseValue& from, const PhaseValue& to) { return angle_difference(to.angle, from.angle); }

}  // namespace detail

/// Plaquette circulation of the wrapped phase; cells with |circulation| > pi
/// or a degenerate corner are reported.
inline std::vector<VortexHit> find_vortices(const PhaseGrid& grid) {
  const std::size_t nt = grid.theta.size();
  const std::size_t ng = grid.g.size();
  if (nt < 2 || ng < 2 || grid.values.size() != nt * ng) throw InvalidArgument("find_vortices: malformed grid");

  std::vector<VortexHit> hits;
  std::vector<char> flagged((nt - 1) * (ng - 1), 0);
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    for (std::size_t k = 0; k + 1 < ng; ++k) {
      const PhaseValue& v00 = grid.at(i, k);
      const PhaseValue& v10 = grid.at(i + 1, k);
      const PhaseValue& v11 = grid.at(i + 1, k + 1);
      const PhaseValue& v01 = grid.at(i, k + 1);
      VortexHit h;
      h.i = i;
      h.k = k;
      h.theta_cell = 0.5 * (grid.theta[i] + grid.theta[i + 1]);
      h.g_cell = 0.5 * (grid.g[k] + grid.g[k + 1]);
      if (!v00.defined() || !v10.defined() || !v11.defined() || !v01.defined()) {
        h.degenerate = true;
      } else {
        h.circulation = detail::link(v00, v10) + detail::link(v10, v11) + detail::link(v11, v01) + detail::link(v01, v00);
        if (std::abs(h.circulation) <= pi) continue;
      }
      flagged[i * (ng - 1) + k] = 1;
      hits.push_back(h);
    }
  }

  // Links not touching a flagged cell must vary slowly.
  auto cell_flagged = [&](std::ptrdiff_t i, std::ptrdiff_t k) {
    if (i < 0 || k < 0 || i + 1 >= static_cast<std::ptrdiff_t>(nt) || k + 1 >= static_cast<std::ptrdiff_t>(ng)) return false;
    return flagged[static_cast<std::size_t>(i) * (ng - 1) + static_cast<std::size_t>(k)] != 0;
  };
  std::size_t links = 0, jumps = 0;
  auto visit = [&](const PhaseValue& a, const PhaseValue& b, bool near_flag) {
    if (near_flag || !a.defined() || !b.defined()) return;
    ++links;
    if (std::abs(detail::link(a, b)) > pi / 2.0) ++jumps;
  };
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t k = 0; k < ng; ++k) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      const auto sk = static_cast<std::ptrdiff_t>(k);
      if (i + 1 < nt) visit(grid.at(i, k), grid.at(i + 1, k), cell_flagged(si, sk) || cell_flagged(si, sk - 1));
      if (k + 1 < ng) visit(grid.at(i, k), grid.at(i, k + 1), cell_flagged(si, sk) || cell_flagged(si - 1, sk));
    }
  }
  if (links > 0 && static_cast<double>(jumps) > coarse_link_fraction * static_cast<double>(links)) {
    throw GridTooCoarse("find_vortices: too many large phase jumps between neighbouring points");
  }
  return hits;
}

/// Sum of wrapped phase differences around the outer boundary of the grid,
/// counterclockwise.
inline double boundary_circulation(const PhaseGrid& grid) {
  const std::size_t nt = grid.theta.size();
  const std::size_t ng = grid.g.size();
  if (nt < 2 || ng < 2 || grid.values.size() != nt * ng) throw InvalidArgument("boundary_circulation: malformed grid");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nt; ++i) total += detail::link(grid.at(i, 0), grid.at(i + 1, 0));
  for (std::size_t k = 0; k + 1 < ng; ++k) total += detail::link(grid.at(nt - 1, k), grid.at(nt - 1, k + 1));
  for (std::size_t i = nt - 1; i > 0; --i) total += detail::link(grid.at(i, ng - 1), grid.at(i - 1, ng - 1));
  for (std::size_t k = ng - 1; k > 0; --k) total += detail::link(grid.at(0, k), grid.at(0, k - 1));
  return total;
}

}  // namespace uhlmann
