// sweeps.hpp: grid sweeps over (theta, g, q), CSV output and the
// numeric-versus-closed-form cross validation report.

#pragma once

#include "uhlmann/closed_form.hpp"
#include "uhlmann/core.hpp"
#include "uhlmann/entanglement.hpp"
#include "uhlmann/holonomy.hpp"
#include "uhlmann/spin_model.hpp"
#include "uhlmann/states.hpp"
#include "uhlmann/topology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace uhlmann {

enum class Selector { A, B, composite };
enum class Quantity { uhlmann_numeric, uhlmann_closed, berry, interferometric, concurrence, winding };

inline constexpr std::string_view to_string(Selector s) noexcept {
  switch (s) {
    case Selector::A: return "A";
    case Selector::B: return "B";
    case Selector::composite: return "composite";
  }
  return "unknown";
}

inline constexpr std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::uhlmann_numeric: return "uhlmann_numeric";
    case Quantity::uhlmann_closed: return "uhlmann_closed";
    case Quantity::berry: return "berry";
    case Quantity::interferometric: return "interferometric";
    case Quantity::concurrence: return "concurrence";
    case Quantity::winding: return "winding";
  }
  return "unknown";
}

inline std::optional<Selector> parse_selector(std::string_view s) {
  if (s == "A" || s == "a") return Selector::A;
  if (s == "B" || s == "b") return Selector::B;
  if (s == "composite" || s == "AB") return Selector::composite;
  return std::nullopt;
}

inline std::optional<Quantity> parse_quantity(std::string_view s) {
  for (Quantity q : {Quantity::uhlmann_numeric, Quantity::uhlmann_closed, Quantity::berry, Quantity::interferometric,
                     Quantity::concurrence, Quantity::winding}) {
    if (s == to_string(q)) return q;
  }
  return std::nullopt;
}

inline Subsystem subsystem_of(Selector s) {
  if (s == Selector::composite) throw InvalidArgument("selector is not a subsystem");
  return s == Selector::A ? Subsystem::A : Subsystem::B;
}

struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> points() const { return linspace(min, max, static_cast<std::size_t>(count)); }
};

struct SweepSpec {
  Range theta{0.0, pi, 2};
  Range g{0.0, 2.0, 2};
  std::vector<double> q_list{0.0};
  int j = 2;
  Selector selector = Selector::A;
  Quantity quantity = Quantity::uhlmann_closed;
  int steps = default_holonomy_steps;

  void validate() const {
    auto check_range = [](const Range& r, const char* name) {
      detail::require_finite(r.min, name);
      detail::require_finite(r.max, name);
      if (r.count < 1) throw InvalidArgument(std::string(name) + " count must be positive");
      if (r.count == 1 && r.min != r.max) throw InvalidArgument(std::string(name) + " range with one point needs min == max");
      if (r.count >= 2 && !(r.min < r.max)) throw InvalidArgument(std::string(name) + " range needs min < max");
    };
    check_range(theta, "theta");
    check_range(g, "g");
    if (theta.min < 0.0 || theta.max > pi) throw InvalidArgument("theta range must lie in [0, pi]");
    if (g.min < 0.0) throw InvalidArgument("g range must be non-negative");
    if (q_list.empty()) throw InvalidArgument("q list is empty");
    for (double q : q_list) detail::require_depolarization(q);
    detail::require_index(j);
    if (steps < min_holonomy_steps) throw InvalidArgument("steps must be >= 16");
    if (selector == Selector::composite &&
        (quantity == Quantity::uhlmann_closed || quantity == Quantity::interferometric || quantity == Quantity::winding)) {
      throw InvalidArgument(std::string(to_string(quantity)) + " is only defined for subsystems A and B");
    }
  }
};

enum class RowFlag { none, degenerate, boundary, trivial, vortex, nonconvergent, illposed };

inline constexpr std::string_view to_string(RowFlag f) noexcept {
  switch (f) {
    case RowFlag::none: return "";
    case RowFlag::degenerate: return "degenerate";
    case RowFlag::boundary: return "boundary";
    case RowFlag::trivial: return "trivial";
    case RowFlag::vortex: return "vortex";
    case RowFlag::nonconvergent: return "nonconvergent";
    case RowFlag::illposed: return "illposed";
  }
  return "";
}

struct SweepRow {
  std::optional<double> theta;  // absent for winding rows
  double g = 0.0;
  double q = 0.0;
  int j = 2;
  Selector selector = Selector::A;
  Quantity quantity = Quantity::uhlmann_closed;
  std::optional<double> value;  // phases in units of pi
  RowFlag flag = RowFlag::none;
};

namespace detail {

inline void store_phase(SweepRow& row, const PhaseValue& p) {
  if (p.status == PhaseStatus::degenerate) {
    row.flag = RowFlag::degenerate;
    return;
  }
  row.value = p.in_pi();
  if (p.status == PhaseStatus::trivial_holonomy) row.flag = RowFlag::trivial;
}

inline PhaseValue composed_phase(const ModelParams& mp, Subsystem s) {
  const QubitState mixed = depolarize_reduced(reduce(mp.j, mp.theta, mp.g, s), mp.q);
  return mean_berry(mixed);
}

}  // namespace detail

/// One grid point. Point failures become flags.
inline SweepRow evaluate_point(const SweepSpec& spec, std::optional<double> theta, double g, double q) {
  SweepRow row;
  row.theta = theta;
  row.g = g;
  row.q = q;
  row.j = spec.j;
  row.selector = spec.selector;
  row.quantity = spec.quantity;
  try {
    if (spec.quantity == Quantity::winding) {
      row.value = winding_number(g, q, subsystem_of(spec.selector), 256, spec.j).winding;
      return row;
    }
    const ModelParams mp(*theta, g, q, spec.j);
    switch (spec.quantity) {
      case Quantity::uhlmann_numeric:
        detail::store_phase(row, spec.selector == Selector::composite
                                     ? numeric_uhlmann_composite(mp, spec.steps)
                                     : numeric_uhlmann_subsystem(mp, subsystem_of(spec.selector), spec.steps));
        break;
      case Quantity::uhlmann_closed:
        detail::store_phase(row, uhlmann_subsystem(mp, subsystem_of(spec.selector)));
        break;
      case Quantity::berry:
        detail::store_phase(row, spec.selector == Selector::composite
                                     ? berry_composite(mp.j, mp.theta, mp.g)
                                     : detail::composed_phase(mp, subsystem_of(spec.selector)));
        break;
      case Quantity::interferometric:
        detail::store_phase(row, interferometric_subsystem(mp, subsystem_of(spec.selector)));
        break;
      case Quantity::concurrence: {
        const DensityMatrix4 rho = depolarize(pure_density(mp.j, mp.theta, mp.g, 0.0), q);
        row.value = concurrence_wootters(rho).value;
        break;
      }
      case Quantity::winding: break;
    }
  } catch (const DomainBoundary&) {
    row.value.reset();
    row.flag = RowFlag::boundary;
  } catch (const ConvergenceFailure&) {
    row.value.reset();
    row.flag = RowFlag::nonconvergent;
  } catch (const IllPosed&) {
    row.value.reset();
    row.flag = RowFlag::illposed;
  }
  return row;
}

/// Evaluate f(0..n-1) on worker threads; results are stored by index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f, unsigned threads = 0) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) out[k] = f(k);
  };
  if (threads <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

/// Rows in q-major, then theta, then g order. Winding sweeps have one row per
/// (q, g). Phase maps of a subsystem also get vortex flags on the lower-left
/// corner of each flagged plaquette.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  spec.validate();
  const std::vector<double> thetas = spec.theta.points();
  const std::vector<double> gs = spec.g.points();
  const bool winding = spec.quantity == Quantity::winding;
  const std::size_t nt = winding ? 1 : thetas.size();
  const std::size_t ng = gs.size();
  const std::size_t per_q = nt * ng;
  const std::size_t total = per_q * spec.q_list.size();

  std::vector<SweepRow> rows = parallel_map<SweepRow>(
      total,
      [&](std::size_t idx) {
        const std::size_t iq = idx / per_q;
        const std::size_t rest = idx % per_q;
        const std::optional<double> theta = winding ? std::nullopt : std::optional<double>(thetas[rest / ng]);
        return evaluate_point(spec, theta, gs[rest % ng], spec.q_list[iq]);
      },
      threads);

  const bool phase_map = (spec.quantity == Quantity::uhlmann_closed || spec.quantity == Quantity::uhlmann_numeric) &&
                         spec.selector != Selector::composite && nt >= 2 && ng >= 2;
  if (phase_map) {
    for (std::size_t iq = 0; iq < spec.q_list.size(); ++iq) {
      PhaseGrid grid{thetas, gs, {}};
      grid.values.reserve(per_q);
      for (std::size_t k = 0; k < per_q; ++k) {
        const SweepRow& r = rows[iq * per_q + k];
        if (r.value) {
          grid.values.push_back(PhaseValue::from_angle(*r.value * pi));
        } else {
          grid.values.push_back(PhaseValue{0.0, 0.0, 0.0, PhaseStatus::degenerate});
        }
      }
      std::vector<VortexHit> hits;
      try {
        hits = find_vortices(grid);
      } catch (const GridTooCoarse&) {
        continue;
      }
      for (const VortexHit& h : hits) {
        SweepRow& r = rows[iq * per_q + grid.index(h.i, h.k)];
        if (r.flag == RowFlag::none || r.flag == RowFlag::trivial) r.flag = RowFlag::vortex;
      }
    }
  }
  return rows;
}

// ----------------------------------- CSV -------------------------------------

inline constexpr std::string_view csv_header = "theta,g,q,j,subsystem,quantity,value_pi,flag";

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline std::string csv_line(const SweepRow& r) {
  std::string line;
  if (r.theta) line += format_number(*r.theta);
  line += ',' + format_number(r.g) + ',' + format_number(r.q) + ',' + std::to_string(r.j) + ',';
  line += to_string(r.selector);
  line += ',';
  line += to_string(r.quantity);
  line += ',';
  if (r.value) line += format_number(*r.value);
  line += ',';
  line += to_string(r.flag);
  return line;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << csv_header << '\n';
  for (const SweepRow& r : rows) os << csv_line(r) << '\n';
}

// ----------------------------- cross validation ------------------------------

struct ValidationPoint {
  double theta = 0.0, g = 0.0, q = 0.0;
  double numeric = 0.0;  // radians
  double reference = 0.0;
  double error = 0.0;
};

struct ValidationReport {
  std::size_t points = 0;
  std::size_t compared = 0;
  std::size_t skipped = 0;  // undefined on either side
  double max_error = 0.0;   // radians, circular distance
  double mean_error = 0.0;
  double report_threshold = 1e-6;
  double tolerance = 1e-5;
  std::vector<ValidationPoint> exceeding;  // error > report_threshold
  bool passed = true;                      // no error > tolerance
};

/// Numerical holonomy phase against the closed form (subsystems) or against
/// the composite Berry phase.
inline ValidationReport cross_validate(SweepSpec spec, double tolerance = 1e-5, unsigned threads = 0) {
  spec.quantity = Quantity::uhlmann_numeric;
  spec.validate();
  const std::vector<double> thetas = spec.theta.points();
  const std::vector<double> gs = spec.g.points();
  const std::size_t per_q = thetas.size() * gs.size();
  const std::size_t total = per_q * spec.q_list.size();

  struct Pair {
    ValidationPoint p;
    bool comparable = false;
  };
  const std::vector<Pair> pairs = parallel_map<Pair>(
      total,
      [&](std::size_t idx) {
        Pair out;
        const double q = spec.q_list[idx / per_q];
        const std::size_t rest = idx % per_q;
        out.p.theta = thetas[rest / gs.size()];
        out.p.g = gs[rest % gs.size()];
        out.p.q = q;
        try {
          const ModelParams mp(out.p.theta, out.p.g, q, spec.j);
          PhaseValue numeric, reference;
          if (spec.selector == Selector::composite) {
            numeric = numeric_uhlmann_composite(mp, spec.steps);
            reference = berry_composite(mp.j, mp.theta, mp.g);
          } else {
            numeric = numeric_uhlmann_subsystem(mp, subsystem_of(spec.selector), spec.steps);
            reference = uhlmann_subsystem(mp, subsystem_of(spec.selector));
          }
          if (numeric.defined() && reference.defined()) {
            out.comparable = true;
            out.p.numeric = numeric.angle;
            out.p.reference = reference.angle;
            out.p.error = std::abs(angle_difference(numeric.angle, reference.angle));
          }
        } catch (const Error&) {
          out.comparable = false;
        }
        return out;
      },
      threads);

  ValidationReport rep;
  rep.tolerance = tolerance;
  rep.points = total;
  double sum = 0.0;
  for (const Pair& pr : pairs) {
    if (!pr.comparable) {
      ++rep.skipped;
      continue;
    }
    ++rep.compared;
    sum += pr.p.error;
    rep.max_error = std::max(rep.max_error, pr.p.error);
    if (pr.p.error > rep.report_threshold) rep.exceeding.push_back(pr.p);
    if (pr.p.error > tolerance) rep.passed = false;
  }
  rep.mean_error = rep.compared > 0 ? sum / static_cast<double>(rep.compared) : 0.0;
  return rep;
}

}  // namespace uhlmann
