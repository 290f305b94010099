// uhlmann: command line front end.
//
// Exit codes: 0 success, 1 invalid arguments, 2 validation failure,
// 3 domain error on a single-point query.

#include "uhlmann/uhlmann.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace uhlmann;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_validation = 2;
constexpr int exit_domain = 3;

// Accepts plain numbers and multiples of pi: "pi", "pi/2", "0.25pi", "3pi/4".
double parse_value(const std::string& text) {
  const auto p = text.find("pi");
  if (p == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw InvalidArgument("cannot parse number '" + text + "'");
    return v;
  }
  const std::string head = text.substr(0, p);
  std::string tail = text.substr(p + 2);
  double factor = 1.0;
  if (!head.empty()) {
    std::string h = head;
    if (h.back() == '*') h.pop_back();
    factor = h == "-" ? -1.0 : std::stod(h);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw InvalidArgument("cannot parse number '" + text + "'");
    divisor = std::stod(tail.substr(1));
  }
  return factor * pi / divisor;
}

Range parse_range(const std::string& text, int count) {
  const auto colon = text.find(':');
  Range r;
  r.count = count;
  if (colon == std::string::npos) {
    r.min = r.max = parse_value(text);
  } else {
    r.min = parse_value(text.substr(0, colon));
    r.max = parse_value(text.substr(colon + 1));
  }
  return r;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InvalidArgument("grid must look like TxG, e.g. 200x200");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

Selector selector_from(const std::string& s) {
  const auto v = parse_selector(s);
  if (!v) throw InvalidArgument("subsystem must be A, B or composite");
  return *v;
}

Quantity quantity_from(const std::string& s) {
  const auto v = parse_quantity(s);
  if (!v) throw InvalidArgument("unknown quantity '" + s + "'");
  return *v;
}

bool is_domain_flag(RowFlag f) {
  return f == RowFlag::boundary || f == RowFlag::illposed || f == RowFlag::nonconvergent;
}

struct Options {
  std::string theta = "pi/2";
  std::string g = "1";
  std::vector<std::string> q{"0"};
  int j = 2;
  std::string subsystem = "A";
  std::string quantity = "uhlmann_closed";
  std::string grid = "50x50";
  std::string theta_range = "0:pi";
  std::string g_range = "0:2.5";
  std::string out;
  int steps = default_holonomy_steps;
  double tol = 1e-5;
  int samples = 256;
};

std::vector<double> q_values(const Options& o) {
  std::vector<double> out;
  for (const auto& s : o.q) out.push_back(parse_value(s));
  return out;
}

int cmd_spectrum(const Options& o) {
  const double theta = parse_value(o.theta);
  const double g = parse_value(o.g);
  std::cout << "j,energy,u1,u2,u3,u4,norm\n";
  const auto e = eigenvalues(theta, g);
  for (int j = 1; j <= 4; ++j) {
    std::cout << j << ',' << format_number(e[static_cast<std::size_t>(j - 1)]);
    try {
      const EigenComponents ec = eigenvector_components(j, theta, g);
      for (double u : ec.u) std::cout << ',' << format_number(u);
      std::cout << ',' << format_number(ec.norm) << '\n';
    } catch (const DomainBoundary&) {
      std::cout << ",,,,,\n";
    }
  }
  return exit_ok;
}

int cmd_point(const Options& o, Quantity quantity) {
  SweepSpec spec;
  spec.j = o.j;
  spec.selector = selector_from(o.subsystem);
  spec.quantity = quantity;
  spec.steps = o.steps;
  const double theta = parse_value(o.theta);
  const double g = parse_value(o.g);
  spec.theta = Range{theta, theta, 1};
  spec.g = Range{g, g, 1};
  spec.q_list = q_values(o);
  spec.validate();
  int code = exit_ok;
  std::cout << csv_header << '\n';
  for (double q : spec.q_list) {
    const SweepRow row = evaluate_point(spec, theta, g, q);
    std::cout << csv_line(row) << '\n';
    if (is_domain_flag(row.flag)) code = exit_domain;
  }
  return code;
}

int cmd_concurrence(const Options& o) {
  const double theta = parse_value(o.theta);
  const double g = parse_value(o.g);
  std::cout << "q,wootters,depolarized_relation,subsystem_purity\n";
  for (double q : q_values(o)) {
    const ModelParams mp(theta, g, q, o.j);
    const DensityMatrix4 pure = pure_density(mp.j, theta, g, 0.0);
    const ConcurrenceValue c_pure = concurrence_wootters(pure);
    const ConcurrenceValue c = concurrence_wootters(depolarize(pure, q));
    std::cout << format_number(q) << ',' << format_number(c.value) << ','
              << format_number(concurrence_depolarized(c_pure, q).value) << ','
              << format_number(concurrence_pure_from_subsystem(reduce(mp.j, theta, g, Subsystem::A)).value) << '\n';
  }
  return exit_ok;
}

int cmd_critical(const Options& o) {
  std::cout << "q,critical_coupling,transition_concurrence\n";
  for (double q : q_values(o)) {
    std::cout << format_number(q) << ',' << format_number(critical_coupling(q)) << ','
              << format_number(transition_concurrence(q).value) << '\n';
  }
  return exit_ok;
}

SweepSpec sweep_spec(const Options& o, Quantity quantity) {
  const auto [nt, ng] = parse_grid(o.grid);
  SweepSpec spec;
  spec.theta = parse_range(o.theta_range, nt);
  spec.g = parse_range(o.g_range, ng);
  spec.q_list = q_values(o);
  spec.j = o.j;
  spec.selector = selector_from(o.subsystem);
  spec.quantity = quantity;
  spec.steps = o.steps;
  spec.validate();
  return spec;
}

int cmd_sweep(const Options& o) {
  const SweepSpec spec = sweep_spec(o, quantity_from(o.quantity));
  const std::vector<SweepRow> rows = run_sweep(spec);
  if (o.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open output file '" + o.out + "'");
    write_csv(f, rows);
  }
  return exit_ok;
}

int cmd_winding(const Options& o) {
  const double g = parse_value(o.g);
  const Subsystem s = subsystem_of(selector_from(o.subsystem));
  std::cout << "g,q,subsystem,winding,signed_winding,residual,closure_defect\n";
  int code = exit_ok;
  for (double q : q_values(o)) {
    try {
      const WindingResult w = winding_number(g, q, s, o.samples, o.j);
      std::cout << format_number(g) << ',' << format_number(q) << ',' << to_string(s) << ',' << w.winding << ','
                << w.signed_winding << ',' << format_number(w.residual) << ',' << format_number(w.closure_defect)
                << '\n';
    } catch (const IllPosed& e) {
      std::cerr << "winding: " << e.what() << '\n';
      std::cout << format_number(g) << ',' << format_number(q) << ',' << to_string(s) << ",,,,\n";
      code = exit_domain;
    }
  }
  return code;
}

int cmd_validate(const Options& o) {
  SweepSpec spec = sweep_spec(o, Quantity::uhlmann_numeric);
  const ValidationReport rep = cross_validate(spec, o.tol);
  std::printf("points %zu compared %zu skipped %zu\n", rep.points, rep.compared, rep.skipped);
  std::printf("max_error %.3e rad\nmean_error %.3e rad\n", rep.max_error, rep.mean_error);
  std::printf("above %.0e: %zu\n", rep.report_threshold, rep.exceeding.size());
  for (const ValidationPoint& p : rep.exceeding) {
    std::printf("  theta=%.12g g=%.12g q=%.12g numeric=%.12g reference=%.12g error=%.3e\n", p.theta, p.g, p.q,
                p.numeric / pi, p.reference / pi, p.error);
  }
  std::printf("%s (tolerance %.1e)\n", rep.passed ? "PASS" : "FAIL", rep.tolerance);
  return rep.passed ? exit_ok : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uhlmann, Berry and interferometric phases of two coupled spins"};
  app.require_subcommand(1);
  Options o;

  auto point_opts = [&](CLI::App* c) {
    c->add_option("--theta", o.theta, "field polar angle (accepts pi, pi/2, 0.25pi)");
    c->add_option("--g", o.g, "coupling g");
    c->add_option("--q", o.q, "depolarization strength(s), comma separated")->delimiter(',');
    c->add_option("--j", o.j, "eigenstate index 1..4");
  };
  auto grid_opts = [&](CLI::App* c) {
    c->add_option("--grid", o.grid, "grid size TxG");
    c->add_option("--theta-range", o.theta_range, "theta range a:b");
    c->add_option("--g-range", o.g_range, "g range a:b");
    c->add_option("--q", o.q, "depolarization strength(s), comma separated")->delimiter(',');
    c->add_option("--j", o.j, "eigenstate index 1..4");
    c->add_option("--subsystem", o.subsystem, "A, B or composite");
    c->add_option("--steps", o.steps, "initial RK4 steps for numerical holonomies");
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "energies and eigenvector components");
  spectrum_cmd->add_option("--theta", o.theta, "field polar angle");
  spectrum_cmd->add_option("--g", o.g, "coupling g");

  auto* phase_cmd = app.add_subcommand("phase", "phase at one point (units of pi)");
  point_opts(phase_cmd);
  phase_cmd->add_option("--subsystem", o.subsystem, "A, B or composite");
  phase_cmd->add_option("--quantity", o.quantity, "uhlmann_closed, uhlmann_numeric, berry, interferometric");
  phase_cmd->add_option("--steps", o.steps, "initial RK4 steps");

  auto* conc_cmd = app.add_subcommand("concurrence", "concurrence at one point");
  point_opts(conc_cmd);

  auto* crit_cmd = app.add_subcommand("critical", "critical coupling and transition concurrence");
  crit_cmd->add_option("--q", o.q, "depolarization strength(s)")->delimiter(',');

  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep to CSV");
  grid_opts(sweep_cmd);
  sweep_cmd->add_option("--quantity", o.quantity, "quantity to tabulate");
  sweep_cmd->add_option("--out", o.out, "output file (default stdout)");

  auto* winding_cmd = app.add_subcommand("winding", "winding number of the z curve");
  winding_cmd->add_option("--g", o.g, "coupling g");
  winding_cmd->add_option("--q", o.q, "depolarization strength(s)")->delimiter(',');
  winding_cmd->add_option("--subsystem", o.subsystem, "A or B");
  winding_cmd->add_option("--j", o.j, "eigenstate index 1..4");
  winding_cmd->add_option("--samples", o.samples, "theta samples (>= 64)");

  auto* validate_cmd = app.add_subcommand("validate", "numerical holonomy against closed forms");
  grid_opts(validate_cmd);
  validate_cmd->add_option("--tol", o.tol, "failure tolerance in radians");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_invalid;
  }

  try {
    if (spectrum_cmd->parsed()) return cmd_spectrum(o);
    if (phase_cmd->parsed()) return cmd_point(o, quantity_from(o.quantity));
    if (conc_cmd->parsed()) return cmd_concurrence(o);
    if (crit_cmd->parsed()) return cmd_critical(o);
    if (sweep_cmd->parsed()) return cmd_sweep(o);
    if (winding_cmd->parsed()) return cmd_winding(o);
    if (validate_cmd->parsed()) return cmd_validate(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: cannot parse a number (" << e.what() << ")\n";
    return exit_invalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range (" << e.what() << ")\n";
    return exit_invalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_domain;
  }
  return exit_invalid;
}
