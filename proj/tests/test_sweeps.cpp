#include "oracles.hpp"

#include <catch2/catch.hpp>

#include <sstream>

using namespace uhlmann;
using Catch::Matchers::WithinAbs;

namespace {

std::string csv_of(const SweepSpec& spec, unsigned threads) {
  std::ostringstream os;
  write_csv(os, run_sweep(spec, threads));
  return os.str();
}

}  // namespace

TEST_CASE("sweep settings are validated", "[sweeps]") {
  SweepSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.theta = {0.0, 4.0, 5};
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.theta = {1.0, 1.0, 1};
  CHECK_NOTHROW(spec.validate());
  spec.theta = {1.0, 2.0, 1};
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.theta = {0.0, pi, 3};
  spec.q_list = {};
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.q_list = {0.0};
  spec.selector = Selector::composite;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.quantity = Quantity::berry;
  CHECK_NOTHROW(spec.validate());
  CHECK(parse_quantity("winding") == Quantity::winding);
  CHECK(!parse_quantity("nope"));
  CHECK(parse_selector("composite") == Selector::composite);
}

TEST_CASE("row ordering and shape", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {0.5, 1.5, 3};
  spec.g = {0.5, 1.0, 2};
  spec.q_list = {0.0, 0.1};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].q == 0.0);
  CHECK(rows[6].q == 0.1);
  CHECK(*rows[0].theta == 0.5);
  CHECK(rows[0].g == 0.5);
  CHECK(rows[1].g == 1.0);
  CHECK(*rows[2].theta == 1.0);
}

TEST_CASE("sweeps are deterministic across thread counts", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {0.0, pi, 21};
  spec.g = {0.2, 2.5, 21};
  spec.q_list = {0.0, 0.05};
  spec.selector = Selector::B;
  const std::string one = csv_of(spec, 1);
  CHECK(one == csv_of(spec, 4));
  CHECK(one == csv_of(spec, 0));
  CHECK(one.rfind(std::string(csv_header) + "\n", 0) == 0);
  CHECK(one.find('\r') == std::string::npos);
}

TEST_CASE("vortex flag on a phase map", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {0.0, pi, 60};
  spec.g = {0.2, 2.5, 60};
  const auto rows = run_sweep(spec);
  int vortices = 0;
  for (const auto& r : rows) {
    if (r.flag != RowFlag::vortex) continue;
    ++vortices;
    CHECK(std::abs(*r.theta - pi / 2) < pi / 59);
    CHECK(std::abs(r.g - critical_coupling_pure) < 2.3 / 59 + 1e-12);
    CHECK(r.value.has_value());
  }
  CHECK(vortices == 1);
}

TEST_CASE("equator line steps at the critical coupling", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {pi / 2, pi / 2, 1};
  spec.g = {0.01, 2.0, 200};
  spec.q_list = {0.0, 0.075, 0.1073, 0.13};
  const auto rows = run_sweep(spec);
  for (const auto& r : rows) {
    if (!r.value) {
      CHECK(r.flag == RowFlag::degenerate);
      continue;
    }
    const double gc = critical_coupling(r.q);
    CHECK(*r.value == (r.g < gc ? 1.0 : 0.0));
  }
}

TEST_CASE("concurrence along a line rises with g", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {pi / 4, pi / 4, 1};
  spec.g = {0.0, 5.0, 40};
  spec.quantity = Quantity::concurrence;
  const auto rows = run_sweep(spec);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(*rows[k].value > *rows[k - 1].value);
}

TEST_CASE("boundary points become flags", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {0.0, pi, 3};
  spec.g = {1.0, 1.0, 1};
  spec.j = 3;
  const auto rows = run_sweep(spec);
  CHECK(rows[0].flag == RowFlag::boundary);
  CHECK(!rows[0].value);
  CHECK(rows[1].value.has_value());
  CHECK(csv_line(rows[0]).back() == 'y');
}

TEST_CASE("winding sweep", "[sweeps]") {
  SweepSpec spec;
  spec.quantity = Quantity::winding;
  spec.g = {0.5, 2.0, 2};
  spec.q_list = {0.0};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(!rows[0].theta);
  CHECK(*rows[0].value == 1.0);
  CHECK(*rows[1].value == 0.0);
  CHECK(csv_line(rows[0]).front() == ',');
}

TEST_CASE("cross validation", "[sweeps]") {
  SweepSpec spec;
  spec.theta = {0.1, pi - 0.1, 12};
  spec.g = {0.1, 3.0, 12};
  spec.q_list = {0.0};
  const ValidationReport rep = cross_validate(spec);
  CHECK(rep.passed);
  CHECK(rep.compared == 144);
  CHECK(rep.max_error < 1e-7);

  spec.q_list = {1.0};
  const ValidationReport full = cross_validate(spec);
  CHECK(full.passed);
  CHECK(full.max_error == 0.0);

  spec.q_list = {1e-4};
  spec.selector = Selector::composite;
  spec.theta = {0.3, 2.8, 4};
  spec.g = {0.2, 2.0, 4};
  const ValidationReport comp = cross_validate(spec, 1e-3);
  CHECK(comp.passed);
  CHECK(comp.max_error < 1e-3);
}

TEST_CASE("number formatting", "[sweeps]") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(pi) == "3.14159265359");
  CHECK(format_number(1e-20) == "1e-20");
}
