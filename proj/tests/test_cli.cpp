#include <cmath>
#include <string>

#include "helpers.hpp"
#include "qwass/cost.hpp"
#include "qwass/instance.hpp"
#include "qwass/random.hpp"
#include "qwass/report.hpp"
#include "qwass/verify.hpp"

using namespace qwass;
using qwass::testing::max_diff;

namespace {

struct Position {
  std::size_t line;
  std::size_t column;
};

Position parse_error_at(const std::string& text) {
  try {
    parse_instance(text, "case");
  } catch (const ParseError& e) {
    CHECK(e.source() == "case");
    return {e.line(), e.column()};
  }
  FAIL("no parse error for: " << text);
  return {0, 0};
}

}  // namespace

TEST_SUITE("instance files") {

TEST_CASE("Bloch vectors and defaults") {
  const InstanceFile f = parse_instance("# pair\nrho = [0, 0, 0.5]\n\nomega = [0, 0, -0.5]\n");
  REQUIRE(f.rho);
  REQUIRE(f.omega);
  CHECK(f.rho->bloch);
  CHECK(max_diff(f.rho->state.matrix(), state_z(0.5).matrix()) == 0.0);
  CHECK(max_diff(f.omega->state.matrix(), state_z(-0.5).matrix()) == 0.0);
  CHECK(f.cost == CostKind::symm);
  CHECK(f.observables == ObservableKind::pauli_triple);
  CHECK(f.p == 2.0);
  CHECK(f.mode == TransportMode::joint);
}

TEST_CASE("explicit complex matrices") {
  const InstanceFile f = parse_instance(
      "rho = [[0.5, [0, -0.5]], [[0, 0.5], 0.5]]\n"
      "omega = [[1, 0], [0, 0]]\n"
      "cost = \"z\"\np = 1\nmode = \"nonlinear\"\n");
  CHECK_FALSE(f.rho->bloch);
  CHECK(max_diff(f.rho->state.matrix(), state_from_bloch({{0, 1, 0}}).matrix()) <= 1e-15);
  CHECK(f.cost == CostKind::z);
  CHECK(f.p == 1.0);
  CHECK(f.mode == TransportMode::nonlinear);
}

TEST_CASE("custom observables and cost matrix") {
  const InstanceFile f = parse_instance(
      "rho = [0, 0, 0]\nomega = [0, 0, 0]\n"
      "observables = [[[1, 0], [0, -1]]]\n"
      "cost = \"custom\"\n"
      "cost_matrix = [[0,0,0,0],[0,4,0,0],[0,0,4,0],[0,0,0,0]]\n");
  CHECK(f.observables == ObservableKind::custom);
  REQUIRE(f.custom_observables.size() == 1);
  REQUIRE(f.cost_matrix);
  CHECK(max_diff(*f.cost_matrix, cost_z(2.0)) == 0.0);
}

TEST_CASE("syntax errors carry line and column") {
  const Position pos = parse_error_at("rho = [0, 0, 0]\nomega = [0, 0,, 0]\n");
  CHECK(pos.line == 2);
  CHECK(pos.column == 15);
  const Position unterminated = parse_error_at("rho = [0, 0, 0.5\n");
  CHECK(unterminated.line == 1);
  CHECK(unterminated.column == 17);
}

TEST_CASE("structural errors") {
  CHECK(parse_error_at("rho [0, 0, 0]\n").line == 1);
  const Position missing = parse_error_at("rho =   \n");
  CHECK(missing.line == 1);
  CHECK(missing.column == 6);
  const Position unknown = parse_error_at("rho = [0, 0, 0]\n  sigma = 1\n");
  CHECK(unknown.line == 2);
  CHECK(unknown.column == 3);
  const Position dup = parse_error_at("rho = [0, 0, 0]\nrho = [0, 0, 0]\n");
  CHECK(dup.line == 2);
  CHECK(dup.column == 1);
  CHECK(parse_error_at("rho = [0, 0, 0]\n").line == 0);
}

TEST_CASE("semantic errors point at the value") {
  const Position outside = parse_error_at("rho = [0, 0, 2]\nomega = [0, 0, 0]\n");
  CHECK(outside.line == 1);
  CHECK(outside.column == 7);
  const Position negative = parse_error_at("rho = [0,0,0]\nomega =  [[2, 0], [0, -1]]\n");
  CHECK(negative.line == 2);
  CHECK(negative.column == 10);
  CHECK(parse_error_at("rho = [0,0,0]\nomega = [0,0,0]\np = 0.5\n").line == 3);
  CHECK(parse_error_at("rho = [0,0,0]\nomega = [0,0,0]\ncost = \"l2\"\n").line == 3);
  CHECK(parse_error_at("rho = [0,0,0]\nomega = [0,0,0]\nmode = 3\n").line == 3);
  CHECK(parse_error_at("rho = [0,0,0]\nomega = [[1,0,0],[0,0,0],[0,0,0]]\n").line == 2);
  CHECK(parse_error_at("rho = [0,0,0]\nomega = [0,0,0]\ncost = \"custom\"\n").line == 3);
}

TEST_CASE("load_instance reports unreadable files") {
  try {
    load_instance("/nonexistent/instance.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 0);
  }
}

TEST_CASE("make_instance by cost and mode") {
  InstanceFile f = parse_instance("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\n");
  TransportInstance inst = make_instance(f);
  CHECK(inst.factors == 1);
  CHECK(max_diff(inst.cost, cost_symm(2.0)) == 0.0);

  f.mode = TransportMode::linearized;
  inst = make_instance(f);
  CHECK(inst.factors == 3);
  CHECK(inst.cost.dim() == 64);

  f.cost = CostKind::factorized;
  f.mode = TransportMode::nonlinear;
  inst = make_instance(f);
  CHECK(inst.factors == 1);
  CHECK(inst.mode == TransportMode::nonlinear);

  f.cost = CostKind::general;
  CHECK_THROWS_AS(make_instance(f), InvalidArgument);
  f.mode = TransportMode::linearized;
  f.observables = ObservableKind::sigma_z;
  CHECK(make_instance(f).factors == 1);

  f.cost = CostKind::z;
  f.mode = TransportMode::joint;
  CHECK(max_diff(make_instance(f).cost, cost_z(2.0)) == 0.0);
}

TEST_CASE("closed-form detection") {
  auto cf = [](const std::string& text) { return closed_form_distance(parse_instance(text)); };

  const auto symm = cf("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\n");
  REQUIRE(symm);
  CHECK(symm->formula == "symm-collinear");
  CHECK(std::abs(symm->value - 4.0) <= 1e-12);

  const auto xy = cf("rho = [0.5, 0, 0]\nomega = [0, 0, 0]\ncost = \"z\"\n");
  REQUIRE(xy);
  CHECK(xy->formula == "z-xy");
  CHECK(std::abs(xy->value - (2.0 - std::sqrt(3.0))) <= 1e-12);

  const auto axis = cf("rho = [0, 0, 0.5]\nomega = [0, 0, -0.25]\ncost = \"z\"\np = 1\n");
  REQUIRE(axis);
  CHECK(axis->formula == "z-commuting");
  CHECK(std::abs(axis->value - 0.75) <= 1e-12);

  CHECK_FALSE(cf("rho = [0.5, 0, 0]\nomega = [0, 0.3, 0]\n"));
  CHECK_FALSE(cf("rho = [0.5, 0, 0]\nomega = [0, 0, 0.3]\ncost = \"z\"\n"));
  CHECK_FALSE(cf("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\nmode = \"linearized\"\n"));

  const auto div = closed_form_divergence(parse_instance("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\n"));
  REQUIRE(div);
  CHECK(std::abs(div->value - 2.0 * std::sqrt(3.0)) <= 1e-12);
  const auto div_z = closed_form_divergence(parse_instance("rho = [0, 0, 0]\nomega = [0.5, 0, 0]\ncost = \"z\"\n"));
  REQUIRE(div_z);
  CHECK(std::abs(div_z->value - (1.0 - std::sqrt(3.0) / 2.0)) <= 1e-12);
}

TEST_CASE("bloch_of inverts state_from_bloch") {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const BlochVector r{random_bloch(rng)};
    const BlochVector back = bloch_of(state_from_bloch(r));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(back.r[k] - r.r[k]) <= 1e-14);
  }
}

}  // TEST_SUITE

TEST_SUITE("reports") {

TEST_CASE("round12 keeps 12 significant digits") {
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(2.0) == 2.0);
  CHECK(round12(-1.23456789012345e-9) == -1.23456789012e-9);
  CHECK(round12(round12(M_PI)) == round12(M_PI));
}

TEST_CASE("distance records survive a JSON round trip") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    InstanceFile f;
    f.rho = StateSpec{random_density(2, rng), std::nullopt};
    const BlochVector r{random_bloch(rng)};
    f.omega = StateSpec{state_from_bloch(r), r};
    f.cost = i % 2 == 0 ? CostKind::symm : CostKind::z;
    f.p = i % 3 == 0 ? 1.0 : 2.0;
    const TransportResult res = wasserstein_distance(make_instance(f));
    ReportRecord record = make_distance_record(f, res, 0.0123456789);
    if (i % 4 == 0) {
      record.divergence = DivergenceReport{1.0 / 3.0, 0.1, 0.2, round12(2.0 / 7.0), round12(std::sqrt(2.0 / 7.0))};
      record.divergence->cross = round12(record.divergence->cross);
    }
    const ReportRecord back = parse_record(serialize(record));
    CHECK(back == record);
    CHECK(serialize(back) == serialize(record));
  }
}

TEST_CASE("closed-form comparison is attached when a formula applies") {
  const InstanceFile f = parse_instance("rho = [0.5, 0, 0]\nomega = [0, 0, 0]\ncost = \"z\"\n");
  const ReportRecord record = make_distance_record(f, wasserstein_distance(make_instance(f)), 0.0);
  REQUIRE(record.closed_form);
  CHECK(record.closed_form->formula == "z-xy");
  CHECK(record.closed_form->deviation <= 1e-6);
  REQUIRE(record.certificate);
  CHECK(record.certificate->passed);
  CHECK(record.status == "optimal");
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(parse_record("{"), InvalidArgument);
  CHECK_THROWS_AS(parse_record("{\"command\": \"distance\"}"), InvalidArgument);
}

TEST_CASE("human format lists the main fields") {
  const InstanceFile f = parse_instance("rho = [0, 0, 0.5]\nomega = [0, 0, -0.5]\n");
  const std::string text = format_human(make_distance_record(f, wasserstein_distance(make_instance(f)), 0.0));
  for (const char* field : {"primal", "dual", "gap", "distance", "certificate", "closed form"}) {
    CHECK(text.find(field) != std::string::npos);
  }
}

}  // TEST_SUITE

TEST_SUITE("verify") {

TEST_CASE("suite list") {
  const auto names = verify_suites();
  CHECK(names.size() == 14);
  CHECK_THROWS_AS(run_verify("no-such-suite"), InvalidArgument);
  VerifyOptions bad;
  bad.density = 0;
  CHECK_THROWS_AS(run_verify("symm-commuting", bad), InvalidArgument);
}

TEST_CASE("rows are sorted and deterministic") {
  VerifyOptions opts;
  opts.samples = 200;
  opts.seed = 11;
  const VerifyReport a = run_verify("triangle-z", opts);
  const VerifyReport b = run_verify("triangle-z", opts);
  REQUIRE(a.cases.size() == 200);
  CHECK(a.passed);
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(a.cases[i].key == b.cases[i].key);
    CHECK(a.cases[i].value == b.cases[i].value);
    if (i > 0) CHECK(a.cases[i - 1].key < a.cases[i].key);
  }
  opts.seed = 12;
  CHECK(run_verify("triangle-z", opts).cases[0].value != a.cases[0].value);
}

TEST_CASE("small grid passes") {
  VerifyOptions opts;
  opts.density = 5;
  const VerifyReport report = run_verify("symm-commuting", opts);
  CHECK(report.cases.size() == 50);
  CHECK(report.failures == 0);
  CHECK(report.passed);
  CHECK(report.cases.front().key == "p1/000/000");
}

TEST_CASE("exploratory suites never fail") {
  VerifyOptions opts;
  opts.samples = 10;
  const VerifyReport report = run_verify("triangle-z-offplane", opts);
  CHECK(report.exploratory);
  CHECK(report.passed);
}

}  // TEST_SUITE
