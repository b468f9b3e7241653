#include "doctest.h"
#include "support.hpp"

using namespace qss;
using namespace qss::test;

namespace {

PetviashviliConfig solver_config() {
  PetviashviliConfig c;
  c.max_iter = 300;
  c.tol = 1e-10;
  return c;
}

const GroundStateResult& d1_ground_state() {
  static const GroundStateResult gs =
      petviashvili_solve(make_grid(2, {128, 128}, {30.0, 30.0}), PhysicsParams{}, solver_config());
  return gs;
}

}  // namespace

TEST_CASE("ground state in d = 1 satisfies the bound-state identities") {
  const Grid g = make_grid(2, {128, 128}, {30.0, 30.0});
  const GroundStateResult& gs = d1_ground_state();
  CHECK(gs.residual() <= 1e-10);
  CHECK(gs.iterations < 300);
  CHECK(gs.positivity_min >= -1e-14);
  CHECK(stationary_residual(gs.fields, g, PhysicsParams{}) <= 1e-10);
  CHECK(gs.stabilizer == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(gs.ratios.kgrad_over_j - 0.5) < 1e-6);
  CHECK(std::abs(gs.ratios.i_over_j - 1.5) < 1e-8);
  CHECK(std::abs(gs.ratios.e_over_k + 0.5) < 1e-6);
  const PohozaevReport rep = pohozaev_check(gs, g);
  CHECK(rep.expected_kgrad_over_j == 0.5);
  REQUIRE(rep.expected_e_over_k.has_value());
  CHECK(*rep.expected_e_over_k == -0.5);
  CHECK(rep.passed());

  // Real and radially symmetric: reflection maps the grid onto itself
  // except for the first row, which has no partner.
  double asym = 0.0;
  for (int i = 1; i < 128; ++i) {
    for (int j = 1; j < 128; ++j) {
      asym = std::max(asym, std::abs(gs.fields.u[i * 128 + j] - gs.fields.u[(128 - i) * 128 + (128 - j)]));
    }
  }
  CHECK(asym < 1e-10);
}

TEST_CASE("anisotropic ground state with beta") {
  const Grid g = make_grid(2, {64, 128}, {24.0, 30.0});
  const PhysicsParams p{0.7, 1.3, 0.5, 1.2};
  const GroundStateResult gs = petviashvili_solve(g, p, solver_config());
  CHECK(gs.residual() <= 1e-10);
  CHECK(std::abs(gs.ratios.kgrad_over_j - 0.5) < 1e-6);
  CHECK(std::abs(gs.ratios.i_over_j - 1.5) < 1e-8);
  const PohozaevReport rep = pohozaev_check(gs, g);
  CHECK_FALSE(rep.expected_e_over_k.has_value());
  CHECK(rep.passed());
}

TEST_CASE("solver failures and validation") {
  const Grid g = make_grid(2, {64, 64}, {30.0, 30.0});
  PetviashviliConfig c = solver_config();
  c.max_iter = 3;
  try {
    petviashvili_solve(g, PhysicsParams{}, c);
    FAIL("expected NotConverged");
  } catch (const NotConverged& e) {
    CHECK(e.kind() == ErrorKind::not_converged);
    CHECK(e.partial().iterations == 3);
    CHECK(e.partial().residual() > 1e-10);
  }
  c = solver_config();
  c.relaxation = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = solver_config();
  c.tol = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
  CHECK_THROWS_AS(petviashvili_solve(g, PhysicsParams{1.0, 1.0, 0.0, -1.0}, solver_config()), Error);
  CHECK_THROWS_AS(petviashvili_solve(g, PhysicsParams{1.0, 1.0, -5.0, 1.0}, solver_config()), Error);
  CHECK(stationary_residual(zero_fields(g), g, PhysicsParams{}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("rescale factors follow the scaling laws") {
  for (int n = 2; n <= 5; ++n) {
    const double J = 1.7, M = 3.1;
    const ScaleTarget target{0.4 * n, 2.5};
    const ScaleFactors f = rescale_factors(J, M, target, n);
    CHECK(rel_diff(std::pow(f.nu, 3) * std::pow(f.zeta, -n) * J, target.J) < 1e-14);
    CHECK(rel_diff(std::pow(f.nu, 2) * std::pow(f.zeta, -n) * M, target.M) < 1e-14);
  }
}

TEST_CASE("dilation resamples the band-limited interpolant") {
  const Grid g = make_grid(2, {64, 64}, {24.0, 24.0});
  const FieldPair f = sample_preset(g, GaussianPreset{1.0, 0.5, 1.0});
  for (double zeta : {0.8, 1.25}) {
    const FieldPair d = dilate(f, g, zeta);
    const ComplexArray exact = sample(g, [&](const std::vector<double>& x) {
      return cplx{std::exp(-zeta * zeta * norm2(x) / 2), 0.0};
    });
    CHECK(max_abs_diff(d.u, exact) < 1e-12);
  }
  // zeta = 1 reproduces the samples.
  const Grid h = make_grid(2, {16, 16}, {2 * std::numbers::pi, 2 * std::numbers::pi});
  FieldPair t = zero_fields(h);
  t.u = sample(h, [](const std::vector<double>& x) { return cplx{std::cos(3 * x[0]) + std::sin(x[1]), 0.0}; });
  t.v = t.u;
  const FieldPair same = dilate(t, h, 1.0);
  CHECK(max_abs_diff(same.u, t.u) < 1e-13);
}

TEST_CASE("Lemma-1 rescaling hits its targets and keeps the quotient") {
  const Grid g = make_grid(2, {128, 128}, {40.0, 40.0});
  const FieldPair f = sample_preset(g, GaussianPreset{1.2, 0.7, 2.0});
  const PhysicsParams p{};
  const ScaleTarget target{2.0 * interaction(f, g), 1.5 * mass(f, g)};
  const FieldPair r = lemma1_rescale(f, g, target);
  CHECK(rel_diff(interaction(r, g), target.J) < 1e-10);
  CHECK(rel_diff(mass(r, g), target.M) < 1e-10);
  CHECK(rel_diff(gn_quotient(r, g, p), gn_quotient(f, g, p)) < 1e-10);
  FieldPair neg = f;
  for (auto& z : neg.v) z = -z;
  CHECK_THROWS_AS(lemma1_rescale(neg, g, target), Error);
}
