#include "doctest.h"
#include "support.hpp"

using namespace qss;
using namespace qss::test;

namespace {

// Base integrals consistent with A = B = 0 for the given n, k, beta, J, Q2.
GammaCurveBase consistent_base(int n, double k, double beta, double J, double Q2) {
  GammaCurveBase b;
  b.n = n;
  b.k = k;
  b.P2Q = J;
  b.Q2 = Q2;
  b.P2 = 4 * k * Q2;
  b.gradQ2 = ((0.5 * n - 2 + k) * J - 2 * k * beta * Q2) / (2 * (1 + k));
  b.gradP2 = 0.25 * n * J - b.gradQ2;
  return b;
}

double richardson_first(const std::function<double(double)>& f, double h) {
  auto d = [&](double s) { return (f(s) - f(-s)) / (2 * s); };
  return (4 * d(h) - d(2 * h)) / 3;
}

double richardson_second(const std::function<double(double)>& f, double h) {
  auto d = [&](double s) { return (f(s) - 2 * f(0) + f(-s)) / (s * s); };
  return (4 * d(h) - d(2 * h)) / 3;
}

}  // namespace

TEST_CASE("blow-up hypotheses") {
  BlowupVerdict v = blowup_condition(-1.0, 2.0, 0.5);
  CHECK(v.predicted);
  CHECK(v.branch == BlowupBranch::negative_energy_beta_positive);
  CHECK(v.margin == 1.0);
  CHECK_FALSE(blowup_condition(0.1, 2.0, 0.5).predicted);

  v = blowup_condition(-0.2, 2.0, -0.5);
  CHECK(v.predicted);
  CHECK(v.branch == BlowupBranch::eight_E_below_betaM);
  CHECK(v.margin == doctest::Approx(-1.0 + 1.6));
  CHECK_FALSE(blowup_condition(-0.1, 2.0, -0.5).predicted);
  CHECK(blowup_condition(-0.1, 2.0, 0.0).predicted);
  CHECK(blowup_condition(0.0, 2.0, 0.0).branch == BlowupBranch::none);
  CHECK_THROWS_AS(blowup_condition(0.0, -1.0, 0.0), Error);
}

TEST_CASE("supercritical data construction") {
  const Grid g = make_grid(3, {32, 32, 32}, {16.0, 16.0, 16.0});
  const PhysicsParams p{1.0, 1.0, -0.5, 1.0};
  const FieldPair prof = sample_preset(g, GaussianPreset{1.0, 1.0, 1.0});
  const SupercriticalData sd = make_supercritical_data(prof.u, g, p);
  auto holds = [&](double lambda) {
    const FieldPair f = scaled(FieldPair{prof.u, prof.u}, lambda);
    return blowup_condition(energy(f, g, p).total, mass(f, g), p.beta).predicted;
  };
  CHECK(sd.lambda > 0.0);
  CHECK(holds(sd.lambda));
  CHECK_FALSE(holds(sd.lambda * (1 - 2e-3)));
  CHECK(max_abs_diff(sd.fields.u, sd.fields.v) == 0.0);

  ComplexArray bad = prof.u;
  bad[5] = {0.0, 1.0};
  CHECK_THROWS_AS(make_supercritical_data(bad, g, p), Error);
  bad = prof.u;
  bad[5] = -1.0;
  CHECK_THROWS_AS(make_supercritical_data(bad, g, p), Error);
}

TEST_CASE("gamma curve energy against sampled curve members") {
  const Grid g = make_grid(3, {64, 64, 64}, {24.0, 24.0, 24.0});
  const PhysicsParams p{1.0, 1.0, 0.7, 1.0};
  const double a = 1.1, b = 0.8, sigma = 1.4;
  const FieldPair f = sample_preset(g, GaussianPreset{a, b, sigma});
  const GammaCurveBase base = make_gamma_curve_base(f, g);
  CHECK(base.n == 3);
  CHECK(rel_diff(base.k, a * a / (4 * b * b)) < 1e-12);
  CHECK(rel_diff(gamma_curve_energy(base, p.beta, 1.0, 1.0), energy(f, g, p).total) < 1e-12);

  for (auto [alpha, lambda] : {std::pair{0.9, 1.2}, std::pair{1.05, 0.85}}) {
    const double gam = gamma_constraint(base.k, alpha);
    CHECK(gam * gam * base.k + alpha * alpha == doctest::Approx(base.k + 1));
    const double amp = std::pow(lambda, 1.5);
    const FieldPair m = sample_preset(g, GaussianPreset{gam * amp * a, alpha * amp * b, sigma / lambda});
    CHECK(rel_diff(gamma_curve_energy(base, p.beta, alpha, lambda), energy(m, g, p).total) < 1e-10);
    CHECK(rel_diff(mass(m, g), mass(f, g)) < 1e-10);
  }
}

TEST_CASE("first and second derivatives along the curve") {
  const Grid g = make_grid(2, {64, 64}, {20.0, 20.0});
  const FieldPair f = sample_preset(g, GaussianPreset{1.3, 0.9, 1.2});
  const GammaCurveBase base = make_gamma_curve_base(f, g);
  const double beta = 0.4;
  const double k = base.k;
  auto twoE = [&](double al, double la) { return 2 * k * gamma_curve_energy(base, beta, al, la); };
  const auto [A, B] = gamma_curve_first_derivatives(base, beta);
  const double scale = std::abs(twoE(1, 1));
  CHECK(std::abs(A - richardson_first([&](double s) { return twoE(1 + s, 1); }, 1e-3)) < 1e-9 * scale);
  CHECK(std::abs(B - richardson_first([&](double s) { return twoE(1, 1 + s); }, 1e-3)) < 1e-9 * scale);

  const QuadraticForm h = gamma_curve_hessian(base, beta);
  const double faa = richardson_second([&](double s) { return twoE(1 + s, 1); }, 1e-3);
  const double fll = richardson_second([&](double s) { return twoE(1, 1 + s); }, 1e-3);
  const double fdiag = richardson_second([&](double s) { return twoE(1 + s, 1 + s); }, 1e-3);
  CHECK(std::abs(h.a - faa) < 1e-6 * scale);
  CHECK(std::abs(h.b - fll) < 1e-6 * scale);
  CHECK(std::abs(h.a + h.b + 2 * h.c - fdiag) < 1e-6 * scale);
}

TEST_CASE("at a ground state the reduced form equals the full Hessian") {
  const Grid g = make_grid(2, {128, 128}, {30.0, 30.0});
  const double beta = 0.5;
  PetviashviliConfig c;
  c.max_iter = 300;
  const GroundStateResult gs = petviashvili_solve(g, PhysicsParams{1.0, 1.0, beta, 1.0}, c);
  const GammaCurveBase base = make_gamma_curve_base(gs.fields, g);
  const auto [A, B] = gamma_curve_first_derivatives(base, beta);
  const double J = base.P2Q;
  CHECK(std::abs(A) < 1e-6 * J);
  CHECK(std::abs(B) < 1e-6 * J);
  const QuadraticForm full = gamma_curve_hessian(base, beta);
  const QuadraticForm red = reduced_gamma_curve_form(base.k, base.n, beta, base.P2Q, base.Q2);
  CHECK(std::abs(full.a - red.a) < 1e-6 * J);
  CHECK(std::abs(full.b - red.b) < 1e-6 * J);
  CHECK(std::abs(full.c - red.c) < 1e-6 * J);
  CHECK(hessian_determinant(base.k, base.n, beta, base.P2Q, base.Q2) == doctest::Approx(red.determinant()));
}

TEST_CASE("determinant in the critical dimension") {
  const double k = 1.3, beta = 0.8, J = 2.1, Q2 = 0.7;
  const QuadraticForm red = reduced_gamma_curve_form(k, 4, beta, J, Q2);
  CHECK(red.a == doctest::Approx((k + 4) * J));
  CHECK(red.b == 0.0);
  CHECK(red.c == doctest::Approx(-4 * k * beta * Q2));
  CHECK(rel_diff(hessian_determinant(k, 4, beta, J, Q2), -16 * beta * beta * k * k * Q2 * Q2) < 1e-14);
}

TEST_CASE("instability direction") {
  const GammaCurveBase base = consistent_base(4, 1.5, 0.5, 2.0, 1.0);
  const auto [A, B] = gamma_curve_first_derivatives(base, 0.5);
  CHECK(std::abs(A) < 1e-14);
  CHECK(std::abs(B) < 1e-14);
  const InstabilityDirection dir = instability_direction(base, 0.5);
  CHECK(std::hypot(dir.alpha0, dir.lambda0) == doctest::Approx(1.0));
  CHECK(dir.form_value < 0.0);
  CHECK(dir.second_derivative < 0.0);
  CHECK(rel_diff(dir.fd_second_derivative, dir.second_derivative) < 1e-6);
  CHECK(rel_diff(dir.reduced_form_value, dir.form_value) < 1e-12);
  // Smallest eigenvalue: no unit vector does better.
  const QuadraticForm h = gamma_curve_hessian(base, 0.5);
  for (int i = 0; i < 360; ++i) {
    const double t = i * std::numbers::pi / 180;
    CHECK(h(std::cos(t), std::sin(t)) >= dir.form_value - 1e-12);
  }

  try {
    instability_direction(consistent_base(2, 2.0, 0.0, 2.0, 1.0), 0.0);
    FAIL("expected a positive definite form");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
}

TEST_CASE("variance bound check") {
  auto series = [](double bump) {
    std::vector<ObservableRecord> s;
    for (int i = 0; i < 5; ++i) {
      ObservableRecord r;
      r.t = 0.1 * i;
      r.V = 2.0 + 0.5 * r.t - 4.0 * r.t * r.t + (i == 3 ? bump : 0.0);
      r.dV = 0.5;
      s.push_back(r);
    }
    return s;
  };
  CHECK(variance_bound_check(series(0.0), -1.0, 0.0));
  CHECK(variance_bound_check(series(0.019), -1.0, 0.0));
  CHECK_FALSE(variance_bound_check(series(0.021), -1.0, 0.0));
  CHECK_THROWS_AS(variance_bound_check(series(0.0), -1.0, -0.1), Error);
  CHECK_THROWS_AS(variance_bound_check(std::vector<ObservableRecord>(2), -1.0, 0.0), Error);
}

TEST_CASE("threshold check is restricted to the critical dimension") {
  const Grid g = make_grid(2, {16, 16}, {8.0, 8.0});
  CHECK_THROWS_AS(cgn_threshold_check(sample_preset(g, GaussianPreset{}), g, PhysicsParams{}), Error);
}
