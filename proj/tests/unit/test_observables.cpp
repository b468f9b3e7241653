#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace qss;
using namespace qss::test;

namespace {

struct GaussPair {
  double a, b, sigma;
};

FieldPair gauss_pair(const Grid& g, GaussPair p) {
  return sample_preset(g, GaussianPreset{p.a, p.b, p.sigma});
}

// Smooth complex data with nonzero momentum so that dV does not vanish.
FieldPair moving_pair(const Grid& g) {
  FieldPair f = zero_fields(g);
  f.u = sample(g, [](const std::vector<double>& x) {
    double phase = 0.0;
    double r2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      phase += (0.3 + 0.2 * j) * x[j];
      r2 += std::pow(x[j] - 0.5 + 0.3 * j, 2);
    }
    return std::polar(1.2 * std::exp(-0.5 * r2), phase);
  });
  f.v = sample(g, [](const std::vector<double>& x) {
    return cplx{0.8, 0.3} * std::exp(-0.6 * norm2(x) + 0.2 * x[0]);
  });
  return f;
}

}  // namespace

TEST_CASE("functionals of a Gaussian pair against closed forms") {
  const Grid g = make_grid(3, {48, 48, 48}, {20.0, 20.0, 20.0});
  const PhysicsParams p{0.5, 2.0, 0.3, 1.1};
  const GaussPair gp{1.4, 0.6, 1.2};
  const FieldPair f = gauss_pair(g, gp);
  const int n = 3;
  const double c = 1.0 / (gp.sigma * gp.sigma);
  const double I = gauss_integral(c, n);
  const double m2 = gauss_second_moment(c, n);
  const double s4 = std::pow(gp.sigma, 4);

  CHECK(rel_diff(mass(f, g), (gp.a * gp.a + 4 * gp.b * gp.b) * I) < 1e-12);
  const Energy e = energy(f, g, p);
  CHECK(rel_diff(e.parts.gamma1, 0.5 * gp.a * gp.a * (n - 1 + p.gamma1) * m2 / s4) < 1e-10);
  CHECK(rel_diff(e.parts.gamma2, 0.5 * gp.b * gp.b * (n - 1 + p.gamma2) * m2 / s4) < 1e-10);
  CHECK(rel_diff(e.parts.beta, 0.5 * p.beta * gp.b * gp.b * I) < 1e-12);
  CHECK(rel_diff(e.parts.re, 0.5 * gp.a * gp.a * gp.b * gauss_integral(1.5 * c, n)) < 1e-12);
  CHECK(e.total == doctest::Approx(e.parts.gamma1 + e.parts.gamma2 + e.parts.beta - e.parts.re));

  const KJFunctionals kj = kj_functionals(f, g, p);
  CHECK(rel_diff(kj.K, 2 * (e.parts.gamma1 + e.parts.gamma2 + e.parts.beta)) < 1e-14);
  CHECK(rel_diff(kj.J, 2 * e.parts.re) < 1e-14);
  CHECK(rel_diff(kj.I, kj.K + p.omega * mass(f, g)) < 1e-14);
  CHECK(rel_diff(kj.S, e.total + p.omega * mass(f, g)) < 1e-14);
  CHECK(rel_diff(interaction(f, g), kj.J) < 1e-14);
  CHECK(rel_diff(gradient_functional(f, g, p), 2 * (e.parts.gamma1 + e.parts.gamma2)) < 1e-14);

  const double weight = gp.a * gp.a + 4 * gp.b * gp.b;
  CHECK(rel_diff(variance(f, g), 0.5 * weight * n * m2) < 1e-12);
  CHECK(rel_diff(transverse_variance(f, g), 0.5 * weight * (n - 1) * m2) < 1e-12);
  const VirialFirst v1 = virial_first_derivative(f, g, p);
  CHECK(std::abs(v1.dV) < 1e-12);
  CHECK(std::abs(v1.dV_perp) < 1e-12);
}

TEST_CASE("GN quotient is invariant under amplitude scaling and needs J > 0") {
  const Grid g = make_grid(2, {64, 64}, {24.0, 24.0});
  const PhysicsParams p{1.0, 1.0, 0.7, 1.0};
  const FieldPair f = gauss_pair(g, {1.0, 0.5, 1.5});
  const double q = gn_quotient(f, g, p);
  CHECK(rel_diff(gn_quotient(scaled(f, 3.7), g, p), q) < 1e-13);
  // beta does not enter the quotient
  CHECK(rel_diff(gn_quotient(f, g, PhysicsParams{}), q) < 1e-14);
  CHECK_THROWS_AS(gn_quotient(gauss_pair(g, {1.0, -0.5, 1.5}), g, p), Error);
}

TEST_CASE("boundary mass fraction of a uniform field") {
  const Grid g = make_grid(3, {8, 8, 10}, {1.0, 1.0, 1.0});
  FieldPair f = zero_fields(g);
  for (auto& z : f.u) z = 1.0;
  const double interior = (6.0 / 8.0) * (6.0 / 8.0) * (8.0 / 10.0);
  CHECK(boundary_mass_fraction(f, g) == doctest::Approx(1.0 - interior).epsilon(1e-14));
}

TEST_CASE("observe agrees with the individual functionals") {
  const Grid g = make_grid(3, {32, 32, 32}, {16.0, 16.0, 16.0});
  const PhysicsParams p{1.0, 1.0, 0.5, 1.0};
  const FieldPair f = moving_pair(g);
  const ObservableRecord r = observe(f, g, p, 0.25);
  CHECK(r.t == 0.25);
  CHECK(rel_diff(r.M, mass(f, g)) < 1e-14);
  CHECK(rel_diff(r.E, energy(f, g, p).total) < 1e-13);
  CHECK(rel_diff(r.V, variance(f, g)) < 1e-14);
  CHECK(rel_diff(r.V_perp, transverse_variance(f, g)) < 1e-14);
  const VirialFirst v1 = virial_first_derivative(f, g, p);
  CHECK(rel_diff(r.dV, v1.dV) < 1e-13);
  CHECK(rel_diff(r.dV_perp, v1.dV_perp) < 1e-13);
  REQUIRE(r.d2V.has_value());
  const VirialSecond v2 = virial_second_formula(f, g, p, r.E);
  CHECK(rel_diff(*r.d2V, *v2.d2V) < 1e-13);
  CHECK(rel_diff(r.d2V_perp, v2.d2V_perp) < 1e-13);
  CHECK(r.sup_u == doctest::Approx(sup_norm(f.u)));

  std::istringstream header(csv_header());
  std::istringstream row(to_csv_row(r));
  std::string h, w;
  int nh = 0, nr = 0;
  while (std::getline(header, h, ',')) ++nh;
  while (std::getline(row, w, ',')) ++nr;
  CHECK(nh == nr);

  CHECK_FALSE(observe(f, g, PhysicsParams{1.0, 2.0, 0.0, 1.0}, 0.0).d2V.has_value());
}

TEST_CASE("reduced Virial forms agree with the general ones") {
  const Grid g4 = make_grid(4, {16, 16, 16, 16}, {10.0, 10.0, 10.0, 10.0});
  const PhysicsParams p{1.0, 1.0, 0.5, 1.0};
  const FieldPair f4 = moving_pair(g4);
  const double E4 = energy(f4, g4, p).total;
  const VirialSecond v4 = virial_second_formula(f4, g4, p, E4);
  REQUIRE(v4.d2V_reduced.has_value());
  CHECK_FALSE(v4.d2V_perp_reduced.has_value());
  CHECK(rel_diff(*v4.d2V_reduced, *v4.d2V) < 1e-12);

  const Grid g5 = make_grid(5, {8, 8, 8, 8, 16}, {8.0, 8.0, 8.0, 8.0, 10.0});
  const FieldPair f5 = moving_pair(g5);
  const double E5 = energy(f5, g5, p).total;
  const VirialSecond v5 = virial_second_formula(f5, g5, p, E5);
  REQUIRE(v5.d2V_perp_reduced.has_value());
  CHECK_FALSE(v5.d2V_reduced.has_value());
  CHECK(rel_diff(*v5.d2V_perp_reduced, v5.d2V_perp) < 1e-12);
}

TEST_CASE("Virial derivatives match finite differences of the evolved variance") {
  // Anisotropic case gamma1 = gamma2 = 2 exercises the general formula.
  const Grid g = make_grid(3, {64, 64, 64}, {24.0, 24.0, 24.0});
  const PhysicsParams p{2.0, 2.0, 0.3, 1.0};
  const FieldPair f0 = moving_pair(g);
  const double h = 0.02;
  const int steps = 40;
  const double dt = h / steps;
  FieldPair fp = f0, fm = f0;
  SplitStepper fwd(g, p), bwd(g, p);
  for (int s = 0; s < steps; ++s) {
    fwd.strang(fp, dt);
    bwd.strang(fm, -dt);
  }
  const double Vp = variance(fp, g), V0 = variance(f0, g), Vm = variance(fm, g);
  const double Pp = transverse_variance(fp, g), P0 = transverse_variance(f0, g),
               Pm = transverse_variance(fm, g);
  const VirialFirst v1 = virial_first_derivative(f0, g, p);
  const VirialSecond v2 = virial_second_formula(f0, g, p, energy(f0, g, p).total);
  CHECK(rel_diff((Vp - Vm) / (2 * h), v1.dV) < 1e-4);
  CHECK(rel_diff((Pp - Pm) / (2 * h), v1.dV_perp) < 1e-4);
  CHECK(rel_diff((Vp - 2 * V0 + Vm) / (h * h), *v2.d2V) < 1e-3);
  CHECK(rel_diff((Pp - 2 * P0 + Pm) / (h * h), v2.d2V_perp) < 1e-3);
}
