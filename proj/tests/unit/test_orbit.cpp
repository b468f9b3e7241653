#include <random>
#include <tuple>

#include "doctest.h"
#include "support.hpp"

using namespace qss;
using namespace qss::test;

namespace {

FieldPair bump(const Grid& g, double cx = 0.0) {
  FieldPair f = zero_fields(g);
  f.u = sample(g, [&](const std::vector<double>& x) {
    std::vector<double> y = x;
    y[0] -= cx;
    return cplx{1.3 * std::exp(-0.5 * norm2(y)), 0.0};
  });
  f.v = sample(g, [&](const std::vector<double>& x) {
    std::vector<double> y = x;
    y[0] -= cx;
    return cplx{0.6 * std::exp(-0.7 * norm2(y)), 0.0};
  });
  return f;
}

double wrap_angle(double a) { return std::remainder(a, 2 * std::numbers::pi); }

double distance_to(const FieldPair& state, const FieldPair& gs, const Grid& g, double theta,
                   const std::vector<double>& shift) {
  const FieldPair o = apply_orbit(gs, g, theta, shift);
  FieldPair d = state;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    d.u[i] -= o.u[i];
    d.v[i] -= o.v[i];
  }
  return h1_norm(d, g);
}

}  // namespace

TEST_CASE("H1 norm of a Gaussian pair") {
  const Grid g = make_grid(2, {64, 64}, {20.0, 20.0});
  const FieldPair f = sample_preset(g, GaussianPreset{1.0, 2.0, 1.1});
  const double c = 1.0 / (1.1 * 1.1);
  const double l2 = gauss_integral(c, 2);
  const double grad = 2 * gauss_second_moment(c, 2) * c * c;
  CHECK(rel_diff(h1_norm(f, g), std::sqrt((1.0 + 4.0) * (l2 + grad))) < 1e-12);
}

TEST_CASE("orbit action preserves mass and energy") {
  const Grid g = make_grid(2, {64, 64}, {16.0, 16.0});
  const PhysicsParams p{1.0, 1.0, 0.3, 1.0};
  const FieldPair f = bump(g, 0.4);
  const double M = mass(f, g);
  const double E = energy(f, g, p).total;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(-4.0, 4.0), sh(-6.0, 6.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> shift = {sh(rng), sh(rng)};
    if (trial % 2 == 0) shift = {std::round(shift[0]), std::round(shift[1])};
    const FieldPair o = apply_orbit(f, g, th(rng), shift);
    CHECK(rel_diff(mass(o, g), M) <= 1e-12);
    CHECK(rel_diff(energy(o, g, p).total, E) <= 1e-12);
  }
}

TEST_CASE("integer roll convention") {
  const Grid g = make_grid(2, {16, 16}, {8.0, 8.0});
  const FieldPair f = bump(g);
  const FieldPair o = apply_orbit(f, g, 0.0, {2.0, -3.0});
  // out(x) = f(x + y)
  CHECK(o.u[5 * 16 + 7] == f.u[7 * 16 + 4]);
  const FieldPair s = apply_orbit(f, g, 0.0, {2.0 + 1e-9, -3.0});
  CHECK(max_abs_diff(s.u, o.u) < 1e-8);
}

TEST_CASE("orbit match recovers a known phase and shift") {
  const Grid g = make_grid(2, {64, 64}, {16.0, 16.0});
  const FieldPair gs = bump(g);
  const double scale = h1_norm(gs, g);
  const FieldPair state = apply_orbit(gs, g, 2.5, {3.0, -5.0});
  const OrbitMatch m = orbit_match(state, gs, g);
  CHECK(m.distance < 1e-10 * scale);
  CHECK(std::abs(wrap_angle(m.theta - 2.5)) < 1e-8);
  CHECK(m.shift_cells == std::vector<double>{3.0, -5.0});

  const FieldPair frac = apply_orbit(gs, g, -1.0, {0.37, -1.6});
  CHECK(orbit_distance(frac, gs, g, false) > 1e-3 * scale);
  const OrbitMatch mf = orbit_match(frac, gs, g, true);
  CHECK(mf.distance < 1e-6 * scale);
  CHECK(std::abs(mf.shift_cells[0] - 0.37) < 1e-5);
  CHECK(std::abs(mf.shift_cells[1] + 1.6) < 1e-5);
  CHECK(std::abs(wrap_angle(mf.theta + 1.0)) < 1e-6);
}

TEST_CASE("orbit distance is constant along the orbit") {
  const Grid g = make_grid(2, {32, 32}, {12.0, 12.0});
  const FieldPair gs = bump(g);
  FieldPair x = bump(g, 0.7);
  for (auto& z : x.v) z *= cplx{0.9, 0.2};
  const double d0 = orbit_distance(x, gs, g);
  for (auto [theta, a, b] : {std::tuple{0.4, 3.0, -2.0}, std::tuple{-2.9, -11.0, 7.0}, std::tuple{3.1, 0.0, 15.0}}) {
    CHECK(std::abs(orbit_distance(apply_orbit(x, g, theta, {a, b}), gs, g) - d0) < 1e-10);
  }
}

TEST_CASE("orbit distance against a brute-force search") {
  const Grid g = make_grid(2, {16, 16}, {8.0, 8.0});
  const FieldPair gs = bump(g);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd(0.0, 0.3);
  FieldPair state = apply_orbit(gs, g, 1.1, {5.0, 2.0});
  for (auto& z : state.u) z += cplx{nd(rng), nd(rng)};
  for (auto& z : state.v) z += cplx{nd(rng), nd(rng)};

  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const std::vector<double> shift = {double(a), double(b)};
      // Coarse scan, then golden-section refinement around the best sample.
      int kbest = 0;
      double dbest = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 360; ++k) {
        const double d = distance_to(state, gs, g, 2 * std::numbers::pi * k / 360, shift);
        if (d < dbest) dbest = d, kbest = k;
      }
      double lo = 2 * std::numbers::pi * (kbest - 1) / 360, hi = 2 * std::numbers::pi * (kbest + 1) / 360;
      const double r = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 60; ++it) {
        const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        if (distance_to(state, gs, g, x1, shift) < distance_to(state, gs, g, x2, shift)) {
          hi = x2;
        } else {
          lo = x1;
        }
      }
      best = std::min(best, distance_to(state, gs, g, 0.5 * (lo + hi), shift));
    }
  }
  CHECK(rel_diff(orbit_distance(state, gs, g), best) < 1e-9);
}
