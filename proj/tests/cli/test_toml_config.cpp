#include <cmath>
#include <limits>

#include "doctest.h"
#include "qss/cli/config.hpp"
#include "qss/cli/scenarios.hpp"
#include "qss/cli/toml.hpp"

using namespace qss;
using namespace qss::cli;

namespace {

int error_line(std::string_view text) {
  try {
    parse_toml(text);
  } catch (const TomlError& e) {
    return e.line();
  }
  return 0;
}

const char* minimal = "[grid]\nn = 2\npoints = [16, 16]\nlengths = [8.0, 8.0]\n";

}  // namespace

TEST_CASE("toml subset") {
  const TomlDocument d = parse_toml(R"(# comment
seed = 42
name = "a \"b\"\tc"  # trailing comment
[t]
x = -1_000
y = 2.5e-3
z = [1, 2.0,
     "s", # inside
     true]
"quoted key" = inf
w = -nan
)");
  CHECK(std::get<std::int64_t>(d.tables.at("").at("seed").data) == 42);
  CHECK(std::get<std::string>(d.tables.at("").at("name").data) == "a \"b\"\tc");
  const TomlTable& t = d.tables.at("t");
  CHECK(std::get<std::int64_t>(t.at("x").data) == -1000);
  CHECK(std::get<double>(t.at("y").data) == 2.5e-3);
  const TomlArray& z = std::get<TomlArray>(t.at("z").data);
  REQUIRE(z.size() == 4);
  CHECK(z[0].is_int());
  CHECK(z[1].is_float());
  CHECK(z[2].is_string());
  CHECK(z[3].is_bool());
  CHECK(std::isinf(std::get<double>(t.at("quoted key").data)));
  CHECK(std::isnan(std::get<double>(t.at("w").data)));

  CHECK(error_line("a = 1\na = 2\n") == 2);
  CHECK(error_line("[t]\n[t]\n") == 2);
  CHECK(error_line("a = 1 2\n") == 1);
  CHECK(error_line("a = \"open\n") == 1);
  CHECK(error_line("\n\nb = [1, 2\n") > 0);
  CHECK(error_line("= 3\n") == 1);
  CHECK(error_line("[bad\n") == 1);
}

TEST_CASE("float formatting round trips") {
  for (double x : {0.1, 1.0, -2.5e-300, 1e22, 0.30000000000000004, 123456789.0}) {
    const std::string s = toml_float(x);
    const TomlDocument d = parse_toml("x = " + s + "\n");
    CHECK(d.tables.at("").at("x").is_float());
    CHECK(std::get<double>(d.tables.at("").at("x").data) == x);
  }
  CHECK(toml_float(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(toml_string("a\"\\\n") == "\"a\\\"\\\\\\n\"");
}

TEST_CASE("config defaults, overrides and round trip") {
  const RunConfig c = parse_config("seed = 9\n" + std::string(minimal) + R"(
[physics]
beta = 0.25
gamma2 = 2
[integrator]
t_end = 3.0
dealias = true
[initial]
kind = "plane_wave"
mode = [1, -1]
amplitude_u = 0.5
[scenario]
branch2_beta = -0.5
)");
  CHECK(c.seed == 9);
  CHECK(c.grid.points() == std::vector<int>{16, 16});
  CHECK(c.physics.beta == 0.25);
  CHECK(c.physics.gamma2 == 2.0);
  CHECK(c.integrator.t_end == 3.0);
  CHECK(c.integrator.dealias);
  CHECK(c.initial.kind == InitialKind::plane_wave);
  CHECK(c.initial.plane_wave.mode == std::vector<int>{1, -1});
  CHECK(c.scenario.branch2_beta == -0.5);

  const RunConfig r = parse_config(to_toml(c));
  CHECK(to_toml(r) == to_toml(c));
  CHECK(r.physics == c.physics);
  CHECK(r.grid == c.grid);
  CHECK(r.initial.plane_wave.amplitude_u == 0.5);
}

TEST_CASE("config errors") {
  auto rejects = [](const std::string& text) { CHECK_THROWS_AS(parse_config(text), ConfigError); };
  rejects("[physics]\nbeta = 1.0\n");                              // no grid
  rejects(std::string(minimal) + "[physics]\nbeta_typo = 1.0\n");  // unknown key
  rejects(std::string(minimal) + "[extra]\n");                      // unknown table
  rejects(std::string(minimal) + "unknown = 1\n");
  rejects(std::string(minimal) + "[physics]\ngamma1 = \"one\"\n");  // wrong type
  rejects(std::string(minimal) + "[physics]\ngamma1 = -1.0\n");     // invariant
  rejects(std::string(minimal) + "[integrator]\ndt0 = 0.0\n");
  rejects(std::string(minimal) + "[groundstate]\nrelaxation = 2.0\n");
  rejects(std::string(minimal) + "[initial]\nkind = \"sphere\"\n");
  rejects(std::string(minimal) + "[initial]\nkind = \"plane_wave\"\nmode = [1]\n");
  rejects(std::string(minimal) + "[initial]\nkind = \"ground_state\"\n[physics]\nomega = -1.0\n");
  rejects("[grid]\nn = 2\npoints = [16]\nlengths = [8.0, 8.0]\n");
  rejects("seed = -3\n" + std::string(minimal));
  rejects("[grid\n");
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("uniform stream is the standard 64-bit Mersenne twister") {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
  std::mt19937_64 e;
  e.discard(9999);
  const std::uint64_t x = e();
  CHECK(x == 9981545732273789042ull);
  UniformStream s(5489u);
  for (int i = 0; i < 9999; ++i) s.next();
  CHECK(s.next() == static_cast<double>(x >> 11) * 0x1.0p-53);
  UniformStream a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    const double v = a.in(-2.0, 3.0);
    CHECK(v == b.in(-2.0, 3.0));
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("random competitors and perturbations") {
  const Grid g = make_grid(2, {32, 32}, {16.0, 16.0});
  UniformStream rng(3);
  for (int i = 0; i < 5; ++i) CHECK(interaction(random_competitor(g, rng), g) > 0.0);
  const FieldPair gs = sample_preset(g, GaussianPreset{1.0, 0.5, 1.5});
  const FieldPair p = random_perturbation(gs, g, 0.01, rng);
  FieldPair d = p;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    d.u[i] -= gs.u[i];
    d.v[i] -= gs.v[i];
  }
  CHECK(h1_norm(d, g) == doctest::Approx(0.01 * h1_norm(gs, g)).epsilon(1e-12));
}
