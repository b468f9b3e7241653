#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qss/fields.hpp"
#include "qss/grid.hpp"
#include "qss/params.hpp"

namespace qss {

/// Pieces of E = E_gamma1 + E_gamma2 + E_beta - E_Re.
struct EnergyParts {
  double gamma1 = 0.0;  ///< (1/2) int |grad u|^2_{gamma1}
  double gamma2 = 0.0;  ///< (1/2) int |grad v|^2_{gamma2}
  double beta = 0.0;    ///< (beta/2) int |v|^2
  double re = 0.0;      ///< (1/2) Re int conj(u)^2 v
};

struct Energy {
  double total = 0.0;
  EnergyParts parts;
};

/// K = int |grad u|^2_{g1} + |grad v|^2_{g2} + beta |v|^2, J = Re int conj(u)^2 v,
/// I = K + omega M, S = E + omega M.
struct KJFunctionals {
  double K = 0.0;
  double J = 0.0;
  double I = 0.0;
  double S = 0.0;
};

struct VirialFirst {
  double dV = 0.0;
  double dV_perp = 0.0;
};

/// Second-derivative formulas for the variance and transverse variance.
///
/// d2V is only defined when gamma1 == gamma2. The reduced forms are the
/// closed expressions in terms of the conserved energy E0: d2V_reduced for
/// d = 3 with gamma1 = gamma2 = 1, and d2V_perp_reduced for d = 4.
struct VirialSecond {
  std::optional<double> d2V;
  double d2V_perp = 0.0;
  std::optional<double> d2V_reduced;
  std::optional<double> d2V_perp_reduced;
};

/// One time sample of every functional tracked during a run.
struct ObservableRecord {
  double t = 0.0;
  double M = 0.0;
  double E = 0.0;
  EnergyParts E_parts;
  double K = 0.0;
  double J = 0.0;
  double V = 0.0;
  double V_perp = 0.0;
  double dV = 0.0;
  double dV_perp = 0.0;
  std::optional<double> d2V;
  double d2V_perp = 0.0;
  double grad_u_sq = 0.0;
  double grad_v_sq = 0.0;
  double sup_u = 0.0;
  double sup_v = 0.0;
};

double mass(const FieldPair& fields, const Grid& grid);
Energy energy(const FieldPair& fields, const Grid& grid, const PhysicsParams& params);
KJFunctionals kj_functionals(const FieldPair& fields, const Grid& grid, const PhysicsParams& params);

/// Interaction integral J = Re int conj(u)^2 v.
double interaction(const FieldPair& fields, const Grid& grid);

/// Gradient part of K (beta dropped), with the anisotropy weights.
double gradient_functional(const FieldPair& fields, const Grid& grid, const PhysicsParams& params);

/// GN = M^{3/2-(d+1)/4} K^{(d+1)/4} / J with beta treated as zero in K.
/// Throws ErrorKind::invalid_argument when J <= 0.
double gn_quotient(const FieldPair& fields, const Grid& grid, const PhysicsParams& params);

/// (1/2) int |x|^2 (|u|^2 + 4|v|^2) and its |x_perp|^2 counterpart.
double variance(const FieldPair& fields, const Grid& grid);
double transverse_variance(const FieldPair& fields, const Grid& grid);

/// Fraction of the mass carried by the outermost layer of grid cells. The
/// variance identities are only meaningful when this is tiny.
double boundary_mass_fraction(const FieldPair& fields, const Grid& grid);
inline constexpr double boundary_mass_tolerance = 1e-8;

VirialFirst virial_first_derivative(const FieldPair& fields, const Grid& grid,
                                    const PhysicsParams& params);
VirialSecond virial_second_formula(const FieldPair& fields, const Grid& grid,
                                   const PhysicsParams& params, double E0);

/// Evaluates every functional in one pass (two forward transforms plus the
/// derivative transforms needed by the first Virial derivatives).
ObservableRecord observe(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                         double t);

std::string csv_header();
std::string to_csv_row(const ObservableRecord& record);

}  // namespace qss
