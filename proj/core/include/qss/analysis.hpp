#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qss/fields.hpp"
#include "qss/grid.hpp"
#include "qss/observables.hpp"
#include "qss/params.hpp"

namespace qss {

enum class BlowupBranch { none, negative_energy_beta_positive, eight_E_below_betaM };

const char* to_string(BlowupBranch branch) noexcept;

/// Which sufficient blow-up hypothesis, if any, the initial data satisfies:
///   E0 < 0 with beta > 0, or 8 E0 < beta M0 with beta <= 0.
/// margin is -E0 when beta > 0 and beta M0 - 8 E0 otherwise; positive means
/// the hypothesis holds.
struct BlowupVerdict {
  bool predicted = false;
  BlowupBranch branch = BlowupBranch::none;
  double margin = 0.0;
};

BlowupVerdict blowup_condition(double E0, double M0, double beta);

struct SupercriticalData {
  double lambda = 0.0;
  FieldPair fields;  ///< (lambda U, lambda U)
};

/// Smallest lambda (doubling, then bisection to relative tolerance 1e-3) for
/// which (lambda U, lambda U) satisfies blowup_condition. U must be real and
/// positive.
SupercriticalData make_supercritical_data(const ComplexArray& profile, const Grid& grid,
                                          const PhysicsParams& params);

/// Solves gamma^2 k + alpha^2 = k + 1 for gamma >= 0.
double gamma_constraint(double k, double alpha);

/// Base integrals of a positive ground state (gamma1 = gamma2 = 1) along the
/// mass-preserving curve (gamma lambda^{n/2} P(lambda x), alpha lambda^{n/2} Q(lambda x)).
struct GammaCurveBase {
  double gradP2 = 0.0;  ///< int |grad P|^2
  double gradQ2 = 0.0;  ///< int |grad Q|^2
  double Q2 = 0.0;      ///< int Q^2
  double P2Q = 0.0;     ///< int P^2 Q
  double P2 = 0.0;      ///< int P^2
  double k = 0.0;       ///< int P^2 / (4 int Q^2)
  int n = 0;            ///< spatial dimension d + 1
};

GammaCurveBase make_gamma_curve_base(const FieldPair& ground_state, const Grid& grid);

/// Energy along the curve, with gamma eliminated through the mass constraint:
///   E = (1/2) [g^2 l^2 |grad P|^2 + a^2 l^2 |grad Q|^2 + beta a^2 Q^2 - g^2 a l^{n/2} P^2 Q],
/// g^2 = (k + 1 - a^2)/k. Equals E(P, Q) at (alpha, lambda) = (1, 1).
double gamma_curve_energy(const GammaCurveBase& base, double beta, double alpha, double lambda);

/// The first derivatives A = k d(2E)/d alpha and B = k d(2E)/d lambda at (1, 1).
/// Both vanish at a bound state.
std::pair<double, double> gamma_curve_first_derivatives(const GammaCurveBase& base, double beta);

/// Symmetric 2x2 form a x^2 + 2 c x y + b y^2 in (alpha0, lambda0).
struct QuadraticForm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x, double y) const noexcept { return a * x * x + 2 * c * x * y + b * y * y; }
  double determinant() const noexcept { return a * b - c * c; }
};

/// k times the second derivative of 2E along the curve, from the base
/// integrals directly.
QuadraticForm gamma_curve_hessian(const GammaCurveBase& base, double beta);

/// The same form after eliminating the gradient integrals with the bound-state
/// identities; coefficients (k+4) P2Q, n(4-n)/4 k P2Q and
/// -4 k beta Q2 + (k-2)(4-n)/2 P2Q.
QuadraticForm reduced_gamma_curve_form(double k, int n, double beta, double P2Q, double Q2);

/// Determinant of the reduced form.
double hessian_determinant(double k, int n, double beta, double P2Q, double Q2);

struct InstabilityDirection {
  double alpha0 = 0.0;
  double lambda0 = 0.0;
  double form_value = 0.0;         ///< smallest eigenvalue of gamma_curve_hessian
  double second_derivative = 0.0;  ///< d^2/dt^2 E along (1 + alpha0 t, 1 + lambda0 t)
  double fd_second_derivative = 0.0;
  double reduced_form_value = 0.0;  ///< reduced form at (alpha0, lambda0)
};

/// Unit direction of steepest energy decrease on the mass sphere. Throws
/// ErrorKind::unsupported when the form is positive semidefinite.
InstabilityDirection instability_direction(const GammaCurveBase& base, double beta);

struct CgnCheck {
  double gn = 0.0;
  double c_gn = 0.0;
  double mass = 0.0;
  double m_product = 0.0;  ///< M(P0, Q0) C_GN^2, equal to 1 for a ground state
};

/// Requires d = 3, beta = 0 and gamma1 = gamma2 = 1.
CgnCheck cgn_threshold_check(const FieldPair& ground_state, const Grid& grid,
                             const PhysicsParams& params);

/// True iff every sample satisfies V(t) <= V(0) + V'(0) t + 4 E0 t^2 + 0.01 V(0).
bool variance_bound_check(const std::vector<ObservableRecord>& series, double E0, double beta);

}  // namespace qss
