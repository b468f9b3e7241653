#pragma once

namespace qss {

/// Coefficients of the coupled system
///   i u_t + Delta_{gamma1} u + conj(u) v = 0
///   2i v_t + Delta_{gamma2} v - beta v + u^2 / 2 = 0
/// and the standing-wave frequency omega.
struct PhysicsParams {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double beta = 0.0;
  double omega = 1.0;

  bool operator==(const PhysicsParams&) const = default;
};

/// Requires gamma1 > 0 and gamma2 > 0 (elliptic-elliptic case).
void validate(const PhysicsParams& params);

/// Additionally requires omega > 0 and 4 omega + beta > 0.
void validate_for_ground_state(const PhysicsParams& params);

}  // namespace qss
