#include "qss/params.hpp"

#include <cmath>

#include "qss/error.hpp"

namespace qss {

void validate(const PhysicsParams& p) {
  if (!std::isfinite(p.gamma1) || !std::isfinite(p.gamma2) || !std::isfinite(p.beta) ||
      !std::isfinite(p.omega)) {
    fail(ErrorKind::invalid_argument, "physics parameters must be finite");
  }
  if (!(p.gamma1 > 0.0) || !(p.gamma2 > 0.0)) {
    fail(ErrorKind::invalid_argument, "gamma1 and gamma2 must be positive");
  }
}

void validate_for_ground_state(const PhysicsParams& p) {
  validate(p);
  if (!(p.omega > 0.0)) fail(ErrorKind::invalid_argument, "ground states need omega > 0");
  if (!(4.0 * p.omega + p.beta > 0.0)) {
    fail(ErrorKind::invalid_argument, "ground states need 4 omega + beta > 0");
  }
}

}  // namespace qss
