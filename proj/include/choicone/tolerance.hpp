#pragma once

namespace choicone {

// One set of numerical thresholds shared by every module.
struct ToleranceProfile {
  double structural = 1e-8;      // Hermiticity, rank and membership decisions
  double reconstruction = 1e-10; // eigen/SVD residuals, identity checks
  double refutation = 1e-10;     // a witness value must be <= -refutation
  double singular = 1e-12;       // reciprocal condition below this is singular
  double ad_condition = 1e-10;   // minimum reciprocal condition of Ad factors
};

inline constexpr ToleranceProfile kDefaultTolerances{};

}  // namespace choicone
