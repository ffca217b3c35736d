#pragma once

namespace icokd {

// Global numeric tolerances. Construction-time invariants (completeness,
// positivity, hermiticity) use construction_tol; comparisons of derived
// quantities against closed forms use comparison_tol. Probabilities below
// probability_floor are treated as exactly zero.
struct NumericPolicy {
  double construction_tol = 1e-10;
  double comparison_tol = 1e-9;
  double probability_floor = 1e-12;
};

NumericPolicy& numeric_policy();

}  // namespace icokd
