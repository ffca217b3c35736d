#pragma once

#include <array>
#include <optional>
#include <utility>

#include "icokd/entropy.hpp"
#include "icokd/switch_channel.hpp"

namespace icokd {

// Individual attack family: Eve and Yves each entangle the passing qubit
// with a private four-dimensional ancilla. F (F') weights the leave-alone
// branch, D = 1-F (D' = 1-F') the flip branch; the angles control the
// distinguishability of the ancilla records.
struct AttackParams {
  double f = 1.0;   // Eve's fidelity weight F
  double fp = 1.0;  // Yves's fidelity weight F'
  double x = 0.0;
  double y = 0.0;
  double xp = 0.0;
  double yp = 0.0;

  void validate() const;
};

// Concrete ancilla vectors realizing the prescribed Gram data in a fixed
// 4-dimensional space (lower-triangular factorization; all published
// quantities depend only on the Gram entries).
struct AncillaModel {
  // Order: v00, v11, v01, v10.
  std::array<Vector, 4> eve_vectors;
  std::array<Vector, 4> yves_vectors;

  static AncillaModel build(const AttackParams& params);

  const Vector& eve(int k, int l) const;   // |eps_kl>
  const Vector& yves(int k, int l) const;  // |eta_kl>
};

struct AttackUnitaries {
  DenseOperator u_eve;   // 8x8, dims {2, 4}: system (x) Eve ancilla
  DenseOperator u_yves;  // 8x8, dims {2, 4}: system (x) Yves ancilla
};

// Explicit unitaries acting as |k>|anc0> -> |k>|v_kk> + |k_bar>|v_kkbar>.
// Unitarity is asserted at construction.
AttackUnitaries build_attack(const AttackParams& params);

// Closed-form detection probability on the sifted state.
double p_detect_analytic(const AttackParams& params);

// Detection probability evaluated through the switch channel itself:
// a four-party chain Alice, Eve, Bob, Yves with rho = 1/2 and
// omega = |+><+|, sifted, then the |-><-| weight of the control.
double p_detect_numeric(const AttackParams& params);

// Sifted joint state of the four-party attack chain (target, Eve ancilla,
// Yves ancilla, control), keyed by Alice/Bob outcomes.
SiftedState attack_sifted_state(const AttackParams& params);

double option1_detection(double y, double yp);  // F = F' = 0 closed form
double option2_detection(double x, double xp);  // F = F' = 1 closed form

enum class MinBranch { Option1, Option2 };

struct MinDetectResult {
  double d = 0.0;
  MinBranch branch = MinBranch::Option2;
  double f = 1.0;
  double fp = 1.0;
};

// Minimizes p_detect_analytic over F, F' in [0,1]^2 (dense grid plus local
// refinement); classifies the argmin against the two boundary closed forms.
MinDetectResult min_detect(double x, double y, double xp, double yp);

enum class CornerOption { F0, F1 };  // F = F' = 0  /  F = F' = 1

// Eavesdroppers' conditional ancilla states given Alice's outcome, computed
// from the sifted switch state and checked against the closed forms. Returns
// the pair for the two outcomes of `basis` in label order (0,1) or (+,-).
std::pair<DenseOperator, DenseOperator> eaves_ancilla_states(CornerOption option, Basis basis,
                                                             const AttackParams& params);

// Mutual information (bits) extractable from two equiprobable pure states
// with the given overlap via the minimum-error measurement. The value is
// computed from the explicit measurement statistics and checked against
// 1 - h[(1 + sqrt(1 - overlap^2))/2].
double helstrom_mi(double overlap);

// Same curve parametrized by the minimal detection probability d in [0, 1/8].
double helstrom_mi_from_detection(double d);

// Alice-Bob mutual information per basis. Computed from the sifted joint
// outcome table; for F = F' = 1 the closed forms (1 in the z basis,
// 1 - h[(1+cos x)/2] in the x basis) are asserted and returned.
double mi_alice_bob(const AttackParams& params, Basis basis);

// Fraction of kept probability mass with differing Alice/Bob outcomes.
double p_error_numeric(const AttackParams& params);

// Joint outcome table for one basis from the sifted state: rows Alice (label
// order), columns Bob.
Eigen::Matrix2d joint_outcome_table(const SiftedState& sifted, Basis basis);

struct BoundsResult {
  double h_pm_low = 1.0;
  double h_pm_high = 1.0;
  double p_error_low = 0.0;
  double p_error_high = 0.0;
};

// Interval bounds implied by a minimal detection probability d in [0, 1/8].
BoundsResult bounds_and_error(double d);

// Error probability curve (1 - cos x)/4 for the F = F' = 1 family.
double p_error_curve(double x);

}  // namespace icokd
