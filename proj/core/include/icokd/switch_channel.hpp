#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "icokd/instrument.hpp"
#include "icokd/operators.hpp"

namespace icokd {

// One Kraus operator of the quantum switch. The party list is given in the
// temporal order of the |1> control branch: switch_kraus({P1, P2, P3})
// returns P1 P2 P3 (x) |0><0| + P3 P2 P1 (x) |1><1| as matrix products, so
// the |0> branch applies P1 P2 P3 rightmost first and the middle party stays
// in the middle in both orders.
DenseOperator switch_kraus(const std::vector<DenseOperator>& parties, int control_dim = 2);

struct SwitchSpec {
  // Temporal order of the |1> branch. Two parties for the plain protocol,
  // three with a single eavesdropper; longer chains are accepted for the
  // two-eavesdropper analysis.
  std::vector<KrausInstrument> party_instruments;
  DenseOperator control_state;  // qubit omega
  DenseOperator target_state;   // dims must match the party instruments
};

struct SwitchBranches {
  // Unnormalized joint operators over target (x) control, keyed by the
  // per-party outcome labels. Branch probability = real trace.
  std::map<std::vector<std::string>, DenseOperator> branches;
  std::vector<int> target_dims;

  double total_weight() const;
  // Reduced control state of the summed branches (trace-normalized by weight).
  DenseOperator control_state() const;
};

// Applies the switch channel branch by branch. Every branch is evaluated
// both as the direct Kraus sum and through the anticommutator/commutator
// decomposition over the control; the two routes must agree to within the
// construction tolerance or the call throws.
SwitchBranches run_switch(const SwitchSpec& spec);

struct SiftedState {
  // Joint operators renormalized so kept-branch traces sum to one, keyed by
  // (alice outcome label, bob outcome label). Eavesdropper outcome labels are
  // summed over.
  std::map<std::pair<std::string, std::string>, DenseOperator> branches;
  double kept_fraction = 0.0;

  double branch_weight(Outcome alice, Outcome bob) const;
  DenseOperator branch(Outcome alice, Outcome bob) const;
};

// Basis comparison: discards branches where the alice/bob outcome labels name
// different bases and renormalizes the remainder. Throws when all branches
// carry zero weight.
SiftedState sift(const SwitchBranches& branches, int alice_index, int bob_index);

}  // namespace icokd
