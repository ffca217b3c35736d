#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icokd/operators.hpp"

namespace icokd {

struct KrausOutcome {
  std::string label;
  std::vector<DenseOperator> kraus;
};

// Outcome-labelled Kraus decomposition of a quantum instrument. Construction
// checks overall completeness (sum of K^dag K equals identity) and that each
// per-outcome sum is dominated by the identity.
class KrausInstrument {
 public:
  explicit KrausInstrument(std::vector<KrausOutcome> outcomes);

  const std::vector<KrausOutcome>& outcomes() const { return outcomes_; }
  const std::vector<int>& input_dims() const { return input_dims_; }
  int side() const;

  // The four-outcome qubit measurement used by Alice and Bob: each outcome i
  // carries the single Kraus operator |i><i|/sqrt(2), the 1/sqrt(2) encoding
  // the fair random basis choice.
  static KrausInstrument measurement();
  static KrausInstrument identity(std::vector<int> dims, std::string label = "id");
  static KrausInstrument unitary(DenseOperator u, std::string label = "u");
  static KrausInstrument projective(Basis b);
  // Lumps arbitrary Kraus operators into a single outcome (a plain channel).
  static KrausInstrument channel(std::vector<DenseOperator> kraus, std::string label = "ch");

 private:
  std::vector<KrausOutcome> outcomes_;
  std::vector<int> input_dims_;
};

struct OutcomeResult {
  double probability = 0.0;
  // Normalized post-state; empty when the branch probability is below the
  // probability floor.
  std::optional<DenseOperator> post_state;
};

// Generalized Born rule: probability of each outcome and the associated
// normalized post-state. Probabilities sum to one for a valid instrument.
std::map<std::string, OutcomeResult> apply_instrument(const KrausInstrument& inst,
                                                      const DenseOperator& state);

}  // namespace icokd
