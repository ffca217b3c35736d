#include "icokd/instrument.hpp"

#include <cmath>
#include <stdexcept>

namespace icokd {

KrausInstrument::KrausInstrument(std::vector<KrausOutcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty() || outcomes_.front().kraus.empty())
    throw std::invalid_argument("instrument needs at least one Kraus operator");
  input_dims_ = outcomes_.front().kraus.front().dims();

  const double tol = numeric_policy().construction_tol;
  const int n = outcomes_.front().kraus.front().side();
  Matrix total = Matrix::Zero(n, n);
  for (const auto& out : outcomes_) {
    Matrix per_outcome = Matrix::Zero(n, n);
    for (const auto& k : out.kraus) {
      if (k.side() != n)
        throw std::invalid_argument("instrument Kraus operators must share dimensions");
      per_outcome += k.matrix().adjoint() * k.matrix();
    }
    // Each outcome is a quantum operation: K^dag K sum dominated by identity.
    DenseOperator deficit(Matrix::Identity(n, n) - per_outcome, input_dims_);
    if (!deficit.is_hermitian(tol) || deficit.min_eigenvalue() < -tol)
      throw std::invalid_argument("instrument outcome exceeds the identity");
    total += per_outcome;
  }
  if ((total - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("instrument is not complete (sum K^dag K != identity)");
}

int KrausInstrument::side() const { return outcomes_.front().kraus.front().side(); }

KrausInstrument KrausInstrument::measurement() {
  std::vector<KrausOutcome> outs;
  const double s = 1.0 / std::sqrt(2.0);
  for (Outcome o : all_outcomes()) {
    outs.push_back({std::string(1, outcome_label(o)), {projector(ket(o)).scaled(s)}});
  }
  return KrausInstrument(std::move(outs));
}

KrausInstrument KrausInstrument::identity(std::vector<int> dims, std::string label) {
  return KrausInstrument({{std::move(label), {DenseOperator::identity(std::move(dims))}}});
}

KrausInstrument KrausInstrument::unitary(DenseOperator u, std::string label) {
  const double tol = numeric_policy().construction_tol;
  Matrix check = u.matrix().adjoint() * u.matrix();
  if ((check - Matrix::Identity(u.side(), u.side())).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("unitary instrument requires a unitary operator");
  return KrausInstrument({{std::move(label), {std::move(u)}}});
}

KrausInstrument KrausInstrument::projective(Basis b) {
  std::vector<KrausOutcome> outs;
  for (Outcome o : outcomes_in(b))
    outs.push_back({std::string(1, outcome_label(o)), {projector(ket(o))}});
  return KrausInstrument(std::move(outs));
}

KrausInstrument KrausInstrument::channel(std::vector<DenseOperator> kraus, std::string label) {
  return KrausInstrument({{std::move(label), std::move(kraus)}});
}

std::map<std::string, OutcomeResult> apply_instrument(const KrausInstrument& inst,
                                                      const DenseOperator& state) {
  if (state.dims() != inst.input_dims())
    throw std::invalid_argument("apply_instrument: state dimensions do not match instrument");
  state.validate_density(numeric_policy().construction_tol);

  std::map<std::string, OutcomeResult> results;
  for (const auto& out : inst.outcomes()) {
    Matrix post = Matrix::Zero(state.side(), state.side());
    for (const auto& k : out.kraus)
      post += k.matrix() * state.matrix() * k.matrix().adjoint();
    const double p = post.trace().real();
    OutcomeResult r;
    r.probability = p;
    if (p > numeric_policy().probability_floor)
      r.post_state = DenseOperator(post / p, state.dims());
    results[out.label] = std::move(r);
  }
  return results;
}

}  // namespace icokd
