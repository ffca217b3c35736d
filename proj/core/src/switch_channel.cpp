#include "icokd/switch_channel.hpp"

#include <functional>
#include <stdexcept>

namespace icokd {

DenseOperator switch_kraus(const std::vector<DenseOperator>& parties, int control_dim) {
  if (parties.size() < 2) throw std::invalid_argument("switch needs at least two parties");
  if (control_dim != 2) throw std::invalid_argument("control must be a qubit");
  const int n = parties.front().side();
  for (const auto& p : parties)
    if (p.side() != n) throw std::invalid_argument("switch parties must share the target dimension");

  Matrix forward = Matrix::Identity(n, n);
  Matrix reversed = Matrix::Identity(n, n);
  for (const auto& p : parties) forward = forward * p.matrix();
  for (auto it = parties.rbegin(); it != parties.rend(); ++it) reversed = reversed * it->matrix();

  Matrix p0 = ket0() * ket0().adjoint();
  Matrix p1 = ket1() * ket1().adjoint();
  DenseOperator f(forward, parties.front().dims());
  DenseOperator r(reversed, parties.front().dims());
  return tensor(f, DenseOperator(p0, {2})) + tensor(r, DenseOperator(p1, {2}));
}

namespace {

// S (rho (x) omega) S^dag through the control-diagonal decomposition:
//   S = (1/2){F+R} (x) 1 + (1/2){F-R} (x) sigma_z  with F, R the two branch
// products, expanding into anticommutator, commutator and cross terms.
Matrix decomposition_term(const Matrix& fwd, const Matrix& rev, const Matrix& rho,
                          const Matrix& omega) {
  const Matrix ac = fwd + rev;
  const Matrix co = fwd - rev;
  const Matrix sz = pauli_z().matrix();

  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };

  Matrix term = kron(ac * rho * ac.adjoint(), omega);
  term += kron(co * rho * co.adjoint(), sz * omega * sz);
  term += kron(ac * rho * co.adjoint(), omega * sz);
  term += kron(co * rho * ac.adjoint(), sz * omega);
  return 0.25 * term;
}

void enumerate_branches(const std::vector<KrausInstrument>& instruments, std::size_t party,
                        std::vector<std::string>& labels,
                        std::vector<const KrausOutcome*>& picked,
                        const std::function<void(const std::vector<std::string>&,
                                                 const std::vector<const KrausOutcome*>&)>& fn) {
  if (party == instruments.size()) {
    fn(labels, picked);
    return;
  }
  for (const auto& out : instruments[party].outcomes()) {
    labels.push_back(out.label);
    picked.push_back(&out);
    enumerate_branches(instruments, party + 1, labels, picked, fn);
    picked.pop_back();
    labels.pop_back();
  }
}

}  // namespace

double SwitchBranches::total_weight() const {
  double w = 0.0;
  for (const auto& [labels, op] : branches) w += op.trace().real();
  return w;
}

DenseOperator SwitchBranches::control_state() const {
  if (branches.empty()) throw std::logic_error("no branches");
  const auto& first = branches.begin()->second;
  DenseOperator sum = DenseOperator::zero(first.dims());
  for (const auto& [labels, op] : branches) sum = sum + op;
  const int control_index = static_cast<int>(sum.dims().size()) - 1;
  DenseOperator reduced = partial_trace(sum, {control_index});
  return DenseOperator(reduced.matrix() / reduced.trace().real(), reduced.dims());
}

SwitchBranches run_switch(const SwitchSpec& spec) {
  const double tol = numeric_policy().construction_tol;
  if (spec.party_instruments.size() < 2)
    throw std::invalid_argument("run_switch: need at least two parties");
  if (spec.control_state.side() != 2)
    throw std::invalid_argument("run_switch: control must be a qubit");
  spec.control_state.validate_density(tol);
  spec.target_state.validate_density(tol);
  for (const auto& inst : spec.party_instruments)
    if (inst.side() != spec.target_state.side())
      throw std::invalid_argument("run_switch: instrument/target dimension mismatch");

  const Matrix& rho = spec.target_state.matrix();
  const Matrix& omega = spec.control_state.matrix();
  const int n = spec.target_state.side();

  SwitchBranches result;
  result.target_dims = spec.target_state.dims();
  std::vector<int> joint_dims = spec.target_state.dims();
  joint_dims.push_back(2);

  std::vector<std::string> labels;
  std::vector<const KrausOutcome*> picked;
  enumerate_branches(
      spec.party_instruments, 0, labels, picked,
      [&](const std::vector<std::string>& branch_labels,
          const std::vector<const KrausOutcome*>& outs) {
        Matrix direct = Matrix::Zero(2 * n, 2 * n);
        Matrix decomposed = Matrix::Zero(2 * n, 2 * n);

        // Sum over the Kraus indices inside each party outcome.
        std::vector<std::size_t> idx(outs.size(), 0);
        while (true) {
          Matrix forward = Matrix::Identity(n, n);
          for (std::size_t p = 0; p < outs.size(); ++p)
            forward = forward * outs[p]->kraus[idx[p]].matrix();
          Matrix reversed = Matrix::Identity(n, n);
          for (std::size_t p = outs.size(); p-- > 0;)
            reversed = reversed * outs[p]->kraus[idx[p]].matrix();

          std::vector<DenseOperator> ops;
          for (std::size_t p = 0; p < outs.size(); ++p) ops.push_back(outs[p]->kraus[idx[p]]);
          const Matrix s = switch_kraus(ops).matrix();
          Matrix joint(2 * n, 2 * n);
          // rho (x) omega in target-major layout.
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              joint.block(2 * i, 2 * j, 2, 2) = rho(i, j) * omega;
          direct += s * joint * s.adjoint();
          decomposed += decomposition_term(forward, reversed, rho, omega);

          std::size_t p = 0;
          for (; p < idx.size(); ++p) {
            if (++idx[p] < outs[p]->kraus.size()) break;
            idx[p] = 0;
          }
          if (p == idx.size()) break;
        }

        if ((direct - decomposed).cwiseAbs().maxCoeff() > tol)
          throw std::logic_error("switch evaluation: Kraus sum and decomposition disagree");
        result.branches.emplace(branch_labels, DenseOperator(direct, joint_dims));
      });
  return result;
}

double SiftedState::branch_weight(Outcome alice, Outcome bob) const {
  auto it = branches.find({std::string(1, outcome_label(alice)), std::string(1, outcome_label(bob))});
  return it == branches.end() ? 0.0 : it->second.trace().real();
}

DenseOperator SiftedState::branch(Outcome alice, Outcome bob) const {
  auto it = branches.find({std::string(1, outcome_label(alice)), std::string(1, outcome_label(bob))});
  if (it == branches.end()) throw std::out_of_range("sifted branch not present");
  return it->second;
}

SiftedState sift(const SwitchBranches& branches, int alice_index, int bob_index) {
  SiftedState sifted;
  double kept = 0.0;
  double total = 0.0;
  std::map<std::pair<std::string, std::string>, DenseOperator> acc;

  for (const auto& [labels, op] : branches.branches) {
    total += op.trace().real();
    const Outcome a = outcome_from_label(labels.at(alice_index).at(0));
    const Outcome b = outcome_from_label(labels.at(bob_index).at(0));
    if (basis_of(a) != basis_of(b)) continue;
    kept += op.trace().real();
    auto key = std::make_pair(labels.at(alice_index), labels.at(bob_index));
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, op);
    else
      it->second = it->second + op;
  }

  if (total <= numeric_policy().probability_floor)
    throw std::domain_error("sift: all branches carry zero weight");
  if (kept <= numeric_policy().probability_floor)
    throw std::domain_error("sift: no same-basis weight to keep");

  for (auto& [key, op] : acc)
    sifted.branches.emplace(key, DenseOperator(op.matrix() / kept, op.dims()));
  sifted.kept_fraction = kept / total;
  return sifted;
}

}  // namespace icokd
