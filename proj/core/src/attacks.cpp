#include "icokd/attacks.hpp"

#include <cmath>
#include <stdexcept>

namespace icokd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lower-triangular factor of a real PSD matrix; zero pivots produce zero
// columns, which is consistent for PSD inputs.
Eigen::MatrixXd psd_cholesky(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    l(j, j) = d > 1e-14 ? std::sqrt(d) : 0.0;
    for (int i = j + 1; i < n; ++i) {
      if (l(j, j) == 0.0) continue;
      double v = g(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

std::array<Vector, 4> gram_vectors(double f, double cx, double cy) {
  const double d = 1.0 - f;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
  g(0, 0) = f;
  g(1, 1) = f;
  g(0, 1) = g(1, 0) = f * cx;
  g(2, 2) = d;
  g(3, 3) = d;
  g(2, 3) = g(3, 2) = d * cy;
  Eigen::MatrixXd l = psd_cholesky(g);
  std::array<Vector, 4> vectors;
  for (int i = 0; i < 4; ++i) vectors[i] = l.row(i).transpose().cast<Complex>();
  return vectors;
}

// Unitary with prescribed action on |0>|anc0> and |1>|anc0>, columns 0 and 4
// of an 8x8 matrix, completed by Gram-Schmidt over the canonical basis.
DenseOperator attack_unitary(const std::array<Vector, 4>& v) {
  Vector out0 = Vector::Zero(8);
  out0.segment(0, 4) = v[0];  // |0>|v00>
  out0.segment(4, 4) = v[2];  // |1>|v01>
  Vector out1 = Vector::Zero(8);
  out1.segment(4, 4) = v[1];  // |1>|v11>
  out1.segment(0, 4) = v[3];  // |0>|v10>

  std::vector<Vector> columns = {out0, out1};
  for (int i = 0; i < 8 && columns.size() < 8; ++i) {
    Vector cand = Vector::Zero(8);
    cand(i) = 1.0;
    for (const auto& c : columns) cand -= c.dot(cand) * c;
    if (cand.norm() > 1e-8) columns.push_back(cand / cand.norm());
  }
  if (columns.size() != 8) throw std::logic_error("attack unitary completion failed");

  Matrix u(8, 8);
  u.col(0) = columns[0];
  u.col(4) = columns[1];
  int next = 2;
  for (int c : {1, 2, 3, 5, 6, 7}) u.col(c) = columns[next++];

  const double tol = numeric_policy().construction_tol;
  if ((u.adjoint() * u - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() > tol)
    throw std::logic_error("attack unitary is not unitary");
  return DenseOperator(u, {2, 4});
}

KrausInstrument embedded_instrument(const KrausInstrument& inst,
                                    const std::vector<int>& full_dims,
                                    const std::vector<int>& targets) {
  std::vector<KrausOutcome> outs;
  for (const auto& out : inst.outcomes()) {
    KrausOutcome e{out.label, {}};
    for (const auto& k : out.kraus) e.kraus.push_back(embed(k, full_dims, targets));
    outs.push_back(std::move(e));
  }
  return KrausInstrument(std::move(outs));
}

}  // namespace

void AttackParams::validate() const {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  auto angle_ok = [](double v) { return v >= 0.0 && v <= kPi / 2.0 + 1e-12; };
  if (!in01(f) || !in01(fp))
    throw std::invalid_argument("attack params: F and F' must lie in [0, 1]");
  if (!angle_ok(x) || !angle_ok(y) || !angle_ok(xp) || !angle_ok(yp))
    throw std::invalid_argument("attack params: angles must lie in [0, pi/2]");
}

AncillaModel AncillaModel::build(const AttackParams& params) {
  params.validate();
  AncillaModel model;
  model.eve_vectors = gram_vectors(params.f, std::cos(params.x), std::cos(params.y));
  model.yves_vectors = gram_vectors(params.fp, std::cos(params.xp), std::cos(params.yp));
  return model;
}

const Vector& AncillaModel::eve(int k, int l) const {
  if (k == 0 && l == 0) return eve_vectors[0];
  if (k == 1 && l == 1) return eve_vectors[1];
  if (k == 0 && l == 1) return eve_vectors[2];
  if (k == 1 && l == 0) return eve_vectors[3];
  throw std::invalid_argument("ancilla index");
}

const Vector& AncillaModel::yves(int k, int l) const {
  if (k == 0 && l == 0) return yves_vectors[0];
  if (k == 1 && l == 1) return yves_vectors[1];
  if (k == 0 && l == 1) return yves_vectors[2];
  if (k == 1 && l == 0) return yves_vectors[3];
  throw std::invalid_argument("ancilla index");
}

AttackUnitaries build_attack(const AttackParams& params) {
  const AncillaModel model = AncillaModel::build(params);
  return {attack_unitary(model.eve_vectors), attack_unitary(model.yves_vectors)};
}

double p_detect_analytic(const AttackParams& p) {
  p.validate();
  const double f = p.f, fp = p.fp;
  const double d = 1.0 - f, dp = 1.0 - fp;
  const double cx = std::cos(p.x), cy = std::cos(p.y);
  const double cxp = std::cos(p.xp), cyp = std::cos(p.yp);
  return 0.5 - 0.125 * (f * fp * (3.0 + cx * cxp) + d * dp * (1.0 + 3.0 * cy * cyp) +
                        f * dp * (cx + cyp) + d * fp * (cy + cxp));
}

SiftedState attack_sifted_state(const AttackParams& params) {
  params.validate();
  const AttackUnitaries u = build_attack(params);
  const std::vector<int> dims = {2, 4, 4};

  Vector anc0 = Vector::Zero(4);
  anc0(0) = 1.0;
  DenseOperator ancilla = projector(anc0);
  DenseOperator target = tensor(tensor(maximally_mixed_qubit(), ancilla), ancilla);

  SwitchSpec spec{
      {embedded_instrument(KrausInstrument::measurement(), dims, {0}),
       KrausInstrument::unitary(embed(u.u_eve, dims, {0, 1}), "e"),
       embedded_instrument(KrausInstrument::measurement(), dims, {0}),
       KrausInstrument::unitary(embed(u.u_yves, dims, {0, 2}), "y")},
      pure_state(ket_plus()),
      target};
  // Party list is the |1>-branch temporal order: Alice, Eve, Bob, Yves keeps
  // Eve inside the Alice-Bob segment and Yves outside in both orders.
  return sift(run_switch(spec), 0, 2);
}

namespace {

double minus_weight(const SiftedState& sifted) {
  double total = 0.0;
  const Vector minus = ket_minus();
  for (const auto& [key, op] : sifted.branches) {
    const int control_index = static_cast<int>(op.dims().size()) - 1;
    DenseOperator control = partial_trace(op, {control_index});
    total += (minus.adjoint() * control.matrix() * minus)(0, 0).real();
  }
  return total;
}

}  // namespace

double p_detect_numeric(const AttackParams& params) {
  return minus_weight(attack_sifted_state(params));
}

double option1_detection(double y, double yp) {
  return 0.375 * (1.0 - std::cos(y) * std::cos(yp));
}

double option2_detection(double x, double xp) {
  return 0.125 * (1.0 - std::cos(x) * std::cos(xp));
}

MinDetectResult min_detect(double x, double y, double xp, double yp) {
  auto objective = [&](double f, double fp) {
    AttackParams p{f, fp, x, y, xp, yp};
    return p_detect_analytic(p);
  };

  // Dense grid.
  const int n = 101;
  double best = objective(0.0, 0.0);
  double bf = 0.0, bfp = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double f = static_cast<double>(i) / (n - 1);
      const double fp = static_cast<double>(j) / (n - 1);
      const double v = objective(f, fp);
      if (v < best) {
        best = v;
        bf = f;
        bfp = fp;
      }
    }

  // Coordinate-wise golden-section refinement around the best cell.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  auto refine = [&](double lo, double hi, auto eval) {
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    while (b - a > 1e-8) {
      if (eval(c) < eval(d))
        b = d;
      else
        a = c;
      c = b - gr * (b - a);
      d = a + gr * (b - a);
    }
    return 0.5 * (a + b);
  };
  const double step = 1.0 / (n - 1);
  for (int pass = 0; pass < 2; ++pass) {
    bf = refine(std::max(0.0, bf - step), std::min(1.0, bf + step),
                [&](double f) { return objective(f, bfp); });
    bfp = refine(std::max(0.0, bfp - step), std::min(1.0, bfp + step),
                 [&](double fp) { return objective(bf, fp); });
  }
  best = std::min(best, objective(bf, bfp));

  // The objective is bilinear in (F, F'), so the optimum sits on a corner.
  const double c00 = objective(0.0, 0.0);
  const double c11 = objective(1.0, 1.0);
  const double c01 = objective(0.0, 1.0);
  const double c10 = objective(1.0, 0.0);
  const double corner_best = std::min(std::min(c00, c11), std::min(c01, c10));
  if (std::min(c01, c10) < std::min(c00, c11) - 1e-12)
    throw std::logic_error("min_detect: mixed corner undercut the published options");
  if (corner_best < best) best = corner_best;

  MinDetectResult result;
  result.d = best;
  const double opt1 = option1_detection(y, yp);
  const double opt2 = option2_detection(x, xp);
  if (std::abs(best - opt2) <= 1e-6) {
    result.branch = MinBranch::Option2;
    result.f = result.fp = 1.0;
  } else if (std::abs(best - opt1) <= 1e-6) {
    result.branch = MinBranch::Option1;
    result.f = result.fp = 0.0;
  } else {
    throw std::logic_error("min_detect: minimum matches neither boundary closed form");
  }
  return result;
}

namespace {

DenseOperator conditional_ancilla(const SiftedState& sifted, Outcome alice) {
  DenseOperator sum = DenseOperator::zero({2, 4, 4, 2});
  double weight = 0.0;
  for (Outcome bob : outcomes_in(basis_of(alice))) {
    auto it = sifted.branches.find(
        {std::string(1, outcome_label(alice)), std::string(1, outcome_label(bob))});
    if (it == sifted.branches.end()) continue;
    sum = sum + it->second;
    weight += it->second.trace().real();
  }
  if (weight <= numeric_policy().probability_floor)
    throw std::domain_error("conditional ancilla state: zero-probability conditioning");
  DenseOperator reduced = partial_trace(sum, {1, 2});
  return DenseOperator(reduced.matrix() / weight, reduced.dims());
}

DenseOperator outer16(const Vector& e, const Vector& n) {
  DenseOperator pe(e * e.adjoint(), {4});
  DenseOperator pn(n * n.adjoint(), {4});
  return tensor(pe, pn);
}

}  // namespace

std::pair<DenseOperator, DenseOperator> eaves_ancilla_states(CornerOption option, Basis basis,
                                                             const AttackParams& params) {
  const double tol = numeric_policy().comparison_tol;
  if (option == CornerOption::F0 && (params.f > tol || params.fp > tol))
    throw std::invalid_argument("option F0 requires F = F' = 0");
  if (option == CornerOption::F1 && (params.f < 1.0 - tol || params.fp < 1.0 - tol))
    throw std::invalid_argument("option F1 requires F = F' = 1");

  const SiftedState sifted = attack_sifted_state(params);
  const auto outcomes = outcomes_in(basis);
  DenseOperator first = conditional_ancilla(sifted, outcomes[0]);
  DenseOperator second = conditional_ancilla(sifted, outcomes[1]);

  // Closed forms in terms of the ancilla vectors.
  const AncillaModel m = AncillaModel::build(params);
  DenseOperator closed = DenseOperator::zero({4, 4});
  if (option == CornerOption::F0 && basis == Basis::Z) {
    closed = (outer16(m.eve(0, 1), m.yves(1, 0)) + outer16(m.eve(1, 0), m.yves(0, 1)))
                 .scaled(0.5);
  } else if (option == CornerOption::F0 && basis == Basis::X) {
    DenseOperator e(m.eve(1, 0) * m.eve(1, 0).adjoint() + m.eve(0, 1) * m.eve(0, 1).adjoint(),
                    {4});
    DenseOperator n(m.yves(1, 0) * m.yves(1, 0).adjoint() + m.yves(0, 1) * m.yves(0, 1).adjoint(),
                    {4});
    closed = tensor(e, n).scaled(0.25);
  } else if (option == CornerOption::F1 && basis == Basis::X) {
    DenseOperator e(m.eve(0, 0) * m.eve(0, 0).adjoint() + m.eve(1, 1) * m.eve(1, 1).adjoint(),
                    {4});
    DenseOperator n(m.yves(0, 0) * m.yves(0, 0).adjoint() + m.yves(1, 1) * m.yves(1, 1).adjoint(),
                    {4});
    closed = tensor(e, n).scaled(0.25);
  }

  if (option == CornerOption::F1 && basis == Basis::Z) {
    // Psi_l = eps_ll (x) eta_ll, different per outcome.
    DenseOperator c0 = outer16(m.eve(0, 0), m.yves(0, 0));
    DenseOperator c1 = outer16(m.eve(1, 1), m.yves(1, 1));
    if (!first.approx_equal(c0, tol) || !second.approx_equal(c1, tol))
      throw std::logic_error("conditional ancilla states disagree with the closed form");
  } else {
    if (!first.approx_equal(closed, tol) || !second.approx_equal(closed, tol))
      throw std::logic_error("conditional ancilla states disagree with the closed form");
  }
  return {first, second};
}

double helstrom_mi(double overlap) {
  if (overlap < 0.0 || overlap > 1.0 + 1e-12)
    throw std::domain_error("helstrom_mi: overlap must lie in [0, 1]");
  overlap = std::min(overlap, 1.0);

  // Explicit two-state construction in the span {|a>, |b>}.
  const double pa = std::sqrt((1.0 + overlap) / 2.0);
  const double pb = std::sqrt((1.0 - overlap) / 2.0);
  Eigen::MatrixXd joint(2, 2);
  for (int j = 0; j < 2; ++j) {
    Eigen::Vector2d psi(pa, (j == 0 ? 1.0 : -1.0) * pb);
    for (int i = 0; i < 2; ++i) {
      Eigen::Vector2d pi_vec(1.0 / std::sqrt(2.0), (i == 0 ? 1.0 : -1.0) / std::sqrt(2.0));
      joint(i, j) = 0.5 * std::pow(pi_vec.dot(psi), 2.0);
    }
  }
  const double numeric = mutual_information(joint);
  const double closed = 1.0 - binary_entropy((1.0 + std::sqrt(1.0 - overlap * overlap)) / 2.0);
  if (std::abs(numeric - closed) > numeric_policy().comparison_tol)
    throw std::logic_error("helstrom_mi: measurement statistics disagree with closed form");
  return closed;
}

double helstrom_mi_from_detection(double d) {
  if (d < -1e-12 || d > 0.125 + 1e-12)
    throw std::domain_error("detection probability must lie in [0, 1/8]");
  d = std::min(std::max(d, 0.0), 0.125);
  return 1.0 - binary_entropy((1.0 + 4.0 * std::sqrt(d * (1.0 - 4.0 * d))) / 2.0);
}

Eigen::Matrix2d joint_outcome_table(const SiftedState& sifted, Basis basis) {
  Eigen::Matrix2d table = Eigen::Matrix2d::Zero();
  const auto outcomes = outcomes_in(basis);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      table(i, j) = sifted.branch_weight(outcomes[i], outcomes[j]);
  return table;
}

double mi_alice_bob(const AttackParams& params, Basis basis) {
  const SiftedState sifted = attack_sifted_state(params);
  const double numeric = mutual_information(joint_outcome_table(sifted, basis));

  const double tol = numeric_policy().comparison_tol;
  if (params.f >= 1.0 - tol && params.fp >= 1.0 - tol) {
    const double closed =
        basis == Basis::Z ? 1.0 : 1.0 - binary_entropy((1.0 + std::cos(params.x)) / 2.0);
    if (std::abs(numeric - closed) > tol)
      throw std::logic_error("mi_alice_bob: numeric value disagrees with closed form");
    return closed;
  }
  return numeric;
}

double p_error_numeric(const AttackParams& params) {
  const SiftedState sifted = attack_sifted_state(params);
  double err = 0.0;
  for (Basis b : {Basis::Z, Basis::X}) {
    const auto outcomes = outcomes_in(b);
    err += sifted.branch_weight(outcomes[0], outcomes[1]);
    err += sifted.branch_weight(outcomes[1], outcomes[0]);
  }
  return err;
}

BoundsResult bounds_and_error(double d) {
  if (d < -1e-12 || d > 0.125 + 1e-12)
    throw std::domain_error("bounds_and_error: d must lie in [0, 1/8]");
  d = std::min(std::max(d, 0.0), 0.125);
  BoundsResult r;
  r.h_pm_low = 1.0 - binary_entropy(std::min(4.0 * d, 1.0));
  r.h_pm_high = 1.0;
  r.p_error_low = 0.0;
  r.p_error_high = 2.0 * d;
  return r;
}

double p_error_curve(double x) { return 0.25 * (1.0 - std::cos(x)); }

}  // namespace icokd
