#include "icokd/operators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace icokd {

NumericPolicy& numeric_policy() {
  static NumericPolicy policy;
  return policy;
}

Basis basis_of(Outcome o) {
  return (o == Outcome::Zero || o == Outcome::One) ? Basis::Z : Basis::X;
}

int key_bit(Outcome o) {
  return (o == Outcome::Zero || o == Outcome::Plus) ? 0 : 1;
}

char outcome_label(Outcome o) {
  switch (o) {
    case Outcome::Zero: return '0';
    case Outcome::One: return '1';
    case Outcome::Plus: return '+';
    case Outcome::Minus: return '-';
  }
  throw std::logic_error("unreachable outcome");
}

Outcome outcome_from_label(char c) {
  switch (c) {
    case '0': return Outcome::Zero;
    case '1': return Outcome::One;
    case '+': return Outcome::Plus;
    case '-': return Outcome::Minus;
  }
  throw std::invalid_argument(std::string("unknown outcome label: ") + c);
}

const std::array<Outcome, 4>& all_outcomes() {
  static const std::array<Outcome, 4> outcomes = {Outcome::Zero, Outcome::One,
                                                  Outcome::Plus, Outcome::Minus};
  return outcomes;
}

std::array<Outcome, 2> outcomes_in(Basis b) {
  if (b == Basis::Z) return {Outcome::Zero, Outcome::One};
  return {Outcome::Plus, Outcome::Minus};
}

namespace {

int product_of(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

}  // namespace

DenseOperator::DenseOperator(Matrix entries, std::vector<int> dims)
    : entries_(std::move(entries)), dims_(std::move(dims)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("operator matrix must be square");
  if (product_of(dims_) != entries_.rows())
    throw std::invalid_argument("product of dims must equal the matrix side");
}

DenseOperator DenseOperator::identity(std::vector<int> dims) {
  const int n = product_of(dims);
  return DenseOperator(Matrix::Identity(n, n), std::move(dims));
}

DenseOperator DenseOperator::zero(std::vector<int> dims) {
  const int n = product_of(dims);
  return DenseOperator(Matrix::Zero(n, n), std::move(dims));
}

DenseOperator DenseOperator::adjoint() const {
  return DenseOperator(entries_.adjoint(), dims_);
}

bool DenseOperator::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DenseOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DenseOperator::validate_density(double tol) const {
  if (!is_hermitian(tol))
    throw std::invalid_argument("density operator must be hermitian");
  if (std::abs(trace() - Complex(1.0, 0.0)) > tol)
    throw std::invalid_argument("density operator must have unit trace");
  if (min_eigenvalue() < -tol)
    throw std::invalid_argument("density operator must be positive semidefinite");
}

bool DenseOperator::is_density(double tol) const {
  return is_hermitian(tol) && std::abs(trace() - Complex(1.0, 0.0)) <= tol &&
         min_eigenvalue() >= -tol;
}

bool DenseOperator::approx_equal(const DenseOperator& other, double tol) const {
  if (side() != other.side()) return false;
  return (entries_ - other.entries_).cwiseAbs().maxCoeff() <= tol;
}

DenseOperator DenseOperator::operator+(const DenseOperator& rhs) const {
  return DenseOperator(entries_ + rhs.entries_, dims_);
}

DenseOperator DenseOperator::operator-(const DenseOperator& rhs) const {
  return DenseOperator(entries_ - rhs.entries_, dims_);
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
  if (side() != rhs.side())
    throw std::invalid_argument("operator product: dimension mismatch");
  return DenseOperator(entries_ * rhs.entries_, dims_);
}

DenseOperator DenseOperator::scaled(Complex factor) const {
  return DenseOperator(factor * entries_, dims_);
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (int i = 0; i < ma.rows(); ++i)
    for (int j = 0; j < ma.cols(); ++j)
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DenseOperator(std::move(out), std::move(dims));
}

namespace {

// Row-major strides for a dimension list.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    strides[i] = strides[i + 1] * dims[i + 1];
  return strides;
}

}  // namespace

DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& keep) {
  const auto& dims = op.dims();
  const int n = static_cast<int>(dims.size());

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate subsystem index");
  for (int k : kept)
    if (k < 0 || k >= n)
      throw std::invalid_argument("partial_trace: subsystem index out of range");

  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);

  std::vector<int> kept_dims, traced_dims;
  for (int k : kept) kept_dims.push_back(dims[k]);
  for (int t : traced) traced_dims.push_back(dims[t]);

  const auto strides = strides_of(dims);
  const int kept_side = product_of(kept_dims);
  const int traced_side = product_of(traced_dims);

  // Flat offsets contributed by the kept / traced multi-indices.
  std::vector<int> kept_offsets(kept_side, 0);
  for (int idx = 0; idx < kept_side; ++idx) {
    int rem = idx;
    for (int a = static_cast<int>(kept.size()) - 1; a >= 0; --a) {
      kept_offsets[idx] += (rem % kept_dims[a]) * strides[kept[a]];
      rem /= kept_dims[a];
    }
  }
  std::vector<int> traced_offsets(traced_side, 0);
  for (int idx = 0; idx < traced_side; ++idx) {
    int rem = idx;
    for (int a = static_cast<int>(traced.size()) - 1; a >= 0; --a) {
      traced_offsets[idx] += (rem % traced_dims[a]) * strides[traced[a]];
      rem /= traced_dims[a];
    }
  }

  Matrix out = Matrix::Zero(kept_side, kept_side);
  const Matrix& m = op.matrix();
  for (int i = 0; i < kept_side; ++i)
    for (int j = 0; j < kept_side; ++j) {
      Complex sum(0.0, 0.0);
      for (int t = 0; t < traced_side; ++t)
        sum += m(kept_offsets[i] + traced_offsets[t], kept_offsets[j] + traced_offsets[t]);
      out(i, j) = sum;
    }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return DenseOperator(std::move(out), std::move(kept_dims));
}

DenseOperator embed(const DenseOperator& op, const std::vector<int>& full_dims,
                    const std::vector<int>& targets) {
  const int n = static_cast<int>(full_dims.size());
  if (targets.empty()) throw std::invalid_argument("embed: empty target list");
  for (std::size_t a = 0; a + 1 < targets.size(); ++a)
    if (targets[a] >= targets[a + 1])
      throw std::invalid_argument("embed: targets must be strictly increasing");
  if (targets.size() != op.dims().size())
    throw std::invalid_argument("embed: operator rank does not match target count");
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a] < 0 || targets[a] >= n)
      throw std::invalid_argument("embed: target index out of range");
    if (full_dims[targets[a]] != op.dims()[a])
      throw std::invalid_argument("embed: subsystem dimension mismatch");
  }

  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (std::find(targets.begin(), targets.end(), i) == targets.end()) rest.push_back(i);

  const auto strides = strides_of(full_dims);
  std::vector<int> target_dims, rest_dims;
  for (int t : targets) target_dims.push_back(full_dims[t]);
  for (int r : rest) rest_dims.push_back(full_dims[r]);
  const int target_side = product_of(target_dims);
  const int rest_side = product_of(rest_dims);

  std::vector<int> target_offsets(target_side, 0);
  for (int idx = 0; idx < target_side; ++idx) {
    int rem = idx;
    for (int a = static_cast<int>(targets.size()) - 1; a >= 0; --a) {
      target_offsets[idx] += (rem % target_dims[a]) * strides[targets[a]];
      rem /= target_dims[a];
    }
  }
  std::vector<int> rest_offsets(rest_side, 0);
  for (int idx = 0; idx < rest_side; ++idx) {
    int rem = idx;
    for (int a = static_cast<int>(rest.size()) - 1; a >= 0; --a) {
      rest_offsets[idx] += (rem % rest_dims[a]) * strides[rest[a]];
      rem /= rest_dims[a];
    }
  }

  const int side = product_of(full_dims);
  Matrix out = Matrix::Zero(side, side);
  const Matrix& m = op.matrix();
  for (int i = 0; i < target_side; ++i)
    for (int j = 0; j < target_side; ++j) {
      if (m(i, j) == Complex(0.0, 0.0)) continue;
      for (int r = 0; r < rest_side; ++r)
        out(target_offsets[i] + rest_offsets[r], target_offsets[j] + rest_offsets[r]) = m(i, j);
    }
  return DenseOperator(std::move(out), full_dims);
}

Vector ket0() {
  Vector v(2);
  v << 1.0, 0.0;
  return v;
}

Vector ket1() {
  Vector v(2);
  v << 0.0, 1.0;
  return v;
}

Vector ket_plus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

Vector ket_minus() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

Vector ket(Outcome o) {
  switch (o) {
    case Outcome::Zero: return ket0();
    case Outcome::One: return ket1();
    case Outcome::Plus: return ket_plus();
    case Outcome::Minus: return ket_minus();
  }
  throw std::logic_error("unreachable outcome");
}

DenseOperator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return DenseOperator(m, {2});
}

DenseOperator pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return DenseOperator(m, {2});
}

DenseOperator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return DenseOperator(m, {2});
}

DenseOperator pauli(int mu) {
  switch (mu) {
    case 0: return identity2();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
  }
  throw std::invalid_argument("pauli index must be in 0..3");
}

DenseOperator identity2() { return DenseOperator::identity({2}); }

DenseOperator projector(const Vector& v) {
  return DenseOperator(v * v.adjoint(), {static_cast<int>(v.size())});
}

DenseOperator pure_state(const Vector& v) {
  Vector n = v / v.norm();
  return projector(n);
}

DenseOperator maximally_mixed_qubit() {
  return DenseOperator(0.5 * Matrix::Identity(2, 2), {2});
}

}  // namespace icokd
