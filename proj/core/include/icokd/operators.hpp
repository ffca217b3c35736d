#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "icokd/numeric_policy.hpp"

namespace icokd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Measurement outcome labels. 0,+ map to key bit 0; 1,- map to key bit 1.
enum class Outcome : int { Zero = 0, One = 1, Plus = 2, Minus = 3 };
enum class Basis : int { Z = 0, X = 1 };

Basis basis_of(Outcome o);
int key_bit(Outcome o);
char outcome_label(Outcome o);
Outcome outcome_from_label(char c);
const std::array<Outcome, 4>& all_outcomes();
std::array<Outcome, 2> outcomes_in(Basis b);

// Dense complex operator together with an explicit subsystem dimension
// list. The matrix is square and its side equals the product of dims.
class DenseOperator {
 public:
  DenseOperator(Matrix entries, std::vector<int> dims);

  static DenseOperator identity(std::vector<int> dims);
  static DenseOperator zero(std::vector<int> dims);

  const Matrix& matrix() const { return entries_; }
  const std::vector<int>& dims() const { return dims_; }
  int side() const { return static_cast<int>(entries_.rows()); }

  DenseOperator adjoint() const;
  Complex trace() const { return entries_.trace(); }
  double frobenius_norm() const { return entries_.norm(); }

  bool is_hermitian(double tol) const;
  // Smallest eigenvalue of a Hermitian operator.
  double min_eigenvalue() const;

  // Throws if not a valid density operator: hermitian, trace 1 within tol,
  // min eigenvalue >= -tol.
  void validate_density(double tol) const;
  bool is_density(double tol) const;

  bool approx_equal(const DenseOperator& other, double tol) const;

  DenseOperator operator+(const DenseOperator& rhs) const;
  DenseOperator operator-(const DenseOperator& rhs) const;
  DenseOperator operator*(const DenseOperator& rhs) const;
  DenseOperator scaled(Complex factor) const;

 private:
  Matrix entries_;
  std::vector<int> dims_;
};

// Kronecker product; dims concatenate.
DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);

// Reduced operator over the kept subsystems (original relative order).
// Throws on out-of-range or duplicate indices.
DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& keep);

// Places `op` on the subsystems listed in `targets` (strictly increasing)
// of a larger space, identity elsewhere.
DenseOperator embed(const DenseOperator& op, const std::vector<int>& full_dims,
                    const std::vector<int>& targets);

// Qubit toolbox. Computational ordering |0>, |1>; |+-> = (|0> +- |1>)/sqrt(2).
Vector ket0();
Vector ket1();
Vector ket_plus();
Vector ket_minus();
Vector ket(Outcome o);

DenseOperator pauli_x();
DenseOperator pauli_y();
DenseOperator pauli_z();
DenseOperator pauli(int mu);  // 0 -> identity, 1 -> x, 2 -> y, 3 -> z
DenseOperator identity2();
DenseOperator projector(const Vector& v);
DenseOperator pure_state(const Vector& v);
DenseOperator maximally_mixed_qubit();

}  // namespace icokd
