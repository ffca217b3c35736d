#include "icokd/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace icokd {

double binary_entropy(double q) {
  if (q < 0.0 || q > 1.0) throw std::domain_error("binary_entropy: q must lie in [0, 1]");
  double h = 0.0;
  if (q > 0.0) h -= q * std::log2(q);
  if (q < 1.0) h -= (1.0 - q) * std::log2(1.0 - q);
  return h;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  const double total = joint.sum();
  if (total <= 0.0) throw std::domain_error("mutual_information: empty joint table");
  Eigen::MatrixXd p = joint / total;
  Eigen::VectorXd pr = p.rowwise().sum();
  Eigen::VectorXd pc = p.colwise().sum();
  double mi = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0) mi += p(i, j) * std::log2(p(i, j) / (pr(i) * pc(j)));
  return mi;
}

}  // namespace icokd
