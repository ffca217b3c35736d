#pragma once

#include <Eigen/Dense>

namespace icokd {

// Binary entropy in bits, with 0 log 0 taken as 0. Throws outside [0, 1].
double binary_entropy(double q);

// Mutual information in bits of a joint probability table (rows: first
// variable, columns: second). The table is normalized internally.
double mutual_information(const Eigen::MatrixXd& joint);

}  // namespace icokd
