#pragma once

#include "rcc/partition.hpp"

namespace rcc {

/// Leading eigenpairs of a symmetric matrix.
struct EigenPairs {
  Matrix vectors;  ///< n x k, orthonormal columns
  Vector values;   ///< k values, non-increasing
};

/// Top-k eigenpairs of a symmetric matrix.
///
/// Inputs whose asymmetry max|B - B^T| is at most 1e-10 (relative to max(1, max|B|)) are
/// symmetrized as (B + B^T) / 2; anything worse throws InvalidInput. Each eigenvector is
/// signed so its first component with magnitude above 1e-12 is positive. For repeated
/// eigenvalues any orthonormal basis of the eigenspace may be returned.
EigenPairs top_k_eigs(const Matrix& b, Eigen::Index k);

/// sign(a) * max(|a| - theta, 0): the minimizer of (1/(2 theta)) (e - a)^2 + |e|.
double soft_threshold(double a, double theta);

Matrix elementwise_soft_threshold(const Matrix& a, double theta);

struct MatrixNorms {
  double l1 = 0.0;   ///< sum of |a_ij|
  double fro = 0.0;  ///< sqrt of sum of a_ij^2
};

MatrixNorms norms(const Matrix& a);

/// max |a_ij - a_ji|
double asymmetry(const Matrix& a);

}  // namespace rcc
