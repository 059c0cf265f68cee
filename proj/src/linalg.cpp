#include "rcc/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rcc/error.hpp"

namespace rcc {

double asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("matrix is not square");
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

EigenPairs top_k_eigs(const Matrix& b, Eigen::Index k) {
  const Eigen::Index n = b.rows();
  if (n == 0 || b.cols() != n) throw InvalidInput("eigendecomposition needs a non-empty square matrix");
  if (k < 1 || k > n) throw InvalidInput("eigendecomposition needs 1 <= k <= n");
  if (!b.allFinite()) throw NumericError("eigendecomposition input has non-finite entries");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (asymmetry(b) > 1e-10 * scale) throw InvalidInput("eigendecomposition input is not symmetric");

  const Matrix sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");

  // Eigen returns ascending eigenvalues; take the last k in reverse.
  EigenPairs out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = n - 1 - j;
    out.values(j) = solver.eigenvalues()(src);
    auto col = out.vectors.col(j);
    col = solver.eigenvectors().col(src);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
  }
  return out;
}

double soft_threshold(double a, double theta) {
  if (std::abs(a) <= theta) return 0.0;
  return a > 0 ? a - theta : a + theta;
}

Matrix elementwise_soft_threshold(const Matrix& a, double theta) {
  if (!(theta >= 0.0)) throw InvalidInput("soft threshold must be non-negative");
  return a.unaryExpr([theta](double v) { return soft_threshold(v, theta); });
}

MatrixNorms norms(const Matrix& a) { return {a.cwiseAbs().sum(), a.norm()}; }

}  // namespace rcc
