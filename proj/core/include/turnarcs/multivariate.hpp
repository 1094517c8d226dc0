#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "turnarcs/covariance.hpp"

namespace turnarcs {

// Bivariate negative binomial or spectral Matern model. Entry (i, j) of the
// Schoenberg matrix is rho_ij b_n(theta_ij) with rho_11 = rho_22 = 1 and
// rho_12 = rho, where theta_ij is delta_ij (NB) or (alpha, nu_ij) (SM).
struct BivariateSpec {
  CovarianceFamily family = CovarianceFamily::NegativeBinomial;
  int d = 2;
  double delta11 = 0.0, delta12 = 0.0, delta22 = 0.0;
  double alpha = 0.0;
  double nu11 = 0.0, nu12 = 0.0, nu22 = 0.0;
  double rho = 0.0;
  // Skip the sufficient cross-parameter conditions. The numerical
  // semidefiniteness check of the Schoenberg matrices still applies.
  bool allow_invalid_cross = false;

  static BivariateSpec negative_binomial(double delta11, double delta12, double delta22,
                                         double rho, int d = 2);
  static BivariateSpec spectral_matern(double alpha, double nu11, double nu12, double nu22,
                                       double rho, int d = 2);

  // Scalar parameters of entry (i, j), i, j in {0, 1}; rho is not included.
  CovarianceSpec entry(int i, int j) const;
  std::string describe() const;
};

std::vector<std::string> validate(const BivariateSpec& spec);

// B = Gamma Gamma^T. Lower triangular Cholesky factor when B is numerically
// positive definite, symmetric square root otherwise.
struct SchoenbergFactor {
  std::int64_t degree = 0;
  Eigen::MatrixXd gamma;
  bool cholesky = true;

  Eigen::VectorXd column(int i) const { return gamma.col(i); }
};

/// Throws ModelError when B has an eigenvalue below -1e-12 trace(B).
SchoenbergFactor factor_schoenberg_matrix(const Eigen::MatrixXd& B, std::int64_t degree = 0);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& B);

// A p-variate isotropic covariance given by its Schoenberg matrices.
class MultiCovarianceModel {
 public:
  // Throws ValidationError.
  explicit MultiCovarianceModel(BivariateSpec spec);

  // Finite sequence B_0 ... B_N of symmetric positive semidefinite p x p
  // matrices, any p >= 1.
  static MultiCovarianceModel from_matrices(int d, std::vector<Eigen::MatrixXd> matrices);

  int dimension() const noexcept;
  int components() const noexcept;
  // Parametric spec; only meaningful when built from a BivariateSpec.
  const BivariateSpec* bivariate() const noexcept;

  Eigen::MatrixXd schoenberg_matrix(std::int64_t n) const;
  SchoenbergFactor factor(std::int64_t n) const;

  // K_ij(theta), series-valued where the scalar entries are.
  Eigen::MatrixXd covariance_eval(double theta) const;

  // Slowest decay over the entries.
  DecayProfile decay() const;

  std::string describe() const;

 private:
  struct State;
  explicit MultiCovarianceModel(std::shared_ptr<const State> state);
  std::shared_ptr<const State> state_;
};

}  // namespace turnarcs
