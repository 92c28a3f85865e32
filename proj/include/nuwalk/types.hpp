#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace nuwalk {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// Centralized tolerances. Exact algebraic identities (unitarity, trace
// preservation, Kraus completeness) are held to 1e-12; eigen-relations to
// 1e-10; physics approximations are relative at 1e-2.
inline constexpr double kTolExact = 1e-12;
inline constexpr double kTolEigen = 1e-10;
inline constexpr double kTolPhysicsRel = 1e-2;
inline constexpr double kTolPsd = 1e-10;  // min eigenvalue >= -kTolPsd
inline constexpr double kPruneThreshold = 1e-300;

struct OutOfSupport : std::runtime_error {
  explicit OutOfSupport(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidMomentum : std::runtime_error {
  explicit InvalidMomentum(const std::string& m) : std::runtime_error(m) {}
};
struct UnnormalizedInput : std::runtime_error {
  explicit UnnormalizedInput(const std::string& m) : std::runtime_error(m) {}
};
struct StepMismatch : std::runtime_error {
  explicit StepMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};
struct InfeasibleAngles : std::runtime_error {
  explicit InfeasibleAngles(const std::string& m) : std::runtime_error(m) {}
};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline double unitarity_residual(const Mat& u) {
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

inline bool is_unitary(const Mat& u, double tol = kTolExact) {
  return u.rows() == u.cols() && unitarity_residual(u) < tol;
}

inline double hermiticity_residual(const Mat& m) {
  return max_abs(m - m.adjoint());
}

inline double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Hermitian, unit trace, positive semidefinite (up to kTolPsd).
inline bool is_density(const Mat& rho, double tol = kTolExact) {
  if (rho.rows() != rho.cols()) return false;
  if (hermiticity_residual(rho) > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol) return false;
  Mat sym = 0.5 * (rho + rho.adjoint());
  return min_eigenvalue(sym) >= -kTolPsd;
}

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

}  // namespace nuwalk
