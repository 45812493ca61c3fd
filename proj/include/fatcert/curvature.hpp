#pragma once

// Algebraic curvature tensors on R^{2n}, sectional pinching, Berger's bound on
// mixed entries, and the twistor two-form (X, Y) -> Tr(R(X, Y) J_u).

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace fatcert {

/// R(i, j, k, l) = g(R(e_i, e_j) e_k, e_l) in an orthonormal basis.
struct CurvatureTensor {
  int n = 0;                // half-dimension
  std::vector<double> R;    // row-major, (2n)^4 entries
  double epsilon = 0.0;     // declared pinching
  int sign = 1;
  std::uint64_t seed = 0;

  CurvatureTensor() = default;
  explicit CurvatureTensor(int half_dim);

  int dim() const { return 2 * n; }
  double& operator()(int i, int j, int k, int l) { return R[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return R[index(i, j, k, l)]; }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    const std::size_t d = dim();
    return ((i * d + j) * d + k) * d + l;
  }
};

CurvatureTensor constant_curvature(int n, double kappa);

/// sign * (c R_1 + P) with c = 1 - eps/2 and P an algebraic curvature tensor
/// whose curvature operator has norm below eps/2, so every sectional
/// curvature magnitude lies in [1 - eps, 1]. Throws ScaleFailure.
CurvatureTensor random_pinched(int n, double epsilon, int sign, std::uint64_t seed);

/// Max deviation from the pair symmetries.
double symmetry_residual(const CurvatureTensor& R);
/// Max |R_ijkl + R_jkil + R_kijl|.
double bianchi_residual(const CurvatureTensor& R);

/// Curvature operator on Lambda^2 in the basis e_i ^ e_j, i < j.
Eigen::MatrixXd curvature_operator(const CurvatureTensor& R);

/// K(X, Y) = R(X, Y, Y, X) / |X ^ Y|^2. Throws DegeneratePlane.
double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct PinchingEstimate {
  double k_min_abs = 0.0;
  double k_max_abs = 0.0;
  double epsilon = 0.0;  // 1 - k_min_abs / k_max_abs
  std::size_t planes = 0;
};

/// All coordinate planes plus num_samples random planes.
PinchingEstimate pinching_estimate(const CurvatureTensor& R, std::size_t num_samples, std::uint64_t seed);

struct BergerReport {
  bool pass = true;
  double bound = 0.0;             // 2/3 eps
  double max_mixed = 0.0;         // max |R_ijkl| over >= 3 distinct indices
  double max_violation = 0.0;     // max(0, max_mixed - bound)
  std::array<int, 4> worst{0, 0, 0, 0};
};

BergerReport berger_check(const CurvatureTensor& R, double epsilon);

/// J e_{2i} = e_{2i+1}, J e_{2i+1} = -e_{2i}.
Eigen::MatrixXd standard_complex_structure(int n);

/// Haar-random rotation of R^{2n}, a function of (seed, index) only. Its
/// columns X_1, J_u X_1, ... are adapted to J_u = u J u^T.
Eigen::MatrixXd random_frame(int n, std::uint64_t seed, std::uint64_t index);

/// Components of R in the frame basis f_a = u e_a.
CurvatureTensor rotate(const CurvatureTensor& R, const Eigen::MatrixXd& frame);

/// T_ab = Tr(R(f_a, f_b) J_u) over the frame basis f = u e.
Eigen::MatrixXd twistor_form(const CurvatureTensor& R, const Eigen::MatrixXd& frame);

/// 2 kappa Omega_J with Omega_J(a, b) = g(J f_a, f_b).
Eigen::MatrixXd twistor_form_constant(int n, double kappa);

struct FrameReport {
  std::uint64_t index = 0;
  std::vector<double> margins;    // |Tr(R(X_i, J_u X_i) J_u)| / 2 per adapted index
  std::vector<double> sectional;  // K(X_i, J_u X_i)
  double min_margin = 0.0;
  double min_sv = 0.0;
  bool pass = false;
};

struct TwistorReport {
  bool fat = false;
  double bound = 0.0;  // 1 - (2n + 1) eps / 3
  double min_margin = 0.0;
  double min_sv = 0.0;
  std::vector<FrameReport> frames;
};

FrameReport evaluate_frame(const CurvatureTensor& R, const Eigen::MatrixXd& frame, double bound, double tol);

/// Frame loop in parallel (OpenMP); results are independent of thread count.
TwistorReport twistor_fatness(const CurvatureTensor& R, std::size_t num_frames, std::uint64_t seed,
                              double tol = 1e-9);
/// Serial reference for twistor_fatness.
TwistorReport twistor_fatness_serial(const CurvatureTensor& R, std::size_t num_frames, std::uint64_t seed,
                                     double tol = 1e-9);

}  // namespace fatcert
