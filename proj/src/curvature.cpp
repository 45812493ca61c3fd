#include "fatcert/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fatcert/errors.hpp"

namespace fatcert {

namespace {

int pair_index(int i, int j, int d) {
  // position of e_i ^ e_j (i < j) in lexicographic order
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

CurvatureTensor from_operator(int n, const Eigen::MatrixXd& S) {
  CurvatureTensor R(n);
  const int d = 2 * n;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const int p = pair_index(std::min(i, j), std::max(i, j), d);
      const double sp = i < j ? 1.0 : -1.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          if (k == l) continue;
          const int q = pair_index(std::min(l, k), std::max(l, k), d);
          const double sq = l < k ? 1.0 : -1.0;
          R(i, j, k, l) = sp * sq * S(p, q);
        }
    }
  return R;
}

CurvatureTensor bianchi_project(const CurvatureTensor& T) {
  CurvatureTensor R = T;
  const int d = T.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          R(i, j, k, l) = T(i, j, k, l) - (T(i, j, k, l) + T(j, k, i, l) + T(k, i, j, l)) / 3.0;
  return R;
}

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double bound_for(const CurvatureTensor& R) { return 1.0 - (2.0 * R.n + 1.0) * R.epsilon / 3.0; }

}  // namespace

CurvatureTensor::CurvatureTensor(int half_dim) : n(half_dim) {
  if (half_dim < 1) throw DimensionMismatch("curvature tensor needs n >= 1");
  const std::size_t d = 2 * half_dim;
  R.assign(d * d * d * d, 0.0);
}

CurvatureTensor constant_curvature(int n, double kappa) {
  CurvatureTensor R(n);
  const int d = R.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      R(i, j, j, i) = kappa;
      R(i, j, i, j) = -kappa;
    }
  R.sign = kappa < 0 ? -1 : 1;
  return R;
}

CurvatureTensor random_pinched(int n, double epsilon, int sign, std::uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DimensionMismatch("pinching must satisfy 0 <= eps < 1");
  if (sign != 1 && sign != -1) throw DimensionMismatch("sign must be +1 or -1");
  const int d = 2 * n;
  const int pairs = d * (d - 1) / 2;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd S(pairs, pairs);
  for (int p = 0; p < pairs; ++p)
    for (int q = p; q < pairs; ++q) S(p, q) = S(q, p) = normal(rng);
  const CurvatureTensor P = bianchi_project(from_operator(n, S));
  const double norm = curvature_operator(P).cwiseAbs().maxCoeff() > 0.0
                          ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(curvature_operator(P))
                                .eigenvalues()
                                .cwiseAbs()
                                .maxCoeff()
                          : 0.0;

  const CurvatureTensor base = constant_curvature(n, 1.0 - epsilon / 2.0);
  double scale = norm > 0.0 ? 0.999 * (epsilon / 2.0) / norm : 0.0;
  for (int attempt = 0; attempt <= 50; ++attempt, scale /= 2.0) {
    CurvatureTensor R(n);
    for (std::size_t i = 0; i < R.R.size(); ++i) R.R[i] = sign * (base.R[i] + scale * P.R[i]);
    R.epsilon = epsilon;
    R.sign = sign;
    R.seed = seed;
    const auto est = pinching_estimate(R, 200, seed);
    if (est.k_max_abs <= 1.0 + 1e-12 && est.epsilon <= epsilon + 1e-9 && berger_check(R, epsilon).pass) return R;
  }
  throw ScaleFailure("random_pinched: could not meet the pinching bracket");
}

double symmetry_residual(const CurvatureTensor& R) {
  const int d = R.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double v = R(i, j, k, l);
          worst = std::max({worst, std::abs(v + R(j, i, k, l)), std::abs(v + R(i, j, l, k)),
                            std::abs(v - R(k, l, i, j))});
        }
  return worst;
}

double bianchi_residual(const CurvatureTensor& R) {
  const int d = R.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          worst = std::max(worst, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
  return worst;
}

Eigen::MatrixXd curvature_operator(const CurvatureTensor& R) {
  const int d = R.dim();
  const int pairs = d * (d - 1) / 2;
  Eigen::MatrixXd Q(pairs, pairs);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) Q(pair_index(i, j, d), pair_index(k, l, d)) = R(i, j, l, k);
  return Q;
}

double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int d = R.dim();
  if (x.size() != d || y.size() != d) throw DimensionMismatch("sectional_curvature: vector size");
  const double area = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
  if (!(area > 1e-12 * x.squaredNorm() * y.squaredNorm())) throw DegeneratePlane("plane is degenerate");
  double num = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) num += xy * y(k) * x(l) * R(i, j, k, l);
    }
  return num / area;
}

PinchingEstimate pinching_estimate(const CurvatureTensor& R, std::size_t num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw DimensionMismatch("pinching_estimate needs at least one sample");
  const int d = R.dim();
  PinchingEstimate est;
  est.k_min_abs = std::numeric_limits<double>::infinity();
  auto record = [&](double k) {
    est.k_min_abs = std::min(est.k_min_abs, std::abs(k));
    est.k_max_abs = std::max(est.k_max_abs, std::abs(k));
    ++est.planes;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) record(R(i, j, j, i));

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  for (std::size_t s = 0; s < num_samples;) {
    Eigen::VectorXd x(d), y(d);
    for (int i = 0; i < d; ++i) x(i) = normal(rng);
    for (int i = 0; i < d; ++i) y(i) = normal(rng);
    try {
      record(sectional_curvature(R, x, y));
      ++s;
    } catch (const DegeneratePlane&) {
    }
  }
  est.epsilon = est.k_max_abs > 0.0 ? 1.0 - est.k_min_abs / est.k_max_abs : 0.0;
  return est;
}

BergerReport berger_check(const CurvatureTensor& R, double epsilon) {
  const int d = R.dim();
  BergerReport rep;
  rep.bound = 2.0 * epsilon / 3.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          std::array<int, 4> idx{i, j, k, l};
          std::sort(idx.begin(), idx.end());
          if (std::unique(idx.begin(), idx.end()) - idx.begin() < 3) continue;
          const double v = std::abs(R(i, j, k, l));
          if (v > rep.max_mixed) {
            rep.max_mixed = v;
            rep.worst = {i, j, k, l};
          }
        }
  rep.max_violation = std::max(0.0, rep.max_mixed - rep.bound);
  rep.pass = rep.max_mixed <= rep.bound + 1e-12;
  return rep;
}

Eigen::MatrixXd standard_complex_structure(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(2 * i + 1, 2 * i) = 1.0;
    J(2 * i, 2 * i + 1) = -1.0;
  }
  return J;
}

Eigen::MatrixXd random_frame(int n, std::uint64_t seed, std::uint64_t index) {
  const int d = 2 * n;
  auto rng = frame_rng(seed, index);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd Rm = qr.matrixQR();
  for (int j = 0; j < d; ++j)
    if (Rm(j, j) < 0.0) Q.col(j) *= -1.0;
  if (Q.determinant() < 0.0) Q.col(0) *= -1.0;
  return Q;
}

CurvatureTensor rotate(const CurvatureTensor& R, const Eigen::MatrixXd& u) {
  const int d = R.dim();
  if (u.rows() != d || u.cols() != d) throw DimensionMismatch("rotate: frame size");
  // contract one index at a time: T(a..) = sum_i u(i, a) R(i..)
  CurvatureTensor cur = R, next = R;
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(next.R.begin(), next.R.end(), 0.0);
    int idx[4];
    for (idx[0] = 0; idx[0] < d; ++idx[0])
      for (idx[1] = 0; idx[1] < d; ++idx[1])
        for (idx[2] = 0; idx[2] < d; ++idx[2])
          for (idx[3] = 0; idx[3] < d; ++idx[3]) {
            const double v = cur(idx[0], idx[1], idx[2], idx[3]);
            if (v == 0.0) continue;
            int out[4] = {idx[0], idx[1], idx[2], idx[3]};
            for (int a = 0; a < d; ++a) {
              out[slot] = a;
              next(out[0], out[1], out[2], out[3]) += u(idx[slot], a) * v;
            }
          }
    std::swap(cur, next);
  }
  return cur;
}

Eigen::MatrixXd twistor_form(const CurvatureTensor& R, const Eigen::MatrixXd& frame) {
  const CurvatureTensor Rf = rotate(R, frame);
  const int d = R.dim();
  const Eigen::MatrixXd J = standard_complex_structure(R.n);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int m = 0; m < d; ++m)
        for (int c = 0; c < d; ++c)
          if (J(c, m) != 0.0) s += J(c, m) * Rf(a, b, c, m);
      T(a, b) = s;
    }
  return T;
}

Eigen::MatrixXd twistor_form_constant(int n, double kappa) {
  return 2.0 * kappa * standard_complex_structure(n).transpose();
}

FrameReport evaluate_frame(const CurvatureTensor& R, const Eigen::MatrixXd& frame, double bound, double tol) {
  FrameReport rep;
  const CurvatureTensor Rf = rotate(R, frame);
  const Eigen::MatrixXd T = twistor_form(R, frame);
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < R.n; ++i) {
    const double margin = std::abs(T(2 * i, 2 * i + 1)) / 2.0;
    rep.margins.push_back(margin);
    rep.sectional.push_back(Rf(2 * i, 2 * i + 1, 2 * i + 1, 2 * i));
    rep.min_margin = std::min(rep.min_margin, margin);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
  rep.min_sv = svd.singularValues().minCoeff();
  rep.pass = rep.min_margin >= bound - 1e-9 && rep.min_sv > tol;
  return rep;
}

namespace {

TwistorReport summarize(std::vector<FrameReport> frames, double bound) {
  TwistorReport rep;
  rep.bound = bound;
  rep.fat = true;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.min_sv = std::numeric_limits<double>::infinity();
  for (const auto& f : frames) {
    rep.fat = rep.fat && f.pass;
    rep.min_margin = std::min(rep.min_margin, f.min_margin);
    rep.min_sv = std::min(rep.min_sv, f.min_sv);
  }
  if (frames.empty()) rep.min_margin = rep.min_sv = 0.0;
  rep.frames = std::move(frames);
  return rep;
}

}  // namespace

TwistorReport twistor_fatness(const CurvatureTensor& R, std::size_t num_frames, std::uint64_t seed, double tol) {
  const double bound = bound_for(R);
  std::vector<FrameReport> frames(num_frames);
  const long count = static_cast<long>(num_frames);
#pragma omp parallel for schedule(static)
  for (long f = 0; f < count; ++f) {
    frames[f] = evaluate_frame(R, random_frame(R.n, seed, f), bound, tol);
    frames[f].index = f;
  }
  return summarize(std::move(frames), bound);
}

TwistorReport twistor_fatness_serial(const CurvatureTensor& R, std::size_t num_frames, std::uint64_t seed,
                                     double tol) {
  const double bound = bound_for(R);
  std::vector<FrameReport> frames;
  for (std::size_t f = 0; f < num_frames; ++f) {
    frames.push_back(evaluate_frame(R, random_frame(R.n, seed, f), bound, tol));
    frames.back().index = f;
  }
  return summarize(std::move(frames), bound);
}

}  // namespace fatcert
