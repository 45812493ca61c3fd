#include "fatcert/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace fatcert {

Signature signature(const RatMatrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw DimensionMismatch("signature of non-square matrix");
  RatMatrix a = symmetric;
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  Signature sig;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && sgn(a(i, i)) != 0) piv = i;
    if (piv == n) {
      // Zero diagonal: combine two indices with a nonzero coupling.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && !done[i] && !done[j] && sgn(a(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      piv = pi;
    }
    const Rational d = a(piv, piv);
    if (sgn(d) > 0) ++sig.positive; else ++sig.negative;
    done[piv] = true;
    --remaining;
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || sgn(a(r, piv)) == 0) continue;
      const Rational f = a(r, piv) / d;
      for (std::size_t c = 0; c < n; ++c)
        if (!done[c]) a(r, c) -= f * a(piv, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      a(r, piv) = 0;
      a(piv, r) = 0;
    }
  }
  sig.zero = remaining;
  return sig;
}

Signature signature(const Matrix<double>& symmetric, double rel_tol) {
  if (symmetric.rows() != symmetric.cols()) throw DimensionMismatch("signature of non-square matrix");
  Signature sig;
  if (symmetric.rows() == 0) return sig;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(symmetric));
  const auto& ev = es.eigenvalues();
  const double cut = rel_tol * std::max(1e-300, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) ++sig.positive;
    else if (ev(i) < -cut) ++sig.negative;
    else ++sig.zero;
  }
  return sig;
}

}  // namespace fatcert
