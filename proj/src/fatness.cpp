#include "fatcert/fatness.hpp"

#include <Eigen/SVD>

#include <exception>
#include <random>

namespace fatcert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Fat:
      return "fat";
    case Verdict::NotFat:
      return "not_fat";
    case Verdict::NotApplicable:
      return "not_applicable";
  }
  return "unknown";
}

template <typename Scalar>
Vector<Scalar> canonical_curvature(const Embedding<Scalar>& emb, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  if (!emb.in_m(x) || !emb.in_m(y)) throw NotInSubspace("canonical_curvature: arguments must lie in m");
  auto h = emb.split(emb.algebra().bracket(x, y)).h;
  const Scalar half = ScalarTraits<Scalar>::from_rational(make_rational(-1, 2));
  return scaled(h, half);
}

template <typename Scalar>
Matrix<Scalar> fatness_gram(const Embedding<Scalar>& emb, const Vector<Scalar>& xu) {
  const auto& g = emb.algebra();
  const auto u = vector_to_covector(g, xu);
  const auto& m = emb.m_basis();
  Matrix<Scalar> gram(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const Scalar v = dot(u, g.bracket(m[i], m[j]));
      gram(i, j) = v;
      gram(j, i) = -v;
    }
  return gram;
}

template <typename Scalar>
OracleVerdict fat_by_oracle(const Embedding<Scalar>& emb, const Vector<Scalar>& xu, double tol) {
  OracleVerdict out;
  const std::size_t n = emb.dim_m();
  if (n == 0) {
    out.fat = true;
    return out;
  }
  const Eigen::MatrixXd gram = to_eigen(fatness_gram(emb, xu));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  out.min_sv = smin;
  out.odd_dimension = n % 2 == 1;
  out.fat = !out.odd_dimension && smax > 0.0 && smin > tol * smax;
  if (!out.fat) {
    const Eigen::VectorXd w = svd.matrixV().col(sv.size() - 1);
    out.null_vector = std::vector<double>(w.data(), w.data() + w.size());
    out.null_residual = (gram * w).norm();
  }
  return out;
}

template <typename Scalar>
std::vector<Vector<Scalar>> isotropy_algebra(const LieAlgebra<Scalar>& g, const Vector<Scalar>& xu) {
  return kernel(g.ad(xu), 1e-9);
}

template <typename Scalar>
CentralizerVerdict<Scalar> fat_by_centralizer(const Embedding<Scalar>& emb, const Vector<Scalar>& xu) {
  if (!emb.in_h(xu)) throw NotInSubspace("fat_by_centralizer: X_u must lie in h");
  const auto& g = emb.algebra();
  CentralizerVerdict<Scalar> out;
  out.centralizer_dim = isotropy_algebra(g, xu).size();
  // ad_{X_u} preserves m, so ker ad_{X_u} = (ker in h) + (ker in m).
  std::vector<Vector<Scalar>> images;
  for (const auto& y : emb.m_basis()) images.push_back(g.bracket(xu, y));
  const auto ker = emb.dim_m() ? kernel(Matrix<Scalar>::from_columns(images, g.dim()), 1e-9)
                               : std::vector<Vector<Scalar>>{};
  out.fat = ker.empty();
  if (!out.fat) {
    Vector<Scalar> w(g.dim());
    for (std::size_t i = 0; i < emb.dim_m(); ++i)
      for (std::size_t k = 0; k < g.dim(); ++k) w[k] += ker.front()[i] * emb.m_basis()[i][k];
    out.witness = std::move(w);
  }
  return out;
}

CriteriaDisagree::CriteriaDisagree(FatnessCertificate cert)
    : Error("fatness criteria disagree for '" + cert.instance + "': roots=" + to_string(cert.roots) +
            " oracle=" + to_string(cert.oracle) + " centralizer=" + to_string(cert.centralizer)),
      cert_(std::move(cert)) {}

namespace {

std::vector<std::string> as_strings(const Vector<Rational>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return s;
}

std::vector<std::string> as_strings(const Vector<double>& v) {
  std::vector<std::string> s;
  for (double x : v) s.push_back(std::to_string(x));
  return s;
}

RootVerdict roots_verdict(const Vector<Rational>& coords, const SubSystem& sub) { return fat_by_roots(coords, sub); }

RootVerdict roots_verdict(const Vector<double>& coords, const SubSystem& sub) {
  const double tol = 1e-9 * std::max(1.0, max_abs(coords));
  for (const auto& a : sub.forbidden) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * coords[i];
    if (std::abs(v) <= tol) return {false, a};
  }
  return {true, std::nullopt};
}

}  // namespace

template <typename Scalar>
Certifier<Scalar>::Certifier(Embedding<Scalar> emb, std::optional<SubSystem> sub, double tol)
    : emb_(std::move(emb)), sub_(std::move(sub)), tol_(tol) {
  if (!(tol_ > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

template <typename Scalar>
FatnessCertificate Certifier<Scalar>::certify(const Vector<Scalar>& xu, std::string instance) const {
  FatnessCertificate cert;
  cert.instance = std::move(instance);
  const auto torus_coords = emb_.torus_coordinates(xu);
  if (torus_coords) {
    cert.xu_basis = "torus";
    cert.xu = as_strings(*torus_coords);
  } else {
    cert.xu_basis = "algebra";
    cert.xu = as_strings(xu);
  }

  if (sub_ && torus_coords) {
    const auto rv = roots_verdict(*torus_coords, *sub_);
    cert.roots = verdict_of(rv.fat);
    cert.witness_root = rv.witness;
  }

  const auto ov = fat_by_oracle(emb_, xu, tol_);
  cert.oracle = verdict_of(ov.fat);
  cert.min_sv = ov.min_sv;
  cert.singular_values = ov.singular_values;
  cert.null_vector = ov.null_vector;
  cert.odd_dimension = ov.odd_dimension;

  const auto cv = fat_by_centralizer(emb_, xu);
  cert.centralizer = verdict_of(cv.fat);
  cert.centralizer_dim = cv.centralizer_dim;
  if (cv.witness) cert.centralizer_witness = as_strings(*cv.witness);

  cert.agreed = cert.oracle == cert.centralizer &&
                (cert.roots == Verdict::NotApplicable || cert.roots == cert.oracle);
  if (!cert.agreed) throw CriteriaDisagree(std::move(cert));
  return cert;
}

template <typename Scalar>
FatnessCertificate Certifier<Scalar>::certify_torus(const RatVector& coords, std::string instance) const {
  return certify(emb_.torus_element(coords), std::move(instance));
}

template <typename Scalar>
FatnessCertificate certify(const Embedding<Scalar>& emb, const std::optional<RootSystem>& rs, const Vector<Scalar>& xu,
                           double tol) {
  std::optional<SubSystem> sub;
  if (rs) sub = detect_subsystem(emb, *rs);
  return Certifier<Scalar>(emb, std::move(sub), tol).certify(xu);
}

std::vector<RatVector> sample_torus_points(std::size_t coordinate_dim, std::size_t count, std::uint64_t seed,
                                           bool trace_zero) {
  std::mt19937_64 rng(seed);
  std::vector<RatVector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    RatVector x(coordinate_dim);
    for (std::size_t i = 0; i < coordinate_dim; ++i) {
      const long num = static_cast<long>(rng() % 19) - 9;
      const long den = 1 + static_cast<long>(rng() % 3);
      x[i] = make_rational(num, den);
    }
    if (trace_zero && coordinate_dim > 0) {
      Rational sum = 0;
      for (std::size_t i = 0; i + 1 < coordinate_dim; ++i) sum += x[i];
      x.back() = -sum;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<RatVector> sample_torus_coordinates(const ExactEmbedding& emb, std::size_t count, std::uint64_t seed) {
  if (!emb.has_torus()) throw TorusMismatch(emb.label() + ": no torus attached");
  const auto rows = emb.torus_root_coords().transpose();
  std::vector<RatVector> out;
  for (auto& y : sample_torus_points(emb.torus_basis().size(), count, seed)) out.push_back(rows * y);
  return out;
}

std::vector<FatnessCertificate> certify_batch_serial(const ExactCertifier& certifier,
                                                     const std::vector<RatVector>& points) {
  std::vector<FatnessCertificate> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(certifier.certify_torus(p));
  return out;
}

std::vector<FatnessCertificate> certify_batch(const ExactCertifier& certifier, const std::vector<RatVector>& points) {
  const long n = static_cast<long>(points.size());
  std::vector<FatnessCertificate> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = certifier.certify_torus(points[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template Vector<Rational> canonical_curvature(const ExactEmbedding&, const Vector<Rational>&, const Vector<Rational>&);
template Vector<double> canonical_curvature(const FloatEmbedding&, const Vector<double>&, const Vector<double>&);
template Matrix<Rational> fatness_gram(const ExactEmbedding&, const Vector<Rational>&);
template Matrix<double> fatness_gram(const FloatEmbedding&, const Vector<double>&);
template OracleVerdict fat_by_oracle(const ExactEmbedding&, const Vector<Rational>&, double);
template OracleVerdict fat_by_oracle(const FloatEmbedding&, const Vector<double>&, double);
template std::vector<Vector<Rational>> isotropy_algebra(const ExactAlgebra&, const Vector<Rational>&);
template std::vector<Vector<double>> isotropy_algebra(const FloatAlgebra&, const Vector<double>&);
template CentralizerVerdict<Rational> fat_by_centralizer(const ExactEmbedding&, const Vector<Rational>&);
template CentralizerVerdict<double> fat_by_centralizer(const FloatEmbedding&, const Vector<double>&);
template class Certifier<Rational>;
template class Certifier<double>;
template FatnessCertificate certify(const ExactEmbedding&, const std::optional<RootSystem>&, const Vector<Rational>&,
                                    double);
template FatnessCertificate certify(const FloatEmbedding&, const std::optional<RootSystem>&, const Vector<double>&,
                                    double);

}  // namespace fatcert
