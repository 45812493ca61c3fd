#include "fatcert/coupling.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/SVD>

#include "fatcert/fatness.hpp"

namespace fatcert {

namespace {

template <typename Scalar>
double magnitude(const Scalar& x) {
  return std::abs(ScalarTraits<Scalar>::to_double(x));
}

template <typename Scalar>
std::vector<Vector<Scalar>> combine(const std::vector<Vector<Scalar>>& basis, const std::vector<Vector<Scalar>>& coeffs,
                                    std::size_t dim) {
  std::vector<Vector<Scalar>> out;
  for (const auto& c : coeffs) {
    Vector<Scalar> w(dim);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t k = 0; k < dim; ++k) w[k] += c[i] * basis[i][k];
    out.push_back(std::move(w));
  }
  return out;
}

template <typename Scalar>
HomogeneousBundle<Scalar> assemble(const Embedding<Scalar>& emb, std::vector<Vector<Scalar>> v,
                                   const Vector<Scalar>& xu) {
  const auto& g = emb.algebra();
  const auto& h = emb.h_basis();
  HomogeneousBundle<Scalar> b{emb, xu, std::move(v), {}, {}};
  Matrix<Scalar> pairing(b.v_basis.size(), h.size());
  for (std::size_t j = 0; j < b.v_basis.size(); ++j)
    for (std::size_t i = 0; i < h.size(); ++i) pairing(j, i) = g.killing(b.v_basis[j], h[i]);
  const auto coeffs = b.v_basis.empty() ? std::vector<Vector<Scalar>>{} : kernel(pairing, 1e-9);
  if (b.v_basis.empty()) {
    b.vertical_basis = h;
  } else {
    b.vertical_basis = combine(h, coeffs, g.dim());
  }
  if (b.vertical_basis.size() + b.v_basis.size() != h.size())
    throw DegenerateRestriction(emb.label() + ": Killing form is degenerate on the isotropy of X_u");
  b.n_basis = b.vertical_basis;
  for (const auto& y : emb.m_basis()) b.n_basis.push_back(y);
  return b;
}

}  // namespace

template <typename Scalar>
HomogeneousBundle<Scalar> make_bundle(const Embedding<Scalar>& emb, const Vector<Scalar>& xu) {
  if (!emb.in_h(xu)) throw NotInSubspace(emb.label() + ": X_u must lie in h");
  return assemble(emb, centralizer_in(emb.algebra(), emb.h_basis(), xu), xu);
}

template <typename Scalar>
HomogeneousBundle<Scalar> make_bundle(const Embedding<Scalar>& emb, const std::vector<Vector<Scalar>>& v,
                                      const Vector<Scalar>& xu) {
  if (!emb.in_h(xu)) throw NotInSubspace(emb.label() + ": X_u must lie in h");
  const auto& g = emb.algebra();
  const auto iso = centralizer_in(g, emb.h_basis(), xu);
  bool same = v.size() == iso.size();
  if (same && !v.empty()) {
    auto both = v;
    both.insert(both.end(), iso.begin(), iso.end());
    same = rank(Matrix<Scalar>::from_columns(v, g.dim()), 1e-9) == v.size() &&
           rank(Matrix<Scalar>::from_columns(both, g.dim()), 1e-9) == v.size();
  }
  if (!same) throw IsotropyMismatch(emb.label() + ": v is not the isotropy algebra of X_u in h");
  return assemble(emb, v, xu);
}

template <typename Scalar>
InvariantTwoForm<Scalar> coupling_form(const HomogeneousBundle<Scalar>& bundle, const Scalar& scale) {
  const auto& g = bundle.emb.algebra();
  const auto u = vector_to_covector(g, bundle.xu);
  const auto& n = bundle.n_basis;
  InvariantTwoForm<Scalar> form{Matrix<Scalar>(n.size(), n.size()), scale, bundle.dim_vertical()};
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j) {
      const Scalar v = scale * dot(u, g.bracket(n[i], n[j]));
      form.gram(i, j) = v;
      form.gram(j, i) = -v;
    }
  return form;
}

template <typename Scalar>
InvariantTwoForm<Scalar> rescale_horizontal(const InvariantTwoForm<Scalar>& form, const Scalar& factor) {
  auto out = form;
  const std::size_t d = form.gram.rows();
  for (std::size_t i = form.vertical_dim; i < d; ++i)
    for (std::size_t j = form.vertical_dim; j < d; ++j) out.gram(i, j) *= factor;
  return out;
}

template <typename Scalar>
BlockReport verify_block_structure(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form) {
  using T = ScalarTraits<Scalar>;
  BlockReport rep;
  const std::size_t vd = form.vertical_dim;
  const std::size_t d = form.gram.rows();
  const double scale = std::max(1.0, max_abs(form.gram));
  for (std::size_t i = 0; i < vd; ++i)
    for (std::size_t j = vd; j < d; ++j) rep.cross_max = std::max(rep.cross_max, magnitude(form.gram(i, j)));
  rep.cross_zero = T::exact ? rep.cross_max == 0.0 : rep.cross_max <= 1e-10 * scale;

  Matrix<Scalar> vertical(vd, vd);
  for (std::size_t i = 0; i < vd; ++i)
    for (std::size_t j = 0; j < vd; ++j) vertical(i, j) = form.gram(i, j);
  rep.vertical_nondegenerate = vd == 0 || rank(vertical, 1e-9) == vd;

  const auto fat = fatness_gram(bundle.emb, bundle.xu);
  double diff = 0.0;
  for (std::size_t i = 0; i < fat.rows(); ++i)
    for (std::size_t j = 0; j < fat.cols(); ++j)
      diff = std::max(diff, magnitude(Scalar(form.gram(vd + i, vd + j) - form.scale * fat(i, j))));
  rep.horizontal_matches_fatness = T::exact ? diff == 0.0 : diff <= 1e-10 * scale;

  const auto& g = bundle.emb.algebra();
  const auto& m = bundle.emb.m_basis();
  for (std::size_t i = 0; i < m.size() && !rep.theta_ratio; ++i)
    for (std::size_t j = i + 1; j < m.size() && !rep.theta_ratio; ++j) {
      const Scalar theta = g.killing(bundle.xu, canonical_curvature(bundle.emb, m[i], m[j]));
      if (T::is_zero(theta, 1e-12) || T::is_zero(form.scale, 0.0)) continue;
      rep.theta_ratio = T::to_double(Scalar(form.gram(vd + i, vd + j) / form.scale / theta));
    }
  return rep;
}

template <typename Scalar>
Matrix<Scalar> extend_to_algebra(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form) {
  const auto& g = bundle.emb.algebra();
  auto cols = bundle.v_basis;
  cols.insert(cols.end(), bundle.n_basis.begin(), bundle.n_basis.end());
  if (cols.size() != g.dim()) throw DimensionMismatch("v + n does not span g");
  const auto P = inverse(Matrix<Scalar>::from_columns(cols, g.dim()));
  if (!P) throw DimensionMismatch("v + n is not a basis of g");
  const std::size_t dv = bundle.v_basis.size();
  Matrix<Scalar> full(g.dim(), g.dim());
  for (std::size_t i = 0; i < form.gram.rows(); ++i)
    for (std::size_t j = 0; j < form.gram.cols(); ++j) full(dv + i, dv + j) = form.gram(i, j);
  return P->transpose() * full * *P;
}

template <typename Scalar>
double ce_closedness(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form) {
  const auto& g = bundle.emb.algebra();
  const auto S = extend_to_algebra(bundle, form);
  const std::size_t d = g.dim();
  // sigma([e_a, e_b], e_c) for all a, b, c
  std::vector<Scalar> sb(d * d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& c = g.constant(a, b, k);
        if (ScalarTraits<Scalar>::is_zero(c, 0.0)) continue;
        for (std::size_t e = 0; e < d; ++e) sb[(a * d + b) * d + e] += c * S(k, e);
      }
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      for (std::size_t c = b + 1; c < d; ++c) {
        const Scalar v = sb[(a * d + b) * d + c] + sb[(b * d + c) * d + a] + sb[(c * d + a) * d + b];
        worst = std::max(worst, magnitude(v));
      }
  return worst;
}

template <typename Scalar>
TopPowerReport nondegenerate_and_top_power(const InvariantTwoForm<Scalar>& form, std::size_t half_dim) {
  using T = ScalarTraits<Scalar>;
  const std::size_t d = form.gram.rows();
  if (d % 2 == 1 || d != 2 * half_dim)
    throw OddDimension("form has size " + std::to_string(d) + ", expected " + std::to_string(2 * half_dim));
  TopPowerReport rep;
  const Scalar pf = pfaffian(form.gram);
  const Scalar det = determinant(form.gram);
  if constexpr (T::exact) {
    rep.pfaffian = pf.get_str();
    rep.pfaffian_squares_to_det = pf * pf == det;
  } else {
    std::ostringstream os;
    os << std::setprecision(17) << pf;
    rep.pfaffian = os.str();
    rep.pfaffian_squares_to_det = std::abs(pf * pf - det) <= 1e-9 * std::max(1.0, std::abs(det));
  }
  rep.pfaffian_abs = magnitude(pf);
  rep.pfaffian_abs_from_det = std::sqrt(magnitude(det));
  if (d == 0) {
    rep.nondegenerate = true;
    return rep;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(form.gram));
  rep.max_sv = svd.singularValues().maxCoeff();
  rep.min_sv = svd.singularValues().minCoeff();
  rep.nondegenerate = T::exact ? !T::is_zero(pf) : rep.min_sv > 1e-9 * rep.max_sv;
  return rep;
}

template <typename Scalar>
InvariantTwoForm<Scalar> shifted_coupling(const Embedding<Scalar>& emb, const Vector<Scalar>& xu, const RatVector& a,
                                          HomogeneousBundle<Scalar>* bundle_out) {
  auto bundle = make_bundle(emb, add(xu, emb.torus_element(a)));
  auto form = coupling_form(bundle);
  if (bundle_out) *bundle_out = std::move(bundle);
  return form;
}

#define FATCERT_COUPLING(S)                                                                                    \
  template HomogeneousBundle<S> make_bundle(const Embedding<S>&, const Vector<S>&);                            \
  template HomogeneousBundle<S> make_bundle(const Embedding<S>&, const std::vector<Vector<S>>&,                \
                                            const Vector<S>&);                                                 \
  template InvariantTwoForm<S> coupling_form(const HomogeneousBundle<S>&, const S&);                           \
  template InvariantTwoForm<S> rescale_horizontal(const InvariantTwoForm<S>&, const S&);                       \
  template BlockReport verify_block_structure(const HomogeneousBundle<S>&, const InvariantTwoForm<S>&);        \
  template Matrix<S> extend_to_algebra(const HomogeneousBundle<S>&, const InvariantTwoForm<S>&);               \
  template double ce_closedness(const HomogeneousBundle<S>&, const InvariantTwoForm<S>&);                      \
  template TopPowerReport nondegenerate_and_top_power(const InvariantTwoForm<S>&, std::size_t);                \
  template InvariantTwoForm<S> shifted_coupling(const Embedding<S>&, const Vector<S>&, const RatVector&,       \
                                                HomogeneousBundle<S>*);

FATCERT_COUPLING(Rational)
FATCERT_COUPLING(double)

}  // namespace fatcert
