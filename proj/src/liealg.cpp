#include "fatcert/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fatcert {

namespace {

template <typename Scalar>
Matrix<Scalar> commutator(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  return a * b - b * a;
}

template <typename Scalar>
Vector<Scalar> combine(const std::vector<Vector<Scalar>>& vectors, const Vector<Scalar>& coeffs,
                       std::size_t dim) {
  Vector<Scalar> out(dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (ScalarTraits<Scalar>::is_zero(coeffs[i], 0.0)) continue;
    for (std::size_t k = 0; k < dim; ++k) out[k] += coeffs[i] * vectors[i][k];
  }
  return out;
}

// Clears denominators so that integer-valued bases stay integer.
RatVector primitive_integer(RatVector v) {
  mpz_class l = 1;
  for (const auto& x : v)
    if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : v) x *= l;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// LieAlgebra

template <typename Scalar>
LieAlgebra<Scalar> LieAlgebra<Scalar>::from_matrices(std::string name, std::vector<Mat> basis,
                                                     AlgebraSource source) {
  if (basis.empty()) throw DimensionMismatch("empty basis");
  const std::size_t n = basis.front().rows();
  for (const auto& b : basis)
    if (b.rows() != n || b.cols() != n) throw DimensionMismatch("basis matrices must be square and equal size");

  LieAlgebra g;
  g.name_ = std::move(name);
  g.source_ = std::move(source);
  g.dim_ = basis.size();
  g.basis_ = std::move(basis);

  // Flattened basis as rows; its pivot columns are matrix entries on which
  // the basis restricts to an invertible square system.
  Mat flat(g.dim_, n * n);
  for (std::size_t i = 0; i < g.dim_; ++i)
    for (std::size_t e = 0; e < n * n; ++e) flat(i, e) = g.basis_[i].data()[e];
  const auto ech = rref(flat);
  if (ech.pivots.size() < g.dim_) throw NotSubalgebra(g.name_ + ": basis matrices are linearly dependent");
  g.pivot_entries_ = ech.pivots;
  Mat restricted(g.dim_, g.dim_);
  for (std::size_t r = 0; r < g.dim_; ++r)
    for (std::size_t i = 0; i < g.dim_; ++i) restricted(r, i) = g.basis_[i].data()[g.pivot_entries_[r]];
  auto inv = inverse(restricted);
  if (!inv) throw NotSubalgebra(g.name_ + ": basis matrices are linearly dependent");
  g.pivot_inverse_ = std::move(*inv);

  double scale = 0.0;
  for (const auto& b : g.basis_) scale = std::max(scale, max_abs(b));
  g.tol_ = ScalarTraits<Scalar>::exact ? 0.0 : 1e-10 * std::max(1.0, scale * scale);

  g.constants_.assign(g.dim_ * g.dim_ * g.dim_, Scalar(0));
  for (std::size_t i = 0; i < g.dim_; ++i)
    for (std::size_t j = i + 1; j < g.dim_; ++j) {
      auto c = g.coordinates(commutator(g.basis_[i], g.basis_[j]));
      if (!c) throw NotSubalgebra(g.name_ + ": basis is not closed under the commutator");
      for (std::size_t k = 0; k < g.dim_; ++k) {
        g.constants_[(i * g.dim_ + j) * g.dim_ + k] = (*c)[k];
        g.constants_[(j * g.dim_ + i) * g.dim_ + k] = -(*c)[k];
      }
    }
  g.finish();
  return g;
}

template <typename Scalar>
LieAlgebra<Scalar> LieAlgebra<Scalar>::from_structure_constants(std::string name, std::size_t dim,
                                                                std::vector<Scalar> constants,
                                                                AlgebraSource source) {
  if (dim == 0 || constants.size() != dim * dim * dim)
    throw DimensionMismatch("structure constants must have dim^3 entries");
  LieAlgebra g;
  g.name_ = std::move(name);
  g.source_ = std::move(source);
  g.dim_ = dim;
  g.constants_ = std::move(constants);
  double scale = 0.0;
  for (const auto& c : g.constants_) scale = std::max(scale, std::abs(ScalarTraits<Scalar>::to_double(c)));
  g.tol_ = ScalarTraits<Scalar>::exact ? 0.0 : 1e-10 * std::max(1.0, scale);
  g.finish();
  return g;
}

template <typename Scalar>
void LieAlgebra<Scalar>::finish() {
  terms_.assign(dim_, {});
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Scalar& c = constant(i, j, k);
        if (!ScalarTraits<Scalar>::is_zero(c, 0.0)) terms_[i].push_back({j, k, c});
      }
  // B_ab = sum_{k,l} c^l_{ak} c^k_{bl}
  killing_ = Mat(dim_, dim_);
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = a; b < dim_; ++b) {
      Scalar s(0);
      for (const auto& t : terms_[a]) {
        const Scalar& other = constant(b, t.k, t.j);
        if (!ScalarTraits<Scalar>::is_zero(other, 0.0)) s += t.value * other;
      }
      killing_(a, b) = s;
      killing_(b, a) = s;
    }
}

template <typename Scalar>
typename LieAlgebra<Scalar>::Vec LieAlgebra<Scalar>::unit(std::size_t i) const {
  Vec v(dim_);
  v.at(i) = Scalar(1);
  return v;
}

template <typename Scalar>
typename LieAlgebra<Scalar>::Vec LieAlgebra<Scalar>::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("bracket: vector length != dim");
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (ScalarTraits<Scalar>::is_zero(x[i], 0.0)) continue;
    for (const auto& t : terms_[i]) {
      if (ScalarTraits<Scalar>::is_zero(y[t.j], 0.0)) continue;
      out[t.k] += x[i] * y[t.j] * t.value;
    }
  }
  return out;
}

template <typename Scalar>
typename LieAlgebra<Scalar>::Mat LieAlgebra<Scalar>::ad(const Vec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("ad: vector length != dim");
  Mat a(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (ScalarTraits<Scalar>::is_zero(x[i], 0.0)) continue;
    for (const auto& t : terms_[i]) a(t.k, t.j) += x[i] * t.value;
  }
  return a;
}

template <typename Scalar>
Scalar LieAlgebra<Scalar>::killing(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("killing: vector length != dim");
  return dot(x, killing_ * y);
}

template <typename Scalar>
typename LieAlgebra<Scalar>::Mat LieAlgebra<Scalar>::realize(const Vec& x) const {
  if (!has_matrices()) throw UnsupportedFamily(name_ + " has no matrix realization");
  if (x.size() != dim_) throw DimensionMismatch("realize: vector length != dim");
  const std::size_t n = matrix_size();
  Mat m(n, n);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (ScalarTraits<Scalar>::is_zero(x[i], 0.0)) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) += x[i] * basis_[i](r, c);
  }
  return m;
}

template <typename Scalar>
std::optional<typename LieAlgebra<Scalar>::Vec> LieAlgebra<Scalar>::coordinates(const Mat& m) const {
  if (!has_matrices()) throw UnsupportedFamily(name_ + " has no matrix realization");
  if (m.rows() != matrix_size() || m.cols() != matrix_size())
    throw DimensionMismatch("coordinates: matrix size mismatch");
  Vec restricted(dim_);
  for (std::size_t r = 0; r < dim_; ++r) restricted[r] = m.data()[pivot_entries_[r]];
  Vec x = pivot_inverse_ * restricted;
  const Mat diff = realize(x) - m;
  if (ScalarTraits<Scalar>::exact) {
    if (!is_zero_vector(diff.data())) return std::nullopt;
  } else if (max_abs(diff) > 1e-9 * std::max(1.0, max_abs(m))) {
    return std::nullopt;
  }
  return x;
}

template <typename Scalar>
double LieAlgebra<Scalar>::jacobi_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Vec eij = bracket(unit(i), unit(j));
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vec s = bracket(eij, unit(k));
        s = add(s, bracket(bracket(unit(j), unit(k)), unit(i)));
        s = add(s, bracket(bracket(unit(k), unit(i)), unit(j)));
        worst = std::max(worst, max_abs(s));
      }
    }
  return worst;
}

template <typename Scalar>
double LieAlgebra<Scalar>::ad_invariance_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const Mat a = ad(unit(k));
    const Mat s = a.transpose() * killing_ + killing_ * a;
    worst = std::max(worst, max_abs(s));
  }
  return worst;
}

template <typename Scalar>
bool LieAlgebra<Scalar>::is_semisimple() const {
  return rank(killing_) == dim_;
}

template class LieAlgebra<Rational>;
template class LieAlgebra<double>;

template <typename Scalar>
Vector<Scalar> vector_to_covector(const LieAlgebra<Scalar>& g, const Vector<Scalar>& x) {
  if (x.size() != g.dim()) throw DimensionMismatch("covector: length != dim");
  return g.killing_gram() * x;
}

template <typename Scalar>
Vector<Scalar> covector_to_vector(const LieAlgebra<Scalar>& g, const Vector<Scalar>& u) {
  if (u.size() != g.dim()) throw DimensionMismatch("covector: length != dim");
  auto x = solve(g.killing_gram(), u);
  if (!x || !g.is_semisimple()) throw DegenerateRestriction(g.name() + ": Killing form is degenerate");
  return *x;
}

template Vector<Rational> vector_to_covector(const ExactAlgebra&, const Vector<Rational>&);
template Vector<double> vector_to_covector(const FloatAlgebra&, const Vector<double>&);
template Vector<Rational> covector_to_vector(const ExactAlgebra&, const Vector<Rational>&);
template Vector<double> covector_to_vector(const FloatAlgebra&, const Vector<double>&);

FloatAlgebra to_float(const ExactAlgebra& g) {
  if (g.has_matrices()) {
    std::vector<Matrix<double>> basis;
    for (const auto& b : g.basis()) basis.push_back(to_double(b));
    return FloatAlgebra::from_matrices(g.name(), std::move(basis), g.source());
  }
  return FloatAlgebra::from_structure_constants(g.name(), g.dim(), to_double(g.constants()), g.source());
}

// ---------------------------------------------------------------------------
// Families

namespace {

RatMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix e(n, n);
  e(i, j) = 1;
  return e;
}

std::string family_name(const std::string& family, const std::vector<int>& params) {
  std::string s = family + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
  return s + ")";
}

}  // namespace

ExactAlgebra make_so(int n) {
  if (n < 2) throw UnsupportedFamily("so(n) needs n >= 2");
  return make_so_pq(n, 0);
}

ExactAlgebra make_so_pq(int p, int q) {
  const int n = p + q;
  if (p < 0 || q < 0 || n < 2) throw UnsupportedFamily("so(p,q) needs p,q >= 0 and p+q >= 2");
  std::vector<RatMatrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool mixed = (i < p) != (j < p);
      RatMatrix x = elementary(n, i, j);
      x(j, i) = mixed ? 1 : -1;
      basis.push_back(std::move(x));
    }
  if (q == 0) return ExactAlgebra::from_matrices(family_name("so", {n}), std::move(basis), {"so", {n}});
  return ExactAlgebra::from_matrices(family_name("so", {p, q}), std::move(basis), {"so_pq", {p, q}});
}

ExactAlgebra make_su(int n) {
  if (n < 2) throw UnsupportedFamily("su(n) needs n >= 2");
  const std::size_t size = 2 * n;
  // Z = A + iB  ->  [[A, -B], [B, A]]
  auto realize = [size, n](const RatMatrix& a, const RatMatrix& b) {
    RatMatrix m(size, size);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        m(r, c) = a(r, c);
        m(r + n, c + n) = a(r, c);
        m(r, c + n) = -b(r, c);
        m(r + n, c) = b(r, c);
      }
    return m;
  };
  const RatMatrix zero(n, n);
  std::vector<RatMatrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RatMatrix a = elementary(n, i, j);
      a(j, i) = -1;
      basis.push_back(realize(a, zero));
      RatMatrix b = elementary(n, i, j);
      b(j, i) = 1;
      basis.push_back(realize(zero, b));
    }
  for (int k = 0; k + 1 < n; ++k) {
    RatMatrix b = elementary(n, k, k);
    b(k + 1, k + 1) = -1;
    basis.push_back(realize(zero, b));
  }
  return ExactAlgebra::from_matrices(family_name("su", {n}), std::move(basis), {"su", {n}});
}

RatMatrix block_complex_structure(int n, int size) {
  if (2 * n > size) throw DimensionMismatch("complex structure does not fit");
  RatMatrix j(size, size);
  for (int k = 0; k < n; ++k) {
    j(2 * k, 2 * k + 1) = -1;
    j(2 * k + 1, 2 * k) = 1;
  }
  return j;
}

ExactAlgebra make_u_in_so(int n) {
  if (n < 1) throw UnsupportedFamily("u(n) needs n >= 1");
  const auto so = make_so(2 * n);
  const auto j = *so.coordinates(block_complex_structure(n, 2 * n));
  std::vector<RatMatrix> basis;
  for (auto& v : kernel(so.ad(j))) basis.push_back(so.realize(primitive_integer(std::move(v))));
  return ExactAlgebra::from_matrices(family_name("u_in_so", {n}), std::move(basis), {"u_in_so", {n}});
}

ExactAlgebra build_algebra(const std::string& family, const std::vector<int>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw UnsupportedFamily(family + " expects " + std::to_string(count) + " parameter(s)");
  };
  if (family == "so") {
    need(1);
    return make_so(params[0]);
  }
  if (family == "so_pq") {
    need(2);
    return make_so_pq(params[0], params[1]);
  }
  if (family == "su") {
    need(1);
    return make_su(params[0]);
  }
  if (family == "u_in_so") {
    need(1);
    return make_u_in_so(params[0]);
  }
  throw UnsupportedFamily("unsupported family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Embedding

template <typename Scalar>
typename Embedding<Scalar>::Vec Embedding<Scalar>::split_coefficients(const Vec& x) const {
  if (x.size() != algebra_->dim()) throw DimensionMismatch("split: vector length != dim");
  return split_inverse_ * x;
}

template <typename Scalar>
typename Embedding<Scalar>::Parts Embedding<Scalar>::split(const Vec& x) const {
  const Vec c = split_coefficients(x);
  const std::size_t n = algebra_->dim();
  Vec ch(c.begin(), c.begin() + dim_h());
  Vec cm(c.begin() + dim_h(), c.end());
  return {combine(h_basis_, ch, n), combine(m_basis_, cm, n)};
}

template <typename Scalar>
bool Embedding<Scalar>::in_h(const Vec& x) const {
  const Vec c = split_coefficients(x);
  const double tol = ScalarTraits<Scalar>::exact ? 0.0 : 1e-9 * std::max(1.0, max_abs(x));
  for (std::size_t i = dim_h(); i < c.size(); ++i)
    if (!ScalarTraits<Scalar>::is_zero(c[i], tol)) return false;
  return true;
}

template <typename Scalar>
bool Embedding<Scalar>::in_m(const Vec& x) const {
  const Vec c = split_coefficients(x);
  const double tol = ScalarTraits<Scalar>::exact ? 0.0 : 1e-9 * std::max(1.0, max_abs(x));
  for (std::size_t i = 0; i < dim_h(); ++i)
    if (!ScalarTraits<Scalar>::is_zero(c[i], tol)) return false;
  return true;
}

template <typename Scalar>
typename Embedding<Scalar>::Vec Embedding<Scalar>::torus_element(const Vector<Rational>& root_coords) const {
  if (!has_torus()) throw TorusMismatch(label_ + ": no torus attached");
  if (root_coords.size() != root_coordinate_dim())
    throw DimensionMismatch("torus coordinates have length " + std::to_string(root_coords.size()) +
                            ", expected " + std::to_string(root_coordinate_dim()));
  Vec rhs(root_coords.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = ScalarTraits<Scalar>::from_rational(root_coords[i]);
  auto y = solve(torus_coords_.transpose(), rhs);
  if (!y) throw NotInSubspace("coordinates are not in the image of the torus");
  return combine(torus_, *y, algebra_->dim());
}

template <typename Scalar>
std::optional<Vector<Scalar>> Embedding<Scalar>::torus_coordinates(const Vec& x) const {
  if (!has_torus()) return std::nullopt;
  auto y = solve(Mat::from_columns(torus_, algebra_->dim()), x);
  if (!y) return std::nullopt;
  return torus_coords_.transpose() * *y;
}

template <typename Scalar>
Embedding<Scalar> Embedding<Scalar>::with_torus(std::vector<Vec> torus, Mat root_coords) const {
  if (root_coords.rows() != torus.size()) throw DimensionMismatch("one root-coordinate row per torus element");
  const double tol = algebra_->tolerance();
  for (std::size_t a = 0; a < torus.size(); ++a) {
    if (!in_h(torus[a])) throw TorusMismatch(label_ + ": torus element outside h");
    for (std::size_t b = a + 1; b < torus.size(); ++b)
      if (!is_zero_vector(algebra_->bracket(torus[a], torus[b]), tol))
        throw TorusMismatch(label_ + ": torus is not abelian");
  }
  Embedding e = *this;
  e.torus_ = std::move(torus);
  e.torus_coords_ = std::move(root_coords);
  return e;
}

template <typename Scalar>
Embedding<Scalar> Embedding<Scalar>::with_label(std::string label) const {
  Embedding e = *this;
  e.label_ = std::move(label);
  return e;
}

template <typename Scalar>
Embedding<Scalar> reductive_split(std::shared_ptr<const LieAlgebra<Scalar>> g, std::vector<Vector<Scalar>> h_basis) {
  const auto& alg = *g;
  const std::size_t n = alg.dim();
  const double tol = alg.tolerance();
  for (const auto& v : h_basis)
    if (v.size() != n) throw DimensionMismatch("h basis vector length != dim");
  const Matrix<Scalar> h = Matrix<Scalar>::from_columns(h_basis, n);
  if (rank(h) != h_basis.size()) throw NotSubalgebra("h basis is linearly dependent");
  for (std::size_t a = 0; a < h_basis.size(); ++a)
    for (std::size_t b = a + 1; b < h_basis.size(); ++b)
      if (!solve(h, alg.bracket(h_basis[a], h_basis[b]))) throw NotSubalgebra("h is not closed under the bracket");

  const Matrix<Scalar> hk = h.transpose() * alg.killing_gram();
  const Matrix<Scalar> bh = hk * h;
  if (rank(bh) != h_basis.size()) throw DegenerateRestriction("Killing form is degenerate on h");

  Embedding<Scalar> e;
  e.algebra_ = std::move(g);
  e.h_basis_ = std::move(h_basis);
  e.m_basis_ = kernel(hk);
  if constexpr (ScalarTraits<Scalar>::exact) {
    for (auto& v : e.m_basis_) v = primitive_integer(std::move(v));
  }
  std::vector<Vector<Scalar>> all = e.h_basis_;
  all.insert(all.end(), e.m_basis_.begin(), e.m_basis_.end());
  auto inv = inverse(Matrix<Scalar>::from_columns(all, n));
  if (!inv) throw DegenerateRestriction("h and m do not span g");
  e.split_inverse_ = std::move(*inv);

  for (const auto& x : e.h_basis_)
    for (const auto& y : e.m_basis_) {
      const auto c = e.split_coefficients(alg.bracket(x, y));
      for (std::size_t i = 0; i < e.dim_h(); ++i)
        if (!ScalarTraits<Scalar>::is_zero(c[i], tol * 10)) throw NotSubalgebra("[h, m] is not contained in m");
    }
  e.compact_ = signature(bh).negative == e.dim_h();
  e.label_ = alg.name();
  return e;
}

template Embedding<Rational> reductive_split(std::shared_ptr<const ExactAlgebra>, std::vector<Vector<Rational>>);
template Embedding<double> reductive_split(std::shared_ptr<const FloatAlgebra>, std::vector<Vector<double>>);

template <typename Scalar>
std::vector<Vector<Scalar>> centralizer_in(const LieAlgebra<Scalar>& g, const std::vector<Vector<Scalar>>& span,
                                           const Vector<Scalar>& x) {
  std::vector<Vector<Scalar>> images;
  for (const auto& s : span) images.push_back(g.bracket(x, s));
  const auto ker = kernel(Matrix<Scalar>::from_columns(images, g.dim()));
  std::vector<Vector<Scalar>> out;
  for (const auto& c : ker) out.push_back(combine(span, c, g.dim()));
  return out;
}

template std::vector<Vector<Rational>> centralizer_in(const ExactAlgebra&, const std::vector<Vector<Rational>>&,
                                                      const Vector<Rational>&);
template std::vector<Vector<double>> centralizer_in(const FloatAlgebra&, const std::vector<Vector<double>>&,
                                                    const Vector<double>&);

template <typename Scalar>
std::vector<Vector<Scalar>> maximal_torus(const Embedding<Scalar>& emb) {
  if (!emb.compact()) throw NotCompact(emb.label() + ": Killing form is not negative definite on h");
  const auto& g = emb.algebra();
  std::vector<Vector<Scalar>> torus;
  while (true) {
    std::vector<Vector<Scalar>> cent = emb.h_basis();
    for (const auto& t : torus) cent = centralizer_in(g, cent, t);
    if (cent.size() == torus.size()) return torus;
    const std::size_t before = torus.size();
    for (const auto& c : cent) {
      auto trial = torus;
      trial.push_back(c);
      if (rank(Matrix<Scalar>::from_columns(trial, g.dim())) == trial.size()) {
        torus = std::move(trial);
        break;
      }
    }
    if (torus.size() == before) return torus;
  }
}

template std::vector<Vector<Rational>> maximal_torus(const ExactEmbedding&);
template std::vector<Vector<double>> maximal_torus(const FloatEmbedding&);

FloatEmbedding to_float(const ExactEmbedding& emb) {
  auto g = std::make_shared<const FloatAlgebra>(to_float(emb.algebra()));
  std::vector<Vector<double>> h;
  for (const auto& v : emb.h_basis()) h.push_back(to_double(v));
  auto e = reductive_split(g, std::move(h)).with_label(emb.label());
  if (emb.has_torus()) {
    std::vector<Vector<double>> t;
    for (const auto& v : emb.torus_basis()) t.push_back(to_double(v));
    e = e.with_torus(std::move(t), to_double(emb.torus_root_coords()));
  }
  return e;
}

template class Embedding<Rational>;
template class Embedding<double>;

// ---------------------------------------------------------------------------
// Built-in embeddings

namespace {

std::vector<RatVector> units(std::size_t dim) {
  std::vector<RatVector> u;
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector v(dim);
    v[i] = 1;
    u.push_back(std::move(v));
  }
  return u;
}

RatVector rotation_block(const ExactAlgebra& g, std::size_t a) {
  RatMatrix m(g.matrix_size(), g.matrix_size());
  m(a, a + 1) = -1;
  m(a + 1, a) = 1;
  return *g.coordinates(m);
}

std::vector<RatVector> blocks_below(const ExactAlgebra& g, int k) {
  std::vector<RatVector> t;
  for (int b = 0; b + 1 < k; b += 2) t.push_back(rotation_block(g, b));
  return t;
}

bool supported_in_corner(const RatMatrix& m, int k) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && (r >= static_cast<std::size_t>(k) || c >= static_cast<std::size_t>(k)))
        return false;
  return true;
}

RatMatrix identity_coords(std::size_t r) { return RatMatrix::identity(r); }

}  // namespace

std::vector<RatVector> block_torus(const ExactAlgebra& g) {
  const auto& src = g.source();
  if (src.family == "so") return blocks_below(g, src.params.at(0));
  if (src.family == "u_in_so") return blocks_below(g, 2 * src.params.at(0));
  if (src.family == "so_pq") {
    const int p = src.params.at(0), q = src.params.at(1);
    auto t = blocks_below(g, p);
    for (int b = p; b + 1 < p + q; b += 2) t.push_back(rotation_block(g, b));
    return t;
  }
  if (src.family == "su") {
    const int n = src.params.at(0);
    std::vector<RatVector> t;
    for (int k = 0; k + 1 < n; ++k) {
      RatMatrix m(2 * n, 2 * n);
      m(k, k + n) = -1;
      m(k + n, k) = 1;
      m(k + 1, k + 1 + n) = 1;
      m(k + 1 + n, k + 1) = -1;
      t.push_back(*g.coordinates(m));
    }
    return t;
  }
  throw UnsupportedFamily(g.name() + " has no built-in torus");
}

namespace {

RatMatrix torus_coordinate_map(const ExactAlgebra& g, std::size_t rank) {
  if (g.source().family != "su") return identity_coords(rank);
  // i(E_kk - E_{k+1,k+1}) has root coordinates e_k - e_{k+1}
  const std::size_t n = g.source().params.at(0);
  RatMatrix c(rank, n);
  for (std::size_t k = 0; k < rank; ++k) {
    c(k, k) = 1;
    c(k, k + 1) = -1;
  }
  return c;
}

}  // namespace

ExactEmbedding whole_algebra(std::shared_ptr<const ExactAlgebra> g) {
  auto t = block_torus(*g);
  auto coords = torus_coordinate_map(*g, t.size());
  const std::string label = g->name() + "/" + g->name();
  return reductive_split(g, units(g->dim())).with_torus(std::move(t), std::move(coords)).with_label(label);
}

ExactEmbedding so_block(std::shared_ptr<const ExactAlgebra> g, int k) {
  const auto& src = g->source();
  const int limit = src.family == "so" ? src.params.at(0) : src.family == "so_pq" ? src.params.at(0) : -1;
  if (limit < 0) throw UnsupportedFamily("so block needs an so(n) or so(p,q) ambient");
  if (k < 2 || k > limit) throw UnsupportedFamily("so(" + std::to_string(k) + ") does not fit in " + g->name());
  std::vector<RatVector> h;
  for (std::size_t i = 0; i < g->dim(); ++i)
    if (supported_in_corner(g->basis()[i], k)) h.push_back(g->unit(i));
  auto t = blocks_below(*g, k);
  const std::size_t r = t.size();
  const std::string label = g->name() + "/so(" + std::to_string(k) + ")";
  return reductive_split(g, std::move(h)).with_torus(std::move(t), identity_coords(r)).with_label(label);
}

ExactEmbedding u_in_so_block(std::shared_ptr<const ExactAlgebra> g, int n) {
  const auto& src = g->source();
  if (src.family != "so" && src.family != "so_pq") throw UnsupportedFamily("u(n) block needs an so ambient");
  if (2 * n > src.params.at(0)) throw UnsupportedFamily("u(" + std::to_string(n) + ") does not fit in " + g->name());
  const auto j = *g->coordinates(block_complex_structure(n, static_cast<int>(g->matrix_size())));
  std::vector<RatVector> corner;
  for (std::size_t i = 0; i < g->dim(); ++i)
    if (supported_in_corner(g->basis()[i], 2 * n)) corner.push_back(g->unit(i));
  std::vector<RatVector> h;
  for (auto& v : centralizer_in(*g, corner, j)) h.push_back(primitive_integer(std::move(v)));
  auto t = blocks_below(*g, 2 * n);
  const std::size_t r = t.size();
  const std::string label = g->name() + "/u(" + std::to_string(n) + ")";
  return reductive_split(g, std::move(h)).with_torus(std::move(t), identity_coords(r)).with_label(label);
}

ExactEmbedding centralizer_embedding(std::shared_ptr<const ExactAlgebra> g, const RatVector& coords) {
  const auto whole = whole_algebra(g);
  const auto z = whole.torus_element(coords);
  std::vector<RatVector> h;
  for (auto& v : centralizer_in(*g, units(g->dim()), z)) h.push_back(primitive_integer(std::move(v)));
  std::string label = g->name() + "/z(";
  for (std::size_t i = 0; i < coords.size(); ++i) label += (i ? "," : "") + coords[i].get_str();
  label += ")";
  return reductive_split(g, std::move(h))
      .with_torus(whole.torus_basis(), whole.torus_root_coords())
      .with_label(label);
}

}  // namespace fatcert
