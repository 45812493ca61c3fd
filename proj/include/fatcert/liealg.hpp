#pragma once

// Matrix Lie algebras given by a basis, with structure constants, Killing
// form and Killing-orthogonal reductive splittings g = h + m.
//
// Algebras are immutable once built. Rational is the default scalar; the
// double instantiation exists for user-supplied floating bases and for
// numeric experiments (Ad-orbits, random conjugation).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fatcert/linalg.hpp"

namespace fatcert {

/// Where an algebra came from; used for serialization and catalog lookup.
struct AlgebraSource {
  std::string family;       // "so", "so_pq", "su", "u_in_so", "custom", "abstract"
  std::vector<int> params;  // n, or (p, q)
};

template <typename Scalar>
class LieAlgebra {
 public:
  using Vec = Vector<Scalar>;
  using Mat = Matrix<Scalar>;

  /// Computes structure constants from the matrix basis. Throws
  /// DimensionMismatch on ragged input and NotSubalgebra if the basis is
  /// dependent or not closed under the commutator.
  static LieAlgebra from_matrices(std::string name, std::vector<Mat> basis,
                                  AlgebraSource source = {"custom", {}});

  /// Abstract algebra: constants[(i*dim + j)*dim + k] = c^k_{ij}.
  static LieAlgebra from_structure_constants(std::string name, std::size_t dim,
                                             std::vector<Scalar> constants,
                                             AlgebraSource source = {"abstract", {}});

  const std::string& name() const { return name_; }
  const AlgebraSource& source() const { return source_; }
  std::size_t dim() const { return dim_; }

  bool has_matrices() const { return !basis_.empty(); }
  std::size_t matrix_size() const { return basis_.empty() ? 0 : basis_.front().rows(); }
  const std::vector<Mat>& basis() const { return basis_; }

  /// c^k_{ij}, [e_i, e_j] = sum_k c^k_{ij} e_k.
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Scalar>& constants() const { return constants_; }

  Vec unit(std::size_t i) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad_x: column j holds [x, e_j].
  Mat ad(const Vec& x) const;
  Scalar killing(const Vec& x, const Vec& y) const;
  const Mat& killing_gram() const { return killing_; }

  /// Matrix realization sum_i x_i e_i (requires has_matrices()).
  Mat realize(const Vec& x) const;
  /// Coordinates of a matrix in the basis, nullopt if it is not in the span.
  std::optional<Vec> coordinates(const Mat& m) const;

  /// max over basis triples of |[[e_i,e_j],e_k] + cyclic|; 0 exactly for
  /// exact algebras that satisfy Jacobi.
  double jacobi_residual() const;
  /// max over basis triples of |B([e_k,e_i],e_j) + B(e_i,[e_k,e_j])|.
  double ad_invariance_residual() const;
  bool is_semisimple() const;

  /// Absolute zero tolerance for the double instantiation (0 when exact).
  double tolerance() const { return tol_; }

 private:
  struct Term {
    std::size_t j;
    std::size_t k;
    Scalar value;
  };

  void finish();

  std::string name_;
  AlgebraSource source_;
  std::size_t dim_ = 0;
  std::vector<Mat> basis_;
  std::vector<Scalar> constants_;
  std::vector<std::vector<Term>> terms_;  // nonzero c^k_{ij}, grouped by i
  Mat killing_;
  // coordinate extraction: pivot entries of the flattened basis and the
  // inverse of the basis restricted to them
  std::vector<std::size_t> pivot_entries_;
  Mat pivot_inverse_;
  double tol_ = 0.0;
};

using ExactAlgebra = LieAlgebra<Rational>;
using FloatAlgebra = LieAlgebra<double>;

/// u -> u(.) = B(X, .), expressed in the dual basis (B-Gram times X).
template <typename Scalar>
Vector<Scalar> vector_to_covector(const LieAlgebra<Scalar>& g, const Vector<Scalar>& x);

/// Inverse of vector_to_covector; requires a semisimple algebra.
template <typename Scalar>
Vector<Scalar> covector_to_vector(const LieAlgebra<Scalar>& g, const Vector<Scalar>& u);

FloatAlgebra to_float(const ExactAlgebra& g);

// ---------------------------------------------------------------------------
// Built-in families. All bases are integer matrices.

/// so(n): E_ij - E_ji for i < j, lexicographic.
ExactAlgebra make_so(int n);
/// so(p,q): X^T I + I X = 0 with I = diag(1^p, (-1)^q). Basis indexed like
/// so(p+q); mixed pairs use E_ij + E_ji.
ExactAlgebra make_so_pq(int p, int q);
/// su(n) realized in gl(2n, R) via Z = A + iB -> [[A, -B], [B, A]].
ExactAlgebra make_su(int n);
/// u(n) as the commutant of the block complex structure J in so(2n).
ExactAlgebra make_u_in_so(int n);
/// Dispatch on family name: "so" {n}, "so_pq" {p,q}, "su" {n}, "u_in_so" {n}.
ExactAlgebra build_algebra(const std::string& family, const std::vector<int>& params);

/// The block complex structure J of size 2n (blocks [[0,-1],[1,0]]), padded
/// with zeros to size `size`.
RatMatrix block_complex_structure(int n, int size);

// ---------------------------------------------------------------------------

/// A subalgebra h of g with its Killing-orthogonal complement m, and
/// optionally a torus t in h with its map to root coordinates.
template <typename Scalar>
class Embedding {
 public:
  using Vec = Vector<Scalar>;
  using Mat = Matrix<Scalar>;

  struct Parts {
    Vec h;
    Vec m;
  };

  const LieAlgebra<Scalar>& algebra() const { return *algebra_; }
  std::shared_ptr<const LieAlgebra<Scalar>> algebra_ptr() const { return algebra_; }

  const std::vector<Vec>& h_basis() const { return h_basis_; }
  const std::vector<Vec>& m_basis() const { return m_basis_; }
  std::size_t dim_h() const { return h_basis_.size(); }
  std::size_t dim_m() const { return m_basis_.size(); }
  /// B restricted to h is negative definite.
  bool compact() const { return compact_; }
  const std::string& label() const { return label_; }

  Parts split(const Vec& x) const;
  /// Coefficients of x in the h basis followed by the m basis.
  Vec split_coefficients(const Vec& x) const;
  bool in_h(const Vec& x) const;
  bool in_m(const Vec& x) const;

  bool has_torus() const { return !torus_.empty(); }
  const std::vector<Vec>& torus_basis() const { return torus_; }
  /// Row k: root coordinates of the k-th torus basis element.
  const Mat& torus_root_coords() const { return torus_coords_; }
  std::size_t root_coordinate_dim() const { return torus_coords_.cols(); }

  /// The torus element with the given root coordinates. Throws
  /// NotInSubspace when the coordinates are outside the torus image (for
  /// example, non trace-zero coordinates for type A).
  Vec torus_element(const Vector<Rational>& root_coords) const;
  /// Root coordinates of x if x lies in the torus.
  std::optional<Vector<Scalar>> torus_coordinates(const Vec& x) const;

  /// Same embedding with a torus attached. The torus must be abelian and
  /// contained in h; root_coords has one row per torus element.
  Embedding with_torus(std::vector<Vec> torus, Mat root_coords) const;
  Embedding with_label(std::string label) const;

 private:
  template <typename S>
  friend Embedding<S> reductive_split(std::shared_ptr<const LieAlgebra<S>> g,
                                      std::vector<Vector<S>> h_basis);

  std::shared_ptr<const LieAlgebra<Scalar>> algebra_;
  std::vector<Vec> h_basis_;
  std::vector<Vec> m_basis_;
  bool compact_ = false;
  Mat split_inverse_;
  std::vector<Vec> torus_;
  Mat torus_coords_;
  std::string label_;
};

using ExactEmbedding = Embedding<Rational>;
using FloatEmbedding = Embedding<double>;

/// m = {X : B(X, h) = 0}. Throws DegenerateRestriction when B|h is singular
/// and NotSubalgebra when h is not closed or [h, m] is not inside m.
template <typename Scalar>
Embedding<Scalar> reductive_split(std::shared_ptr<const LieAlgebra<Scalar>> g,
                                  std::vector<Vector<Scalar>> h_basis);

/// A maximal abelian subalgebra of a compact h, grown greedily from the
/// centralizer. Throws NotCompact if B|h is not negative definite.
template <typename Scalar>
std::vector<Vector<Scalar>> maximal_torus(const Embedding<Scalar>& emb);

FloatEmbedding to_float(const ExactEmbedding& emb);

/// Elements of `span` (given as g-vectors) that commute with x, as g-vectors.
template <typename Scalar>
std::vector<Vector<Scalar>> centralizer_in(const LieAlgebra<Scalar>& g,
                                           const std::vector<Vector<Scalar>>& span,
                                           const Vector<Scalar>& x);

// ---------------------------------------------------------------------------
// Built-in embeddings; all carry the block torus of the subalgebra with
// root coordinates t_1..t_r.

/// Block torus of so(n) / so(p,q): 2x2 rotation blocks in the first p
/// coordinates, then in the last q.
std::vector<RatVector> block_torus(const ExactAlgebra& g);

/// The whole algebra as h, with its block torus (type A torus for su(n)).
ExactEmbedding whole_algebra(std::shared_ptr<const ExactAlgebra> g);
/// so(k) in the upper-left k x k corner of so(n) or so(p,q) (k <= p).
ExactEmbedding so_block(std::shared_ptr<const ExactAlgebra> g, int k);
/// u(n) inside the upper-left so(2n) of g, as the commutant of J.
ExactEmbedding u_in_so_block(std::shared_ptr<const ExactAlgebra> g, int n);
/// h = centralizer of the torus element with root coordinates `coords`,
/// carrying the ambient torus.
ExactEmbedding centralizer_embedding(std::shared_ptr<const ExactAlgebra> g,
                                     const RatVector& coords);

}  // namespace fatcert
