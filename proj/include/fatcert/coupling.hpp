#pragma once

// The invariant two-form sigma_u(X, Y) = B(X_u, [X, Y]) on homogeneous
// bundles H/V -> G/V -> G/H, with V the isotropy of X_u in H. On the
// complement n = (h cap n) + m it splits into a vertical block (the KKS form
// of the H-orbit of u) and a horizontal block (the fatness pairing).

#include <optional>
#include <string>
#include <vector>

#include "fatcert/liealg.hpp"

namespace fatcert {

template <typename Scalar>
struct HomogeneousBundle {
  Embedding<Scalar> emb;
  Vector<Scalar> xu;
  std::vector<Vector<Scalar>> v_basis;         // ker ad_{X_u} cap h
  std::vector<Vector<Scalar>> vertical_basis;  // B-orthogonal complement of v in h
  // vertical_basis followed by emb.m_basis()
  std::vector<Vector<Scalar>> n_basis;

  std::size_t dim_vertical() const { return vertical_basis.size(); }
  std::size_t dim_horizontal() const { return emb.dim_m(); }
};

/// V is computed as the isotropy of X_u in h. X_u must lie in h.
template <typename Scalar>
HomogeneousBundle<Scalar> make_bundle(const Embedding<Scalar>& emb, const Vector<Scalar>& xu);

/// As make_bundle, but checks a caller-supplied v against the isotropy.
/// Throws IsotropyMismatch.
template <typename Scalar>
HomogeneousBundle<Scalar> make_bundle(const Embedding<Scalar>& emb, const std::vector<Vector<Scalar>>& v,
                                      const Vector<Scalar>& xu);

template <typename Scalar>
struct InvariantTwoForm {
  Matrix<Scalar> gram;  // over n_basis
  Scalar scale = Scalar(1);
  std::size_t vertical_dim = 0;
};

/// Gram of r * B(X_u, [X, Y]) over n_basis.
template <typename Scalar>
InvariantTwoForm<Scalar> coupling_form(const HomogeneousBundle<Scalar>& bundle, const Scalar& scale = Scalar(1));

/// The same Gram with its horizontal block multiplied by factor.
template <typename Scalar>
InvariantTwoForm<Scalar> rescale_horizontal(const InvariantTwoForm<Scalar>& form, const Scalar& factor);

struct BlockReport {
  double cross_max = 0.0;            // max |sigma(h cap n, m)|
  bool cross_zero = false;
  bool vertical_nondegenerate = false;
  bool horizontal_matches_fatness = false;  // horizontal block = r * fatness Gram
  std::optional<double> theta_ratio;  // horizontal entry / <u, Theta> on the same pair
};

template <typename Scalar>
BlockReport verify_block_structure(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form);

/// The form as a bilinear form on g in the basis e_i, zero on v.
template <typename Scalar>
Matrix<Scalar> extend_to_algebra(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form);

/// max over basis triples of |sigma([X,Y],Z) + sigma([Y,Z],X) + sigma([Z,X],Y)|
/// for the form extended by zero on v. Exactly 0 for closed exact forms.
template <typename Scalar>
double ce_closedness(const HomogeneousBundle<Scalar>& bundle, const InvariantTwoForm<Scalar>& form);

struct TopPowerReport {
  double min_sv = 0.0;
  double max_sv = 0.0;
  std::string pfaffian;          // exact value, or decimal for float forms
  double pfaffian_abs = 0.0;
  double pfaffian_abs_from_det = 0.0;  // sqrt |det|
  bool pfaffian_squares_to_det = false;
  bool nondegenerate = false;
};

/// Throws OddDimension unless the Gram has size 2 * half_dim.
template <typename Scalar>
TopPowerReport nondegenerate_and_top_power(const InvariantTwoForm<Scalar>& form, std::size_t half_dim);

/// The coupling form at the shifted vector X_u + X_a, with X_a the torus
/// element of root coordinates a.
template <typename Scalar>
InvariantTwoForm<Scalar> shifted_coupling(const Embedding<Scalar>& emb, const Vector<Scalar>& xu, const RatVector& a,
                                          HomogeneousBundle<Scalar>* bundle_out = nullptr);

}  // namespace fatcert
