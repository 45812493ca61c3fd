#pragma once

// Fatness of covectors u = B(X_u, .) for the canonical invariant connection
// on H -> G -> G/H, decided three ways: exact wall test on roots, singular
// values of the curvature pairing on m, and the centralizer of X_u.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatcert/liealg.hpp"
#include "fatcert/rootdata.hpp"

namespace fatcert {

enum class Verdict { Fat, NotFat, NotApplicable };

std::string to_string(Verdict v);

inline Verdict verdict_of(bool fat) { return fat ? Verdict::Fat : Verdict::NotFat; }

/// h-component of -1/2 [x, y] for x, y in m. Throws NotInSubspace otherwise.
template <typename Scalar>
Vector<Scalar> canonical_curvature(const Embedding<Scalar>& emb, const Vector<Scalar>& x, const Vector<Scalar>& y);

/// G_ij = B(X_u, [m_i, m_j]) over the m basis.
template <typename Scalar>
Matrix<Scalar> fatness_gram(const Embedding<Scalar>& emb, const Vector<Scalar>& xu);

struct OracleVerdict {
  bool fat = false;
  bool odd_dimension = false;
  std::vector<double> singular_values;  // descending
  std::optional<double> min_sv;         // empty when dim m = 0
  std::optional<std::vector<double>> null_vector;  // unit, m coefficients
  double null_residual = 0.0;
};

/// Fat iff sigma_min > tol * sigma_max of the fatness Gram. Odd dim m is
/// never fat; dim m = 0 is vacuously fat.
template <typename Scalar>
OracleVerdict fat_by_oracle(const Embedding<Scalar>& emb, const Vector<Scalar>& xu, double tol = 1e-9);

/// ker ad_{X_u} on g (exact kernel for Rational).
template <typename Scalar>
std::vector<Vector<Scalar>> isotropy_algebra(const LieAlgebra<Scalar>& g, const Vector<Scalar>& xu);

template <typename Scalar>
struct CentralizerVerdict {
  bool fat = false;
  std::size_t centralizer_dim = 0;  // dim ker ad_{X_u} in g
  std::optional<Vector<Scalar>> witness;  // nonzero element of ker ad_{X_u} in m
};

/// Fat iff ker ad_{X_u} meets m only in 0. X_u must lie in h.
template <typename Scalar>
CentralizerVerdict<Scalar> fat_by_centralizer(const Embedding<Scalar>& emb, const Vector<Scalar>& xu);

struct FatnessCertificate {
  std::string instance;
  std::string xu_basis;              // "torus" (root coordinates) or "algebra"
  std::vector<std::string> xu;
  Verdict roots = Verdict::NotApplicable;
  Verdict oracle = Verdict::NotApplicable;
  Verdict centralizer = Verdict::NotApplicable;
  std::optional<double> min_sv;
  std::vector<double> singular_values;
  std::optional<Root> witness_root;
  std::optional<std::vector<double>> null_vector;
  bool odd_dimension = false;
  std::optional<std::vector<std::string>> centralizer_witness;
  std::size_t centralizer_dim = 0;
  bool agreed = false;
  std::uint64_t seed = 0;

  /// Consensus verdict; meaningful only when agreed.
  bool fat() const { return oracle == Verdict::Fat; }
};

/// Raised when applicable criteria disagree. Never resolved by majority.
class CriteriaDisagree : public Error {
 public:
  explicit CriteriaDisagree(FatnessCertificate cert);
  const FatnessCertificate& certificate() const { return cert_; }

 private:
  FatnessCertificate cert_;
};

/// Holds an embedding and (optionally) its root sub-system, and certifies
/// individual X_u.
template <typename Scalar>
class Certifier {
 public:
  Certifier(Embedding<Scalar> emb, std::optional<SubSystem> sub, double tol = 1e-9);

  const Embedding<Scalar>& embedding() const { return emb_; }
  const std::optional<SubSystem>& subsystem() const { return sub_; }
  double tolerance() const { return tol_; }

  /// X_u in g coordinates; must lie in h. Throws CriteriaDisagree.
  FatnessCertificate certify(const Vector<Scalar>& xu, std::string instance = {}) const;
  /// X_u given by root coordinates on the attached torus.
  FatnessCertificate certify_torus(const RatVector& coords, std::string instance = {}) const;

 private:
  Embedding<Scalar> emb_;
  std::optional<SubSystem> sub_;
  double tol_;
};

using ExactCertifier = Certifier<Rational>;

/// Free-function form: detects the sub-system when rs is given.
template <typename Scalar>
FatnessCertificate certify(const Embedding<Scalar>& emb, const std::optional<RootSystem>& rs,
                           const Vector<Scalar>& xu, double tol = 1e-9);

/// Random torus points: numerators in [-9, 9], denominators in {1, 2, 3}.
/// For type A coordinates the last entry is set so the vector is trace zero.
std::vector<RatVector> sample_torus_points(std::size_t coordinate_dim, std::size_t count, std::uint64_t seed,
                                           bool trace_zero = false);

/// Random elements of the attached torus, as root coordinates: a sample
/// point y of the torus basis mapped through the root-coordinate rows.
std::vector<RatVector> sample_torus_coordinates(const ExactEmbedding& emb, std::size_t count, std::uint64_t seed);

/// Batch certification over torus points (OpenMP). The first error in index
/// order is rethrown after the loop.
std::vector<FatnessCertificate> certify_batch(const ExactCertifier& certifier, const std::vector<RatVector>& points);
/// Serial reference for certify_batch.
std::vector<FatnessCertificate> certify_batch_serial(const ExactCertifier& certifier,
                                                     const std::vector<RatVector>& points);

}  // namespace fatcert
