#pragma once

// Compact duals of noncompact symmetric pairs at the level of structure
// constants: split g = k + p by a Cartan involution and flip the sign of the
// [p, p] brackets.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fatcert/fatness.hpp"
#include "fatcert/liealg.hpp"

namespace fatcert {

/// Coordinate matrix of X -> I X I^{-1} on g. Throws InvolutionInvalid if the
/// conjugation does not preserve g.
RatMatrix conjugation_involution(const ExactAlgebra& g, const RatMatrix& I);

/// I_{p,q} conjugation for so(p,q); identity for compact built-ins.
RatMatrix cartan_involution(const ExactAlgebra& g);

/// Constants of `adapted` with every [p, p] component negated, where the
/// first dim_k basis vectors span k and the rest span p.
ExactAlgebra flip_pp(const ExactAlgebra& adapted, std::size_t dim_k, std::string name);

struct DualPair {
  std::shared_ptr<const ExactAlgebra> noncompact;
  std::shared_ptr<const ExactAlgebra> adapted;       // noncompact in the basis (k, p)
  std::shared_ptr<const ExactAlgebra> compact_dual;  // [p, p] flipped
  std::size_t dim_k = 0;
  std::vector<RatVector> k_basis;  // in noncompact coordinates
  std::vector<RatVector> p_basis;
  ExactEmbedding noncompact_h;
  ExactEmbedding dual_h;  // the same h inside compact_dual
};

/// h must lie in k and carry a torus. theta is an involutive automorphism in
/// g coordinates whose +1 eigenspace k has negative definite Killing form.
/// Throws InvolutionInvalid.
DualPair dualize(const ExactEmbedding& h, const RatMatrix& theta);

struct AgreementReport {
  std::size_t samples = 0;
  std::size_t agreements = 0;
  double fraction = 0.0;
  std::vector<std::pair<bool, bool>> verdicts;  // (noncompact fat, dual fat)
  std::optional<RatVector> counterexample;
};

/// Certifies the same torus samples in both algebras. Propagates
/// CriteriaDisagree.
AgreementReport compare_fat_sets(const DualPair& pair, const std::vector<RatVector>& samples, double tol = 1e-9);
AgreementReport compare_fat_sets(const DualPair& pair, std::size_t samples, std::uint64_t seed, double tol = 1e-9);

}  // namespace fatcert
