#pragma once

// Classical root systems in the t_i coordinates, the sub-system cut out by a
// subalgebra, and the exact wall tests built on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fatcert/liealg.hpp"

namespace fatcert {

using Root = std::vector<int>;

struct RootSystem {
  char type = 'B';  // 'A', 'B', 'C' or 'D'
  int rank = 0;
  std::size_t coordinate_dim = 0;  // rank, or rank + 1 for type A
  std::vector<Root> positive;      // positive roots; roots = positive then their negatives
  std::vector<Root> roots;
  std::vector<Root> simple;
  // simple-root coefficients of each entry of `roots`
  std::vector<std::vector<int>> simple_coefficients;

  std::string label() const { return std::string(1, type) + std::to_string(rank); }
};

/// Throws UnsupportedFamily for unknown types or rank out of range
/// (rank >= 1, rank >= 2 for D).
RootSystem build_root_system(char type, int rank);

/// alpha(x) for x in root coordinates.
Rational evaluate(const Root& alpha, const RatVector& x);

struct SubSystem {
  RootSystem parent;
  std::vector<Root> members;             // Delta(h), ordered as parent.roots
  std::vector<Root> forbidden;           // Delta \ Delta(h), ordered as parent.roots
  std::vector<Root> forbidden_positive;  // one representative per +- pair
};

/// Builds a SubSystem from an explicit member list (closed under negation).
SubSystem make_subsystem(const RootSystem& rs, const std::vector<Root>& members);

/// Decides which roots lie in h by splitting g into the real two-dimensional
/// isotypic blocks of ad_T for a regular torus element T. Throws
/// TorusMismatch if the joint eigenvalues do not fit the root system.
template <typename Scalar>
SubSystem detect_subsystem(const Embedding<Scalar>& emb, const RootSystem& rs);

struct RootVerdict {
  bool fat = true;
  std::optional<Root> witness;  // a forbidden root vanishing on x
};

RootVerdict fat_by_roots(const RatVector& x, const SubSystem& sub);

/// Roots in the sub-system generated by the simple roots with indices S.
std::vector<Root> generated_subsystem(const RootSystem& rs, const std::vector<std::size_t>& simple_subset);

/// Sum of the fundamental coweights of the simple roots outside S: vanishes
/// exactly on [S] and nowhere else. Verified before returning.
RatVector find_centralizing_vector(const RootSystem& rs, const std::vector<std::size_t>& simple_subset);

struct ShiftOptions {
  // Restrict the search to |a_i| <= bound (non-strict).
  std::optional<Rational> bound;
};

/// True iff every forbidden root has one strict sign on all of v + a.
bool shift_is_valid(const std::vector<RatVector>& vertices, const std::vector<Root>& forbidden, const RatVector& shift);

/// Search over sign patterns of the forbidden root pairs, each pattern an
/// exact strict-inequality feasibility problem solved by Fourier-Motzkin.
/// Patterns are tried in a fixed order; the first feasible one wins.
std::optional<RatVector> find_fat_shift(const std::vector<RatVector>& vertices, const SubSystem& sub,
                                        const ShiftOptions& options = {});
/// Serial reference for find_fat_shift; same result.
std::optional<RatVector> find_fat_shift_serial(const std::vector<RatVector>& vertices, const SubSystem& sub,
                                               const ShiftOptions& options = {});

/// Root system matching a built-in ambient algebra (so -> B/D, so_pq -> B/D,
/// su -> A).
RootSystem root_system_for(const AlgebraSource& source);

}  // namespace fatcert
