#include <doctest.h>

#include "fatcert/duality.hpp"
#include "oracles.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> shared(ExactAlgebra g) { return std::make_shared<const ExactAlgebra>(std::move(g)); }

DualPair hyperbolic(int n) {
  const auto g = shared(make_so_pq(2 * n, 1));
  return dualize(so_block(g, 2 * n), cartan_involution(*g));
}

}  // namespace

TEST_CASE("compact dual of so(4,1)") {
  const auto pair = hyperbolic(2);
  CHECK(pair.dim_k == 6);
  CHECK(pair.p_basis.size() == 4);
  CHECK(pair.compact_dual->dim() == 10);
  const auto sig = signature(pair.compact_dual->killing_gram());
  CHECK(sig.negative == 10);
  CHECK(sig.positive == 0);
  const auto nsig = signature(pair.noncompact->killing_gram());
  CHECK(nsig.positive == 4);
  CHECK(nsig.negative == 6);
}

TEST_CASE("dual constants match so(2n+1) in the adapted basis") {
  for (int n : {2, 3}) {
    const auto pair = hyperbolic(n);
    const int N = 2 * n + 1;
    // realize the adapted basis as matrices and turn each p element into the
    // corresponding skew matrix by negating its last row
    std::vector<RatMatrix> basis;
    for (const auto& k : pair.k_basis) basis.push_back(pair.noncompact->realize(k));
    for (const auto& p : pair.p_basis) {
      auto m = pair.noncompact->realize(p);
      for (int j = 0; j < N; ++j) m(N - 1, j) = -m(N - 1, j);
      basis.push_back(m);
    }
    const auto compact = ExactAlgebra::from_matrices("so", basis);
    CHECK(compact.constants() == pair.compact_dual->constants());
    CHECK(signature(compact.killing_gram()).negative == compact.dim());
  }
}

TEST_CASE("double dual returns the original constants") {
  const auto pair = hyperbolic(2);
  const auto again = flip_pp(*pair.compact_dual, pair.dim_k, "again");
  CHECK(again.constants() == pair.adapted->constants());
}

TEST_CASE("identity involution on a compact algebra") {
  const auto g = shared(make_so(5));
  CHECK(cartan_involution(*g) == RatMatrix::identity(10));
  const auto pair = dualize(so_block(g, 4), RatMatrix::identity(10));
  CHECK(pair.dim_k == 10);
  CHECK(pair.p_basis.empty());
  CHECK(pair.compact_dual->constants() == pair.adapted->constants());
}

TEST_CASE("invalid involutions are rejected") {
  const auto g = shared(make_so_pq(4, 1));
  const auto h = so_block(g, 4);
  const RatMatrix id = RatMatrix::identity(10);
  RatMatrix twice = id, minus = id;
  for (std::size_t i = 0; i < 10; ++i) {
    twice(i, i) = 2;
    minus(i, i) = -1;
  }
  CHECK_THROWS_AS(dualize(h, twice), InvolutionInvalid);
  CHECK_THROWS_AS(dualize(h, minus), InvolutionInvalid);
  // identity is an automorphism but k = g is not compact
  CHECK_THROWS_AS(dualize(h, id), InvolutionInvalid);
  RatMatrix I(5, 5);
  I(0, 0) = 2;
  CHECK_THROWS_AS(conjugation_involution(*g, I), InvolutionInvalid);
}

TEST_CASE("conjugation involution squares to the identity") {
  const auto g = make_so_pq(4, 1);
  const auto theta = cartan_involution(g);
  CHECK(theta * theta == RatMatrix::identity(10));
}

TEST_CASE("fat sets agree across the duality") {
  for (int n : {2, 3}) {
    const auto pair = hyperbolic(n);
    const auto rep = compare_fat_sets(pair, 60, 5 + n);
    CHECK(rep.samples == 60);
    CHECK(rep.agreements == 60);
    CHECK(rep.fraction == 1.0);
    CHECK_FALSE(rep.counterexample);
  }
  const auto pair = hyperbolic(2);
  const auto rep = compare_fat_sets(pair, std::vector<RatVector>{{1, 1}, {1, 0}, {0, 3}, {2, -1}});
  REQUIRE(rep.verdicts.size() == 4);
  CHECK(rep.verdicts[0] == std::make_pair(true, true));
  CHECK(rep.verdicts[1] == std::make_pair(false, false));
  CHECK(rep.verdicts[2] == std::make_pair(false, false));
  CHECK(rep.verdicts[3] == std::make_pair(true, true));
}
