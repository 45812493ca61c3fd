#include <doctest.h>

#include "fatcert/liealg.hpp"
#include "oracles.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> shared(ExactAlgebra g) { return std::make_shared<const ExactAlgebra>(std::move(g)); }

RatVector rotation_sum(const ExactAlgebra& g, const std::vector<long>& speeds) {
  RatMatrix m(g.matrix_size(), g.matrix_size());
  for (std::size_t k = 0; k < speeds.size(); ++k) {
    m(2 * k, 2 * k + 1) = -speeds[k];
    m(2 * k + 1, 2 * k) = speeds[k];
  }
  return *g.coordinates(m);
}

}  // namespace

TEST_CASE("rationals are canonical and parse") {
  CHECK(make_rational(2, 6).get_str() == "1/3");
  CHECK(parse_rational("-4/6") == make_rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("so(3) brackets match matrix commutators") {
  const auto g = make_so(3);
  REQUIRE(g.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto b = g.bracket(g.unit(i), g.unit(j));
      CHECK(g.realize(b) == oracle::commutator(g.basis()[i], g.basis()[j]));
    }
  // L_1 = E_12 - E_21 (index 0), L_2 = E_13 - E_31 (index 1) close on index 2
  const auto b = g.bracket(g.unit(0), g.unit(1));
  CHECK(b[0] == 0);
  CHECK(b[1] == 0);
  CHECK(abs(b[2]) == 1);
  CHECK(is_zero_vector(g.bracket(g.unit(1), g.unit(1))));
}

TEST_CASE("so(5) bracket of two sphere directions") {
  const auto g = make_so(5);
  RatMatrix a1(5, 5), a2(5, 5);
  a1(0, 4) = 1;
  a1(4, 0) = -1;
  a2(1, 4) = 1;
  a2(4, 1) = -1;
  const auto x = *g.coordinates(a1), y = *g.coordinates(a2);
  RatMatrix expected(5, 5);
  expected(1, 0) = 1;
  expected(0, 1) = -1;
  CHECK(g.realize(g.bracket(x, y)) == expected);
}

TEST_CASE("Jacobi and ad-invariance hold exactly for the built-in families") {
  for (const auto& g : {make_so(5), make_so_pq(4, 1), make_su(3), make_u_in_so(2), make_so(7)}) {
    CHECK(g.jacobi_residual() == 0.0);
    CHECK(g.ad_invariance_residual() == 0.0);
  }
}

TEST_CASE("Killing form values and the (n-2) Tr oracle") {
  const auto so3 = make_so(3);
  CHECK(so3.killing(so3.unit(0), so3.unit(0)) == -2);
  const auto so5 = make_so(5);
  const auto J = rotation_sum(so5, {1, 1});
  CHECK(so5.killing(J, J) == -12);
  for (const auto& [g, n] : {std::pair{make_so(5), 5}, std::pair{make_so_pq(4, 1), 5}, std::pair{make_so(6), 6}})
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j)
        CHECK(g.killing_gram()(i, j) == oracle::so_killing(n, g.basis()[i], g.basis()[j]));
}

TEST_CASE("dimensions, signatures and semisimplicity") {
  CHECK(build_algebra("so", {5}).dim() == 10);
  const auto so41 = build_algebra("so_pq", {4, 1});
  CHECK(so41.dim() == 10);
  const auto sig = signature(so41.killing_gram());
  CHECK(sig.positive == 4);
  CHECK(sig.negative == 6);
  CHECK(signature(make_so(5).killing_gram()).negative == 10);
  CHECK(make_u_in_so(2).dim() == 4);
  CHECK(make_su(3).dim() == 8);
  CHECK(make_su(3).is_semisimple());
  CHECK_FALSE(make_u_in_so(2).is_semisimple());
  CHECK_THROWS_AS(build_algebra("g2", {}), UnsupportedFamily);
}

TEST_CASE("covector round trip") {
  const auto g = make_so_pq(4, 1);
  RatVector x(g.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = make_rational(static_cast<long>(i) - 3, 1 + i % 3);
  CHECK(covector_to_vector(g, vector_to_covector(g, x)) == x);
}

TEST_CASE("invalid bases are rejected") {
  RatMatrix a(3, 3), b(3, 3);
  a(0, 1) = 1;
  b(1, 0) = 1;
  CHECK_THROWS_AS(ExactAlgebra::from_matrices("not closed", {a, b}), NotSubalgebra);
  CHECK_THROWS_AS(ExactAlgebra::from_matrices("dependent", {a, a}), NotSubalgebra);
}

TEST_CASE("reductive splittings satisfy the embedding invariants") {
  for (auto emb : {so_block(shared(make_so(5)), 4), so_block(shared(make_so_pq(4, 1)), 4),
                   u_in_so_block(shared(make_so(5)), 2), so_block(shared(make_so(7)), 6)}) {
    const auto& g = emb.algebra();
    for (const auto& x : emb.h_basis())
      for (const auto& y : emb.m_basis()) {
        CHECK(g.killing(x, y) == 0);
        CHECK(emb.in_m(g.bracket(x, y)));
      }
    for (const auto& x : emb.h_basis())
      for (const auto& y : emb.h_basis()) CHECK(emb.in_h(g.bracket(x, y)));
    CHECK(emb.compact());
    for (const auto& t : emb.torus_basis()) CHECK(emb.in_h(t));
  }
  const auto s5 = so_block(shared(make_so(5)), 4);
  CHECK(s5.dim_m() == 4);
  for (const auto& y : s5.m_basis()) {
    const auto m = s5.algebra().realize(y);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == 0);
  }
  const auto s41 = so_block(shared(make_so_pq(4, 1)), 4);
  RatMatrix gm(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) gm(i, j) = s41.algebra().killing(s41.m_basis()[i], s41.m_basis()[j]);
  CHECK(signature(gm).positive == 4);
  CHECK(whole_algebra(shared(make_so(5))).dim_m() == 0);
}

TEST_CASE("degenerate restriction is reported") {
  const auto g = shared(make_so_pq(2, 1));
  // compact rotation plus a boost of equal Killing norm spans a null line
  RatVector n(g->dim());
  n[0] = 1;
  n[1] = 1;
  CHECK(g->killing(n, n) == 0);
  CHECK_THROWS_AS(reductive_split(g, {n}), DegenerateRestriction);
}

TEST_CASE("maximal tori") {
  const auto so4 = whole_algebra(shared(make_so(4)));
  CHECK(maximal_torus(so4).size() == 2);
  CHECK_THROWS_AS(whole_algebra(shared(make_so(2))), DegenerateRestriction);
  CHECK(maximal_torus(u_in_so_block(shared(make_so(4)), 2)).size() == 2);
  CHECK(maximal_torus(whole_algebra(shared(make_su(3)))).size() == 2);
  CHECK_THROWS_AS(maximal_torus(whole_algebra(shared(make_so_pq(2, 1)))), NotCompact);
}

TEST_CASE("float mode agrees with exact mode") {
  const auto e = so_block(shared(make_so(5)), 4);
  const auto f = to_float(e);
  CHECK(f.algebra().jacobi_residual() < 1e-12);
  CHECK(f.dim_m() == 4);
  CHECK(f.algebra().killing(f.algebra().unit(0), f.algebra().unit(0)) == doctest::Approx(-6.0));
}
