#include <doctest.h>

#include <Eigen/SVD>

#include "fatcert/fatness.hpp"
#include "oracles.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> shared(ExactAlgebra g) { return std::make_shared<const ExactAlgebra>(std::move(g)); }

ExactEmbedding sphere(int n) { return so_block(shared(make_so(2 * n + 1)), 2 * n); }

}  // namespace

TEST_CASE("canonical curvature of so(5)/so(4)") {
  const auto e = sphere(2);
  const auto& g = e.algebra();
  RatMatrix a1(5, 5), a2(5, 5);
  a1(0, 4) = 1;
  a1(4, 0) = -1;
  a2(1, 4) = 1;
  a2(4, 1) = -1;
  const auto x = *g.coordinates(a1), y = *g.coordinates(a2);
  RatMatrix expected(5, 5);
  expected(1, 0) = make_rational(-1, 2);
  expected(0, 1) = make_rational(1, 2);
  CHECK(g.realize(canonical_curvature(e, x, y)) == expected);
  CHECK(is_zero_vector(canonical_curvature(e, x, x)));
  CHECK_THROWS_AS(canonical_curvature(e, e.h_basis()[0], y), NotInSubspace);
}

TEST_CASE("fatness Gram of J on so(5)/so(4)") {
  const auto e = sphere(2);
  const auto G = fatness_gram(e, e.torus_element({1, 1}));
  REQUIRE(G.rows() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(G(i, j) == -G(j, i));
      if ((i == 0 && j == 1) || (i == 2 && j == 3)) CHECK(abs(G(i, j)) == 6);
      else if (!((i == 1 && j == 0) || (i == 3 && j == 2))) CHECK(G(i, j) == 0);
    }
  CHECK(max_abs(fatness_gram(e, RatVector(e.algebra().dim()))) == 0.0);
}

TEST_CASE("oracle verdicts") {
  const auto e = sphere(2);
  const auto fat = fat_by_oracle(e, e.torus_element({1, 1}));
  CHECK(fat.fat);
  for (double s : fat.singular_values) CHECK(s == doctest::Approx(6.0));
  const auto wall = fat_by_oracle(e, e.torus_element({1, 0}));
  CHECK_FALSE(wall.fat);
  REQUIRE(wall.null_vector);
  // the kernel lies in the plane of the second rotation block
  CHECK(std::abs((*wall.null_vector)[0]) < 1e-9);
  CHECK(std::abs((*wall.null_vector)[1]) < 1e-9);
  CHECK(wall.null_residual < 1e-9);

  const auto odd = so_block(shared(make_so(4)), 3);
  for (long a = -3; a <= 3; ++a) {
    const auto v = fat_by_oracle(odd, odd.torus_element({a}));
    CHECK_FALSE(v.fat);
    CHECK(v.odd_dimension);
  }
  const auto whole = whole_algebra(shared(make_so(5)));
  const auto vac = fat_by_oracle(whole, whole.torus_element({1, 2}));
  CHECK(vac.fat);
  CHECK_FALSE(vac.min_sv);
  const auto u2 = u_in_so_block(shared(make_so(5)), 2);
  CHECK(rank(fatness_gram(u2, u2.torus_element({1, 1}))) == 6);
}

TEST_CASE("Gram matches the matrix-trace oracle on spheres") {
  for (int n = 2; n <= 3; ++n) {
    const auto e = sphere(n);
    for (const auto& a : sample_torus_points(n, 20, 100 + n)) {
      std::vector<double> ad;
      for (const auto& x : a) ad.push_back(x.get_d());
      const Eigen::MatrixXd G = oracle::sphere_gram(n, ad);
      const bool oracle_fat = std::abs(G.determinant()) > 1e-9;
      CHECK(fat_by_oracle(e, e.torus_element(a)).fat == oracle_fat);
      // the basis of m may differ, but singular values must agree
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
      const auto ours = fat_by_oracle(e, e.torus_element(a)).singular_values;
      for (std::size_t i = 0; i < ours.size(); ++i)
        CHECK(ours[i] == doctest::Approx(svd.singularValues()(i)).epsilon(1e-9));
    }
  }
}

TEST_CASE("isotropy and centralizer verdicts") {
  const auto e = sphere(2);
  const auto& g = e.algebra();
  CHECK(isotropy_algebra(g, e.torus_element({1, 1})).size() == 4);
  CHECK(isotropy_algebra(g, e.torus_element({1, 2})).size() == 2);
  CHECK(isotropy_algebra(g, RatVector(g.dim())).size() == g.dim());
  CHECK(fat_by_centralizer(e, e.torus_element({1, 1})).fat);
  const auto wall = fat_by_centralizer(e, e.torus_element({1, 0}));
  CHECK_FALSE(wall.fat);
  REQUIRE(wall.witness);
  CHECK(e.in_m(*wall.witness));
  CHECK(is_zero_vector(g.bracket(e.torus_element({1, 0}), *wall.witness)));
  CHECK_FALSE(fat_by_centralizer(e, RatVector(g.dim())).fat);
  CHECK_THROWS_AS(fat_by_centralizer(e, e.m_basis()[0]), NotInSubspace);
}

TEST_CASE("certificates agree across criteria") {
  const auto rs = build_root_system('B', 2);
  const auto e = sphere(2);
  const ExactCertifier c(e, detect_subsystem(e, rs));
  const auto j = c.certify_torus({1, 1}, "so5_so4");
  CHECK(j.agreed);
  CHECK(j.fat());
  CHECK(j.roots == Verdict::Fat);
  CHECK(*j.min_sv == doctest::Approx(6.0));
  const auto w = c.certify_torus({1, 0});
  CHECK_FALSE(w.fat());
  CHECK(*w.witness_root == Root{0, 1});

  const auto nc = so_block(shared(make_so_pq(4, 1)), 4);
  CHECK(certify(nc, std::optional<RootSystem>(rs), nc.torus_element({1, 1})).fat());

  const auto f = to_float(e);
  const Certifier<double> fc(f, detect_subsystem(f, rs));
  CHECK(fc.certify_torus({1, 1}).fat());
  CHECK_FALSE(fc.certify_torus({1, 0}).fat());
}

TEST_CASE("samples stay on the torus and are reproducible") {
  const auto a = sample_torus_points(3, 50, 7);
  CHECK(a == sample_torus_points(3, 50, 7));
  CHECK(a != sample_torus_points(3, 50, 8));
  for (const auto& x : a)
    for (const auto& v : x) {
      CHECK(abs(v) <= 9);
      CHECK(v.get_den() <= 3);
    }
  for (const auto& x : sample_torus_points(3, 20, 1, true)) CHECK(x[0] + x[1] + x[2] == 0);
  const auto su3 = whole_algebra(shared(make_su(3)));
  for (const auto& x : sample_torus_coordinates(su3, 20, 3)) CHECK(x[0] + x[1] + x[2] == 0);
}

TEST_CASE("parallel batch certification matches the serial reference") {
  const auto e = sphere(3);
  const ExactCertifier c(e, detect_subsystem(e, build_root_system('B', 3)));
  const auto pts = sample_torus_coordinates(e, 60, 9);
  const auto par = certify_batch(c, pts);
  const auto ser = certify_batch_serial(c, pts);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].fat() == ser[i].fat());
    CHECK(par[i].xu == ser[i].xu);
    CHECK(par[i].singular_values == ser[i].singular_values);
  }
}
