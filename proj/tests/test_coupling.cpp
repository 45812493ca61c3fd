#include <doctest.h>

#include <Eigen/LU>

#include "fatcert/coupling.hpp"
#include "fatcert/fatness.hpp"
#include "oracles.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> so5() { return std::make_shared<const ExactAlgebra>(make_so(5)); }

Rational pfaffian_of(const InvariantTwoForm<Rational>& form) {
  return parse_rational(nondegenerate_and_top_power(form, form.gram.rows() / 2).pfaffian);
}

}  // namespace

TEST_CASE("coupling form on so(5)/u(2) at J") {
  const auto emb = u_in_so_block(so5(), 2);
  const auto xu = emb.torus_element({1, 1});
  const auto bundle = make_bundle(emb, xu);
  CHECK(bundle.v_basis.size() == 4);
  CHECK(bundle.dim_vertical() == 0);
  CHECK(bundle.dim_horizontal() == 6);
  const auto form = coupling_form(bundle);
  REQUIRE(form.gram.rows() == 6);
  const auto top = nondegenerate_and_top_power(form, 3);
  CHECK(top.nondegenerate);
  CHECK(top.pfaffian_squares_to_det);
  const double det = oracle::to_eigen(form.gram).determinant();
  CHECK(top.pfaffian_abs * top.pfaffian_abs == doctest::Approx(det));
  const auto block = verify_block_structure(bundle, form);
  CHECK(block.cross_zero);
  CHECK(block.horizontal_matches_fatness);
  CHECK(ce_closedness(bundle, form) == 0.0);
}

TEST_CASE("coupling form on so(5)/so(4) splits into blocks") {
  const auto emb = so_block(so5(), 4);
  const auto bundle = make_bundle(emb, emb.torus_element({1, 1}));
  CHECK(bundle.v_basis.size() == 4);
  CHECK(bundle.dim_vertical() == 2);
  CHECK(bundle.dim_horizontal() == 4);
  const auto form = coupling_form(bundle);
  const auto block = verify_block_structure(bundle, form);
  CHECK(block.cross_zero);
  CHECK(block.cross_max == 0.0);
  CHECK(block.vertical_nondegenerate);
  CHECK(block.horizontal_matches_fatness);
  REQUIRE(block.theta_ratio);
  CHECK(*block.theta_ratio == doctest::Approx(-2.0));
  CHECK(nondegenerate_and_top_power(form, 3).nondegenerate);
  CHECK(ce_closedness(bundle, form) == 0.0);

  // a wrong relative normalization of the horizontal block breaks closedness
  CHECK(ce_closedness(bundle, rescale_horizontal(form, make_rational(-1, 2))) > 0.0);
  CHECK(ce_closedness(bundle, rescale_horizontal(form, Rational(1))) == 0.0);

  // the extension vanishes on v and is skew
  const auto ext = extend_to_algebra(bundle, form);
  for (std::size_t i = 0; i < ext.rows(); ++i)
    for (std::size_t j = 0; j < ext.cols(); ++j) CHECK(ext(i, j) == -ext(j, i));
}

TEST_CASE("wall vectors give a degenerate coupling form") {
  const auto emb = so_block(so5(), 4);
  const auto bundle = make_bundle(emb, emb.torus_element({1, 0}));
  const auto form = coupling_form(bundle);
  CHECK(verify_block_structure(bundle, form).cross_zero);
  CHECK(ce_closedness(bundle, form) == 0.0);
  if (form.gram.rows() % 2 == 0)
    CHECK_FALSE(nondegenerate_and_top_power(form, form.gram.rows() / 2).nondegenerate);
  else
    CHECK_THROWS_AS(nondegenerate_and_top_power(form, form.gram.rows() / 2), OddDimension);
}

TEST_CASE("Pfaffian scales with the cube of r") {
  const auto emb = u_in_so_block(so5(), 2);
  const auto bundle = make_bundle(emb, emb.torus_element({1, 1}));
  const auto base = pfaffian_of(coupling_form(bundle));
  CHECK(base != 0);
  for (const auto& r : {make_rational(1, 10), Rational(1), Rational(10), Rational(-3)})
    CHECK(pfaffian_of(coupling_form(bundle, r)) == base * r * r * r);
  const auto zero = coupling_form(bundle, Rational(0));
  const auto top = nondegenerate_and_top_power(zero, 3);
  CHECK(top.pfaffian == "0");
  CHECK_FALSE(top.nondegenerate);
  CHECK_THROWS_AS(nondegenerate_and_top_power(zero, 2), OddDimension);
}

TEST_CASE("supplied isotropy must match") {
  const auto emb = so_block(so5(), 4);
  const auto xu = emb.torus_element({1, 1});
  const auto good = make_bundle(emb, xu);
  CHECK(make_bundle(emb, good.v_basis, xu).n_basis.size() == good.n_basis.size());
  std::vector<RatVector> wrong(good.v_basis.begin(), good.v_basis.end() - 1);
  CHECK_THROWS_AS(make_bundle(emb, wrong, xu), IsotropyMismatch);
  CHECK_THROWS_AS(make_bundle(emb, emb.m_basis()[0]), NotInSubspace);
}

TEST_CASE("shifted coupling") {
  const auto emb = so_block(so5(), 4);
  const auto wall = emb.torus_element({1, 0});
  const auto same = shifted_coupling(emb, wall, RatVector{0, 0});
  CHECK(same.gram == coupling_form(make_bundle(emb, wall)).gram);

  HomogeneousBundle<Rational> shifted_bundle = make_bundle(emb, wall);
  const auto fat = shifted_coupling(emb, wall, RatVector{0, 1}, &shifted_bundle);
  CHECK(shifted_bundle.xu == emb.torus_element({1, 1}));
  CHECK(nondegenerate_and_top_power(fat, fat.gram.rows() / 2).nondegenerate);
  CHECK(ce_closedness(shifted_bundle, fat) == 0.0);

  const auto j = emb.torus_element({1, 1});
  const auto back = shifted_coupling(emb, j, RatVector{-1, 0}, &shifted_bundle);
  CHECK_FALSE(fat_by_centralizer(emb, shifted_bundle.xu).fat);
  if (back.gram.rows() % 2 == 0) CHECK_FALSE(nondegenerate_and_top_power(back, back.gram.rows() / 2).nondegenerate);
}

TEST_CASE("float coupling agrees with exact") {
  const auto emb = so_block(so5(), 4);
  const auto femb = to_float(emb);
  const auto xe = emb.torus_element({2, 1});
  const auto xf = femb.torus_element({2, 1});
  const auto exact = coupling_form(make_bundle(emb, xe));
  const auto approx = coupling_form(make_bundle(femb, xf));
  REQUIRE(exact.gram.rows() == approx.gram.rows());
  const auto te = nondegenerate_and_top_power(exact, exact.gram.rows() / 2);
  const auto tf = nondegenerate_and_top_power(approx, approx.gram.rows() / 2);
  CHECK(te.nondegenerate == tf.nondegenerate);
  CHECK(te.pfaffian_abs == doctest::Approx(tf.pfaffian_abs));
}
