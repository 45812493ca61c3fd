#include <doctest.h>

#include <algorithm>
#include <set>

#include "fatcert/rootdata.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> shared(ExactAlgebra g) { return std::make_shared<const ExactAlgebra>(std::move(g)); }

std::set<Root> as_set(const std::vector<Root>& v) { return {v.begin(), v.end()}; }

std::vector<Root> all_but(const RootSystem& rs, const std::set<Root>& removed) {
  std::vector<Root> out;
  for (const auto& r : rs.roots)
    if (!removed.count(r)) out.push_back(r);
  return out;
}

}  // namespace

TEST_CASE("root counts match the classical tables") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(build_root_system('A', n).roots.size() == static_cast<std::size_t>(n * (n + 1)));
    CHECK(build_root_system('B', n).roots.size() == static_cast<std::size_t>(2 * n * n));
    CHECK(build_root_system('C', n).roots.size() == static_cast<std::size_t>(2 * n * n));
    if (n >= 2) CHECK(build_root_system('D', n).roots.size() == static_cast<std::size_t>(2 * n * (n - 1)));
  }
  CHECK(as_set(build_root_system('D', 2).roots) == std::set<Root>{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
  CHECK_THROWS_AS(build_root_system('D', 1), UnsupportedFamily);
  CHECK_THROWS_AS(build_root_system('E', 6), UnsupportedFamily);
}

TEST_CASE("roots are closed under negation and have sign-coherent simple coefficients") {
  for (auto [t, n] : {std::pair{'A', 3}, std::pair{'B', 3}, std::pair{'C', 3}, std::pair{'D', 4}}) {
    const auto rs = build_root_system(t, n);
    const auto all = as_set(rs.roots);
    for (const auto& r : rs.roots) {
      Root neg = r;
      for (auto& x : neg) x = -x;
      CHECK(all.count(neg));
    }
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      const auto& c = rs.simple_coefficients[i];
      const bool nonneg = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
      const bool nonpos = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
      CHECK((nonneg || nonpos));
      // the coefficients reproduce the root
      for (std::size_t k = 0; k < rs.coordinate_dim; ++k) {
        int v = 0;
        for (std::size_t s = 0; s < rs.simple.size(); ++s) v += c[s] * rs.simple[s][k];
        CHECK(v == rs.roots[i][k]);
      }
    }
  }
}

TEST_CASE("detect_subsystem finds the roots of h") {
  const auto rs = build_root_system('B', 2);
  const auto so4 = detect_subsystem(so_block(shared(make_so(5)), 4), rs);
  CHECK(as_set(so4.forbidden) == std::set<Root>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(as_set(so4.members) == std::set<Root>{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
  const auto u2 = detect_subsystem(u_in_so_block(shared(make_so(5)), 2), rs);
  CHECK(as_set(u2.members) == std::set<Root>{{1, -1}, {-1, 1}});
  CHECK(u2.forbidden.size() == 6);
  const auto whole = detect_subsystem(whole_algebra(shared(make_so(5))), rs);
  CHECK(whole.forbidden.empty());
  const auto so41 = detect_subsystem(so_block(shared(make_so_pq(4, 1)), 4), rs);
  CHECK(as_set(so41.forbidden) == as_set(so4.forbidden));
  const auto su3 = detect_subsystem(whole_algebra(shared(make_su(3))), build_root_system('A', 2));
  CHECK(su3.forbidden.empty());
  CHECK_THROWS_AS(detect_subsystem(so_block(shared(make_so(5)), 4), build_root_system('B', 3)), TorusMismatch);
}

TEST_CASE("exact wall test") {
  const auto rs = build_root_system('B', 2);
  const auto sub = detect_subsystem(so_block(shared(make_so(5)), 4), rs);
  CHECK(fat_by_roots({1, 1}, sub).fat);
  const auto wall = fat_by_roots({1, 0}, sub);
  CHECK_FALSE(wall.fat);
  CHECK(*wall.witness == Root{0, 1});
  CHECK(fat_by_roots({2, 1}, sub).fat);
  const auto u2 = detect_subsystem(u_in_so_block(shared(make_so(5)), 2), rs);
  const auto diag = fat_by_roots({1, -1}, u2);
  CHECK_FALSE(diag.fat);
  CHECK(((*diag.witness == Root{1, 1}) || (*diag.witness == Root{-1, -1})));
}

TEST_CASE("centralizing vectors vanish exactly on the generated sub-system") {
  struct Case {
    char type;
    int rank;
    std::vector<std::size_t> subset;
  };
  for (const auto& c : {Case{'A', 2, {0}}, Case{'B', 2, {0}}, Case{'D', 3, {}}, Case{'C', 3, {1, 2}}}) {
    const auto rs = build_root_system(c.type, c.rank);
    const auto x = find_centralizing_vector(rs, c.subset);
    const auto inside = as_set(generated_subsystem(rs, c.subset));
    for (const auto& r : rs.roots) CHECK((sgn(evaluate(r, x)) == 0) == (inside.count(r) > 0));
  }
  const auto a2 = build_root_system('A', 2);
  const auto x = find_centralizing_vector(a2, {0});
  CHECK(evaluate(a2.simple[0], x) == 0);
  CHECK(evaluate(a2.simple[1], x) == 1);
  const auto b = find_centralizing_vector(build_root_system('B', 2), {0});
  CHECK(b[0] == b[1]);
  CHECK(b[0] != 0);
}

TEST_CASE("shift search") {
  const auto rs = build_root_system('B', 2);
  const auto all = make_subsystem(rs, {});
  CHECK(all.forbidden.size() == 8);
  const std::vector<RatVector> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(shift_is_valid(square, all.forbidden, {3, 1}));
  CHECK_FALSE(shift_is_valid(square, all.forbidden, {0, 0}));
  const auto a = find_fat_shift(square, all);
  REQUIRE(a);
  CHECK(shift_is_valid(square, all.forbidden, *a));
  CHECK(find_fat_shift_serial(square, all) == a);

  ShiftOptions boxed;
  boxed.bound = make_rational(1, 4);
  CHECK_FALSE(find_fat_shift(square, all, boxed));
  CHECK_FALSE(find_fat_shift_serial(square, all, boxed));

  const auto t1 = make_subsystem(rs, all_but(rs, {{1, 0}, {-1, 0}}));
  const auto p = find_fat_shift({{0, 0}}, t1);
  REQUIRE(p);
  CHECK(shift_is_valid({{0, 0}}, t1.forbidden, *p));

  const auto diag = make_subsystem(rs, all_but(rs, {{1, -1}, {-1, 1}}));
  const std::vector<RatVector> segment{{-1, -1}, {1, 1}};
  const auto s = find_fat_shift(segment, diag);
  REQUIRE(s);
  CHECK(shift_is_valid(segment, diag.forbidden, *s));
}

TEST_CASE("parallel and serial shift search agree on random vertex sets") {
  const auto rs = build_root_system('B', 2);
  const auto all = make_subsystem(rs, {});
  for (long k = 1; k <= 6; ++k) {
    const std::vector<RatVector> tri{{0, 0}, {k, 0}, {0, make_rational(k, 2)}};
    ShiftOptions o;
    o.bound = Rational(k);
    CHECK(find_fat_shift(tri, all, o) == find_fat_shift_serial(tri, all, o));
  }
}
