#include "fatcert/rootdata.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace fatcert {

namespace {

Root unit_root(std::size_t dim, std::size_t i, int value = 1) {
  Root r(dim, 0);
  r[i] = value;
  return r;
}

Root negate(Root r) {
  for (auto& x : r) x = -x;
  return r;
}

Root plus(Root a, const Root& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Root minus(Root a, const Root& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

RatMatrix root_matrix(const std::vector<Root>& rows, std::size_t dim) {
  RatMatrix m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

RootSystem build_root_system(char type, int rank) {
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  if (rank < 1 || (type == 'D' && rank < 2)) throw UnsupportedFamily("root system rank out of range");
  const std::size_t n = static_cast<std::size_t>(rank);
  switch (type) {
    case 'A': {
      rs.coordinate_dim = n + 1;
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
          rs.positive.push_back(minus(unit_root(n + 1, i), unit_root(n + 1, j)));
      for (std::size_t i = 0; i < n; ++i) rs.simple.push_back(minus(unit_root(n + 1, i), unit_root(n + 1, i + 1)));
      break;
    }
    case 'B':
    case 'C':
    case 'D': {
      rs.coordinate_dim = n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) rs.positive.push_back(minus(unit_root(n, i), unit_root(n, j)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) rs.positive.push_back(plus(unit_root(n, i), unit_root(n, j)));
      if (type != 'D')
        for (std::size_t i = 0; i < n; ++i) rs.positive.push_back(unit_root(n, i, type == 'B' ? 1 : 2));
      for (std::size_t i = 0; i + 1 < n; ++i) rs.simple.push_back(minus(unit_root(n, i), unit_root(n, i + 1)));
      if (type == 'B') rs.simple.push_back(unit_root(n, n - 1));
      if (type == 'C') rs.simple.push_back(unit_root(n, n - 1, 2));
      if (type == 'D') rs.simple.push_back(plus(unit_root(n, n - 2), unit_root(n, n - 1)));
      break;
    }
    default:
      throw UnsupportedFamily(std::string("unsupported root system type '") + type + "'");
  }
  rs.roots = rs.positive;
  for (const auto& r : rs.positive) rs.roots.push_back(negate(r));

  const RatMatrix simple_cols = root_matrix(rs.simple, rs.coordinate_dim).transpose();
  for (const auto& r : rs.roots) {
    RatVector rhs(r.begin(), r.end());
    auto c = solve(simple_cols, rhs);
    if (!c) throw std::logic_error("root outside the span of the simple roots");
    std::vector<int> coeffs;
    for (const auto& x : *c) {
      if (x.get_den() != 1) throw std::logic_error("non-integral simple-root expansion");
      coeffs.push_back(static_cast<int>(x.get_num().get_si()));
    }
    rs.simple_coefficients.push_back(std::move(coeffs));
  }
  return rs;
}

Rational evaluate(const Root& alpha, const RatVector& x) {
  if (alpha.size() != x.size()) throw DimensionMismatch("root and vector have different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0) s += alpha[i] * x[i];
  return s;
}

SubSystem make_subsystem(const RootSystem& rs, const std::vector<Root>& members) {
  SubSystem sub;
  sub.parent = rs;
  std::set<Root> in(members.begin(), members.end());
  for (const auto& m : members)
    if (!in.count(negate(m))) throw std::invalid_argument("sub-system is not closed under negation");
  for (const auto& r : rs.roots) {
    if (in.count(r)) sub.members.push_back(r);
    else sub.forbidden.push_back(r);
  }
  for (const auto& r : rs.positive)
    if (!in.count(r)) sub.forbidden_positive.push_back(r);
  return sub;
}

template <typename Scalar>
SubSystem detect_subsystem(const Embedding<Scalar>& emb, const RootSystem& rs) {
  using T = ScalarTraits<Scalar>;
  if (!emb.has_torus()) throw TorusMismatch(emb.label() + ": no torus attached");
  if (emb.root_coordinate_dim() != rs.coordinate_dim)
    throw TorusMismatch(emb.label() + ": torus coordinates do not match " + rs.label());
  const auto& g = emb.algebra();
  const std::size_t r = emb.torus_basis().size();

  // A torus element whose root values are nonzero and pairwise distinct in
  // absolute value, so each +-alpha pair owns its own isotypic block.
  const auto& tc = emb.torus_root_coords();
  RatMatrix coords(tc.rows(), tc.cols());
  for (std::size_t i = 0; i < tc.rows(); ++i)
    for (std::size_t j = 0; j < tc.cols(); ++j) coords(i, j) = Rational(tc(i, j));
  RatVector weights(r);
  RatVector point;
  bool regular = false;
  for (long base = 7; base < 7 + 64 && !regular; ++base) {
    Rational w = 1;
    for (std::size_t k = 0; k < r; ++k) {
      weights[k] = w;
      w *= base;
    }
    point = coords.transpose() * weights;
    std::set<Rational> seen;
    regular = true;
    for (const auto& a : rs.positive) {
      Rational v = abs(evaluate(a, point));
      if (sgn(v) == 0 || !seen.insert(v).second) {
        regular = false;
        break;
      }
    }
  }
  if (!regular) throw TorusMismatch(emb.label() + ": could not find a regular torus element");

  Vector<Scalar> t(g.dim());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < g.dim(); ++i) t[i] += T::from_rational(weights[k]) * emb.torus_basis()[k][i];
  const Matrix<Scalar> ad_t = g.ad(t);
  if (kernel(ad_t).size() != r)
    throw TorusMismatch(emb.label() + ": torus is not a Cartan subalgebra of " + g.name());
  const Matrix<Scalar> ad_t2 = ad_t * ad_t;

  std::vector<Root> members;
  std::size_t total = r;
  for (const auto& a : rs.positive) {
    const Scalar lambda = T::from_rational(evaluate(a, point));
    Matrix<Scalar> shifted = ad_t2;
    for (std::size_t i = 0; i < g.dim(); ++i) shifted(i, i) += lambda * lambda;
    const auto block = kernel(shifted, 1e-9);
    if (block.size() != 2)
      throw TorusMismatch(emb.label() + ": root " + rs.label() + " block has dimension " + std::to_string(block.size()));
    total += 2;
    const bool in_h = std::all_of(block.begin(), block.end(), [&](const auto& v) { return emb.in_h(v); });
    const bool in_m = std::all_of(block.begin(), block.end(), [&](const auto& v) { return emb.in_m(v); });
    if (in_h == in_m) throw TorusMismatch(emb.label() + ": root block straddles h and m");
    if (in_h) {
      members.push_back(a);
      members.push_back(negate(a));
    }
  }
  if (total != g.dim()) throw TorusMismatch(emb.label() + ": root blocks do not exhaust g");
  return make_subsystem(rs, members);
}

template SubSystem detect_subsystem(const Embedding<Rational>&, const RootSystem&);
template SubSystem detect_subsystem(const Embedding<double>&, const RootSystem&);

RootVerdict fat_by_roots(const RatVector& x, const SubSystem& sub) {
  for (const auto& a : sub.forbidden)
    if (sgn(evaluate(a, x)) == 0) return {false, a};
  return {true, std::nullopt};
}

std::vector<Root> generated_subsystem(const RootSystem& rs, const std::vector<std::size_t>& simple_subset) {
  std::vector<bool> allowed(rs.simple.size(), false);
  for (auto s : simple_subset) allowed.at(s) = true;
  std::vector<Root> out;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < rs.simple.size(); ++k)
      if (rs.simple_coefficients[i][k] != 0 && !allowed[k]) inside = false;
    if (inside) out.push_back(rs.roots[i]);
  }
  return out;
}

RatVector find_centralizing_vector(const RootSystem& rs, const std::vector<std::size_t>& simple_subset) {
  std::vector<bool> in_s(rs.simple.size(), false);
  for (auto s : simple_subset) in_s.at(s) = true;

  // alpha_k(X) = [k not in S], and X orthogonal to whatever the roots do not span.
  const RatMatrix simple = root_matrix(rs.simple, rs.coordinate_dim);
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t k = 0; k < rs.simple.size(); ++k) {
    rows.push_back(simple.row(k));
    rhs.push_back(in_s[k] ? 0 : 1);
  }
  for (auto& w : kernel(simple)) {
    rows.push_back(std::move(w));
    rhs.push_back(0);
  }
  auto x = solve(RatMatrix::from_rows(rows, rs.coordinate_dim), rhs);
  if (!x) throw std::logic_error("fundamental coweight system is inconsistent");

  const auto levi = generated_subsystem(rs, simple_subset);
  const std::set<Root> levi_set(levi.begin(), levi.end());
  for (const auto& a : rs.roots) {
    const bool zero = sgn(evaluate(a, *x)) == 0;
    if (zero != static_cast<bool>(levi_set.count(a)))
      throw std::logic_error("centralizing vector failed verification");
  }
  return *x;
}

bool shift_is_valid(const std::vector<RatVector>& vertices, const std::vector<Root>& forbidden, const RatVector& shift) {
  for (const auto& a : forbidden) {
    const Rational base = evaluate(a, shift);
    int sign = 0;
    for (const auto& v : vertices) {
      const int s = sgn(evaluate(a, v) + base);
      if (s == 0) return false;
      if (sign == 0) sign = s;
      else if (s != sign) return false;
    }
  }
  return true;
}

namespace {

// coef . y > rhs, or >= when !strict
struct Inequality {
  RatVector coef;
  Rational rhs;
  bool strict = true;

  bool operator<(const Inequality& o) const {
    if (coef != o.coef) return coef < o.coef;
    if (rhs != o.rhs) return rhs < o.rhs;
    return strict < o.strict;
  }
};

Inequality normalized(Inequality q) {
  for (const auto& c : q.coef)
    if (sgn(c) != 0) {
      const Rational s = abs(c);
      for (auto& x : q.coef) x /= s;
      q.rhs /= s;
      break;
    }
  return q;
}

// Fourier-Motzkin with back substitution. Returns a point or nullopt.
std::optional<RatVector> solve_strict_system(std::vector<Inequality> system, std::size_t vars) {
  std::vector<std::vector<Inequality>> stages;
  for (std::size_t j = vars; j-- > 0;) {
    stages.push_back(system);
    std::vector<Inequality> lower, upper, rest;
    for (auto& q : system) {
      const int s = sgn(q.coef[j]);
      (s > 0 ? lower : s < 0 ? upper : rest).push_back(std::move(q));
    }
    std::set<Inequality> next;
    for (auto& q : rest) next.insert(normalized(std::move(q)));
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // lo: a y_j + ... > r1 (a > 0), up: -b y_j + ... > r2 (b > 0)
        const Rational a = lo.coef[j];
        const Rational b = -up.coef[j];
        Inequality c;
        c.coef.resize(vars);
        for (std::size_t k = 0; k < vars; ++k) c.coef[k] = b * lo.coef[k] + a * up.coef[k];
        c.rhs = b * lo.rhs + a * up.rhs;
        c.strict = lo.strict || up.strict;
        next.insert(normalized(std::move(c)));
      }
    system.assign(next.begin(), next.end());
    // constraints with no variables left in 0..j-1 are decided now
    std::vector<Inequality> kept;
    for (auto& q : system) {
      if (is_zero_vector(q.coef)) {
        const bool ok = q.strict ? sgn(q.rhs) < 0 : sgn(q.rhs) <= 0;
        if (!ok) return std::nullopt;
      } else {
        kept.push_back(std::move(q));
      }
    }
    system = std::move(kept);
  }

  RatVector y(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    const auto& stage = stages[vars - 1 - j];
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& q : stage) {
      const Rational& c = q.coef[j];
      if (sgn(c) == 0) continue;
      Rational r = q.rhs;
      for (std::size_t k = 0; k < j; ++k) r -= q.coef[k] * y[k];
      const Rational bound = r / c;
      if (sgn(c) > 0) {
        if (!lo || bound > *lo || (bound == *lo && q.strict)) {
          lo = bound;
          lo_strict = q.strict;
        }
      } else if (!hi || bound < *hi || (bound == *hi && q.strict)) {
        hi = bound;
        hi_strict = q.strict;
      }
    }
    auto fits = [&](const Rational& v) {
      if (lo && (lo_strict ? v <= *lo : v < *lo)) return false;
      if (hi && (hi_strict ? v >= *hi : v > *hi)) return false;
      return true;
    };
    Rational v = 0;
    if (lo) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
      v = Rational(f + 1);
    } else if (hi) {
      mpz_class c;
      mpz_cdiv_q(c.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
      v = Rational(c - 1);
    }
    if (!fits(v) && lo && hi) v = fits(*lo) ? *lo : (*lo + *hi) / 2;
    if (!fits(v)) return std::nullopt;
    y[j] = v;
  }
  return y;
}

struct ShiftProblem {
  const std::vector<RatVector>& vertices;
  const SubSystem& sub;
  const ShiftOptions& options;
  RatMatrix simple_cols;  // a = simple_cols * y keeps a in the root span

  std::optional<RatVector> try_pattern(std::size_t pattern) const {
    const std::size_t vars = simple_cols.cols();
    const std::size_t dim = simple_cols.rows();
    std::vector<Inequality> system;
    for (std::size_t k = 0; k < sub.forbidden_positive.size(); ++k) {
      const int s = ((pattern >> k) & 1U) ? -1 : 1;
      const Root& a = sub.forbidden_positive[k];
      // s * alpha(v + a) > 0 for every v  <=>  s*alpha(a) > max_v(-s*alpha(v))
      Rational worst;
      bool first = true;
      for (const auto& v : vertices) {
        const Rational val = -s * evaluate(a, v);
        if (first || val > worst) worst = val;
        first = false;
      }
      Inequality q;
      q.coef.assign(vars, 0);
      for (std::size_t c = 0; c < vars; ++c)
        for (std::size_t i = 0; i < dim; ++i) q.coef[c] += s * a[i] * simple_cols(i, c);
      q.rhs = worst;
      system.push_back(std::move(q));
    }
    if (options.bound) {
      for (std::size_t i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
          // -s * a_i >= -bound
          Inequality q;
          q.coef.assign(vars, 0);
          for (std::size_t c = 0; c < vars; ++c) q.coef[c] = -s * simple_cols(i, c);
          q.rhs = -*options.bound;
          q.strict = false;
          system.push_back(std::move(q));
        }
    }
    auto y = solve_strict_system(std::move(system), vars);
    if (!y) return std::nullopt;
    RatVector shift = simple_cols * *y;
    if (!shift_is_valid(vertices, sub.forbidden, shift)) return std::nullopt;
    if (options.bound)
      for (const auto& x : shift)
        if (abs(x) > *options.bound) return std::nullopt;
    return shift;
  }
};

ShiftProblem make_problem(const std::vector<RatVector>& vertices, const SubSystem& sub, const ShiftOptions& options) {
  if (vertices.empty()) throw std::invalid_argument("find_fat_shift needs at least one vertex");
  for (const auto& v : vertices)
    if (v.size() != sub.parent.coordinate_dim) throw DimensionMismatch("vertex length != root coordinate dimension");
  if (sub.forbidden_positive.size() >= 8 * sizeof(std::size_t) - 1)
    throw std::invalid_argument("too many forbidden root pairs for pattern enumeration");
  return {vertices, sub, options, root_matrix(sub.parent.simple, sub.parent.coordinate_dim).transpose()};
}

}  // namespace

std::optional<RatVector> find_fat_shift_serial(const std::vector<RatVector>& vertices, const SubSystem& sub,
                                               const ShiftOptions& options) {
  const auto problem = make_problem(vertices, sub, options);
  const std::size_t patterns = std::size_t{1} << sub.forbidden_positive.size();
  for (std::size_t p = 0; p < patterns; ++p)
    if (auto a = problem.try_pattern(p)) return a;
  return std::nullopt;
}

std::optional<RatVector> find_fat_shift(const std::vector<RatVector>& vertices, const SubSystem& sub,
                                        const ShiftOptions& options) {
  const auto problem = make_problem(vertices, sub, options);
  const long patterns = static_cast<long>(std::size_t{1} << sub.forbidden_positive.size());
  std::vector<std::optional<RatVector>> found(patterns);
  std::atomic<long> best{patterns};
#pragma omp parallel for schedule(dynamic, 1)
  for (long p = 0; p < patterns; ++p) {
    if (p > best.load(std::memory_order_relaxed)) continue;
    found[p] = problem.try_pattern(static_cast<std::size_t>(p));
    if (found[p]) {
      long cur = best.load();
      while (p < cur && !best.compare_exchange_weak(cur, p)) {
      }
    }
  }
  const long b = best.load();
  if (b == patterns) return std::nullopt;
  return found[b];
}

RootSystem root_system_for(const AlgebraSource& source) {
  int n = 0;
  if (source.family == "so") n = source.params.at(0);
  else if (source.family == "so_pq") n = source.params.at(0) + source.params.at(1);
  else if (source.family == "su") return build_root_system('A', source.params.at(0) - 1);
  else throw UnsupportedFamily("no root system for family '" + source.family + "'");
  if (n % 2 == 1) return build_root_system('B', n / 2);
  return build_root_system('D', n / 2);
}

}  // namespace fatcert
