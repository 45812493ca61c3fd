#include "fatcert/duality.hpp"

namespace fatcert {

RatMatrix conjugation_involution(const ExactAlgebra& g, const RatMatrix& I) {
  if (!g.has_matrices()) throw InvolutionInvalid(g.name() + ": conjugation needs a matrix algebra");
  if (I.rows() != g.matrix_size() || I.cols() != g.matrix_size())
    throw InvolutionInvalid(g.name() + ": involution has the wrong size");
  const auto inv = inverse(I);
  if (!inv) throw InvolutionInvalid(g.name() + ": conjugating matrix is singular");
  RatMatrix theta(g.dim(), g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const auto x = g.coordinates(I * g.basis()[j] * *inv);
    if (!x) throw InvolutionInvalid(g.name() + ": conjugation does not preserve the algebra");
    for (std::size_t i = 0; i < g.dim(); ++i) theta(i, j) = (*x)[i];
  }
  return theta;
}

RatMatrix cartan_involution(const ExactAlgebra& g) {
  const auto& src = g.source();
  if (src.family == "so_pq" && src.params.size() == 2) {
    const int p = src.params[0];
    const int n = p + src.params[1];
    RatMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = i < p ? 1 : -1;
    return conjugation_involution(g, I);
  }
  if (src.family == "so" || src.family == "su" || src.family == "u_in_so") return RatMatrix::identity(g.dim());
  throw UnsupportedFamily(g.name() + ": no built-in Cartan involution");
}

ExactAlgebra flip_pp(const ExactAlgebra& adapted, std::size_t dim_k, std::string name) {
  const std::size_t d = adapted.dim();
  auto c = adapted.constants();
  for (std::size_t i = dim_k; i < d; ++i)
    for (std::size_t j = dim_k; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = -c[(i * d + j) * d + k];
  return ExactAlgebra::from_structure_constants(std::move(name), d, std::move(c));
}

namespace {

RatVector map_vector(const RatMatrix& m, const RatVector& x) { return m * x; }

}  // namespace

DualPair dualize(const ExactEmbedding& h, const RatMatrix& theta) {
  const auto gp = h.algebra_ptr();
  const auto& g = *gp;
  const std::size_t d = g.dim();
  if (theta.rows() != d || theta.cols() != d) throw InvolutionInvalid("involution has the wrong size");
  if (!(theta * theta == RatMatrix::identity(d))) throw InvolutionInvalid(g.name() + ": theta^2 != id");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto lhs = map_vector(theta, g.bracket(g.unit(i), g.unit(j)));
      const auto rhs = g.bracket(theta.column(i), theta.column(j));
      if (lhs != rhs) throw InvolutionInvalid(g.name() + ": theta is not an automorphism");
    }

  DualPair pair;
  pair.noncompact = gp;
  RatMatrix plus = theta, minus = theta;
  for (std::size_t i = 0; i < d; ++i) {
    plus(i, i) -= 1;
    minus(i, i) += 1;
  }
  pair.k_basis = kernel(plus);
  pair.p_basis = kernel(minus);
  pair.dim_k = pair.k_basis.size();

  RatMatrix kgram(pair.dim_k, pair.dim_k);
  for (std::size_t i = 0; i < pair.dim_k; ++i)
    for (std::size_t j = 0; j < pair.dim_k; ++j) kgram(i, j) = g.killing(pair.k_basis[i], pair.k_basis[j]);
  const auto sig = signature(kgram);
  if (sig.negative != pair.dim_k) throw InvolutionInvalid(g.name() + ": fixed algebra of theta is not compact");

  auto cols = pair.k_basis;
  cols.insert(cols.end(), pair.p_basis.begin(), pair.p_basis.end());
  const auto to_adapted = inverse(RatMatrix::from_columns(cols, d));
  if (!to_adapted) throw InvolutionInvalid(g.name() + ": eigenspaces of theta do not span g");

  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto b = map_vector(*to_adapted, g.bracket(cols[i], cols[j]));
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = b[k];
    }
  auto adapted = std::make_shared<const ExactAlgebra>(
      ExactAlgebra::from_structure_constants(g.name() + "[k+p]", d, std::move(c), {"abstract", {}}));
  auto dual = std::make_shared<const ExactAlgebra>(flip_pp(*adapted, pair.dim_k, g.name() + "^dual"));
  if (dual->jacobi_residual() != 0.0) throw InvolutionInvalid(g.name() + ": dual constants fail Jacobi");
  pair.adapted = adapted;
  pair.compact_dual = dual;

  for (const auto& x : h.h_basis())
    if (!is_zero_vector(map_vector(plus, x))) throw InvolutionInvalid(h.label() + ": h is not contained in k");
  if (!h.has_torus()) throw TorusMismatch(h.label() + ": dualize needs a torus on h");
  std::vector<RatVector> hb, tb;
  for (const auto& x : h.h_basis()) hb.push_back(map_vector(*to_adapted, x));
  for (const auto& x : h.torus_basis()) tb.push_back(map_vector(*to_adapted, x));
  pair.noncompact_h = h;
  pair.dual_h = reductive_split(std::shared_ptr<const ExactAlgebra>(dual), hb)
                    .with_torus(tb, h.torus_root_coords())
                    .with_label(h.label() + "^dual");
  return pair;
}

AgreementReport compare_fat_sets(const DualPair& pair, const std::vector<RatVector>& samples, double tol) {
  const auto rs = root_system_for(pair.noncompact->source());
  const ExactCertifier left(pair.noncompact_h, detect_subsystem(pair.noncompact_h, rs), tol);
  const ExactCertifier right(pair.dual_h, detect_subsystem(pair.dual_h, rs), tol);
  AgreementReport rep;
  rep.samples = samples.size();
  for (const auto& x : samples) {
    const bool a = left.certify_torus(x).fat();
    const bool b = right.certify_torus(x).fat();
    rep.verdicts.emplace_back(a, b);
    if (a == b) ++rep.agreements;
    else if (!rep.counterexample) rep.counterexample = x;
  }
  rep.fraction = rep.samples ? static_cast<double>(rep.agreements) / rep.samples : 1.0;
  return rep;
}

AgreementReport compare_fat_sets(const DualPair& pair, std::size_t samples, std::uint64_t seed, double tol) {
  return compare_fat_sets(pair, sample_torus_coordinates(pair.noncompact_h, samples, seed), tol);
}

}  // namespace fatcert
