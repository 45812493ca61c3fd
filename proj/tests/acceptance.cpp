// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "fatcert/catalog.hpp"
#include "fatcert/coupling.hpp"
#include "fatcert/curvature.hpp"
#include "fatcert/duality.hpp"
#include "fatcert/fatness.hpp"
#include "fatcert/rootdata.hpp"

using namespace fatcert;

namespace {

std::shared_ptr<const ExactAlgebra> shared(ExactAlgebra g) { return std::make_shared<const ExactAlgebra>(std::move(g)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", number, title.c_str(), secs,
              out.detail.str().empty() ? "" : ": ", out.detail.str().c_str());
  std::fflush(stdout);
}

std::string str(const RatVector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].get_str();
  return s + ")";
}

bool form_nondegenerate(const InvariantTwoForm<Rational>& form) {
  const auto d = form.gram.rows();
  return d % 2 == 0 && nondegenerate_and_top_power(form, d / 2).nondegenerate;
}

}  // namespace

int main() {
  criterion(1, "root, oracle and centralizer verdicts agree on five pairs", [](Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<ExactEmbedding> cases = {
        so_block(shared(make_so(5)), 4),         so_block(shared(make_so(7)), 6),
        u_in_so_block(shared(make_so(5)), 2),    so_block(shared(make_so_pq(4, 1)), 4),
        so_block(shared(make_so_pq(6, 1)), 6),
    };
    std::size_t total = 0;
    std::uint64_t seed = 100;
    for (const auto& emb : cases) {
      const auto sub = detect_subsystem(emb, root_system_for(emb.algebra().source()));
      const ExactCertifier certifier(emb, sub, 1e-9);
      const auto points = sample_torus_coordinates(emb, 200, seed++);
      std::size_t counted = 0;
      try {
        for (const auto& c : certify_batch(certifier, points)) {
          out.require(c.agreed && c.roots != Verdict::NotApplicable, emb.label() + ": roots verdict missing");
          ++counted;
        }
      } catch (const CriteriaDisagree& e) {
        out.require(false, e.what());
      }
      out.require(counted == 200, emb.label() + ": not every sample certified");
      total += counted;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
    if (out.pass) out.detail << total << " samples, 0 exceptions";
  });

  criterion(2, "J is fat for D_n in B_n with walls exactly +-t_i, n = 2..5", [](Outcome& out) {
    for (int n = 2; n <= 5; ++n)
      for (bool compact : {true, false}) {
        const auto g = shared(compact ? make_so(2 * n + 1) : make_so_pq(2 * n, 1));
        const auto emb = so_block(g, 2 * n);
        const auto sub = detect_subsystem(emb, root_system_for(g->source()));
        std::set<Root> expected;
        for (int i = 0; i < n; ++i) {
          Root r(n, 0);
          r[i] = 1;
          expected.insert(r);
          r[i] = -1;
          expected.insert(r);
        }
        const std::set<Root> got(sub.forbidden.begin(), sub.forbidden.end());
        out.require(got == expected && sub.forbidden.size() == expected.size(), g->name() + ": forbidden walls");
        const RatVector J(n, Rational(1));
        const auto cert = ExactCertifier(emb, sub, 1e-9).certify_torus(J, g->name());
        out.require(cert.fat() && cert.roots == Verdict::Fat && cert.oracle == Verdict::Fat &&
                        cert.centralizer == Verdict::Fat,
                    g->name() + ": J not certified fat");
      }
  });

  criterion(3, "so(4)/so(3) is never fat", [](Outcome& out) {
    const auto emb = so_block(shared(make_so(4)), 3);
    out.require(emb.dim_m() == 3, "dim m != 3");
    const ExactCertifier certifier(emb, std::nullopt, 1e-9);
    std::size_t not_fat = 0;
    const auto points = sample_torus_coordinates(emb, 150, 3);
    for (const auto& c : certify_batch(certifier, points)) not_fat += !c.fat();
    out.require(not_fat == points.size(), std::to_string(not_fat) + "/" + std::to_string(points.size()) + " not fat");
    if (out.pass) out.detail << not_fat << "/" << points.size() << " not fat";
  });

  criterion(4, "pinched twistor forms are nondegenerate above the margin bound", [](Outcome& out) {
    double worst_slack = 1e9, worst_oracle = 0.0;
    for (int n = 2; n <= 3; ++n)
      for (int sign : {1, -1}) {
        const double eps = 0.9 * 3.0 / (2 * n + 1);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
          const auto R = random_pinched(n, eps, sign, seed);
          const auto rep = twistor_fatness(R, 100, seed);
          out.require(rep.frames.size() >= 100, "too few frames");
          out.require(rep.fat, "n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": degenerate frame");
          out.require(rep.min_margin >= 1.0 - (2 * n + 1) * eps / 3.0 - 1e-9,
                      "n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": margin below bound");
          worst_slack = std::min(worst_slack, rep.min_margin - rep.bound);
        }
        const double kappa = sign;
        const auto C = constant_curvature(n, kappa);
        const auto closed = twistor_form_constant(n, kappa);
        for (std::uint64_t f = 0; f < 100; ++f)
          worst_oracle =
              std::max(worst_oracle, (twistor_form(C, random_frame(n, 1000, f)) - closed).cwiseAbs().maxCoeff());
      }
    out.require(worst_oracle <= 1e-12, "constant-curvature oracle off by " + std::to_string(worst_oracle));
    if (out.pass) out.detail << "min slack over bound " << worst_slack << ", oracle error " << worst_oracle;
  });

  criterion(5, "coupling-form nondegeneracy matches fatness; closedness exact", [](Outcome& out) {
    std::size_t checked = 0, instances = 0;
    double float_ce = 0.0;
    for (const auto& spec : builtin_catalog("paper_examples")) {
      if (spec.g.is_null() || spec.h.is_null()) continue;
      const auto emb = instance_embedding(spec);
      if (!emb.has_torus()) continue;
      ++instances;
      auto points = sample_torus_coordinates(emb, 100, 500 + instances);
      if (spec.xu) points.push_back(*spec.xu);
      const auto femb = to_float(emb);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& x = points[i];
        const auto xu = emb.torus_element(x);
        const auto cert = ExactCertifier(emb, std::nullopt, 1e-9).certify(xu, spec.id);
        const auto bundle = make_bundle(emb, xu);
        const auto form = coupling_form(bundle);
        out.require(form_nondegenerate(form) == cert.fat(), spec.id + ": coupling verdict differs at " + str(x));
        out.require(ce_closedness(bundle, form) == 0.0, spec.id + ": not closed at " + str(x));
        if (i < 5) {
          const auto fb = make_bundle(femb, femb.torus_element(x));
          float_ce = std::max(float_ce, ce_closedness(fb, coupling_form(fb)));
        }
        ++checked;
      }
    }
    out.require(float_ce < 1e-10, "float closedness residual " + std::to_string(float_ce));
    if (out.pass) out.detail << instances << " instances, " << checked << " vectors, float residual " << float_ce;
  });

  criterion(6, "scaled so(5)/u(2) forms keep a nonzero Pfaffian", [](Outcome& out) {
    const auto emb = u_in_so_block(shared(make_so(5)), 2);
    const auto bundle = make_bundle(emb, emb.torus_element({1, 1}));
    const bool fat = fat_by_centralizer(emb, bundle.xu).fat;
    const auto base = parse_rational(nondegenerate_and_top_power(coupling_form(bundle), 3).pfaffian);
    for (const auto& r : {make_rational(1, 10), Rational(1), Rational(10)}) {
      const auto top = nondegenerate_and_top_power(coupling_form(bundle, r), 3);
      const auto pf = parse_rational(top.pfaffian);
      out.require(pf != 0 && top.nondegenerate == fat && fat, "r = " + r.get_str() + ": verdict changed");
      out.require(pf == base * r * r * r, "r = " + r.get_str() + ": Pfaffian is not r^3 times the base value");
      out.detail << (out.pass ? "Pf(" + r.get_str() + ")=" + pf.get_str() + " " : "");
    }
  });

  criterion(7, "fat sets agree between so(2n,1)/so(2n) and so(2n+1)/so(2n)", [](Outcome& out) {
    for (int n : {2, 3}) {
      const auto g = shared(make_so_pq(2 * n, 1));
      const auto pair = dualize(so_block(g, 2 * n), cartan_involution(*g));
      const auto rep = compare_fat_sets(pair, 200, 700 + n);
      out.require(rep.samples == 200 && rep.agreements == 200,
                  "n=" + std::to_string(n) + ": " + std::to_string(rep.agreements) + "/200");
    }
  });

  criterion(8, "shift search finds the square shift and rejects the boxed one", [](Outcome& out) {
    const auto b2 = build_root_system('B', 2);
    const auto sub = make_subsystem(b2, {});
    out.require(sub.forbidden.size() == 8, "expected 8 forbidden roots");
    const std::vector<RatVector> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const auto shift = find_fat_shift(square, sub);
    out.require(shift.has_value(), "no shift found");
    if (shift) {
      for (const auto& alpha : sub.forbidden) {
        int first = 0;
        for (const auto& v : square) {
          Rational s = 0;
          for (std::size_t i = 0; i < v.size(); ++i) s += alpha[i] * (v[i] + (*shift)[i]);
          const int sg = sgn(s);
          out.require(sg != 0 && (first == 0 || sg == first), "root not sign-definite after shift " + str(*shift));
          if (!first) first = sg;
        }
      }
      if (out.pass) out.detail << "shift " << str(*shift);
    }
    ShiftOptions boxed;
    boxed.bound = make_rational(1, 4);
    out.require(!find_fat_shift(square, sub, boxed).has_value(), "boxed example returned a shift");
  });

  criterion(9, "centralizing vectors vanish exactly on the chosen subsystem", [](Outcome& out) {
    struct Case {
      char type;
      int rank;
      std::vector<std::size_t> subset;
      Root check_simple;  // expected simple root for the subset, empty for none
    };
    const std::vector<Case> cases = {{'A', 2, {0}, {1, -1, 0}}, {'B', 2, {0}, {1, -1}}, {'D', 3, {}, {}}};
    for (const auto& c : cases) {
      const auto rs = build_root_system(c.type, c.rank);
      if (!c.subset.empty()) out.require(rs.simple[c.subset[0]] == c.check_simple, rs.label() + ": simple order");
      const auto v = find_centralizing_vector(rs, c.subset);
      // independent membership: a root lies in [S] iff its simple coefficients
      // outside S are all zero
      for (std::size_t r = 0; r < rs.roots.size(); ++r) {
        bool in_span = true;
        for (std::size_t k = 0; k < rs.simple.size(); ++k) {
          const bool in_subset = std::find(c.subset.begin(), c.subset.end(), k) != c.subset.end();
          if (!in_subset && rs.simple_coefficients[r][k] != 0) in_span = false;
        }
        Rational value = 0;
        for (std::size_t i = 0; i < v.size(); ++i) value += rs.roots[r][i] * v[i];
        out.require((value == 0) == in_span, rs.label() + ": wrong zero pattern for " + str(v));
      }
      if (out.pass) out.detail << rs.label() << " " << str(v) << " ";
    }
  });

  criterion(10, "builtin catalog certificates are byte-identical across runs", [](Outcome& out) {
    const auto specs = builtin_catalog("paper_examples");
    RunOptions serial;
    serial.jobs = 1;
    const auto a = run_catalog(specs, {});
    const auto b = run_catalog(specs, {});
    const auto c = run_catalog(specs, serial);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto d = a[i].certificate.dump(2);
      out.require(d == b[i].certificate.dump(2) && d == c[i].certificate.dump(2), a[i].id + ": certificates differ");
      out.require(a[i].pass, a[i].id + ": instance failed");
    }
    if (out.pass) out.detail << a.size() << " certificates";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
