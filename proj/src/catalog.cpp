#include "fatcert/catalog.hpp"

#include <omp.h>

#include <iomanip>
#include <set>
#include <sstream>

namespace fatcert {

namespace {

const std::set<std::string> kRunKinds = {"roots", "oracle", "centralizer", "coupling", "pinch", "dual", "shift"};
const std::set<std::string> kInstanceKeys = {"id",      "g",     "h",      "xu",     "run",   "seed", "tol",
                                             "samples", "expect", "scales", "pinch", "shift"};

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line numbers of the objects that are direct elements of the top-level array.
std::vector<std::size_t> element_lines(const std::string& text) {
  std::vector<std::size_t> lines;
  int depth = 0;
  bool in_string = false, escaped = false;
  std::size_t line = 1;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '[' || c == '{') {
      if (depth == 1 && c == '{') lines.push_back(line);
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
    }
  }
  return lines;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

InstanceSpec parse_instance(const Json& j, std::size_t line) {
  if (!j.is_object()) fail_at(line, "catalog entries must be objects");
  for (const auto& [key, _] : j.items())
    if (!kInstanceKeys.count(key)) fail_at(line, "unknown field \"" + key + "\"");
  InstanceSpec s;
  s.line = line;
  try {
    if (!j.contains("id") || !j.at("id").is_string() || j.at("id").get<std::string>().empty())
      fail_at(line, "instance needs a non-empty string \"id\"");
    s.id = j.at("id").get<std::string>();
    if (!j.contains("run") || !j.at("run").is_array() || j.at("run").empty())
      fail_at(line, s.id + ": \"run\" must be a non-empty array");
    for (const auto& k : j.at("run")) {
      const auto kind = k.get<std::string>();
      if (!kRunKinds.count(kind)) fail_at(line, s.id + ": unknown run kind \"" + kind + "\"");
      s.run.push_back(kind);
    }
    if (j.contains("g")) s.g = j.at("g");
    if (j.contains("h")) s.h = j.at("h");
    if (j.contains("xu")) s.xu = rational_vector_from_json(j.at("xu"));
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) fail_at(line, s.id + ": seed must be a non-negative integer");
      s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tol")) {
      s.tol = j.at("tol").get<double>();
      if (!(*s.tol > 0.0)) fail_at(line, s.id + ": tol must be positive");
    }
    if (j.contains("samples")) s.samples = j.at("samples").get<std::size_t>();
    if (j.contains("expect")) {
      const auto e = j.at("expect").get<std::string>();
      if (e != "fat" && e != "not_fat") fail_at(line, s.id + ": expect must be \"fat\" or \"not_fat\"");
      s.expect_fat = e == "fat";
    }
    if (j.contains("scales"))
      for (const auto& r : j.at("scales")) s.scales.push_back(rational_from_json(r));
    if (j.contains("pinch")) {
      const auto& p = j.at("pinch");
      PinchSpec ps;
      ps.n = p.value("n", 2);
      ps.epsilon = p.value("epsilon", 0.0);
      ps.sign = p.value("sign", 1);
      ps.frames = p.value("frames", std::size_t{100});
      s.pinch = ps;
    }
    if (j.contains("shift")) {
      const auto& p = j.at("shift");
      ShiftSpec ss;
      for (const auto& v : p.at("vertices")) ss.vertices.push_back(rational_vector_from_json(v));
      if (p.contains("bound")) ss.bound = rational_from_json(p.at("bound"));
      const auto e = p.value("expect", std::string("feasible"));
      if (e != "feasible" && e != "infeasible") fail_at(line, s.id + ": shift.expect must be feasible or infeasible");
      ss.expect_feasible = e == "feasible";
      s.shift = ss;
    }
  } catch (const nlohmann::json::exception& e) {
    fail_at(line, std::string("bad field type: ") + e.what());
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind("line ", 0) == 0) throw;
    fail_at(line, what);
  }
  const bool needs_algebra = s.runs("roots") || s.runs("oracle") || s.runs("centralizer") || s.runs("coupling") ||
                             s.runs("dual") || s.runs("shift");
  if (needs_algebra && (s.g.is_null() || s.h.is_null())) fail_at(line, s.id + ": \"g\" and \"h\" are required");
  if (s.runs("pinch") && !s.pinch) fail_at(line, s.id + ": run kind pinch needs a \"pinch\" block");
  if (s.runs("shift") && !s.shift) fail_at(line, s.id + ": run kind shift needs a \"shift\" block");
  return s;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ExactEmbedding build_embedding(std::shared_ptr<const ExactAlgebra> g, const Json& h) {
  const auto kind = h.value("kind", std::string());
  if (kind == "so_block") return so_block(g, h.at("k").get<int>());
  if (kind == "u_in_so_block") return u_in_so_block(g, h.at("n").get<int>());
  if (kind == "whole") return whole_algebra(g);
  if (kind == "centralizer") return centralizer_embedding(g, rational_vector_from_json(h.at("coords")));
  if (!kind.empty()) throw ParseError("unknown h kind \"" + kind + "\"");
  return embedding_from_json(g, h);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string root_string(const Root& r) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")";
  return os.str();
}

std::string vector_string(const RatVector& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x.get_str());
  return "(" + join(parts, ", ") + ")";
}

struct Runner {
  const InstanceSpec& spec;
  double tol;
  std::uint64_t seed;
  InstanceResult res;
  std::ostringstream report;
  std::vector<std::string> verdicts;

  std::shared_ptr<const ExactAlgebra> g;
  std::optional<ExactEmbedding> emb;
  std::optional<SubSystem> sub;

  void fail(const std::string& msg) { res.failures.push_back(msg); }

  void setup_algebra() {
    g = std::make_shared<const ExactAlgebra>(algebra_from_json(spec.g));
    emb = build_embedding(g, spec.h);
    res.certificate["g"] = algebra_json(*g);
    Json hj = spec.h;
    hj["dim_h"] = emb->dim_h();
    hj["dim_m"] = emb->dim_m();
    hj["compact"] = emb->compact();
    res.certificate["h"] = hj;
    report << "algebra " << g->name() << " (dim " << g->dim() << "), h = " << emb->label() << " (dim "
           << emb->dim_h() << "), dim m = " << emb->dim_m() << "\n";
    if (spec.runs("roots") || spec.runs("shift")) {
      const auto rs = root_system_for(g->source());
      sub = detect_subsystem(*emb, rs);
      res.certificate["root_system"] = root_system_json(rs);
      res.certificate["subsystem"] = subsystem_json(*sub);
      std::vector<std::string> roots, forbidden;
      for (const auto& r : rs.roots) roots.push_back(root_string(r));
      for (const auto& r : sub->forbidden) forbidden.push_back(root_string(r));
      report << "root system " << rs.label() << ": " << join(roots, " ") << "\n";
      report << "forbidden walls: " << join(forbidden, " ") << "\n";
    }
  }

  void run_fatness() {
    const ExactCertifier certifier(*emb, spec.runs("roots") ? sub : std::nullopt, tol);
    if (spec.xu) {
      const auto cert = certify_one(certifier, *spec.xu);
      if (cert) {
        Json cj = certificate_json(*cert);
        for (auto& [k, v] : cj.items()) res.certificate[k] = v;
        verdicts.push_back(cert->fat() ? "fat" : "not_fat");
        describe(*cert, *spec.xu);
        if (spec.expect_fat && *spec.expect_fat != cert->fat())
          fail("expected " + std::string(*spec.expect_fat ? "fat" : "not_fat") + ", certified " +
               (cert->fat() ? "fat" : "not_fat"));
      }
    }
    if (spec.samples > 0) {
      Json sj;
      std::size_t fat = 0, not_fat = 0, disagreements = 0;
      for (const auto& x : sample_torus_coordinates(*emb, spec.samples, seed)) {
        const auto cert = certify_one(certifier, x);
        if (!cert) ++disagreements;
        else if (cert->fat()) ++fat;
        else ++not_fat;
      }
      sj["count"] = spec.samples;
      sj["fat"] = fat;
      sj["not_fat"] = not_fat;
      sj["disagreements"] = disagreements;
      res.certificate["samples"] = sj;
      report << "samples: " << spec.samples << " (" << fat << " fat, " << not_fat << " not fat, " << disagreements
             << " disagreements)\n";
    }
  }

  std::optional<FatnessCertificate> certify_one(const ExactCertifier& certifier, const RatVector& x) {
    try {
      auto cert = certifier.certify_torus(x, spec.id);
      cert.seed = seed;
      return cert;
    } catch (const CriteriaDisagree& e) {
      fail(std::string(e.what()) + " at X_u = " + vector_string(x));
      return std::nullopt;
    }
  }

  void describe(const FatnessCertificate& cert, const RatVector& x) {
    report << "X_u = " << vector_string(x) << "\n";
    if (sub) {
      report << "wall values alpha(X_u):";
      for (const auto& a : sub->forbidden_positive) report << " " << root_string(a) << "=" << evaluate(a, x).get_str();
      report << "\n";
    }
    report << "verdicts: roots=" << to_string(cert.roots) << " oracle=" << to_string(cert.oracle)
           << " centralizer=" << to_string(cert.centralizer) << "\n";
    report << "Gram singular values:";
    for (double s : cert.singular_values) report << " " << s;
    report << "\n";
    report << "centralizer dimension: " << cert.centralizer_dim << "\n";
    if (cert.witness_root) report << "vanishing witness root: " << root_string(*cert.witness_root) << "\n";
    if (cert.odd_dimension) report << "dim m is odd: never fat\n";
  }

  struct CouplingCheck {
    bool nondegenerate = false;
    double ce = 0.0;
    bool cross_zero = false;
  };

  CouplingCheck coupling_check(const RatVector& x, bool fat) {
    const auto bundle = make_bundle(*emb, emb->torus_element(x));
    const auto form = coupling_form(bundle);
    CouplingCheck c;
    c.ce = ce_closedness(bundle, form);
    c.cross_zero = verify_block_structure(bundle, form).cross_zero;
    const auto d = form.gram.rows();
    c.nondegenerate = d % 2 == 0 && nondegenerate_and_top_power(form, d / 2).nondegenerate;
    if (c.nondegenerate != fat)
      fail("coupling form nondegeneracy disagrees with fatness at X_u = " + vector_string(x));
    if (c.ce != 0.0) fail("coupling form is not closed at X_u = " + vector_string(x));
    if (!c.cross_zero) fail("coupling form has a nonzero cross block at X_u = " + vector_string(x));
    return c;
  }

  void run_coupling() {
    Json cj;
    if (spec.xu) {
      const auto bundle = make_bundle(*emb, emb->torus_element(*spec.xu));
      const auto form = coupling_form(bundle);
      const auto block = verify_block_structure(bundle, form);
      const double ce = ce_closedness(bundle, form);
      const double corrupted = ce_closedness(bundle, rescale_horizontal(form, make_rational(-1, 2)));
      const bool fat = fat_by_centralizer(*emb, bundle.xu).fat;
      cj["dim_v"] = bundle.v_basis.size();
      cj["dim_vertical"] = bundle.dim_vertical();
      cj["dim_horizontal"] = bundle.dim_horizontal();
      cj["gram"] = matrix_json(form.gram);
      cj["blocks"] = block_report_json(block);
      cj["ce_residual"] = ce;
      cj["corrupted_ce_residual"] = corrupted;
      report << "coupling form: dim v = " << bundle.v_basis.size() << ", vertical " << bundle.dim_vertical()
             << ", horizontal " << bundle.dim_horizontal() << "\n";
      report << "  cross block max " << block.cross_max << ", vertical nondegenerate "
             << (block.vertical_nondegenerate ? "yes" : "no") << ", horizontal = fatness Gram "
             << (block.horizontal_matches_fatness ? "yes" : "no");
      if (block.theta_ratio) report << ", ratio to <u,Theta> " << *block.theta_ratio;
      report << "\n  closedness residual " << ce << " (corrupted normalization: " << corrupted << ")\n";
      if (ce != 0.0) fail("coupling form is not closed");
      if (!block.cross_zero) fail("coupling form has a nonzero cross block");
      if (!block.horizontal_matches_fatness) fail("horizontal block differs from the fatness Gram");

      const auto d = form.gram.rows();
      if (d % 2 == 1) {
        cj["odd_dimension"] = true;
        if (fat) fail("odd-dimensional coupling form for a fat X_u");
      } else {
        const auto top = nondegenerate_and_top_power(form, d / 2);
        cj["top_power"] = top_power_json(top);
        report << "  Pfaffian " << top.pfaffian << ", min singular value " << top.min_sv << "\n";
        if (top.nondegenerate != fat) fail("coupling form nondegeneracy disagrees with fatness");
        if (!top.pfaffian_squares_to_det) fail("Pfaffian does not square to the determinant");
        Json scales = Json::array();
        for (const auto& r : spec.scales) {
          const auto scaled_form = coupling_form(bundle, r);
          const auto st = nondegenerate_and_top_power(scaled_form, d / 2);
          Rational expected = parse_rational(top.pfaffian);
          for (std::size_t k = 0; k < d / 2; ++k) expected *= r;
          const bool matches = parse_rational(st.pfaffian) == expected;
          Json sj;
          sj["r"] = rational_json(r);
          sj["pfaffian"] = st.pfaffian;
          sj["nondegenerate"] = st.nondegenerate;
          sj["pfaffian_scales"] = matches;
          scales.push_back(sj);
          report << "  r = " << r.get_str() << ": Pfaffian " << st.pfaffian << "\n";
          if (st.nondegenerate != top.nondegenerate) fail("scaled form changes the verdict at r = " + r.get_str());
          if (!matches) fail("Pfaffian does not scale as r^k at r = " + r.get_str());
        }
        if (!spec.scales.empty()) cj["scales"] = scales;
      }
    }
    if (spec.samples > 0) {
      std::size_t agree = 0;
      double worst_ce = 0.0;
      for (const auto& x : sample_torus_coordinates(*emb, spec.samples, seed)) {
        const bool fat = fat_by_centralizer(*emb, emb->torus_element(x)).fat;
        const auto c = coupling_check(x, fat);
        if (c.nondegenerate == fat) ++agree;
        worst_ce = std::max(worst_ce, c.ce);
      }
      cj["samples"] = spec.samples;
      cj["samples_agreeing"] = agree;
      cj["samples_max_ce_residual"] = worst_ce;
      report << "coupling samples: " << agree << "/" << spec.samples << " agree with fatness\n";
    }
    res.certificate["coupling"] = cj;
  }

  void run_pinch() {
    const auto& p = *spec.pinch;
    const auto R = random_pinched(p.n, p.epsilon, p.sign, seed);
    const auto est = pinching_estimate(R, 500, seed);
    const auto berger = berger_check(R, p.epsilon);
    const auto tw = twistor_fatness(R, p.frames, seed, tol);
    Json pj;
    pj["n"] = p.n;
    pj["epsilon"] = p.epsilon;
    pj["sign"] = p.sign;
    pj["epsilon_limit"] = 3.0 / (2.0 * p.n + 1.0);
    pj["symmetry_residual"] = symmetry_residual(R);
    pj["bianchi_residual"] = bianchi_residual(R);
    Json ej;
    ej["k_min_abs"] = est.k_min_abs;
    ej["k_max_abs"] = est.k_max_abs;
    ej["epsilon"] = est.epsilon;
    ej["planes"] = est.planes;
    pj["pinching_estimate"] = ej;
    Json bj;
    bj["pass"] = berger.pass;
    bj["bound"] = berger.bound;
    bj["max_mixed"] = berger.max_mixed;
    pj["berger"] = bj;
    pj["twistor"] = twistor_json(tw);
    pj["tensor"] = tensor_json(R);
    res.certificate["pinch"] = pj;
    verdicts.push_back(tw.fat ? "fat" : "not_fat");

    report << "pinched tensor n = " << p.n << ", eps = " << p.epsilon << ", sign " << (p.sign > 0 ? "+" : "-")
           << "; measured eps " << est.epsilon << ", Berger max mixed " << berger.max_mixed << " (bound "
           << berger.bound << ")\n";
    report << "margin bound 1 - (2n+1)eps/3 = " << tw.bound << "\n";
    report << std::setw(6) << "frame" << std::setw(14) << "min margin" << std::setw(14) << "min sv" << "  pass\n";
    for (const auto& f : tw.frames)
      report << std::setw(6) << f.index << std::setw(14) << f.min_margin << std::setw(14) << f.min_sv << "  "
             << (f.pass ? "yes" : "no") << "\n";

    const bool expect = spec.expect_fat.value_or(true);
    if (tw.fat != expect) fail(std::string("twistor form expected ") + (expect ? "fat" : "not_fat"));
    if (!berger.pass) fail("Berger bound violated");
    if (est.epsilon > p.epsilon + 1e-9) fail("measured pinching exceeds the declared epsilon");
  }

  void run_dual() {
    const auto pair = dualize(*emb, cartan_involution(*g));
    const std::size_t count = spec.samples ? spec.samples : 200;
    auto samples = sample_torus_coordinates(*emb, count, seed);
    if (spec.xu) samples.insert(samples.begin(), *spec.xu);
    const auto rep = compare_fat_sets(pair, samples, tol);
    const auto dual_sig = signature(pair.compact_dual->killing_gram());
    const auto sig = signature(g->killing_gram());
    const auto again = flip_pp(*pair.compact_dual, pair.dim_k, "double dual");
    const bool double_dual = again.constants() == pair.adapted->constants();
    Json dj;
    dj["dim_k"] = pair.dim_k;
    dj["dim_p"] = pair.p_basis.size();
    dj["killing_signature"] = {{"positive", sig.positive}, {"negative", sig.negative}};
    dj["dual_killing_signature"] = {{"positive", dual_sig.positive}, {"negative", dual_sig.negative}};
    dj["double_dual_exact"] = double_dual;
    dj["agreement"] = agreement_json(rep);
    res.certificate["dual"] = dj;
    verdicts.push_back("agree " + std::to_string(rep.agreements) + "/" + std::to_string(rep.samples));
    report << "dual pair: k dim " << pair.dim_k << ", p dim " << pair.p_basis.size() << "; Killing signature ("
           << sig.positive << "+, " << sig.negative << "-), dual (" << dual_sig.positive << "+, "
           << dual_sig.negative << "-)\n";
    report << "fat-set agreement " << rep.agreements << "/" << rep.samples << "\n";
    if (rep.agreements != rep.samples) fail("dual fat sets disagree at " + vector_string(*rep.counterexample));
    if (dual_sig.negative != g->dim()) fail("compact dual Killing form is not negative definite");
    if (!double_dual) fail("double dual does not return the original constants");
  }

  void run_shift() {
    const auto& p = *spec.shift;
    ShiftOptions opts;
    opts.bound = p.bound;
    const auto shift = find_fat_shift(p.vertices, *sub, opts);
    Json sj;
    Json verts = Json::array();
    for (const auto& v : p.vertices) verts.push_back(vector_json(v));
    sj["vertices"] = verts;
    sj["bound"] = p.bound ? rational_json(*p.bound) : Json(nullptr);
    sj["forbidden_count"] = sub->forbidden.size();
    sj["shift"] = shift ? vector_json(*shift) : Json(nullptr);
    report << "shift search over " << p.vertices.size() << " vertices, " << sub->forbidden.size()
           << " forbidden roots: ";
    if (shift) {
      const bool valid = shift_is_valid(p.vertices, sub->forbidden, *shift);
      sj["verified"] = valid;
      report << "a = " << vector_string(*shift) << (valid ? " (verified)" : " (verification FAILED)") << "\n";
      if (!valid) fail("shift fails exact verification");
      const ExactCertifier certifier(*emb, sub, tol);
      Json shifted = Json::array();
      for (const auto& v : p.vertices) {
        const auto x = add(v, *shift);
        const auto cert = certify_one(certifier, x);
        shifted.push_back({{"point", vector_json(x)}, {"fat", cert && cert->fat()}});
        if (cert && !cert->fat()) fail("shifted vertex " + vector_string(x) + " is not fat");
      }
      sj["shifted"] = shifted;
      verdicts.push_back("shift");
    } else {
      report << "no shift\n";
      verdicts.push_back("no_shift");
    }
    if (shift.has_value() != p.expect_feasible)
      fail(std::string("shift search expected ") + (p.expect_feasible ? "a shift" : "no shift"));
    res.certificate["shift"] = sj;
  }
};

}  // namespace

bool InstanceSpec::runs(const std::string& kind) const {
  return std::find(run.begin(), run.end(), kind) != run.end();
}

std::vector<InstanceSpec> parse_catalog(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError("line 1: a catalog is a JSON array of instances");
  const auto lines = element_lines(text);
  std::vector<InstanceSpec> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 1;
    auto spec = parse_instance(j[i], line);
    if (!ids.insert(spec.id).second) fail_at(line, "duplicate id \"" + spec.id + "\"");
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<std::string> builtin_names() { return {"paper_examples"}; }

std::string builtin_catalog_text(const std::string& name) {
  if (name != "paper_examples") throw std::out_of_range("unknown builtin catalog '" + name + "'");
  return R"json([
  {"id": "so5_so4_J", "g": {"family": "so", "params": [5]}, "h": {"kind": "so_block", "k": 4},
   "xu": [1, 1], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat", "seed": 11},
  {"id": "so5_so4_wall", "g": {"family": "so", "params": [5]}, "h": {"kind": "so_block", "k": 4},
   "xu": [1, 0], "run": ["roots", "oracle", "centralizer", "coupling"], "expect": "not_fat", "seed": 12},
  {"id": "so41_so4_J", "g": {"family": "so_pq", "params": [4, 1]}, "h": {"kind": "so_block", "k": 4},
   "xu": [1, 1], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat", "seed": 13},
  {"id": "so7_so6_J", "g": {"family": "so", "params": [7]}, "h": {"kind": "so_block", "k": 6},
   "xu": [1, 1, 1], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat", "seed": 14},
  {"id": "so61_so6_J", "g": {"family": "so_pq", "params": [6, 1]}, "h": {"kind": "so_block", "k": 6},
   "xu": [1, 1, 1], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat", "seed": 15},
  {"id": "so5_u2_J", "g": {"family": "so", "params": [5]}, "h": {"kind": "u_in_so_block", "n": 2},
   "xu": [1, 1], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat",
   "scales": ["1/10", 1, 10], "seed": 16},
  {"id": "so4_so3", "g": {"family": "so", "params": [4]}, "h": {"kind": "so_block", "k": 3},
   "xu": [1], "run": ["oracle", "centralizer", "coupling"], "samples": 100, "expect": "not_fat", "seed": 17},
  {"id": "su3_levi", "g": {"family": "su", "params": [3]}, "h": {"kind": "centralizer", "coords": [1, 1, -2]},
   "xu": [1, 1, -2], "run": ["roots", "oracle", "centralizer", "coupling"], "samples": 200, "expect": "fat", "seed": 18},
  {"id": "b2_shift_square", "g": {"family": "so", "params": [5]}, "h": {"kind": "centralizer", "coords": [2, 1]},
   "run": ["shift"], "shift": {"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]], "expect": "feasible"}, "seed": 19},
  {"id": "b2_shift_boxed", "g": {"family": "so", "params": [5]}, "h": {"kind": "centralizer", "coords": [2, 1]},
   "run": ["shift"], "shift": {"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]], "bound": "1/4", "expect": "infeasible"},
   "seed": 20},
  {"id": "pinch_n2_pos", "run": ["pinch"], "pinch": {"n": 2, "epsilon": 0.54, "sign": 1, "frames": 100}, "seed": 1},
  {"id": "pinch_n3_neg", "run": ["pinch"], "pinch": {"n": 3, "epsilon": 0.42, "sign": -1, "frames": 100}, "seed": 2},
  {"id": "dual_so41_so5", "g": {"family": "so_pq", "params": [4, 1]}, "h": {"kind": "so_block", "k": 4},
   "xu": [1, 1], "run": ["dual"], "samples": 200, "seed": 21},
  {"id": "dual_so61_so7", "g": {"family": "so_pq", "params": [6, 1]}, "h": {"kind": "so_block", "k": 6},
   "xu": [1, 1, 1], "run": ["dual"], "samples": 200, "seed": 22}
]
)json";
}

std::vector<InstanceSpec> builtin_catalog(const std::string& name) { return parse_catalog(builtin_catalog_text(name)); }

ExactEmbedding instance_embedding(const InstanceSpec& spec) {
  if (spec.g.is_null() || spec.h.is_null()) throw ParseError(spec.id + ": no algebra");
  return build_embedding(std::make_shared<const ExactAlgebra>(algebra_from_json(spec.g)), spec.h);
}

std::uint64_t instance_seed(const InstanceSpec& spec, const RunOptions& options) {
  if (spec.seed) return *spec.seed;
  return options.seed ^ fnv1a(spec.id);
}

InstanceResult run_instance(const InstanceSpec& spec, const RunOptions& options) {
  Runner r{spec, spec.tol.value_or(options.tol), instance_seed(spec, options), {}, {}, {}, {}, {}, {}};
  r.res.id = spec.id;
  r.res.kinds = join(spec.run, ",");
  r.res.certificate["instance"] = spec.id;
  r.res.certificate["seed"] = r.seed;
  r.res.certificate["tol"] = r.tol;
  r.res.certificate["run"] = spec.run;
  r.report << "instance " << spec.id << " (seed " << r.seed << ")\n";
  try {
    const bool fatness = spec.runs("roots") || spec.runs("oracle") || spec.runs("centralizer") ||
                         spec.runs("coupling");
    if (!r.g && !spec.g.is_null()) r.setup_algebra();
    if (fatness) r.run_fatness();
    if (spec.runs("coupling")) r.run_coupling();
    if (spec.runs("pinch")) r.run_pinch();
    if (spec.runs("dual")) r.run_dual();
    if (spec.runs("shift")) r.run_shift();
  } catch (const std::exception& e) {
    r.fail(std::string("error: ") + e.what());
  }
  r.res.pass = r.res.failures.empty();
  r.res.verdict = r.verdicts.empty() ? "-" : join(r.verdicts, "; ");
  r.res.certificate["pass"] = r.res.pass;
  r.res.certificate["failures"] = r.res.failures;
  for (const auto& f : r.res.failures) r.report << "FAILURE: " << f << "\n";
  r.report << "status: " << (r.res.pass ? "pass" : "fail") << "\n";
  r.res.report = r.report.str();
  return std::move(r.res);
}

std::vector<InstanceResult> run_catalog(const std::vector<InstanceSpec>& specs, const RunOptions& options) {
  std::vector<InstanceResult> out(specs.size());
  const long n = static_cast<long>(specs.size());
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) out[i] = run_instance(specs[i], options);
  return out;
}

std::vector<InstanceResult> run_catalog_serial(const std::vector<InstanceSpec>& specs, const RunOptions& options) {
  std::vector<InstanceResult> out;
  for (const auto& s : specs) out.push_back(run_instance(s, options));
  return out;
}

std::string summary_table(const std::vector<InstanceResult>& results) {
  std::size_t w_id = 8, w_kind = 4, w_verdict = 7;
  for (const auto& r : results) {
    w_id = std::max(w_id, r.id.size());
    w_kind = std::max(w_kind, r.kinds.size());
    w_verdict = std::max(w_verdict, r.verdict.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(w_id + 2) << "instance" << std::setw(w_kind + 2) << "runs" << std::setw(w_verdict + 2)
     << "verdict" << "status\n";
  for (const auto& r : results)
    os << std::left << std::setw(w_id + 2) << r.id << std::setw(w_kind + 2) << r.kinds << std::setw(w_verdict + 2)
       << r.verdict << (r.pass ? "pass" : "FAIL") << "\n";
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  os << passed << "/" << results.size() << " instances passed\n";
  return os.str();
}

}  // namespace fatcert
