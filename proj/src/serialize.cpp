#include "fatcert/serialize.hpp"

#include <fstream>
#include <unistd.h>

namespace fatcert {

Json rational_json(const Rational& x) { return x.get_str(); }

Json vector_json(const RatVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rational_json(x));
  return j;
}

Json vector_json(const Vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

Json matrix_json(const RatMatrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(vector_json(m.row(r)));
  return j;
}

Json matrix_json(const Matrix<double>& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(vector_json(m.row(r)));
  return j;
}

Json matrix_json(const Eigen::MatrixXd& m) { return matrix_json(from_eigen(m)); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

RatVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

RatMatrix rational_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(rational_vector_from_json(r));
  return RatMatrix::from_rows(rows, rows.front().size());
}

Json algebra_json(const ExactAlgebra& g) {
  Json j;
  j["name"] = g.name();
  j["family"] = g.source().family;
  j["params"] = g.source().params;
  j["dim"] = g.dim();
  if (g.source().family == "custom") {
    Json basis = Json::array();
    for (const auto& m : g.basis()) basis.push_back(matrix_json(m));
    j["basis"] = basis;
  }
  return j;
}

ExactAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family")) throw ParseError("algebra needs a \"family\"");
  const auto family = j.at("family").get<std::string>();
  if (family == "custom") {
    if (!j.contains("basis")) throw ParseError("custom algebra needs a \"basis\"");
    std::vector<RatMatrix> basis;
    for (const auto& m : j.at("basis")) basis.push_back(rational_matrix_from_json(m));
    return ExactAlgebra::from_matrices(j.value("name", std::string("custom")), std::move(basis));
  }
  return build_algebra(family, j.value("params", std::vector<int>{}));
}

Json embedding_json(const ExactEmbedding& emb) {
  Json j;
  j["label"] = emb.label();
  j["dim_h"] = emb.dim_h();
  j["dim_m"] = emb.dim_m();
  j["compact"] = emb.compact();
  Json h = Json::array();
  for (const auto& x : emb.h_basis()) h.push_back(vector_json(x));
  j["h_coeffs"] = h;
  Json t = Json::array();
  for (const auto& x : emb.torus_basis()) t.push_back(vector_json(x));
  j["torus"] = t;
  j["torus_root_coords"] = matrix_json(emb.torus_root_coords());
  return j;
}

ExactEmbedding embedding_from_json(std::shared_ptr<const ExactAlgebra> g, const Json& j) {
  std::vector<RatVector> h;
  if (j.contains("h_indices")) {
    for (const auto& i : j.at("h_indices")) {
      const auto k = i.get<std::size_t>();
      if (k >= g->dim()) throw ParseError("h index " + std::to_string(k) + " out of range");
      h.push_back(g->unit(k));
    }
  } else if (j.contains("h_coeffs")) {
    for (const auto& x : j.at("h_coeffs")) h.push_back(rational_vector_from_json(x));
  } else {
    throw ParseError("embedding needs \"h_indices\" or \"h_coeffs\"");
  }
  auto emb = reductive_split(g, std::move(h));
  if (emb.compact()) {
    // a torus without root coordinates still supports the oracle and centralizer tests
    auto t = maximal_torus(emb);
    RatMatrix coords = RatMatrix::identity(t.size());
    emb = emb.with_torus(std::move(t), std::move(coords));
  }
  return emb;
}

Json root_json(const Root& r) { return Json(r); }

Json root_system_json(const RootSystem& rs) {
  Json j;
  j["type"] = std::string(1, rs.type);
  j["rank"] = rs.rank;
  Json roots = Json::array();
  for (const auto& r : rs.roots) roots.push_back(root_json(r));
  j["roots"] = roots;
  return j;
}

Json subsystem_json(const SubSystem& sub) {
  Json j;
  j["parent"] = sub.parent.label();
  Json members = Json::array(), forbidden = Json::array();
  for (const auto& r : sub.members) members.push_back(root_json(r));
  for (const auto& r : sub.forbidden) forbidden.push_back(root_json(r));
  j["members"] = members;
  j["forbidden"] = forbidden;
  return j;
}

Json root_verdict_json(const RootVerdict& v) {
  Json j;
  j["fat"] = v.fat;
  j["witness_root"] = v.witness ? root_json(*v.witness) : Json(nullptr);
  return j;
}

Json certificate_json(const FatnessCertificate& cert) {
  Json j;
  j["instance"] = cert.instance;
  j["Xu_basis"] = cert.xu_basis;
  j["Xu"] = cert.xu;
  Json verdicts;
  verdicts["roots"] = to_string(cert.roots);
  verdicts["oracle"] = to_string(cert.oracle);
  verdicts["centralizer"] = to_string(cert.centralizer);
  j["verdicts"] = verdicts;
  j["fat"] = cert.fat();
  j["agreed"] = cert.agreed;
  j["min_sv"] = cert.min_sv ? Json(*cert.min_sv) : Json(nullptr);
  j["singular_values"] = cert.singular_values;
  j["witness_root"] = cert.witness_root ? root_json(*cert.witness_root) : Json(nullptr);
  j["odd_dimension"] = cert.odd_dimension;
  j["null_vector"] = cert.null_vector ? Json(*cert.null_vector) : Json(nullptr);
  j["centralizer_dim"] = cert.centralizer_dim;
  j["centralizer_witness"] = cert.centralizer_witness ? Json(*cert.centralizer_witness) : Json(nullptr);
  j["seed"] = cert.seed;
  return j;
}

Json tensor_json(const CurvatureTensor& R) {
  Json j;
  j["n"] = R.n;
  j["epsilon"] = R.epsilon;
  j["sign"] = R.sign;
  j["seed"] = R.seed;
  j["R"] = R.R;
  return j;
}

CurvatureTensor tensor_from_json(const Json& j) {
  try {
    CurvatureTensor R(j.at("n").get<int>());
    auto data = j.at("R").get<std::vector<double>>();
    if (data.size() != R.R.size())
      throw ParseError("tensor has " + std::to_string(data.size()) + " entries, expected " +
                       std::to_string(R.R.size()));
    R.R = std::move(data);
    R.epsilon = j.value("epsilon", 0.0);
    R.sign = j.value("sign", 1);
    R.seed = j.value("seed", std::uint64_t{0});
    return R;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tensor: ") + e.what());
  }
}

Json twistor_json(const TwistorReport& rep) {
  Json j;
  j["fat"] = rep.fat;
  j["bound"] = rep.bound;
  j["min_margin"] = rep.min_margin;
  j["min_sv"] = rep.min_sv;
  Json frames = Json::array();
  for (const auto& f : rep.frames) {
    Json fj;
    fj["index"] = f.index;
    fj["margins"] = f.margins;
    fj["sectional"] = f.sectional;
    fj["min_sv"] = f.min_sv;
    fj["pass"] = f.pass;
    frames.push_back(fj);
  }
  j["frames"] = frames;
  return j;
}

Json block_report_json(const BlockReport& rep) {
  Json j;
  j["cross_max"] = rep.cross_max;
  j["cross_zero"] = rep.cross_zero;
  j["vertical_nondegenerate"] = rep.vertical_nondegenerate;
  j["horizontal_matches_fatness"] = rep.horizontal_matches_fatness;
  j["theta_ratio"] = rep.theta_ratio ? Json(*rep.theta_ratio) : Json(nullptr);
  return j;
}

Json top_power_json(const TopPowerReport& rep) {
  Json j;
  j["min_sv"] = rep.min_sv;
  j["max_sv"] = rep.max_sv;
  j["pfaffian"] = rep.pfaffian;
  j["pfaffian_abs_from_det"] = rep.pfaffian_abs_from_det;
  j["pfaffian_squares_to_det"] = rep.pfaffian_squares_to_det;
  j["nondegenerate"] = rep.nondegenerate;
  return j;
}

Json agreement_json(const AgreementReport& rep) {
  Json j;
  j["samples"] = rep.samples;
  j["agreements"] = rep.agreements;
  j["fraction"] = rep.fraction;
  Json pairs = Json::array();
  for (const auto& [a, b] : rep.verdicts) pairs.push_back({a ? "fat" : "not_fat", b ? "fat" : "not_fat"});
  j["verdicts"] = pairs;
  j["counterexample"] = rep.counterexample ? vector_json(*rep.counterexample) : Json(nullptr);
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fatcert
