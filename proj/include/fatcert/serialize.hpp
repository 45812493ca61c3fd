#pragma once

// JSON forms of algebras, embeddings, root data, certificates and curvature
// tensors. Exact values are written as "p/q" strings. Key order is fixed so
// equal inputs give byte-identical output.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fatcert/coupling.hpp"
#include "fatcert/curvature.hpp"
#include "fatcert/duality.hpp"
#include "fatcert/fatness.hpp"
#include "fatcert/liealg.hpp"
#include "fatcert/rootdata.hpp"

namespace fatcert {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& x);
Json vector_json(const RatVector& v);
Json vector_json(const Vector<double>& v);
Json matrix_json(const RatMatrix& m);
Json matrix_json(const Matrix<double>& m);
Json matrix_json(const Eigen::MatrixXd& m);

/// Accepts "p/q" strings and integers. Throws ParseError.
Rational rational_from_json(const Json& j);
RatVector rational_vector_from_json(const Json& j);
RatMatrix rational_matrix_from_json(const Json& j);

Json algebra_json(const ExactAlgebra& g);
/// {"family", "params"} for built-ins, or {"family": "custom", "basis": [...]}.
ExactAlgebra algebra_from_json(const Json& j);

Json embedding_json(const ExactEmbedding& emb);
/// h from "h_indices" or "h_coeffs" over an algebra.
ExactEmbedding embedding_from_json(std::shared_ptr<const ExactAlgebra> g, const Json& j);

Json root_json(const Root& r);
Json root_system_json(const RootSystem& rs);
Json subsystem_json(const SubSystem& sub);
Json root_verdict_json(const RootVerdict& v);

Json certificate_json(const FatnessCertificate& cert);

Json tensor_json(const CurvatureTensor& R);
CurvatureTensor tensor_from_json(const Json& j);

Json twistor_json(const TwistorReport& rep);
Json block_report_json(const BlockReport& rep);
Json top_power_json(const TopPowerReport& rep);
Json agreement_json(const AgreementReport& rep);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace fatcert
