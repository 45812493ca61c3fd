#pragma once

// Instance catalogs: parsing, the built-in worked examples, and the batch
// runner behind the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatcert/serialize.hpp"

namespace fatcert {

struct PinchSpec {
  int n = 2;
  double epsilon = 0.0;
  int sign = 1;
  std::size_t frames = 100;
};

struct ShiftSpec {
  std::vector<RatVector> vertices;  // root coordinates
  std::optional<Rational> bound;
  bool expect_feasible = true;
};

struct InstanceSpec {
  std::string id;
  std::size_t line = 0;  // line of the instance in its source text
  Json g;                // algebra description; null for pinch-only instances
  Json h;                // subalgebra description
  std::optional<RatVector> xu;  // root coordinates of X_u on the torus of h
  std::vector<std::string> run;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::size_t samples = 0;
  std::optional<bool> expect_fat;
  std::vector<Rational> scales;  // coupling scales r
  std::optional<PinchSpec> pinch;
  std::optional<ShiftSpec> shift;

  bool runs(const std::string& kind) const;
};

/// Throws ParseError with a line number.
std::vector<InstanceSpec> parse_catalog(const std::string& text);

std::vector<std::string> builtin_names();
/// Throws std::out_of_range for unknown names.
std::string builtin_catalog_text(const std::string& name);
std::vector<InstanceSpec> builtin_catalog(const std::string& name);

struct RunOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0: OpenMP default
};

struct InstanceResult {
  std::string id;
  bool pass = false;
  std::string kinds;
  std::string verdict;
  std::vector<std::string> failures;
  Json certificate;
  std::string report;  // human-readable
};

/// The embedding described by an instance's "g" and "h". Throws ParseError.
ExactEmbedding instance_embedding(const InstanceSpec& spec);

/// Seed used for an instance: its own seed, else one derived from the run
/// seed and the id.
std::uint64_t instance_seed(const InstanceSpec& spec, const RunOptions& options);

/// Never throws for per-instance failures; they are recorded in the result.
InstanceResult run_instance(const InstanceSpec& spec, const RunOptions& options);

/// Instances run in parallel; results come back in catalog order.
std::vector<InstanceResult> run_catalog(const std::vector<InstanceSpec>& specs, const RunOptions& options);
/// Serial reference for run_catalog.
std::vector<InstanceResult> run_catalog_serial(const std::vector<InstanceSpec>& specs, const RunOptions& options);

/// Fixed-width summary table.
std::string summary_table(const std::vector<InstanceResult>& results);

}  // namespace fatcert
