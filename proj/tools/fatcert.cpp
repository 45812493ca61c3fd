#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fatcert/catalog.hpp"

namespace fs = std::filesystem;
using namespace fatcert;

namespace {

std::vector<InstanceSpec> load_catalog(const std::string& source) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return builtin_catalog(source);
  std::ifstream in(source);
  if (!in) throw ParseError("cannot read catalog '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_catalog(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify fat vectors of homogeneous bundles"};
  app.require_subcommand(1);

  RunOptions options;
  std::string catalog;
  std::string out_dir = "certificates";
  auto* run = app.add_subcommand("run", "Run a catalog file or a builtin catalog");
  run->add_option("catalog", catalog, "Catalog path or builtin name")->required();
  run->add_option("--out", out_dir, "Directory for certificate files");
  run->add_option("--tol", options.tol, "Relative singular-value tolerance")->check(CLI::PositiveNumber);
  run->add_option("--seed", options.seed, "Seed for instances without their own");
  run->add_option("--jobs", options.jobs, "Parallel instances (0 = all cores)")->check(CLI::NonNegativeNumber);

  std::string id;
  std::string explain_catalog = "paper_examples";
  auto* explain = app.add_subcommand("explain", "Recompute one instance and print a report");
  explain->add_option("id", id, "Instance id")->required();
  explain->add_option("--catalog", explain_catalog, "Catalog path or builtin name");
  explain->add_option("--tol", options.tol)->check(CLI::PositiveNumber);
  explain->add_option("--seed", options.seed);

  auto* list = app.add_subcommand("list-builtins", "List builtin catalogs and their instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& name : builtin_names()) {
        std::cout << name << "\n";
        for (const auto& s : builtin_catalog(name)) std::cout << "  " << s.id << "  [" << fatcert::Json(s.run).dump() << "]\n";
      }
      return 0;
    }
    if (*run) {
      const auto specs = load_catalog(catalog);
      fs::create_directories(out_dir);
      const auto results = run_catalog(specs, options);
      bool ok = true;
      for (const auto& r : results) {
        write_atomic(fs::path(out_dir) / (r.id + ".json"), r.certificate.dump(2) + "\n");
        ok = ok && r.pass;
        for (const auto& f : r.failures) std::cerr << r.id << ": " << f << "\n";
      }
      std::cout << summary_table(results);
      return ok ? 0 : 1;
    }
    if (*explain) {
      const auto specs = load_catalog(explain_catalog);
      for (const auto& s : specs)
        if (s.id == id) {
          const auto r = run_instance(s, options);
          std::cout << r.report;
          return r.pass ? 0 : 1;
        }
      std::cerr << "unknown instance id '" << id << "'\n";
      return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
