// Serial reference vs OpenMP kernel timings.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "fatcert/catalog.hpp"
#include "fatcert/curvature.hpp"
#include "fatcert/fatness.hpp"
#include "fatcert/rootdata.hpp"

using namespace fatcert;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  {
    const auto g = std::make_shared<const ExactAlgebra>(make_so(7));
    const auto emb = so_block(g, 6);
    const ExactCertifier certifier(emb, detect_subsystem(emb, root_system_for(g->source())), 1e-9);
    const auto points = sample_torus_coordinates(emb, 200, 1);
    std::vector<FatnessCertificate> a, b;
    const double s = seconds([&] { a = certify_batch_serial(certifier, points); }, reps);
    const double p = seconds([&] { b = certify_batch(certifier, points); }, reps);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].fat() == b[i].fat() && a[i].min_sv == b[i].min_sv;
    row("certify_batch so(7)/so(6)", s, p, same);
  }
  {
    const auto R = random_pinched(3, 0.38, 1, 5);
    TwistorReport a, b;
    const double s = seconds([&] { a = twistor_fatness_serial(R, 400, 2); }, reps);
    const double p = seconds([&] { b = twistor_fatness(R, 400, 2); }, reps);
    row("twistor_fatness n=3", s, p, a.min_margin == b.min_margin && a.fat == b.fat);
  }
  {
    const auto b3 = build_root_system('B', 3);
    const auto sub = make_subsystem(b3, {});
    const std::vector<RatVector> cube = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::optional<RatVector> a, b;
    const double s = seconds([&] { a = find_fat_shift_serial(cube, sub); }, reps);
    const double p = seconds([&] { b = find_fat_shift(cube, sub); }, reps);
    row("find_fat_shift B3", s, p, a == b);
  }
  {
    const auto specs = builtin_catalog("paper_examples");
    std::vector<InstanceResult> a, b;
    const double s = seconds([&] { a = run_catalog_serial(specs, {}); }, 1);
    const double p = seconds([&] { b = run_catalog(specs, {}); }, 1);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].certificate.dump() == b[i].certificate.dump();
    row("run_catalog builtin", s, p, same);
  }
  return 0;
}
