// Timing harness: the naive serial enumerator from reference.hpp against the
// pruned OpenMP kernel, plus kernel scaling over worker counts.  Counts are
// cross-checked on the shared range before any number is printed, so a wrong
// kernel cannot post a good time.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sawlab/lattice.hpp"
#include "sawlab/reference.hpp"
#include "sawlab/walks.hpp"

namespace {

double time_of(const std::function<void()>& body, int repeat) {
  double best = 0;
  for (int r = 0; r < repeat; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
    if (r == 0 || s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::string lattice = "z2";
  int n = 14, ref_n = 9, repeat = 3;
  std::vector<int> threads;

  CLI::App app{"serial reference vs parallel kernel timings"};
  app.add_option("--lattice", lattice);
  app.add_option("--n", n, "kernel depth")->check(CLI::Range(1, 64));
  app.add_option("--ref-n", ref_n, "reference depth (it is exponential-naive)")
      ->check(CLI::Range(1, 16));
  app.add_option("--repeat", repeat, "repetitions, best time kept")
      ->check(CLI::Range(1, 16));
  app.add_option("--threads", threads, "worker counts for the kernel");
  CLI11_PARSE(app, argc, argv);

  auto spec = sawlab::parse_lattice(lattice);
  if (threads.empty()) {
    threads = {1, 2};
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 2) threads.push_back(static_cast<int>(hw));
  }
  if (ref_n > n) ref_n = n;

  auto ref_counts = sawlab::ref::count_walks(spec, ref_n);
  {
    sawlab::EnumConfig cfg;
    cfg.threads = 1;
    auto kernel = sawlab::count_walks(spec, ref_n, sawlab::Rat(1), false, cfg);
    for (int k = 0; k <= ref_n; ++k)
      if (kernel.c[k] != ref_counts[k])
        throw std::logic_error("kernel disagrees with the serial reference");
  }
  std::printf("counts agree with the serial reference through n=%d\n\n", ref_n);

  double ref_s = time_of([&] { sawlab::ref::count_walks(spec, ref_n); }, repeat);
  std::printf("%-24s %4s %8s %12s\n", "implementation", "n", "threads", "seconds");
  std::printf("%-24s %4d %8s %12.4f\n", "reference (naive)", ref_n, "1", ref_s);

  double serial_kernel = 0;
  {
    sawlab::EnumConfig cfg;
    cfg.threads = 1;
    serial_kernel = time_of(
        [&] { sawlab::count_walks(spec, ref_n, sawlab::Rat(1), false, cfg); },
        repeat);
    std::printf("%-24s %4d %8d %12.4f\n", "kernel", ref_n, 1, serial_kernel);
  }
  if (serial_kernel > 0)
    std::printf("kernel/reference speedup at n=%d: %.1fx\n\n", ref_n,
                ref_s / serial_kernel);

  double base = 0;
  for (int t : threads) {
    sawlab::EnumConfig cfg;
    cfg.threads = t;
    double s = time_of(
        [&] { sawlab::count_walks(spec, n, sawlab::Rat(1), false, cfg); },
        repeat);
    if (t == threads.front()) base = s;
    std::printf("%-24s %4d %8d %12.4f", "kernel", n, t, s);
    if (t != threads.front() && s > 0)
      std::printf("   (%.2fx vs %d worker%s)", base / s, threads.front(),
                  threads.front() == 1 ? "" : "s");
    std::printf("\n");
  }
  return 0;
}
