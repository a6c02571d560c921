#include "srcs/baseline.hpp"
#include "srcs/generator.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace srcs;

namespace {

double time_of(const std::function<OracleResult()> &fn, Rational *mk) {
  auto t0 = std::chrono::steady_clock::now();
  OracleResult res = fn();
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  *mk = res.makespan;
  return secs;
}

}  // namespace

int main() {
  std::printf("%-12s %4s %10s %10s %8s\n", "instance", "n", "serial_s",
              "parallel_s", "speedup");
  GeneratorParams params;
  params.m = 3;
  params.R = 10;
  for (int n = 6; n <= 8; ++n) {
    params.n_min = params.n_max = n;
    auto corpus = generate_corpus(params, 42, 3);
    for (size_t i = 0; i < corpus.size(); ++i) {
      const Instance &ins = corpus[i];
      Rational mk_s, mk_p;
      double ts = time_of([&] { return oracle_optimal_serial(ins, 8); }, &mk_s);
      double tp = time_of([&] { return oracle_optimal(ins, 8); }, &mk_p);
      if (mk_s != mk_p) {
        std::printf("MISMATCH on n=%d seed-index %zu\n", n, i);
        return 1;
      }
      char name[32];
      std::snprintf(name, sizeof(name), "uniform-%d-%zu", n, i);
      std::printf("%-12s %4zu %10.4f %10.4f %8.2f\n", name, ins.jobs.size(),
                  ts, tp, tp > 0 ? ts / tp : 0.0);
    }
  }
  return 0;
}
