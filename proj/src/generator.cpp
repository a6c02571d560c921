#include "srcs/generator.hpp"

#include <random>
#include <stdexcept>

namespace srcs {

namespace {

long long draw(std::mt19937_64 &rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

Rational draw_p(std::mt19937_64 &rng, long long num_hi, long long den_hi) {
  long long d = draw(rng, 1, den_hi);
  return Rational(draw(rng, 1, num_hi), d);
}

}  // namespace

Instance generate_instance(const GeneratorParams &params, std::uint64_t seed) {
  if (params.n_min < 0 || params.n_max < params.n_min || params.m < 1 ||
      params.R < 1)
    throw std::invalid_argument("bad generator params");
  std::mt19937_64 rng(seed);
  Instance ins;
  ins.m = params.m;
  ins.R = params.R;
  long long R = params.R.convert_to<long long>();
  int n = static_cast<int>(draw(rng, params.n_min, params.n_max));

  if (params.family == "uniform") {
    for (int i = 0; i < n; ++i)
      ins.jobs.push_back({i, draw_p(rng, 12, 3), Int(draw(rng, 0, R))});
  } else if (params.family == "many-small") {
    for (int i = 0; i < n; ++i)
      ins.jobs.push_back(
          {i, draw_p(rng, 3, 8), Int(draw(rng, 0, std::max(1LL, R / 4)))});
  } else if (params.family == "wide-heavy") {
    for (int i = 0; i < n; ++i)
      ins.jobs.push_back({i, draw_p(rng, 12, 3), Int(draw(rng, (R + 1) / 2, R))});
  } else if (params.family == "huge-heavy") {
    Rational rest = 0;
    for (int i = 1; i < n; ++i) {
      Job j{i, draw_p(rng, 8, 3), Int(draw(rng, 0, R))};
      rest += j.p;
      ins.jobs.push_back(j);
    }
    // p(J) <= 2 p_0 and area/R <= p(J), so p_0 > lower_bound_T / 2
    ins.jobs.insert(ins.jobs.begin(), Job{0, Rational(rest + 1), Int(draw(rng, 0, R))});
  } else {
    throw std::invalid_argument("unknown family: " + params.family);
  }
  return ins;
}

std::vector<Instance> generate_corpus(const GeneratorParams &params,
                                      std::uint64_t seed, int count) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i)
    out.push_back(generate_instance(params, seed + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace srcs
