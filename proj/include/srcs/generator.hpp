#ifndef SRCS_GENERATOR_HPP
#define SRCS_GENERATOR_HPP

#include "srcs/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace srcs {

/// Instance families: "uniform", "huge-heavy" (one job dominates half the
/// load lower bound), "wide-heavy" (most jobs demand more than half the
/// resource), "many-small" (short narrow jobs).
struct GeneratorParams {
  std::string family = "uniform";
  int n_min = 1;
  int n_max = 10;
  Int m = 3;
  Int R = 10;
};

/// Deterministic under (params, seed).
Instance generate_instance(const GeneratorParams &params, std::uint64_t seed);

/// count instances, seeded seed, seed+1, ...
std::vector<Instance> generate_corpus(const GeneratorParams &params,
                                      std::uint64_t seed, int count);

}  // namespace srcs

#endif
