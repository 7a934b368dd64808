#pragma once

#include <cstdint>
#include <random>

#include "fspectra/types.hpp"

namespace fspectra {

/// Seeded generator for sample `index` of a stream. Results of sampled checks
/// depend only on (seed, index), never on how samples are scheduled.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

Vec gaussian_vector(std::mt19937_64& rng, Eigen::Index n);
Vec unit_vector(std::mt19937_64& rng, Eigen::Index n);

}  // namespace fspectra
