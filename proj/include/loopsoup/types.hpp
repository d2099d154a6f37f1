#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace loopsoup {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

// All stochastic code draws from one explicitly seeded stream so that a
// (config, seed, single chain) run replays byte-identically.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace loopsoup
