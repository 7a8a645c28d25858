#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace radsel {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

// Vector of ±1 entries stored as doubles; all downstream use is inner
// products, so there is no bit-packed representation.
using SignVector = Eigen::VectorXd;

// Derives the seed of replicate `index` from a master seed. Injective in the
// index for a fixed master (every step below is a bijection on 64-bit words),
// so parallel replicates never share a stream.
Seed derive_seed(Seed master, std::uint64_t index);

// n independent uniform random signs, deterministic given (seed, n).
SignVector rademacher_vector(Seed seed, Eigen::Index n);

bool is_sign_vector(const Eigen::VectorXd& v);

// Value-like stream for the few places that need more than signs. Uniform
// doubles are built from raw 53-bit mantissas so output depends only on the
// engine, not on library distribution internals.
class RandomStream {
 public:
  explicit RandomStream(Seed seed) : engine_(seed.value) {}

  std::uint64_t word() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace radsel
