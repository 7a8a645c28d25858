#include "radsel/random.hpp"

namespace radsel {

namespace {

// splitmix64 finalizer; xor-shifts and odd multiplications are invertible,
// so the map is a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;  // odd

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index) {
  return Seed{mix64(master.value + kGamma * (index + 1))};
}

SignVector rademacher_vector(Seed seed, Eigen::Index n) {
  SignVector v(n);
  std::mt19937_64 engine(seed.value);
  std::uint64_t word = 0;
  int bits_left = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (bits_left == 0) {
      word = engine();
      bits_left = 64;
    }
    v[i] = (word & 1u) ? 1.0 : -1.0;
    word >>= 1;
    --bits_left;
  }
  return v;
}

bool is_sign_vector(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 1.0 && v[i] != -1.0) return false;
  }
  return true;
}

}  // namespace radsel
