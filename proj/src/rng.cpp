#include "optifab/rng.hpp"

namespace optifab {

namespace {

std::vector<uint32_t> first_primes(size_t count) {
  std::vector<uint32_t> primes;
  primes.reserve(count);
  uint32_t candidate = 2;
  while (primes.size() < count) {
    bool is_prime = true;
    for (uint32_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes;
}

double radical_inverse(uint64_t index, uint32_t base) {
  double result = 0.0;
  double inv_base = 1.0 / base;
  double factor = inv_base;
  while (index > 0) {
    result += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return result;
}

}  // namespace

HaltonSequence::HaltonSequence(size_t dimension, uint64_t seed)
    : bases_(first_primes(dimension)), shifts_(dimension) {
  Rng rng = Rng::substream(seed, "halton-shift");
  for (size_t d = 0; d < dimension; ++d) shifts_[d] = rng.uniform01();
}

std::vector<double> HaltonSequence::point(uint64_t index) const {
  std::vector<double> x(bases_.size());
  for (size_t d = 0; d < bases_.size(); ++d) {
    // Skip the first point of every base (index 0 maps to the origin).
    double v = radical_inverse(index + 1, bases_[d]) + shifts_[d];
    x[d] = v - std::floor(v);
  }
  return x;
}

}  // namespace optifab
