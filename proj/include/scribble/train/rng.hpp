#pragma once

#include <cstdint>
#include <random>

namespace scribble {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for the `index`-th sample of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Reproducible generator: MT19937-64 (whose output sequence is fixed by the
/// C++ standard) with hand-written distributions, so a seed yields the same
/// draws on every platform and standard library.
///
/// - uniform(): top 53 bits scaled to [0, 1)
/// - uniform_int(lo, hi): unbiased rejection on the raw 64-bit output
/// - split(k): a new generator seeded with derive_seed(seed, k)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Inclusive on both ends; requires lo <= hi.
    int uniform_int(int lo, int hi);
    bool bernoulli(double p) { return uniform() < p; }
    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace scribble
