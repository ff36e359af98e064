#ifndef RIGIDITY_RNG_HPP
#define RIGIDITY_RNG_HPP

#include <cstdint>

namespace rigidity {

// SplitMix64. Hand-rolled so that seeded runs are byte-identical across
// platforms and standard libraries (std::uniform_int_distribution is
// implementation-defined).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is irrelevant for the tiny n used here.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance_pct(int pct) { return static_cast<int>(below(100)) < pct; }

    // Independent substream for (seed, stream) pairs; used to make parallel
    // sweeps independent of scheduling.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0x8c89a9c973bc3fb5ull * (stream + 1)));
        g.next();
        return g.next();
    }

  private:
    std::uint64_t state_;
};

}  // namespace rigidity

#endif
