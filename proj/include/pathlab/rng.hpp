#ifndef PATHLAB_RNG_HPP
#define PATHLAB_RNG_HPP

#include <cstdint>

namespace pathlab {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom step
// function). Chosen over std::mt19937_64 because its output sequence is
// fixed by the algorithm itself, so seeded runs reproduce bit-for-bit on
// any platform and standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound) without modulo bias (rejection sampling).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Decorrelated child stream; `tag` distinguishes consumers of one seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        SplitMix64 mix(seed ^ (tag * 0xd6e8feb86659fd93ULL));
        mix.next();
        return mix.next();
    }

private:
    std::uint64_t state_;
};

} // namespace pathlab

#endif
