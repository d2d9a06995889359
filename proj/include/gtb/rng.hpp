#ifndef GTB_RNG_HPP
#define GTB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace gtb {

// Splittable counter-style generator built on splitmix64. Streams are keyed
// by (master seed, algorithm index, replication index) so that episodes give
// identical draws no matter how the work is scheduled across threads. All
// draws go through explicit arithmetic (no <random> distributions), which
// keeps replay bit-exact across standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive_key(std::uint64_t master, std::uint64_t algo, std::uint64_t rep) {
        std::uint64_t z = mix(master);
        z = mix(z ^ (0xa0761d6478bd642fULL + algo));
        z = mix(z ^ (0xe7037ed1a0b428dbULL + rep));
        return z;
    }

    static Rng stream(std::uint64_t master, std::uint64_t algo, std::uint64_t rep) {
        return Rng(derive_key(master, algo, rep));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // Standard normal via Box-Muller; the spare draw is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        while (u1 <= 0.0) u1 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gtb

#endif
