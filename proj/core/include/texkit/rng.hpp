#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace texkit {

/// SplitMix64 finalizer. All randomness in the library derives from this
/// mixer so that results are reproducible across platforms and languages;
/// the standard library generators and distributions are deliberately not
/// used because their streams are implementation-defined.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// FNV-1a digest of `text` as 16 lowercase hex digits. Used to fingerprint
/// canonical serializations.
inline std::string fingerprint_hex(std::string_view text) {
    std::uint64_t h = fnv1a64(text);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = "0123456789abcdef"[h & 0xf];
        h >>= 4;
    }
    return out;
}

/// SplitMix64 stream generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t bound = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x = next_u64();
        while (x >= bound) x = next_u64();
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    /// Standard normal deviate, Box-Muller. The spare value is cached, so the
    /// consumed stream length depends only on how many deviates are drawn.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform_real();
        while (u1 <= 0.0) u1 = uniform_real();
        const double u2 = uniform_real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta =
            6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Fisher-Yates shuffle with this stream.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Deterministic seed derivation from one master seed.
///
/// child(tag, index) = mix(mix(master ^ fnv1a64(tag)) ^ index)
///
/// Distinct purpose tags give distinct, statistically independent streams;
/// the derivation is pure, so any subsystem can recompute its seed without
/// shared state. Indexed children (per tree, per epoch, per class) hang off
/// the same tag.
class SeedTree {
public:
    explicit SeedTree(std::uint64_t master) : master_(master) {}

    std::uint64_t master() const { return master_; }

    std::uint64_t child(std::string_view purpose, std::uint64_t index = 0) const {
        return splitmix64_mix(splitmix64_mix(master_ ^ fnv1a64(purpose)) ^ index);
    }

    Rng rng(std::string_view purpose, std::uint64_t index = 0) const {
        return Rng(child(purpose, index));
    }

private:
    std::uint64_t master_;
};

} // namespace texkit
