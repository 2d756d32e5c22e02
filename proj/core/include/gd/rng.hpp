#pragma once

#include <cstdint>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace gd {

// Deterministic PRNG (xoshiro256++ seeded through splitmix64).  The standard
// <random> distributions are implementation-defined, so uniform/normal are
// generated by hand to keep reports byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) word = splitmix64(x);
    }

    // Sub-stream for sample `index`; harnesses draw one per sample so the
    // report is independent of evaluation order.
    static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal, polar Box-Muller without state
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

// Number of worker threads for sample harnesses; GD_THREADS caps it.
// Defaults to 1 (sequential) -- results are identical either way, the
// reduction below is always in sample order.
inline unsigned harness_threads() {
    if (const char* env = std::getenv("GD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

// Evaluates fn(i) for i in [0,count) into a vector, possibly in parallel;
// results always come back in sample order.
template <typename T>
std::vector<T> map_samples(int count, const std::function<T(int)>& fn) {
    std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
    const unsigned threads = std::min<unsigned>(harness_threads(), count > 0 ? count : 1u);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = fn(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int i = static_cast<int>(t); i < count; i += static_cast<int>(threads))
                    slots[static_cast<std::size_t>(i)] = fn(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(count));
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace gd
