#include "textevo/rng.hpp"

#include <cmath>
#include <numbers>

#include "textevo/error.hpp"

namespace textevo {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view operation, std::string_view key) {
    std::uint64_t h = mix64(root);
    h = mix64(h ^ fnv1a64(operation));
    // The separator keeps ("ab", "c") and ("a", "bc") apart.
    h = mix64(h ^ fnv1a64(key, fnv1a64("\x1f")));
    return h;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return mix64(mix64(root) ^ mix64(index + 0x632be59bd9b4e019ull));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw Error(Errc::invalid_argument, "uniform_below: empty range");
    // Rejection sampling over the largest multiple of n.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace textevo
