#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace textevo {

// mt19937_64's output sequence is fixed by the standard; the distributions in
// <random> are not, so the helpers below map raw draws by hand.
using Rng = std::mt19937_64;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 14695981039346656037ull);
std::uint64_t mix64(std::uint64_t x);

/// Child seed for a named operation on a named item (usually an author id).
/// Depends only on its arguments, never on scheduling order.
std::uint64_t derive_seed(std::uint64_t root, std::string_view operation, std::string_view key = {});

/// Child seed for the i-th replicate of a stochastic loop.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Uniform integer in [0, n). n must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

double standard_normal(Rng& rng);

}  // namespace textevo
