#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gst/model.hpp"
#include "gst/rng.hpp"

namespace gst::sim {

struct SimConfig {
    model::GameSpec spec;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk = 65536;  // rounds per deterministic sub-stream
    int threads = 1;              // chunk-level parallelism; result is identical
};

/// Raw integer counters plus the round count; every derived frequency is a
/// quotient of these, so merging chunks is plain addition and the report is
/// identical no matter how the chunks were scheduled.
struct SimReport {
    int n = 0;
    std::uint64_t rounds = 0, seed = 0, chunk = 0;

    std::vector<std::uint64_t> effect_count;                    // [i]
    std::vector<std::array<std::uint64_t, 2>> cause_count;      // [k][x]
    std::vector<std::array<std::uint64_t, 2>> effect_and_cause; // [i*n+k][x]
    std::vector<std::array<std::uint64_t, 2>> pair_and_cause;   // [pair(i,j)*n+k][x]

    static std::size_t pair_index(int i, int j, int n);  // i < j, 1-based

    double effect_freq(int i) const;
    double cond_freq(int i, int k, int x) const;           // P^(E_i | C_k = x)
    double joint_freq(int i, int j, int k, int x) const;   // P^(E_i ∧ E_j | C_k = x)
    double se(double freq, std::uint64_t m) const;         // sqrt(f(1-f)/m)

    void merge(const SimReport& other);
};

/// Seeded Monte Carlo run of the game. Each round draws the causes as
/// independent Bernoulli(r) and then each effect from its conditional
/// probability, consuming exactly 2n generator values in a fixed order.
/// Round j belongs to chunk j / chunk, and chunk c uses the generator seeded
/// with substream_seed(seed, c), so reports are bit-identical across thread
/// counts and re-runs.
///
/// Bernoulli convention: success iff next_u53() * 2^-53 < p. For exact
/// rational p the comparison is carried out in integers, with no rounding.
SimReport simulate(const SimConfig& config);

struct ZResult {
    double z = 0;
    bool degenerate = false;  // a cell frequency of 0 or 1 makes the SE vanish
};

/// (joint - product of conditionals) / propagated standard error for the
/// screening cell (i, j | C_k = x).
ZResult independence_test(const SimReport& report, int i, int j, int k, int x);

}  // namespace gst::sim
