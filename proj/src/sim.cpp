#include "gst/sim.hpp"

#include <cmath>
#include <future>

namespace gst::sim {

std::size_t SimReport::pair_index(int i, int j, int n) {
    // row-major upper triangle, i < j, 1-based players
    const std::size_t a = i - 1, b = j - 1;
    return a * n - a * (a + 1) / 2 + (b - a - 1);
}

double SimReport::effect_freq(int i) const {
    return double(effect_count[i - 1]) / double(rounds);
}

double SimReport::cond_freq(int i, int k, int x) const {
    const auto m = cause_count[k - 1][x];
    return m == 0 ? 0.0 : double(effect_and_cause[std::size_t(i - 1) * n + (k - 1)][x]) / double(m);
}

double SimReport::joint_freq(int i, int j, int k, int x) const {
    const auto m = cause_count[k - 1][x];
    if (m == 0) return 0.0;
    const auto idx = pair_index(std::min(i, j), std::max(i, j), n) * n + (k - 1);
    return double(pair_and_cause[idx][x]) / double(m);
}

double SimReport::se(double freq, std::uint64_t m) const {
    return m == 0 ? 0.0 : std::sqrt(freq * (1.0 - freq) / double(m));
}

void SimReport::merge(const SimReport& other) {
    rounds += other.rounds;
    for (std::size_t i = 0; i < effect_count.size(); ++i) effect_count[i] += other.effect_count[i];
    for (std::size_t i = 0; i < cause_count.size(); ++i)
        for (int x = 0; x < 2; ++x) cause_count[i][x] += other.cause_count[i][x];
    for (std::size_t i = 0; i < effect_and_cause.size(); ++i)
        for (int x = 0; x < 2; ++x) effect_and_cause[i][x] += other.effect_and_cause[i][x];
    for (std::size_t i = 0; i < pair_and_cause.size(); ++i)
        for (int x = 0; x < 2; ++x) pair_and_cause[i][x] += other.pair_and_cause[i][x];
}

namespace {

// Success iff u53 * 2^-53 < p, decided in integers: u53 <= floor((num 2^53 - 1) / den).
struct Threshold {
    bool never = false;
    std::uint64_t max_inclusive = 0;

    static Threshold from_rational(const Rational& p) {
        if (sgn(p) <= 0) return {true, 0};
        if (p >= 1) return {false, ~0ULL};
        const Integer t = (p.get_num() * pow2(53) - 1) / p.get_den();  // positive: floor
        return {false, t.get_ui()};
    }
    static Threshold from_double(double p) {
        if (p <= 0) return {true, 0};
        if (p >= 1) return {false, ~0ULL};
        // p 2^53 is exact in double; the largest u53 with u53 < p 2^53 is ceil - 1
        return {false, static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53))) - 1};
    }
    bool draw(std::uint64_t u53) const { return !never && u53 <= max_inclusive; }
};

struct RuleTable {
    int n;
    Threshold cause;                    // P(C = 1) = r
    std::vector<Threshold> p_by_zeros;  // index k-1: effect prob when own cause 0, k zeros
    std::vector<Threshold> q_by_ones;
};

RuleTable build_table(const model::GameSpec& spec) {
    RuleTable t;
    if (const auto* q = std::get_if<model::GameSpecQ>(&spec)) {
        t.n = q->n;
        t.cause = Threshold::from_rational(q->r);
        for (const auto& v : q->p) t.p_by_zeros.push_back(Threshold::from_rational(v));
        for (const auto& v : q->q) t.q_by_ones.push_back(Threshold::from_rational(v));
    } else {
        const auto& f = std::get<model::GameSpecF>(spec);
        t.n = f.n;
        t.cause = Threshold::from_double(f.r);
        for (double v : f.p) t.p_by_zeros.push_back(Threshold::from_double(v));
        for (double v : f.q) t.q_by_ones.push_back(Threshold::from_double(v));
    }
    return t;
}

SimReport empty_report(int n, const SimConfig& cfg) {
    SimReport r;
    r.n = n;
    r.rounds = 0;
    r.seed = cfg.seed;
    r.chunk = cfg.chunk;
    r.effect_count.assign(n, 0);
    r.cause_count.assign(n, {0, 0});
    r.effect_and_cause.assign(std::size_t(n) * n, {0, 0});
    r.pair_and_cause.assign(std::size_t(n) * (n - 1) / 2 * n, {0, 0});
    return r;
}

SimReport run_chunk(const RuleTable& t, const SimConfig& cfg, std::uint64_t chunk_index,
                    std::uint64_t rounds_here) {
    const int n = t.n;
    SimReport rep = empty_report(n, cfg);
    rep.rounds = rounds_here;
    SplitMix64 rng(substream_seed(cfg.seed, chunk_index));
    for (std::uint64_t round = 0; round < rounds_here; ++round) {
        std::uint32_t cbits = 0;
        for (int i = 0; i < n; ++i)
            if (t.cause.draw(rng.next_u53())) cbits |= 1u << i;
        const int ones = std::popcount(cbits);
        const int zeros = n - ones;
        std::uint32_t ebits = 0;
        for (int i = 0; i < n; ++i) {
            const bool own_one = (cbits >> i) & 1u;
            const Threshold& th = own_one ? t.q_by_ones[ones - 1] : t.p_by_zeros[zeros - 1];
            if (th.draw(rng.next_u53())) ebits |= 1u << i;
        }
        for (int i = 0; i < n; ++i)
            if ((ebits >> i) & 1u) rep.effect_count[i]++;
        for (int k = 0; k < n; ++k) {
            const int x = (cbits >> k) & 1u;
            rep.cause_count[k][x]++;
            for (int i = 0; i < n; ++i)
                if ((ebits >> i) & 1u) rep.effect_and_cause[std::size_t(i) * n + k][x]++;
        }
        for (int i = 0; i < n - 1; ++i) {
            if (!((ebits >> i) & 1u)) continue;
            for (int j = i + 1; j < n; ++j) {
                if (!((ebits >> j) & 1u)) continue;
                const std::size_t base = SimReport::pair_index(i + 1, j + 1, n) * n;
                for (int k = 0; k < n; ++k) rep.pair_and_cause[base + k][(cbits >> k) & 1u]++;
            }
        }
    }
    return rep;
}

}  // namespace

SimReport simulate(const SimConfig& config) {
    if (config.rounds < 1) throw InputError("simulate needs rounds >= 1");
    if (config.chunk < 1) throw InputError("simulate needs chunk >= 1");
    const RuleTable table = build_table(config.spec);
    if (table.n < 2 || table.n > 32) throw InputError("simulate supports 2 <= n <= 32");

    const std::uint64_t chunks = (config.rounds + config.chunk - 1) / config.chunk;
    SimReport total = empty_report(table.n, config);
    total.rounds = 0;

    auto rounds_in = [&](std::uint64_t c) {
        const std::uint64_t start = c * config.chunk;
        return std::min<std::uint64_t>(config.chunk, config.rounds - start);
    };

    if (config.threads <= 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) total.merge(run_chunk(table, config, c, rounds_in(c)));
    } else {
        const std::uint64_t width = static_cast<std::uint64_t>(config.threads);
        for (std::uint64_t base = 0; base < chunks; base += width) {
            std::vector<std::future<SimReport>> batch;
            for (std::uint64_t c = base; c < std::min(chunks, base + width); ++c)
                batch.push_back(std::async(std::launch::async,
                                           [&, c] { return run_chunk(table, config, c, rounds_in(c)); }));
            for (auto& fut : batch) total.merge(fut.get());  // merge in chunk order
        }
    }
    total.seed = config.seed;
    total.chunk = config.chunk;
    return total;
}

ZResult independence_test(const SimReport& report, int i, int j, int k, int x) {
    if (i == j) throw InputError("independence_test needs distinct effects");
    if (x != 0 && x != 1) throw InputError("cause state must be 0 or 1");
    const std::uint64_t m = report.cause_count[k - 1][x];
    if (m == 0) return {0.0, true};
    const double fj = report.joint_freq(i, j, k, x);
    const double fi = report.cond_freq(i, k, x);
    const double fjj = report.cond_freq(j, k, x);
    const bool degen = (fi <= 0 || fi >= 1 || fjj <= 0 || fjj >= 1);
    if (degen) return {0.0, true};
    const double resid = fj - fi * fjj;
    // delta-method propagation, covariances dropped
    const double var = fj * (1 - fj) / double(m) + fjj * fjj * fi * (1 - fi) / double(m) +
                       fi * fi * fjj * (1 - fjj) / double(m);
    if (var <= 0) return {0.0, true};
    return {resid / std::sqrt(var), false};
}

}  // namespace gst::sim
