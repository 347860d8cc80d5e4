#pragma once

#include <bit>
#include <cstdint>
#include <variant>
#include <vector>

#include "gst/rational.hpp"
#include "gst/scalar.hpp"

namespace gst::model {

/// Exact oracles enumerate all 2^n cause assignments; this bounds n so the
/// suites stay fast. Larger games go through the simulator.
inline constexpr int kEnumerationCap = 24;

struct CapExceeded : InputError {
    using InputError::InputError;
};
struct ZeroProbabilityCondition : NumericalError {
    using NumericalError::NumericalError;
};

/// Game description: n players, causes are independent Bernoulli(r); the
/// effect for player i fires with probability p_k when the player's cause is
/// in state 0 and k causes total are in state 0, and q_k symmetrically for
/// state 1.
template <class T>
struct GameSpecT {
    int n = 0;
    T r{};
    std::vector<T> p, q;  // index k-1 holds the k-of-n probability

    bool is_gst() const {
        if (!(r == T(1) / T(2))) return false;
        for (int i = 0; i < n; ++i)
            if (!(p[i] == q[i])) return false;
        return true;
    }
};

using GameSpecQ = GameSpecT<Rational>;
using GameSpecF = GameSpecT<double>;

/// Fully symmetric game: r = 1/2 and p = q.
template <class T>
GameSpecT<T> gst_spec(std::vector<T> p) {
    GameSpecT<T> s;
    s.n = static_cast<int>(p.size());
    s.r = T(1) / T(2);
    s.q = p;
    s.p = std::move(p);
    return s;
}

/// Cause assignment as a bitmask; bit i-1 carries the state of cause i.
struct CauseAssignment {
    int n = 0;
    std::uint32_t bits = 0;
    int ones() const { return std::popcount(bits); }
    int zeros() const { return n - ones(); }
    int state(int i) const { return (bits >> (i - 1)) & 1u; }  // i is 1-based
};

namespace detail {

template <class T>
void check_spec(const GameSpecT<T>& s) {
    if (s.n < 2) throw InputError("game needs n >= 2");
    if (static_cast<int>(s.p.size()) != s.n || static_cast<int>(s.q.size()) != s.n)
        throw InputError("p/q length must equal n");
}

template <class T>
void check_player(const GameSpecT<T>& s, int i) {
    if (i < 1 || i > s.n) throw InputError("player index out of range");
}

template <class T>
void check_cap(const GameSpecT<T>& s) {
    if constexpr (!std::is_floating_point_v<T>) {
        if (s.n > kEnumerationCap) throw CapExceeded("exact enumeration capped at n = 24");
    } else {
        if (s.n > 30) throw CapExceeded("enumeration capped at n = 30; use the simulator");
    }
}

/// Per-assignment prior weights r^ones (1-r)^zeros, indexed by popcount.
template <class T>
std::vector<T> weight_by_ones(const GameSpecT<T>& s, int slots) {
    std::vector<T> w(slots + 1, T(1));
    const T one_minus = T(1) - s.r;
    for (int k = 1; k <= slots; ++k) w[k] = w[k - 1] * s.r;
    T acc = T(1);
    for (int k = slots; k >= 0; --k) {
        w[k] = w[k] * acc;
        acc = acc * one_minus;
    }
    return w;
}

}  // namespace detail

/// P(E_i | joint cause assignment) straight from the game rule.
template <class T>
T effect_prob(const GameSpecT<T>& s, int i, const CauseAssignment& x) {
    detail::check_spec(s);
    detail::check_player(s, i);
    if (x.n != s.n) throw InputError("assignment length must equal n");
    if (x.state(i) == 0) return s.p[x.zeros() - 1];
    return s.q[x.ones() - 1];
}

/// Exact P(E_i) by enumerating all 2^n cause assignments.
template <class T>
T marginal_effect(const GameSpecT<T>& s, int i) {
    detail::check_spec(s);
    detail::check_player(s, i);
    detail::check_cap(s);
    const auto w = detail::weight_by_ones(s, s.n);
    T acc(0);
    for (std::uint32_t bits = 0; bits < (1u << s.n); ++bits) {
        const CauseAssignment x{s.n, bits};
        acc += w[x.ones()] * effect_prob(s, i, x);
    }
    return acc;
}

/// P(E_i ∧ E_j | C_k = x) over the 2^{n-1} completions. Effects are
/// conditionally independent given all causes, so the joint factorizes inside
/// the sum.
template <class T>
T pair_prob_given_cause(const GameSpecT<T>& s, int i, int j, int k, int x) {
    detail::check_spec(s);
    detail::check_cap(s);
    detail::check_player(s, i);
    detail::check_player(s, j);
    detail::check_player(s, k);
    if (i == j) throw InputError("pair probability needs distinct effects");
    const auto w = detail::weight_by_ones(s, s.n - 1);
    const std::uint32_t kbit = 1u << (k - 1);
    T acc(0);
    for (std::uint32_t rest = 0; rest < (1u << (s.n - 1)); ++rest) {
        // splice the fixed bit of cause k into the enumeration of the others
        const std::uint32_t low = rest & (kbit - 1);
        const std::uint32_t high = (rest & ~(kbit - 1)) << 1;
        const std::uint32_t bits = low | high | (x ? kbit : 0);
        const CauseAssignment a{s.n, bits};
        acc += w[std::popcount(rest)] * effect_prob(s, i, a) * effect_prob(s, j, a);
    }
    return acc;
}

/// Conditional probabilities given an assignment on an arbitrary cause
/// subset S (bitmask). Both the single and the pairwise versions enumerate
/// the completions of S exactly.
template <class T>
T cond_effect_prob(const GameSpecT<T>& s, int i, std::uint32_t smask, std::uint32_t assign);
template <class T>
T cond_pair_prob(const GameSpecT<T>& s, int i, int j, std::uint32_t smask, std::uint32_t assign);

/// P(E_i ∧ E_j | S-assignment) - P(E_i | S-assignment) P(E_j | S-assignment).
template <class T>
T screening_residual(const GameSpecT<T>& s, int i, int j, std::uint32_t smask, std::uint32_t assign) {
    return cond_pair_prob(s, i, j, smask, assign) -
           cond_effect_prob(s, i, smask, assign) * cond_effect_prob(s, j, smask, assign);
}

enum class InfluenceMode { I1, I2 };

/// Does cause c influence effect e: is there an assignment of the remaining
/// causes under which flipping c changes P(E_e | causes)?
template <class T>
bool influences(const GameSpecT<T>& s, int c, int e) {
    detail::check_spec(s);
    detail::check_player(s, c);
    detail::check_player(s, e);
    detail::check_cap(s);
    const std::uint32_t cbit = 1u << (c - 1);
    for (std::uint32_t rest = 0; rest < (1u << (s.n - 1)); ++rest) {
        const std::uint32_t low = rest & (cbit - 1);
        const std::uint32_t high = (rest & ~(cbit - 1)) << 1;
        const CauseAssignment a0{s.n, low | high};
        const CauseAssignment a1{s.n, low | high | cbit};
        if (!(effect_prob(s, e, a0) == effect_prob(s, e, a1))) return true;
    }
    return false;
}

/// Brute-force influence check. I1 asks that each cause influence its own
/// effect; I2 that every cause influence every effect.
template <class T>
bool influence_oracle(const GameSpecT<T>& s, InfluenceMode mode) {
    detail::check_spec(s);
    detail::check_cap(s);
    for (int c = 1; c <= s.n; ++c) {
        if (mode == InfluenceMode::I1) {
            if (!influences(s, c, c)) return false;
        } else {
            for (int e = 1; e <= s.n; ++e)
                if (!influences(s, c, e)) return false;
        }
    }
    return true;
}

// --- implementation of the subset-conditional oracles ---

namespace detail {

// Enumerate completions of smask/assign; calls fn(CauseAssignment, weight).
template <class T, class Fn>
void for_each_completion(const GameSpecT<T>& s, std::uint32_t smask, std::uint32_t assign, Fn&& fn) {
    check_spec(s);
    check_cap(s);
    if (assign & ~smask) throw InputError("assignment has bits outside S");
    std::vector<int> free_bits;
    for (int b = 0; b < s.n; ++b)
        if (!(smask & (1u << b))) free_bits.push_back(b);
    const int f = static_cast<int>(free_bits.size());
    const auto w = weight_by_ones(s, f);
    for (std::uint32_t sub = 0; sub < (1u << f); ++sub) {
        std::uint32_t bits = assign;
        for (int b = 0; b < f; ++b)
            if (sub & (1u << b)) bits |= 1u << free_bits[b];
        fn(CauseAssignment{s.n, bits}, w[std::popcount(sub)]);
    }
}

// Weight of the conditioning event itself; the construction keeps r in (0,1),
// so this only vanishes on degenerate inputs, but the guard stays.
template <class T>
T subset_weight(const GameSpecT<T>& s, std::uint32_t smask, std::uint32_t assign) {
    T acc(1);
    for (int b = 0; b < s.n; ++b)
        if (smask & (1u << b)) acc = acc * ((assign >> b) & 1u ? s.r : T(1) - s.r);
    return acc;
}

}  // namespace detail

template <class T>
T cond_effect_prob(const GameSpecT<T>& s, int i, std::uint32_t smask, std::uint32_t assign) {
    detail::check_player(s, i);
    if (detail::subset_weight(s, smask, assign) == T(0))
        throw ZeroProbabilityCondition("conditioning event has probability zero");
    T acc(0);
    detail::for_each_completion(s, smask, assign,
                                [&](const CauseAssignment& a, const T& w) { acc += w * effect_prob(s, i, a); });
    return acc;
}

template <class T>
T cond_pair_prob(const GameSpecT<T>& s, int i, int j, std::uint32_t smask, std::uint32_t assign) {
    detail::check_player(s, i);
    detail::check_player(s, j);
    if (i == j) throw InputError("pair probability needs distinct effects");
    if (detail::subset_weight(s, smask, assign) == T(0))
        throw ZeroProbabilityCondition("conditioning event has probability zero");
    T acc(0);
    detail::for_each_completion(s, smask, assign, [&](const CauseAssignment& a, const T& w) {
        acc += w * effect_prob(s, i, a) * effect_prob(s, j, a);
    });
    return acc;
}

/// Mode-tagged public game description (JSON surface).
using GameSpec = std::variant<GameSpecQ, GameSpecF>;

GameSpecQ as_exact(const GameSpec& s);
GameSpecF as_float(const GameSpec& s);

}  // namespace gst::model
