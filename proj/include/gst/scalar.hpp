#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "gst/rational.hpp"

namespace gst {

enum class Mode { Exact, Float };

/// A number tagged as either an exact rational or a binary64 value.
/// Arithmetic is intentionally not overloaded across modes; computations
/// pick a concrete field and convert at the boundary.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    explicit Scalar(Rational r) : v_(std::move(r)) {}
    explicit Scalar(double f) : v_(f) {
        if (!std::isfinite(f)) throw InputError("non-finite float scalar");
    }

    Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::Exact : Mode::Float; }
    bool exact() const { return mode() == Mode::Exact; }

    const Rational& rat() const {
        if (!exact()) throw InputError("scalar is not in exact mode");
        return std::get<Rational>(v_);
    }
    double flt() const {
        if (exact()) throw InputError("scalar is not in float mode");
        return std::get<double>(v_);
    }
    double as_double() const { return exact() ? to_double(rat()) : flt(); }

    bool is_zero() const { return exact() ? sgn(rat()) == 0 : flt() == 0.0; }

    std::string str() const {
        if (exact()) return format_rational(rat());
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", flt());
        return buf;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.mode() != b.mode()) return false;
        return a.exact() ? a.rat() == b.rat() : a.flt() == b.flt();
    }

  private:
    std::variant<Rational, double> v_;
};

using RVec = std::vector<Rational>;
using FVec = std::vector<double>;

/// Mode-tagged numeric vector. All entries share one mode.
class Vec {
  public:
    Vec() : v_(RVec{}) {}
    static Vec exact(RVec v) { return Vec(std::move(v)); }
    static Vec approx(FVec v) {
        for (double x : v)
            if (!std::isfinite(x)) throw InputError("non-finite vector entry");
        return Vec(std::move(v));
    }

    Mode mode() const { return std::holds_alternative<RVec>(v_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const { return mode() == Mode::Exact; }
    std::size_t size() const {
        return is_exact() ? std::get<RVec>(v_).size() : std::get<FVec>(v_).size();
    }

    const RVec& rat() const {
        if (!is_exact()) throw InputError("vector is not in exact mode");
        return std::get<RVec>(v_);
    }
    const FVec& flt() const {
        if (is_exact()) throw InputError("vector is not in float mode");
        return std::get<FVec>(v_);
    }

    FVec as_double() const {
        if (!is_exact()) return std::get<FVec>(v_);
        FVec out;
        out.reserve(size());
        for (const auto& r : rat()) out.push_back(to_double(r));
        return out;
    }

    Scalar at(std::size_t i) const {
        return is_exact() ? Scalar(rat().at(i)) : Scalar(flt().at(i));
    }

  private:
    explicit Vec(RVec v) : v_(std::move(v)) {}
    explicit Vec(FVec v) : v_(std::move(v)) {}
    std::variant<RVec, FVec> v_;
};

/// A point of [0,1]^n; the box constraint is checked on construction.
class ProbVector {
  public:
    explicit ProbVector(Vec v) : v_(std::move(v)) {
        if (v_.size() < 2) throw InputError("probability vector needs n >= 2");
        if (v_.is_exact()) {
            for (const auto& x : v_.rat())
                if (x < 0 || x > 1) throw InputError("probability entry outside [0,1]");
        } else {
            for (double x : v_.flt())
                if (!(x >= 0.0 && x <= 1.0)) throw InputError("probability entry outside [0,1]");
        }
    }
    const Vec& vec() const { return v_; }
    int n() const { return static_cast<int>(v_.size()); }

  private:
    Vec v_;
};

}  // namespace gst
