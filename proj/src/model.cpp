#include "gst/model.hpp"

namespace gst::model {

GameSpecQ as_exact(const GameSpec& s) {
    if (const auto* q = std::get_if<GameSpecQ>(&s)) return *q;
    throw InputError("game spec is in float mode");
}

GameSpecF as_float(const GameSpec& s) {
    if (const auto* f = std::get_if<GameSpecF>(&s)) return *f;
    const auto& q = std::get<GameSpecQ>(s);
    GameSpecF out;
    out.n = q.n;
    out.r = to_double(q.r);
    out.p.reserve(q.n);
    out.q.reserve(q.n);
    for (const auto& x : q.p) out.p.push_back(to_double(x));
    for (const auto& x : q.q) out.q.push_back(to_double(x));
    return out;
}

}  // namespace gst::model
