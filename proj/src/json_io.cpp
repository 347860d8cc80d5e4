#include "gst/json_io.hpp"

namespace gst::io {

json to_json(const Scalar& s) {
    if (s.exact()) return format_rational(s.rat());
    return s.flt();
}

json to_json(const Vec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(to_json(v.at(i)));
    return a;
}

Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return Scalar(parse_rational(std::to_string(j.get<long long>())));
    if (j.is_number()) return Scalar(j.get<double>());
    throw InputError("expected a number or a rational string");
}

Vec vec_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("expected a non-empty array");
    bool exact = true;
    for (const auto& e : j)
        if (e.is_number_float()) exact = false;
    if (exact) {
        RVec out;
        for (const auto& e : j) out.push_back(scalar_from_json(e).rat());
        return Vec::exact(std::move(out));
    }
    FVec out;
    for (const auto& e : j) out.push_back(scalar_from_json(e).as_double());
    return Vec::approx(std::move(out));
}

json to_json(const model::GameSpec& spec) {
    json j;
    if (const auto* q = std::get_if<model::GameSpecQ>(&spec)) {
        j["n"] = q->n;
        j["r"] = format_rational(q->r);
        json p = json::array(), qq = json::array();
        for (const auto& v : q->p) p.push_back(format_rational(v));
        for (const auto& v : q->q) qq.push_back(format_rational(v));
        j["p"] = p;
        j["q"] = qq;
    } else {
        const auto& f = std::get<model::GameSpecF>(spec);
        j["mode"] = "float";
        j["n"] = f.n;
        j["r"] = f.r;
        j["p"] = f.p;
        j["q"] = f.q;
    }
    return j;
}

model::GameSpec game_spec_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("r") || !j.contains("p") || !j.contains("q"))
        throw InputError("game spec needs n, r, p, q");
    const int n = j.at("n").get<int>();
    const bool float_mode = j.value("mode", "exact") == std::string("float");
    if (float_mode) {
        model::GameSpecF f;
        f.n = n;
        f.r = scalar_from_json(j.at("r")).as_double();
        for (const auto& e : j.at("p")) f.p.push_back(scalar_from_json(e).as_double());
        for (const auto& e : j.at("q")) f.q.push_back(scalar_from_json(e).as_double());
        if (!(f.r > 0 && f.r < 1)) throw InputError("r must lie in (0,1)");
        for (double v : f.p)
            if (!(v >= 0 && v <= 1)) throw InputError("p entries must lie in [0,1]");
        for (double v : f.q)
            if (!(v >= 0 && v <= 1)) throw InputError("q entries must lie in [0,1]");
        return f;
    }
    model::GameSpecQ qs;
    qs.n = n;
    qs.r = scalar_from_json(j.at("r")).rat();
    for (const auto& e : j.at("p")) qs.p.push_back(scalar_from_json(e).rat());
    for (const auto& e : j.at("q")) qs.q.push_back(scalar_from_json(e).rat());
    if (!(qs.r > 0 && qs.r < 1)) throw InputError("r must lie in (0,1)");
    for (const auto& v : qs.p)
        if (v < 0 || v > 1) throw InputError("p entries must lie in [0,1]");
    for (const auto& v : qs.q)
        if (v < 0 || v > 1) throw InputError("q entries must lie in [0,1]");
    if (static_cast<int>(qs.p.size()) != n || static_cast<int>(qs.q.size()) != n)
        throw InputError("p/q length must equal n");
    return qs;
}

json to_json(const points::MembershipReport& rep) {
    json j;
    j["n"] = rep.p.size();
    j["p"] = to_json(rep.p);
    j["mode"] = rep.p.is_exact() ? "exact" : "float";
    j["in_box"] = rep.in_box;
    j["psi"] = to_json(rep.psi_value);
    j["in_ind"] = rep.in_ind;
    j["in_inf"] = rep.in_inf;
    j["in_gst"] = rep.in_gst;
    if (rep.influence_witness) j["influence_witness"] = *rep.influence_witness;
    return j;
}

json to_json(const quadform::Inertia& in) {
    return json{{"positive", in.pos}, {"negative", in.neg}, {"zero", in.zero}};
}

json to_json(const points::RootBracket& rb) {
    json j;
    j["lo"] = format_rational(rb.lo);
    j["hi"] = format_rational(rb.hi);
    j["approx"] = rb.mid();
    if (rb.exact) j["exact"] = format_rational(*rb.exact);
    return j;
}

json to_json(const points::CertifiedPoint& cp) {
    json j;
    j["n"] = cp.n;
    json p = json::array();
    const FVec approx = cp.approx();
    for (int i = 0; i < cp.n; ++i) {
        if (i == cp.slot && !cp.cert.exact_root)
            p.push_back(approx[i]);
        else if (i == cp.slot)
            p.push_back(format_rational(*cp.cert.exact_root));
        else
            p.push_back(format_rational(cp.fixed[i]));
    }
    j["p"] = p;
    json cert;
    cert["slot"] = cp.slot + 1;  // 1-based in reports
    cert["quadratic"] = {format_rational(cp.cert.a2), format_rational(cp.cert.a1),
                         format_rational(cp.cert.a0)};
    cert["interval"] = {format_rational(cp.cert.lo), format_rational(cp.cert.hi)};
    if (cp.cert.exact_root) cert["exact_root"] = format_rational(*cp.cert.exact_root);
    j["certificates"] = json{{"coordinate_quadratic", cert}};
    return j;
}

json to_json(const sim::SimReport& rep) {
    json j;
    j["n"] = rep.n;
    j["rounds"] = rep.rounds;
    j["seed"] = rep.seed;
    j["chunk"] = rep.chunk;
    j["effect_count"] = rep.effect_count;
    json cc = json::array();
    for (const auto& a : rep.cause_count) cc.push_back(json::array({a[0], a[1]}));
    j["cause_count"] = cc;
    json ec = json::array();
    for (const auto& a : rep.effect_and_cause) ec.push_back(json::array({a[0], a[1]}));
    j["effect_and_cause"] = ec;
    json pc = json::array();
    for (const auto& a : rep.pair_and_cause) pc.push_back(json::array({a[0], a[1]}));
    j["pair_and_cause"] = pc;
    json freq;
    json ef = json::array();
    for (int i = 1; i <= rep.n; ++i) ef.push_back(rep.effect_freq(i));
    freq["effect"] = ef;
    json se = json::array();
    for (int i = 1; i <= rep.n; ++i) se.push_back(rep.se(rep.effect_freq(i), rep.rounds));
    freq["effect_se"] = se;
    j["frequencies"] = freq;
    return j;
}

json to_json(const geometry::SegmentReport& rep) {
    json j;
    switch (rep.kind) {
        case geometry::SegmentKind::AllInGST: j["kind"] = "AllInGST"; break;
        case geometry::SegmentKind::AllInIndNotGST: j["kind"] = "AllInIndNotGST"; break;
        case geometry::SegmentKind::InteriorOutsideInd: j["kind"] = "InteriorOutsideInd"; break;
        case geometry::SegmentKind::Mixed: j["kind"] = "Mixed"; break;
    }
    j["cross_term"] = to_json(rep.ct);
    json ts = json::array(), pts = json::array();
    for (const auto& t : rep.failure_ts) ts.push_back(to_json(t));
    for (const auto& p : rep.failure_points) pts.push_back(to_json(p));
    j["failure_ts"] = ts;
    j["failure_points"] = pts;
    j["samples_checked"] = rep.samples_checked;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json run_manifest(const std::string& command_line, const std::string& config_canonical,
                  const std::vector<std::uint64_t>& seeds, double wall_ms) {
    char digest[19];
    std::snprintf(digest, sizeof digest, "0x%016llx",
                  static_cast<unsigned long long>(fnv1a(config_canonical)));
    json j;
    j["command"] = command_line;
    j["config_digest"] = digest;
    j["seeds"] = seeds;
    j["version"] = "gst 0.1.0";
    j["wall_ms"] = wall_ms;
    return j;
}

}  // namespace gst::io
