// Command-line front end: membership checks, explicit point families, inertia
// reports, root isolation, segment/path geometry probes, and the seeded
// simulator. All reports are JSON (CSV for grids) with a reproducibility
// manifest attached.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gst/geometry.hpp"
#include "gst/json_io.hpp"
#include "gst/model.hpp"
#include "gst/points.hpp"
#include "gst/quadform.hpp"
#include "gst/rng.hpp"
#include "gst/sim.hpp"

namespace {

using gst::io::json;

struct GlobalOpts {
    std::string mode = "exact";
    double tol = 1e-10;
    std::string output;
    std::string format = "json";
};

gst::Vec parse_point(const std::string& csv, const std::string& mode) {
    std::vector<std::string> parts;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 2) throw gst::InputError("point needs at least two coordinates");
    if (mode == "float") {
        gst::FVec out;
        for (const auto& s : parts) {
            try {
                std::size_t used = 0;
                out.push_back(std::stod(s, &used));
                if (used != s.size()) throw gst::InputError("malformed coordinate: " + s);
            } catch (const std::exception&) {
                throw gst::InputError("malformed coordinate: " + s);
            }
        }
        return gst::Vec::approx(std::move(out));
    }
    gst::RVec out;
    for (const auto& s : parts) out.push_back(gst::parse_rational(s));
    return gst::Vec::exact(std::move(out));
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(g.output);
    if (!f) throw gst::InputError("cannot open output file: " + g.output);
    f << text << "\n";
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

gst::points::Tolerances tolerances(const GlobalOpts& g) {
    gst::points::Tolerances t;
    t.psi_tol = g.tol;
    t.influence_margin = g.tol;
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explorer for the symmetric cause-effect game: independence, influence, "
                 "and the geometry of their intersection"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--mode", g.mode, "number mode: exact | float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", g.tol, "float-mode tolerance (default 1e-10)");
    app.add_option("--output", g.output, "write the report to a file instead of stdout");
    app.add_option("--format", g.format, "json | csv (csv applies to grids)")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string point_csv, point_q_csv, point_file, spec_file, gst_csv, family = "theta", method = "both";
    int arg_n = 0, count = 10, samples = 32, steps = 16, grid = 512;
    std::uint64_t seed = 11, rounds = 1000000, chunk = 65536;
    long budget = 100000;
    double radius = 0.05, step = 0.01;
    int threads = 1;
    bool roots = false, emit_grid = false;
    std::string target = "m";

    auto* c_check = app.add_subcommand("check", "membership verdicts for one point");
    c_check->add_option("-p,--point", point_csv, "comma-separated coordinates");
    c_check->add_option("--file", point_file, "point file (JSON)");

    auto* c_find = app.add_subcommand("find", "construct points of the solution space");
    c_find->add_option("n", arg_n, "dimension")->required();
    c_find->add_option("--family", family, "theta | boundary | surface")
        ->check(CLI::IsMember({"theta", "boundary", "surface"}));
    c_find->add_option("--seed", seed, "sampler seed");
    c_find->add_option("--count", count, "number of surface samples");
    c_find->add_option("--radius", radius, "surface sampler radius");

    auto* c_inertia = app.add_subcommand("inertia", "signature of the independence form");
    c_inertia->add_option("n", arg_n, "dimension")->required();
    c_inertia->add_option("--method", method, "ldl | eigen | both")
        ->check(CLI::IsMember({"ldl", "eigen", "both"}));

    auto* c_hessian = app.add_subcommand("hessian", "dump the form matrices");
    c_hessian->add_option("n", arg_n, "dimension")->required();

    auto* c_ftheta = app.add_subcommand("ftheta", "the power-family polynomial");
    c_ftheta->add_option("n", arg_n, "dimension")->required();
    c_ftheta->add_flag("--roots", roots, "isolate the roots in (0,1)");
    c_ftheta->add_flag("--emit-grid", emit_grid, "emit (theta, f) samples on [0,1]");
    c_ftheta->add_option("--grid", grid, "grid resolution for --emit-grid");

    auto* c_segment = app.add_subcommand("segment", "classify the segment between two points");
    c_segment->add_option("-p,--point", point_csv, "first endpoint")->required();
    c_segment->add_option("-q,--point2", point_q_csv, "second endpoint")->required();
    c_segment->add_option("--samples", samples, "verification samples");

    auto* c_path = app.add_subcommand("path", "search for an on-surface path");
    c_path->add_option("-p,--point", point_csv, "first endpoint")->required();
    c_path->add_option("-q,--point2", point_q_csv, "second endpoint")->required();
    c_path->add_option("--seed", seed, "search seed");
    c_path->add_option("--budget", budget, "iteration budget");
    c_path->add_option("--step", step, "waypoint spacing");

    auto* c_component = app.add_subcommand("component", "component label of a point");
    c_component->add_option("-p,--point", point_csv, "point")->required();

    auto* c_sim = app.add_subcommand("simulate", "seeded Monte Carlo run of the game");
    c_sim->add_option("--spec", spec_file, "game spec file (JSON)");
    c_sim->add_option("--gst", gst_csv, "symmetric game from a probability vector");
    c_sim->add_option("--rounds", rounds, "number of rounds");
    c_sim->add_option("--seed", seed, "stream seed");
    c_sim->add_option("--chunk", chunk, "rounds per sub-stream");
    c_sim->add_option("--threads", threads, "chunk-level parallelism");

    auto* c_homotopy = app.add_subcommand("homotopy", "contract a point toward a constant");
    c_homotopy->add_option("-p,--point", point_csv, "point of the independence set")->required();
    c_homotopy->add_option("--target", target, "constant value, or 'm' for the midpoint");
    c_homotopy->add_option("--steps", steps, "number of waypoints");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Timer timer;
    try {
        std::ostringstream cmdline;
        for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

        if (*c_check) {
            gst::points::MembershipReport rep;
            std::string canonical;
            if (!point_file.empty()) {
                std::ifstream f(point_file);
                if (!f) throw gst::InputError("cannot read point file: " + point_file);
                json j = json::parse(f, nullptr, true);
                const gst::Vec p = gst::io::vec_from_json(j.at("p"));
                rep = gst::points::membership(p, tolerances(g));
                canonical = "check|" + j.at("p").dump();
            } else if (!point_csv.empty()) {
                rep = gst::points::membership(parse_point(point_csv, g.mode), tolerances(g));
                canonical = "check|" + point_csv + "|" + g.mode;
            } else {
                throw gst::InputError("check needs -p or --file");
            }
            json out = gst::io::to_json(rep);
            out["manifest"] = gst::io::run_manifest(cmdline.str(), canonical, {}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_find) {
            json pts = json::array();
            if (family == "theta") {
                const auto brackets = gst::points::theta_roots(arg_n, gst::dyadic(1, 40));
                for (const auto& rb : brackets) {
                    json e;
                    e["root"] = gst::io::to_json(rb);
                    const gst::Scalar th = rb.exact ? gst::Scalar(*rb.exact) : gst::Scalar(rb.mid());
                    const gst::Vec p = gst::points::theta_point(arg_n, th);
                    e["n"] = arg_n;
                    e["p"] = gst::io::to_json(p);
                    e["membership"] = gst::io::to_json(gst::points::membership(p, tolerances(g)));
                    pts.push_back(e);
                }
            } else if (family == "boundary") {
                const auto bp = gst::points::boundary_point(arg_n);
                const auto partner = gst::points::involution(bp);
                for (const auto& cp : {bp, partner}) {
                    json e = gst::io::to_json(cp);
                    e["membership"] = gst::io::to_json(gst::points::membership(cp));
                    pts.push_back(e);
                }
            } else {
                const auto samples_out =
                    gst::geometry::surface_sample(arg_n, count, radius, seed, tolerances(g));
                for (const auto& p : samples_out) {
                    json e;
                    e["n"] = arg_n;
                    e["p"] = p;
                    e["membership"] =
                        gst::io::to_json(gst::points::membership(gst::Vec::approx(p), tolerances(g)));
                    pts.push_back(e);
                }
            }
            json out;
            out["family"] = family;
            out["points"] = pts;
            out["manifest"] = gst::io::run_manifest(
                cmdline.str(),
                "find|" + std::to_string(arg_n) + "|" + family + "|" + std::to_string(seed) + "|" +
                    std::to_string(count),
                {seed}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_inertia) {
            json out;
            if (method == "ldl" || method == "both") {
                const auto [ia, trace] = gst::quadform::inertia_ldl(arg_n);
                json jl = gst::io::to_json(ia);
                jl["epsilon"] = gst::format_rational(trace.epsilon);
                json dsigns = json::array();
                for (const auto& d : trace.D) dsigns.push_back(sgn(d));
                jl["pivot_signs"] = dsigns;
                out["perturbed_ldl"] = jl;
            }
            if (method == "eigen" || method == "both") {
                const auto Hf = gst::quadform::to_float(gst::quadform::hessian_matrix(arg_n));
                const auto es = gst::quadform::eigen_sym(Hf, 1e-13);
                const double thr = gst::quadform::zero_threshold(Hf);
                gst::quadform::Inertia fl;
                for (double v : es.values) (v > thr ? fl.pos : (v < -thr ? fl.neg : fl.zero))++;
                json je = gst::io::to_json(fl);
                je["eigenvalues"] = es.values;
                out["eigensolver"] = je;
            }
            out["inertia"] = gst::io::to_json(gst::quadform::inertia_of_H(arg_n));
            out["manifest"] = gst::io::run_manifest(
                cmdline.str(), "inertia|" + std::to_string(arg_n) + "|" + method, {}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_hessian) {
            const auto info = gst::quadform::hessian(arg_n);
            json H = json::array(), Xs = json::array();
            const gst::Integer scale = gst::pow2(arg_n - 2);
            for (int i = 0; i < arg_n; ++i) {
                json hr = json::array(), xr = json::array();
                for (int j = 0; j < arg_n; ++j) {
                    hr.push_back(gst::format_rational(info.H(i, j)));
                    const gst::Rational sx = info.X(i, j) * gst::Rational(scale);
                    xr.push_back(sx.get_num().get_str());
                }
                H.push_back(hr);
                Xs.push_back(xr);
            }
            json out;
            out["n"] = arg_n;
            out["H"] = H;
            out["scaled_by"] = "2^{n-2}";
            out["X_scaled"] = Xs;
            out["manifest"] = gst::io::run_manifest(cmdline.str(), "hessian|" + std::to_string(arg_n),
                                                    {}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_ftheta) {
            if (emit_grid) {
                std::ostringstream csv;
                csv << "theta,f\n";
                for (int a = 0; a <= grid; ++a) {
                    const gst::Rational th = gst::ratio(a, grid);
                    csv << gst::to_double(th) << "," << gst::to_double(gst::points::f_eval(arg_n, th))
                        << "\n";
                }
                emit(g, csv.str());
                return 0;
            }
            if (!roots) throw gst::InputError("ftheta needs --roots or --emit-grid");
            const auto brackets = gst::points::theta_roots(arg_n, gst::dyadic(1, 40));
            json out;
            out["n"] = arg_n;
            json arr = json::array();
            for (const auto& rb : brackets) arr.push_back(gst::io::to_json(rb));
            out["roots"] = arr;
            out["manifest"] = gst::io::run_manifest(cmdline.str(), "ftheta|" + std::to_string(arg_n),
                                                    {}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_segment) {
            const auto p = parse_point(point_csv, g.mode);
            const auto q = parse_point(point_q_csv, g.mode);
            const auto rep = gst::geometry::segment_classify(p, q, samples, tolerances(g));
            json out = gst::io::to_json(rep);
            out["manifest"] = gst::io::run_manifest(
                cmdline.str(), "segment|" + point_csv + "|" + point_q_csv + "|" + g.mode, {},
                timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_path) {
            const auto p = parse_point(point_csv, g.mode);
            const auto q = parse_point(point_q_csv, g.mode);
            gst::geometry::PathParams params;
            params.seed = seed;
            params.budget = budget;
            params.step = step;
            const auto res = gst::geometry::path_probe(p, q, params);
            std::ostringstream lines;
            int exit_code = 0;
            if (const auto* path = std::get_if<gst::geometry::SurfacePath>(&res)) {
                for (const auto& w : path->waypoints) lines << json{{"waypoint", w}}.dump() << "\n";
                json trailer{{"waypoints", path->waypoints.size()},
                             {"max_psi_drift", path->max_psi_drift},
                             {"min_influence_margin", path->min_influence_margin},
                             {"seed", path->seed},
                             {"experimental", path->experimental}};
                if (path->experimental)
                    trailer["note"] = "connectivity for n in {5,6,7} is an open problem; "
                                      "this outcome is experimental evidence only";
                lines << trailer.dump() << "\n";
            } else if (const auto* cert = std::get_if<gst::geometry::DisconnectionCertificate>(&res)) {
                lines << json{{"disconnected", true},
                              {"label_p", cert->label_p},
                              {"label_q", cert->label_q},
                              {"reason", cert->reason}}
                             .dump()
                      << "\n";
            } else {
                const auto& to = std::get<gst::geometry::TimedOut>(res);
                lines << json{{"timed_out", true}, {"iterations", to.iterations}}.dump() << "\n";
                exit_code = 4;
            }
            lines << json{{"manifest",
                           gst::io::run_manifest(cmdline.str(),
                                                 "path|" + point_csv + "|" + point_q_csv + "|" +
                                                     std::to_string(seed),
                                                 {seed}, timer.ms())}}
                         .dump();
            emit(g, lines.str());
            return exit_code;
        }

        if (*c_component) {
            const auto p = parse_point(point_csv, g.mode);
            const auto label = gst::geometry::component_label(p, tolerances(g));
            json out{{"label", label.sign}};
            out["manifest"] = gst::io::run_manifest(cmdline.str(), "component|" + point_csv, {},
                                                    timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_sim) {
            gst::model::GameSpec spec;
            std::string canonical;
            if (!spec_file.empty()) {
                std::ifstream f(spec_file);
                if (!f) throw gst::InputError("cannot read spec file: " + spec_file);
                json j = json::parse(f, nullptr, true);
                spec = gst::io::game_spec_from_json(j);
                canonical = "simulate|" + gst::io::to_json(spec).dump();
            } else if (!gst_csv.empty()) {
                const auto p = parse_point(gst_csv, g.mode);
                if (p.is_exact())
                    spec = gst::model::gst_spec(p.rat());
                else
                    spec = gst::model::gst_spec(p.flt());
                canonical = "simulate|gst|" + gst_csv;
            } else {
                throw gst::InputError("simulate needs --spec or --gst");
            }
            gst::sim::SimConfig cfg;
            cfg.spec = spec;
            cfg.rounds = rounds;
            cfg.seed = seed;
            cfg.chunk = chunk;
            cfg.threads = threads;
            const auto rep = gst::sim::simulate(cfg);
            json out = gst::io::to_json(rep);
            if (rep.n <= 8) {
                json zs = json::array();
                for (int i = 1; i <= rep.n; ++i)
                    for (int j = i + 1; j <= rep.n; ++j)
                        for (int k = 1; k <= rep.n; ++k)
                            for (int x = 0; x <= 1; ++x) {
                                const auto z = gst::sim::independence_test(rep, i, j, k, x);
                                zs.push_back(json{{"i", i},
                                                  {"j", j},
                                                  {"k", k},
                                                  {"x", x},
                                                  {"z", z.z},
                                                  {"degenerate", z.degenerate}});
                            }
                out["independence_z"] = zs;
            }
            canonical += "|" + std::to_string(rounds) + "|" + std::to_string(seed) + "|" +
                         std::to_string(chunk);
            out["manifest"] = gst::io::run_manifest(cmdline.str(), canonical, {seed}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        if (*c_homotopy) {
            const auto p = parse_point(point_csv, g.mode);
            gst::Vec x = p;
            if (target == "m") {
                if (p.is_exact())
                    x = gst::Vec::exact(gst::RVec(p.size(), gst::Rational(1, 2)));
                else
                    x = gst::Vec::approx(gst::FVec(p.size(), 0.5));
            } else {
                if (p.is_exact())
                    x = gst::Vec::exact(gst::RVec(p.size(), gst::parse_rational(target)));
                else
                    x = gst::Vec::approx(gst::FVec(p.size(), gst::to_double(gst::parse_rational(target))));
            }
            json arr = json::array();
            for (int i = 0; i <= steps; ++i) {
                gst::Scalar t = p.is_exact() ? gst::Scalar(gst::Rational(i, steps))
                                             : gst::Scalar(double(i) / steps);
                const auto w = gst::geometry::contraction(p, t, x);
                arr.push_back(json{{"t", gst::io::to_json(t)},
                                   {"point", gst::io::to_json(w)},
                                   {"psi", gst::io::to_json(gst::quadform::psi(w))}});
            }
            json out;
            out["waypoints"] = arr;
            out["manifest"] = gst::io::run_manifest(
                cmdline.str(), "homotopy|" + point_csv + "|" + target, {}, timer.ms());
            emit(g, out.dump(2));
            return 0;
        }

        throw gst::InputError("no command given");
    } catch (const gst::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const gst::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
