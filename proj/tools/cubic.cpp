// cubic: command line front end.
//
//   cubic verify-fan [--fan F]
//   cubic classify   [--cones EEEE,EEFG|all] [--f-vector] [--checkpoint]
//   cubic khovanskii [--input classification.json] [--class m1,...,m27]
//   cubic eeee       --params a1..a6 b1..b4 [--lambda0 L] [--witness] | --enumerate
//   cubic witness    [--region ID|all] [--draws N]
//
// CUBIC_THREADS and CUBIC_OUT override the defaults of --threads / --out.

#include "cubic/eeee.hpp"
#include "cubic/khovanskii.hpp"
#include "cubic/tropgrass.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace cubic;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.3.0";

struct RunConfig {
    std::string fan = default_fan_path();
    int threads = 1;
    std::uint64_t seed = 1;
    int depth = 3;
    int budget = 64;
    std::string out = "cubic-out";
    bool checkpoint = false;
};

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << x;
    return os.str();
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return hex(fnv1a(ss.str()));
}

// only what changes results; threads and out do not
json provenance(const RunConfig& c) {
    const std::string cfg = "depth=" + std::to_string(c.depth) + ";seed=" + std::to_string(c.seed) +
                            ";budget=" + std::to_string(c.budget);
    return {{"code_version", kVersion}, {"config_hash", hex(fnv1a(cfg))}, {"fan_hash", file_hash(c.fan)}};
}

void write_json(const fs::path& p, const json& j) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << j.dump(1) << "\n";
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return json::parse(in);
}

json class_json(const MonericClass& c) {
    json a = json::array();
    for (const auto& m : c) a.push_back(to_string(m));
    return a;
}

MonericClass class_from_json(const json& a) {
    if (!a.is_array() || a.size() != kGens) throw std::runtime_error("a class is a list of 27 monomials");
    MonericClass c{};
    for (int g = 0; g < kGens; ++g) c[static_cast<std::size_t>(g)] = parse_xymono(a[static_cast<std::size_t>(g)].get<std::string>());
    // reorder by degree so that the list order does not matter
    return class_from_key(class_key(c));
}

json stats_json(const ConeStats& s) {
    return {{"type", to_string(s.type)},       {"orbit_size", s.orbit_size}, {"stabilizer_order", s.stabilizer_order},
            {"cells", s.cells},                {"representatives", s.representatives}, {"classes", s.classes},
            {"s6_classes", s.s6_classes},      {"s6_orbits", s.s6_orbits}, {"unresolved", s.unresolved}};
}

ConeStats stats_from_json(const json& j) {
    ConeStats s{parse_cone_type(j.at("type").get<std::string>())};
    s.orbit_size = j.at("orbit_size");
    s.stabilizer_order = j.at("stabilizer_order");
    s.cells = j.at("cells");
    s.representatives = j.at("representatives");
    s.classes = j.at("classes");
    s.s6_classes = j.at("s6_classes");
    s.s6_orbits = j.at("s6_orbits");
    s.unresolved = j.at("unresolved");
    return s;
}

RatVec parse_rats(const std::string& s, std::size_t n, const char* what) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) parts.push_back(tok);
    if (parts.size() != n) throw std::runtime_error(std::string(what) + " needs " + std::to_string(n) + " comma separated values");
    RatVec v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Rational q;
        if (q.set_str(parts[i], 10) != 0) throw std::runtime_error(std::string(what) + ": bad number '" + parts[i] + "'");
        q.canonicalize();
        v[static_cast<Eigen::Index>(i)] = q;
    }
    return v;
}

std::string gen_list(const std::vector<int>& gs) {
    std::string s;
    for (int g : gs) s += (s.empty() ? "" : ", ") + generators()[static_cast<std::size_t>(g)].id;
    return s;
}

// ---------------- verify-fan ----------------

int cmd_verify_fan(const RunConfig& cfg) {
    TGrFan fan;
    try {
        fan = load_and_verify_fan(cfg.fan);
    } catch (const FanVerificationError& e) {
        std::cout << "FAIL " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << std::left << std::setw(7) << "type" << std::right << std::setw(7) << "orbit" << std::setw(7) << "stab"
              << "  representative\n";
    for (auto t : all_cone_types()) {
        const auto& o = fan.orbit(t);
        std::cout << std::left << std::setw(7) << to_string(t) << std::right << std::setw(7) << o.members.size() << std::setw(7)
                  << o.stabilizer.size() << "  " << fan.cone_name(o.representative) << "\n";
    }
    for (const char* c : {"ambient dimension and lineality", "ray set", "prevariety at interior points", "cone dimensions",
                          "S6 action on rays and cones", "orbit sizes and stabilizers", "EEEE parametrization", "cone count"})
        std::cout << "pass  " << c << "\n";
    std::cout << fan.data.rays.size() << " rays, " << fan.data.cones.size() << " maximal cones\n";
    return 0;
}

// ---------------- classify ----------------

int cmd_classify(const RunConfig& cfg, std::vector<std::string> cones, bool fvec) {
    const TGrFan fan = load_and_verify_fan(cfg.fan);
    std::vector<ConeType> types;
    const bool all = cones.empty() || (cones.size() == 1 && cones[0] == "all");
    if (all)
        types.assign(all_cone_types().begin(), all_cone_types().end());
    else
        for (const auto& c : cones) types.push_back(parse_cone_type(c));

    const json prov = provenance(cfg);
    const fs::path dir = fs::path(cfg.out) / "classify";
    ClassifyOptions opts;
    opts.threads = cfg.threads;
    opts.trop.depth = cfg.depth;

    std::vector<ConeClassification> per;
    std::cout << std::left << std::setw(7) << "type" << std::right << std::setw(7) << "cells" << std::setw(6) << "reps"
              << std::setw(8) << "classes" << std::setw(9) << "S6-cls" << std::setw(8) << "orbits\n";
    for (auto t : types) {
        const fs::path file = dir / (to_string(t) + ".json");
        ConeClassification cc;
        bool resumed = false;
        if (cfg.checkpoint && !fvec && fs::exists(file)) {
            const json j = read_json(file);
            if (j.at("provenance") == prov) {
                cc.type = t;
                cc.stats = stats_from_json(j.at("stats"));
                for (const auto& c : j.at("cone_classes")) cc.cone_classes.insert(class_key(class_from_json(c)));
                resumed = true;
            } else {
                std::cerr << "checkpoint conflict: " << file.string() << " was written with another configuration; recomputing\n";
            }
        }
        if (!resumed) {
            cc = subdivide_cone(fan, t, opts);
            std::vector<MonericClass> cls;
            for (const auto& k : cc.cone_classes) cls.push_back(class_from_key(k));
            json j{{"provenance", prov}, {"cone", fan.cone_name(cc.cone_index)}, {"stats", stats_json(cc.stats)}};
            j["cone_classes"] = json::array();
            for (const auto& c : cls) j["cone_classes"].push_back(class_json(c));
            write_json(file, j);
        }
        const auto& s = cc.stats;
        std::cout << std::left << std::setw(7) << to_string(t) << std::right << std::setw(7) << s.cells << std::setw(6)
                  << s.representatives << std::setw(8) << s.classes << std::setw(9) << s.s6_classes << std::setw(7)
                  << s.s6_orbits << (resumed ? "  (checkpoint)" : "") << (s.unresolved ? "  unresolved " + std::to_string(s.unresolved) : "")
                  << "\n";
        per.push_back(std::move(cc));
    }
    if (!all) return 0;

    const GlobalReport g = classify_all(fan, per);
    json j{{"provenance", prov}, {"classes", g.classes}, {"orbits", g.orbits}, {"maximal_cells", g.maximal_cells}};
    j["per_cone"] = json::array();
    for (const auto& s : g.per_cone) j["per_cone"].push_back(stats_json(s));
    j["orbit_representatives"] = json::array();
    for (const auto& c : g.orbit_representatives) j["orbit_representatives"].push_back(class_json(c));
    std::cout << g.classes << " classes, " << g.orbits << " orbits, " << g.maximal_cells << " maximal cells\n";
    if (fvec) {
        const auto fv = sigma_f_vector(fan, per, true, [](const std::string& s) { std::cerr << "  " << s << "\n"; });
        j["f_vector"] = fv;
        std::cout << "f-vector (";
        for (std::size_t i = 0; i < fv.size(); ++i) std::cout << (i ? ", " : "") << fv[i];
        std::cout << ")\n";
    }
    write_json(fs::path(cfg.out) / "classification.json", j);
    return 0;
}

// ---------------- khovanskii ----------------

json verdict_json(const MonericClass& c, const KhovanskiiVerdict& v) {
    json j{{"class", class_json(c)}, {"khovanskii", v.khovanskii}, {"facets", v.facets}, {"degree_bound", v.bound}};
    json rc = json::object(), oc = json::object();
    for (const auto& [d, n] : v.reference_counts) rc[degree_string(d)] = n;
    for (const auto& [d, n] : v.other_counts) oc[degree_string(d)] = n;
    j["reference_counts"] = rc;
    j["other_counts"] = oc;
    j["failures"] = v.failures;
    return j;
}

int cmd_khovanskii(const RunConfig& cfg, const std::string& input, const std::string& single) {
    std::vector<MonericClass> classes;
    if (!single.empty()) {
        json a = json::array();
        std::stringstream ss(single);
        for (std::string tok; std::getline(ss, tok, ',');) a.push_back(tok);
        classes.push_back(class_from_json(a));
    } else {
        const fs::path in = input.empty() ? fs::path(cfg.out) / "classification.json" : fs::path(input);
        if (!fs::exists(in)) {
            std::cerr << "error: missing classification input " << in.string() << " (run `cubic classify` first)\n";
            return 2;
        }
        for (const auto& c : read_json(in).at("orbit_representatives")) classes.push_back(class_from_json(c));
    }
    std::vector<KhovanskiiVerdict> vs(classes.size());
    tbb::parallel_for(std::size_t{0}, classes.size(), [&](std::size_t i) { vs[i] = khovanskii_check(classes[i]); });

    std::size_t yes = 0, minf = 0;
    json per = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& v = vs[i];
        std::cout << std::setw(3) << i << "  " << (v.khovanskii ? "khovanskii " : "not        ") << std::setw(4) << v.facets
                  << " facets  bound " << v.bound;
        if (!v.failures.empty()) std::cout << "  " << v.failures.front() << (v.failures.size() > 1 ? " ..." : "");
        std::cout << "\n";
        if (v.khovanskii) {
            minf = yes == 0 ? v.facets : std::min(minf, v.facets);
            ++yes;
        }
        per.push_back(verdict_json(classes[i], v));
    }
    std::cout << yes << " Khovanskii / " << classes.size() << " moneric\n";
    if (yes) std::cout << "minimum facet count " << minf << "\n";
    json refs = json::array();
    for (const auto& d : reference_degrees()) refs.push_back(degree_string(d));
    if (single.empty())
        write_json(fs::path(cfg.out) / "khovanskii.json",
                   {{"provenance", provenance(cfg)}, {"reference_degrees", refs}, {"khovanskii", yes},
                    {"classes", classes.size()}, {"min_facets", minf}, {"verdicts", per}});
    return 0;
}

// ---------------- eeee / witness ----------------

bool check_witness(const EeeeParams& p, const Witness& w, const MonericClass& expect, std::string& why) {
    const PluckerPoint pt = plucker_from_matrix(w.matrix);
    const RatVec phi = eeee_phi_rational(p.a, p.b);
    for (int i = 0; i < kPl; ++i) {
        const auto v = valuation_or_none(pt.coords[static_cast<std::size_t>(i)]);
        if (!v || Rational(*v) != phi[i] * w.scale) {
            why = "valuation of p" + triple_name(i) + " differs";
            return false;
        }
    }
    const auto m = monericity(pt);
    if (!m.moneric) {
        why = "not moneric at the witness (" + gen_list(m.failing) + ")";
        return false;
    }
    if (class_key(m.monos) != class_key(expect)) {
        why = "class differs from the prediction";
        return false;
    }
    return true;
}

int cmd_eeee(const RunConfig& cfg, const std::vector<std::string>& params, const std::string& lambda, bool wit, bool enumerate) {
    if (enumerate) {
        const auto e = enumerate_regions();
        std::cout << e.regions << " systems\n"
                  << e.classes << " classes, " << e.orbits << " orbits\n"
                  << "without the lambda0 systems: " << e.non_lbc_classes << " classes, " << e.non_lbc_orbits << " orbits\n";
        return 0;
    }
    if (params.size() != 10) throw std::runtime_error("eeee needs --params a1..a6 b1..b4 (or --enumerate)");
    std::string joined;
    for (const auto& x : params) joined += (joined.empty() ? "" : ",") + x;
    const RatVec ab = parse_rats(joined, 10, "--params");
    EeeeParams p;
    p.a = ab.head(6);
    p.b = ab.tail(4);
    if (!lambda.empty()) p.lambda0 = parse_rats(lambda, 1, "--lambda0")[0];
    const Prediction pr = predict_class(p);
    switch (pr.status) {
    case PredictionStatus::moneric:
        std::cout << "MONERIC region " << pr.region << " (normalizer " << to_string(pr.normalizer) << ")\n" << report(pr.cls);
        break;
    case PredictionStatus::needs_lambda0:
        std::cout << "NEEDS_LAMBDA0: " << gen_list(pr.violated) << " depends on the cancellation depth; pass --lambda0\n";
        return wit ? 2 : 0;
    case PredictionStatus::not_moneric:
        std::cout << "NOT_MONERIC: ties in " << gen_list(pr.violated) << "\n";
        return wit ? 2 : 0;
    }
    if (!wit) return 0;
    Witness w;
    try {
        w = witness(p, {cfg.seed, cfg.budget});
    } catch (const WitnessError& e) {
        std::cout << "witness budget exhausted: " << e.what() << "\n";
        return 3;
    }
    std::cout << "witness (valuations scaled by " << w.scale << "):\n";
    for (int r = 0; r < 3; ++r) {
        std::cout << " ";
        for (int c = 0; c < 6; ++c) std::cout << "  " << to_string(w.matrix(r, c));
        std::cout << "\n";
    }
    std::string why;
    if (!check_witness(p, w, pr.cls, why)) {
        std::cout << "MISMATCH " << why << "\n";
        return 1;
    }
    std::cout << "exact valuation match: all 20 minors, class confirmed\n";
    return 0;
}

int cmd_witness(const RunConfig& cfg, const std::string& region, int draws, bool print) {
    std::vector<const EeeeRegion*> regs;
    if (region.empty() || region == "all")
        for (const auto& r : eeee_regions()) regs.push_back(&r);
    else
        regs.push_back(&eeee_region(region));
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    for (const auto* r : regs) {
        int ok = 0;
        std::string last;
        const auto t0 = std::chrono::steady_clock::now();
        for (int k = 0; k < draws; ++k) {
            const EeeeParams p = sample_region(*r, rng);
            const Prediction pr = predict_class(p);
            try {
                const Witness w = witness(p, {cfg.seed + static_cast<std::uint64_t>(k), cfg.budget});
                std::string why;
                if (pr.status == PredictionStatus::moneric && pr.region == r->id && check_witness(p, w, pr.cls, why))
                    ++ok;
                else
                    last = why.empty() ? "prediction left the region" : why;
                if (print && k == 0) {
                    for (int i = 0; i < 3; ++i) {
                        for (int c = 0; c < 6; ++c) std::cout << "  " << to_string(w.matrix(i, c));
                        std::cout << "\n";
                    }
                }
            } catch (const WitnessError& e) {
                last = std::string("budget exhausted: ") + e.what();
            }
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        std::cout << std::left << std::setw(8) << r->id << std::right << std::setw(4) << ok << "/" << draws << "  " << ms << " ms"
                  << (last.empty() ? "" : "  " + last) << "\n";
        if (ok != draws) ++bad;
    }
    std::cout << (bad ? "FAIL " : "ok ") << regs.size() - static_cast<std::size_t>(bad) << "/" << regs.size() << " regions\n";
    return bad ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* e = std::getenv("CUBIC_THREADS")) cfg.threads = std::max(1, std::atoi(e));
    if (const char* e = std::getenv("CUBIC_OUT")) cfg.out = e;

    CLI::App app{"moneric and Khovanskii classes of cubic surface Cox rings"};
    app.require_subcommand(1);
    app.add_option("--fan", cfg.fan, "fan data file")->capture_default_str();
    app.add_option("--threads", cfg.threads, "parallelism")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--depth", cfg.depth, "binomial rewriting depth")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--budget", cfg.budget, "witness search budget")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();

    auto* vf = app.add_subcommand("verify-fan", "check the fan file and print the orbit table");

    auto* cl = app.add_subcommand("classify", "refine the maximal cones and collect moneric classes");
    std::vector<std::string> cones;
    bool fvec = false;
    cl->add_option("--cones", cones, "cone types or 'all'")->delimiter(',');
    cl->add_flag("--f-vector", fvec, "also count all faces of the refinement");
    cl->add_flag("--checkpoint", cfg.checkpoint, "reuse per-cone results with the same provenance");

    auto* kh = app.add_subcommand("khovanskii", "lifting test on the orbit representatives");
    std::string input, single;
    kh->add_option("--input", input, "classification JSON (default OUT/classification.json)");
    kh->add_option("--class", single, "one class: 27 monomials, comma separated");

    auto* ee = app.add_subcommand("eeee", "predicted class of phi(a, b) on the EEEE cone");
    std::vector<std::string> params;
    std::string lambda;
    bool wit = false, enumerate = false;
    ee->add_option("--params", params, "a1..a6 b1..b4 (b positive; rationals like 3/2)")->delimiter(',');
    ee->add_option("--lambda0", lambda, "cancellation depth of G6");
    ee->add_flag("--witness", wit, "build and check an exact witness");
    ee->add_flag("--enumerate", enumerate, "classes and orbits of all systems");

    auto* wi = app.add_subcommand("witness", "random witnesses per EEEE system");
    std::string region;
    int draws = 20;
    bool print = false;
    wi->add_option("--region", region, "system id or 'all'");
    wi->add_option("--draws", draws, "samples per system")->check(CLI::PositiveNumber)->capture_default_str();
    wi->add_flag("--print", print, "print the first matrix of each system");

    CLI11_PARSE(app, argc, argv);
    tbb::global_control gc(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(cfg.threads));
    try {
        if (*vf) return cmd_verify_fan(cfg);
        if (*cl) return cmd_classify(cfg, cones, fvec);
        if (*kh) return cmd_khovanskii(cfg, input, single);
        if (*ee) return cmd_eeee(cfg, params, lambda, wit, enumerate);
        if (*wi) return cmd_witness(cfg, region, draws, print);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
