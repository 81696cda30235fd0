// tavkit: twisted Alexander polynomial toolkit CLI.
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tav/harness.hpp"

using nlohmann::json;
using namespace tav;

namespace {

struct RunConfig {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    bool json_out = false;
    unsigned order_cap = 2000;
    double timeout = 0.0;  // seconds per job; 0 = none
};

WirtingerPresentation load_knot(const std::string& arg) {
    for (const auto& n : builtin_knot_names())
        if (n == arg) return builtin_knot(arg);
    std::ifstream in(arg);
    if (!in) throw KnotError("unknown knot name and unreadable file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return knot_from_json(ss.str());
}

json report_json(const VerificationReport& r) {
    json j{{"claim", r.claim},   {"inputs", r.inputs},
           {"lhs", r.lhs},       {"rhs", r.rhs},
           {"unit", r.unit},     {"status", r.pass ? "pass" : "fail"},
           {"seconds", r.seconds}};
    if (!r.stages.empty()) {
        j["stages"] = json::array();
        for (const auto& s : r.stages) j["stages"].push_back(report_json(s));
    }
    return j;
}

void print_report(const VerificationReport& r, const RunConfig& cfg) {
    if (cfg.json_out) {
        std::cout << report_json(r).dump(2) << "\n";
        return;
    }
    std::cout << "claim:  " << r.claim << "\n"
              << "inputs: " << r.inputs << "\n"
              << "lhs:    " << r.lhs << "\n"
              << "rhs:    " << r.rhs << "\n"
              << "unit:   " << r.unit << "\n"
              << "status: " << (r.pass ? "pass" : "fail") << "\n"
              << "time:   " << r.seconds << " s\n";
    for (const auto& s : r.stages)
        std::cout << "  stage " << s.claim << ": "
                  << (s.pass ? "pass" : "fail") << "\n";
}

/// Run a job with an optional wall-clock timeout. Exits 3 on timeout.
template <typename F>
auto run_job(const RunConfig& cfg, F&& fn) -> decltype(fn()) {
    if (cfg.timeout <= 0.0) return fn();
    auto fut = std::async(std::launch::async, std::forward<F>(fn));
    if (fut.wait_for(std::chrono::duration<double>(cfg.timeout)) ==
        std::future_status::timeout) {
        std::cerr << "tavkit: job exceeded " << cfg.timeout << " s\n";
        std::exit(3);
    }
    return fut.get();
}

Subgroup parse_subgroup(const Group& G, const std::string& spec) {
    if (spec == "derived") return commutator_subgroup(G);
    if (spec == "center") return center(G);
    if (spec == "trivial") return Subgroup(G, {0u});
    // comma-separated element labels generating the subgroup
    std::vector<unsigned> gens;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto idx = G->index_of_label(tok);
        if (!idx) throw GroupError("no element labelled '" + tok + "'");
        gens.push_back(*idx);
    }
    return generated_subgroup(G, gens);
}

Ring parse_ring(const std::string& spec) {
    if (spec == "Z") return CoeffRing::integers();
    auto num = [&](std::size_t off) {
        return static_cast<std::uint64_t>(std::stoull(spec.substr(off)));
    };
    if (spec.rfind("Fp:", 0) == 0) return CoeffRing::prime_field(num(3));
    if (spec.rfind("Fq:", 0) == 0) {
        auto comma = spec.find(',');
        if (comma == std::string::npos) throw RingError("Fq:p,d expected");
        return CoeffRing::ext_field(std::stoull(spec.substr(3, comma - 3)),
                                    static_cast<unsigned>(num(comma + 1)));
    }
    if (spec.rfind("cyc:", 0) == 0)
        return CoeffRing::cyclotomic(static_cast<unsigned>(num(4)));
    throw RingError("unknown ring spec: " + spec + " (Z|Fp:p|Fq:p,d|cyc:m)");
}

int run(int argc, char** argv) {
    CLI::App app{"tavkit: exact twisted Alexander polynomials and "
                 "group-extension formula verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.threads = thread_count();
    app.add_option("--threads", cfg.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "RNG seed (logged for reproducibility)");
    app.add_flag("--json", cfg.json_out, "JSON output");
    app.add_option("--cap", cfg.order_cap, "group order cap")
        ->check(CLI::Range(1u, 2000u));
    app.add_option("--timeout", cfg.timeout, "per-job timeout in seconds");

    // knot list | show
    auto* knot = app.add_subcommand("knot", "knot presentations");
    auto* knot_list = knot->add_subcommand("list", "list builtin knots");
    auto* knot_show = knot->add_subcommand("show", "show a presentation");
    std::string knot_name;
    knot_show->add_option("name", knot_name, "builtin name or JSON file")
        ->required();

    // alex
    auto* alex = app.add_subcommand("alex", "Alexander polynomial");
    std::string alex_name;
    alex->add_option("name", alex_name, "builtin name or JSON file")->required();

    // group build
    auto* group = app.add_subcommand("group", "finite groups");
    auto* gbuild = group->add_subcommand("build", "build from a spec");
    std::string gspec;
    bool gtav = false;
    gbuild->add_option("spec", gspec, "group spec DSL")->required();
    gbuild->add_flag("--tav", gtav, "report TAV-group status");

    // epi search
    auto* epi = app.add_subcommand("epi", "epimorphism search");
    auto* esearch = epi->add_subcommand("search", "search G(K) ->> G");
    std::string e_knot, e_group;
    bool e_all = false, e_count = false, e_inner = false;
    esearch->add_option("--knot", e_knot)->required();
    esearch->add_option("--group", e_group)->required();
    esearch->add_flag("--all", e_all, "list all epimorphisms");
    esearch->add_flag("--count", e_count, "print only the count");
    esearch->add_flag("--modulo-inner", e_inner, "collapse conjugate images");

    // tap
    auto* tap = app.add_subcommand("tap", "twisted Alexander polynomial");
    std::string t_knot, t_group, t_rep = "regular", t_ring = "Z";
    int t_col = -1;
    bool t_audit = false;
    tap->add_option("--knot", t_knot)->required();
    tap->add_option("--group", t_group)->required();
    tap->add_option("--rep", t_rep, "regular | coset:<subgroup> | trivial");
    tap->add_option("--ring", t_ring, "Z | Fp:p | Fq:p,d | cyc:m");
    tap->add_option("--column", t_col, "deleted column (0-based)");
    tap->add_flag("--audit-columns", t_audit, "recompute for every column");

    // verify
    auto* verify = app.add_subcommand("verify", "formula verification");
    auto* vmodp = verify->add_subcommand("modp", "mod-p congruence");
    std::string vm_knot, vm_group, vm_sub = "derived";
    vmodp->add_option("--knot", vm_knot)->required();
    vmodp->add_option("--group", vm_group)->required();
    vmodp->add_option("--subgroup", vm_sub,
                      "derived | center | trivial | labels a,b,...");
    auto* vdih = verify->add_subcommand("dihedral", "dihedral formula");
    std::string vd_knot;
    unsigned vd_pn = 3;
    vdih->add_option("--knot", vd_knot)->required();
    vdih->add_option("--pn", vd_pn, "odd prime power p^n")->required();
    auto* vcyc = verify->add_subcommand("cyclic", "cyclic formula");
    std::string vc_knot;
    unsigned vc_m = 2, vc_p = 2;
    vcyc->add_option("--knot", vc_knot)->required();
    vcyc->add_option("--m", vc_m)->required();
    vcyc->add_option("--p", vc_p)->required();
    auto* vcor = verify->add_subcommand("cor37", "composite route");
    std::string v7_knot, v7_group;
    vcor->add_option("--knot", v7_knot)->required();
    vcor->add_option("--group", v7_group)->required();
    auto* vcen = verify->add_subcommand("central", "central-extension product");
    std::string vz_knot, vz_group;
    unsigned vz_k = 2, vz_n = 2;
    vcen->add_option("--knot", vz_knot)->required();
    vcen->add_option("--group", vz_group, "base group G1")->required();
    vcen->add_option("--k", vz_k)->required();
    vcen->add_option("--n", vz_n)->required();

    // tav
    auto* tav_cmd = app.add_subcommand("tav", "TAV membership and scans");
    auto* tcheck = tav_cmd->add_subcommand("check", "membership for (K, G)");
    std::string tc_knot, tc_group;
    tcheck->add_option("--knot", tc_knot)->required();
    tcheck->add_option("--group", tc_group)->required();
    auto* tscan = tav_cmd->add_subcommand("scan", "catalog scan");
    unsigned ts_max = 23;
    std::vector<std::string> ts_corpus = {"3_1", "4_1", "5_1", "5_2",
                                          "6_1", "6_2", "6_3"};
    bool ts_noverify = false;
    tscan->add_option("--max-order", ts_max)->check(CLI::Range(1u, 23u));
    tscan->add_option("--corpus", ts_corpus, "knot corpus");
    tscan->add_flag("--no-verify", ts_noverify, "classification only");
    auto* torder = tav_cmd->add_subcommand("order", "smallest TAV order bound");
    std::string to_knot;
    unsigned to_max = 23;
    torder->add_option("--knot", to_knot)->required();
    torder->add_option("--max-order", to_max);

    // filtration
    auto* filt = app.add_subcommand("filtration", "p-group module filtration");
    std::string f_group;
    unsigned f_p = 2;
    filt->add_option("--group", f_group)->required();
    filt->add_option("--p", f_p)->required();

    // allow the global flags (--json, --threads, ...) after any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (auto* s : a->get_subcommands(nullptr)) allow_fallthrough(s);
    };
    for (auto* s : app.get_subcommands(nullptr)) allow_fallthrough(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    }
    if (cfg.threads >= 1) {
        // flag overrides the TAVKIT_THREADS environment variable
        setenv("TAVKIT_THREADS", std::to_string(cfg.threads).c_str(), 1);
    }

    if (knot_list->parsed()) {
        if (cfg.json_out) {
            std::cout << json(builtin_knot_names()).dump(2) << "\n";
        } else {
            for (const auto& n : builtin_knot_names()) std::cout << n << "\n";
        }
        return 0;
    }
    if (knot_show->parsed()) {
        auto K = load_knot(knot_name);
        json j{{"name", K.name}, {"generators", K.n}};
        j["relators"] = json::array();
        for (const auto& r : K.relators) {
            json w = json::array();
            for (int x : r) {
                std::string s = "s" + std::to_string(std::abs(x));
                if (x < 0) s += "^-1";
                w.push_back(s);
            }
            j["relators"].push_back(w);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (alex->parsed()) {
        auto K = load_knot(alex_name);
        std::cout << alexander_polynomial(K).str() << "\n";
        return 0;
    }
    if (gbuild->parsed()) {
        Group G = build_group(gspec, cfg.order_cap);
        json j{{"name", G->name()},
               {"order", G->order()},
               {"abelian", G->is_abelian()},
               {"derived_order", commutator_subgroup(G).order()},
               {"center_order", center(G).order()}};
        auto [w1, wit] = weight_le_one(G);
        j["weight_le_one"] = w1;
        if (w1 && wit) j["normal_generator"] = G->label(*wit);
        if (gtav) {
            j["tav"] = is_tav_group(G);
            j["seed"] = w1 ? is_seed(G) : false;
        }
        if (cfg.json_out) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (auto& [k, v] : j.items())
                std::cout << k << ": " << v.dump() << "\n";
        }
        return 0;
    }
    if (esearch->parsed()) {
        auto K = load_knot(e_knot);
        Group G = build_group(e_group, cfg.order_cap);
        auto fs = run_job(cfg, [&] {
            return find_epimorphisms(
                K, G, e_all || e_count ? SearchMode::All : SearchMode::First,
                e_inner);
        });
        if (e_count) {
            std::cout << fs.size() << "\n";
            return 0;
        }
        json j = json::array();
        for (const auto& f : fs) {
            json im = json::array();
            for (unsigned g : f.images) im.push_back(G->label(g));
            j.push_back({{"images", im}});
        }
        if (cfg.json_out)
            std::cout << json{{"knot", K.name},
                              {"group", G->name()},
                              {"count", fs.size()},
                              {"epimorphisms", j}}
                             .dump(2)
                      << "\n";
        else {
            std::cout << fs.size() << " epimorphism(s)\n";
            for (const auto& e : j) std::cout << "  " << e.dump() << "\n";
        }
        return 0;
    }
    if (tap->parsed()) {
        auto K = load_knot(t_knot);
        Group G = build_group(t_group, cfg.order_cap);
        Ring R = parse_ring(t_ring);
        auto fs = find_epimorphisms(K, G, SearchMode::First);
        if (fs.empty()) {
            std::cerr << "tavkit: no epimorphism onto " << G->name() << "\n";
            return 2;
        }
        Representation rep = [&] {
            if (t_rep == "regular") return Representation::regular(G, R);
            if (t_rep == "trivial") return Representation::trivial(G, R);
            if (t_rep.rfind("coset:", 0) == 0)
                return Representation::coset(
                    G, parse_subgroup(G, t_rep.substr(6)), R);
            throw GroupError("unknown rep spec: " + t_rep);
        }();
        auto compute = [&](std::optional<unsigned> col) {
            auto t0 = std::chrono::steady_clock::now();
            auto T = twisted_alexander(K, fs[0], rep, col);
            double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            json j{{"knot", K.name},
                   {"group", G->name()},
                   {"ring", t_ring},
                   {"deleted_column", T.deleted_column},
                   {"numerator", T.value.num().str()},
                   {"denominator", T.value.den().str()},
                   {"normalized", T.norm_num.str() + " / " + T.norm_den.str()},
                   {"vanishing", is_vanishing(T)},
                   {"seconds", secs}};
            return j;
        };
        json out;
        if (t_audit) {
            out = json::array();
            for (unsigned c = 0; c < K.n; ++c)
                out.push_back(run_job(cfg, [&] { return compute(c); }));
        } else {
            std::optional<unsigned> col;
            if (t_col >= 0) col = static_cast<unsigned>(t_col);
            out = run_job(cfg, [&] { return compute(col); });
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    auto finish = [&](const VerificationReport& r) {
        print_report(r, cfg);
        return r.pass ? 0 : 1;
    };
    if (vmodp->parsed()) {
        auto K = load_knot(vm_knot);
        Group G = build_group(vm_group, cfg.order_cap);
        auto fs = find_epimorphisms(K, G, SearchMode::First);
        if (fs.empty()) {
            std::cerr << "tavkit: no epimorphism onto " << G->name() << "\n";
            return 2;
        }
        Subgroup H = parse_subgroup(G, vm_sub);
        return finish(run_job(cfg, [&] { return verify_modp(K, fs[0], H); }));
    }
    if (vdih->parsed()) {
        auto K = load_knot(vd_knot);
        return finish(run_job(cfg, [&] { return verify_dihedral(K, vd_pn); }));
    }
    if (vcyc->parsed()) {
        auto K = load_knot(vc_knot);
        return finish(
            run_job(cfg, [&] { return verify_cyclic(K, vc_m, vc_p); }));
    }
    if (vcor->parsed()) {
        auto K = load_knot(v7_knot);
        Group G = build_group(v7_group, cfg.order_cap);
        auto fs = find_epimorphisms(K, G, SearchMode::First);
        if (fs.empty()) {
            std::cerr << "tavkit: no epimorphism onto " << G->name() << "\n";
            return 2;
        }
        return finish(
            run_job(cfg, [&] { return verify_corollary_37(K, fs[0]); }));
    }
    if (vcen->parsed()) {
        auto K = load_knot(vz_knot);
        Group G1 = build_group(vz_group, cfg.order_cap);
        return finish(
            run_job(cfg, [&] { return verify_central(K, G1, vz_k, vz_n); }));
    }
    if (tcheck->parsed()) {
        auto K = load_knot(tc_knot);
        Group G = build_group(tc_group, cfg.order_cap);
        auto [member, wit] = run_job(cfg, [&] { return tav_membership(K, G); });
        json j{{"knot", K.name}, {"group", G->name()}, {"member", member}};
        if (wit) {
            json im = json::array();
            for (unsigned g : wit->images) im.push_back(G->label(g));
            j["witness"] = im;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (tscan->parsed()) {
        auto r = run_job(
            cfg, [&] { return tav_scan(ts_max, ts_corpus, !ts_noverify); });
        json j{{"max_order", ts_max},
               {"total_groups", r.total_groups},
               {"weight_one_groups", r.weight_one_groups},
               {"order18_formulas_coincide", r.formulas_coincide_18},
               {"all_nonvanishing", r.all_nonvanishing},
               {"seed", cfg.seed}};
        j["groups"] = json::array();
        for (const auto& e : r.entries) {
            json je{{"group", e.group},
                    {"order", e.order},
                    {"weight_one", e.weight_one},
                    {"derived_p_group", e.derived_p_group},
                    {"formula", e.formula}};
            je["verifications"] = json::array();
            for (const auto& v : e.verifications)
                je["verifications"].push_back(report_json(v));
            j["groups"].push_back(je);
        }
        if (cfg.json_out) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "groups of order <= " << ts_max << ": "
                      << r.total_groups << "\n"
                      << "weight one: " << r.weight_one_groups << "\n"
                      << "order-18 formulas coincide: "
                      << (r.formulas_coincide_18 ? "yes" : "no") << "\n"
                      << "all verified invariants nonvanishing: "
                      << (r.all_nonvanishing ? "yes" : "no") << "\n";
        }
        bool ok = r.all_nonvanishing;
        for (const auto& e : r.entries)
            for (const auto& v : e.verifications) ok = ok && v.pass;
        return ok ? 0 : 1;
    }
    if (torder->parsed()) {
        auto K = load_knot(to_knot);
        auto r = run_job(cfg, [&] { return tav_order_bounded(K, to_max); });
        json j{{"knot", K.name}, {"note", r.note}};
        if (r.found)
            j["order"] = r.order;
        else
            j["lower_bound"] = r.lower_bound;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (filt->parsed()) {
        Group H = build_group(f_group, cfg.order_cap);
        auto C = run_job(cfg, [&] { return pgroup_filtration(H, f_p); });
        json j{{"group", H->name()}, {"p", C.p}, {"dims", C.dims},
               {"level_dims", C.level_dim}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cerr << "tavkit: no subcommand action\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "tavkit: " << e.what() << "\n";
        return 2;
    }
}
