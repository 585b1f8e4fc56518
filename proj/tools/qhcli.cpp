// qhcli: build the algebras, run the verification suites and the cohomology
// pipeline from the command line. Reports are JSON on stdout or --out.
//
// Exit codes: 0 every selected check passed, 1 some check failed, 2 usage or
// parameter error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "qh/cohomology.hpp"
#include "qh/double.hpp"
#include "qh/majid.hpp"
#include "qh/qusl2.hpp"

using namespace qh;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    uint32_t n = 2, s = 1;
    std::string target = "axioms";
    std::string algebra = "ansq";
    std::string mode = "class";
    uint32_t m = 2;
    int64_t a = 1;
    std::string out;
    uint64_t seed = 1;
    uint64_t max_dim = 1024;
    unsigned jobs = 1;
    bool timing = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json mnsq_json(const MajidData& M) {
    json j;
    j["name"] = "mnsq";
    j["dim"] = M.dim;
    j["field_order"] = M.order;
    j["labels"] = M.labels;
    json mult = json::array();
    for (uint32_t a = 0; a < M.dim; ++a)
        for (uint32_t b = 0; b < M.dim; ++b)
            for (auto& [k, c] : (*M.mult)(a, b)) mult.push_back({a, b, k, c.str()});
    j["mult"] = mult;
    json comult = json::array();
    for (uint32_t a = 0; a < M.dim; ++a)
        for (auto& [k, c] : M.comult.images[a].entries())
            comult.push_back({a, static_cast<uint32_t>(k / M.dim), static_cast<uint32_t>(k % M.dim), c.str()});
    j["comult"] = comult;
    json counit = json::array();
    for (auto& c : M.counit) counit.push_back(c.str());
    j["counit"] = counit;
    j["reassociator"] = M.Phi.to_json();
    json S = json::array();
    for (uint32_t a = 0; a < M.dim; ++a)
        for (auto& [k, c] : M.antipode.images[a].entries()) S.push_back({a, static_cast<uint32_t>(k), c.str()});
    j["antipode"] = S;
    json al = json::array(), be = json::array();
    for (auto& c : M.alpha) al.push_back(c.str());
    for (auto& c : M.beta) be.push_back(c.str());
    j["alpha"] = al;
    j["beta"] = be;
    return j;
}

Params checked_params(const RunConfig& cfg) {
    try {
        return Params(cfg.n, cfg.s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

CheckOptions options_for(const RunConfig& cfg, CheckOptions o) {
    o.seed = cfg.seed;
    o.max_exhaustive_dim = std::min(o.max_exhaustive_dim, cfg.max_dim);
    o.max_literal_pair_dim = std::min(o.max_literal_pair_dim, cfg.max_dim);
    o.max_triple_dim = std::min(o.max_triple_dim, cfg.max_dim);
    return o;
}

void guard_dim(uint64_t dim, const RunConfig& cfg, const std::string& what) {
    if (dim > cfg.max_dim)
        throw UsageError(what + " has dimension " + std::to_string(dim) + ", above --max-dim " +
                         std::to_string(cfg.max_dim));
}

Report axioms(const QuasiHopfData& H, const CheckOptions& o) {
    Report r;
    r.append(check_quasi_bialgebra(H, o));
    r.append(check_antipode(H, o));
    return r;
}

// Records whether checks past the dimension guard were sampled instead of exhaustive.
void note_sampling(json& payload, uint64_t dim, const CheckOptions& o) {
    if (dim > o.max_triple_dim) payload["associativity_samples"] = o.samples;
    payload["sampled"] = dim > o.max_triple_dim || (dim > o.max_literal_pair_dim && o.generators.empty());
}

Report cmd_build(const RunConfig& cfg, json& payload) {
    Params p = checked_params(cfg);
    Report r;
    if (cfg.algebra == "ansq") {
        Ansq A = build_ansq(p);
        CheckOptions o = options_for(cfg, {});
        r = axioms(A.H, o);
        note_sampling(payload, A.H.dim, o);
        payload["object"] = algebra_json(A.H);
    } else if (cfg.algebra == "mnsq") {
        MajidData M = build_mnsq(p);
        r = check_majid_axioms(M);
        payload["object"] = mnsq_json(M);
    } else if (cfg.algebra == "double") {
        guard_dim(uint64_t(p.dim()) * p.dim(), cfg, "double");
        auto X = make_double(p);
        r.append(verify_double_relations(*X), "relations");
        r.append(verify_double_coalgebra(*X), "coalgebra");
        payload["object"] = algebra_json(X->D);
    } else if (cfg.algebra == "qusl2") {
        guard_dim(uint64_t(p.dim()) * p.dim(), cfg, "qusl2");
        QuslBuild B = build_qusl2(p);
        r = B.report;
        payload["object"] = algebra_json(B.Q.H);
    } else {
        throw UsageError("unknown algebra '" + cfg.algebra + "' (ansq, mnsq, double, qusl2)");
    }
    return r;
}

Report cmd_verify(const RunConfig& cfg, json& payload) {
    Params p = checked_params(cfg);
    const std::string& t = cfg.target;
    const uint64_t ddim = uint64_t(p.dim()) * p.dim();
    if (t == "axioms") {
        if (cfg.algebra == "ansq") {
            Ansq A = build_ansq(p);
            CheckOptions o = options_for(cfg, {});
            note_sampling(payload, A.H.dim, o);
            return axioms(A.H, o);
        }
        if (cfg.algebra == "double") {
            auto X = make_double(p);
            CheckOptions o = options_for(cfg, double_check_options(*X, cfg.seed));
            note_sampling(payload, X->D.dim, o);
            return axioms(X->D, o);
        }
        if (cfg.algebra == "qusl2") {
            guard_dim(ddim, cfg, "qusl2");
            QuslBuild B = build_qusl2(p);
            CheckOptions o = options_for(cfg, qusl_check_options(B.Q, cfg.seed));
            note_sampling(payload, B.Q.H.dim, o);
            Report r = B.report;
            r.append(axioms(B.Q.H, o));
            return r;
        }
        throw UsageError("axioms runs on ansq, double or qusl2");
    }
    if (t == "majid") return check_majid_axioms(build_mnsq(p));
    if (t == "duality") {
        Ansq A = build_ansq(p);
        return duality_iso(A, build_mnsq(p));
    }
    if (t == "lemma33" || t == "prop34" || t == "prop35" || t == "thm31") {
        auto X = make_double(p);
        if (t == "lemma33") return verify_lemma_closed_forms(*X);
        if (t == "prop34") return verify_double_relations(*X);
        if (t == "prop35") return verify_double_coalgebra(*X);
        guard_dim(ddim, cfg, "qusl2");
        QuslBuild B = build_qusl2(p);
        PsiOptions po;
        po.seed = cfg.seed;
        po.max_exhaustive_dim = std::min<uint64_t>(po.max_exhaustive_dim, cfg.max_dim);
        Report r = B.report;
        r.append(psi_iso(B.Q, *X, po), "psi");
        return r;
    }
    throw UsageError("unknown target '" + t + "' (axioms, lemma33, prop34, prop35, thm31, duality, majid)");
}

Report cmd_twist(const RunConfig& cfg, json& payload) {
    if (cfg.n % 2 == 0) throw UsageError("twist needs odd n");
    guard_dim(uint64_t(cfg.n) * cfg.n * cfg.n * cfg.n * cfg.n * cfg.n, cfg, "Q_1 u_q(sl2)");
    auto X = make_double(Params(cfg.n, 1));
    TwistCheck T = trivializing_twist(cfg.n, X.get());
    const bool trivial = T.report.find("phi_trivial") && T.report.find("phi_trivial")->status == Status::pass;
    payload["claim"] = "Phi_{J^-1} = 1 (x) 1 (x) 1";
    payload["phi_trivial"] = trivial;
    payload["J"] = T.J.to_json();
    payload["J_double"] = T.J_double.to_json();
    return T.report;
}

bool even_gap(uint32_t n, uint32_t s) {
    auto v2 = [](uint32_t x) { return std::countr_zero(x); };
    return n % 2 == 0 && v2(s) < v2(n);
}

Report cmd_cohomology(const RunConfig& cfg, json& payload) {
    Report r;
    if (cfg.mode == "class" || cfg.mode == "coboundary") {
        if (cfg.m == 0 || cfg.m > 12) throw UsageError("--m must be in 1..12");
        CocycleExponents e = standard_cocycle(cfg.m, cfg.a);
        r.add(run_check("is_cocycle", [&] { return is_cocycle(e); }));
        if (cfg.mode == "class") {
            uint32_t c = cocycle_class(e);
            payload["class"] = c;
            const uint32_t want = static_cast<uint32_t>(remainder(cfg.a, cfg.m));
            r.add(run_check("class_matches_parameter", [&]() -> std::string {
                return c == want ? "" : "class " + std::to_string(c) + " for a = " + std::to_string(want);
            }));
        } else {
            CoboundaryResult res = is_coboundary(e);
            payload["coboundary"] = res.yes;
            if (res.yes) {
                json b = json::array();
                for (auto& x : res.b) b.push_back(x.str());
                payload["primitive"] = b;
            } else {
                json u = json::object();
                for (auto& [k, v] : res.certificate) u[std::to_string(k)] = v.get_str();
                payload["certificate"] = {{"row", u}, {"pairing", res.pairing.str()}};
            }
            // the standard cocycle is a coboundary exactly when m | a
            const bool expect = remainder(cfg.a, cfg.m) == 0;
            r.add(run_check("agrees_with_class", [&]() -> std::string {
                return res.yes == expect ? "" : "solver says " + std::string(res.yes ? "yes" : "no");
            }));
        }
        payload["cocycle"] = e.to_json();
        return r;
    }
    if (cfg.mode == "restrict") {
        Params p = checked_params(cfg);
        if (!even_gap(p.n, p.s)) throw UsageError("restrict needs even n with val2(s) < val2(n)");
        Qusl K = qusl_skeleton(p);
        Restriction R = restrict_reassociator(K, sign_character(p));
        r = R.report;
        if (!r.ok()) return r;
        CoboundaryResult res = is_coboundary(R.table);
        payload["coboundary"] = res.yes;
        payload["verdict"] = res.yes ? "coboundary" : "not a coboundary";
        payload["class"] = cocycle_class(R.table);
        payload["restricted_cocycle"] = R.table.to_json();
        if (!res.yes) {
            json u = json::object();
            for (auto& [k, v] : res.certificate) u[std::to_string(k)] = v.get_str();
            payload["certificate"] = {{"row", u}, {"pairing", res.pairing.str()}};
        }
        r.add(run_check("not_a_coboundary", [&]() -> std::string {
            return res.yes ? "solver found a primitive" : "";
        }));
        return r;
    }
    throw UsageError("unknown mode '" + cfg.mode + "' (class, coboundary, restrict)");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Exact verification of quasi-Hopf algebras at roots of unity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    auto common = [&](CLI::App* sc) {
        sc->add_option("--n", cfg.n, "n");
        sc->add_option("--s", cfg.s, "s, a divisor of n");
        sc->add_option("--out", cfg.out, "write the report here instead of stdout");
        sc->add_option("--seed", cfg.seed, "seed for every sampled check");
        sc->add_option("--max-dim", cfg.max_dim, "largest dimension checked exhaustively");
        sc->add_option("--jobs", cfg.jobs, "parallelism degree (recorded; suites run in order)");
        sc->add_flag("--timing", cfg.timing, "include wall time per check");
    };
    CLI::App* build = app.add_subcommand("build", "construct an algebra and dump it");
    common(build);
    build->add_option("algebra", cfg.algebra, "ansq, mnsq, double or qusl2")->required();
    CLI::App* verify = app.add_subcommand("verify", "run one verification suite");
    common(verify);
    verify->add_option("--target", cfg.target, "axioms, lemma33, prop34, prop35, thm31, duality, majid");
    verify->add_option("--algebra", cfg.algebra, "algebra for the axioms target: ansq, double or qusl2");
    CLI::App* tw = app.add_subcommand("twist", "the trivializing twist for odd n");
    common(tw);
    CLI::App* co = app.add_subcommand("cohomology", "3-cocycles on cyclic groups");
    common(co);
    co->add_option("--mode", cfg.mode, "class, coboundary or restrict");
    co->add_option("--m", cfg.m, "group order");
    co->add_option("--a", cfg.a, "parameter of the standard cocycle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    json payload;
    Report report;
    try {
        if (*build) cfg.command = "build", report = cmd_build(cfg, payload);
        else if (*verify) cfg.command = "verify", report = cmd_verify(cfg, payload);
        else if (*tw) cfg.command = "twist", report = cmd_twist(cfg, payload);
        else cfg.command = "cohomology", report = cmd_cohomology(cfg, payload);
    } catch (const UsageError& e) {
        std::cerr << "qhcli: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        report.add({"run", Status::fail, e.what(), {}, 0.0});
    }

    std::stable_sort(report.checks.begin(), report.checks.end(),
                     [](const CheckRecord& x, const CheckRecord& y) { return x.name < y.name; });
    json doc;
    doc["tool"] = "qhcli";
    doc["version"] = kVersion;
    doc["command"] = cfg.command;
    json params{{"n", cfg.n}, {"s", cfg.s}, {"seed", cfg.seed}, {"max_dim", cfg.max_dim}, {"jobs", cfg.jobs}};
    if (cfg.command == "build") params["algebra"] = cfg.algebra;
    if (cfg.command == "verify") params["target"] = cfg.target, params["algebra"] = cfg.algebra;
    if (cfg.command == "cohomology") params["mode"] = cfg.mode, params["m"] = cfg.m, params["a"] = cfg.a;
    doc["params"] = params;
    doc["checks"] = report.to_json(cfg.timing);
    doc["result"] = payload;
    doc["status"] = report.ok() ? "pass" : "fail";

    std::string text = doc.dump(1) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "qhcli: cannot write " << cfg.out << "\n";
            return 2;
        }
        f << text;
    }
    return report.ok() ? 0 : 1;
}
