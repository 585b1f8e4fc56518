// Acceptance run: one line per criterion, exact arithmetic throughout.
// Usage: acceptance [criterion numbers...]   (default: all of 1..11)

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qh/cohomology.hpp"
#include "qh/double.hpp"
#include "qh/majid.hpp"
#include "qh/qusl2.hpp"

using namespace qh;

namespace {

using PS = std::pair<uint32_t, uint32_t>;

struct Outcome {
    bool pass = true;
    std::string summary;
    std::string failure;

    void fold(const std::string& label, const Report& r) {
        if (!r.ok() && pass) failure = label + " " + r.first_failure();
        pass = pass && r.ok();
    }
    void require(const std::string& label, bool ok, const std::string& why = "") {
        if (!ok && pass) failure = label + (why.empty() ? "" : " " + why);
        pass = pass && ok;
    }
};

std::string ps(PS p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; }

const DoubleAlgebra& double_of(PS p) {
    static std::map<PS, std::unique_ptr<DoubleAlgebra>> cache;
    auto& slot = cache[p];
    if (!slot) slot = make_double(Params(p.first, p.second));
    return *slot;
}

const QuslBuild& qusl_of(PS p) {
    static std::map<PS, std::unique_ptr<QuslBuild>> cache;
    auto& slot = cache[p];
    if (!slot) slot = std::make_unique<QuslBuild>(build_qusl2(Params(p.first, p.second)));
    return *slot;
}

Report axioms(const QuasiHopfData& H, const CheckOptions& o) {
    Report r = check_quasi_bialgebra(H, o);
    r.append(check_antipode(H, o));
    return r;
}

Outcome c1() {
    Outcome o;
    for (PS p : {PS{2, 1}, PS{3, 1}, PS{4, 2}, PS{4, 1}, PS{6, 3}}) {
        Ansq A = build_ansq(Params(p.first, p.second));
        o.fold(ps(p), axioms(A.H, {}));
    }
    o.summary = "A(n,s,q) quasi-Hopf axioms at (2,1) (3,1) (4,2) (4,1) (6,3)";
    return o;
}

Outcome c2() {
    Outcome o;
    for (PS p : {PS{2, 1}, PS{3, 1}}) {
        Params pr(p.first, p.second);
        Ansq A = build_ansq(pr);
        MajidData M = build_mnsq(pr);
        Report r = duality_iso(A, M);
        o.fold(ps(p), r);
        o.require(ps(p) + " pairing_rank", r.find("pairing_rank") != nullptr, "missing");
    }
    o.summary = "pairing A x M compatible, rank n^3/s, at (2,1) (3,1)";
    return o;
}

Outcome c3() {
    Outcome o;
    for (PS p : {PS{2, 1}, PS{3, 1}}) o.fold(ps(p), check_majid_axioms(build_mnsq(Params(p.first, p.second))));
    o.summary = "M(n,s,q) Majid axioms exhaustive at (2,1) (3,1)";
    return o;
}

const std::vector<PS> kDoubleParams{{2, 1}, {3, 1}, {4, 2}};

Outcome c4() {
    Outcome o;
    for (PS p : kDoubleParams) o.fold(ps(p), verify_lemma_closed_forms(double_of(p)));
    o.summary = "gamma, f, chi, omega equal their closed forms at (2,1) (3,1) (4,2)";
    return o;
}

Outcome c5() {
    Outcome o;
    for (PS p : kDoubleParams) o.fold(ps(p), verify_double_relations(double_of(p)));
    o.summary = "relations, power laws, nilpotency and commutator in D at (2,1) (3,1) (4,2)";
    return o;
}

Outcome c6() {
    Outcome o;
    for (PS p : kDoubleParams) o.fold(ps(p), verify_double_coalgebra(double_of(p)));
    o.summary = "comultiplication, counit and antipode formulas in D at (2,1) (3,1) (4,2)";
    return o;
}

Outcome c7() {
    Outcome o;
    for (PS p : {PS{2, 1}, PS{3, 1}}) {
        const QuslBuild& B = qusl_of(p);
        o.fold(ps(p) + " build", B.report);
        Report r = psi_iso(B.Q, double_of(p));
        o.fold(ps(p), r);
        auto* am = r.find("algebra_morphism");
        o.require(ps(p) + " algebra_morphism exhaustive",
                  am && am->detail.is_object() && am->detail.value("mode", "") == "exhaustive",
                  am ? am->detail.dump() : "missing");
    }
    o.summary = "Psi: Q_s u_q(sl2) -> D(A(n,s,q)) is a quasi-Hopf isomorphism at (2,1) (3,1)";
    return o;
}

Outcome c8() {
    Outcome o;
    o.fold("(2,1)", axioms(double_of({2, 1}).D, {}));
    const DoubleAlgebra& X = double_of({3, 1});
    o.fold("(3,1)", axioms(X.D, double_check_options(X)));
    o.summary = "D(A(n,s,q)) quasi-Hopf axioms incl. pentagon at (2,1) (3,1)";
    return o;
}

Outcome c9() {
    Outcome o;
    TwistCheck T = trivializing_twist(3, &double_of({3, 1}));
    o.fold("n=3", T.report);
    for (const char* name : {"phi_trivial", "coassociative", "double.phi_trivial"})
        o.require(name, T.report.find(name) != nullptr, "missing");
    o.summary = "n=3: Phi_{J^-1} = 1 (x) 1 (x) 1 and Delta_{J^-1} coassociative";
    return o;
}

Outcome c10() {
    Outcome o;
    for (PS p : {PS{2, 1}, PS{4, 1}, PS{4, 2}, PS{8, 2}}) {
        Qusl K = qusl_skeleton(Params(p.first, p.second));
        Restriction R = restrict_reassociator(K, sign_character(K.p));
        o.fold(ps(p), R.report);
        CoboundaryResult c = is_coboundary(R.table);
        o.require(ps(p) + " restricted cocycle", !c.yes, "is a coboundary");
    }
    std::mt19937_64 rng(2024);
    for (uint32_t m = 1; m <= 6; ++m) {
        o.require("standard_cocycle(" + std::to_string(m) + ",0)", is_coboundary(standard_cocycle(m, 0)).yes);
        for (int t = 0; t < 20; ++t) {
            Cochain2 b(m * m);
            for (auto& x : b) x = Rational(int64_t(rng() % 60), 60);
            o.require("db on Z_" + std::to_string(m), is_coboundary(coboundary(m, b)).yes);
        }
        for (uint32_t a = 0; a < m; ++a)
            o.require("class of standard_cocycle(" + std::to_string(m) + "," + std::to_string(a) + ")",
                      cocycle_class(standard_cocycle(m, a)) == a);
    }
    o.summary = "restricted cocycle not a coboundary at (2,1) (4,1) (4,2) (8,2); solver sanity on Z_m, m<=6";
    return o;
}

// binom(l+m, l)_h as prod_{i=1..l} (1 - h^{m+i}) / (1 - h^i), when no factor of the denominator vanishes
std::optional<CycloNum> q_binomial_product(uint32_t l, uint32_t m, const CycloNum& h) {
    const uint32_t N = h.order();
    CycloNum num = CycloNum::one(N), den = CycloNum::one(N);
    for (uint32_t i = 1; i <= l; ++i) {
        CycloNum d = CycloNum::one(N) - h.pow(i);
        if (d.is_zero()) return std::nullopt;
        num *= CycloNum::one(N) - h.pow(m + i);
        den *= d;
    }
    return num / den;
}

Outcome c11() {
    Outcome o;
    size_t compared = 0;
    for (uint32_t N = 1; N <= 12; ++N)
        for (uint32_t t = 0; t < N; ++t) {
            CycloNum h = CycloNum::root(N, t);
            for (uint32_t l = 0; l <= 6; ++l)
                for (uint32_t m = 0; m <= 6; ++m) {
                    auto prod = q_binomial_product(l, m, h);
                    if (!prod) continue;
                    ++compared;
                    o.require("q_binomial", q_binomial(l, m, h) == *prod,
                              "N=" + std::to_string(N) + " t=" + std::to_string(t) + " l=" + std::to_string(l) +
                                  " m=" + std::to_string(m));
                }
        }
    for (int64_t n = 2; n <= 8; ++n)
        for (int64_t i = 0; i < 3 * n; ++i)
            for (int64_t j = 0; j < 3 * n; ++j)
                o.require("floor identity", floor_frac(i + qh::remainder(j, n), n) == floor_frac(i + j, n) - floor_frac(j, n),
                          "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));

    // every associative algebra built above; all have dim <= 1024, so every check is exhaustive
    std::vector<std::string> modes;
    auto assoc = [&](const std::string& label, const QuasiHopfData& H, CheckOptions opt) {
        CheckRecord r = check_associativity(*H.mult, opt);
        std::string mode = r.detail.is_object() ? r.detail.value("mode", std::string("exhaustive")) : "exhaustive";
        if (r.detail.is_object() && r.detail.contains("basis")) mode += "/" + r.detail["basis"].get<std::string>();
        modes.push_back(label + ":" + mode);
        o.require(label + " associativity", r.status == Status::pass, r.witness);
        o.require(label + " associativity exhaustive", H.dim > 1024 || mode.rfind("exhaustive", 0) == 0, mode);
    };
    for (PS p : {PS{2, 1}, PS{3, 1}, PS{4, 2}, PS{4, 1}, PS{6, 3}})
        assoc("A" + ps(p), build_ansq(Params(p.first, p.second)).H, {});
    for (PS p : kDoubleParams) assoc("D" + ps(p), double_of(p).D, double_check_options(double_of(p)));
    for (PS p : {PS{2, 1}, PS{3, 1}}) assoc("Q" + ps(p), qusl_of(p).Q.H, qusl_check_options(qusl_of(p).Q));
    o.summary = "q-binomial (" + std::to_string(compared) + " cases), floor identity n<=8, associativity of " +
                std::to_string(modes.size()) + " algebras";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    bool all = true;
    for (int k = 1; k <= int(criteria.size()); ++k) {
        if (!selected.empty() && !selected.count(k)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.failure = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s  (%.1f s)\n", k, o.pass ? "PASS" : "FAIL", o.summary.c_str(), sec);
        if (!o.pass) std::printf("    %s\n", o.failure.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
