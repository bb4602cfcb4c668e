// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criterion 2 cases are stretch computations; they run under a
// per-case budget (default 120 s, --medium-budget-secs to change) and accept
// either an exact match or an interval that brackets the expected value.

#include <chrono>
#include <cstring>
#include <iostream>
#include <sstream>

#include "relcx/jsonio.hpp"
#include "relcx/witnesses.hpp"

using namespace relcx;

namespace {

int failures = 0;

void line(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": "
              << what;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

GroupSpec preset(const std::string& name, int n, long long q) {
    auto F = field_create_q(q);
    if (name == "PSL") return GroupSpec::SL(n, F);
    if (name == "PGL") return GroupSpec::GL(n, F);
    if (name == "PSigmaL") return GroupSpec::SigmaL(n, F);
    return GroupSpec::GammaL(n, F);
}

struct ExactCase {
    std::string name;
    std::string g;
    int n;
    long long q;
    int m;
    int expected;
};

// ---- criterion 1: small exact values ----
void criterion1(int threads) {
    const std::vector<ExactCase> cases = {
        {"PGL_2(3)/Omega_1", "PGL", 2, 3, 1, 2},
        {"PGL_3(2)/Omega_1", "PGL", 3, 2, 1, 3},
        {"PGL_2(5)/Omega_1", "PGL", 2, 5, 1, 4},
        {"PSigmaL_2(9)/Omega_1", "PSigmaL", 2, 9, 1, 3},
        {"PGL_3(3)/Omega_1", "PGL", 3, 3, 1, 3},
        {"PGL_3(4)/Omega_1", "PGL", 3, 4, 1, 5},
        {"PSL_4(2)/Omega_2", "PSL", 4, 2, 2, 5},
    };
    for (const auto& c : cases) {
        auto start = std::chrono::steady_clock::now();
        ActionHandle act(preset(c.g, c.n, c.q), c.m);
        RCOptions opts;
        opts.threads = threads;
        RCReport rep = rc_compute(act, opts);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream detail;
        detail << "rc=" << (rep.rc ? std::to_string(*rep.rc) : "none") << ", " << secs
               << " s";
        line(1, c.name + " = " + std::to_string(c.expected),
             rep.exact && *rep.rc == c.expected && secs < 60.0, detail.str());
    }
}

// ---- criterion 2: medium values, budget-limited ----
void criterion2(int threads, double budget) {
    const std::vector<ExactCase> cases = {
        {"PSL_3(4)/Omega_1", "PSL", 3, 4, 1, 5},
        {"PSL_4(3)/Omega_2", "PSL", 4, 3, 2, 6},
        {"PGL_4(3)/Omega_2", "PGL", 4, 3, 2, 8},
        {"PGammaL_2(243)/Omega_1", "PGammaL", 2, 243, 1, 5},
        {"PGammaL_4(9)/Omega_1", "PGammaL", 4, 9, 1, 8},    // interval-consistency only
        {"PGammaL_3(64)/Omega_1", "PGammaL", 3, 64, 1, 6},  // interval-consistency only
    };
    for (const auto& c : cases) {
        ActionHandle act(preset(c.g, c.n, c.q), c.m);
        RCOptions opts;
        opts.threads = threads;
        opts.budget_secs = budget;
        RCReport rep = rc_compute(act, opts);
        bool ok;
        std::string detail;
        if (rep.exact) {
            ok = (*rep.rc == c.expected);
            detail = "exact rc=" + std::to_string(*rep.rc);
        } else {
            ok = rep.interval_lo <= c.expected &&
                 (!rep.interval_hi || c.expected <= *rep.interval_hi);
            detail = "interval [" + std::to_string(rep.interval_lo) + "," +
                     (rep.interval_hi ? std::to_string(*rep.interval_hi) : "?") + "]";
        }
        line(2, c.name + " vs " + std::to_string(c.expected), ok, detail);
    }
}

// ---- criterion 3: heights ----
void criterion3(int threads) {
    RCOptions opts;
    opts.threads = threads;
    auto timed_height = [&](const ActionHandle& act, double& secs) {
        auto start = std::chrono::steady_clock::now();
        int h = height_compute(act, opts);
        secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                   .count();
        return h;
    };
    for (long long q : {4, 5, 7}) {
        ActionHandle act(preset("PGL", 2, q), 1);
        double secs = 0;
        int h = timed_height(act, secs);
        line(3, "height(PGL_2(" + std::to_string(q) + ")/Omega_1) = 3",
             h == 3 && secs < 600.0, "height=" + std::to_string(h));
    }
    for (int n : {3, 4}) {
        ActionHandle act(preset("PGL", n, 3), 1);
        double secs = 0;
        int h = timed_height(act, secs);
        line(3, "height(PGL_" + std::to_string(n) + "(3)/Omega_1) = 2n-2",
             h == 2 * n - 2 && secs < 600.0, "height=" + std::to_string(h));
    }
}

// ---- criterion 4: irredundant base bound ----
void criterion4(int threads) {
    RCOptions opts;
    opts.threads = threads;
    for (auto [n, m, q] : {std::tuple<int, int, long long>{4, 2, 2}, {4, 2, 3}}) {
        ActionHandle act(preset("PGL", n, q), m);
        int ib = ibase_compute(act, opts);
        int bound = (m + 1) * n - 2 * m + 1;
        std::ostringstream name;
        name << "ibase(PGL_" << n << "(" << q << ")/Omega_" << m << ") <= " << bound;
        line(4, name.str(), ib <= bound, "ibase=" + std::to_string(ib));
    }
}

// ---- criterion 5: witness grid ----
void criterion5() {
    const std::vector<long long> grid_q = {2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27};
    int built = 0, passed = 0;
    std::vector<std::string> failures_detail;
    auto check = [&](const char* tag, auto&& build) {
        ++built;
        try {
            WitnessPackage pkg = build();
            VerifyReport rep = verify(pkg);
            if (rep.pass()) {
                ++passed;
            } else {
                failures_detail.push_back(std::string(tag) + ": " + rep.statement);
            }
        } catch (const std::exception& e) {
            failures_detail.push_back(std::string(tag) + ": " + e.what());
        }
    };

    for (long long q : grid_q) {
        auto F = field_create_q(q);
        for (int n = 2; n <= 6; ++n) {
            check("general-n", [&] { return w_general_n(n, F, GroupSpec::SL(n, F)); });
            check("general-n", [&] { return w_general_n(n, F, GroupSpec::GammaL(n, F)); });
        }
        // n = 2 lemma
        if (q >= 8) {
            if (q % 2 == 0) {
                check("n2-case-a", [&] { return w_n2_case_a(F, GroupSpec::SL(2, F)); });
                check("n2-case-a", [&] { return w_n2_case_a(F, GroupSpec::GammaL(2, F)); });
            } else {
                check("n2-case-a", [&] { return w_n2_case_a(F, GroupSpec::GL(2, F)); });
                check("n2-case-a", [&] { return w_n2_case_a(F, GroupSpec::GammaL(2, F)); });
            }
            if (q % 2 == 1 && q > 9) {
                check("n2-case-b", [&] { return w_n2_case_b(F, GroupSpec::SL(2, F)); });
                if (F->f() > 1)
                    check("n2-case-b",
                          [&] { return w_n2_case_b(F, GroupSpec::SigmaL(2, F)); });
            }
        }
        // explicit-generator coset over GF(9)
        if (q == 9) {
            check("n2-case-a", [&] {
                Mat d = Mat::diag(F, {F->omega(), 1});
                auto H = GroupSpec::from_generators(2, F, {SemilinearElem{d, 1}});
                return w_n2_case_a(F, H);
            });
        }
        if ((q - 1) % 3 == 0 && q >= 7) {
            check("psl3", [&] { return w_psl3(F, GroupSpec::SL(3, F)); });
            check("psl3", [&] { return w_psl3(F, GroupSpec::GL(3, F)); });
            if (F->f() > 1)
                check("psl3", [&] { return w_psl3(F, GroupSpec::GammaL(3, F)); });
        }
        for (int n = 3; n <= 6; ++n) {
            if (q >= 4) check("gl-lower", [&] { return w_gl_lower(n, F); });
            if (F->f() > 1) {
                check("gammal", [&] { return w_gammal(n, F, 1); });
                if (F->f() == 4) check("gammal", [&] { return w_gammal(n, F, 2); });
            }
        }
        for (int n = 4; n <= 6; ++n) {
            if (F->f() > 1)
                check("general-np2",
                      [&] { return w_general_np2(n, F, GroupSpec::SigmaL(n, F)); });
            if (q >= 3) {
                if (psl_lower_alpha(GroupSpec::SL(n, F)))
                    check("psl-lower",
                          [&] { return w_psl_lower(n, F, GroupSpec::SL(n, F)); });
                if (F->f() > 1 && psl_lower_alpha(GroupSpec::SigmaL(n, F)))
                    check("psl-lower",
                          [&] { return w_psl_lower(n, F, GroupSpec::SigmaL(n, F)); });
            }
        }
        for (auto [n, m] : {std::pair<int, int>{4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
            check("mspaces", [&] { return w_mspaces(n, m, F, GroupSpec::SL(n, F)); });
            if (F->f() > 1)
                check("mspaces",
                      [&] { return w_mspaces(n, m, F, GroupSpec::GammaL(n, F)); });
        }
    }
    std::ostringstream detail;
    detail << passed << "/" << built << " packages";
    for (size_t i = 0; i < failures_detail.size() && i < 5; ++i)
        detail << "; " << failures_detail[i];
    line(5, "witness grid verifies", passed == built, detail.str());
}

// ---- criterion 6: oracle equivalence ----
void criterion6() {
    struct Small {
        std::string name;
        GroupSpec H;
    };
    auto F2 = field_create(2, 1);
    auto F3 = field_create(3, 1);
    auto F4 = field_create(2, 2);
    auto F5 = field_create(5, 1);
    auto F7 = field_create(7, 1);
    auto F8 = field_create(2, 3);
    auto F9 = field_create(3, 2);
    std::vector<Small> cases;
    cases.push_back({"PGL_2(3)", GroupSpec::GL(2, F3)});
    cases.push_back({"PSL_2(3)", GroupSpec::SL(2, F3)});
    cases.push_back({"PGL_2(4)", GroupSpec::GL(2, F4)});
    cases.push_back({"PGammaL_2(4)", GroupSpec::GammaL(2, F4)});
    cases.push_back({"PGL_2(5)", GroupSpec::GL(2, F5)});
    cases.push_back({"PSL_2(5)", GroupSpec::SL(2, F5)});
    cases.push_back({"PGL_2(7)", GroupSpec::GL(2, F7)});
    cases.push_back({"PSL_2(7)", GroupSpec::SL(2, F7)});
    cases.push_back({"PGL_2(8)", GroupSpec::GL(2, F8)});
    cases.push_back({"PGammaL_2(8)", GroupSpec::GammaL(2, F8)});
    cases.push_back({"PSL_2(9)", GroupSpec::SL(2, F9)});
    cases.push_back({"PSigmaL_2(9)", GroupSpec::SigmaL(2, F9)});
    cases.push_back({"PGL_2(9)", GroupSpec::GL(2, F9)});
    cases.push_back({"PGammaL_2(9)", GroupSpec::GammaL(2, F9)});
    bool all = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        ActionHandle act(c.H, 1);
        if (act.num_points() > 10 || act.perm_group().order > 10000) continue;
        RCReport rep = rc_compute(act);
        int oracle = rc_bruteforce(act, *rep.height + 1);
        if (!(rep.exact && *rep.rc == oracle)) {
            all = false;
            detail << c.name << " rc=" << (rep.rc ? *rep.rc : -1) << " oracle=" << oracle
                   << "; ";
        }
    }
    // calibration actions through both routes
    {
        Perm swap = Perm::identity(2);
        swap.img = {1, 0};
        PermGroup s2 = make_perm_group(2, {swap});
        SearchResult r = rc_height_search(s2);
        if (rc_bruteforce(s2, r.height + 1) != r.best_k) {
            all = false;
            detail << "S_2 calibration; ";
        }
        PermGroup trivial = make_perm_group(2, {});
        SearchResult rt = rc_height_search(trivial);
        if (!(rt.best_k == 1 && rc_bruteforce(trivial, 3) == 1)) {
            all = false;
            detail << "trivial calibration; ";
        }
    }
    line(6, "rc_compute = rc_bruteforce on tiny actions", all, detail.str());
}

// ---- criterion 7: consistency laws ----
void criterion7(int threads) {
    struct Case {
        std::string g;
        int n;
        long long q;
        int m;
    };
    const std::vector<Case> cases = {
        {"PGL", 2, 3, 1}, {"PGL", 3, 2, 1}, {"PGL", 2, 5, 1}, {"PSigmaL", 2, 9, 1},
        {"PGL", 3, 3, 1}, {"PGL", 3, 4, 1}, {"PSL", 4, 2, 2}, {"PGammaL", 2, 9, 1},
        {"PSL", 2, 7, 1}, {"PGL", 2, 8, 1},
    };
    bool all = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        ActionHandle act(preset(c.g, c.n, c.q), c.m);
        RCOptions opts;
        opts.threads = threads;
        opts.compute_ibase = true;
        RCReport rep = rc_compute(act, opts);
        bool ok = rep.exact && rep.height && rep.ibase;
        if (ok) {
            ok = (*rep.rc <= *rep.height + 1) && (*rep.height <= *rep.ibase) &&
                 rep.bounds.contains(*rep.rc) &&
                 (!rep.witness || rep.witness->k() == *rep.rc);
        }
        if (ok && rep.witness) {
            // the witness-claimed lower bound is the rc itself
            ok = rep.witness->k() <= *rep.rc;
        }
        if (!ok) {
            all = false;
            detail << c.g << "_" << c.n << "(" << c.q << ")/m=" << c.m << "; ";
        }
    }
    line(7, "rc <= height+1 <= ibase+1, rc within bounds, witnesses consistent", all,
         detail.str());
}

// ---- criterion 8: determinism across thread counts ----
void criterion8() {
    const std::vector<ExactCase> cases = {
        {"PGL_2(3)/Omega_1", "PGL", 2, 3, 1, 2},
        {"PGL_3(2)/Omega_1", "PGL", 3, 2, 1, 3},
        {"PGL_2(5)/Omega_1", "PGL", 2, 5, 1, 4},
        {"PSigmaL_2(9)/Omega_1", "PSigmaL", 2, 9, 1, 3},
        {"PGL_3(3)/Omega_1", "PGL", 3, 3, 1, 3},
        {"PGL_3(4)/Omega_1", "PGL", 3, 4, 1, 5},
        {"PSL_4(2)/Omega_2", "PSL", 4, 2, 2, 5},
    };
    bool all = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        ActionHandle act(preset(c.g, c.n, c.q), c.m);
        std::string dumps[3];
        int idx = 0;
        for (int threads : {1, 4, 16}) {
            RCOptions opts;
            opts.threads = threads;
            opts.compute_ibase = true;
            dumps[idx++] = report_to_json(rc_compute(act, opts)).dump();
        }
        if (!(dumps[0] == dumps[1] && dumps[1] == dumps[2])) {
            all = false;
            detail << c.name << "; ";
        }
    }
    line(8, "byte-identical reports across 1/4/16 threads", all, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    double medium_budget = 120.0;
    int threads = 2;
    bool skip_medium = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--medium-budget-secs") == 0 && i + 1 < argc)
            medium_budget = std::stod(argv[++i]);
        else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            threads = std::stoi(argv[++i]);
        else if (std::strcmp(argv[i], "--skip-medium") == 0)
            skip_medium = true;
    }

    criterion1(threads);
    if (!skip_medium) criterion2(threads, medium_budget);
    criterion3(threads);
    criterion4(threads);
    criterion5();
    criterion6();
    criterion7(threads);
    criterion8();

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: ")
              << (failures == 0 ? "" : std::to_string(failures)) << std::endl;
    return failures == 0 ? 0 : 1;
}
