#include <doctest.h>

#include "relcx/jsonio.hpp"
#include "relcx/witnesses.hpp"

using namespace relcx;

TEST_CASE("general-n packages") {
    auto F3 = field_create(3, 1);
    auto F2 = field_create(2, 1);
    WitnessPackage p1 = w_general_n(3, F3, GroupSpec::SL(3, F3));
    CHECK(p1.k == 3);
    CHECK(verify(p1).pass());

    WitnessPackage p2 = w_general_n(4, F2, GroupSpec::SL(4, F2));
    CHECK(p2.k == 4);
    CHECK(verify(p2).pass());

    // sabotage: replace the first witness with the identity
    p1.witnesses[0] = SemilinearElem::identity(F3, 3);
    VerifyReport bad = verify(p1);
    CHECK_FALSE(bad.pass());
    CHECK_FALSE(bad.maps_ok[0]);
    CHECK(bad.non_equiv_ok);
}

TEST_CASE("n=2 case (a)") {
    auto F8 = field_create(2, 3);
    WitnessPackage p = w_n2_case_a(F8, GroupSpec::SL(2, F8));
    CHECK(p.k == 4);
    CHECK(verify(p).pass());

    // odd q with H outside <Z, SigmaL>
    auto F9 = field_create(3, 2);
    WitnessPackage p2 = w_n2_case_a(F9, GroupSpec::GL(2, F9));
    CHECK(verify(p2).pass());
    WitnessPackage p3 = w_n2_case_a(F9, GroupSpec::GammaL(2, F9));
    CHECK(verify(p3).pass());

    // SL_2(9) sits inside <Z, SigmaL_2(9)>: hypothesis violation
    CHECK_THROWS_AS(w_n2_case_a(F9, GroupSpec::SL(2, F9)), std::invalid_argument);
    auto F5 = field_create(5, 1);
    CHECK_THROWS_AS(w_n2_case_a(F5, GroupSpec::GL(2, F5)), std::invalid_argument);

    // tampering with an automorphism exponent breaks a check
    WitnessPackage p4 = w_n2_case_a(F8, GroupSpec::SL(2, F8));
    p4.witnesses[0]->aut = (p4.witnesses[0]->aut + 1) % F8->f();
    VerifyReport rep = verify(p4);
    bool both = rep.member_ok[0] && rep.maps_ok[0];
    CHECK_FALSE(both);
}

TEST_CASE("n=2 case (b) parameters and packages") {
    auto F11 = field_create(11, 1);
    auto [l, t] = find_case_b_params(F11);
    const Field& Fq = *F11;
    long long l2t = Fq.mul(Fq.mul(l, l), t);
    long long theta = Fq.div(Fq.sub(1, Fq.mul(Fq.mul(l, l), t)), Fq.sub(1, t));
    CHECK(theta != 0);
    CHECK(Fq.power_subgroup_member(theta, 2));
    for (int k = 0; k < Fq.f(); ++k) CHECK(Fq.frobenius(t, k) != l2t);

    // counting: for each lambda there are (q-1)/2 - 2 admissible tau
    for (long long q : {11, 13, 27}) {
        auto F = field_create_q(q);
        for (long long lambda = 2; lambda < q; ++lambda) {
            if (lambda == 1 || F->add(lambda, 1) == 0) continue;
            long long l2 = F->mul(lambda, lambda);
            long long count = 0;
            for (long long tau = 2; tau < q; ++tau) {
                long long img = F->div(F->sub(1, F->mul(l2, tau)), F->sub(1, tau));
                if (img != 0 && F->power_subgroup_member(img, 2)) ++count;
            }
            CHECK(count == (q - 1) / 2 - 2);
        }
    }

    // an admissible pair exists for p = 3 with f > 2
    auto F27 = field_create(3, 3);
    CHECK_NOTHROW(find_case_b_params(F27));
    auto F243 = field_create(3, 5);
    CHECK_NOTHROW(find_case_b_params(F243));

    WitnessPackage p = w_n2_case_b(F11, GroupSpec::SL(2, F11));
    CHECK(p.k == 4);
    VerifyReport rep = verify(p);
    CHECK(rep.pass());
    CHECK(rep.solver_found == std::vector<bool>{true, true, true, true});

    WitnessPackage p27 = w_n2_case_b(F27, GroupSpec::SigmaL(2, F27));
    CHECK(verify(p27).pass());

    // hypothesis violations: q = 9 is excluded, and even q is case (a)
    auto F9 = field_create(3, 2);
    CHECK_THROWS_AS(w_n2_case_b(F9, GroupSpec::SigmaL(2, F9)), std::invalid_argument);
    auto F16 = field_create(2, 4);
    CHECK_THROWS_AS(w_n2_case_b(F16, GroupSpec::SL(2, F16)), std::invalid_argument);
}

TEST_CASE("psl3 packages") {
    auto F7 = field_create(7, 1);
    WitnessPackage p = w_psl3(F7, GroupSpec::SL(3, F7));
    CHECK(p.k == 5);
    for (const auto& w : p.witnesses) CHECK(w->g.det() == 1);
    CHECK(verify(p).pass());

    auto F13 = field_create(13, 1);
    CHECK(verify(w_psl3(F13, GroupSpec::SL(3, F13))).pass());

    auto F5 = field_create(5, 1);
    CHECK_THROWS_AS(w_psl3(F5, GroupSpec::SL(3, F5)), std::invalid_argument);
}

TEST_CASE("gl-lower packages") {
    auto F4 = field_create(2, 2);
    WitnessPackage p = w_gl_lower(3, F4);
    CHECK(p.k == 5);
    CHECK(verify(p).pass());

    auto F5 = field_create(5, 1);
    WitnessPackage p2 = w_gl_lower(4, F5);
    CHECK(p2.k == 6);
    CHECK(verify(p2).pass());

    auto F3 = field_create(3, 1);
    CHECK_THROWS_AS(w_gl_lower(3, F3), std::invalid_argument);
}

TEST_CASE("gammal and general-np2 packages") {
    auto F4 = field_create(2, 2);
    WitnessPackage p = w_gammal(3, F4, 1);
    CHECK(p.k == 6);
    CHECK(verify(p).pass());

    auto F9 = field_create(3, 2);
    WitnessPackage p2 = w_general_np2(4, F9, GroupSpec::SigmaL(4, F9));
    CHECK(p2.k == 6);
    CHECK(verify(p2).pass());

    auto F5 = field_create(5, 1);
    CHECK_THROWS_AS(w_gammal(3, F5, 1), std::invalid_argument);  // prime field
    CHECK_THROWS_AS(w_general_np2(4, F5, GroupSpec::GL(4, F5)), std::invalid_argument);
}

TEST_CASE("psl-lower packages and alpha admissibility") {
    auto F3 = field_create(3, 1);
    WitnessPackage p = w_psl_lower(4, F3, GroupSpec::SL(4, F3));
    CHECK(p.k == 6);
    CHECK(verify(p).pass());

    auto F11 = field_create(11, 1);
    WitnessPackage p2 = w_psl_lower(5, F11, GroupSpec::SL(5, F11));
    CHECK(p2.k == 8);
    CHECK(verify(p2).pass());

    auto F4 = field_create(2, 2);
    CHECK_THROWS_AS(w_psl_lower(4, F4, GroupSpec::GL(4, F4)), std::invalid_argument);
    // n-th powers cover F* when gcd(n, q-1) = 1, so SL_5(5) is out of hypothesis
    auto F5 = field_create(5, 1);
    CHECK_FALSE(psl_lower_alpha(GroupSpec::SL(5, F5)).has_value());
    CHECK_THROWS_AS(w_psl_lower(5, F5, GroupSpec::SL(5, F5)), std::invalid_argument);

    // alpha admissibility equals the direct closure over the quotient image
    for (const auto& H : {GroupSpec::SL(4, F5), GroupSpec::GL(4, F5),
                          GroupSpec::SigmaL(4, field_create(3, 2))}) {
        const Field& Fq = *H.field();
        std::optional<long long> direct;
        for (long long a = 1; a < Fq.q() && !direct; ++a) {
            bool achievable = false;
            for (const auto& pr : H.quotient_image()) {
                long long base = Fq.frobenius(pr.det, pr.aut);
                for (long long lam = 1; lam < Fq.q() && !achievable; ++lam)
                    if (Fq.mul(base, Fq.pow(lam, H.n())) == a) achievable = true;
                if (achievable) break;
            }
            if (!achievable) direct = a;
        }
        CHECK(psl_lower_alpha(H) == direct);
    }
}

TEST_CASE("mspaces packages") {
    auto F2 = field_create(2, 1);
    WitnessPackage p = w_mspaces(4, 2, F2, GroupSpec::SL(4, F2));
    CHECK(p.k == 5);
    CHECK(p.m == 2);
    for (const auto& w : p.witnesses) CHECK(w->g.det() == 1);
    CHECK(verify(p).pass());

    auto F3 = field_create(3, 1);
    WitnessPackage p2 = w_mspaces(5, 2, F3, GroupSpec::SL(5, F3));
    CHECK(p2.k == 7);
    CHECK(verify(p2).pass());

    CHECK_THROWS_AS(w_mspaces(3, 2, F3, GroupSpec::SL(3, F3)), std::invalid_argument);

    // sabotage: claim equivalence of X with itself
    WitnessPackage bad = w_mspaces(4, 2, F2, GroupSpec::SL(4, F2));
    bad.Y = bad.X;
    VerifyReport rep = verify(bad);
    CHECK_FALSE(rep.non_equiv_ok);
}

TEST_CASE("verified packages are consistent with the computed rc") {
    // on actions small enough for the exact search, a verified claim
    // RC >= k must satisfy k <= rc
    struct Row {
        WitnessPackage pkg;
    };
    auto F2 = field_create(2, 1);
    auto F3 = field_create(3, 1);
    auto F8 = field_create(2, 3);
    std::vector<WitnessPackage> pkgs;
    pkgs.push_back(w_general_n(3, F3, GroupSpec::SL(3, F3)));
    pkgs.push_back(w_n2_case_a(F8, GroupSpec::SL(2, F8)));
    pkgs.push_back(w_mspaces(4, 2, F2, GroupSpec::SL(4, F2)));
    for (const auto& pkg : pkgs) {
        REQUIRE(verify(pkg).pass());
        ActionHandle act(pkg.group, pkg.m);
        RCReport rep = rc_compute(act);
        REQUIRE(rep.exact);
        CHECK(pkg.k <= *rep.rc);
    }
}

TEST_CASE("packages round-trip through JSON") {
    auto F4 = field_create(2, 2);
    WitnessPackage p = w_gammal(3, F4, 1);
    auto j = package_to_json(p);
    WitnessPackage q = package_from_json(j);
    CHECK(q.tag == p.tag);
    CHECK(q.k == p.k);
    CHECK(q.X == p.X);
    CHECK(q.Y == p.Y);
    CHECK(verify(q).pass());
    CHECK(package_to_json(q).dump() == j.dump());

    auto F2 = field_create(2, 1);
    WitnessPackage pm = w_mspaces(4, 2, F2, GroupSpec::SL(4, F2));
    WitnessPackage qm = package_from_json(package_to_json(pm));
    CHECK(verify(qm).pass());
}
