#include "relcx/witnesses.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace relcx {

namespace {

Subspace axis(const FieldPtr& F, int n, int i) {
    std::vector<long long> v(n, 0);
    v[i] = 1;
    return Subspace::line(F, v);
}

Subspace line_of(const FieldPtr& F, std::vector<long long> v) {
    return Subspace::line(F, std::move(v));
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument("witness constructor: " + msg);
}

// smallest aut exponent / scalar making lambda * g * phi^i a member of H
// whose phi^i fixes the mapped tuple
std::optional<SemilinearElem> adjust_into_group(const GroupSpec& H, const Mat& g,
                                                const SubspaceTuple& target) {
    const Field& F = *H.field();
    long long det = g.det();
    for (int i : H.aut_image()) {
        if (i != 0) {
            SemilinearElem tw{Mat::identity(H.field(), H.n()), i};
            if (!(apply_tuple(tw, target) == target)) continue;
        }
        for (long long lam = 1; lam < F.q(); ++lam) {
            long long d = F.mul(F.pow(lam, H.n()), det);
            if (H.quotient_contains(d, i)) return SemilinearElem{g.scaled(lam), i};
        }
    }
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// verify

bool VerifyReport::membership_pass() const {
    return std::all_of(member_ok.begin(), member_ok.end(), [](bool b) { return b; });
}
bool VerifyReport::mapping_pass() const {
    return std::all_of(maps_ok.begin(), maps_ok.end(), [](bool b) { return b; });
}
bool VerifyReport::pass() const {
    return membership_pass() && mapping_pass() && non_equiv_ok;
}

VerifyReport verify(const WitnessPackage& pkg) {
    VerifyReport rep;
    rep.tag = pkg.tag;
    rep.group = pkg.group.describe();
    rep.k = pkg.k;
    if (pkg.X.size() != static_cast<size_t>(pkg.k) || pkg.Y.size() != pkg.X.size() ||
        pkg.witnesses.size() != pkg.X.size())
        throw std::invalid_argument("verify: malformed package");
    rep.member_ok.resize(pkg.k, false);
    rep.maps_ok.resize(pkg.k, false);
    rep.solver_found.resize(pkg.k, false);
    for (int j = 0; j < pkg.k; ++j) {
        SubspaceTuple Xd = delete_entry(pkg.X, j);
        SubspaceTuple Yd = delete_entry(pkg.Y, j);
        if (pkg.witnesses[j]) {
            rep.member_ok[j] = pkg.group.contains(*pkg.witnesses[j]);
            rep.maps_ok[j] = apply_tuple(*pkg.witnesses[j], Xd) == Yd;
        } else {
            auto h = tuple_equivalent(pkg.group, Xd, Yd);
            rep.solver_found[j] = h.has_value();
            rep.member_ok[j] = h.has_value();
            rep.maps_ok[j] = h.has_value();
        }
    }
    rep.non_equiv_ok = !tuple_equivalent(pkg.group, pkg.X, pkg.Y).has_value();
    std::ostringstream os;
    os << "RC(" << rep.group << ", Omega_" << pkg.m << ") >= " << pkg.k;
    rep.statement = os.str();
    return rep;
}

// ---------------------------------------------------------------------------
// length-n spanning/non-spanning pair

WitnessPackage w_general_n(int n, const FieldPtr& F, const GroupSpec& H) {
    require(n >= 2, "need n >= 2");
    require(H.n() == n && H.field()->same(*F), "group/field mismatch");

    std::vector<Subspace> X, Y;
    for (int i = 0; i + 1 < n; ++i) {
        X.push_back(axis(F, n, i));
        Y.push_back(axis(F, n, i));
    }
    std::vector<long long> all_ones(n, 1), first_ones(n, 1);
    first_ones[n - 1] = 0;
    X.push_back(line_of(F, all_ones));
    Y.push_back(line_of(F, first_ones));

    WitnessPackage pkg{"general-n", H, 1, n, SubspaceTuple(X), SubspaceTuple(Y), {}, {}};
    for (int l = 0; l + 1 < n; ++l) {
        Mat h = Mat::identity(F, n);
        h.set(l, n - 1, F->neg(1));  // id - E_{l,n}
        pkg.witnesses.push_back(SemilinearElem{h, 0});
    }
    pkg.witnesses.push_back(SemilinearElem::identity(F, n));
    return pkg;
}

// ---------------------------------------------------------------------------
// n = 2 lemma, case (a)

WitnessPackage w_n2_case_a(const FieldPtr& F, const GroupSpec& H) {
    long long q = F->q();
    require(H.n() == 2 && H.field()->same(*F), "group/field mismatch");
    require(q >= 8, "need q >= 8");
    const Field& Fq = *F;
    bool q_even = (F->p() == 2);
    bool in_zsigma = true;  // H <= <Z, SigmaL_2(q)>: all dets are squares
    for (const auto& pr : H.quotient_image())
        if (!Fq.power_subgroup_member(pr.det, 2)) in_zsigma = false;
    require(q_even || !in_zsigma, "case (a) needs q even or H outside <Z, SigmaL>");

    long long w = Fq.omega();
    // frobenius orbit of omega
    std::vector<long long> worbit;
    for (int i = 0; i < F->f(); ++i) worbit.push_back(Fq.frobenius(w, i));

    long long alpha = 0;
    if (q_even) {
        alpha = Fq.pow(w, 3);
        require(std::find(worbit.begin(), worbit.end(), alpha) == worbit.end(),
                "omega^3 in the frobenius orbit of omega");
    } else {
        for (long long a = 2; a < F->p(); ++a)
            if (std::find(worbit.begin(), worbit.end(), a) == worbit.end()) {
                alpha = a;
                break;
            }
        require(alpha != 0, "no prime-field alpha outside the orbit of omega");
    }

    std::vector<Subspace> X{axis(F, 2, 0), axis(F, 2, 1), line_of(F, {1, 1}),
                            line_of(F, {1, w})};
    std::vector<Subspace> Y{axis(F, 2, 0), axis(F, 2, 1), line_of(F, {1, 1}),
                            line_of(F, {1, alpha})};

    long long c = Fq.div(Fq.sub(alpha, w), Fq.sub(1, w));
    long long d = Fq.div(Fq.sub(Fq.div(w, alpha), 1), Fq.sub(w, 1));
    std::vector<Mat> g;
    g.push_back(Mat::from_rows(F, {{1, c}, {0, Fq.sub(1, c)}}));
    g.push_back(Mat::from_rows(F, {{Fq.sub(1, d), 0}, {d, 1}}));
    g.push_back(Mat::diag(F, {1, Fq.div(alpha, w)}));
    g.push_back(Mat::identity(F, 2));

    WitnessPackage pkg{"n2-case-a", H,       1,  4,
                       SubspaceTuple(X),     SubspaceTuple(Y), {}, {}};
    pkg.params.alpha = alpha;
    for (int j = 0; j < 4; ++j) {
        auto elem = adjust_into_group(H, g[j], delete_entry(pkg.Y, j));
        require(elem.has_value(), "no scalar/automorphism adjustment lands in H");
        pkg.witnesses.push_back(*elem);
    }
    return pkg;
}

// ---------------------------------------------------------------------------
// n = 2 lemma, case (b)

std::pair<long long, long long> find_case_b_params(const FieldPtr& F) {
    const Field& Fq = *F;
    long long q = Fq.q();
    require(Fq.p() != 2, "case (b) needs q odd");
    for (long long lambda = 2; lambda < q; ++lambda) {
        if (lambda == 1 || Fq.add(lambda, 1) == 0) continue;  // lambda not in {0, 1, -1}
        long long l2 = Fq.mul(lambda, lambda);
        for (long long tau = 2; tau < q; ++tau) {
            if (tau == 1) continue;  // tau not in {0, 1}
            long long denom = Fq.sub(1, tau);
            long long img = Fq.div(Fq.sub(1, Fq.mul(l2, tau)), denom);
            if (img == 0 || !Fq.power_subgroup_member(img, 2)) continue;
            bool aut_free = true;
            long long target = Fq.mul(l2, tau);
            for (int kk = 0; kk < Fq.f(); ++kk)
                if (Fq.frobenius(tau, kk) == target) {
                    aut_free = false;
                    break;
                }
            if (aut_free) return {lambda, tau};
        }
    }
    throw std::invalid_argument("find_case_b_params: no (lambda, tau) pair exists");
}

WitnessPackage w_n2_case_b(const FieldPtr& F, const GroupSpec& H) {
    const Field& Fq = *F;
    long long q = Fq.q();
    require(H.n() == 2 && H.field()->same(*F), "group/field mismatch");
    require(Fq.p() != 2 && q > 9, "case (b) needs q odd and q > 9");
    for (const auto& pr : H.quotient_image())
        require(Fq.power_subgroup_member(pr.det, 2), "case (b) needs H inside <Z, SigmaL>");

    auto [lambda, tau] = find_case_b_params(F);
    long long l2t = Fq.mul(Fq.mul(lambda, lambda), tau);
    std::vector<Subspace> X{axis(F, 2, 0), axis(F, 2, 1), line_of(F, {1, 1}),
                            line_of(F, {1, tau})};
    std::vector<Subspace> Y{axis(F, 2, 0), axis(F, 2, 1), line_of(F, {1, 1}),
                            line_of(F, {1, l2t})};
    WitnessPackage pkg{"n2-case-b", H, 1, 4, SubspaceTuple(X), SubspaceTuple(Y), {}, {}};
    pkg.params.lambda = lambda;
    pkg.params.tau = tau;
    pkg.witnesses.assign(4, std::nullopt);  // solver-found
    return pkg;
}

// ---------------------------------------------------------------------------
// n = 3

WitnessPackage w_psl3(const FieldPtr& F, const GroupSpec& H) {
    const Field& Fq = *F;
    long long q = Fq.q();
    require(H.n() == 3 && H.field()->same(*F), "group/field mismatch");
    require((q - 1) % 3 == 0, "PSL_3 = PGL_3 (3 does not divide q-1)");
    require(q >= 7, "need |F| >= 7");

    long long l = Fq.omega();
    long long li = Fq.inv(l);
    std::vector<Subspace> X{axis(F, 3, 0), axis(F, 3, 1), axis(F, 3, 2),
                            line_of(F, {1, 1, 1}),
                            line_of(F, {1, l, Fq.mul(l, l)})};
    std::vector<Subspace> Y{axis(F, 3, 0), axis(F, 3, 1), axis(F, 3, 2),
                            line_of(F, {1, 1, 1}),
                            line_of(F, {1, li, Fq.mul(li, li)})};

    long long m1 = Fq.neg(1);
    std::vector<Mat> g;
    g.push_back(Mat::from_rows(F, {{l, Fq.add(l, 1), Fq.add(l, li)},
                                   {0, m1, 0},
                                   {0, 0, Fq.neg(li)}}));
    g.push_back(Mat::from_rows(F, {{Fq.neg(l), 0, 0},
                                   {Fq.add(l, 1), 1, Fq.add(1, li)},
                                   {0, 0, Fq.neg(li)}}));
    g.push_back(Mat::from_rows(F, {{Fq.neg(l), 0, 0},
                                   {0, m1, 0},
                                   {Fq.add(l, li), Fq.add(1, li), li}}));
    g.push_back(Mat::diag(F, {Fq.mul(l, l), 1, Fq.mul(li, li)}));
    g.push_back(Mat::identity(F, 3));

    WitnessPackage pkg{"psl3", H, 1, 5, SubspaceTuple(X), SubspaceTuple(Y), {}, {}};
    pkg.params.lambda = l;
    for (auto& gm : g) {
        if (gm.det() != 1) throw std::logic_error("w_psl3: witness determinant not 1");
        pkg.witnesses.push_back(SemilinearElem{gm, 0});
    }
    return pkg;
}

// ---------------------------------------------------------------------------
// GL lower bound, length n+2

WitnessPackage w_gl_lower(int n, const FieldPtr& F) {
    const Field& Fq = *F;
    require(n >= 3, "need n >= 3");
    require(Fq.q() >= 4, "|F| >= 4 required");
    long long lambda = 0;
    for (long long a = 2; a < Fq.q(); ++a)
        if (Fq.mul(a, a) != 1) {
            lambda = a;
            break;
        }
    require(lambda != 0, "no lambda with lambda != lambda^{-1}");
    long long li = Fq.inv(lambda);

    GroupSpec H = GroupSpec::GL(n, F);
    std::vector<Subspace> X, Y;
    for (int i = 0; i < n; ++i) {
        X.push_back(axis(F, n, i));
        Y.push_back(axis(F, n, i));
    }
    std::vector<long long> ones(n, 1);
    X.push_back(line_of(F, ones));
    Y.push_back(line_of(F, ones));
    std::vector<long long> vx(n, 0), vy(n, 0);
    vx[0] = 1;
    vx[1] = lambda;
    vy[0] = 1;
    vy[1] = li;
    X.push_back(line_of(F, vx));
    Y.push_back(line_of(F, vy));

    WitnessPackage pkg{"gl-lower", H, 1, n + 2, SubspaceTuple(X), SubspaceTuple(Y), {}, {}};
    pkg.params.lambda = lambda;

    auto scalar_block = [&](long long s) {
        return Mat::diag(F, std::vector<long long>(n - 2, s));
    };
    Mat g1 = Mat::block_diag(
        Mat::from_rows(F, {{lambda, Fq.add(1, lambda)}, {0, Fq.neg(1)}}), scalar_block(lambda));
    Mat g2 = Mat::block_diag(Mat::from_rows(F, {{Fq.neg(1), 0}, {Fq.add(1, li), li}}),
                             scalar_block(li));
    std::vector<long long> dl(n, lambda);
    dl[1] = li;
    Mat gn1 = Mat::diag(F, dl);

    pkg.witnesses.push_back(SemilinearElem{g1, 0});
    pkg.witnesses.push_back(SemilinearElem{g2, 0});
    for (int j = 3; j <= n; ++j) {
        Mat gj = gn1;
        gj.set(j - 1, 1, Fq.sub(lambda, li));  // g_{n+1} + (lambda - lambda^{-1}) E_{j2}
        pkg.witnesses.push_back(SemilinearElem{gj, 0});
    }
    pkg.witnesses.push_back(SemilinearElem{gn1, 0});
    pkg.witnesses.push_back(SemilinearElem::identity(F, n));
    return pkg;
}

// ---------------------------------------------------------------------------
// GammaL lower bound, length n+3 (dimension parameter decoupled so the n+2
// construction can reuse it one dimension down)

namespace {

struct GammalCore {
    std::vector<Subspace> X, Y;
    std::vector<Mat> mats;   // linear parts
    std::vector<int> auts;   // automorphism exponents per witness
    long long lambda;
};

GammalCore gammal_core(int n, const FieldPtr& F, int s) {
    const Field& Fq = *F;
    require(n >= 3, "need n >= 3");
    require(Fq.f() > 1 && s % Fq.f() != 0, "need a nontrivial automorphism");
    s = ((s % Fq.f()) + Fq.f()) % Fq.f();
    long long lambda = 0;
    for (long long a = 1; a < Fq.q(); ++a)
        if (Fq.frobenius(a, s) != a) {
            lambda = a;
            break;
        }
    require(lambda != 0, "no lambda moved by psi");
    int sinv = (Fq.f() - s) % Fq.f();
    long long lpsi = Fq.frobenius(lambda, s);
    long long tau = Fq.inv(Fq.sub(lambda, 1));

    GammalCore core;
    core.lambda = lambda;
    auto& X = core.X;
    auto& Y = core.Y;
    for (int i = 0; i < n; ++i) {
        X.push_back(axis(F, n, i));
        Y.push_back(axis(F, n, i));
    }
    std::vector<long long> ones(n, 1);
    X.push_back(line_of(F, ones));
    Y.push_back(line_of(F, ones));
    std::vector<long long> v3(n, 0);
    v3[0] = 1;
    v3[1] = 1;
    v3[2] = lambda;
    X.push_back(line_of(F, v3));
    Y.push_back(line_of(F, v3));
    std::vector<long long> vx(n, 0), vy(n, 0);
    vx[0] = 1;
    vx[1] = lambda;
    vy[0] = 1;
    vy[1] = lpsi;
    X.push_back(line_of(F, vx));
    Y.push_back(line_of(F, vy));

    auto& mats = core.mats;
    auto& auts = core.auts;
    // h_1
    {
        long long t = Fq.mul(tau, Fq.sub(lpsi, lambda));
        Mat h = Mat::identity(F, n);
        h.set(0, 1, Fq.neg(t));
        h.set(1, 1, Fq.add(1, t));
        mats.push_back(h);
        auts.push_back(0);
    }
    // h_2
    {
        long long t = Fq.mul(tau, Fq.sub(Fq.mul(lambda, Fq.frobenius(Fq.inv(lambda), s)), 1));
        Mat h = Mat::identity(F, n);
        h.set(0, 0, Fq.sub(1, t));
        h.set(1, 0, t);
        mats.push_back(h);
        auts.push_back(0);
    }
    long long u = Fq.mul(tau, Fq.sub(Fq.mul(lambda, Fq.frobenius(Fq.inv(lambda), sinv)), 1));
    long long ratio = Fq.mul(Fq.inv(lambda), Fq.frobenius(lambda, sinv));
    // h_3
    {
        Mat h = Mat::identity(F, n);
        h.set(0, 0, Fq.sub(1, u));
        h.set(1, 1, Fq.sub(1, u));
        h.set(2, 0, u);
        h.set(2, 1, u);
        mats.push_back(h);
        auts.push_back(s);
    }
    // h_j = (diag(1, 1, lambda^{-1} lambda^{psi^{-1}}, 1, ..., 1) +
    //        (1 - lambda^{-1} lambda^{psi^{-1}}) E_{j3}) psi, j in {4..n}
    for (int j = 4; j <= n; ++j) {
        std::vector<long long> d(n, 1);
        d[2] = ratio;
        Mat h = Mat::diag(F, d);
        h.set(j - 1, 2, Fq.sub(1, ratio));
        mats.push_back(h);
        auts.push_back(s);
    }
    // h_{n+1}
    {
        std::vector<long long> d(n, 1);
        d[2] = ratio;
        mats.push_back(Mat::diag(F, d));
        auts.push_back(s);
    }
    // h_{n+2} = psi, h_{n+3} = id
    mats.push_back(Mat::identity(F, n));
    auts.push_back(s);
    mats.push_back(Mat::identity(F, n));
    auts.push_back(0);
    return core;
}

}  // namespace

WitnessPackage w_gammal(int n, const FieldPtr& F, int psi_exponent) {
    GammalCore core = gammal_core(n, F, psi_exponent);
    int f = F->f();
    int s = ((psi_exponent % f) + f) % f;
    int e = f / std::gcd(s, f);
    GroupSpec H = GroupSpec::parametric(n, F, 1, e);  // <GL, phi^s>

    WitnessPackage pkg{"gammal", H,       1,
                       n + 3,    SubspaceTuple(core.X), SubspaceTuple(core.Y),
                       {},       {}};
    pkg.params.lambda = core.lambda;
    pkg.params.psi = s;
    for (size_t j = 0; j < core.mats.size(); ++j)
        pkg.witnesses.push_back(SemilinearElem{core.mats[j], core.auts[j]});
    return pkg;
}

WitnessPackage w_general_np2(int n, const FieldPtr& F, const GroupSpec& H) {
    const Field& Fq = *F;
    require(n >= 4, "need n >= 4");
    require(H.n() == n && H.field()->same(*F), "group/field mismatch");
    auto auts = H.aut_image();
    require(auts.size() > 1, "H must contain a nontrivial field automorphism");
    int s = auts[1];  // smallest nonzero exponent

    GammalCore core = gammal_core(n - 1, F, s);

    // embed into F^n, leaving e_n untouched
    auto embed = [&](const Subspace& sub) {
        Mat b(F, sub.dim(), n);
        for (int i = 0; i < sub.dim(); ++i)
            for (int j = 0; j < n - 1; ++j) b.set(i, j, sub.basis().at(i, j));
        return Subspace(b);
    };
    std::vector<Subspace> X, Y;
    for (const auto& s_ : core.X) X.push_back(embed(s_));
    for (const auto& s_ : core.Y) Y.push_back(embed(s_));

    WitnessPackage pkg{"general-np2", H, 1, n + 2, SubspaceTuple(X), SubspaceTuple(Y),
                       {},            {}};
    pkg.params.lambda = core.lambda;
    pkg.params.psi = s;
    for (size_t j = 0; j < core.mats.size(); ++j) {
        long long det = core.mats[j].det();
        int aut = core.auts[j];
        // pad with a last diagonal entry that lands the element in H
        long long pad = 0;
        for (long long d = 1; d < Fq.q(); ++d)
            if (H.quotient_contains(Fq.mul(det, d), aut)) {
                pad = d;
                break;
            }
        require(pad != 0, "no padding determinant lands in H");
        Mat one(F, 1, 1);
        one.set(0, 0, pad);
        pkg.witnesses.push_back(SemilinearElem{Mat::block_diag(core.mats[j], one), aut});
    }
    return pkg;
}

// ---------------------------------------------------------------------------
// 2n-2 lower bound

std::optional<long long> psl_lower_alpha(const GroupSpec& H) {
    const Field& Fq = *H.field();
    long long m = Fq.q() - 1;
    long long g = std::gcd(static_cast<long long>(H.n()), m);
    // the class of det(x)^psi modulo n-th powers is log(frobenius(det)) mod g
    std::vector<char> hit(g, 0);
    for (const auto& pr : H.quotient_image())
        hit[Fq.log(Fq.frobenius(pr.det, pr.aut)) % g] = 1;
    for (long long a = 1; a < Fq.q(); ++a)
        if (!hit[Fq.log(a) % g]) return a;
    return std::nullopt;
}

WitnessPackage w_psl_lower(int n, const FieldPtr& F, const GroupSpec& H) {
    const Field& Fq = *F;
    require(n >= 4, "need n >= 4");
    require(Fq.q() >= 3, "|F| >= 3 required");
    require(H.n() == n && H.field()->same(*F), "group/field mismatch");
    auto alpha_opt = psl_lower_alpha(H);
    require(alpha_opt.has_value(), "no admissible alpha (determinant classes cover)");
    long long alpha = *alpha_opt;
    long long ai = Fq.inv(alpha);

    std::vector<Subspace> X, Y;
    for (int i = 1; i < n; ++i) {
        X.push_back(axis(F, n, i));
        Y.push_back(axis(F, n, i));
    }
    for (int i = 1; i < n; ++i) {
        std::vector<long long> vx(n, 0), vy(n, 0);
        vx[0] = 1;
        vx[i] = 1;
        vy[0] = alpha;
        vy[i] = 1;
        X.push_back(line_of(F, vx));
        Y.push_back(line_of(F, vy));
    }

    WitnessPackage pkg{"psl-lower", H, 1, 2 * n - 2, SubspaceTuple(X), SubspaceTuple(Y),
                       {},          {}};
    pkg.params.alpha = alpha;

    auto h_k = [&](int k_math) {  // diag(alpha, 1, ..., alpha^{-1} at k, ..., 1)
        std::vector<long long> d(n, 1);
        d[0] = alpha;
        d[k_math - 1] = ai;
        return Mat::diag(F, d);
    };
    for (int j = 1; j <= n - 1; ++j) {  // deleting <e_k>, k = j+1
        int k_math = j + 1;
        Mat w = h_k(k_math);
        w.set(k_math - 1, 0, Fq.sub(1, alpha));
        pkg.witnesses.push_back(SemilinearElem{w, 0});
    }
    for (int j = n; j <= 2 * n - 2; ++j) {  // deleting <e_1 + e_k>, k = j+2-n
        int k_math = j + 2 - n;
        pkg.witnesses.push_back(SemilinearElem{h_k(k_math), 0});
    }
    return pkg;
}

// ---------------------------------------------------------------------------
// m-spaces

WitnessPackage w_mspaces(int n, int m, const FieldPtr& F, const GroupSpec& H) {
    const Field& Fq = *F;
    require(m >= 2 && n >= 2 * m, "need n >= 2m >= 4");
    require(H.n() == n && H.field()->same(*F), "group/field mismatch");

    auto basis_B = [&](int i_math) {  // {e_1..e_m} minus e_i, as rows
        std::vector<std::vector<long long>> rows;
        for (int t = 1; t <= m; ++t) {
            if (t == i_math) continue;
            std::vector<long long> r(n, 0);
            r[t - 1] = 1;
            rows.push_back(std::move(r));
        }
        return rows;
    };
    auto subspace_from = [&](std::vector<std::vector<long long>> rows,
                             std::vector<long long> extra) {
        rows.push_back(std::move(extra));
        return Subspace(Mat::from_rows(F, rows));
    };

    std::vector<Subspace> X, Y;
    for (int r = 1; r <= m; ++r)
        for (int s = m + 1; s <= n - 1; ++s) {
            std::vector<long long> es(n, 0);
            es[s - 1] = 1;
            Subspace u = subspace_from(basis_B(r), es);
            X.push_back(u);
            Y.push_back(u);
        }
    for (int i = 1; i <= m; ++i) {  // V_i
        std::vector<long long> v(n, 0);
        v[i - 1] = 1;
        v[n - 1] = 1;
        X.push_back(subspace_from(basis_B(i), v));
    }
    for (int i = 1; i <= m; ++i) {  // W_i
        std::vector<long long> v(n, 0);
        v[n - 1] = 1;
        Y.push_back(subspace_from(basis_B(i), v));
    }
    {
        std::vector<std::vector<long long>> rows;
        for (int t = 2; t <= m; ++t) {
            std::vector<long long> r(n, 0);
            r[0] = 1;
            r[t - 1] = 1;
            rows.push_back(std::move(r));
        }
        std::vector<long long> lastx(n, 1);
        std::vector<long long> lasty(n, 0);
        lasty[0] = Fq.neg(1);
        for (int t = m + 1; t <= n; ++t) lasty[t - 1] = 1;
        auto rx = rows;
        rx.push_back(lastx);
        X.push_back(Subspace(Mat::from_rows(F, rx)));
        rows.push_back(lasty);
        Y.push_back(Subspace(Mat::from_rows(F, rows)));
    }

    int len = m * n - m * m + 1;
    WitnessPackage pkg{"mspaces", H, m, len, SubspaceTuple(X), SubspaceTuple(Y), {}, {}};

    auto alpha_r = [&](int r) { return r == 1 ? Fq.neg(1) : 1LL; };
    // z = e_1 + ... + e_m
    auto sub_z = [&](Mat& g, int row) {
        for (int t = 0; t < m; ++t) g.set(row, t, Fq.sub(g.at(row, t), 1));
    };
    // case (a): one witness per deleted U_{rs}
    for (int r = 1; r <= m; ++r)
        for (int s = m + 1; s <= n - 1; ++s) {
            Mat g = Mat::identity(F, n);
            g.set(s - 1, r - 1, alpha_r(r));    // e_s -> e_s + alpha_r e_r
            sub_z(g, n - 1);                    // e_n -> e_n - z
            pkg.witnesses.push_back(SemilinearElem{g, 0});
        }
    // case (b): one witness per deleted V_r
    for (int r = 1; r <= m; ++r) {
        Mat g = Mat::identity(F, n);
        g.set(n - 1, r - 1, Fq.add(g.at(n - 1, r - 1), alpha_r(r)));
        sub_z(g, n - 1);
        pkg.witnesses.push_back(SemilinearElem{g, 0});
    }
    // case (c): the last entry
    {
        Mat g = Mat::identity(F, n);
        sub_z(g, n - 1);
        pkg.witnesses.push_back(SemilinearElem{g, 0});
    }
    for (const auto& w : pkg.witnesses)
        if (w->g.det() != 1) throw std::logic_error("w_mspaces: witness determinant not 1");
    return pkg;
}

}  // namespace relcx
