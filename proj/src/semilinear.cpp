#include "relcx/semilinear.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relcx {

// ---------------------------------------------------------------------------
// semilinear elements

SemilinearElem compose(const SemilinearElem& x, const SemilinearElem& y) {
    const auto& F = x.g.field();
    if (!F->same(*y.g.field()) || x.g.cols() != y.g.cols())
        throw std::invalid_argument("compose: mismatched elements");
    int f = F->f();
    // v^{(x)(y)} = phi^{ix+iy}(v * gx * phi^{-ix}(gy))
    Mat gy_tw = mat_frobenius(y.g, ((-x.aut) % f + f) % f);
    return {x.g.mul(gy_tw), static_cast<int>((x.aut + y.aut) % f)};
}

SemilinearElem inverse(const SemilinearElem& x) {
    const auto& F = x.g.field();
    int f = F->f();
    int j = ((-x.aut) % f + f) % f;
    return {mat_frobenius(x.g.inverse(), x.aut), j};
}

bool projective_equal(const SemilinearElem& x, const SemilinearElem& y) {
    const auto& F = x.g.field();
    int f = F->f();
    if (((x.aut % f) + f) % f != ((y.aut % f) + f) % f) return false;
    if (x.g.rows() != y.g.rows() || x.g.cols() != y.g.cols()) return false;
    long long lambda = 0;
    for (int i = 0; i < x.g.rows(); ++i)
        for (int j = 0; j < x.g.cols(); ++j) {
            long long a = x.g.at(i, j), b = y.g.at(i, j);
            if ((a == 0) != (b == 0)) return false;
            if (a != 0) {
                long long l = F->div(a, b);
                if (lambda == 0)
                    lambda = l;
                else if (l != lambda)
                    return false;
            }
        }
    return lambda != 0;
}

SemilinearElem projective_normalize(const SemilinearElem& x) {
    const auto& F = x.g.field();
    for (int i = 0; i < x.g.rows(); ++i)
        for (int j = 0; j < x.g.cols(); ++j)
            if (x.g.at(i, j) != 0)
                return {x.g.scaled(F->inv(x.g.at(i, j))), x.aut};
    return x;
}

Vec apply_vec(const SemilinearElem& x, const Vec& v) {
    return vec_frobenius(vec_mat_mul(v, x.g), x.aut);
}

Subspace apply(const SemilinearElem& x, const Subspace& s) {
    if (s.n() != x.g.rows())
        throw std::invalid_argument("apply: dimension mismatch");
    return Subspace(mat_frobenius(s.basis().mul(x.g), x.aut));
}

SubspaceTuple apply_tuple(const SemilinearElem& x, const SubspaceTuple& X) {
    std::vector<Subspace> out;
    out.reserve(X.size());
    for (const auto& s : X.entries) out.push_back(apply(x, s));
    return SubspaceTuple(std::move(out));
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(int n, FieldPtr F, GroupMode mode)
    : n_(n), F_(std::move(F)), mode_(mode) {
    if (n < 1) throw std::invalid_argument("GroupSpec: n must be >= 1");
}

void GroupSpec::close_quotient(const std::vector<QuotientPair>& gens) {
    long long q = F_->q();
    int f = F_->f();
    qh_member_.assign(static_cast<size_t>(q) * f, 0);
    auto idx = [&](long long det, int aut) {
        return static_cast<size_t>(aut) * q + det;
    };
    std::vector<QuotientPair> frontier{{1, 0}};
    qh_member_[idx(1, 0)] = 1;
    std::vector<QuotientPair> all{{1, 0}};
    while (!frontier.empty()) {
        QuotientPair cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            // (a, i)(b, j) = (a * frobenius^{-i}(b), i + j)
            long long det = F_->mul(cur.det, F_->frobenius(g.det, ((-cur.aut) % f + f) % f));
            int aut = (cur.aut + g.aut) % f;
            if (!qh_member_[idx(det, aut)]) {
                qh_member_[idx(det, aut)] = 1;
                all.push_back({det, aut});
                frontier.push_back({det, aut});
            }
        }
    }
    std::sort(all.begin(), all.end());
    qh_ = std::move(all);
}

GroupSpec GroupSpec::SL(int n, FieldPtr F) {
    GroupSpec g(n, std::move(F), GroupMode::SL);
    g.close_quotient({});
    return g;
}

GroupSpec GroupSpec::GL(int n, FieldPtr F) {
    GroupSpec g(n, std::move(F), GroupMode::GL);
    g.close_quotient({{g.F_->omega(), 0}});
    return g;
}

GroupSpec GroupSpec::SigmaL(int n, FieldPtr F) {
    GroupSpec g(n, std::move(F), GroupMode::SigmaL);
    if (g.F_->f() > 1)
        g.close_quotient({{1, 1}});
    else
        g.close_quotient({});
    return g;
}

GroupSpec GroupSpec::GammaL(int n, FieldPtr F) {
    GroupSpec g(n, std::move(F), GroupMode::GammaL);
    std::vector<QuotientPair> gens{{g.F_->omega(), 0}};
    if (g.F_->f() > 1) gens.push_back({1, 1});
    g.close_quotient(gens);
    return g;
}

GroupSpec GroupSpec::parametric(int n, FieldPtr F, long long d, int e) {
    GroupSpec g(n, std::move(F), GroupMode::Parametric);
    long long qm1 = g.F_->q() - 1;
    int f = g.F_->f();
    if (d < 1 || qm1 % d != 0)
        throw std::invalid_argument("parametric group: d must divide q-1");
    if (e < 1 || f % e != 0)
        throw std::invalid_argument("parametric group: e must divide f");
    g.d_ = d;
    g.e_ = e;
    std::vector<QuotientPair> gens;
    if (g.F_->omega_pow(d) != 1) gens.push_back({g.F_->omega_pow(d), 0});
    if (e > 1) gens.push_back({1, f / e});
    g.close_quotient(gens);
    return g;
}

GroupSpec GroupSpec::from_generators(int n, FieldPtr F,
                                     const std::vector<SemilinearElem>& gens) {
    GroupSpec g(n, std::move(F), GroupMode::Explicit);
    std::vector<QuotientPair> qgens;
    for (const auto& x : gens) {
        if (x.g.rows() != n || x.g.cols() != n || !x.g.field()->same(*g.F_))
            throw std::invalid_argument("from_generators: generator shape mismatch");
        long long det = x.g.det();
        if (det == 0) throw std::invalid_argument("from_generators: non-invertible generator");
        qgens.push_back({det, ((x.aut % g.F_->f()) + g.F_->f()) % g.F_->f()});
    }
    g.explicit_gens_ = gens;
    g.close_quotient(qgens);
    return g;
}

bool GroupSpec::quotient_contains(long long det, int aut) const {
    long long q = F_->q();
    int f = F_->f();
    aut = ((aut % f) + f) % f;
    if (det <= 0 || det >= q) return false;
    return qh_member_[static_cast<size_t>(aut) * q + det] != 0;
}

bool GroupSpec::contains(const SemilinearElem& x) const {
    if (x.g.rows() != n_ || x.g.cols() != n_ || !x.g.field()->same(*F_))
        throw std::invalid_argument("contains: dimension/field mismatch");
    long long det = x.g.det();
    if (det == 0) return false;
    return quotient_contains(det, x.aut);
}

bigint GroupSpec::order() const {
    // |SL_n(q)| * |Q_H|
    bigint q = F_->q();
    bigint sl = 1;
    for (int i = 0; i < n_ * (n_ - 1) / 2; ++i) sl *= q;
    for (int i = 2; i <= n_; ++i) {
        bigint qi = 1;
        for (int t = 0; t < i; ++t) qi *= q;
        sl *= qi - 1;
    }
    return sl * static_cast<long long>(qh_.size());
}

bigint GroupSpec::projective_order() const {
    long long center = 0;
    for (long long lam = 1; lam < F_->q(); ++lam)
        if (quotient_contains(F_->pow(lam, n_), 0)) ++center;
    return order() / center;
}

std::vector<long long> GroupSpec::det_subgroup() const {
    std::vector<long long> out;
    for (const auto& p : qh_)
        if (p.aut == 0) out.push_back(p.det);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> GroupSpec::aut_image() const {
    std::set<int> s;
    for (const auto& p : qh_) s.insert(p.aut);
    return std::vector<int>(s.begin(), s.end());
}

std::vector<long long> GroupSpec::det_coset(int aut) const {
    int f = F_->f();
    aut = ((aut % f) + f) % f;
    std::vector<long long> out;
    for (const auto& p : qh_)
        if (p.aut == aut) out.push_back(p.det);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SemilinearElem> GroupSpec::generators() const {
    std::vector<SemilinearElem> gens;
    const FieldPtr& F = F_;
    int n = n_;
    if (n >= 2) {
        // root subgroup basis: I + omega^a E_{01}
        for (int a = 0; a < F->f(); ++a) {
            Mat t = Mat::identity(F, n);
            t.set(0, 1, F->omega_pow(a));
            gens.push_back({t, 0});
        }
        // determinant-1 basis cycle
        Mat cyc(F, n, n);
        for (int i = 0; i + 1 < n; ++i) cyc.set(i, i + 1, 1);
        long long sign = (n % 2 == 0) ? F->neg(1) : 1;
        cyc.set(n - 1, 0, sign);
        gens.push_back({cyc, 0});
    }
    switch (mode_) {
        case GroupMode::SL:
            break;
        case GroupMode::GL: {
            std::vector<long long> d(n, 1);
            d[0] = F->omega();
            gens.push_back({Mat::diag(F, d), 0});
            break;
        }
        case GroupMode::SigmaL:
            if (F->f() > 1) gens.push_back({Mat::identity(F, n), 1});
            break;
        case GroupMode::GammaL: {
            std::vector<long long> d(n, 1);
            d[0] = F->omega();
            gens.push_back({Mat::diag(F, d), 0});
            if (F->f() > 1) gens.push_back({Mat::identity(F, n), 1});
            break;
        }
        case GroupMode::Parametric: {
            if (F->omega_pow(d_) != 1) {
                std::vector<long long> d(n, 1);
                d[0] = F->omega_pow(d_);
                gens.push_back({Mat::diag(F, d), 0});
            }
            if (e_ > 1) gens.push_back({Mat::identity(F, n), F->f() / e_});
            break;
        }
        case GroupMode::Explicit:
            for (const auto& g : explicit_gens_) gens.push_back(g);
            break;
    }
    return gens;
}

std::string GroupSpec::describe() const {
    std::ostringstream os;
    switch (mode_) {
        case GroupMode::SL: os << "SL"; break;
        case GroupMode::GL: os << "GL"; break;
        case GroupMode::SigmaL: os << "SigmaL"; break;
        case GroupMode::GammaL: os << "GammaL"; break;
        case GroupMode::Parametric: os << "param(d=" << d_ << ",e=" << e_ << ")"; break;
        case GroupMode::Explicit: os << "explicit(" << explicit_gens_.size() << " gens)"; break;
    }
    os << "_" << n_ << "(" << F_->q() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// diagonal mapping spaces

DiagonalSpace diagonal_mapping_space(const FieldPtr& F, int n,
                                     const std::vector<Subspace>& A,
                                     const std::vector<Subspace>& B) {
    if (A.size() != B.size())
        throw std::invalid_argument("diagonal_mapping_space: length mismatch");
    for (size_t j = 0; j < A.size(); ++j) {
        if (A[j].dim() != 1 || B[j].dim() != 1 || A[j].n() != n || B[j].n() != n)
            throw std::invalid_argument("diagonal_mapping_space: entries must be 1-spaces");
        if (A[j].support().size() < 2 || B[j].support().size() < 2)
            throw std::invalid_argument(
                "diagonal_mapping_space: entries must have support size >= 2");
    }
    int r = static_cast<int>(A.size());

    // unknowns: g_0..g_{n-1}, lambda_1..lambda_r; equations v_k g_k = lambda_j w_k
    std::vector<std::vector<long long>> eqs;
    for (int j = 0; j < r; ++j) {
        Vec v = A[j].basis().row(0), w = B[j].basis().row(0);
        for (int k = 0; k < n; ++k) {
            if (v.c[k] == 0 && w.c[k] == 0) continue;
            std::vector<long long> row(n + r, 0);
            row[k] = v.c[k];
            row[n + j] = F->neg(w.c[k]);
            eqs.push_back(std::move(row));
        }
    }

    DiagonalSpace out;
    out.n = n;

    std::vector<Vec> proj;  // kernel basis projected to the g-coordinates
    if (eqs.empty()) {
        for (int k = 0; k < n; ++k) {
            Vec u{F, std::vector<long long>(n, 0)};
            u.c[k] = 1;
            proj.push_back(std::move(u));
        }
    } else {
        Mat sys = Mat::from_rows(F, eqs);
        auto ker = sys.right_kernel();
        for (const auto& kv : ker) {
            Vec u{F, std::vector<long long>(kv.c.begin(), kv.c.begin() + n)};
            // a kernel vector with zero g-part would force lambda_j * w_j = 0
            // with w_j != 0, so the projection is injective
            if (u.is_zero())
                throw std::logic_error("diagonal_mapping_space: degenerate kernel vector");
            proj.push_back(std::move(u));
        }
    }

    // the space decomposes into support-disjoint directions; RREF exposes them
    std::vector<std::vector<long long>> rows;
    for (const auto& u : proj) rows.push_back(u.c);
    Mat basis_mat = rows.empty() ? Mat(F, 0, n) : Mat::from_rows(F, rows).rref().first;

    std::vector<bool> covered(n, false);
    std::vector<bool> constrained(n, false);
    for (int j = 0; j < r; ++j)
        for (int k : A[j].support()) constrained[k] = true;
    for (int b = 0; b < basis_mat.rows(); ++b) {
        DiagonalSpace::Block blk;
        blk.pattern.assign(n, 0);
        for (int k = 0; k < n; ++k) {
            long long x = basis_mat.at(b, k);
            if (x != 0) {
                blk.coords.push_back(k);
                blk.pattern[k] = x;
                covered[k] = true;
            }
        }
        out.blocks.push_back(std::move(blk));
    }
    for (int k = 0; k < n; ++k) {
        if (!covered[k]) out.dead_coords.push_back(k);
        if (!constrained[k]) out.free_coords.push_back(k);
    }
    out.dimension = basis_mat.rows();
    for (const auto& blk : out.blocks) {
        std::vector<long long> d(n, 0);
        for (int k : blk.coords) d[k] = blk.pattern[k];
        out.kernel_basis.push_back(Mat::diag(F, d));
    }
    if (out.dead_coords.empty() && !out.blocks.empty()) {
        std::vector<long long> d(n, 0);
        bool total = true;
        for (const auto& blk : out.blocks)
            for (int k : blk.coords) d[k] = blk.pattern[k];
        for (int k = 0; k < n; ++k)
            if (d[k] == 0) total = false;
        if (total) out.sample = Mat::diag(F, d);
    }
    return out;
}

DiagonalSpace diagonal_mapping_space(const SubspaceTuple& A, const SubspaceTuple& B) {
    if (A.size() == 0) throw std::invalid_argument("diagonal_mapping_space: empty tuple");
    return diagonal_mapping_space(A.entries[0].field(), A.entries[0].n(), A.entries,
                                  B.entries);
}

// ---------------------------------------------------------------------------
// tuple equivalence solver

namespace {

constexpr long long kEnumBudget = 1LL << 22;

// Smallest lambda with lambda^n * det in the exact determinant coset for aut i.
std::optional<long long> scalar_fix(const GroupSpec& H, long long det, int i) {
    const Field& F = *H.field();
    for (long long lam = 1; lam < F.q(); ++lam)
        if (H.quotient_contains(F.mul(F.pow(lam, H.n()), det), i)) return lam;
    return std::nullopt;
}

// d is reachable as a determinant modulo scalars: exists lambda with
// lambda^n d in det_coset(i).
bool det_ok_mod_scalars(const GroupSpec& H, long long det, int i) {
    return scalar_fix(H, det, i).has_value();
}

// extended gcd: returns g = gcd(a, b) and x, y with x*a + y*b = g
void ext_gcd(long long a, long long b, long long& g, long long& x, long long& y) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
    while (r1 != 0) {
        long long qt = r0 / r1;
        long long r2 = r0 - qt * r1;
        long long x2 = x0 - qt * x1, y2 = y0 - qt * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    g = r0;
    x = x0;
    y = y0;
}

// Solve sum_b sizes[b] * u_b = L (mod m) for integer exponents u_b.
std::optional<std::vector<long long>> solve_exponents(const std::vector<long long>& sizes,
                                                      long long L, long long m) {
    // fold an extended gcd over the sizes, tracking coefficient vectors
    long long cur_g = 0;
    std::vector<long long> cur_coeff;
    for (size_t t = 0; t < sizes.size(); ++t) {
        long long g, x, y;
        ext_gcd(cur_g, sizes[t] % m, g, x, y);
        std::vector<long long> nc(t + 1, 0);
        for (size_t s = 0; s < cur_coeff.size(); ++s)
            nc[s] = ((x % m) * (cur_coeff[s] % m)) % m;
        nc[t] = y % m;
        cur_g = g;
        cur_coeff = std::move(nc);
    }
    // sum sizes * cur_coeff = cur_g; lift to gcd(cur_g, m)
    long long gg, xm, ym;
    ext_gcd(cur_g, m, gg, xm, ym);
    if (gg == 0) gg = m;
    if (((L % gg) + gg) % gg != 0) return std::nullopt;
    long long scale = ((xm % m) * ((L / gg) % m)) % m;
    std::vector<long long> out(sizes.size(), 0);
    for (size_t s = 0; s < cur_coeff.size(); ++s)
        out[s] = ((cur_coeff[s] * scale) % m + m) % m;
    return out;
}

struct LinearSolveContext {
    const GroupSpec& H;
    int aut;            // fixed automorphism exponent
    bool any_det;       // inner solves inside a proper subspace ignore dets
    std::vector<char> det_ok;  // indexed by det encoding; empty when any_det

    LinearSolveContext(const GroupSpec& h, int i, bool any) : H(h), aut(i), any_det(any) {
        if (!any_det) {
            det_ok.assign(H.field()->q(), 0);
            for (long long d = 1; d < H.field()->q(); ++d)
                det_ok[d] = det_ok_mod_scalars(H, d, aut) ? 1 : 0;
        }
    }
};

bool det_acceptable(const LinearSolveContext& ctx, long long det) {
    return ctx.any_det || ctx.det_ok[det] != 0;
}

std::optional<Mat> solve_linear_map(const LinearSolveContext& ctx, const FieldPtr& F,
                                    int n, const std::vector<Subspace>& X,
                                    const std::vector<Subspace>& Y);

// m = 1, <X> = F^n: normalize an independent frame to the coordinate axes and
// solve the residual diagonal system.
std::optional<Mat> solve_full_rank_lines(const LinearSolveContext& ctx, const FieldPtr& F,
                                         int n, const std::vector<Subspace>& X,
                                         const std::vector<Subspace>& Y) {
    const Field& Fq = *F;
    size_t k = X.size();
    // greedy maximal independent family
    std::vector<size_t> frame;
    {
        std::vector<std::vector<long long>> rows;
        int rank = 0;
        for (size_t j = 0; j < k && rank < n; ++j) {
            rows.push_back(X[j].basis().row(0).c);
            Mat m2 = Mat::from_rows(F, rows);
            if (m2.rank() > rank) {
                ++rank;
                frame.push_back(j);
            } else {
                rows.pop_back();
            }
        }
        if (rank < n) return std::nullopt;  // caller guarantees full span
    }
    std::vector<std::vector<long long>> rx, ry;
    for (size_t j : frame) {
        rx.push_back(X[j].basis().row(0).c);
        ry.push_back(Y[j].basis().row(0).c);
    }
    Mat RX = Mat::from_rows(F, rx), RY = Mat::from_rows(F, ry);
    if (RY.det() == 0) return std::nullopt;  // frame dependent on the Y side
    Mat RXi = RX.inverse(), RYi = RY.inverse();

    // normalized tuples: frame entries become the axes
    std::vector<Subspace> XA, YB;
    std::vector<char> in_frame(k, 0);
    for (size_t j : frame) in_frame[j] = 1;
    for (size_t j = 0; j < k; ++j) {
        if (in_frame[j]) continue;
        Subspace xs = Subspace(X[j].basis().mul(RXi));
        Subspace ys = Subspace(Y[j].basis().mul(RYi));
        if (xs.support() != ys.support()) return std::nullopt;
        if (xs.support().size() == 1) {
            if (!(xs == ys)) return std::nullopt;
            continue;  // axis entries impose no condition on a diagonal map
        }
        XA.push_back(std::move(xs));
        YB.push_back(std::move(ys));
    }

    DiagonalSpace D = diagonal_mapping_space(F, n, XA, YB);
    if (!D.dead_coords.empty()) return std::nullopt;
    // every coordinate must admit a nonzero value
    {
        std::vector<bool> cov(n, false);
        for (const auto& b : D.blocks)
            for (int c : b.coords) cov[c] = true;
        for (int c = 0; c < n; ++c)
            if (!cov[c]) return std::nullopt;
    }

    long long c0 = 1;
    std::vector<long long> sizes;
    for (const auto& b : D.blocks) {
        sizes.push_back(static_cast<long long>(b.coords.size()));
        for (int c : b.coords) c0 = Fq.mul(c0, b.pattern[c]);
    }
    long long m = Fq.q() - 1;
    long long detRX = RX.det(), detRY = RY.det();

    long long G = 0;
    for (long long s : sizes) G = std::gcd(G, s);
    G = std::gcd(G, m);
    if (G == 0) G = m;

    for (long long d = 1; d < Fq.q(); ++d) {
        // achievable determinant of the diagonal part
        if (Fq.pow(Fq.div(d, c0), m / G) != 1) continue;
        long long det_g = Fq.mul(d, Fq.div(detRY, detRX));
        if (!det_acceptable(ctx, det_g)) continue;
        auto expo = solve_exponents(sizes, Fq.log(Fq.div(d, c0)), m);
        if (!expo) continue;
        std::vector<long long> diag(n, 0);
        for (size_t b = 0; b < D.blocks.size(); ++b) {
            long long mu = Fq.omega_pow((*expo)[b]);
            for (int c : D.blocks[b].coords) diag[c] = Fq.mul(mu, D.blocks[b].pattern[c]);
        }
        Mat M = Mat::diag(F, diag);
        return RXi.mul(M).mul(RY);
    }
    return std::nullopt;
}

// General case, full-dimensional span: the matrices mapping each x_j into
// y_j form a linear space; enumerate it.
std::optional<Mat> solve_full_rank_general(const LinearSolveContext& ctx, const FieldPtr& F,
                                           int n, const std::vector<Subspace>& X,
                                           const std::vector<Subspace>& Y) {
    std::vector<std::vector<long long>> eqs;
    for (size_t j = 0; j < X.size(); ++j) {
        auto kerY = Y[j].basis().right_kernel();
        for (int bi = 0; bi < X[j].basis().rows(); ++bi) {
            Vec b = X[j].basis().row(bi);
            for (const auto& u : kerY) {
                std::vector<long long> row(static_cast<size_t>(n) * n, 0);
                for (int rr = 0; rr < n; ++rr) {
                    if (b.c[rr] == 0) continue;
                    for (int cc = 0; cc < n; ++cc) {
                        if (u.c[cc] == 0) continue;
                        row[static_cast<size_t>(rr) * n + cc] = F->mul(b.c[rr], u.c[cc]);
                    }
                }
                eqs.push_back(std::move(row));
            }
        }
    }
    std::vector<Vec> kernel;
    if (eqs.empty()) {
        return std::nullopt;  // no constraints cannot happen for nonempty tuples
    }
    kernel = Mat::from_rows(F, eqs).right_kernel();
    size_t dL = kernel.size();
    if (dL == 0) return std::nullopt;

    long long total = 1;
    for (size_t t = 0; t < dL; ++t) {
        if (total > kEnumBudget / F->q())
            throw std::runtime_error(
                "tuple_equivalent: solution space too large to enumerate");
        total *= F->q();
    }

    // odometer over coefficient vectors, first coefficient most significant
    std::vector<long long> coef(dL, 0);
    std::vector<long long> entries(static_cast<size_t>(n) * n, 0);
    for (long long step = 1; step < total; ++step) {
        // increment from the last coefficient
        size_t pos = dL;
        while (pos > 0) {
            --pos;
            if (coef[pos] + 1 < F->q()) {
                ++coef[pos];
                break;
            }
            coef[pos] = 0;
        }
        std::fill(entries.begin(), entries.end(), 0);
        for (size_t t = 0; t < dL; ++t) {
            if (coef[t] == 0) continue;
            for (size_t e = 0; e < entries.size(); ++e)
                if (kernel[t].c[e] != 0)
                    entries[e] = F->add(entries[e], F->mul(coef[t], kernel[t].c[e]));
        }
        Mat g(F, n, n);
        for (int rr = 0; rr < n; ++rr)
            for (int cc = 0; cc < n; ++cc)
                g.set(rr, cc, entries[static_cast<size_t>(rr) * n + cc]);
        long long det = g.det();
        if (det == 0) continue;
        if (!det_acceptable(ctx, det)) continue;
        return g;
    }
    return std::nullopt;
}

// coordinates of v in the row space of an RREF basis
std::vector<long long> coords_in_rref(const Mat& basis, const Vec& v) {
    std::vector<long long> out(basis.rows(), 0);
    int col = 0;
    for (int i = 0; i < basis.rows(); ++i) {
        while (col < basis.cols() && basis.at(i, col) == 0) ++col;
        out[i] = v.c[col];
    }
    return out;
}

std::optional<Mat> solve_linear_map(const LinearSolveContext& ctx, const FieldPtr& F,
                                    int n, const std::vector<Subspace>& X,
                                    const std::vector<Subspace>& Y) {
    // span dimensions
    std::vector<std::vector<long long>> xr, yr;
    for (const auto& s : X)
        for (int i = 0; i < s.dim(); ++i) xr.push_back(s.basis().row(i).c);
    for (const auto& s : Y)
        for (int i = 0; i < s.dim(); ++i) yr.push_back(s.basis().row(i).c);
    auto [BX, a] = Mat::from_rows(F, xr).rref();
    auto [BY, ay] = Mat::from_rows(F, yr).rref();
    if (a != ay) return std::nullopt;

    if (a == n) {
        if (X[0].dim() == 1) return solve_full_rank_lines(ctx, F, n, X, Y);
        return solve_full_rank_general(ctx, F, n, X, Y);
    }

    // restrict to the spans, solve there with a free determinant, then embed
    std::vector<Subspace> subX, subY;
    for (const auto& s : X) {
        std::vector<std::vector<long long>> rows;
        for (int i = 0; i < s.dim(); ++i)
            rows.push_back(coords_in_rref(BX, s.basis().row(i)));
        subX.push_back(Subspace(Mat::from_rows(F, rows)));
    }
    for (const auto& s : Y) {
        std::vector<std::vector<long long>> rows;
        for (int i = 0; i < s.dim(); ++i)
            rows.push_back(coords_in_rref(BY, s.basis().row(i)));
        subY.push_back(Subspace(Mat::from_rows(F, rows)));
    }
    LinearSolveContext inner(ctx.H, ctx.aut, true);
    auto Ma = solve_linear_map(inner, F, a, subX, subY);
    if (!Ma) return std::nullopt;

    // complete both span bases to bases of F^n with unit vectors
    auto complement_rows = [&](const Mat& B) {
        std::vector<bool> is_pivot(n, false);
        int col = 0;
        for (int i = 0; i < B.rows(); ++i) {
            while (col < n && B.at(i, col) == 0) ++col;
            is_pivot[col] = true;
        }
        std::vector<std::vector<long long>> rows;
        for (int j = 0; j < n; ++j)
            if (!is_pivot[j]) {
                std::vector<long long> r(n, 0);
                r[j] = 1;
                rows.push_back(std::move(r));
            }
        return rows;
    };
    auto ex = complement_rows(BX);
    auto ey = complement_rows(BY);

    auto stack = [&](const Mat& top, const std::vector<std::vector<long long>>& bottom) {
        Mat m(F, top.rows() + static_cast<int>(bottom.size()), n);
        for (int i = 0; i < top.rows(); ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, top.at(i, j));
        for (size_t i = 0; i < bottom.size(); ++i)
            for (int j = 0; j < n; ++j)
                m.set(top.rows() + static_cast<int>(i), j, bottom[i][j]);
        return m;
    };
    Mat RX = stack(BX, ex);
    Mat target_top = Ma->mul(BY);
    Mat g1 = RX.inverse().mul(stack(target_top, ey));
    long long d1 = g1.det();  // nonzero by construction

    if (ctx.any_det) return g1;

    // scale one complement image to land in an acceptable determinant coset
    for (long long t = 1; t < F->q(); ++t) {
        long long delta = F->div(t, d1);
        std::vector<std::vector<long long>> ey2 = ey;
        for (int j = 0; j < n; ++j) ey2[0][j] = F->mul(ey2[0][j], delta);
        if (det_acceptable(ctx, t)) {
            Mat g = RX.inverse().mul(stack(target_top, ey2));
            return g;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<SemilinearElem> tuple_equivalent(const GroupSpec& H,
                                               const SubspaceTuple& X,
                                               const SubspaceTuple& Y) {
    if (X.size() != Y.size())
        throw std::invalid_argument("tuple_equivalent: tuple length mismatch");
    if (X.size() == 0) throw std::invalid_argument("tuple_equivalent: empty tuples");
    const FieldPtr& F = X.entries[0].field();
    int n = X.entries[0].n();
    if (Y.entries[0].n() != n || Y.entries[0].dim() != X.entries[0].dim() ||
        !Y.entries[0].field()->same(*F))
        throw std::invalid_argument("tuple_equivalent: tuple shape mismatch");
    if (H.n() != n || !H.field()->same(*F))
        throw std::invalid_argument("tuple_equivalent: group/tuple mismatch");

    auto finish = [&](SemilinearElem h) -> std::optional<SemilinearElem> {
        if (!(apply_tuple(h, X) == Y))
            throw std::logic_error("tuple_equivalent: witness failed re-application");
        if (!H.contains(h))
            throw std::logic_error("tuple_equivalent: witness not in group");
        return h;
    };

    if (X == Y) return finish(SemilinearElem::identity(F, n));

    int f = F->f();
    for (int i : H.aut_image()) {
        // X^{(g, i)} = Y  <=>  X^g = Y^{phi^{-i}}
        SemilinearElem untwist{Mat::identity(F, n), (f - i) % f};
        std::vector<Subspace> Yt;
        Yt.reserve(Y.size());
        for (const auto& s : Y.entries) Yt.push_back(apply(untwist, s));

        LinearSolveContext ctx(H, i, false);
        auto g = solve_linear_map(ctx, F, n, X.entries, Yt);
        if (!g) continue;
        auto lam = scalar_fix(H, g->det(), i);
        if (!lam) continue;  // unreachable: solver enforced the coset
        return finish(SemilinearElem{g->scaled(*lam), i});
    }
    return std::nullopt;
}

}  // namespace relcx
