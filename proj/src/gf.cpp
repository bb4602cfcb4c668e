#include "relcx/gf.hpp"

#include <algorithm>
#include <numeric>

namespace relcx {

namespace {

// ---- Z_p[x] helpers on coefficient vectors (low degree first) ----

using Poly = std::vector<long long>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    // reduce by the monic modulus
    int deg_m = static_cast<int>(mod.size()) - 1;
    for (int i = static_cast<int>(c.size()) - 1; i >= deg_m; --i) {
        long long lead = c[i];
        if (lead == 0) continue;
        c[i] = 0;
        for (int j = 0; j < deg_m; ++j) {
            c[i - deg_m + j] = ((c[i - deg_m + j] - lead * mod[j]) % p + p) % p;
        }
    }
    c.resize(deg_m);
    trim(c);
    return c;
}

Poly poly_powmod(Poly base, long long e, const Poly& mod, long long p) {
    Poly result{1};
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

long long mod_inverse(long long a, long long p) {
    long long t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
    while (newr != 0) {
        long long qt = r / newr;
        long long tmp = t - qt * newt;
        t = newt;
        newt = tmp;
        tmp = r - qt * newr;
        r = newr;
        newr = tmp;
    }
    return ((t % p) + p) % p;
}

Poly poly_mod(Poly a, const Poly& m, long long p) {
    trim(a);
    int deg_m = static_cast<int>(m.size()) - 1;
    long long lead_inv = mod_inverse(m.back(), p);
    while (static_cast<int>(a.size()) - 1 >= deg_m) {
        long long c = (a.back() * lead_inv) % p;
        int shift = static_cast<int>(a.size()) - 1 - deg_m;
        for (int j = 0; j <= deg_m; ++j)
            a[shift + j] = ((a[shift + j] - c * m[j]) % p + p) % p;
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Monic degree-f polynomial irreducibility over Z_p: x^(p^f) = x mod g and
// gcd(x^(p^(f/r)) - x, g) = 1 for every prime r | f.
bool is_irreducible(const Poly& g, long long p, int f) {
    if (f == 1) return true;
    Poly x{0, 1};
    // x^(p^k) computed by iterating k-fold p-th powering
    auto x_pk = [&](int k) {
        Poly r = x;
        for (int i = 0; i < k; ++i) r = poly_powmod(r, p, g, p);
        return r;
    };
    Poly top = x_pk(f);
    Poly diff = top;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (long long r : prime_divisors(f)) {
        Poly h = x_pk(static_cast<int>(f / r));
        h.resize(std::max<size_t>(h.size(), 2), 0);
        h[1] = ((h[1] - 1) % p + p) % p;
        trim(h);
        Poly gg = poly_gcd(g, h, p);
        if (!(gg.size() == 1)) return false;  // gcd not constant
    }
    return true;
}

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::shared_ptr<const Field> Field::create(long long p, int f, long long max_q) {
    if (!is_prime(p)) throw std::invalid_argument("field_create: p is not prime");
    if (f < 1) throw std::invalid_argument("field_create: f must be >= 1");
    long long q = 1;
    for (int i = 0; i < f; ++i) {
        if (q > max_q / p)
            throw std::invalid_argument("field_create: q = p^f exceeds bound " +
                                        std::to_string(max_q));
        q *= p;
    }
    if (q > max_q)
        throw std::invalid_argument("field_create: q = p^f exceeds bound " +
                                    std::to_string(max_q));

    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->f_ = f;
    F->q_ = q;
    F->q_minus_1_prime_divisors_ = prime_divisors(q - 1);

    // Modulus: lexicographically smallest monic irreducible of degree f,
    // coefficient tuples (c_0, ..., c_{f-1}) compared low degree first.
    {
        Poly mod(f + 1, 0);
        mod[f] = 1;
        bool found = false;
        long long combos = 1;
        for (int i = 0; i < f; ++i) combos *= p;
        for (long long v = 0; v < combos && !found; ++v) {
            // c_0 is the most significant base-p digit of v, so increasing v
            // walks the tuples (c_0, ..., c_{f-1}) in lexicographic order
            long long rest = v;
            for (int i = f - 1; i >= 0; --i) {
                mod[i] = rest % p;
                rest /= p;
            }
            if (is_irreducible(mod, p, f)) found = true;
        }
        if (!found) throw std::logic_error("field_create: no irreducible modulus found");
        F->modulus_ = mod;
    }

    // Primitive element: smallest encoding of multiplicative order q-1.
    {
        long long omega = 0;
        for (long long a = 1; a < q; ++a) {
            bool primitive = true;
            for (long long r : F->q_minus_1_prime_divisors_) {
                if (F->poly_pow(a, (q - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                omega = a;
                break;
            }
        }
        if (omega == 0) throw std::logic_error("field_create: no primitive element");
        F->omega_ = omega;
    }

    if (q <= kTableBound) {
        F->tabled_ = true;
        F->exp_.assign(q - 1, 0);
        F->log_.assign(q, -1);
        long long cur = 1;
        for (long long k = 0; k < q - 1; ++k) {
            F->exp_[k] = cur;
            F->log_[cur] = k;
            cur = F->poly_mul(cur, F->omega_);
        }
        if (cur != 1) throw std::logic_error("field_create: omega order mismatch");
    }
    return F;
}

FieldPtr field_create(long long p, int f, long long max_q) {
    return Field::create(p, f, max_q);
}

FieldPtr field_create_q(long long q, long long max_q) {
    if (q < 2) throw std::invalid_argument("field_create_q: q must be >= 2");
    auto ps = prime_divisors(q);
    if (ps.size() != 1) throw std::invalid_argument("field_create_q: q is not a prime power");
    long long p = ps[0];
    int f = 0;
    long long t = q;
    while (t > 1) {
        if (t % p != 0) throw std::invalid_argument("field_create_q: q is not a prime power");
        t /= p;
        ++f;
    }
    return Field::create(p, f, max_q);
}

void Field::check_elem(long long a) const {
    if (a < 0 || a >= q_) throw std::invalid_argument("field element out of range");
}

std::vector<long long> Field::coeffs(long long a) const {
    check_elem(a);
    std::vector<long long> c(f_, 0);
    for (int i = 0; i < f_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

long long Field::from_coeffs(const std::vector<long long>& c) const {
    if (static_cast<int>(c.size()) > f_)
        throw std::invalid_argument("from_coeffs: too many coefficients");
    long long a = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        long long ci = ((c[i] % p_) + p_) % p_;
        a = a * p_ + ci;
    }
    return a;
}

long long Field::add(long long a, long long b) const {
    check_elem(a);
    check_elem(b);
    long long r = 0, mult = 1;
    for (int i = 0; i < f_; ++i) {
        long long s = (a % p_ + b % p_) % p_;
        r += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

long long Field::neg(long long a) const {
    check_elem(a);
    long long r = 0, mult = 1;
    for (int i = 0; i < f_; ++i) {
        long long s = (p_ - a % p_) % p_;
        r += s * mult;
        mult *= p_;
        a /= p_;
    }
    return r;
}

long long Field::sub(long long a, long long b) const { return add(a, neg(b)); }

long long Field::poly_mul(long long a, long long b) const {
    Poly pa = coeffs(a), pb = coeffs(b);
    trim(pa);
    trim(pb);
    Poly pc = poly_mul_mod(pa, pb, modulus_, p_);
    pc.resize(f_, 0);
    return from_coeffs(pc);
}

long long Field::poly_pow(long long a, long long k) const {
    long long result = 1, base = a;
    while (k > 0) {
        if (k & 1) result = poly_mul(result, base);
        base = poly_mul(base, base);
        k >>= 1;
    }
    return result;
}

long long Field::poly_inv(long long a) const {
    if (a == 0) throw std::domain_error("field inverse of zero");
    // extended Euclid in Z_p[x]
    Poly r0 = modulus_, r1 = coeffs(a);
    trim(r1);
    Poly t0{}, t1{1};
    while (!r1.empty() && !(r1.size() == 1 && r1[0] == 0)) {
        // r0 = qt * r1 + r2
        Poly r2 = r0;
        Poly qt;
        long long lead_inv = mod_inverse(r1.back(), p_);
        while (static_cast<int>(r2.size()) >= static_cast<int>(r1.size()) && !r2.empty()) {
            long long c = (r2.back() * lead_inv) % p_;
            int shift = static_cast<int>(r2.size()) - static_cast<int>(r1.size());
            if (static_cast<int>(qt.size()) < shift + 1) qt.resize(shift + 1, 0);
            qt[shift] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                r2[shift + j] = ((r2[shift + j] - c * r1[j]) % p_ + p_) % p_;
            trim(r2);
        }
        // t2 = t0 - qt * t1
        Poly qt_t1;
        if (!qt.empty() && !t1.empty()) {
            qt_t1.assign(qt.size() + t1.size() - 1, 0);
            for (size_t i = 0; i < qt.size(); ++i)
                for (size_t j = 0; j < t1.size(); ++j)
                    qt_t1[i + j] = (qt_t1[i + j] + qt[i] * t1[j]) % p_;
        }
        Poly t2 = t0;
        if (t2.size() < qt_t1.size()) t2.resize(qt_t1.size(), 0);
        for (size_t i = 0; i < qt_t1.size(); ++i)
            t2[i] = ((t2[i] - qt_t1[i]) % p_ + p_) % p_;
        trim(t2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant gcd; scale t0 by its inverse
    if (r0.size() != 1 || r0[0] == 0)
        throw std::logic_error("poly_inv: gcd with irreducible modulus not constant");
    long long scale = mod_inverse(r0[0], p_);
    for (auto& c : t0) c = (c * scale) % p_;
    t0 = poly_mod(t0, modulus_, p_);
    t0.resize(f_, 0);
    return from_coeffs(t0);
}

long long Field::mul(long long a, long long b) const {
    check_elem(a);
    check_elem(b);
    if (a == 0 || b == 0) return 0;
    if (tabled_) return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    return poly_mul(a, b);
}

long long Field::inv(long long a) const {
    check_elem(a);
    if (a == 0) throw std::domain_error("field inverse of zero");
    if (tabled_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return poly_inv(a);
}

long long Field::div(long long a, long long b) const {
    if (b == 0) throw std::domain_error("field division by zero");
    return mul(a, inv(b));
}

long long Field::pow(long long a, long long k) const {
    check_elem(a);
    if (a == 0) {
        if (k < 0) throw std::domain_error("field inverse of zero");
        return k == 0 ? 1 : 0;
    }
    long long m = q_ - 1;
    long long e = ((k % m) + m) % m;
    if (tabled_) return exp_[(log_[a] * e) % m];
    return poly_pow(a, e);
}

long long Field::frobenius(long long a, long long i) const {
    check_elem(a);
    if (a == 0) return 0;
    long long ii = ((i % f_) + f_) % f_;
    long long m = q_ - 1;
    // p^ii mod (q-1)
    long long e = 1 % m;
    for (long long t = 0; t < ii; ++t) e = (e * p_) % m;
    return pow(a, e == 0 ? m : e);
}

long long Field::mult_order(long long a) const {
    check_elem(a);
    if (a == 0) throw std::domain_error("order of zero");
    long long ord = q_ - 1;
    for (long long r : q_minus_1_prime_divisors_) {
        while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
    }
    return ord;
}

bool Field::power_subgroup_member(long long a, long long k) const {
    check_elem(a);
    if (a == 0) throw std::domain_error("power_subgroup_member: zero element");
    if (k < 1) throw std::invalid_argument("power_subgroup_member: k must be >= 1");
    long long g = std::gcd(k, q_ - 1);
    return pow(a, (q_ - 1) / g) == 1;
}

long long Field::log(long long a) const {
    check_elem(a);
    if (a == 0) throw std::domain_error("log of zero");
    if (tabled_) return log_[a];
    // baby-step giant-step would be better; plain scan is fine at our sizes
    long long cur = 1;
    for (long long k = 0; k < q_ - 1; ++k) {
        if (cur == a) return k;
        cur = poly_mul(cur, omega_);
    }
    throw std::logic_error("log: element not generated by omega");
}

long long Field::omega_pow(long long k) const {
    long long m = q_ - 1;
    long long e = ((k % m) + m) % m;
    if (tabled_) return exp_[e];
    return poly_pow(omega_, e);
}

}  // namespace relcx
