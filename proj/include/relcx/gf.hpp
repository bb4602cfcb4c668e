#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcx {

/// Exact arithmetic in GF(p^f).
///
/// Elements are integer encodings in [0, q): an element with polynomial
/// coefficients c_0, ..., c_{f-1} (low degree first, each in [0, p)) is
/// encoded as sum_i c_i * p^i.  Encodings are canonical: two elements are
/// equal iff their encodings are equal, and this is the representation used
/// in all serialized output.
///
/// The modulus is the lexicographically smallest monic irreducible
/// polynomial of degree f over Z_p, comparing coefficient tuples
/// (c_0, c_1, ...) low degree first.  The primitive element omega is the
/// smallest encoding of multiplicative order q-1.  Fields up to
/// kTableBound elements use exp/log tables; larger fields fall back to
/// polynomial arithmetic with extended-Euclid inversion.
class Field {
public:
    static constexpr long long kDefaultMaxQ = 1024;
    static constexpr long long kTableBound = 1024;

    /// Builds GF(p^f).  Throws std::invalid_argument if p is not prime,
    /// f < 1, or p^f exceeds max_q.
    static std::shared_ptr<const Field> create(long long p, int f,
                                               long long max_q = kDefaultMaxQ);

    long long p() const { return p_; }
    int f() const { return f_; }
    long long q() const { return q_; }
    /// Monic modulus, coefficients low degree first, length f+1.
    const std::vector<long long>& modulus() const { return modulus_; }
    /// Encoding of the canonical primitive element.
    long long omega() const { return omega_; }

    long long add(long long a, long long b) const;
    long long sub(long long a, long long b) const;
    long long neg(long long a) const;
    long long mul(long long a, long long b) const;
    /// Throws std::domain_error on division by zero.
    long long div(long long a, long long b) const;
    long long inv(long long a) const;
    /// a^k with k any integer (negative allowed for nonzero a).
    long long pow(long long a, long long k) const;

    /// The automorphism a -> a^(p^i); i is reduced mod f.
    long long frobenius(long long a, long long i) const;

    /// True iff a is a k-th power in F*.  Throws std::domain_error for a = 0.
    bool power_subgroup_member(long long a, long long k) const;

    /// Multiplicative order of a nonzero element.
    long long mult_order(long long a) const;

    /// Discrete log base omega of a nonzero element.
    long long log(long long a) const;
    /// omega^k for any integer k.
    long long omega_pow(long long k) const;

    std::vector<long long> coeffs(long long a) const;
    long long from_coeffs(const std::vector<long long>& c) const;

    bool in_prime_subfield(long long a) const { return a < p_; }

    bool same(const Field& other) const {
        return p_ == other.p_ && f_ == other.f_;
    }

private:
    Field() = default;

    long long p_ = 0;
    long long q_ = 0;
    int f_ = 0;
    std::vector<long long> modulus_;
    long long omega_ = 0;
    std::vector<long long> q_minus_1_prime_divisors_;

    bool tabled_ = false;
    std::vector<long long> exp_;  // exp_[k] = omega^k, k in [0, q-1)
    std::vector<long long> log_;  // log_[a] for a in [1, q)

    // polynomial-representation arithmetic (used to bootstrap the tables
    // and as the only path when q > kTableBound)
    long long poly_mul(long long a, long long b) const;
    long long poly_inv(long long a) const;
    long long poly_pow(long long a, long long k) const;

    void check_elem(long long a) const;
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^f) with the canonical modulus and primitive element.
FieldPtr field_create(long long p, int f, long long max_q = Field::kDefaultMaxQ);

/// Convenience: GF(q) for a prime power q.  Throws if q is not a prime power.
FieldPtr field_create_q(long long q, long long max_q = Field::kDefaultMaxQ);

bool is_prime(long long n);
std::vector<long long> prime_divisors(long long n);

}  // namespace relcx
