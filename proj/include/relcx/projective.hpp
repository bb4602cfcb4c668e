#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relcx/linalg.hpp"

namespace relcx {

using bigint = boost::multiprecision::cpp_int;

/// An m-dimensional subspace of F_q^n, held as its unique RREF basis.
/// Equality and ordering are on the basis entry encodings, row major.
class Subspace {
public:
    /// Canonicalizes an arbitrary spanning matrix.  Throws if the span is zero.
    explicit Subspace(const Mat& spanning);

    static Subspace line(FieldPtr F, const std::vector<long long>& coords);

    int n() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const FieldPtr& field() const { return basis_.field(); }

    /// Indices (0-based) carrying a nonzero coordinate in some member.
    std::vector<int> support() const;

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    const std::vector<long long>& key() const { return basis_.key(); }
    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator<(const Subspace& o) const;

private:
    Mat basis_;
};

/// Ordered tuple of subspaces of a common ambient space with a common
/// dimension; repeated entries are allowed.
struct SubspaceTuple {
    std::vector<Subspace> entries;

    SubspaceTuple() = default;
    explicit SubspaceTuple(std::vector<Subspace> e);

    size_t size() const { return entries.size(); }
    const Subspace& operator[](size_t i) const { return entries[i]; }
    bool operator==(const SubspaceTuple& o) const { return entries == o.entries; }
};

/// Number of m-subspaces of F_q^n (Gaussian binomial, product formula).
bigint subspace_count(long long q, int n, int m);

constexpr long long kDefaultOmegaBound = 20000;

/// All m-subspaces of F_q^n, exactly once, sorted by canonical key.
/// Throws std::invalid_argument if the count exceeds the bound.
std::vector<Subspace> enumerate_omega(const FieldPtr& F, int n, int m,
                                      long long bound = kDefaultOmegaBound);

Subspace span_of_tuple(const SubspaceTuple& X);
int tuple_dim(const SubspaceTuple& X);

/// Order-preserving deletion of entry i (0-based); result must be nonempty.
SubspaceTuple delete_entry(const SubspaceTuple& X, size_t i);
SubspaceTuple subtuple(const SubspaceTuple& X, const std::vector<size_t>& idx);

}  // namespace relcx
