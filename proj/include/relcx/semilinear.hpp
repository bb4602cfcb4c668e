#pragma once

#include <optional>
#include <vector>

#include "relcx/projective.hpp"

namespace relcx {

/// Element g*phi^aut of GammaL_n(q).  It acts on row vectors by
/// v -> frobenius^aut(v * g), so composition is
/// (g, i)(h, j) = (g * frobenius^{-i}(h), i + j).
struct SemilinearElem {
    Mat g;
    int aut = 0;  // exponent of the field automorphism phi: a -> a^p

    static SemilinearElem identity(const FieldPtr& F, int n) {
        return {Mat::identity(F, n), 0};
    }
};

SemilinearElem compose(const SemilinearElem& x, const SemilinearElem& y);
SemilinearElem inverse(const SemilinearElem& x);

/// Equality modulo nonzero scalar matrices.
bool projective_equal(const SemilinearElem& x, const SemilinearElem& y);
/// Scales so the first nonzero entry (row major) is 1.
SemilinearElem projective_normalize(const SemilinearElem& x);

Subspace apply(const SemilinearElem& x, const Subspace& s);
SubspaceTuple apply_tuple(const SemilinearElem& x, const SubspaceTuple& X);
Vec apply_vec(const SemilinearElem& x, const Vec& v);

/// Image of an element of H in GammaL/SL: its determinant together with the
/// automorphism exponent.  The quotient multiplies as
/// (a, i)(b, j) = (a * frobenius^{-i}(b), i + j), matching the composition
/// of semilinear elements.
struct QuotientPair {
    long long det;
    int aut;
    bool operator==(const QuotientPair& o) const { return det == o.det && aut == o.aut; }
    bool operator<(const QuotientPair& o) const {
        return aut != o.aut ? aut < o.aut : det < o.det;
    }
};

enum class GroupMode { SL, GL, SigmaL, GammaL, Parametric, Explicit };

/// A group H with SL_n(q) <= H <= GammaL_n(q), described by its image Q_H in
/// the quotient GammaL/SL.  Since SL is always contained, membership of
/// (g, i) depends only on (det g, i).
class GroupSpec {
public:
    static GroupSpec SL(int n, FieldPtr F);
    static GroupSpec GL(int n, FieldPtr F);
    static GroupSpec SigmaL(int n, FieldPtr F);
    static GroupSpec GammaL(int n, FieldPtr F);
    /// <SL, diag(omega^d, 1, ..., 1), phi^(f/e)> with d | q-1 and e | f.
    static GroupSpec parametric(int n, FieldPtr F, long long d, int e);
    static GroupSpec from_generators(int n, FieldPtr F,
                                     const std::vector<SemilinearElem>& gens);

    int n() const { return n_; }
    const FieldPtr& field() const { return F_; }
    GroupMode mode() const { return mode_; }
    long long param_d() const { return d_; }
    int param_e() const { return e_; }

    const std::vector<QuotientPair>& quotient_image() const { return qh_; }
    bool quotient_contains(long long det, int aut) const;

    bool contains(const SemilinearElem& x) const;

    bigint order() const;
    /// |H / (H intersect Z)| where Z is the scalar subgroup.
    bigint projective_order() const;

    /// Generating set used by the permutation backend: a transvection root
    /// subgroup basis plus a determinant-1 cycle for SL, then the mode's
    /// extra generators.
    std::vector<SemilinearElem> generators() const;

    /// Determinants of H intersect GL (a subgroup of F*), sorted.
    std::vector<long long> det_subgroup() const;
    /// Automorphism exponents occurring in Q_H, sorted.
    std::vector<int> aut_image() const;
    /// |aut_image()| = |H : H intersect GL|.
    int aut_index() const { return static_cast<int>(aut_image().size()); }
    /// Determinant coset {a : (a, i) in Q_H} for a fixed exponent i, sorted.
    std::vector<long long> det_coset(int aut) const;

    std::string describe() const;

private:
    GroupSpec(int n, FieldPtr F, GroupMode mode);
    void close_quotient(const std::vector<QuotientPair>& gens);

    int n_;
    FieldPtr F_;
    GroupMode mode_;
    long long d_ = 0;
    int e_ = 0;
    std::vector<SemilinearElem> explicit_gens_;
    std::vector<QuotientPair> qh_;       // sorted
    std::vector<char> qh_member_;        // indexed by aut * q + det
};

/// The linear space M_{A,B} of n x n matrices fixing every <e_i> and mapping
/// a_j into b_j.  All members are diagonal; the space decomposes into
/// blocks of coordinates tied together by overlapping supports.  Each block
/// carries a single pattern vector (entries on non-block coordinates zero),
/// and coordinates in no support are free.
struct DiagonalSpace {
    struct Block {
        std::vector<int> coords;        // sorted coordinate indices
        std::vector<long long> pattern; // length n; zero outside coords
        bool pattern_nonzero_everywhere = true;  // on its own coords
    };
    int n = 0;
    int dimension = 0;
    std::vector<Block> blocks;      // blocks with a nonzero pattern (1-dim each)
    std::vector<int> dead_coords;   // coordinates forced to zero
    std::vector<int> free_coords;   // coordinates in no constraint support
    std::vector<Mat> kernel_basis;  // diagonal matrices spanning the space
    std::optional<Mat> sample;      // an invertible member, if one exists
};

/// Solves for M_{A,B}; A and B are tuples of 1-spaces with support size >= 2
/// (the set Omega minus Delta).  Throws std::invalid_argument on malformed
/// input.  The vector form permits empty constraint lists.
DiagonalSpace diagonal_mapping_space(const FieldPtr& F, int n,
                                     const std::vector<Subspace>& A,
                                     const std::vector<Subspace>& B);
DiagonalSpace diagonal_mapping_space(const SubspaceTuple& A, const SubspaceTuple& B);

/// Decides Y in X^H; returns an element h of H with X^h = Y, or nullopt.
/// The witness is the first found in canonical search order and is verified
/// by re-application before being returned.
std::optional<SemilinearElem> tuple_equivalent(const GroupSpec& H,
                                               const SubspaceTuple& X,
                                               const SubspaceTuple& Y);

}  // namespace relcx
