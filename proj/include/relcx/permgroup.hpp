#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relcx {

using bigint = boost::multiprecision::cpp_int;

/// Permutation of {0, ..., n-1} given by its image table.
struct Perm {
    std::vector<int> img;

    static Perm identity(int n) {
        Perm p;
        p.img.resize(n);
        for (int i = 0; i < n; ++i) p.img[i] = i;
        return p;
    }
    int n() const { return static_cast<int>(img.size()); }
    int operator()(int x) const { return img[x]; }
    bool is_identity() const {
        for (int i = 0; i < n(); ++i)
            if (img[i] != i) return false;
        return true;
    }
    /// this followed by other: (p*q)(x) = q(p(x)).
    Perm compose(const Perm& other) const {
        Perm out;
        out.img.resize(n());
        for (int i = 0; i < n(); ++i) out.img[i] = other.img[img[i]];
        return out;
    }
    Perm inverse() const {
        Perm out;
        out.img.resize(n());
        for (int i = 0; i < n(); ++i) out.img[img[i]] = i;
        return out;
    }
    bool operator==(const Perm& o) const { return img == o.img; }
};

/// Generators plus the group order (computed once via a stabilizer chain).
struct PermGroup {
    int n = 0;
    std::vector<Perm> gens;  // identity generators are dropped
    bigint order = 1;

    bool is_trivial() const { return gens.empty(); }
};

/// Base and strong generating set built by deterministic Schreier-Sims.
/// A prescribed base prefix makes pointwise stabilizers directly readable:
/// the strong generators fixing the prefix generate the stabilizer.
class StabChain {
public:
    StabChain(int n, const std::vector<Perm>& gens,
              const std::vector<int>& prescribed_base = {});

    const std::vector<int>& base() const { return base_; }
    bigint order() const;
    /// Strong generators fixing base[0..prefix_len); generates the pointwise
    /// stabilizer of those base points.
    std::vector<Perm> level_gens(size_t prefix_len) const;
    bigint level_order(size_t prefix_len) const;
    bool contains(const Perm& p) const;

private:
    struct Level {
        int b = -1;
        std::vector<Perm> gens;      // generators fixing base[0..i)
        std::vector<int> orbit;      // BFS order, orbit[0] = b
        std::vector<int> pos;        // position in orbit, or -1
        std::vector<int> from;       // BFS predecessor point
        std::vector<int> via;        // generator index used
    };

    int n_;
    std::vector<int> base_;
    std::vector<Level> levels_;

    void recompute_orbit(size_t i);
    Perm transversal(size_t i, int beta) const;
    /// Strips g through levels starting at `from`; returns the residue and
    /// the level where stripping stopped.
    std::pair<Perm, size_t> sift_from(size_t from, Perm g) const;
    void append_base_point(int pt);
    void run();
};

PermGroup make_perm_group(int n, std::vector<Perm> gens);
PermGroup pointwise_stabilizer(const PermGroup& G, const std::vector<int>& pts);

/// comp[x] = smallest point in the orbit of x under the generators.
std::vector<int> orbit_min_reps(int n, const std::vector<Perm>& gens);

/// Points of the orbit of x, sorted.
std::vector<int> orbit_of(int n, const std::vector<Perm>& gens, int x);

}  // namespace relcx
