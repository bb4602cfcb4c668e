#pragma once

#include <optional>
#include <unordered_map>

#include "relcx/permgroup.hpp"
#include "relcx/semilinear.hpp"

namespace relcx {

/// The pair (H, Omega_m) materialized as a permutation action: the canonical
/// point list, an index over it, and the generator images.  Scalars act
/// trivially, so the permutation group is the image of H modulo scalars.
class ActionHandle {
public:
    static constexpr long long kMaxGenTableCells = 10'000'000;

    ActionHandle(GroupSpec H, int m, long long max_omega = kDefaultOmegaBound);

    const GroupSpec& group() const { return H_; }
    int m() const { return m_; }
    long long num_points() const { return static_cast<long long>(omega_.size()); }
    const std::vector<Subspace>& omega() const { return omega_; }
    const Subspace& point(int i) const { return omega_[i]; }
    int index_of(const Subspace& s) const;

    const PermGroup& perm_group() const { return G_; }

    /// Image of one subspace point under a group element.
    int apply_point(const SemilinearElem& x, int i) const;
    /// The full permutation induced by a group element.
    Perm perm_of(const SemilinearElem& x) const;

    /// True iff the permutation image is faithful for H modulo scalars.
    bool faithful() const;

private:
    GroupSpec H_;
    int m_;
    std::vector<Subspace> omega_;
    std::unordered_map<std::string, int> index_;
    PermGroup G_;

    static std::string key_of(const Subspace& s);
};

}  // namespace relcx
