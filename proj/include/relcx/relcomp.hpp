#pragma once

#include <optional>
#include <string>

#include "relcx/action.hpp"

namespace relcx {

/// Number of distinct prime divisors; omega_primes(1) = 0.  Throws for k < 1.
int omega_primes(long long k);

/// X ~_r Y under H: every r-subtuple pair is mapped by some element of H.
/// When r = |X| this is exactly equivalence.
bool r_equivalent(const GroupSpec& H, const SubspaceTuple& X, const SubspaceTuple& Y,
                  int r);

struct BoundEndpoint {
    int value = 0;
    std::string source;
};

/// Published interval for RC(H, Omega_m) with provenance tags; absent
/// endpoints mean no applicable bound.
struct BoundInterval {
    std::optional<BoundEndpoint> lower, upper;
    std::vector<std::string> notes;

    bool contains(int v) const {
        if (lower && v < lower->value) return false;
        if (upper && v > upper->value) return false;
        return true;
    }
};

BoundInterval theorem_bounds(const GroupSpec& H, int m);

struct SearchOptions {
    int threads = 1;
    double budget_secs = 0;  // 0 = no budget
};

/// Witness pair sharing its first k-1 points: X = prefix + (x_last),
/// Y = prefix + (y_last), with X ~_{k-1} Y but Y not in X^H.
struct PointWitness {
    std::vector<int> prefix;
    int x_last = -1;
    int y_last = -1;
    int k() const { return static_cast<int>(prefix.size()) + 1; }
};

/// Raw output of the canonical-representative search over removal-strict
/// point sets: the exact height and the longest witness pair (which gives
/// the exact relational complexity when the search completed).
struct SearchResult {
    bool complete = false;
    int height = 0;
    int best_k = 1;  // no witness found = 1
    std::optional<PointWitness> witness;
    long long nodes = 0;
};

SearchResult rc_height_search(const PermGroup& G, const SearchOptions& opts = {});

/// Longest strictly-decreasing pointwise-stabilizer chain ending at the
/// identity (the irredundant base size).  complete=false when the budget ran
/// out; height carries the best value found.
SearchResult ibase_search(const PermGroup& G, const SearchOptions& opts = {});

struct RCReport {
    std::string group;
    int n = 0;
    long long p = 0;
    int f = 0;
    int m = 1;
    long long omega_size = 0;

    bool exact = false;
    std::optional<int> rc;       // set when exact
    int interval_lo = 1;         // always valid lower bound
    std::optional<int> interval_hi;
    std::optional<PointWitness> witness;
    std::optional<int> height;
    std::optional<int> ibase;
    BoundInterval bounds;
    int k_bound_used = -1;       // search ceiling that applied
    long long elapsed_ms = 0;
    long long nodes = 0;
    int threads = 1;
};

struct RCOptions {
    int threads = 1;
    double budget_secs = 0;
    bool compute_ibase = false;
    long long max_omega = kDefaultOmegaBound;
};

RCReport rc_compute(const ActionHandle& handle, const RCOptions& opts = {});

/// Exact height of (H, Omega_m); throws std::runtime_error on budget.
int height_compute(const ActionHandle& handle, const RCOptions& opts = {});

/// Exact irredundant base size; requires a faithful action.
int ibase_compute(const ActionHandle& handle, const RCOptions& opts = {});

/// Literal-definition oracle: smallest r such that for all k <= k_max and
/// all pairs of k-tuples, r-equivalence implies equivalence.  Only for tiny
/// actions (|Omega|^k_max bounded).
int rc_bruteforce(const PermGroup& G, int k_max, long long tuple_bound = 4'000'000);
int rc_bruteforce(const ActionHandle& handle, int k_max,
                  long long tuple_bound = 4'000'000);

}  // namespace relcx
