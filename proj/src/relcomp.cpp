#include "relcx/relcomp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace relcx {

int omega_primes(long long k) {
    if (k < 1) throw std::invalid_argument("omega_primes: k must be >= 1");
    return static_cast<int>(prime_divisors(k).size());
}

bool r_equivalent(const GroupSpec& H, const SubspaceTuple& X, const SubspaceTuple& Y,
                  int r) {
    int k = static_cast<int>(X.size());
    if (static_cast<int>(Y.size()) != k)
        throw std::invalid_argument("r_equivalent: tuple length mismatch");
    if (r < 1 || r > k) throw std::invalid_argument("r_equivalent: need 1 <= r <= k");
    std::vector<size_t> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        if (!tuple_equivalent(H, subtuple(X, idx), subtuple(Y, idx))) return false;
        int i = r - 1;
        while (i >= 0 && idx[i] == static_cast<size_t>(k - r + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

// ---------------------------------------------------------------------------
// canonical-representative search

namespace {

using Clock = std::chrono::steady_clock;

int pot_depth(int t, const bigint& order) {
    if (order <= 1) return t;
    return t + static_cast<int>(boost::multiprecision::msb(order));
}

bool witness_better(const PointWitness& a, const PointWitness& b) {
    if (a.k() != b.k()) return a.k() > b.k();
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    if (a.x_last != b.x_last) return a.x_last < b.x_last;
    return a.y_last < b.y_last;
}

struct SharedState {
    std::atomic<int> best_height{0};
    std::atomic<int> best_k{1};
    std::atomic<bool> out_of_budget{false};
    std::optional<Clock::time_point> deadline;
    std::mutex merge_mutex;
    std::optional<PointWitness> best_witness;
    std::atomic<long long> nodes{0};

    void raise_height(int h) {
        int cur = best_height.load();
        while (h > cur && !best_height.compare_exchange_weak(cur, h)) {
        }
    }
    void offer_witness(const PointWitness& w) {
        int cur = best_k.load();
        while (w.k() > cur && !best_k.compare_exchange_weak(cur, w.k())) {
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        if (!best_witness || witness_better(w, *best_witness)) best_witness = w;
    }
    bool over_deadline() {
        if (!deadline) return false;
        if (Clock::now() > *deadline) {
            out_of_budget.store(true);
            return true;
        }
        return out_of_budget.load();
    }
};

struct RcNode {
    std::vector<int> pts;
    PermGroup stab;                  // pointwise stabilizer of pts
    std::vector<PermGroup> deleted;  // deleted[i] = stabilizer of pts minus pts[i]
};

// Processes one node of the removal-strict tree: records height, runs the
// witness test for k = |pts| + 1, and lists the children to recurse into.
// Returns false if the node is not removal-strict (whole subtree pruned).
bool process_rc_node(const PermGroup& G, const RcNode& node, SharedState& shared,
                     std::vector<RcNode>* children) {
    const int N = G.n;
    const int t = static_cast<int>(node.pts.size());
    shared.nodes.fetch_add(1, std::memory_order_relaxed);

    // removal-strictness: each point must be moved by the stabilizer of the rest
    for (int i = 0; i < t; ++i) {
        bool moved = false;
        for (const auto& g : node.deleted[i].gens)
            if (g(node.pts[i]) != node.pts[i]) {
                moved = true;
                break;
            }
        if (!moved) return false;
    }
    shared.raise_height(t);

    std::vector<int> scomp = orbit_min_reps(N, node.stab.gens);

    // witness test at k = t + 1: find c, y with y in every deleted-stabilizer
    // orbit of c but outside its full-stabilizer orbit
    if (t >= 1) {
        std::vector<std::vector<int>> dcomp(t);
        for (int i = 0; i < t; ++i) dcomp[i] = orbit_min_reps(N, node.deleted[i].gens);
        // member lists of the first deleted stabilizer's orbits
        std::vector<std::vector<int>> d0_members(N);
        for (int y = 0; y < N; ++y) d0_members[dcomp[0][y]].push_back(y);

        for (int c = 0; c < N; ++c) {
            if (scomp[c] != c) continue;  // canonical orbit representatives only
            int found_y = -1;
            for (int y : d0_members[dcomp[0][c]]) {
                if (scomp[y] == scomp[c]) continue;
                bool ok = true;
                for (int i = 1; i < t; ++i)
                    if (dcomp[i][y] != dcomp[i][c]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    found_y = y;
                    break;
                }
            }
            if (found_y >= 0) {
                PointWitness w;
                w.prefix = node.pts;
                w.x_last = c;
                w.y_last = found_y;
                shared.offer_witness(w);
                break;  // smaller c wins all later ties at this k
            }
        }
    }

    if (children == nullptr) return true;
    children->clear();
    if (node.stab.order <= 1) return true;
    int pot = pot_depth(t, node.stab.order);
    if (pot <= shared.best_height.load(std::memory_order_relaxed) &&
        pot + 1 < shared.best_k.load(std::memory_order_relaxed))
        return true;

    std::vector<int> orbit_size(N, 0);
    for (int y = 0; y < N; ++y) ++orbit_size[scomp[y]];
    for (int c = 0; c < N; ++c) {
        if (scomp[c] != c || orbit_size[c] <= 1) continue;
        RcNode child;
        child.pts = node.pts;
        child.pts.push_back(c);
        child.stab = pointwise_stabilizer(node.stab, {c});
        child.deleted.reserve(t + 1);
        for (int i = 0; i < t; ++i)
            child.deleted.push_back(pointwise_stabilizer(node.deleted[i], {c}));
        child.deleted.push_back(node.stab);
        children->push_back(std::move(child));
    }
    return true;
}

void rc_dfs(const PermGroup& G, const RcNode& node, SharedState& shared) {
    if (shared.over_deadline()) return;
    std::vector<RcNode> children;
    if (!process_rc_node(G, node, shared, &children)) return;
    for (const auto& ch : children) rc_dfs(G, ch, shared);
}

struct IbNode {
    std::vector<int> pts;
    PermGroup stab;
};

void ib_children(const PermGroup& G, const IbNode& node, SharedState& shared,
                 std::vector<IbNode>* children) {
    const int N = G.n;
    const int t = static_cast<int>(node.pts.size());
    shared.nodes.fetch_add(1, std::memory_order_relaxed);
    if (node.stab.order <= 1) {
        shared.raise_height(t);  // chain reached the identity
        children->clear();
        return;
    }
    children->clear();
    if (pot_depth(t, node.stab.order) <= shared.best_height.load(std::memory_order_relaxed))
        return;
    std::vector<int> scomp = orbit_min_reps(N, node.stab.gens);
    std::vector<int> orbit_size(N, 0);
    for (int y = 0; y < N; ++y) ++orbit_size[scomp[y]];
    for (int c = 0; c < N; ++c) {
        if (scomp[c] != c || orbit_size[c] <= 1) continue;
        IbNode child;
        child.pts = node.pts;
        child.pts.push_back(c);
        child.stab = pointwise_stabilizer(node.stab, {c});
        children->push_back(std::move(child));
    }
}

void ib_dfs(const PermGroup& G, const IbNode& node, SharedState& shared) {
    if (shared.over_deadline()) return;
    std::vector<IbNode> children;
    ib_children(G, node, shared, &children);
    for (const auto& ch : children) ib_dfs(G, ch, shared);
}

template <typename Node, typename ProcessFrontier>
void run_parallel(std::vector<Node> frontier, int threads, ProcessFrontier process) {
    if (threads <= 1 || frontier.size() <= 1) {
        for (const auto& item : frontier) process(item);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= frontier.size()) break;
            process(frontier[i]);
        }
    };
    std::vector<std::thread> pool;
    int nw = std::min<int>(threads, static_cast<int>(frontier.size()));
    pool.reserve(nw);
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

SearchResult rc_height_search(const PermGroup& G, const SearchOptions& opts) {
    SharedState shared;
    if (opts.budget_secs > 0)
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(opts.budget_secs));

    RcNode root;
    root.stab = G;

    // expand a shallow frontier sequentially, then fan subtrees out to workers
    std::vector<RcNode> frontier{std::move(root)};
    const size_t want = static_cast<size_t>(std::max(8, opts.threads * 4));
    for (int depth = 0; depth < 2 && frontier.size() < want; ++depth) {
        std::vector<RcNode> next;
        for (const auto& node : frontier) {
            std::vector<RcNode> children;
            if (process_rc_node(G, node, shared, &children))
                for (auto& ch : children) next.push_back(std::move(ch));
        }
        if (next.empty()) {
            frontier.clear();
            break;
        }
        frontier = std::move(next);
    }

    run_parallel(std::move(frontier), opts.threads,
                 [&](const RcNode& item) { rc_dfs(G, item, shared); });

    SearchResult res;
    res.complete = !shared.out_of_budget.load();
    res.height = shared.best_height.load();
    res.best_k = std::max(1, shared.best_k.load());
    res.witness = shared.best_witness;
    res.nodes = shared.nodes.load();
    return res;
}

SearchResult ibase_search(const PermGroup& G, const SearchOptions& opts) {
    SharedState shared;
    if (opts.budget_secs > 0)
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(opts.budget_secs));
    IbNode root;
    root.stab = G;
    std::vector<IbNode> frontier{std::move(root)};
    const size_t want = static_cast<size_t>(std::max(8, opts.threads * 4));
    for (int depth = 0; depth < 2 && frontier.size() < want; ++depth) {
        std::vector<IbNode> next;
        for (const auto& node : frontier) {
            std::vector<IbNode> children;
            ib_children(G, node, shared, &children);
            for (auto& ch : children) next.push_back(std::move(ch));
        }
        if (next.empty()) {
            frontier.clear();
            break;
        }
        frontier = std::move(next);
    }
    run_parallel(std::move(frontier), opts.threads,
                 [&](const IbNode& item) { ib_dfs(G, item, shared); });

    SearchResult res;
    res.complete = !shared.out_of_budget.load();
    res.height = shared.best_height.load();
    res.nodes = shared.nodes.load();
    return res;
}

// ---------------------------------------------------------------------------
// theorem bounds

namespace {

bool dets_cover_all_mod_nth_powers(const GroupSpec& H) {
    const Field& F = *H.field();
    long long m = F.q() - 1;
    long long g = std::gcd(static_cast<long long>(H.n()), m);
    // cosets of the n-th powers are classified by log mod g
    std::vector<char> hit(g, 0);
    for (long long d : H.det_subgroup()) hit[F.log(d) % g] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool all_dets_are_nth_powers(const GroupSpec& H) {
    const Field& F = *H.field();
    for (const auto& p : H.quotient_image())
        if (!F.power_subgroup_member(p.det, H.n())) return false;
    return true;
}

void add_lower(BoundInterval& b, int v, const std::string& src) {
    if (!b.lower || v > b.lower->value) b.lower = BoundEndpoint{v, src};
}

void add_upper(BoundInterval& b, int v, const std::string& src) {
    if (!b.upper || v < b.upper->value) b.upper = BoundEndpoint{v, src};
}

void set_exact(BoundInterval& b, int v, const std::string& src) {
    // exact theorem values are authoritative for both endpoints
    b.lower = BoundEndpoint{v, src};
    b.upper = BoundEndpoint{v, src};
}

}  // namespace

BoundInterval theorem_bounds(const GroupSpec& H, int m) {
    BoundInterval b;
    int n = H.n();
    long long q = H.field()->q();
    int e = H.aut_index();

    if (n < 2) {
        b.notes.push_back("no published bounds for n < 2");
        return b;
    }
    bool nontrivial = subspace_count(q, n, m) > 1;
    if (nontrivial) add_lower(b, 2, "nontrivial_action");

    if (m == 1) {
        if (q == 2) {
            set_exact(b, n, "q2_exact");
            return b;
        }
        bool covers = dets_cover_all_mod_nth_powers(H);
        bool is_pgl = (e == 1) && covers;
        bool in_psigmal = all_dets_are_nth_powers(H);
        bool psigmal_proper = std::gcd(static_cast<long long>(n), q - 1) > 1;
        add_lower(b, n, "general_n_lower");
        if (n == 2) {
            if (is_pgl) {
                if (q == 3)
                    set_exact(b, 2, "pgl2_q3_exact");
                else
                    set_exact(b, 4, "n2_height_exact");
            } else if (e == 1) {
                if (q >= 7) set_exact(b, 4, "n2_height_exact");
                else b.notes.push_back("n=2 subgroup with q < 7: no published value");
            } else {
                bool is_psigmal29 = (q == 9 && e == 2 && in_psigmal);
                if (is_psigmal29) {
                    set_exact(b, 3, "psigmal2_9_exact");
                } else if (q >= 8) {
                    add_lower(b, 4, "n2_semilinear_lower");
                    add_upper(b, 4 + omega_primes(e), "n2_height_plus_aut");
                } else {
                    b.notes.push_back("n=2 semilinear with q < 8: no published value");
                }
            }
        } else {  // n >= 3
            if (e == 1) {
                if (is_pgl) {
                    set_exact(b, q <= 3 ? n : n + 2, "pgl_1spaces_exact");
                } else {
                    set_exact(b, n == 3 ? 2 * n - 1 : 2 * n - 2, "psl_range_exact");
                }
            } else {
                add_upper(b, 2 * n - 1 + omega_primes(e), "height_plus_aut");
                add_lower(b, n + 2, "general_np2_lower");
                if (covers) add_lower(b, n + 3, "gammal_lower");
                if (in_psigmal && psigmal_proper) add_lower(b, 2 * n - 2, "psl_lower");
            }
        }
    } else if (m >= 2 && 2 * m <= n) {
        add_lower(b, m * n - m * m + 1, "mspace_lower");
        add_upper(b, (m + 1) * n - 2 * m + 2 + omega_primes(e), "mspace_ibase_upper");
    } else {
        b.notes.push_back("m outside {1, ..., floor(n/2)}: no published bounds");
    }
    return b;
}

// ---------------------------------------------------------------------------
// top-level computations

RCReport rc_compute(const ActionHandle& handle, const RCOptions& opts) {
    auto start = Clock::now();
    const GroupSpec& H = handle.group();

    RCReport rep;
    rep.group = H.describe();
    rep.n = H.n();
    rep.p = H.field()->p();
    rep.f = H.field()->f();
    rep.m = handle.m();
    rep.omega_size = handle.num_points();
    rep.threads = opts.threads;
    rep.bounds = theorem_bounds(H, handle.m());

    SearchOptions sopts;
    sopts.threads = opts.threads;
    sopts.budget_secs = opts.budget_secs;
    SearchResult res = rc_height_search(handle.perm_group(), sopts);

    rep.nodes = res.nodes;
    rep.witness = res.witness;
    if (res.complete) {
        rep.exact = true;
        rep.rc = std::max(res.best_k, 1);
        rep.interval_lo = *rep.rc;
        rep.interval_hi = *rep.rc;
        rep.height = res.height;
        rep.k_bound_used = res.height + 1;
    } else {
        rep.exact = false;
        rep.interval_lo = std::max(res.best_k, rep.bounds.lower ? rep.bounds.lower->value : 1);
        if (rep.bounds.upper) rep.interval_hi = rep.bounds.upper->value;
        rep.k_bound_used = rep.bounds.upper ? rep.bounds.upper->value : -1;
        // a found witness meeting the published upper bound pins the value
        if (rep.interval_hi && rep.interval_lo == *rep.interval_hi) {
            rep.exact = true;
            rep.rc = rep.interval_lo;
        }
    }

    if (opts.compute_ibase && handle.faithful()) {
        SearchResult ib = ibase_search(handle.perm_group(), sopts);
        if (ib.complete) rep.ibase = ib.height;
    }

    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                           start)
                         .count();
    return rep;
}

int height_compute(const ActionHandle& handle, const RCOptions& opts) {
    SearchOptions sopts;
    sopts.threads = opts.threads;
    sopts.budget_secs = opts.budget_secs;
    SearchResult res = rc_height_search(handle.perm_group(), sopts);
    if (!res.complete) throw std::runtime_error("height_compute: budget exhausted");
    return res.height;
}

int ibase_compute(const ActionHandle& handle, const RCOptions& opts) {
    if (!handle.faithful())
        throw std::invalid_argument("ibase_compute: action is not faithful");
    SearchOptions sopts;
    sopts.threads = opts.threads;
    sopts.budget_secs = opts.budget_secs;
    SearchResult res = ibase_search(handle.perm_group(), sopts);
    if (!res.complete) throw std::runtime_error("ibase_compute: budget exhausted");
    return res.height;
}

// ---------------------------------------------------------------------------
// literal-definition oracle

int rc_bruteforce(const PermGroup& G, int k_max, long long tuple_bound) {
    if (k_max < 1) throw std::invalid_argument("rc_bruteforce: k_max must be >= 1");
    const long long N = G.n;
    long long total = 1;
    for (int k = 1; k <= k_max; ++k) {
        if (total > tuple_bound / N)
            throw std::invalid_argument("rc_bruteforce: |Omega|^k_max exceeds bound");
        total *= N;
    }

    // orbit ids of all k-tuples, k = 1..k_max; tuples encoded base N with the
    // first entry most significant
    std::vector<std::vector<int>> oid(k_max + 1);
    for (int k = 1; k <= k_max; ++k) {
        long long count = 1;
        for (int i = 0; i < k; ++i) count *= N;
        auto& ids = oid[k];
        ids.assign(count, -1);
        std::vector<long long> stack;
        std::vector<int> digits(k);
        for (long long start = 0; start < count; ++start) {
            if (ids[start] >= 0) continue;
            int id = static_cast<int>(start);  // orbit labeled by its smallest tuple
            ids[start] = id;
            stack.assign(1, start);
            while (!stack.empty()) {
                long long t = stack.back();
                stack.pop_back();
                long long rest = t;
                for (int i = k - 1; i >= 0; --i) {
                    digits[i] = static_cast<int>(rest % N);
                    rest /= N;
                }
                for (const auto& g : G.gens) {
                    long long img = 0;
                    for (int i = 0; i < k; ++i) img = img * N + g(digits[i]);
                    if (ids[img] < 0) {
                        ids[img] = id;
                        stack.push_back(img);
                    }
                }
            }
        }
    }

    for (int r = 1; r <= k_max; ++r) {
        bool ok = true;
        for (int k = r + 1; k <= k_max && ok; ++k) {
            long long count = 1;
            for (int i = 0; i < k; ++i) count *= N;
            // all r-subsets of {0..k-1} in lexicographic order
            std::vector<std::vector<int>> subsets;
            {
                std::vector<int> idx(r);
                for (int i = 0; i < r; ++i) idx[i] = i;
                while (true) {
                    subsets.push_back(idx);
                    int i = r - 1;
                    while (i >= 0 && idx[i] == k - r + i) --i;
                    if (i < 0) break;
                    ++idx[i];
                    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
            std::unordered_map<std::string, int> sig_to_oid;
            sig_to_oid.reserve(count * 2);
            std::vector<int> digits(k);
            std::string sig;
            for (long long t = 0; t < count && ok; ++t) {
                long long rest = t;
                for (int i = k - 1; i >= 0; --i) {
                    digits[i] = static_cast<int>(rest % N);
                    rest /= N;
                }
                sig.clear();
                for (const auto& sub : subsets) {
                    long long enc = 0;
                    for (int pos : sub) enc = enc * N + digits[pos];
                    sig += std::to_string(oid[r][enc]);
                    sig += ',';
                }
                auto [it, inserted] = sig_to_oid.emplace(sig, oid[k][t]);
                if (!inserted && it->second != oid[k][t]) ok = false;
            }
        }
        if (ok) return r;
    }
    return k_max;
}

int rc_bruteforce(const ActionHandle& handle, int k_max, long long tuple_bound) {
    return rc_bruteforce(handle.perm_group(), k_max, tuple_bound);
}

}  // namespace relcx
