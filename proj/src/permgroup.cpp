#include "relcx/permgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcx {

StabChain::StabChain(int n, const std::vector<Perm>& gens,
                     const std::vector<int>& prescribed_base)
    : n_(n) {
    for (int b : prescribed_base) {
        if (b < 0 || b >= n) throw std::invalid_argument("StabChain: base point out of range");
        if (std::find(base_.begin(), base_.end(), b) == base_.end()) base_.push_back(b);
    }
    std::vector<Perm> clean;
    for (const auto& g : gens) {
        if (static_cast<int>(g.img.size()) != n)
            throw std::invalid_argument("StabChain: generator degree mismatch");
        if (!g.is_identity() &&
            std::find(clean.begin(), clean.end(), g) == clean.end())
            clean.push_back(g);
    }
    // every nonidentity generator must move some base point
    for (const auto& g : clean) {
        bool moves_base = false;
        for (int b : base_)
            if (g(b) != b) {
                moves_base = true;
                break;
            }
        if (!moves_base) {
            for (int x = 0; x < n_; ++x)
                if (g(x) != x) {
                    base_.push_back(x);
                    break;
                }
        }
    }
    levels_.resize(base_.size() + 1);
    for (size_t i = 0; i < base_.size(); ++i) levels_[i].b = base_[i];
    // distribute generators: level i holds those fixing base[0..i)
    for (const auto& g : clean) {
        size_t i = 0;
        levels_[0].gens.push_back(g);
        while (i < base_.size() && g(base_[i]) == base_[i]) {
            levels_[i + 1].gens.push_back(g);
            ++i;
        }
    }
    run();
}

void StabChain::recompute_orbit(size_t i) {
    Level& L = levels_[i];
    L.orbit.clear();
    L.pos.assign(n_, -1);
    L.from.assign(n_, -1);
    L.via.assign(n_, -1);
    L.orbit.push_back(L.b);
    L.pos[L.b] = 0;
    for (size_t head = 0; head < L.orbit.size(); ++head) {
        int gamma = L.orbit[head];
        for (size_t s = 0; s < L.gens.size(); ++s) {
            int delta = L.gens[s](gamma);
            if (L.pos[delta] < 0) {
                L.pos[delta] = static_cast<int>(L.orbit.size());
                L.orbit.push_back(delta);
                L.from[delta] = gamma;
                L.via[delta] = static_cast<int>(s);
            }
        }
    }
}

Perm StabChain::transversal(size_t i, int beta) const {
    const Level& L = levels_[i];
    std::vector<int> path;  // generator indices from b out to beta
    int cur = beta;
    while (cur != L.b) {
        path.push_back(L.via[cur]);
        cur = L.from[cur];
    }
    Perm u = Perm::identity(n_);
    for (auto it = path.rbegin(); it != path.rend(); ++it) u = u.compose(L.gens[*it]);
    return u;
}

std::pair<Perm, size_t> StabChain::sift_from(size_t from, Perm g) const {
    for (size_t i = from; i < base_.size(); ++i) {
        int beta = g(base_[i]);
        if (beta == base_[i]) continue;
        if (levels_[i].pos[beta] < 0) return {g, i};
        g = g.compose(transversal(i, beta).inverse());
    }
    return {g, base_.size()};
}

void StabChain::append_base_point(int pt) {
    base_.push_back(pt);
    Level L;
    L.b = pt;
    levels_.insert(levels_.end() - 1, std::move(L));
    // the new last-but-one level inherits the former terminal level's gens
    levels_[base_.size() - 1].gens = levels_[base_.size()].gens;
    levels_[base_.size()].gens.clear();
}

void StabChain::run() {
    if (base_.empty()) return;  // trivial group
    for (size_t i = 0; i < base_.size(); ++i) recompute_orbit(i);

    size_t i = base_.size();
    while (i > 0) {
        --i;
        bool restart = false;
        Level& L = levels_[i];
        for (size_t oi = 0; oi < L.orbit.size() && !restart; ++oi) {
            int beta = L.orbit[oi];
            Perm u_beta = transversal(i, beta);
            for (size_t s = 0; s < L.gens.size() && !restart; ++s) {
                int image = L.gens[s](beta);
                Perm schreier =
                    u_beta.compose(L.gens[s]).compose(transversal(i, image).inverse());
                if (schreier.is_identity()) continue;
                auto [residue, j] = sift_from(i + 1, std::move(schreier));
                if (residue.is_identity()) continue;
                if (j == base_.size()) {
                    int moved = -1;
                    for (int x = 0; x < n_; ++x)
                        if (residue(x) != x) {
                            moved = x;
                            break;
                        }
                    append_base_point(moved);
                }
                for (size_t k = i + 1; k <= j && k < levels_.size(); ++k)
                    levels_[k].gens.push_back(residue);
                for (size_t k = i + 1; k <= j && k < base_.size(); ++k)
                    recompute_orbit(k);
                i = std::min(j, base_.size() - 1) + 1;  // resume below level j
                restart = true;
            }
        }
        if (restart) continue;
    }
}

bigint StabChain::order() const { return level_order(0); }

bigint StabChain::level_order(size_t prefix_len) const {
    bigint o = 1;
    for (size_t i = prefix_len; i < base_.size(); ++i)
        o *= static_cast<long long>(levels_[i].orbit.size());
    return o;
}

std::vector<Perm> StabChain::level_gens(size_t prefix_len) const {
    if (prefix_len >= levels_.size()) return {};
    return levels_[prefix_len].gens;
}

bool StabChain::contains(const Perm& p) const {
    if (p.n() != n_) return false;
    auto [residue, lvl] = sift_from(0, p);
    (void)lvl;
    return residue.is_identity();
}

PermGroup make_perm_group(int n, std::vector<Perm> gens) {
    PermGroup G;
    G.n = n;
    for (auto& g : gens)
        if (!g.is_identity() && std::find(G.gens.begin(), G.gens.end(), g) == G.gens.end())
            G.gens.push_back(std::move(g));
    if (G.gens.empty()) {
        G.order = 1;
    } else {
        StabChain chain(n, G.gens);
        G.order = chain.order();
    }
    return G;
}

PermGroup pointwise_stabilizer(const PermGroup& G, const std::vector<int>& pts) {
    PermGroup out;
    out.n = G.n;
    if (G.gens.empty()) return out;
    StabChain chain(G.n, G.gens, pts);
    // prescribed points are deduplicated in base order
    size_t prefix = 0;
    {
        std::vector<int> seen;
        for (int b : pts)
            if (std::find(seen.begin(), seen.end(), b) == seen.end()) seen.push_back(b);
        prefix = seen.size();
    }
    auto gens = chain.level_gens(prefix);
    for (auto& g : gens)
        if (!g.is_identity() &&
            std::find(out.gens.begin(), out.gens.end(), g) == out.gens.end())
            out.gens.push_back(std::move(g));
    out.order = chain.level_order(prefix);
    return out;
}

std::vector<int> orbit_min_reps(int n, const std::vector<Perm>& gens) {
    std::vector<int> comp(n, -1);
    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = start;
        queue.assign(1, start);
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            for (const auto& g : gens) {
                int y = g(x);
                if (comp[y] < 0) {
                    comp[y] = start;
                    queue.push_back(y);
                }
            }
        }
    }
    return comp;  // start points are scanned in increasing order
}

std::vector<int> orbit_of(int n, const std::vector<Perm>& gens, int x) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{x}, out{x};
    seen[x] = 1;
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            int b = g(a);
            if (!seen[b]) {
                seen[b] = 1;
                out.push_back(b);
                queue.push_back(b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace relcx
