#include "relcx/action.hpp"

#include <stdexcept>

namespace relcx {

std::string ActionHandle::key_of(const Subspace& s) {
    std::string k;
    k.reserve(s.key().size() * 3);
    for (long long e : s.key()) {
        k += std::to_string(e);
        k += ',';
    }
    return k;
}

ActionHandle::ActionHandle(GroupSpec H, int m, long long max_omega)
    : H_(std::move(H)), m_(m) {
    omega_ = enumerate_omega(H_.field(), H_.n(), m, max_omega);
    index_.reserve(omega_.size() * 2);
    for (size_t i = 0; i < omega_.size(); ++i)
        index_[key_of(omega_[i])] = static_cast<int>(i);

    auto gens = H_.generators();
    if (static_cast<long long>(gens.size()) * num_points() > kMaxGenTableCells)
        throw std::invalid_argument("ActionHandle: generator image table exceeds bound");
    std::vector<Perm> perms;
    perms.reserve(gens.size());
    for (const auto& g : gens) perms.push_back(perm_of(g));
    G_ = make_perm_group(static_cast<int>(omega_.size()), std::move(perms));
}

int ActionHandle::index_of(const Subspace& s) const {
    auto it = index_.find(key_of(s));
    if (it == index_.end()) throw std::invalid_argument("ActionHandle: point not in omega");
    return it->second;
}

int ActionHandle::apply_point(const SemilinearElem& x, int i) const {
    return index_of(apply(x, omega_[i]));
}

Perm ActionHandle::perm_of(const SemilinearElem& x) const {
    Perm p;
    p.img.resize(omega_.size());
    for (size_t i = 0; i < omega_.size(); ++i)
        p.img[i] = apply_point(x, static_cast<int>(i));
    return p;
}

bool ActionHandle::faithful() const {
    return G_.order == H_.projective_order();
}

}  // namespace relcx
