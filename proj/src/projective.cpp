#include "relcx/projective.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcx {

Subspace::Subspace(const Mat& spanning) {
    auto [R, rank] = spanning.rref();
    if (rank == 0) throw std::invalid_argument("Subspace: zero span");
    basis_ = R;
}

Subspace Subspace::line(FieldPtr F, const std::vector<long long>& coords) {
    return Subspace(Mat::from_rows(std::move(F), {coords}));
}

std::vector<int> Subspace::support() const {
    std::vector<int> out;
    for (int j = 0; j < basis_.cols(); ++j) {
        bool nonzero = false;
        for (int i = 0; i < basis_.rows(); ++i)
            if (basis_.at(i, j) != 0) {
                nonzero = true;
                break;
            }
        if (nonzero) out.push_back(j);
    }
    return out;
}

bool Subspace::contains(const Vec& v) const {
    // v is in the row space iff appending it does not raise the rank
    Mat stacked(basis_.field(), basis_.rows() + 1, basis_.cols());
    for (int i = 0; i < basis_.rows(); ++i)
        for (int j = 0; j < basis_.cols(); ++j) stacked.set(i, j, basis_.at(i, j));
    for (int j = 0; j < basis_.cols(); ++j) stacked.set(basis_.rows(), j, v.c[j]);
    return stacked.rank() == basis_.rows();
}

bool Subspace::contains(const Subspace& other) const {
    for (int i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

bool Subspace::operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return key() < o.key();
}

SubspaceTuple::SubspaceTuple(std::vector<Subspace> e) : entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("SubspaceTuple: empty tuple");
    for (const auto& s : entries) {
        if (s.n() != entries[0].n() || s.dim() != entries[0].dim())
            throw std::invalid_argument("SubspaceTuple: mixed shapes");
    }
}

bigint subspace_count(long long q, int n, int m) {
    if (m < 0 || m > n) return 0;
    bigint num = 1, den = 1;
    bigint qb = q;
    for (int i = 0; i < m; ++i) {
        bigint qn = 1, qm = 1;
        for (int t = 0; t < n - i; ++t) qn *= qb;
        for (int t = 0; t < m - i; ++t) qm *= qb;
        num *= qn - 1;
        den *= qm - 1;
    }
    return num / den;
}

std::vector<Subspace> enumerate_omega(const FieldPtr& F, int n, int m, long long bound) {
    if (m < 1 || m > n) throw std::invalid_argument("enumerate_omega: need 1 <= m <= n");
    bigint count = subspace_count(F->q(), n, m);
    if (count > bound)
        throw std::invalid_argument("enumerate_omega: " + count.str() +
                                    " subspaces exceeds bound " + std::to_string(bound));

    std::vector<Subspace> out;
    out.reserve(static_cast<size_t>(count));

    // walk over pivot-column combinations; free entries sit to the right of
    // each row's pivot, outside the pivot columns
    std::vector<int> pivots(m);
    for (int i = 0; i < m; ++i) pivots[i] = i;
    long long q = F->q();
    while (true) {
        std::vector<std::pair<int, int>> free_cells;  // (row, col)
        {
            std::vector<bool> is_pivot(n, false);
            for (int i = 0; i < m; ++i) is_pivot[pivots[i]] = true;
            for (int i = 0; i < m; ++i)
                for (int j = pivots[i] + 1; j < n; ++j)
                    if (!is_pivot[j]) free_cells.emplace_back(i, j);
        }
        std::vector<long long> vals(free_cells.size(), 0);
        while (true) {
            Mat b(F, m, n);
            for (int i = 0; i < m; ++i) b.set(i, pivots[i], 1);
            for (size_t t = 0; t < free_cells.size(); ++t)
                b.set(free_cells[t].first, free_cells[t].second, vals[t]);
            out.push_back(Subspace(b));
            // odometer over the free cells
            size_t pos = 0;
            while (pos < vals.size() && vals[pos] == q - 1) vals[pos++] = 0;
            if (pos == vals.size()) break;
            ++vals[pos];
        }
        // next pivot combination
        int i = m - 1;
        while (i >= 0 && pivots[i] == n - m + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subspace span_of_tuple(const SubspaceTuple& X) {
    const Subspace& first = X.entries.at(0);
    int n = first.n();
    int total_rows = 0;
    for (const auto& s : X.entries) total_rows += s.dim();
    Mat stacked(first.field(), total_rows, n);
    int r = 0;
    for (const auto& s : X.entries)
        for (int i = 0; i < s.dim(); ++i, ++r)
            for (int j = 0; j < n; ++j) stacked.set(r, j, s.basis().at(i, j));
    return Subspace(stacked);
}

int tuple_dim(const SubspaceTuple& X) { return span_of_tuple(X).dim(); }

SubspaceTuple delete_entry(const SubspaceTuple& X, size_t i) {
    if (i >= X.size()) throw std::invalid_argument("delete_entry: index out of range");
    if (X.size() == 1) throw std::invalid_argument("delete_entry: result would be empty");
    std::vector<Subspace> e;
    e.reserve(X.size() - 1);
    for (size_t j = 0; j < X.size(); ++j)
        if (j != i) e.push_back(X.entries[j]);
    return SubspaceTuple(std::move(e));
}

SubspaceTuple subtuple(const SubspaceTuple& X, const std::vector<size_t>& idx) {
    if (idx.empty()) throw std::invalid_argument("subtuple: empty selection");
    std::vector<Subspace> e;
    e.reserve(idx.size());
    for (size_t i : idx) {
        if (i >= X.size()) throw std::invalid_argument("subtuple: index out of range");
        e.push_back(X.entries[i]);
    }
    return SubspaceTuple(std::move(e));
}

}  // namespace relcx
