#include <doctest.h>

#include <random>

#include "relcx/projective.hpp"

using namespace relcx;

namespace {

Subspace axis(const FieldPtr& F, int n, int i) {
    std::vector<long long> v(n, 0);
    v[i] = 1;
    return Subspace::line(F, v);
}

// RREF cell count: subspaces per pivot pattern, an independent counting route
bigint pattern_count(long long q, int n, int m) {
    bigint total = 0;
    std::vector<int> pivots(m);
    for (int i = 0; i < m; ++i) pivots[i] = i;
    while (true) {
        int free_cells = 0;
        std::vector<bool> is_pivot(n, false);
        for (int i = 0; i < m; ++i) is_pivot[pivots[i]] = true;
        for (int i = 0; i < m; ++i)
            for (int j = pivots[i] + 1; j < n; ++j)
                if (!is_pivot[j]) ++free_cells;
        bigint cells = 1;
        for (int i = 0; i < free_cells; ++i) cells *= q;
        total += cells;
        int i = m - 1;
        while (i >= 0 && pivots[i] == n - m + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return total;
}

}  // namespace

TEST_CASE("support examples") {
    auto F3 = field_create(3, 1);
    CHECK(axis(F3, 3, 1).support() == std::vector<int>{1});

    auto F4 = field_create(2, 2);
    CHECK(Subspace::line(F4, {1, F4->omega()}).support() == std::vector<int>{0, 1});

    auto s = Subspace(Mat::from_rows(F3, {{1, 1, 0}, {0, 0, 1}}));
    CHECK(s.support() == std::vector<int>{0, 1, 2});
}

TEST_CASE("support is invariant under change of spanning set") {
    std::mt19937 rng(7);
    auto F = field_create(3, 1);
    std::uniform_int_distribution<long long> dist(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Mat b(F, 2, 4);
        do {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 4; ++j) b.set(i, j, dist(rng));
        } while (b.rank() != 2);
        Subspace s(b);
        Mat t(F, 2, 2);
        do {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) t.set(i, j, dist(rng));
        } while (t.det() == 0);
        Subspace s2(t.mul(b));
        CHECK(s == s2);
        CHECK(s.support() == s2.support());
    }
}

TEST_CASE("enumerate_omega examples and canonical order") {
    auto F2 = field_create(2, 1);
    auto pts = enumerate_omega(F2, 3, 1);
    CHECK(pts.size() == 7);
    auto pts2 = enumerate_omega(F2, 4, 2);
    CHECK(pts2.size() == 35);
    CHECK(enumerate_omega(F2, 4, 4).size() == 1);
    for (size_t i = 1; i < pts2.size(); ++i) CHECK(pts2[i - 1] < pts2[i]);
    // deterministic
    CHECK(enumerate_omega(F2, 4, 2) == pts2);
    CHECK_THROWS_AS(enumerate_omega(field_create(5, 1), 6, 3, 1000),
                    std::invalid_argument);
}

TEST_CASE("subspace counts match the product formula") {
    for (long long q : {2, 3, 4, 5}) {
        auto F = field_create_q(q);
        for (int n = 1; n <= 6; ++n) {
            for (int m = 1; m <= n; ++m) {
                bigint expected = subspace_count(q, n, m);
                CHECK(expected == pattern_count(q, n, m));
                if (expected <= 100000) {
                    auto pts = enumerate_omega(F, n, m, 100000);
                    CHECK(bigint(pts.size()) == expected);
                    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
                }
            }
        }
    }
}

TEST_CASE("subspace equality agrees with mutual containment") {
    std::mt19937 rng(99);
    auto F = field_create(2, 2);
    std::uniform_int_distribution<long long> dist(0, 3);
    auto random_sub = [&](int m) {
        Mat b(F, m, 4);
        do {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < 4; ++j) b.set(i, j, dist(rng));
        } while (b.rank() != m);
        return Subspace(b);
    };
    for (int trial = 0; trial < 100; ++trial) {
        Subspace a = random_sub(2), b = random_sub(2);
        CHECK((a == b) == (a.contains(b) && b.contains(a)));
    }
}

TEST_CASE("span and tuple operations") {
    auto F3 = field_create(3, 1);
    int n = 4;
    std::vector<Subspace> axes;
    for (int i = 0; i < n; ++i) axes.push_back(axis(F3, n, i));
    CHECK(tuple_dim(SubspaceTuple(axes)) == n);
    CHECK(tuple_dim(SubspaceTuple({axes[0]})) == 1);

    // spanning tuple vs one-short tuple
    std::vector<Subspace> Y(axes.begin(), axes.end() - 1);
    std::vector<long long> short_sum(n, 1);
    short_sum[n - 1] = 0;
    Y.push_back(Subspace::line(F3, short_sum));
    CHECK(tuple_dim(SubspaceTuple(Y)) == n - 1);

    SubspaceTuple t({axes[0], axes[1], axes[2]});
    CHECK(delete_entry(t, 1) == SubspaceTuple({axes[0], axes[2]}));
    CHECK(subtuple(t, {0, 1, 2}) == t);
    CHECK(subtuple(t, {0, 2}) == SubspaceTuple({axes[0], axes[2]}));
    CHECK_THROWS_AS(subtuple(t, {}), std::invalid_argument);
    CHECK_THROWS_AS(delete_entry(SubspaceTuple({axes[0]}), 0), std::invalid_argument);
    CHECK_THROWS_AS(SubspaceTuple(std::vector<Subspace>{}), std::invalid_argument);
}
