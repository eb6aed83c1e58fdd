#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "trimod/matrix.hpp"

using namespace trimod;

namespace {

Mat random_mat(u32 p, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Mat m(p, r, c);
    std::uniform_int_distribution<u32> d(0, p - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

// brute-force enumeration of F_p^n, for oracle checks on tiny spaces
std::vector<std::vector<u32>> all_vectors(u32 p, std::size_t n) {
    std::vector<std::vector<u32>> out;
    std::vector<u32> v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < n && ++v[i] == p) v[i++] = 0;
        if (i == n) break;
    }
    return out;
}

std::vector<u32> mat_apply(const Mat& m, const std::vector<u32>& v) {
    std::vector<u32> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        u64 acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += u64(m(i, j)) * v[j];
        out[i] = static_cast<u32>(acc % m.p());
    }
    return out;
}

}  // namespace

TEST_CASE("rref identity and zero cases") {
    Mat id = Mat::identity(2, 2);
    auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1});

    Mat z(2, 2, 3);
    auto rz = rref(z);
    CHECK(rz.reduced == z);
    CHECK(rz.rank == 0);
    CHECK(rz.pivot_cols.empty());
}

TEST_CASE("rref hand-reduced example over F_2") {
    // [[1,1,0],[1,1,1]] -> [[1,1,0],[0,0,1]], rank 2, pivots {0,2}
    Mat m(2, 2, 3, {1, 1, 0, 1, 1, 1});
    auto r = rref(m);
    CHECK(r.reduced == Mat(2, 2, 3, {1, 1, 0, 0, 0, 1}));
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0, 2});
}

TEST_CASE("rref is idempotent on random matrices") {
    std::mt19937_64 rng(20240811);
    for (u32 p : {2u, 3u, 5u, 97u}) {
        for (int t = 0; t < 30; ++t) {
            Mat m = random_mat(p, 1 + t % 5, 1 + (t * 7) % 6, rng);
            auto r1 = rref(m);
            auto r2 = rref(r1.reduced);
            CHECK(r1.reduced == r2.reduced);
            CHECK(r1.rank == r2.rank);
        }
    }
}

TEST_CASE("solve identity and zero cases") {
    Mat id = Mat::identity(3, 2);
    Mat b(3, 2, 1, {1, 2});
    auto s = solve(id, b);
    REQUIRE(s.has_value());
    CHECK(s->particular == b);
    CHECK(s->kernel_basis.dim() == 0);

    Mat z(2, 2, 2);
    auto sz = solve(z, Mat(2, 2, 1));
    REQUIRE(sz.has_value());
    CHECK(sz->particular.is_zero());
    CHECK(sz->kernel_basis.dim() == 2);
}

TEST_CASE("solve [[1,1]] x = [1] over F_2, oracle by enumeration") {
    Mat a(2, 1, 2, {1, 1});
    Mat b(2, 1, 1, {1});
    auto s = solve(a, b);
    REQUIRE(s.has_value());
    CHECK(s->particular == Mat(2, 2, 1, {1, 0}));
    REQUIRE(s->kernel_basis.dim() == 1);
    CHECK(s->kernel_basis.basis.row(0) == std::vector<u32>{1, 1});
    // oracle: of the 4 vectors of F_2^2, exactly {10, 01} solve, kernel {00, 11}
    int sols = 0, kers = 0;
    for (auto& v : all_vectors(2, 2)) {
        auto av = mat_apply(a, v);
        if (av[0] == 1) ++sols;
        if (av[0] == 0) ++kers;
    }
    CHECK(sols == 2);
    CHECK(kers == 2);
}

TEST_CASE("solve detects inconsistency") {
    Mat a(2, 2, 1, {0, 0});
    Mat b(2, 2, 1, {1, 0});
    CHECK_FALSE(solve(a, b).has_value());
    CHECK_THROWS_AS(solve(Mat(2, 2, 2), Mat(2, 3, 1)), std::invalid_argument);
}

TEST_CASE("rank-nullity and solve postconditions on random systems") {
    std::mt19937_64 rng(7);
    for (u32 p : {2u, 3u, 5u}) {
        for (int t = 0; t < 60; ++t) {
            Mat a = random_mat(p, 1 + t % 4, 1 + (t * 3) % 5, rng);
            CHECK(rank_of(a) + kernel(a).dim() == a.cols());
            Mat x = random_mat(p, a.cols(), 1, rng);
            Mat b = a * x;
            auto s = solve(a, b);
            REQUIRE(s.has_value());
            CHECK(a * s->particular == b);
            for (std::size_t r = 0; r < s->kernel_basis.dim(); ++r) {
                Mat kv = Mat::col_vec(p, s->kernel_basis.basis.row(r));
                CHECK((a * kv).is_zero());
            }
        }
    }
}

TEST_CASE("quotient: zero and full subspace") {
    auto q0 = quotient(2, Subspace::zero(2, 2));
    CHECK(q0.dim == 2);
    CHECK(q0.projection == Mat::identity(2, 2));

    auto qf = quotient(2, Subspace::full(2, 2));
    CHECK(qf.dim == 0);
}

TEST_CASE("quotient by span{[1,1]} in F_2^2 has that kernel exactly") {
    Subspace sub = Subspace::from_rows(Mat(2, 1, 2, {1, 1}));
    auto q = quotient(2, sub);
    REQUIRE(q.dim == 1);
    // oracle: enumerate all of F_2^2
    for (auto& v : all_vectors(2, 2)) {
        bool in_sub = (v[0] == v[1]);
        auto img = mat_apply(q.projection, v);
        CHECK((img[0] == 0) == in_sub);
    }
    CHECK((q.projection * q.section).is_identity());
}

TEST_CASE("quotient projection/section identities on random subspaces") {
    std::mt19937_64 rng(99);
    for (u32 p : {2u, 3u}) {
        for (int t = 0; t < 40; ++t) {
            std::size_t n = 1 + t % 5;
            Mat gens = random_mat(p, 1 + t % 3, n, rng);
            Subspace sub = Subspace::from_rows(gens);
            auto q = quotient(n, sub);
            CHECK(q.dim == n - sub.dim());
            if (q.dim) CHECK((q.projection * q.section).is_identity());
            // kernel of projection equals sub
            CHECK(kernel(q.projection) == sub);
        }
    }
}

TEST_CASE("subspace sum, intersection, membership") {
    // In F_2^3: U = span{e0+e1}, V = span{e1+e2}
    Subspace u = Subspace::from_rows(Mat(2, 1, 3, {1, 1, 0}));
    Subspace v = Subspace::from_rows(Mat(2, 1, 3, {0, 1, 1}));
    CHECK(u.sum(v).dim() == 2);
    CHECK(u.intersect(v).dim() == 0);
    Subspace w = u.sum(v);
    CHECK(w.contains_vec({1, 0, 1}));
    CHECK_FALSE(w.contains_vec({1, 0, 0}));
    CHECK(w.intersect(u) == u);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + t % 4;
        Subspace a = Subspace::from_rows(random_mat(3, 1 + t % 3, n, rng));
        Subspace b = Subspace::from_rows(random_mat(3, 1 + (t + 1) % 3, n, rng));
        Subspace cap = a.intersect(b);
        CHECK(a.contains(cap));
        CHECK(b.contains(cap));
        // dim formula
        CHECK(a.sum(b).dim() + cap.dim() == a.dim() + b.dim());
    }
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Mat(4, 1, 1), std::invalid_argument);   // 4 not prime
    CHECK_THROWS_AS(Mat(101, 1, 1), std::invalid_argument); // > 97
    CHECK_THROWS_AS(Mat(2, 2, 2, {1, 0, 1}), std::invalid_argument);
    Mat a(2, 2, 2);
    Mat b(3, 2, 2);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}
