#pragma once

// Randomized fixture generators shared by the diagram property tests and the
// acceptance suite. Everything is driven by an explicit mt19937_64 so runs
// are reproducible from the seed.

#include <random>
#include <vector>

#include "trimod/diagram.hpp"
#include "trimod/module.hpp"

namespace trimod::gen {

inline u32 rnd(std::mt19937_64& rng, u32 p) {
    return static_cast<u32>(rng() % p);
}

inline Mat random_mat(std::mt19937_64& rng, u32 p, std::size_t r, std::size_t c) {
    Mat m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rnd(rng, p);
    return m;
}

inline Mat random_invertible(std::mt19937_64& rng, u32 p, std::size_t n) {
    while (true) {
        Mat m = random_mat(rng, p, n, n);
        if (rank_of(m) == n) return m;
    }
}

// random square-zero matrix: N = B C with C B = 0, rank <= n/2
inline Mat random_square_zero(std::mt19937_64& rng, u32 p, std::size_t n) {
    if (n == 0) return Mat(p, 0, 0);
    std::size_t r = rng() % (n / 2 + 1);
    if (r == 0) return Mat(p, n, n);
    Mat b(p, n, r);
    while (rank_of(b) < r) b = random_mat(rng, p, n, r);
    Subspace left = kernel(b.transpose());  // rows c with c b = 0
    Mat c(p, r, n);
    while (rank_of(c) < r) {
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<u32> row(n, 0);
            for (std::size_t t = 0; t < left.dim(); ++t) {
                u32 co = rnd(rng, p);
                for (std::size_t j = 0; j < n; ++j)
                    row[j] = static_cast<u32>((row[j] + u64(co) * left.basis(t, j)) % p);
            }
            for (std::size_t j = 0; j < n; ++j) c.at(i, j) = row[j];
        }
    }
    return b * c;
}

// random module over F_p[x]/(x^2) (or over the ground field when alg->dim == 1)
inline ModulePtr random_module(std::mt19937_64& rng, const AlgebraPtr& alg, std::size_t maxdim) {
    std::size_t n = rng() % (maxdim + 1);
    Module m;
    m.alg = alg;
    m.dim = n;
    m.action.push_back(Mat::identity(alg->p, n));
    if (alg->dim == 2) m.action.push_back(random_square_zero(rng, alg->p, n));
    m.name = "R" + std::to_string(n);
    return make_module(std::move(m));
}

inline Hom random_hom(std::mt19937_64& rng, const ModulePtr& x, const ModulePtr& y) {
    auto basis = hom_space(x, y);
    Mat m(x->p(), y->dim, x->dim);
    for (const Hom& h : basis) {
        u32 c = rnd(rng, x->p());
        if (c) m = m + h.m.scaled(c);
    }
    return Hom{x, y, std::move(m)};
}

// a random short exact sequence with the given middle: pick a random invariant
// subspace (the image of a random endomorphism power or a generated submodule)
inline Ses random_ses(std::mt19937_64& rng, const ModulePtr& mid) {
    Mat gens(mid->p(), 1 + rng() % 2, mid->dim);
    for (std::size_t i = 0; i < gens.rows(); ++i)
        for (std::size_t j = 0; j < gens.cols(); ++j) gens.at(i, j) = rnd(rng, mid->p());
    Subspace sub = submodule_generated(*mid, gens);
    SubmodulePair s = submodule(mid, sub);
    QuotientPair q = quotient_module(mid, sub);
    return Ses{s.incl, q.proj};
}

}  // namespace trimod::gen
