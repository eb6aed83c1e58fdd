#pragma once

// Free resolutions, Ext dimensions, and realization of extension classes.
// Hom(A^r, Y) is identified with Y^r throughout, so the Ext complex lives in
// small block matrices built from the resolution's algebra coefficients.

#include <optional>
#include <vector>

#include "trimod/diagram.hpp"
#include "trimod/module.hpp"

namespace trimod {

struct Resolution {
    ModulePtr target;
    std::vector<std::size_t> ranks;  // r_0 .. r_depth
    std::vector<Mat> diff;           // diff[t]: A^{r_{t+1}} -> A^{r_t}
    Hom aug;                         // A^{r_0} ->> target
    // acoef[t][k][j] = algebra coefficient a_{kj} with d(gen_j) = sum_k a_{kj} gen_k
    std::vector<std::vector<std::vector<std::vector<u32>>>> acoef;
};

// extract algebra coefficients of a map A^{r1} -> A^{r0} from its matrix
inline std::vector<std::vector<std::vector<u32>>> algebra_coefficients(const AlgebraPtr& alg,
                                                                       const Mat& d,
                                                                       std::size_t r0,
                                                                       std::size_t r1) {
    std::vector<std::vector<std::vector<u32>>> out(r0,
                                                   std::vector<std::vector<u32>>(r1));
    const std::size_t n = alg->dim;
    for (std::size_t j = 0; j < r1; ++j) {
        // image of generator j (its coordinates are e_j tensor unit)
        std::vector<u32> gen(r1 * n, 0);
        for (std::size_t i = 0; i < n; ++i) gen[j * n + i] = alg->unit[i];
        Mat img = d * Mat::col_vec(alg->p, gen);
        for (std::size_t k = 0; k < r0; ++k) {
            std::vector<u32> chunk(n);
            for (std::size_t i = 0; i < n; ++i) chunk[i] = img(k * n + i, 0);
            out[k][j] = std::move(chunk);
        }
    }
    return out;
}

inline Resolution free_resolution(const ModulePtr& x, std::size_t depth) {
    Resolution res;
    res.target = x;
    FreeCover fc = free_cover(x);
    res.ranks.push_back(fc.generators.size());
    res.aug = fc.proj;
    ModulePtr k = fc.ker;
    Hom incl = fc.incl;  // k -> A^{r_t}
    for (std::size_t t = 0; t < depth; ++t) {
        FreeCover next = free_cover(k);
        res.ranks.push_back(next.generators.size());
        Mat d = incl.m * next.proj.m;  // A^{r_{t+1}} -> A^{r_t}
        res.acoef.push_back(
            algebra_coefficients(x->alg, d, res.ranks[t], res.ranks[t + 1]));
        res.diff.push_back(std::move(d));
        k = next.ker;
        incl = next.incl;
    }
    return res;
}

// matrix of Hom(d_t, Y): Y^{r_{t-1}} -> Y^{r_t}, block (j, k) = action of a_{kj} on Y
inline Mat hom_complex_differential(const Resolution& res, std::size_t t, const Module& y) {
    const std::size_t r0 = res.ranks[t - 1], r1 = res.ranks[t], ny = y.dim;
    Mat out(y.p(), r1 * ny, r0 * ny);
    for (std::size_t j = 0; j < r1; ++j)
        for (std::size_t k = 0; k < r0; ++k) {
            Mat blk = y.act(res.acoef[t - 1][k][j]);
            for (std::size_t a = 0; a < ny; ++a)
                for (std::size_t b = 0; b < ny; ++b)
                    out.at(j * ny + a, k * ny + b) = blk(a, b);
        }
    return out;
}

// dim_{F_p} Ext^i(x, y); Ext^0 = dim Hom(x, y)
inline std::size_t ext_dim(const ModulePtr& x, const ModulePtr& y, std::size_t i) {
    if (x->dim == 0 || y->dim == 0) return 0;
    Resolution res = free_resolution(x, i + 1);
    auto phi = [&](std::size_t t) { return hom_complex_differential(res, t, *y); };
    if (i == 0) return kernel(phi(1)).dim();
    Mat up = phi(i + 1), down = phi(i);
    return kernel(up).dim() - rank_of(down);
}

// ---------------------------------------------------------------------------
// Ext^1 classes with middles: Ext^1(C, A) = Hom(K, A) / im Hom(P, A) for the
// canonical free cover 0 -> K -> P -> C -> 0; each class is realized as the
// pushout of its representative K -> A against K -> P.

struct Ext1Classes {
    ModulePtr c, a;
    FreeCover cover;          // of c
    std::vector<Hom> hom_ka;  // basis of Hom(K, A)
    QuotientMaps classes;     // of F^{dim hom_ka} by the restriction image
    std::size_t dim = 0;

    // representative cocycle K -> A of the class with the given coefficients
    Hom cocycle(const std::vector<u32>& cls) const {
        std::vector<u32> coords(hom_ka.size(), 0);
        if (dim) {
            Mat v = classes.section * Mat::col_vec(a->p(), cls);
            coords = v.col(0);
        }
        return hom_from_coords(hom_ka, coords, cover.ker, a);
    }

    // 0 -> A -> E -> C -> 0 for the class of the given cocycle
    Ses realize_from_cocycle(const Hom& t) const {
        CommSquare po = pushout(t, cover.incl);  // t: K -> A, incl: K -> P
        // po.g : A -> E, po.b : P -> E
        // epi E -> C induced by the cover projection (kills the A leg)
        Mat q = po.g.m.hstack(po.b.m);  // presentation (A (+) P) ->> E
        Mat want = Mat(t.m.p(), c->dim, a->dim).hstack(cover.proj.m);
        auto sol = solve(q.transpose(), want.transpose());
        if (!sol) throw std::logic_error("ext realization: descent failed");
        Hom g = make_hom(po.g.tgt, c, sol->particular.transpose());
        Ses s{po.g, g};
        if (!s.valid()) throw std::logic_error("ext realization: sequence not exact");
        return s;
    }
    Ses realize(const std::vector<u32>& cls) const { return realize_from_cocycle(cocycle(cls)); }

    // class coordinates of an arbitrary extension 0 -> A -> E -> C -> 0
    std::vector<u32> class_of(const Ses& s) const {
        // lift cover.proj : P -> C through s.g, then restrict to K and read off
        auto lift = solve_hom(
            hom_space(cover.cover, s.g.src), [&](const Mat& m) { return s.g.m * m; },
            cover.proj.m, cover.cover, s.g.src);
        if (!lift) throw std::logic_error("class_of: projective lift failed");
        Mat restricted = lift->m * cover.incl.m;  // K -> E, lands in A
        auto back = solve(s.f.m, restricted);
        if (!back) throw std::logic_error("class_of: restriction not in A");
        auto coords = hom_coords(hom_ka, back->particular);
        if (!coords) throw std::logic_error("class_of: cocycle outside Hom(K, A)");
        if (!dim) return {};
        Mat cls = classes.projection * Mat::col_vec(a->p(), *coords);
        return cls.col(0);
    }
};

inline Ext1Classes ext1_classes(const ModulePtr& c, const ModulePtr& a) {
    Ext1Classes e;
    e.c = c;
    e.a = a;
    e.cover = free_cover(c);
    e.hom_ka = hom_space(e.cover.ker, a);
    const u32 p = a->p();
    // image of restriction Hom(P, A) -> Hom(K, A), in hom_ka coordinates
    Mat img(p, 0, e.hom_ka.size());
    for (const Hom& h : hom_space(e.cover.cover, a)) {
        Mat restricted = h.m * e.cover.incl.m;
        auto coords = hom_coords(e.hom_ka, restricted);
        if (!coords) throw std::logic_error("ext1: restriction escaped Hom(K, A)");
        img = img.vstack(Mat::row_vec(p, *coords));
    }
    e.classes = quotient(e.hom_ka.size(), Subspace::from_rows(img));
    e.dim = e.classes.dim;
    return e;
}

// all class coordinate tuples (p^dim of them), zero class first
inline std::vector<std::vector<u32>> all_class_tuples(const Ext1Classes& e, u64 budget) {
    u64 total = 1;
    for (std::size_t i = 0; i < e.dim; ++i) {
        total *= e.a->p();
        if (total > budget) throw BudgetExceeded("ext class enumeration exceeds budget");
    }
    std::vector<std::vector<u32>> out;
    std::vector<u32> c(e.dim, 0);
    do {
        out.push_back(c);
    } while (next_tuple(c, e.a->p()));
    return out;
}

}  // namespace trimod
