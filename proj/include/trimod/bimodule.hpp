#pragma once

// (A,B)-bimodules and the two functors M (x)_B - and Hom_A(M, -), the
// tensor-hom adjunction tau, Tor dimensions, and the perpendicular
// inventories X = {Ext^i_A(M,-) = 0} and Y = {Tor_i^B(M,-) = 0}.

#include <string>
#include <vector>

#include "trimod/ext.hpp"
#include "trimod/module.hpp"

namespace trimod {

struct Bimodule {
    AlgebraPtr left;   // A
    AlgebraPtr right;  // B
    std::size_t dim = 0;
    std::vector<Mat> lact;  // lact[i] = action of A basis e_i
    std::vector<Mat> ract;  // ract[j] = action of B basis e_j on the right: v |-> v*e_j
    std::string name;

    u32 p() const { return left->p; }

    std::optional<std::string> invalid_reason() const {
        if (left->p != right->p) return "bimodule algebras over different primes";
        Module lm;
        lm.alg = left;
        lm.dim = dim;
        lm.action = lact;
        if (auto why = lm.invalid_reason()) return "left action: " + *why;
        // right B-module <=> left module over B^op with the same matrices
        Module rm;
        rm.alg = make_algebra(right->opposite());
        rm.dim = dim;
        rm.action = ract;
        if (auto why = rm.invalid_reason()) return "right action: " + *why;
        for (std::size_t i = 0; i < left->dim; ++i)
            for (std::size_t j = 0; j < right->dim; ++j)
                if (lact[i] * ract[j] != ract[j] * lact[i])
                    return "left and right actions do not commute at (" + std::to_string(i) +
                           "," + std::to_string(j) + ")";
        return std::nullopt;
    }

    ModulePtr as_left_module() const {
        Module m;
        m.alg = left;
        m.dim = dim;
        m.action = lact;
        m.name = name;
        return make_module(std::move(m));
    }
    // v * a for an algebra element a of B
    Mat ract_of(const std::vector<u32>& a) const {
        Mat m(p(), dim, dim);
        for (std::size_t j = 0; j < right->dim; ++j)
            if (a[j] % p()) m = m + ract[j].scaled(a[j] % p());
        return m;
    }
};

inline Bimodule make_bimodule(AlgebraPtr a, AlgebraPtr b, std::size_t dim, std::vector<Mat> lact,
                              std::vector<Mat> ract, std::string name = "M") {
    Bimodule m{std::move(a), std::move(b), dim, std::move(lact), std::move(ract), std::move(name)};
    if (auto why = m.invalid_reason()) throw std::invalid_argument("invalid bimodule: " + *why);
    return m;
}

// the regular (A,A)-bimodule A
inline Bimodule regular_bimodule(const AlgebraPtr& a) {
    std::vector<Mat> ract;
    Algebra op = a->opposite();
    ract = op.left_mul;  // right multiplication by e_j = left multiplication in A^op
    return make_bimodule(a, a, a->dim, a->left_mul, std::move(ract), a->name);
}

// ---------------------------------------------------------------------------
// M (x)_B Y

struct TensorModule {
    ModulePtr mod;  // over A
    std::size_t full_dim = 0;
    Mat proj;     // full coordinate space (m.dim * y.dim) -> mod
    Mat section;  // mod -> full, proj*section = I

    // image of the pure tensor u_i (x) w_j in quotient coordinates
    std::vector<u32> pure(std::size_t i, std::size_t j, std::size_t ydim) const {
        return proj.col(i * ydim + j);
    }
};

inline TensorModule tensor_MY(const Bimodule& m, const ModulePtr& y) {
    if (!m.right->same_as(*y->alg)) throw std::invalid_argument("tensor_MY: algebra mismatch");
    const u32 p = m.p();
    const std::size_t ny = y->dim, full = m.dim * ny;
    // full space M (x)_{F_p} Y as an A-module
    Module fullmod;
    fullmod.alg = m.left;
    fullmod.dim = full;
    Mat iy = Mat::identity(p, ny);
    for (std::size_t i = 0; i < m.left->dim; ++i) fullmod.action.push_back(m.lact[i].kron(iy));
    ModulePtr fm = make_module(std::move(fullmod), false);
    // relation span: (u_i * e_b) (x) w_j - u_i (x) (e_b * w_j)
    Mat rel(p, 0, full);
    for (std::size_t b = 0; b < m.right->dim; ++b) {
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                std::vector<u32> v(full, 0);
                for (std::size_t k = 0; k < m.dim; ++k)
                    v[k * ny + j] = m.ract[b](k, i);
                for (std::size_t l = 0; l < ny; ++l)
                    v[i * ny + l] = (v[i * ny + l] + p - y->action[b](l, j)) % p;
                rel = rel.vstack(Mat::row_vec(p, v));
            }
    }
    Subspace r = Subspace::from_rows(rel);
    QuotientPair q = quotient_module(fm, r);
    TensorModule t;
    t.mod = q.mod;
    t.full_dim = full;
    t.proj = q.proj.m;
    t.section = q.section;
    return t;
}

// M (x) beta on tensor modules, for beta: Y1 -> Y2
inline Mat tensor_map(const Bimodule& m, const TensorModule& t1, const TensorModule& t2,
                      const Mat& beta) {
    Mat full = Mat::identity(m.p(), m.dim).kron(beta);
    Mat induced = t2.proj * full * t1.section;
    if (induced * t1.proj != t2.proj * full)
        throw std::logic_error("tensor_map: map does not descend to the quotient");
    return induced;
}

// ---------------------------------------------------------------------------
// Hom_A(M, X)

struct HomModule {
    ModulePtr mod;           // over B
    std::vector<Hom> basis;  // A-homs M -> X, canonical order
    ModulePtr m_left;        // M as a left A-module (source of the basis homs)

    // coordinates of an A-hom M -> X in the canonical basis
    std::optional<std::vector<u32>> coords(const Mat& f) const { return hom_coords(basis, f); }
    Mat from_coords(const std::vector<u32>& c, std::size_t nx, std::size_t md) const {
        Mat f(mod->p(), nx, md);
        for (std::size_t t = 0; t < basis.size(); ++t)
            if (c[t]) f = f + basis[t].m.scaled(c[t]);
        return f;
    }
};

inline HomModule hom_MX(const Bimodule& m, const ModulePtr& x) {
    if (!m.left->same_as(*x->alg)) throw std::invalid_argument("hom_MX: algebra mismatch");
    HomModule h;
    h.m_left = m.as_left_module();
    h.basis = hom_space(h.m_left, x);
    const u32 p = m.p();
    Module bm;
    bm.alg = m.right;
    bm.dim = h.basis.size();
    for (std::size_t b = 0; b < m.right->dim; ++b) {
        Mat act(p, h.basis.size(), h.basis.size());
        for (std::size_t t = 0; t < h.basis.size(); ++t) {
            Mat moved = h.basis[t].m * m.ract[b];  // (b . f)(v) = f(v b)
            auto c = hom_coords(h.basis, moved);
            if (!c) throw std::logic_error("hom_MX: action escapes the hom space");
            for (std::size_t s = 0; s < h.basis.size(); ++s) act.at(s, t) = (*c)[s];
        }
        bm.action.push_back(std::move(act));
    }
    bm.name = "Hom(" + m.name + "," + x->name + ")";
    h.mod = make_module(std::move(bm));
    return h;
}

// Hom(M, alpha) on hom modules, for alpha: X1 -> X2
inline Mat hom_map(const HomModule& h1, const HomModule& h2, const Mat& alpha) {
    Mat out(alpha.p(), h2.basis.size(), h1.basis.size());
    for (std::size_t t = 0; t < h1.basis.size(); ++t) {
        auto c = h2.coords(alpha * h1.basis[t].m);
        if (!c) throw std::logic_error("hom_map: image escapes the hom space");
        for (std::size_t s = 0; s < h2.basis.size(); ++s) out.at(s, t) = (*c)[s];
    }
    return out;
}

// ---------------------------------------------------------------------------
// the adjunction tau: Hom_A(M (x)_B Y, X) ~= Hom_B(Y, Hom_A(M, X))

struct TauData {
    TensorModule tensor;
    HomModule hom;
    std::vector<Hom> lhs;  // basis of Hom_A(M (x) Y, X)
    std::vector<Hom> rhs;  // basis of Hom_B(Y, Hom_A(M, X))
    Mat matrix;            // rhs-coords of the image of each lhs basis element
    ModulePtr x, y;
};

// curry one A-hom h: M (x) Y -> X into a B-hom Y -> Hom(M, X)
inline Mat tau_apply(const Bimodule& m, const TensorModule& t, const HomModule& h, const Mat& hm,
                     const ModulePtr& y, const ModulePtr& x) {
    const u32 p = m.p();
    Mat out(p, h.basis.size(), y->dim);
    for (std::size_t j = 0; j < y->dim; ++j) {
        Mat gj(p, x->dim, m.dim);
        for (std::size_t i = 0; i < m.dim; ++i) {
            Mat img = hm * Mat::col_vec(p, t.proj.col(i * y->dim + j));
            for (std::size_t r = 0; r < x->dim; ++r) gj.at(r, i) = img(r, 0);
        }
        auto c = h.coords(gj);
        if (!c) throw std::logic_error("tau: curried map is not A-linear");
        for (std::size_t s = 0; s < h.basis.size(); ++s) out.at(s, j) = (*c)[s];
    }
    return out;
}

// uncurry a B-hom Y -> Hom(M, X) back to an A-hom M (x) Y -> X
inline Mat tau_unapply(const Bimodule& m, const TensorModule& t, const HomModule& h,
                       const Mat& vm, const ModulePtr& y, const ModulePtr& x) {
    const u32 p = m.p();
    Mat full(p, x->dim, t.full_dim);
    for (std::size_t j = 0; j < y->dim; ++j) {
        Mat gj = h.from_coords(vm.col(j), x->dim, m.dim);
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t r = 0; r < x->dim; ++r) full.at(r, i * y->dim + j) = gj(r, i);
    }
    Mat out = full * t.section;
    if (out * t.proj != full) throw std::logic_error("tau inverse: map does not descend");
    return out;
}

inline TauData tau(const Bimodule& m, const ModulePtr& x, const ModulePtr& y) {
    TauData d;
    d.x = x;
    d.y = y;
    d.tensor = tensor_MY(m, y);
    d.hom = hom_MX(m, x);
    d.lhs = hom_space(d.tensor.mod, x);
    d.rhs = hom_space(y, d.hom.mod);
    Mat mt(m.p(), d.rhs.size(), d.lhs.size());
    for (std::size_t t = 0; t < d.lhs.size(); ++t) {
        Mat cur = tau_apply(m, d.tensor, d.hom, d.lhs[t].m, y, x);
        auto c = hom_coords(d.rhs, cur);
        if (!c) throw std::logic_error("tau: curried map is not B-linear");
        for (std::size_t s = 0; s < d.rhs.size(); ++s) mt.at(s, t) = (*c)[s];
    }
    d.matrix = std::move(mt);
    if (d.lhs.size() != d.rhs.size() || rank_of(d.matrix) != d.lhs.size())
        throw std::logic_error("tau: adjunction matrix is not invertible");
    return d;
}

// ---------------------------------------------------------------------------
// Tor via a free resolution of y tensored with M (M (x)_B B^r ~= M^r)

inline std::size_t tor_dim(const Bimodule& m, const ModulePtr& y, std::size_t i) {
    if (!m.right->same_as(*y->alg)) throw std::invalid_argument("tor_dim: algebra mismatch");
    if (m.dim == 0 || y->dim == 0) return 0;
    Resolution res = free_resolution(y, i + 1);
    // T_t : M^{r_t} -> M^{r_{t-1}}, block (k, j) = right action of a_{kj}
    auto T = [&](std::size_t t) {
        const std::size_t r0 = res.ranks[t - 1], r1 = res.ranks[t];
        Mat out(m.p(), m.dim * r0, m.dim * r1);
        for (std::size_t k = 0; k < r0; ++k)
            for (std::size_t j = 0; j < r1; ++j) {
                Mat blk = m.ract_of(res.acoef[t - 1][k][j]);
                for (std::size_t a = 0; a < m.dim; ++a)
                    for (std::size_t b = 0; b < m.dim; ++b)
                        out.at(k * m.dim + a, j * m.dim + b) = blk(a, b);
            }
        return out;
    };
    if (i == 0) return m.dim * res.ranks[0] - rank_of(T(1));
    return kernel(T(i)).dim() - rank_of(T(i + 1));
}

// ---------------------------------------------------------------------------
// perpendicular inventories

enum class PerpKind { X, Y };  // Ext^i_A(M,-) = 0  /  Tor_i^B(M,-) = 0

struct PerpInventory {
    PerpKind kind = PerpKind::X;
    std::vector<ModulePtr> members;
    std::size_t imax = 0;
};

inline bool in_perp_X(const Bimodule& m, const ModulePtr& x, std::size_t imax) {
    ModulePtr ml = m.as_left_module();
    for (std::size_t i = 1; i <= imax; ++i)
        if (ext_dim(ml, x, i) != 0) return false;
    return true;
}
inline bool in_perp_Y(const Bimodule& m, const ModulePtr& y, std::size_t imax) {
    for (std::size_t i = 1; i <= imax; ++i)
        if (tor_dim(m, y, i) != 0) return false;
    return true;
}

inline PerpInventory perp_inventory(const Bimodule& m, const std::vector<ModulePtr>& pool,
                                    PerpKind kind, std::size_t imax) {
    PerpInventory inv;
    inv.kind = kind;
    inv.imax = imax;
    for (const auto& mod : pool) {
        bool ok = kind == PerpKind::X ? in_perp_X(m, mod, imax) : in_perp_Y(m, mod, imax);
        if (ok) inv.members.push_back(mod);
    }
    return inv;
}

// default certification depth for the "for all i >= 1" vanishing conditions
inline std::size_t default_imax(const AlgebraPtr& a) { return a->dim + 2; }

}  // namespace trimod
