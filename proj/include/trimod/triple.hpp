#pragma once

// The triple categories Rep(A,M,B) ([X;Y]_phi, phi: M (x) Y -> X) and
// Rep_h(A,M,B) ((X,Y)_varphi, varphi: Y -> Hom_A(M,X)), their equivalence via
// tau, the triangular matrix ring Lambda = [A M; 0 B], and the
// projective/injective classification criteria.

#include <memory>
#include <string>
#include <vector>

#include "trimod/bimodule.hpp"

namespace trimod {

using BimodulePtr = std::shared_ptr<const Bimodule>;

inline BimodulePtr share(Bimodule m) { return std::make_shared<Bimodule>(std::move(m)); }

struct TripleRep {
    BimodulePtr m;
    ModulePtr x;  // over A
    ModulePtr y;  // over B
    Mat phi;      // x.dim x tensor.mod.dim
    TensorModule tensor;
    std::string name;
};

struct TripleRepH {
    BimodulePtr m;
    ModulePtr x;  // over A
    ModulePtr y;  // over B
    Mat varphi;   // hom.mod.dim x y.dim
    HomModule hom;
    std::string name;
};

inline TripleRep make_rep(const BimodulePtr& m, ModulePtr x, ModulePtr y, Mat phi,
                          std::string name = "") {
    TripleRep t;
    t.m = m;
    t.x = std::move(x);
    t.y = std::move(y);
    t.tensor = tensor_MY(*m, t.y);
    t.phi = std::move(phi);
    t.name = std::move(name);
    Hom h = make_hom(t.tensor.mod, t.x, t.phi);  // throws unless an A-hom
    (void)h;
    return t;
}

inline TripleRepH make_reph(const BimodulePtr& m, ModulePtr x, ModulePtr y, Mat varphi,
                            std::string name = "") {
    TripleRepH t;
    t.m = m;
    t.x = std::move(x);
    t.y = std::move(y);
    t.hom = hom_MX(*m, t.x);
    t.varphi = std::move(varphi);
    t.name = std::move(name);
    Hom h = make_hom(t.y, t.hom.mod, t.varphi);  // throws unless a B-hom
    (void)h;
    return t;
}

inline TripleRep zero_rep(const BimodulePtr& m) {
    auto zx = zero_module(m->left), zy = zero_module(m->right);
    return make_rep(m, zx, zy, Mat(m->p(), 0, 0), "0");
}
inline TripleRepH zero_reph(const BimodulePtr& m) {
    auto zx = zero_module(m->left), zy = zero_module(m->right);
    return make_reph(m, zx, zy, Mat(m->p(), 0, 0), "0");
}

// ---------------------------------------------------------------------------
// the equivalence Rep <-> Rep_h via tau

inline TripleRepH rep_to_reph(const TripleRep& t) {
    HomModule h = hom_MX(*t.m, t.x);
    Mat varphi = tau_apply(*t.m, t.tensor, h, t.phi, t.y, t.x);
    return make_reph(t.m, t.x, t.y, std::move(varphi), t.name);
}

inline TripleRep reph_to_rep(const TripleRepH& t) {
    TensorModule tm = tensor_MY(*t.m, t.y);
    Mat phi = tau_unapply(*t.m, tm, t.hom, t.varphi, t.y, t.x);
    return make_rep(t.m, t.x, t.y, std::move(phi), t.name);
}

// ---------------------------------------------------------------------------
// morphisms of triples

struct TriplePair {
    Mat f;  // x -> x1
    Mat g;  // y -> y1
};

// basis of the hom space in Rep_h: pairs (f, g) with Hom(M,f) . varphi = varphi1 . g
inline std::vector<TriplePair> hom_space_reph(const TripleRepH& t, const TripleRepH& t1) {
    std::vector<Hom> fs = hom_space(t.x, t1.x);
    std::vector<Hom> gs = hom_space(t.y, t1.y);
    const u32 p = t.m->p();
    const std::size_t rows = t1.hom.basis.size() * t.y->dim;
    Mat sys(p, rows, fs.size() + gs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        Mat hf = hom_map(t.hom, t1.hom, fs[i].m) * t.varphi;
        auto fl = hf.flat();
        for (std::size_t r = 0; r < rows; ++r) sys.at(r, i) = fl[r];
    }
    for (std::size_t j = 0; j < gs.size(); ++j) {
        Mat vg = t1.varphi * gs[j].m;
        auto fl = vg.flat();
        for (std::size_t r = 0; r < rows; ++r) sys.at(r, fs.size() + j) = (p - fl[r]) % p;
    }
    std::vector<TriplePair> out;
    Subspace k = kernel(sys);
    for (std::size_t r = 0; r < k.dim(); ++r) {
        auto v = k.basis.row(r);
        Mat f(p, t1.x->dim, t.x->dim), g(p, t1.y->dim, t.y->dim);
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (v[i]) f = f + fs[i].m.scaled(v[i]);
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (v[fs.size() + j]) g = g + gs[j].m.scaled(v[fs.size() + j]);
        out.push_back({std::move(f), std::move(g)});
    }
    return out;
}

// basis of the hom space in Rep: pairs with f . phi = phi1 . (M (x) g)
inline std::vector<TriplePair> hom_space_rep(const TripleRep& t, const TripleRep& t1) {
    std::vector<Hom> fs = hom_space(t.x, t1.x);
    std::vector<Hom> gs = hom_space(t.y, t1.y);
    const u32 p = t.m->p();
    const std::size_t rows = t1.x->dim * t.tensor.mod->dim;
    Mat sys(p, rows, fs.size() + gs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        auto fl = (fs[i].m * t.phi).flat();
        for (std::size_t r = 0; r < rows; ++r) sys.at(r, i) = fl[r];
    }
    for (std::size_t j = 0; j < gs.size(); ++j) {
        Mat tg = tensor_map(*t.m, t.tensor, t1.tensor, gs[j].m);
        auto fl = (t1.phi * tg).flat();
        for (std::size_t r = 0; r < rows; ++r) sys.at(r, fs.size() + j) = (p - fl[r]) % p;
    }
    std::vector<TriplePair> out;
    Subspace k = kernel(sys);
    for (std::size_t r = 0; r < k.dim(); ++r) {
        auto v = k.basis.row(r);
        Mat f(p, t1.x->dim, t.x->dim), g(p, t1.y->dim, t.y->dim);
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (v[i]) f = f + fs[i].m.scaled(v[i]);
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (v[fs.size() + j]) g = g + gs[j].m.scaled(v[fs.size() + j]);
        out.push_back({std::move(f), std::move(g)});
    }
    return out;
}

inline bool is_hom_reph(const TripleRepH& t, const TripleRepH& t1, const TriplePair& h) {
    return hom_map(t.hom, t1.hom, h.f) * t.varphi == t1.varphi * h.g;
}
inline bool is_hom_rep(const TripleRep& t, const TripleRep& t1, const TriplePair& h) {
    return h.f * t.phi == t1.phi * tensor_map(*t.m, t.tensor, t1.tensor, h.g);
}

// ---------------------------------------------------------------------------
// the formal triangular matrix ring Lambda = [A M; 0 B]

inline AlgebraPtr build_lambda(const Bimodule& m, std::string name = "Lambda") {
    const AlgebraPtr& a = m.left;
    const AlgebraPtr& b = m.right;
    const std::size_t da = a->dim, dm = m.dim, db = b->dim, n = da + dm + db;
    const u32 p = m.p();
    Algebra lam;
    lam.p = p;
    lam.dim = n;
    lam.name = std::move(name);
    lam.left_mul.assign(n, Mat(p, n, n));
    auto put = [&](std::size_t l, std::size_t j, std::size_t off, const std::vector<u32>& v) {
        for (std::size_t k = 0; k < v.size(); ++k) lam.left_mul[l].at(off + k, j) = v[k];
    };
    for (std::size_t l = 0; l < da; ++l) {
        for (std::size_t j = 0; j < da; ++j) put(l, j, 0, a->basis_product(l, j));
        for (std::size_t j = 0; j < dm; ++j) put(l, da + j, da, m.lact[l].col(j));
    }
    for (std::size_t l = 0; l < dm; ++l)
        for (std::size_t j = 0; j < db; ++j) put(da + l, da + dm + j, da, m.ract[j].col(l));
    for (std::size_t l = 0; l < db; ++l)
        for (std::size_t j = 0; j < db; ++j)
            put(da + dm + l, da + dm + j, da + dm, b->basis_product(l, j));
    lam.unit.assign(n, 0);
    for (std::size_t i = 0; i < da; ++i) lam.unit[i] = a->unit[i];
    for (std::size_t i = 0; i < db; ++i) lam.unit[da + dm + i] = b->unit[i];
    auto chk = lam.validate();
    if (!chk.ok) throw std::logic_error("build_lambda: " + chk.detail);
    return make_algebra(std::move(lam));
}

// [X;Y]_phi as a Lambda-module on X (+) Y
inline ModulePtr to_lambda_module(const TripleRep& t, const AlgebraPtr& lambda) {
    const std::size_t da = t.m->left->dim, dm = t.m->dim, db = t.m->right->dim;
    const std::size_t nx = t.x->dim, ny = t.y->dim;
    const u32 p = t.m->p();
    Module mod;
    mod.alg = lambda;
    mod.dim = nx + ny;
    mod.name = t.name;
    for (std::size_t i = 0; i < da; ++i)
        mod.action.push_back(t.x->action[i].dsum(Mat(p, ny, ny)));
    for (std::size_t k = 0; k < dm; ++k) {
        Mat act(p, nx + ny, nx + ny);
        for (std::size_t j = 0; j < ny; ++j) {
            Mat img = t.phi * Mat::col_vec(p, t.tensor.proj.col(k * ny + j));
            for (std::size_t r = 0; r < nx; ++r) act.at(r, nx + j) = img(r, 0);
        }
        mod.action.push_back(std::move(act));
    }
    for (std::size_t j = 0; j < db; ++j)
        mod.action.push_back(Mat(p, nx, nx).dsum(t.y->action[j]));
    return make_module(std::move(mod));
}

// inverse: split a Lambda-module along the idempotents e_A, e_B; when
// basis_change is supplied it receives the invertible map sending block
// coordinates (X part then Y part) to the original coordinates of n
inline TripleRep from_lambda_module(const ModulePtr& n, const BimodulePtr& m,
                                    Mat* basis_change = nullptr) {
    const AlgebraPtr& a = m->left;
    const AlgebraPtr& b = m->right;
    const std::size_t da = a->dim, dm = m->dim, db = b->dim;
    const u32 p = m->p();
    std::vector<u32> ea(da + dm + db, 0), eb(da + dm + db, 0);
    for (std::size_t i = 0; i < da; ++i) ea[i] = a->unit[i];
    for (std::size_t i = 0; i < db; ++i) eb[da + dm + i] = b->unit[i];
    Mat u = n->act(ea), v = n->act(eb);
    Subspace xs = column_space(u), ys = column_space(v);
    // X as an A-module on Im(e_A)
    Module xm;
    xm.alg = a;
    xm.dim = xs.dim();
    for (std::size_t i = 0; i < da; ++i) {
        std::vector<u32> coord(da + dm + db, 0);
        for (std::size_t k = 0; k < da; ++k) coord[k] = (i == k) ? 1 : 0;
        Mat full = n->act(coord);
        Mat act(p, xs.dim(), xs.dim());
        for (std::size_t j = 0; j < xs.dim(); ++j) {
            Mat img = full * Mat::col_vec(p, xs.basis.row(j));
            auto c = xs.coords(img.col(0));
            if (!c) throw std::logic_error("from_lambda_module: X part not invariant");
            for (std::size_t r = 0; r < xs.dim(); ++r) act.at(r, j) = (*c)[r];
        }
        xm.action.push_back(std::move(act));
    }
    ModulePtr x = make_module(std::move(xm));
    Module ym;
    ym.alg = b;
    ym.dim = ys.dim();
    for (std::size_t i = 0; i < db; ++i) {
        std::vector<u32> coord(da + dm + db, 0);
        coord[da + dm + i] = 1;
        Mat full = n->act(coord);
        Mat act(p, ys.dim(), ys.dim());
        for (std::size_t j = 0; j < ys.dim(); ++j) {
            Mat img = full * Mat::col_vec(p, ys.basis.row(j));
            auto c = ys.coords(img.col(0));
            if (!c) throw std::logic_error("from_lambda_module: Y part not invariant");
            for (std::size_t r = 0; r < ys.dim(); ++r) act.at(r, j) = (*c)[r];
        }
        ym.action.push_back(std::move(act));
    }
    ModulePtr y = make_module(std::move(ym));
    // phi on pure tensors: u_k (x) y_j -> action of the M-basis element
    TensorModule tm = tensor_MY(*m, y);
    Mat phi_full(p, xs.dim(), dm * ys.dim());
    for (std::size_t k = 0; k < dm; ++k) {
        std::vector<u32> coord(da + dm + db, 0);
        coord[da + k] = 1;
        Mat full = n->act(coord);
        for (std::size_t j = 0; j < ys.dim(); ++j) {
            Mat img = full * Mat::col_vec(p, ys.basis.row(j));
            auto c = xs.coords(img.col(0));
            if (!c) throw std::logic_error("from_lambda_module: M action escapes X part");
            for (std::size_t r = 0; r < xs.dim(); ++r)
                phi_full.at(r, k * ys.dim() + j) = (*c)[r];
        }
    }
    Mat phi = phi_full * tm.section;
    if (phi * tm.proj != phi_full)
        throw std::logic_error("from_lambda_module: phi does not descend");
    if (basis_change) {
        *basis_change = xs.basis.transpose().hstack(ys.basis.transpose());
        if (rank_of(*basis_change) != n->dim)
            throw std::logic_error("from_lambda_module: block decomposition is not a basis");
    }
    TripleRep t;
    t.m = m;
    t.x = x;
    t.y = y;
    t.tensor = std::move(tm);
    t.phi = std::move(phi);
    t.name = n->name;
    Hom check = make_hom(t.tensor.mod, t.x, t.phi);
    (void)check;
    return t;
}

// morphism translation: a pair (f, g) becomes the block-diagonal Lambda-map
inline Mat pair_to_lambda(const TriplePair& h) { return h.f.dsum(h.g); }
inline TriplePair lambda_to_pair(const Mat& m, std::size_t nx, std::size_t ny,
                                 std::size_t nx1, std::size_t ny1) {
    return {m.block(0, 0, nx1, nx), m.block(nx1, nx, ny1, ny)};
}

// ---------------------------------------------------------------------------
// classification criteria

struct ClassifyProjRep {
    bool y_projective = false;
    bool phi_injective = false;
    bool coker_projective = false;
    bool overall = false;
};

// Theorem: [X;Y]_phi projective in Rep iff Y projective, phi injective, and
// Coker(phi) a projective A-module.
inline ClassifyProjRep classify_projective_rep(const TripleRep& t) {
    ClassifyProjRep r;
    r.y_projective = is_projective(t.y);
    r.phi_injective = rank_of(t.phi) == t.tensor.mod->dim;
    Hom ph = make_hom(t.tensor.mod, t.x, t.phi, false);
    KerCoker kc = kernel_cokernel(ph);
    r.coker_projective = is_projective(kc.coker);
    r.overall = r.y_projective && r.phi_injective && r.coker_projective;
    return r;
}

struct ClassifyInjRepH {
    bool x_injective = false;
    bool varphi_surjective = false;
    bool ker_injective = false;
    bool overall = false;
};

// Theorem: (X,Y)_varphi injective in Rep_h iff X injective, varphi surjective,
// and Ker(varphi) an injective B-module.
inline ClassifyInjRepH classify_injective_reph(const TripleRepH& t) {
    ClassifyInjRepH r;
    r.x_injective = is_injective(t.x);
    r.varphi_surjective = rank_of(t.varphi) == t.hom.mod->dim;
    Hom vh = make_hom(t.y, t.hom.mod, t.varphi, false);
    KerCoker kc = kernel_cokernel(vh);
    r.ker_injective = is_injective(kc.ker);
    r.overall = r.x_injective && r.varphi_surjective && r.ker_injective;
    return r;
}

// ---------------------------------------------------------------------------
// componentwise kernels and cokernels with induced structure maps

struct TripleKerCokerH {
    TripleRepH ker, coker;
    TriplePair ker_incl, coker_proj;
};

inline TripleKerCokerH triple_kernel_cokernel_reph(const TripleRepH& t, const TripleRepH& t1,
                                                   const TriplePair& h) {
    if (!is_hom_reph(t, t1, h)) throw std::invalid_argument("not a Rep_h morphism");
    Hom fh = make_hom(t.x, t1.x, h.f, false);
    Hom gh = make_hom(t.y, t1.y, h.g, false);
    KerCoker kx = kernel_cokernel(fh), ky = kernel_cokernel(gh);
    // kernel structure map: Hom(M, incl_x) . kappa = varphi . incl_y
    HomModule hk = hom_MX(*t.m, kx.ker);
    Mat incl_map = hom_map(hk, t.hom, kx.incl.m);
    auto kap = solve(incl_map, t.varphi * ky.incl.m);
    if (!kap) throw std::logic_error("kernel structure map does not exist");
    TripleRepH ker = make_reph(t.m, kx.ker, ky.ker, kap->particular, t.name + "|ker");
    // cokernel structure map: gamma . proj_y = Hom(M, proj_x) . varphi1
    HomModule hc = hom_MX(*t.m, kx.coker);
    Mat rhs = hom_map(t1.hom, hc, kx.proj.m) * t1.varphi;
    auto gam = solve(ky.proj.m.transpose(), rhs.transpose());
    if (!gam) throw std::logic_error("cokernel structure map does not exist");
    Mat gamma = gam->particular.transpose();
    if (gamma * ky.proj.m != rhs) throw std::logic_error("cokernel map not well defined");
    TripleRepH coker = make_reph(t.m, kx.coker, ky.coker, std::move(gamma), t1.name + "|coker");
    return {std::move(ker), std::move(coker), {kx.incl.m, ky.incl.m}, {kx.proj.m, ky.proj.m}};
}

struct TripleKerCokerRep {
    TripleRep ker, coker;
    TriplePair ker_incl, coker_proj;
};

inline TripleKerCokerRep triple_kernel_cokernel_rep(const TripleRep& t, const TripleRep& t1,
                                                    const TriplePair& h) {
    if (!is_hom_rep(t, t1, h)) throw std::invalid_argument("not a Rep morphism");
    Hom fh = make_hom(t.x, t1.x, h.f, false);
    Hom gh = make_hom(t.y, t1.y, h.g, false);
    KerCoker kx = kernel_cokernel(fh), ky = kernel_cokernel(gh);
    // kernel: incl_x . phi_k = phi . (M (x) incl_y)
    TensorModule tk = tensor_MY(*t.m, ky.ker);
    Mat tincl = tensor_map(*t.m, tk, t.tensor, ky.incl.m);
    auto pk = solve(kx.incl.m, t.phi * tincl);
    if (!pk) throw std::logic_error("kernel structure map does not exist");
    TripleRep ker;
    ker.m = t.m;
    ker.x = kx.ker;
    ker.y = ky.ker;
    ker.tensor = std::move(tk);
    ker.phi = pk->particular;
    ker.name = t.name + "|ker";
    make_hom(ker.tensor.mod, ker.x, ker.phi);
    // cokernel: phi_c . (M (x) proj_y) = proj_x . phi1
    TensorModule tc = tensor_MY(*t.m, ky.coker);
    Mat tproj = tensor_map(*t.m, t1.tensor, tc, ky.proj.m);
    Mat rhs = kx.proj.m * t1.phi;
    auto pc = solve(tproj.transpose(), rhs.transpose());
    if (!pc) throw std::logic_error("cokernel structure map does not exist");
    Mat phic = pc->particular.transpose();
    if (phic * tproj != rhs) throw std::logic_error("cokernel map not well defined");
    TripleRep coker;
    coker.m = t.m;
    coker.x = kx.coker;
    coker.y = ky.coker;
    coker.tensor = std::move(tc);
    coker.phi = std::move(phic);
    coker.name = t1.name + "|coker";
    make_hom(coker.tensor.mod, coker.x, coker.phi);
    return {std::move(ker), std::move(coker), {kx.incl.m, ky.incl.m}, {kx.proj.m, ky.proj.m}};
}

// ---------------------------------------------------------------------------
// direct sums and isomorphism testing

inline TripleRepH dsum_reph(const TripleRepH& s, const TripleRepH& t) {
    ModulePtr x = direct_sum(s.x, t.x);
    ModulePtr y = direct_sum(s.y, t.y);
    HomModule h = hom_MX(*s.m, x);
    // inclusions X_i -> X induce Hom(M, X_i) -> Hom(M, X)
    Mat ix1 = Mat::identity(s.m->p(), s.x->dim).vstack(Mat(s.m->p(), t.x->dim, s.x->dim));
    Mat ix2 = Mat(s.m->p(), s.x->dim, t.x->dim).vstack(Mat::identity(s.m->p(), t.x->dim));
    Mat h1 = hom_map(s.hom, h, ix1), h2 = hom_map(t.hom, h, ix2);
    Mat py1 = Mat::identity(s.m->p(), s.y->dim).hstack(Mat(s.m->p(), s.y->dim, t.y->dim));
    Mat py2 = Mat(s.m->p(), t.y->dim, s.y->dim).hstack(Mat::identity(s.m->p(), t.y->dim));
    Mat varphi = h1 * s.varphi * py1 + h2 * t.varphi * py2;
    return make_reph(s.m, x, y, std::move(varphi), s.name + "+" + t.name);
}

struct TripleIso {
    Cert verdict = Cert::unknown;
    std::optional<TriplePair> witness;
};

inline TripleIso is_isomorphic_reph(const TripleRepH& s, const TripleRepH& t,
                                    u64 budget = 1 << 16) {
    if (s.x->dim != t.x->dim || s.y->dim != t.y->dim) return {Cert::no, std::nullopt};
    auto basis = hom_space_reph(s, t);
    if (basis.empty()) {
        bool zero = s.x->dim == 0 && s.y->dim == 0;
        return {zero ? Cert::yes : Cert::no,
                zero ? std::optional<TriplePair>({Mat(s.m->p(), 0, 0), Mat(s.m->p(), 0, 0)})
                     : std::nullopt};
    }
    const u32 p = s.m->p();
    auto combine = [&](const std::vector<u32>& c) {
        TriplePair h{Mat(p, t.x->dim, s.x->dim), Mat(p, t.y->dim, s.y->dim)};
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!c[i]) continue;
            h.f = h.f + basis[i].f.scaled(c[i]);
            h.g = h.g + basis[i].g.scaled(c[i]);
        }
        return h;
    };
    auto invertible = [&](const TriplePair& h) {
        return rank_of(h.f) == s.x->dim && rank_of(h.g) == s.y->dim;
    };
    std::mt19937_64 rng(0x3a1b2c3dULL + 97 * s.x->dim + 31 * s.y->dim + basis.size());
    std::uniform_int_distribution<u32> d(0, p - 1);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<u32> c(basis.size());
        for (auto& v : c) v = d(rng);
        TriplePair h = combine(c);
        if (invertible(h)) return {Cert::yes, h};
    }
    u64 total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        total *= p;
        if (total > budget) return {Cert::unknown, std::nullopt};
    }
    std::vector<u32> c(basis.size(), 0);
    do {
        TriplePair h = combine(c);
        if (invertible(h)) return {Cert::yes, h};
    } while (next_tuple(c, p));
    return {Cert::no, std::nullopt};
}

}  // namespace trimod
