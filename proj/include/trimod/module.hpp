#pragma once

// Left modules over a finite-dimensional algebra, given by one action matrix
// per algebra basis element, plus the hom/kernel/cokernel machinery the rest
// of the engine is built from. All values are immutable after construction.

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trimod/algebra.hpp"
#include "trimod/matrix.hpp"

namespace trimod {

struct Module;
using ModulePtr = std::shared_ptr<const Module>;

struct Module {
    AlgebraPtr alg;
    std::size_t dim = 0;
    std::vector<Mat> action;  // per algebra basis element, dim x dim
    std::string name;

    u32 p() const { return alg->p; }

    Mat act(const std::vector<u32>& a) const {
        Mat m(p(), dim, dim);
        for (std::size_t i = 0; i < alg->dim; ++i)
            if (a[i] % p()) m = m + action[i].scaled(a[i] % p());
        return m;
    }

    std::optional<std::string> invalid_reason() const {
        if (action.size() != alg->dim) return "action arity != algebra dim";
        for (std::size_t i = 0; i < action.size(); ++i)
            if (action[i].rows() != dim || action[i].cols() != dim || action[i].p() != p())
                return "action matrix " + std::to_string(i) + " malformed";
        for (std::size_t i = 0; i < alg->dim; ++i)
            for (std::size_t j = 0; j < alg->dim; ++j) {
                Mat lhs = action[i] * action[j];
                Mat rhs(p(), dim, dim);
                const auto prod = alg->basis_product(i, j);
                for (std::size_t k = 0; k < alg->dim; ++k)
                    if (prod[k]) rhs = rhs + action[k].scaled(prod[k]);
                if (lhs != rhs)
                    return "action violates structure constants at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")";
            }
        if (!act(alg->unit).is_identity()) return "unit does not act as identity";
        return std::nullopt;
    }
};

inline ModulePtr make_module(Module m, bool check = true) {
    if (check)
        if (auto why = m.invalid_reason()) throw std::invalid_argument("invalid module: " + *why);
    return std::make_shared<Module>(std::move(m));
}

inline ModulePtr zero_module(const AlgebraPtr& a) {
    Module m;
    m.alg = a;
    m.dim = 0;
    m.action.assign(a->dim, Mat(a->p, 0, 0));
    m.name = "0";
    return make_module(std::move(m), false);
}

// the regular module: A acting on itself by left multiplication
inline ModulePtr regular_module(const AlgebraPtr& a) {
    Module m;
    m.alg = a;
    m.dim = a->dim;
    m.action = a->left_mul;
    m.name = a->name;
    return make_module(std::move(m));
}

// A^r, coordinates (copy k, basis i) -> index k*dim(A)+i
inline ModulePtr free_module(const AlgebraPtr& a, std::size_t r) {
    Module m;
    m.alg = a;
    m.dim = a->dim * r;
    m.action.reserve(a->dim);
    Mat idr = Mat::identity(a->p, r);
    for (std::size_t i = 0; i < a->dim; ++i) m.action.push_back(idr.kron(a->left_mul[i]));
    m.name = a->name + "^" + std::to_string(r);
    return make_module(std::move(m), false);
}

inline ModulePtr direct_sum(const ModulePtr& x, const ModulePtr& y) {
    if (!x->alg->same_as(*y->alg)) throw std::invalid_argument("direct_sum: algebra mismatch");
    Module m;
    m.alg = x->alg;
    m.dim = x->dim + y->dim;
    for (std::size_t i = 0; i < x->alg->dim; ++i)
        m.action.push_back(x->action[i].dsum(y->action[i]));
    m.name = x->name + "+" + y->name;
    return make_module(std::move(m), false);
}

// F_p-dual, a left module over the opposite algebra (action matrices transpose)
inline ModulePtr dual_module(const ModulePtr& x, const AlgebraPtr& op) {
    Module m;
    m.alg = op;
    m.dim = x->dim;
    for (const Mat& a : x->action) m.action.push_back(a.transpose());
    m.name = x->name + "*";
    return make_module(std::move(m));
}

// ---------------------------------------------------------------------------
// homomorphisms

struct Hom {
    ModulePtr src, tgt;
    Mat m;  // tgt.dim x src.dim

    bool intertwines() const {
        for (std::size_t i = 0; i < src->alg->dim; ++i)
            if (m * src->action[i] != tgt->action[i] * m) return false;
        return true;
    }
    bool is_mono() const { return rank_of(m) == src->dim; }
    bool is_epi() const { return rank_of(m) == tgt->dim; }
    bool is_iso() const { return src->dim == tgt->dim && is_mono(); }
};

inline Hom make_hom(ModulePtr src, ModulePtr tgt, Mat m, bool check = true) {
    Hom h{std::move(src), std::move(tgt), std::move(m)};
    if (h.m.rows() != h.tgt->dim || h.m.cols() != h.src->dim)
        throw std::invalid_argument("hom matrix shape mismatch");
    if (check && !h.intertwines()) throw std::invalid_argument("matrix is not a module hom");
    return h;
}

inline Hom zero_hom(const ModulePtr& src, const ModulePtr& tgt) {
    return Hom{src, tgt, Mat(src->p(), tgt->dim, src->dim)};
}
inline Hom identity_hom(const ModulePtr& x) { return Hom{x, x, Mat::identity(x->p(), x->dim)}; }

inline Hom compose(const Hom& g, const Hom& f) {  // g after f
    return Hom{f.src, g.tgt, g.m * f.m};
}

inline bool same_module(const Module& a, const Module& b) {
    return a.alg->same_as(*b.alg) && a.dim == b.dim && a.action == b.action;
}

// Basis of Hom_A(x, y) as an F_p-space, canonical order (RREF kernel of the
// intertwining system in row-major matrix coordinates).
inline std::vector<Hom> hom_space(const ModulePtr& x, const ModulePtr& y) {
    if (!x->alg->same_as(*y->alg)) throw std::invalid_argument("hom_space: algebra mismatch");
    const u32 p = x->p();
    const std::size_t nx = x->dim, ny = y->dim, n = nx * ny;
    if (n == 0) return {};
    // vec_rm(F X) = (I (x) X^T) vec_rm(F);  vec_rm(Y F) = (Y (x) I) vec_rm(F)
    Mat sys(p, 0, n);
    Mat iy = Mat::identity(p, ny), ix = Mat::identity(p, nx);
    for (std::size_t i = 0; i < x->alg->dim; ++i) {
        Mat row = iy.kron(x->action[i].transpose()) - y->action[i].kron(ix);
        sys = sys.vstack(row);
    }
    Subspace k = kernel(sys);
    std::vector<Hom> basis;
    basis.reserve(k.dim());
    for (std::size_t r = 0; r < k.dim(); ++r) {
        Mat f(p, ny, nx, k.basis.row(r));
        basis.push_back(Hom{x, y, std::move(f)});
    }
    return basis;
}

// flattened coordinates of a hom matrix in the hom_space RREF basis
inline std::optional<std::vector<u32>> hom_coords(const std::vector<Hom>& basis, const Mat& m) {
    if (basis.empty()) {
        if (m.is_zero()) return std::vector<u32>{};
        return std::nullopt;
    }
    Mat rows(m.p(), 0, m.rows() * m.cols());
    for (const Hom& h : basis) rows = rows.vstack(Mat::row_vec(m.p(), h.m.flat()));
    Subspace s = Subspace::from_rows(rows);  // already RREF, but be safe
    return s.coords(m.flat());
}

inline Hom hom_from_coords(const std::vector<Hom>& basis, const std::vector<u32>& c,
                           const ModulePtr& src, const ModulePtr& tgt) {
    Mat m(src->p(), tgt->dim, src->dim);
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (c[t]) m = m + basis[t].m.scaled(c[t]);
    return Hom{src, tgt, std::move(m)};
}

// ---------------------------------------------------------------------------
// submodules / quotients / kernels / cokernels

// smallest submodule (as a subspace) containing the given vectors
inline Subspace submodule_generated(const Module& x, const Mat& generator_rows) {
    Subspace span = Subspace::from_rows(generator_rows);
    while (true) {
        Mat next = span.basis;
        for (const Mat& a : x.action) next = next.vstack((a * span.basis.transpose()).transpose());
        Subspace grown = Subspace::from_rows(next);
        if (grown.dim() == span.dim()) return grown;
        span = grown;
    }
}

inline bool is_invariant(const Module& x, const Subspace& s) {
    for (const Mat& a : x.action) {
        Mat img = (a * s.basis.transpose()).transpose();
        for (std::size_t r = 0; r < img.rows(); ++r)
            if (!s.contains_vec(img.row(r))) return false;
    }
    return true;
}

struct SubmodulePair {
    ModulePtr mod;
    Hom incl;  // mod -> ambient
};
struct QuotientPair {
    ModulePtr mod;
    Hom proj;  // ambient -> mod
    Mat section;  // linear (not module) section, proj*section = I
};

inline SubmodulePair submodule(const ModulePtr& x, const Subspace& s,
                               const std::string& name = "") {
    if (s.ambient != x->dim) throw std::invalid_argument("submodule: ambient mismatch");
    Module sub;
    sub.alg = x->alg;
    sub.dim = s.dim();
    sub.name = name;
    for (const Mat& a : x->action) {
        Mat m(x->p(), s.dim(), s.dim());
        for (std::size_t j = 0; j < s.dim(); ++j) {
            std::vector<u32> img(x->dim);
            {
                Mat c = a * Mat::col_vec(x->p(), s.basis.row(j));
                img = c.col(0);
            }
            auto coords = s.coords(img);
            if (!coords) throw std::invalid_argument("submodule: subspace not invariant");
            for (std::size_t i = 0; i < s.dim(); ++i) m.at(i, j) = (*coords)[i];
        }
        sub.action.push_back(std::move(m));
    }
    ModulePtr mod = make_module(std::move(sub));
    Hom incl{mod, x, s.basis.transpose()};
    return {mod, std::move(incl)};
}

inline QuotientPair quotient_module(const ModulePtr& x, const Subspace& s,
                                    const std::string& name = "") {
    if (!is_invariant(*x, s)) throw std::invalid_argument("quotient_module: not invariant");
    QuotientMaps q = quotient(x->dim, s);
    Module quo;
    quo.alg = x->alg;
    quo.dim = q.dim;
    quo.name = name;
    for (const Mat& a : x->action) quo.action.push_back(q.projection * a * q.section);
    ModulePtr mod = make_module(std::move(quo));
    Hom proj{x, mod, q.projection};
    return {mod, std::move(proj), q.section};
}

struct KerCoker {
    ModulePtr ker;
    Hom incl;   // ker -> src
    ModulePtr coker;
    Hom proj;   // tgt -> coker
    Subspace image;  // of the map, inside tgt
};

inline KerCoker kernel_cokernel(const Hom& f) {
    Subspace k = kernel(f.m);
    SubmodulePair kp = submodule(f.src, k);
    Subspace img = column_space(f.m);
    QuotientPair cp = quotient_module(f.tgt, img);
    return {kp.mod, kp.incl, cp.mod, cp.proj, img};
}

// ---------------------------------------------------------------------------
// short exact sequences and free covers

struct Ses {
    Hom f;  // mono A -> B
    Hom g;  // epi  B -> C

    bool valid() const {
        return same_module(*f.tgt, *g.src) && f.is_mono() && g.is_epi() &&
               column_space(f.m) == kernel(g.m) && f.intertwines() && g.intertwines();
    }
};

// Find h in the span of `basis` with op(h) = rhs (op linear), e.g. lifting and
// extension problems. Returns the deterministic particular solution.
template <typename Op>
inline std::optional<Hom> solve_hom(const std::vector<Hom>& basis, Op&& op, const Mat& rhs,
                                    const ModulePtr& src, const ModulePtr& tgt) {
    const u32 p = rhs.p();
    const std::size_t nr = rhs.rows() * rhs.cols();
    Mat sys(p, nr, basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        Mat img = op(basis[t].m);
        auto fl = img.flat();
        for (std::size_t r = 0; r < nr; ++r) sys.at(r, t) = fl[r];
    }
    auto sol = solve(sys, Mat::col_vec(p, rhs.flat()));
    if (!sol) return std::nullopt;
    std::vector<u32> c = basis.empty() ? std::vector<u32>{} : sol->particular.col(0);
    return hom_from_coords(basis, c, src, tgt);
}

// indices of a deterministic minimal-ish generating set (greedy scan of basis
// vectors, skipping those already generated)
inline std::vector<std::size_t> greedy_generators(const Module& x) {
    std::vector<std::size_t> gens;
    Subspace have = Subspace::zero(x.p(), x.dim);
    for (std::size_t j = 0; j < x.dim && have.dim() < x.dim; ++j) {
        if (have.contains_vec(Mat::identity(x.p(), x.dim).row(j))) continue;
        gens.push_back(j);
        Mat rows = have.basis;
        std::vector<u32> ej(x.dim, 0);
        ej[j] = 1;
        rows = rows.vstack(Mat::row_vec(x.p(), ej));
        have = submodule_generated(x, rows);
    }
    return gens;
}

struct FreeCover {
    ModulePtr cover;   // A^r
    Hom proj;          // A^r ->> x
    ModulePtr ker;
    Hom incl;          // ker -> A^r
    std::vector<std::size_t> generators;  // basis indices of x used

    Ses ses() const { return {incl, proj}; }
};

inline FreeCover free_cover(const ModulePtr& x) {
    const auto& a = *x->alg;
    std::vector<std::size_t> gens = greedy_generators(*x);
    const std::size_t r = gens.size();
    ModulePtr f = free_module(x->alg, r);
    Mat m(x->p(), x->dim, a.dim * r);
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<u32> g(x->dim, 0);
        g[gens[k]] = 1;
        for (std::size_t i = 0; i < a.dim; ++i) {
            Mat img = x->action[i] * Mat::col_vec(x->p(), g);
            for (std::size_t row = 0; row < x->dim; ++row) m.at(row, k * a.dim + i) = img(row, 0);
        }
    }
    Hom proj{f, x, std::move(m)};
    KerCoker kc = kernel_cokernel(proj);
    return {f, proj, kc.ker, kc.incl, std::move(gens)};
}

// section s with epi . s = id, if one exists (solved inside Hom(tgt, src))
inline std::optional<Hom> splitting_section(const Hom& epi) {
    const auto basis = hom_space(epi.tgt, epi.src);
    const u32 p = epi.m.p();
    const std::size_t n = epi.tgt->dim;
    if (n == 0) return zero_hom(epi.tgt, epi.src);
    Mat sys(p, n * n, basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        Mat comp = epi.m * basis[t].m;
        auto fl = comp.flat();
        for (std::size_t r = 0; r < fl.size(); ++r) sys.at(r, t) = fl[r];
    }
    auto sol = solve(sys, Mat::col_vec(p, Mat::identity(p, n).flat()));
    if (!sol) return std::nullopt;
    return hom_from_coords(basis, sol->particular.col(0), epi.tgt, epi.src);
}

// retraction r with r . mono = id, if one exists
inline std::optional<Hom> splitting_retraction(const Hom& mono) {
    const auto basis = hom_space(mono.tgt, mono.src);
    const u32 p = mono.m.p();
    const std::size_t n = mono.src->dim;
    if (n == 0) return zero_hom(mono.tgt, mono.src);
    Mat sys(p, n * n, basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        auto fl = (basis[t].m * mono.m).flat();
        for (std::size_t r = 0; r < fl.size(); ++r) sys.at(r, t) = fl[r];
    }
    auto sol = solve(sys, Mat::col_vec(p, Mat::identity(p, n).flat()));
    if (!sol) return std::nullopt;
    return hom_from_coords(basis, sol->particular.col(0), mono.tgt, mono.src);
}

// projectivity = the canonical free cover splits
inline bool is_projective(const ModulePtr& x, Hom* witness_section = nullptr) {
    if (x->dim == 0) return true;
    FreeCover fc = free_cover(x);
    auto s = splitting_section(fc.proj);
    if (s && witness_section) *witness_section = *s;
    return s.has_value();
}

// injectivity via duality: x injective iff dual is projective over A^op
inline bool is_injective(const ModulePtr& x) {
    auto op = make_algebra(x->alg->opposite());
    return is_projective(dual_module(x, op));
}

// ---------------------------------------------------------------------------
// isomorphism testing and summand enumeration

enum class Cert { yes, no, unknown };

struct IsoResult {
    Cert verdict = Cert::unknown;
    std::optional<Hom> witness;
};

// next coefficient tuple in lexicographic order; false when wrapped
inline bool next_tuple(std::vector<u32>& c, u32 p) {
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    return i < c.size();
}

inline IsoResult is_isomorphic(const ModulePtr& x, const ModulePtr& y, u64 budget = 1 << 16) {
    if (!x->alg->same_as(*y->alg)) return {Cert::no, std::nullopt};
    if (x->dim != y->dim) return {Cert::no, std::nullopt};
    if (x->dim == 0) return {Cert::yes, zero_hom(x, y)};
    auto basis = hom_space(x, y);
    if (basis.empty()) return {Cert::no, std::nullopt};
    const u32 p = x->p();
    // deterministic randomized phase
    std::mt19937_64 rng(0x72150d5eedULL + 1315423911ULL * x->dim + basis.size());
    std::uniform_int_distribution<u32> d(0, p - 1);
    for (int t = 0; t < 64; ++t) {
        std::vector<u32> c(basis.size());
        for (auto& v : c) v = d(rng);
        Hom h = hom_from_coords(basis, c, x, y);
        if (h.is_iso()) return {Cert::yes, h};
    }
    // exhaustive phase under budget
    u64 total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        total *= p;
        if (total > budget) return {Cert::unknown, std::nullopt};
    }
    std::vector<u32> c(basis.size(), 0);
    do {
        Hom h = hom_from_coords(basis, c, x, y);
        if (h.is_iso()) return {Cert::yes, h};
    } while (next_tuple(c, p));
    return {Cert::no, std::nullopt};
}

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// images of all idempotent endomorphisms, deduplicated up to isomorphism
inline std::vector<ModulePtr> enumerate_summands(const ModulePtr& x, u64 budget = 1 << 16) {
    auto ends = hom_space(x, x);
    const u32 p = x->p();
    u64 total = 1;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        total *= p;
        if (total > budget)
            throw BudgetExceeded("enumerate_summands: |End| = p^" + std::to_string(ends.size()) +
                                 " exceeds budget");
    }
    std::vector<ModulePtr> out;
    auto seen = [&](const ModulePtr& cand) {
        for (const auto& m : out)
            if (is_isomorphic(m, cand, budget).verdict == Cert::yes) return true;
        return false;
    };
    std::vector<u32> c(ends.size(), 0);
    if (ends.empty()) {
        out.push_back(x->dim == 0 ? x : zero_module(x->alg));
        return out;
    }
    do {
        Hom e = hom_from_coords(ends, c, x, x);
        if (e.m * e.m != e.m) continue;
        Subspace img = column_space(e.m);
        ModulePtr cand = submodule(x, img).mod;
        if (!seen(cand)) out.push_back(cand);
    } while (next_tuple(c, p));
    std::sort(out.begin(), out.end(),
              [](const ModulePtr& a, const ModulePtr& b) { return a->dim < b->dim; });
    return out;
}

}  // namespace trimod
