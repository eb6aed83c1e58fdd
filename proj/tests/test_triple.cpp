#include <catch2/catch_amalgamated.hpp>

#include "trimod/triple.hpp"

using namespace trimod;

namespace {

// FIX-UT2 scaffolding: A = B = M = F_2, Lambda = UT_2(F_2)
struct Ut2Fixture {
    AlgebraPtr f2 = ground_field(2);
    BimodulePtr m = share(regular_bimodule(f2));
    AlgebraPtr lambda = build_lambda(*m);
    ModulePtr z = zero_module(f2);
    ModulePtr k = regular_module(f2);

    // all Rep triples with component dims <= 1
    std::vector<TripleRep> all_reps() const {
        std::vector<TripleRep> ts;
        ts.push_back(make_rep(m, z, z, Mat(2, 0, 0), "zero"));
        ts.push_back(make_rep(m, k, z, Mat(2, 1, 0), "x-only"));
        ts.push_back(make_rep(m, z, k, Mat(2, 0, 1), "y-only"));
        ts.push_back(make_rep(m, k, k, Mat(2, 1, 1, {0}), "xy0"));
        ts.push_back(make_rep(m, k, k, Mat(2, 1, 1, {1}), "xy1"));
        return ts;
    }
};

ModulePtr simple_d2(const AlgebraPtr& d2) {
    Module s;
    s.alg = d2;
    s.dim = 1;
    s.action = {Mat::identity(2, 1), Mat(2, 1, 1)};
    s.name = "S";
    return make_module(std::move(s));
}

}  // namespace

TEST_CASE("build_lambda: F_2 everywhere gives UT_2(F_2)") {
    Ut2Fixture fx;
    const auto& lam = *fx.lambda;
    CHECK(lam.dim == 3);
    CHECK(lam.validate().ok);
    // basis order (A, M, B): e0 e1 = e1 (E11 E12 = E12), e1 e2 = e1 (E12 E22 = E12)
    CHECK(lam.basis_product(0, 1) == std::vector<u32>{0, 1, 0});
    CHECK(lam.basis_product(1, 2) == std::vector<u32>{0, 1, 0});
    CHECK(lam.basis_product(1, 0) == std::vector<u32>{0, 0, 0});
    CHECK(lam.basis_product(2, 1) == std::vector<u32>{0, 0, 0});
    CHECK(lam.basis_product(1, 1) == std::vector<u32>{0, 0, 0});
    CHECK(lam.unit == std::vector<u32>{1, 0, 1});
}

TEST_CASE("build_lambda: zero bimodule gives the product algebra") {
    auto f2 = ground_field(2);
    auto d2 = dual_numbers(2);
    Bimodule zero_bm = make_bimodule(d2, f2, 0, std::vector<Mat>(2, Mat(2, 0, 0)),
                                     {Mat(2, 0, 0)}, "0");
    AlgebraPtr lam = build_lambda(zero_bm);
    CHECK(lam->dim == 3);
    CHECK(lam->validate().ok);
    // cross products vanish
    CHECK(lam->basis_product(0, 2) == std::vector<u32>{0, 0, 0});
    CHECK(lam->basis_product(2, 0) == std::vector<u32>{0, 0, 0});
}

TEST_CASE("build_lambda: FIX-FROB (A = B = M = D2) is a valid 6-dim algebra") {
    auto d2 = dual_numbers(2);
    AlgebraPtr lam = build_lambda(regular_bimodule(d2));
    CHECK(lam->dim == 6);
    CHECK(lam->validate().ok);
}

TEST_CASE("triple -> Lambda module: zero and the indecomposable projective") {
    Ut2Fixture fx;
    TripleRep z = zero_rep(fx.m);
    CHECK(to_lambda_module(z, fx.lambda)->dim == 0);

    TripleRep t = make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1}), "proj");
    ModulePtr n = to_lambda_module(t, fx.lambda);
    REQUIRE(n->dim == 2);
    CHECK(is_projective(n));

    TripleRep t0 = make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {0}), "xy0");
    CHECK_FALSE(is_projective(to_lambda_module(t0, fx.lambda)));
}

TEST_CASE("round trip through Lambda-Mod is the identity on all UT2 triples") {
    Ut2Fixture fx;
    for (const TripleRep& t : fx.all_reps()) {
        ModulePtr n = to_lambda_module(t, fx.lambda);
        TripleRep back = from_lambda_module(n, fx.m);
        CHECK(back.x->action == t.x->action);
        CHECK(back.y->action == t.y->action);
        CHECK(back.phi == t.phi);
    }
}

TEST_CASE("from_lambda_module handles modules not in block coordinates") {
    Ut2Fixture fx;
    TripleRep t = make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1}), "proj");
    ModulePtr n = to_lambda_module(t, fx.lambda);
    // conjugate by the basis swap to scramble the block structure
    Mat s(2, 2, 2, {1, 1, 0, 1});  // invertible over F_2
    Module scr;
    scr.alg = fx.lambda;
    scr.dim = 2;
    for (const Mat& a : n->action) scr.action.push_back(s * a * s);  // s = s^{-1} over F_2
    ModulePtr ns = make_module(std::move(scr));
    TripleRep back = from_lambda_module(ns, fx.m);
    ModulePtr n2 = to_lambda_module(back, fx.lambda);
    CHECK(is_isomorphic(n2, ns).verdict == Cert::yes);
    CHECK(is_isomorphic(n2, n).verdict == Cert::yes);
}

TEST_CASE("rep <-> reph round trip and invertibility transfer") {
    Ut2Fixture fx;
    for (const TripleRep& t : fx.all_reps()) {
        TripleRepH h = rep_to_reph(t);
        TripleRep back = reph_to_rep(h);
        CHECK(back.phi == t.phi);
        CHECK(back.x->action == t.x->action);
    }
    // phi iso => varphi iso on the FIX-UT2 projective triple
    TripleRepH h = rep_to_reph(make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1})));
    CHECK(rank_of(h.varphi) == 1);
    CHECK(h.hom.mod->dim == 1);
}

TEST_CASE("rep <-> reph round trip on FIX-DUAL triples with dims <= 2") {
    auto d2 = dual_numbers(2);
    auto f2 = ground_field(2);
    BimodulePtr m = share(make_bimodule(d2, f2, 2, d2->left_mul, {Mat::identity(2, 2)}, "M"));
    auto s = simple_d2(d2);
    auto r = regular_module(d2);
    auto kf = regular_module(f2);
    auto kff = direct_sum(kf, kf);
    std::vector<ModulePtr> xs{zero_module(d2), s, r, direct_sum(s, s)};
    std::vector<ModulePtr> ys{zero_module(f2), kf, kff};
    int checked = 0;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            // enumerate every phi: M (x) Y -> X (the whole hom space)
            TensorModule tm = tensor_MY(*m, y);
            auto homs = hom_space(tm.mod, x);
            std::vector<u32> c(homs.size(), 0);
            int budget = 40;  // plenty to cover the small spaces here
            do {
                Mat phi(2, x->dim, tm.mod->dim);
                for (std::size_t i = 0; i < homs.size(); ++i)
                    if (c[i]) phi = phi + homs[i].m.scaled(c[i]);
                TripleRep t;
                t.m = m;
                t.x = x;
                t.y = y;
                t.tensor = tm;
                t.phi = phi;
                TripleRep back = reph_to_rep(rep_to_reph(t));
                CHECK(back.phi == t.phi);
                ++checked;
            } while (next_tuple(c, 2) && --budget > 0);
        }
    CHECK(checked >= 30);
}

TEST_CASE("classification: Theorem criteria on FIX-UT2 triples") {
    Ut2Fixture fx;
    // [F2;F2]_1: phi iso, Coker 0 -> projective
    auto good = classify_projective_rep(make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1})));
    CHECK(good.overall);
    CHECK(good.y_projective);
    CHECK(good.phi_injective);
    CHECK(good.coker_projective);
    // [F2;F2]_0: phi not injective
    auto bad = classify_projective_rep(make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {0})));
    CHECK_FALSE(bad.overall);
    CHECK_FALSE(bad.phi_injective);

    // (F2,F2)_1 injective in Rep_h
    auto goodi = classify_injective_reph(rep_to_reph(make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1}))));
    CHECK(goodi.overall);
    // (F2,0)_0: varphi not surjective
    auto badi = classify_injective_reph(make_reph(fx.m, fx.k, fx.z, Mat(2, 1, 0)));
    CHECK_FALSE(badi.overall);
    CHECK_FALSE(badi.varphi_surjective);
}

TEST_CASE("classification agrees with Lambda-module projectivity/injectivity") {
    Ut2Fixture fx;
    for (const TripleRep& t : fx.all_reps()) {
        ModulePtr n = to_lambda_module(t, fx.lambda);
        CHECK(classify_projective_rep(t).overall == is_projective(n));
        CHECK(classify_injective_reph(rep_to_reph(t)).overall == is_injective(n));
    }
}

TEST_CASE("triple hom spaces match Lambda hom spaces in dimension") {
    Ut2Fixture fx;
    auto reps = fx.all_reps();
    for (const TripleRep& s : reps)
        for (const TripleRep& t : reps) {
            auto direct = hom_space_rep(s, t);
            auto lam = hom_space(to_lambda_module(s, fx.lambda), to_lambda_module(t, fx.lambda));
            CHECK(direct.size() == lam.size());
            for (const auto& h : direct) CHECK(is_hom_rep(s, t, h));
            // and on the Rep_h side through the equivalence
            auto hs = rep_to_reph(s);
            auto ht = rep_to_reph(t);
            CHECK(hom_space_reph(hs, ht).size() == lam.size());
        }
}

TEST_CASE("triple kernels and cokernels, componentwise with induced maps") {
    Ut2Fixture fx;
    TripleRep t0 = make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {0}), "xy0");
    TripleRep tx = make_rep(fx.m, fx.k, fx.z, Mat(2, 1, 0), "x-only");

    // identity: zero kernel and cokernel
    auto idkc = triple_kernel_cokernel_rep(t0, t0, {Mat::identity(2, 1), Mat::identity(2, 1)});
    CHECK(idkc.ker.x->dim + idkc.ker.y->dim == 0);
    CHECK(idkc.coker.x->dim + idkc.coker.y->dim == 0);

    // zero map: kernel = source, cokernel = target
    auto zkc = triple_kernel_cokernel_rep(t0, tx, {Mat(2, 1, 1, {0}), Mat(2, 0, 1)});
    CHECK(zkc.ker.x->dim == 1);
    CHECK(zkc.ker.y->dim == 1);
    CHECK(zkc.coker.x->dim == 1);

    // (1,0): [F2;F2]_0 -> [F2;0]_0 has kernel [0;F2]_0
    auto kc = triple_kernel_cokernel_rep(t0, tx, {Mat::identity(2, 1), Mat(2, 0, 1)});
    CHECK(kc.ker.x->dim == 0);
    CHECK(kc.ker.y->dim == 1);
    CHECK(kc.coker.x->dim == 0);
    CHECK(kc.coker.y->dim == 0);

    // Rep_h side: kernel of the counit-style morphism
    TripleRepH h0 = rep_to_reph(t0);
    TripleRepH hx = rep_to_reph(tx);
    auto hkc = triple_kernel_cokernel_reph(h0, hx, {Mat::identity(2, 1), Mat(2, 0, 1)});
    CHECK(hkc.ker.x->dim == 0);
    CHECK(hkc.ker.y->dim == 1);
}

TEST_CASE("exactness of triple sequences matches Lambda-module exactness") {
    Ut2Fixture fx;
    // 0 -> [F2;0] -> [F2;F2]_1 -> [0;F2] -> 0: the X-part is the submodule
    TripleRep tx = make_rep(fx.m, fx.k, fx.z, Mat(2, 1, 0), "x-only");
    TripleRep tp = make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1}), "proj");
    TripleRep ty = make_rep(fx.m, fx.z, fx.k, Mat(2, 0, 1), "y-only");
    TriplePair inc{Mat::identity(2, 1), Mat(2, 1, 0)};
    TriplePair prj{Mat(2, 0, 1), Mat::identity(2, 1)};
    REQUIRE(is_hom_rep(tx, tp, inc));
    REQUIRE(is_hom_rep(tp, ty, prj));
    // componentwise exact
    Mat fX = inc.f, gX = prj.f, fY = inc.g, gY = prj.g;
    CHECK(column_space(fX) == kernel(gX));
    CHECK(column_space(fY) == kernel(gY));
    // matches Lambda-module exactness after translation
    ModulePtr na = to_lambda_module(tx, fx.lambda);
    ModulePtr nb = to_lambda_module(tp, fx.lambda);
    ModulePtr nc = to_lambda_module(ty, fx.lambda);
    Mat lf = pair_to_lambda(inc), lg = pair_to_lambda(prj);
    Ses ses{make_hom(na, nb, lf), make_hom(nb, nc, lg)};
    CHECK(ses.valid());
}

TEST_CASE("triple direct sum and isomorphism testing") {
    Ut2Fixture fx;
    TripleRepH a = rep_to_reph(make_rep(fx.m, fx.k, fx.k, Mat(2, 1, 1, {1})));
    TripleRepH b = rep_to_reph(make_rep(fx.m, fx.z, fx.k, Mat(2, 0, 1)));
    TripleRepH sum = dsum_reph(a, b);
    CHECK(sum.x->dim == 1);
    CHECK(sum.y->dim == 2);
    CHECK(is_isomorphic_reph(sum, dsum_reph(b, a)).verdict == Cert::yes);
    CHECK(is_isomorphic_reph(a, b).verdict == Cert::no);
    CHECK(is_isomorphic_reph(a, a).verdict == Cert::yes);
}
