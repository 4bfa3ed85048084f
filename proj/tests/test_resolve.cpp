#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcalc/resolve.hpp"

using namespace dgc;

namespace {

RingPtr qring(std::vector<std::string> vars, std::vector<Poly> ideal = {}) {
    return Ring::make(BaseRing::QQ(), std::move(vars), std::move(ideal));
}

} // namespace

TEST_CASE("Koszul complex on a regular sequence") {
    auto R = qring({"x", "y"});
    auto K = koszul(R, {R->var(0), R->var(1)});
    CHECK(K->validate());
    CHECK(K->ngv() == 2);

    auto F = flatten_sf(algebra_as_module(K), -3, 0);
    CHECK(F.C->validate());
    CHECK(F.C->cohomology(0).H.dimension() == 1); // residue field
    CHECK(F.C->cohomology(-1).H.is_zero_module());
    CHECK(F.C->cohomology(-2).H.is_zero_module());
}

TEST_CASE("algebra resolution of a hypersurface is the Koszul complex") {
    auto A = qring({});
    auto B = qring({"x"}, {Poly::var(BaseRing::QQ(), 1, 0, 2)});
    auto res = semifree_algebra_resolution(RingMap{A, B, {}}, 4);
    CHECK(res.Btil->ngv() == 1);
    CHECK(res.Btil->gvars[0].degree == -1);

    auto F = flatten_sf(algebra_as_module(res.Btil), res.exact_to - 1, 0);
    auto aug = augmentation_map(res, F);
    CHECK(aug.is_chain_map(res.exact_to - 1, 0));
    CHECK(aug.is_quasi_iso(res.exact_to, 0));
    CHECK(F.C->cohomology(0).H.dimension() == 2);
}

TEST_CASE("algebra resolutions over the integers") {
    auto Z = Ring::make(BaseRing::ZZ(), {}, {});
    auto two = Poly::constant(BaseRing::ZZ(), 0, 2);
    auto four = Poly::constant(BaseRing::ZZ(), 0, 4);

    auto B = Ring::make(BaseRing::ZZ(), {}, {two});
    auto res = semifree_algebra_resolution(RingMap{Z, B, {}}, 4);
    CHECK(res.Btil->ngv() == 1);
    auto F = flatten_sf(algebra_as_module(res.Btil), res.exact_to - 1, 0);
    CHECK(augmentation_map(res, F).is_quasi_iso(res.exact_to, 0));
    auto inv = F.C->cohomology(0).H.z_invariants();
    CHECK(inv.free_rank == 0);
    REQUIRE(inv.torsion.size() == 1);
    CHECK(inv.torsion[0] == 2);

    // redundant presentation of the same quotient forces higher syzygy
    // generators but still resolves
    auto B2 = Ring::make(BaseRing::ZZ(), {}, {two, four});
    auto res2 = semifree_algebra_resolution(RingMap{Z, B2, {}}, 4);
    CHECK(res2.Btil->ngv() >= 3);
    auto F2 = flatten_sf(algebra_as_module(res2.Btil), res2.exact_to - 1, 0);
    CHECK(augmentation_map(res2, F2).is_quasi_iso(res2.exact_to, 0));
}

TEST_CASE("algebra resolution of a fat point needs degree -2 generators") {
    auto A = qring({});
    auto Bq = BaseRing::QQ();
    auto x2 = Poly::var(Bq, 2, 0, 2);
    auto xy = Poly::var(Bq, 2, 0) * Poly::var(Bq, 2, 1);
    auto y2 = Poly::var(Bq, 2, 1, 2);
    auto B = qring({"x", "y"}, {x2, xy, y2});
    auto res = semifree_algebra_resolution(RingMap{A, B, {}}, 3);
    int deep = 0;
    for (const auto& g : res.Btil->gvars)
        if (g.degree <= -2) deep++;
    CHECK(deep > 0);
    auto F = flatten_sf(algebra_as_module(res.Btil), res.exact_to - 1, 0);
    CHECK(augmentation_map(res, F).is_quasi_iso(res.exact_to, 0));
    CHECK(F.C->cohomology(0).H.dimension() == 3);
}

TEST_CASE("algebra resolution of a polynomial extension") {
    auto B = qring({"x"});
    auto C = qring({"x", "y"});
    RingMap u{B, C, {C->var(0)}};
    auto res = semifree_algebra_resolution(u, 4);
    // one generator killing the identification of the two copies of x
    CHECK(res.Btil->ngv() == 1);
    auto F = flatten_sf(algebra_as_module(res.Btil), res.exact_to - 1, 0);
    CHECK(augmentation_map(res, F).is_quasi_iso(res.exact_to, 0));
}

TEST_CASE("lifting a morphism between two resolutions") {
    auto A = qring({});
    auto Bq = BaseRing::QQ();
    auto x2 = Poly::var(Bq, 1, 0, 2);
    auto x3 = Poly::var(Bq, 1, 0, 3);
    auto B1 = qring({"x"}, {x2});
    auto B2 = qring({"x"}, {x2, x3});
    auto r1 = semifree_algebra_resolution(RingMap{A, B1, {}}, 4);
    auto r2 = semifree_algebra_resolution(RingMap{A, B2, {}}, 4);
    CHECK(r2.Btil->ngv() > r1.Btil->ngv());

    auto w = lift_dg_morphism(r1, r2);
    CHECK(w.chain_compatible());
    // compatible with the augmentations in degree 0
    RingMap down = r2.v0.compose(w.r0);
    for (int i = 0; i < r1.Btil->ring0->nvars(); i++)
        CHECK(r1.B->equal(down.images[i], r1.v0.images[i]));

    auto back = lift_dg_morphism(r2, r1);
    CHECK(back.chain_compatible());
}

TEST_CASE("module resolution over an enveloping algebra") {
    // B = QQ[x]/(x^2): resolve B over E = Btil tensor Btil and read off
    // self-extension dimensions 2, 1, 1, 1
    auto A = qring({});
    auto B = qring({"x"}, {Poly::var(BaseRing::QQ(), 1, 0, 2)});
    auto res = semifree_algebra_resolution(RingMap{A, B, {}}, 4);
    RingMap a0{A, res.Btil->ring0, {}};
    auto T = tensor_dga(res.Btil, res.Btil, a0, a0);
    auto E = T.E;
    CHECK(E->validate());

    auto R0 = E->ring0; // QQ[x1, x2]
    FPModule Bfp{R0, 1, {{R0->var(0) - R0->var(1)}, {R0->var(0) * R0->var(0)}}};
    auto N = dgflat_concentrated(E, Bfp);

    auto sfr = semifree_module_resolution(E, N, -5, 0);
    CHECK(sfr.P.validate());
    CHECK(sfr.v.is_chain_map(-5, 0));
    CHECK(sfr.v.is_quasi_iso(-4, 0));

    auto H = hom_sf(sfr.P, N, 0, 4);
    CHECK(H.C->validate());
    CHECK(H.C->cohomology(0).H.dimension() == 2);
    CHECK(H.C->cohomology(1).H.dimension() == 1);
    CHECK(H.C->cohomology(2).H.dimension() == 1);
    CHECK(H.C->cohomology(3).H.dimension() == 1);

    SUBCASE("lifting the augmentation through itself") {
        auto Q = algebra_as_module(E);
        auto FQ = flatten_sf(Q, -4, 0);
        std::vector<Vec> f = {{R0->one()}};
        auto lifted = lift_through_qis(Q, FQ, f, sfr.F, sfr.Pflat, N, sfr.v);
        REQUIRE(lifted.has_value());
        CHECK(lifted->ftil.is_chain_map(-3, 0));
        // v o ftil agrees with f up to homotopy
        ChainMap fc{FQ.C, N.C, 0, {}};
        for (int i = -4; i <= 0; i++) {
            auto it = FQ.basis.find(i);
            if (it == FQ.basis.end()) continue;
            std::vector<Vec> comps;
            for (const auto& [j, mu] : it->second) {
                AlgElem a;
                a.add_term(mu, R0->one());
                comps.push_back(N.act_alg(a, Q.gens[j].degree, f[j]));
            }
            fc.comp[i] = comps;
        }
        auto cmp = sfr.v.compose(lifted->ftil);
        auto h = homotopy_solve(cmp, fc, -3, 0);
        REQUIRE(h.has_value());
        CHECK(homotopy_verifies(cmp, fc, *h, -3, 0));
    }
}
