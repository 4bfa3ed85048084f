#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcalc/squaring.hpp"

using namespace dgc;

namespace {

RingPtr qring(std::vector<std::string> vars, std::vector<Poly> ideal = {}) {
    return Ring::make(BaseRing::QQ(), std::move(vars), std::move(ideal));
}

// QQ -> QQ[x]/(x^2)
RingMap dual_numbers() {
    auto A = qring({});
    auto B = qring({"x"}, {Poly::var(BaseRing::QQ(), 1, 0, 2)});
    return RingMap{A, B, {}};
}

} // namespace

TEST_CASE("squaring the identity of a field") {
    auto A = qring({});
    auto S = sq_flat(RingMap{A, A, {}}, SqOptions{-1, 1});
    CHECK(S.coh(0).H.dimension() == 1);
    CHECK(S.coh(-1).H.is_zero_module());
    CHECK(S.coh(1).H.is_zero_module());
}

TEST_CASE("self-square of the dual numbers") {
    auto S = sq_flat(dual_numbers());

    // H^0 is B itself, everything else in the window vanishes
    CHECK(S.coh(0).H.dimension() == 2);
    CHECK(S.coh_over_B(0).dimension() == 2);
    for (int t : {-2, -1, 1, 2}) CHECK(S.coh(t).H.is_zero_module());
}

TEST_CASE("module path agrees with the flat path") {
    auto u = dual_numbers();
    auto Sf = sq_flat(u, SqOptions{-1, 1});
    auto M = FPModule{u.dst, 1, {}};
    auto Sm = sq_object(u, M, SqOptions{-1, 1});
    for (int t = -1; t <= 1; t++)
        CHECK(Sm.coh(t).H.dimension() == Sf.coh(t).H.dimension());
}

TEST_CASE("squares of scalars act as the law demands") {
    auto u = dual_numbers();
    auto S = sq_flat(u, SqOptions{-1, 1});
    auto B = u.dst;

    SUBCASE("unit plus nilpotent") {
        auto L = square_law(S, B->one() + B->var(0));
        CHECK(L.chain_certified);
        CHECK(L.cohom_certified);
        CHECK(L.ok());
    }
    SUBCASE("nilpotent") {
        auto L = square_law(S, B->var(0));
        CHECK(L.ok());
    }
    SUBCASE("constant") {
        auto L = square_law(S, B->cst(3));
        CHECK(L.z.is_zero());
        CHECK(L.ok());
    }
}

TEST_CASE("the model is independent of the chosen resolution") {
    auto A = qring({});
    auto x2 = Poly::var(BaseRing::QQ(), 1, 0, 2);
    auto x3 = Poly::var(BaseRing::QQ(), 1, 0, 3);
    auto B1 = qring({"x"}, {x2});
    auto B2 = qring({"x"}, {x2, x3}); // redundant presentation of the same ring

    SqOptions opt{0, 0};
    auto S1 = sq_flat(RingMap{A, B1, {}}, opt);
    auto S2 = sq_flat(RingMap{A, B2, {}}, opt);
    REQUIRE(S2.Bres.Btil->ngv() > S1.Bres.Btil->ngv());

    auto C = compare_models(S1, S2);
    CHECK(C.certified);
    auto iso = C.induced_iso(0);
    CHECK(iso.well_defined());
    CHECK(iso.is_iso());
    CHECK(iso.src.dimension() == 2);
}

TEST_CASE("squaring a polynomial line") {
    auto A = qring({});
    auto B = qring({"x"});
    auto S = sq_flat(RingMap{A, B, {}}, SqOptions{0, 1});

    // one step of duality: everything sits in degree 1, free of rank one
    CHECK(S.coh(0).H.is_zero_module());
    auto H1 = S.coh_over_B(1).pruned();
    CHECK(H1.ngens == 1);
    CHECK(H1.rels.empty());
}

TEST_CASE("padded resolution of a polynomial ring gives the same model") {
    auto A = qring({});
    auto B = qring({"x"});
    SqOptions o1{1, 1};
    SqOptions o2{1, 1};
    o2.pad = {B->zero()};
    auto S1 = sq_flat(RingMap{A, B, {}}, o1);
    auto S2 = sq_flat(RingMap{A, B, {}}, o2);
    REQUIRE(S2.Bres.Btil->ngv() > S1.Bres.Btil->ngv());

    auto C = compare_models(S1, S2);
    CHECK(C.certified);
    auto iso = C.induced_iso(1);
    CHECK(iso.well_defined());
    CHECK(iso.is_iso());
}

TEST_CASE("resolution built on top of another resolution") {
    auto A = qring({});
    auto B = qring({"x"});
    auto C = qring({"t"}, {Poly::var(BaseRing::QQ(), 1, 0, 2)});
    auto Bres = semifree_algebra_resolution(RingMap{A, B, {}}, 4);
    auto tower = semifree_algebra_resolution_over(Bres, RingMap{B, C, {C->var(0)}}, 4);

    CHECK(tower.res.Btil->validate());
    CHECK(tower.incl.chain_compatible());
    REQUIRE((int)tower.res.bvar_in_ring0.size() == 1);

    auto F = flatten_sf(algebra_as_module(tower.res.Btil), -3, 0);
    CHECK(F.C->cohomology(0).H.dimension() == 2);
    CHECK(F.C->cohomology(-1).H.is_zero_module());
    CHECK(F.C->cohomology(-2).H.is_zero_module());
}

TEST_CASE("the square of a morphism") {
    auto u = dual_numbers();
    auto A = u.src;
    auto C = u.dst;
    SqOptions opt{-1, 1};
    auto SN = sq_object(u, FPModule{C, 1, {}}, opt);
    auto SM = sq_flat(RingMap{A, A, {}}, opt);

    // coefficient functional a + b t |-> b, the pairing of the presentation
    auto tr = [&](const Vec& v) -> Vec {
        Poly p = C->nf(v[0]);
        Poly out(BaseRing::QQ(), 0);
        for (const auto& [m, c] : p.terms())
            if (m.size() == 1 && m[0] == 1) out.add_term(Monomial{}, c);
        return {out};
    };
    auto F = sq_morphism(SN, SM, u, tr);

    // strict chain compatibility over the whole window
    for (int t = SN.lo - 1; t <= SN.hi; t++) {
        int n = SN.hom.C->ngens(t);
        for (int g = 0; g < n; g++) {
            Vec e(n, SN.hom.C->R->zero());
            e[g] = SN.hom.C->R->one();
            Vec lhs = SM.hom.C->d_apply(t, F.apply(t, e));
            Vec rhs = F.apply(t + 1, SN.hom.C->d_apply(t, e));
            REQUIRE(lhs.size() == rhs.size());
            for (size_t r = 0; r < lhs.size(); r++)
                CHECK(SM.hom.C->R->equal(lhs[r], rhs[r]));
        }
    }

    // the induced map on H^0 is onto the one-dimensional target
    auto cohN = SN.hom.C->cohomology(0);
    auto cohM = SM.hom.C->cohomology(0);
    REQUIRE(cohN.H.dimension() == 2);
    REQUIRE(cohM.H.dimension() == 1);
    // the map is only linear over the base field, so scan scalar multiples
    // of the representatives to hit the whole of H^0
    const RingPtr& E0 = SN.T.E->ring0;
    bool hit = false;
    for (const auto& z : cohN.cocycles) {
        std::vector<Vec> probes{z};
        for (int v = 0; v < E0->nvars(); v++) {
            Vec zv = z;
            for (auto& p : zv) p = E0->nf(p * E0->var(v));
            probes.push_back(zv);
        }
        for (const auto& p : probes) {
            auto cls = SM.hom.C->class_in_H(0, cohM, F.apply(0, p));
            REQUIRE(cls.has_value());
            if (!cohM.H.contains(*cls)) hit = true;
        }
    }
    CHECK(hit);
}

TEST_CASE("torsion quotient of the integers") {
    auto Z = Ring::make(BaseRing::ZZ(), {}, {});
    auto B = Ring::make(BaseRing::ZZ(), {}, {Poly::constant(BaseRing::ZZ(), 0, 2)});
    auto S = sq_flat(RingMap{Z, B, {}});

    // Sq(Z/2) = Z/2 shifted one step left
    auto inv = S.coh(-1).H.z_invariants();
    CHECK(inv.free_rank == 0);
    REQUIRE(inv.torsion.size() == 1);
    CHECK(inv.torsion[0] == 2);
    for (int t : {-2, 0, 1, 2}) CHECK(S.coh(t).H.is_zero_module());

    auto L = square_law(S, B->cst(3));
    CHECK(L.ok());
}
