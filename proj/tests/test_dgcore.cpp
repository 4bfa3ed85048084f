#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcalc/dgmodule.hpp"

using namespace dgc;

namespace {

// exterior algebra on one odd generator with d(y) = f
DGAPtr koszul_one(const RingPtr& R, const Poly& f, const std::string& name = "y~") {
    DGAPtr pre = DGAlgebra::make(R, {{name, -1}}, {AlgElem{}});
    AlgElem df = pre->from_ring(f);
    return DGAlgebra::make(R, {{name, -1}}, {df});
}

} // namespace

TEST_CASE("sign conventions in the tensor algebra") {
    auto Q = Ring::make(BaseRing::QQ(), {}, {});
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    CHECK(B->validate());

    RingMap qx{Q, Qx, {}};
    auto T = tensor_dga(B, B, qx, qx);
    auto E = T.E;
    CHECK(E->validate());
    AlgElem y1 = E->gvar(0), y2 = E->gvar(1);
    // odd variables anticommute and square to zero
    CHECK(E->mul(y1, y2) == -E->mul(y2, y1));
    CHECK(E->mul(y1, y1).is_zero());
    // d(y1 y2) = d(y1) y2 - y1 d(y2)
    AlgElem lhs = E->d(E->mul(y1, y2));
    AlgElem rhs = E->mul(E->dgv[0], y2) - E->mul(y1, E->dgv[1]);
    CHECK(E->is_zero_elem(lhs - rhs));
    CHECK(E->is_zero_elem(E->d(lhs)));
}

TEST_CASE("flattened Koszul complex and cohomology") {
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    auto F = flatten_sf(algebra_as_module(B), -2, 0);
    CHECK(F.C->validate());
    CHECK(F.C->T(0).ngens == 1);
    CHECK(F.C->T(-1).ngens == 1);
    CHECK(F.C->T(-2).ngens == 0);

    auto h0 = F.C->cohomology(0);
    CHECK(h0.H.dimension() == 2); // QQ[x]/(x^2)
    auto h1 = F.C->cohomology(-1);
    CHECK(h1.H.is_zero_module());
}

TEST_CASE("integer Koszul tensor square has torsion in degree -1") {
    auto Z = Ring::make(BaseRing::ZZ(), {}, {});
    auto B = koszul_one(Z, Z->cst(2));
    RingMap zz = RingMap::identity(Z);
    auto T = tensor_dga(B, B, zz, zz);
    auto F = flatten_sf(algebra_as_module(T.E), -3, 0);
    CHECK(F.C->validate());

    auto h0 = F.C->cohomology(0).H.z_invariants();
    CHECK(h0.free_rank == 0);
    REQUIRE(h0.torsion.size() == 1);
    CHECK(h0.torsion[0] == 2);

    auto h1 = F.C->cohomology(-1).H.z_invariants();
    CHECK(h1.free_rank == 0);
    REQUIRE(h1.torsion.size() == 1);
    CHECK(h1.torsion[0] == 2);

    CHECK(F.C->cohomology(-2).H.is_zero_module());
}

TEST_CASE("augmentation is a quasi-isomorphism") {
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    auto F = flatten_sf(algebra_as_module(B), -2, 0);
    FPModule Bq{Qx, 1, {{Qx->var(0, 2)}}};
    auto target = dgflat_concentrated(B, Bq);

    ChainMap aug{F.C, target.C, 0, {}};
    aug.comp[0] = {{Qx->one()}};
    CHECK(aug.is_chain_map(-2, -1 + 1));
    CHECK(aug.is_quasi_iso(-1, 0));
}

TEST_CASE("module differential squares to zero in a mapping cone") {
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    // cone of multiplication by x on B: gens e (deg 0), f (deg -1), d(f) = x e
    DGModule M;
    M.E = B;
    M.gens = {{"e", 0}, {"f", -1}};
    M.dgen.resize(2);
    MElem df;
    M.add_term(df, 0, GMon(1, 0), Qx->var(0));
    M.dgen[1] = df;
    CHECK(M.validate());
    auto F = flatten_sf(M, -3, 0);
    CHECK(F.C->validate());
}

TEST_CASE("hom out of a semi-free module") {
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    // Hom_B(B, N) = N for concentrated N
    FPModule Bq{Qx, 1, {{Qx->var(0, 2)}}};
    auto N = dgflat_concentrated(B, Bq);
    auto H = hom_sf(algebra_as_module(B), N, -2, 1);
    CHECK(H.C->validate());
    CHECK(H.C->T(0).ngens == 1);
    auto h0 = H.C->cohomology(0);
    CHECK(h0.H.dimension() == 2);
    CHECK(H.C->T(-1).ngens == 0);

    // Hom_B(B tensor-like two-gen module, N): differential transposes
    DGModule M;
    M.E = B;
    M.gens = {{"e", 0}, {"f", -1}};
    M.dgen.resize(2);
    MElem df;
    M.add_term(df, 0, GMon(1, 0), Qx->var(0));
    M.dgen[1] = df;
    auto H2 = hom_sf(M, N, -1, 2);
    CHECK(H2.C->validate());
    // H^0 = ker(x) on QQ[x]/(x^2) = (x), H^1 = coker(x)
    auto c0 = H2.C->cohomology(0);
    CHECK(c0.H.dimension() == 1);
    auto c1 = H2.C->cohomology(1);
    CHECK(c1.H.dimension() == 1);
}

TEST_CASE("homotopy solving") {
    auto Qx = Ring::make(BaseRing::QQ(), {"x"}, {});
    auto B = koszul_one(Qx, Qx->var(0, 2));
    auto F = flatten_sf(algebra_as_module(B), -2, 0);

    // multiplication by x^2 on the Koszul complex is null-homotopic
    ChainMap mult{F.C, F.C, 0, {}};
    mult.comp[0] = {{Qx->var(0, 2)}};
    mult.comp[-1] = {{Qx->var(0, 2)}};
    ChainMap zero{F.C, F.C, 0, {}};
    CHECK(mult.is_chain_map(-2, 0));
    auto ht = homotopy_solve(mult, zero, -1, 0);
    REQUIRE(ht.has_value());
    CHECK(homotopy_verifies(mult, zero, *ht, -1, 0));

    // multiplication by x is not
    ChainMap mx{F.C, F.C, 0, {}};
    mx.comp[0] = {{Qx->var(0)}};
    mx.comp[-1] = {{Qx->var(0)}};
    CHECK(!homotopy_solve(mx, zero, -1, 0).has_value());
}

TEST_CASE("tensor of semi-free modules matches the tensor algebra") {
    auto Z = Ring::make(BaseRing::ZZ(), {}, {});
    auto B = koszul_one(Z, Z->cst(2));
    RingMap zz = RingMap::identity(Z);
    auto T = tensor_dga(B, B, zz, zz);
    auto S = tensor_sf(algebra_as_module(B), algebra_as_module(B), T);
    CHECK(S.P.validate());
    auto Fa = flatten_sf(algebra_as_module(T.E), -2, 0);
    auto Fb = flatten_sf(S.P, -2, 0);
    for (int i = -2; i <= 0; i++) CHECK(Fa.C->T(i).ngens == Fb.C->T(i).ngens);
    auto ha = Fa.C->cohomology(-1).H.z_invariants();
    auto hb = Fb.C->cohomology(-1).H.z_invariants();
    CHECK(ha.free_rank == hb.free_rank);
    CHECK(ha.torsion == hb.torsion);
}
