#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcalc/rigidity.hpp"

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

TEST_CASE("tautological structure of the rationals") {
    auto A = qring({});
    auto rc = tautological_rigid(A, -1, 1);
    auto rep = verify_rigid(rc);
    CHECK(rep.bounded_finite);
    CHECK(rep.flat_over_base);
    CHECK(rep.chain);
    CHECK(rep.quasi_iso);
    CHECK(rep.ok());
    REQUIRE(rc.rho_cls.size() == 1);
}

TEST_CASE("zero map is not a rigid structure") {
    auto A = qring({});
    auto S = sq_flat(RingMap::identity(A), SqOptions{-1, 1, 0, {}});
    Vec zero(S.hom.C->ngens(0), S.T.E->ring0->zero());
    auto rc = rigid_from_cocycles(S, {zero});
    auto rep = verify_rigid(rc);
    CHECK(rep.chain);
    CHECK(!rep.quasi_iso);
    CHECK(!rep.ok());
}

TEST_CASE("dual numbers carry a rigid structure found by search") {
    auto u = dual_numbers();
    auto M = FPModule{u.dst, 1, {}};
    auto S = sq_object(u, M, SqOptions{-1, 1, 0, {}});
    auto rc = rigid_search(S);
    REQUIRE(rc.has_value());
    CHECK(verify_rigid(*rc).ok());

    SUBCASE("only the identity among the units is rigid") {
        auto B = u.dst;
        auto units = units_up_to_height(B, 2);
        bool has_one = false, has_nilshift = false;
        for (const auto& c : units) {
            if (c == B->one()) has_one = true;
            if (c == B->nf(B->one() + B->var(0))) has_nilshift = true;
        }
        CHECK(has_one);
        CHECK(has_nilshift);
        auto found = rigid_auto_scan(*rc, units);
        REQUIRE(found.has_value());
        REQUIRE(found->size() == 1);
        CHECK((*found)[0] == B->one());
    }
}

TEST_CASE("scalar endomorphism ring detection") {
    auto B = dual_numbers().dst;
    CHECK(end_is_scalar(FPModule{B, 1, {}}));
    CHECK(!end_is_scalar(FPModule{B, 2, {}}));
    // B/(x) has extra endomorphisms over B
    CHECK(!end_is_scalar(FPModule{B, 1, {Vec{B->var(0)}}}));
}

TEST_CASE("prime field units: only the identity is rigid") {
    auto A = Ring::make(BaseRing::Fp(5), {}, {});
    auto rc = tautological_rigid(A, -1, 1);
    CHECK(verify_rigid(rc).ok());
    auto units = units_up_to_height(A, 4);
    auto found = rigid_auto_scan(rc, units);
    REQUIRE(found.has_value());
    REQUIRE(found->size() == 1);
    CHECK((*found)[0] == A->one());
}

TEST_CASE("finite dual of the dual numbers") {
    auto u = dual_numbers();
    auto fd = flat_shriek_base(u, -1, 1);
    CHECK(fd->cbasis.size() == 2);
    CHECK(fd->N.dimension() == 2);
    CHECK(end_is_scalar(fd->N));
    CHECK(fd->trace_unique);
    CHECK(verify_rigid(fd->rc).ok());

    SUBCASE("the trace itself is the unique rigid trace among units") {
        auto C = u.dst;
        CHECK(trace_is_rigid(*fd, C->one()));
        CHECK(!trace_is_rigid(*fd, C->nf(C->one() + C->var(0))));
        CHECK(!trace_is_rigid(*fd, C->cst(2)));
        auto hits = trace_scan(*fd, units_up_to_height(C, 2));
        REQUIRE(hits.size() == 1);
        CHECK(hits[0] == C->one());
    }

    SUBCASE("the structure map is a comultiplication") {
        auto cc = coalgebra_check(*fd);
        CHECK(cc.coassociative);
        CHECK(cc.cocommutative);
        CHECK(cc.counit);
    }
}

TEST_CASE("top forms of a polynomial line are rigid") {
    auto A = qring({});
    auto C = qring({"x"});
    auto SR = sharp_base(RingMap{A, C, {}});
    CHECK(SR.b.size() == 1);
    CHECK(verify_rigid(SR.rc).ok());
    // the model is concentrated where the shifted forms sit
    CHECK(SR.rc.S.coh_over_B(-1).dimension() == std::nullopt);
    CHECK(SR.rc.S.coh(0).H.is_zero_module());
}

TEST_CASE("chart composition matches the direct chart") {
    auto A = qring({});
    auto B = qring({"x"});
    auto C = qring({"x", "y"});
    auto SB = sharp_base(RingMap{A, B, {}});
    RingMap g{B, C, {C->var(0)}};
    auto step = sharp_step(SB, g);
    auto direct = sharp_base(RingMap{A, C, {}});
    CHECK(step.b.size() == 2);
    CHECK(verify_rigid(step.rc).ok());
    CHECK(verify_rigid(direct.rc).ok());

    // same class in the squaring model, with an explicit homotopy witness
    const SqModel& S = direct.rc.S;
    auto coh = S.coh(-2);
    auto c1 = S.hom.C->class_in_H(-2, coh, step.rc.rho.comp.at(-2)[0]);
    auto c2 = S.hom.C->class_in_H(-2, coh, direct.rc.rho.comp.at(-2)[0]);
    REQUIRE(c1.has_value());
    REQUIRE(c2.has_value());
    CHECK(coh.H.elements_equal(*c1, *c2));
    ChainMap G = step.rc.rho;
    G.X = direct.rc.Mc;
    G.Y = direct.rc.S.hom.C;
    auto h = homotopy_solve(direct.rc.rho, G, S.lo, S.hi);
    CHECK(h.has_value());
}

TEST_CASE("regular quotient of the line gives back the dual numbers") {
    auto A = qring({});
    auto B = qring({"x"});
    auto C = dual_numbers().dst;
    RingMap uKB{A, B, {}};
    RingMap uBC{B, C, {C->var(0)}};
    auto L = omega_power(uKB, 1);
    auto st = flat_shriek_regular(uKB, uBC, {B->var(0, 2)}, L, 1);
    CHECK(st.shift == 0);
    CHECK(st.N.dimension() == 2);
    CHECK(verify_rigid(st.rc).ok());
}

TEST_CASE("etale certificates") {
    auto A = qring({"x"});
    auto M = FPModule{A, 1, {}};

    SUBCASE("identity is etale and nondegenerate") {
        auto q = q_sharp(RingMap::identity(A), M);
        CHECK(q.etale);
        CHECK(q.nondegenerate);
        CHECK(q.ok());
    }

    SUBCASE("adding a free variable is not etale") {
        auto C = qring({"x", "y"});
        auto q = q_sharp(RingMap{A, C, {C->var(0)}}, M);
        CHECK(!q.etale);
    }

    SUBCASE("splitting a separable quotient is etale") {
        // QQ[x] -> QQ[x]/(x^2 - 1)
        auto C = qring({"x"}, {Poly::var(BaseRing::QQ(), 1, 0, 2) -
                               Poly::constant(BaseRing::QQ(), 1, 1)});
        auto q = q_sharp(RingMap{A, C, {C->var(0)}}, M);
        CHECK(q.etale);
        CHECK(q.ok());
    }
}

TEST_CASE("existence pipeline on small algebras") {
    SUBCASE("the rationals") {
        auto out = rigid_existence(qring({}));
        CHECK(out.shift == 0);
        CHECK(out.end_matches);
        CHECK(out.ok());
    }

    SUBCASE("polynomial line") {
        auto out = rigid_existence(qring({"x"}));
        CHECK(out.shift == 1);
        CHECK(out.end_matches);
        CHECK(out.ok());
    }

    SUBCASE("dual numbers") {
        auto out = rigid_existence(dual_numbers().dst);
        CHECK(out.shift == 0);
        CHECK(out.R.dimension() == 2);
        CHECK(out.end_matches);
        CHECK(out.ok());
    }
}
