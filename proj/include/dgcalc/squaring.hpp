#pragma once

#include "dgcalc/resolve.hpp"

#include <functional>

namespace dgc {

// The squaring operation for u : A -> B and a module M over B:
// resolve B over A, form the enveloping algebra E, resolve M over the
// resolution and B over E, and take Hom_E(-, Mt (x)_A Mt). Cohomology is
// certified on the requested window.
struct SqOptions {
    int lo = -2, hi = 2;
    // the module is placed in degree -shift, i.e. the model computes
    // Sq of M[shift]; cohomology then concentrates around -2*shift
    int shift = 0;
    // redundant generators forced into the algebra resolution, to make
    // genuinely different resolutions of the same data
    std::vector<Poly> pad;
};

struct SqModel {
    RingMap u;   // A -> B
    FPModule M;  // over B
    bool flat = false;

    AlgResolution Bres;
    TensorDGA T;   // E = Btil (x)_A Btil
    RingMap diag;  // E.ring0 -> B through both copies

    FPModule Mr0;    // M over ring0
    DGFlat Mconc;    // M concentrated, over Btil
    SFResolution Mt; // resolution of M over Btil (flat path: Btil itself)
    DGModule MtP;
    SFTensor MM; // MtP (x) MtP over E
    Flattening FMM;
    DGFlat NMM;

    FPModule Bfp;   // B over E.ring0
    DGFlat Bconc;   // B concentrated, over E
    SFResolution P; // resolution of B over E
    HomFlat hom;
    int lo = 0, hi = 0, shift = 0;

    FComplex::Cohom coh(int t) const { return hom.C->cohomology(t); }
    FPModule coh_over_B(int t) const { return coh(t).H.base_change(diag).pruned(); }
};

SqModel sq_flat(const RingMap& u, const SqOptions& opt = {});
SqModel sq_object(const RingMap& u, const FPModule& M, const SqOptions& opt = {});

// Comparison of the models built from two resolutions of the same data,
// through the mixed model over Btil1 (x)_A Btil2. All four legs are strict
// chain maps; the induced isomorphism is their zigzag on cohomology.
struct SqComparison {
    SFResolution Pmix;
    HomFlat mix1, mixN, mix2;
    ChainMap leg1;  // S1.hom -> mix1
    ChainMap legN1; // mixN -> mix1
    ChainMap legN2; // mixN -> mix2
    ChainMap leg2;  // S2.hom -> mix2
    bool certified = false;

    // H^t(S1) -> H^t(S2) through the zigzag
    FPMap induced_iso(int t) const;
};

SqComparison compare_models(const SqModel& S1, const SqModel& S2);

// Sq(c phi) = c^2 Sq(phi): certificate that c (x) c and c^2 (x) 1 act
// equally, as a null homotopy on the source resolution plus the exact
// equality of the two actions on cohomology across the window
struct SquareLaw {
    Poly c;             // element of B
    Poly z;             // (c (x) c) - (c^2 (x) 1) in E.ring0
    std::vector<Vec> h; // null homotopy of z on P, per generator
    bool chain_certified = false;
    bool cohom_certified = false;
    bool ok() const { return chain_certified && cohom_certified; }
};

SquareLaw square_law(const SqModel& S, const Poly& c);

// Sq of a morphism: for u : B -> C and an A-algebra-compatible B-linear map
// phi : N -> M (N over C, M over B), the induced map between the Sq models.
// Requires B to resolve trivially (polynomial presentation over A) and
// SM on the flat path, so the target tensor sits concentrated in degree 0;
// the map is then an exact evaluator, semilinear over the two degree-0
// rings (phi_eval takes N in the source ring0 presentation and returns
// M-coordinates over B).
struct SqMorphism {
    const SqModel* SN = nullptr;
    const SqModel* SM = nullptr;
    RingMap uE0;   // ring0 of E_B -> ring0 of E_C
    QisLift alpha; // P_B -> P_C over uE0
    std::function<Vec(const Vec&)> phi_eval;

    // image in SM.hom coordinates at degree t of an SN.hom element
    Vec apply(int t, const Vec& psi) const;
};

SqMorphism sq_morphism(const SqModel& SN, const SqModel& SM, const RingMap& u,
                       std::function<Vec(const Vec&)> phi_eval);

} // namespace dgc
