#pragma once

#include "dgcalc/dgmodule.hpp"

#include <climits>

namespace dgc {

// Koszul complex on a sequence: exterior generators in degree -1
DGAPtr koszul(const RingPtr& R, const std::vector<Poly>& seq,
              const std::string& prefix = "e");

// Semi-free DG algebra resolution of u : A -> B, built by adjoining graded
// variables stagewise until the resolution is exact in (-depth, 0].
struct AlgResolution {
    RingPtr A, B;
    RingMap u;      // A -> B
    DGAPtr Btil;
    RingMap a_incl; // A -> ring0
    RingMap v0;     // ring0 -> B
    std::vector<int> bvar_in_ring0; // ring0 index of each stage-0 variable
    std::vector<Poly> vkernel;      // generators of ker(v0) in ring0
    int exact_to = 0;               // H^i certified zero for exact_to <= i <= -1
};

// pad adds redundant degree -1 generators with the given boundaries (each an
// element of ker(u's augmentation) in B's presentation, 0 allowed); later
// stages repair the surplus cohomology, yielding a different resolution of
// the same map
AlgResolution semifree_algebra_resolution(const RingMap& u, int depth,
                                          const std::vector<Poly>& pad = {});

// resolution of A -> C through an existing resolution of A -> B: the result
// contains Bres.Btil (same leading ring0 variables and graded variables), so
// semi-free modules over it restrict to semi-free modules over Bres.Btil
struct TowerResolution {
    AlgResolution res;
    DGAMap incl; // Bres.Btil -> res.Btil
};
TowerResolution semifree_algebra_resolution_over(const AlgResolution& Bres,
                                                 const RingMap& u, int depth);

// B as a module over ring0 through v0
FPModule target_fp(const AlgResolution& res);
// augmentation of the flattened resolution onto B concentrated in degree 0
ChainMap augmentation_map(const AlgResolution& res, const Flattening& F);

// lift w : src.Btil -> dst.Btil over A, of the identity of B by default or
// of a given algebra map u : src.B -> dst.B
DGAMap lift_dg_morphism(const AlgResolution& src, const AlgResolution& dst,
                        const RingMap* u = nullptr);

// Semi-free resolution of a DG module: quasi-isomorphism v : P -> N with P
// semi-free over E, certified on [lo+1, hi]
struct SFResolution {
    DGModule P;
    std::vector<Vec> vgen; // image of each P generator, coords in N
    Flattening F;          // of P on [lo, hi]
    DGFlat Pflat;
    ChainMap v;            // F.C -> N.C
    int lo = 0, hi = -1;
};

SFResolution semifree_module_resolution(const DGAPtr& E, const DGFlat& N, int lo, int hi);

// chain map into a flattened target determined by generator images
ChainMap sf_map_to_flat(const DGModule& P, const Flattening& F, const DGFlat& N,
                        const std::vector<Vec>& vgen);

// Chain map ftil : Q -> P through a quasi-isomorphism zeta : P -> N, given
// f : Q -> N on generators. Solves zeta o ftil - f = d h + h d with ftil and
// h linear over the algebra; requires Q semi-free. When Q lives over a
// different algebra, `via` transports its coefficients into P's algebra.
struct QisLift {
    std::vector<Vec> gen_images; // per generator of Q, coords in P's flattening
    ChainMap ftil;               // FQ.C -> FP.C
};
std::optional<QisLift> lift_through_qis(const DGModule& Q, const Flattening& FQ,
                                        const std::vector<Vec>& f_gen_images,
                                        const Flattening& FP, const DGFlat& Pflat,
                                        const DGFlat& N, const ChainMap& zeta,
                                        const DGAMap* via = nullptr);

// null homotopy of multiplication by a degree-0 scalar that acts trivially
// on cohomology: h with d h + h d = z, linear over the algebra, given on
// the generators of the semi-free module. Below `strict_above` (the bottom
// edge of a truncated resolution) unsolvable generators get h = 0.
std::optional<std::vector<Vec>> sf_null_homotopy(const DGModule& P, const Flattening& FP,
                                                 const DGFlat& Pflat, const Poly& z,
                                                 int strict_above = INT_MIN);

} // namespace dgc
