#pragma once

#include "dgcalc/smoothdiff.hpp"
#include "dgcalc/squaring.hpp"

#include <memory>

namespace dgc {

// Rigid pair: the module placed in degree -S.shift together with a
// chain-level identification of the complex with its own square. The
// identification is stored on module generators as cocycles of the squaring
// model; relations are required to land on coboundaries, which the
// cohomology-level checks certify.
struct RigidComplex {
    SqModel S;
    FCPtr Mc;                 // the module over the enveloping degree-0 ring,
                              // concentrated in degree -S.shift
    ChainMap rho;             // Mc -> S.hom.C
    std::vector<Vec> rho_cls; // class of each module generator in H^{-shift},
                              // coefficients in B
};

// cohomology of the model at degree t: the module over B and representative
// cocycles in model coordinates
struct ModelH {
    FPModule H;                // over B
    std::vector<Vec> cocycles; // over the enveloping degree-0 ring
};
ModelH model_h(const SqModel& S, int t);

// the module viewed over the enveloping degree-0 ring through the diagonal
FPModule module_over_e(const SqModel& S);

// rho given by its classes: per module generator, coordinates in the
// generators of H^{-shift} with coefficients in B
RigidComplex rigid_from_classes(const SqModel& S, const std::vector<Vec>& cls);
// rho given by explicit cocycles at degree -shift
RigidComplex rigid_from_cocycles(const SqModel& S, const std::vector<Vec>& reps);

// look for a rigidifying isomorphism by scanning small generator
// assignments; fails when the window cohomology does not match the module
std::optional<RigidComplex> rigid_search(const SqModel& S);

struct RigidReport {
    bool bounded_finite = false; // window cohomology finitely presented
    bool flat_over_base = false; // flatness certificate over the base
    bool chain = false;          // rho commutes with the differentials
    bool quasi_iso = false;      // iso on H^{-shift}, zero elsewhere in window
    bool ok() const { return bounded_finite && flat_over_base && chain && quasi_iso; }
};
RigidReport verify_rigid(const RigidComplex& rc);

// cocycle of a flat model (shift 0) lifting the augmentation through the
// multiplication quasi-isomorphism; its class is the identity of B
Vec canonical_flat_class(const SqModel& S);

// A with the identity identification of its square over itself
RigidComplex tautological_rigid(const RingPtr& A, int lo = -2, int hi = 2);

// the canonical map B -> End_B(M) is bijective
bool end_is_scalar(const FPModule& M);

// rigidity of c * identity: certificate that c (x) c acts as c^2 on the
// model, plus a homotopy between rho composed with the two actions
struct EndoCheck {
    Poly c;
    SquareLaw law;
    std::optional<Homotopy> witness;
    bool rigid = false;
};
EndoCheck rigid_endo(const RigidComplex& rc, const Poly& c);

// units for which c * identity is rigid; refuses unless End(M) = B
std::optional<std::vector<Poly>> rigid_auto_scan(const RigidComplex& rc,
                                                 const std::vector<Poly>& units);
// all units with coefficients of absolute value <= height over the monomial
// basis (finite-dimensional rings over a field)
std::vector<Poly> units_up_to_height(const RingPtr& B, long height);

// Dual of a finite algebra over a field: N = Hom_A(C, A) as a C-module, with
// the rigid structure pinned by requiring evaluation at 1 to be a trace
// morphism down to the tautological rigid structure on A.
struct FiniteDualRigid {
    RingMap u;                    // A -> C, A the base field
    std::vector<Monomial> cbasis; // monomial basis of C over A
    std::vector<std::vector<std::vector<Scalar>>> mult; // mult[v][e] = coords
                                                        // of x_v * m_e
    FPModule N;        // the dual over C, one generator per dual basis vector
    SqModel taut;            // squaring model of A over itself
    FComplex::Cohom taut_coh; // its degree-0 cohomology; fixes the references
    Vec taut_ref;            // class of the tautological identification
    RigidComplex rc;         // over C; rho solved from the trace square
    SqMorphism sqm;          // evaluation through the trace; reuse with a
                             // different evaluator to probe other maps
    bool trace_unique = false; // the trace condition had a unique solution

    // coordinates of an element of C over the monomial basis
    std::vector<Scalar> coords(const Poly& c) const;
    // action of c on dual-basis coordinates
    std::vector<Scalar> act_dual(const Poly& c, const std::vector<Scalar>& v) const;
    // evaluation at 1: dual-basis coordinates with coefficients in C -> A
    Vec trace_eval(const Vec& v) const;
};
std::shared_ptr<FiniteDualRigid> flat_shriek_base(const RingMap& u, int lo = -2,
                                                  int hi = 2);

// is c * Tr a trace morphism compatible with the two rigid structures?
// checked on a full basis of the dual over the base field
bool trace_is_rigid(const FiniteDualRigid& fd, const Poly& c);
std::vector<Poly> trace_scan(const FiniteDualRigid& fd, const std::vector<Poly>& units);

// the rigidifying class viewed as a comultiplication on the dual
struct CoalgebraCheck {
    bool coassociative = false;
    bool cocommutative = false;
    bool counit = false;
    bool ok() const { return coassociative && cocommutative && counit; }
};
CoalgebraCheck coalgebra_check(const FiniteDualRigid& fd);

// comparison map from the machine resolution of B over its enveloping ring
// to the Koszul complex on a sequence generating the diagonal; only for
// polynomial presentations (no graded variables in the enveloping algebra)
struct KoszulCompare {
    DGModule Kmod;                // the Koszul complex as a module over E
    Flattening FK;                // on [-n, 0]
    std::vector<Vec> gen_images;  // comparison map, per resolution generator
};
KoszulCompare compare_to_koszul(const SqModel& S, const std::vector<Poly>& b);

// cocycle of the model at degree -n representing the fraction with
// denominator b and numerator w (coefficient against the single generator of
// the square of the top forms)
Vec fraction_class_in_model(const SqModel& S, const KoszulCompare& KC,
                            const std::vector<Poly>& b, const Poly& w);

// Top differential forms of a polynomial algebra over a field, placed in
// degree -n, with the class of the fundamental fraction as the rigidifying
// map. The diagonal sequence and numerator are kept so towers can compose.
struct SmoothRigid {
    RingMap u;           // A -> C, C polynomial over the base field A
    std::vector<Poly> b; // diagonal sequence in the enveloping ring
    Poly w;              // numerator of the fundamental fraction
    RigidComplex rc;     // (Omega^n[n], class of the fraction)
};
// determinant numerator d(b) ^ p2*(top form) for a diagonal sequence
Poly diagonal_numerator(const SqModel& S, const std::vector<Poly>& b);
SmoothRigid sharp_base(const RingMap& u);
// compose with a polynomial extension g : B -> C: the B-side sequence is
// pushed through g (x) g and the relative diagonal of the new variables is
// appended; the numerator is recomputed from the stacked sequence
SmoothRigid sharp_step(const SmoothRigid& SB, const RingMap& g);

// M (x)^L_B N for N the relative-forms rigid over C, realized through the
// composite chart in the smooth regime
RigidComplex tensor_rigid(const SmoothRigid& M, const RingMap& g);

// RHom_B(C, L) for C = B/(a) with a regular and L free over B in degree -s:
// the Ext module in the single surviving degree, with a rigid structure over
// C relative to the base found by solving for the isomorphism
struct ShriekStep {
    RingMap u;           // B -> C
    std::vector<Poly> a; // regular sequence generating the kernel
    FPModule N;          // Ext^k_B(C, L) over C, pruned
    int shift = 0;       // the module sits in degree -shift
    RigidComplex rc;
};
ShriekStep flat_shriek_regular(const RingMap& base_to_B, const RingMap& u,
                               const std::vector<Poly>& a, const FPModule& L, int s);

// unit map M -> A' (x)_A M for an etale extension
struct QSharp {
    RingMap f;   // A -> A'
    FPModule Mp; // A' (x) M
    bool etale = false;         // Omega^1_{A'/A} = 0
    bool nondegenerate = false; // the induced A'-linear map is an isomorphism
    bool ok() const { return etale && nondegenerate; }
};
QSharp q_sharp(const RingMap& f, const FPModule& M);

// existence pipeline: present A as a quotient of a polynomial algebra over
// its base field, take top forms there, and push through the quotient
struct RigidExistence {
    RingPtr A;
    FPModule R; // over A
    int shift = 0;
    RigidComplex rc;
    RigidReport report;
    bool end_matches = false; // A -> End(R) bijective
    bool ok() const { return report.ok() && end_matches; }
};
RigidExistence rigid_existence(const RingPtr& A);

} // namespace dgc
