#pragma once

#include "dgcalc/fcomplex.hpp"
#include "dgcalc/resolve.hpp"

#include <optional>

namespace dgc {

Poly derivative(const Poly& p, int i);

// module of differentials of u : A -> B, generator i = d of B's variable i;
// relations are the jacobian rows of B's ideal and of the images of A
struct KaehlerModule {
    RingMap u;
    FPModule omega;
    std::optional<long> rank; // reported when the relations are constant (field regime)
};
KaehlerModule kaehler(const RingMap& u);

// n-th exterior power of the differentials; generators are the ascending
// n-subsets of the variables
FPModule omega_power(const RingMap& u, int n);

bool is_regular_sequence(const RingPtr& R, const std::vector<Poly>& a);

// Hom_R(K(R, a), M) in degrees 0..n; generator (S, m) of term p is the dual
// of the Koszul basis element e_S with value the m-th generator of M
FCPtr koszul_dual(const RingPtr& R, const std::vector<Poly>& a, const FPModule& M);

// Ext^p_R(R/(a), M) through the Koszul complex; refuses non-regular a
FPModule ext_via_koszul(const RingPtr& R, const std::vector<Poly>& a, const FPModule& M,
                        int p);

// class of e_{a_1} ^ ... ^ e_{a_n} |-> mu in the top cohomology of the dual
struct GeneralizedFraction {
    std::vector<Poly> a; // denominator: a regular sequence
    Vec mu;              // numerator: element of M
};
// coordinates of the class in the top term of koszul_dual(R, a, M)
Vec fraction_coords(const FCPtr& D, const FPModule& M, const GeneralizedFraction& fr);
// the same class with respect to a' = g a: floor(mu/a) = floor(det(g) mu/a');
// g must be invertible modulo (a)
GeneralizedFraction fraction_change_of_sequence(const RingPtr& R,
                                                const GeneralizedFraction& fr,
                                                const std::vector<Vec>& g);

Poly poly_det(const RingPtr& R, const std::vector<Vec>& m);

// chart for the diagonal embedding: an inverted element s (only s = 1 is
// supported) and a sequence generating the diagonal ideal of B^e
struct Chart {
    Poly s;
    std::vector<Poly> b;
};

// the isomorphism Omega^n_{B/A} = Ext^n_{B^e}(B, Omega^{2n}_{B^e/A}),
// beta |-> floor(d(b) ^ p2*(beta) / b)
struct FundamentalIso {
    RingPtr Be;
    RingMap incl_left, incl_right; // B -> B^e
    RingMap diag;                  // B^e -> B
    std::vector<Poly> b;
    int n = 0;
    FPModule omega_n; // over B
    FCPtr dual;       // koszul_dual of Omega^{2n} over B^e
    FComplex::Cohom ext_n;
    std::vector<Vec> matrix; // per omega_n generator, class in ext_n generators
    FPMap as_map;            // omega_n -> ext_n pushed down to B along diag
    bool certified = false;  // chart regular and the map an isomorphism
};
FundamentalIso fundamental_iso(const RingMap& u, std::optional<Chart> chart = {});

// separability idempotent and the product decomposition of B^e
struct EtaleDecomposition {
    RingPtr Be;
    RingMap incl_left, incl_right;
    RingMap diag;
    Poly e;
    FPModule Bprime;             // B^e/(e), the complementary factor
    bool idempotent = false;     // e^2 = e
    bool kills_diagonal = false; // J e = 0
    bool diag_one = false;       // diag(e) = 1
    bool section = false;        // diag(e (b (x) 1)) = b for the variables
    bool ok() const { return idempotent && kills_diagonal && diag_one && section; }
};
EtaleDecomposition etale_decomposition(const RingMap& u);

} // namespace dgc
