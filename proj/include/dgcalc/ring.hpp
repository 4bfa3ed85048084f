#pragma once

#include "dgcalc/matrix.hpp"
#include "dgcalc/modgb.hpp"

#include <memory>
#include <optional>

namespace dgc {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Finitely presented commutative ring: quotient of a polynomial ring over
// the base. Two regimes:
//  - field base (QQ, F_p): arbitrary ideals, everything via Groebner bases;
//  - base ZZ: every variable needs a monic univariate relation, so the ring
//    is module-finite over ZZ and reduces to a finite monomial basis with an
//    integer relation lattice.
class Ring {
public:
    static RingPtr make(const BaseRing& base, std::vector<std::string> vars,
                        std::vector<Poly> ideal,
                        OrderKind order = OrderKind::DegRevLex);

    const BaseRing& base() const { return base_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return (int)vars_.size(); }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Poly>& ideal() const { return ideal_; }
    bool zz_regime() const { return base_.kind == BaseKind::ZZ; }

    Poly zero() const { return Poly(base_, nvars()); }
    Poly one() const { return Poly::constant(base_, nvars(), 1); }
    Poly cst(long c) const { return Poly::constant(base_, nvars(), c); }
    Poly cst(const Scalar& c) const { return Poly::constant(base_, nvars(), c); }
    Poly var(int i, int e = 1) const { return Poly::var(base_, nvars(), i, e); }
    int var_index(const std::string& name) const;

    // canonical normal form in the quotient
    Poly nf(const Poly& p) const;
    bool is_zero_elem(const Poly& p) const { return nf(p).is_zero(); }
    bool equal(const Poly& p, const Poly& q) const { return is_zero_elem(p - q); }
    bool is_zero_ring() const { return is_zero_elem(one()); }
    bool is_unit(const Poly& p) const;
    std::optional<Poly> try_invert(const Poly& p) const;

    std::string elem_str(const Poly& p) const { return nf(p).str(vars_); }

    // field regime: reduced Groebner basis of the ideal
    const std::vector<Poly>& ideal_gb() const;

    // ZZ regime: finite monomial basis and relation lattice (column HNF)
    const std::vector<Monomial>& zbasis() const;
    const Mat& zlattice() const;
    Poly reduce_monic(const Poly& p) const;
    std::vector<Scalar> z_coords(const Poly& p) const;
    Poly from_z_coords(const std::vector<Scalar>& c) const;

    // ---- linear algebra over the ring ----
    // cols are elements of R^n; these treat x -> sum_i x_i cols[i] : R^m -> R^n.

    // generators of the kernel
    std::vector<Vec> kernel(int n, const std::vector<Vec>& cols) const;
    // some x with sum x_i cols[i] = b, if it exists
    std::optional<Vec> lift(int n, const std::vector<Vec>& cols, const Vec& b) const;

    // standard monomials of R^n/(cols + ideal), nullopt if infinite over the
    // base field (field regime only)
    std::optional<std::vector<ModTerm>> std_monomials(int n, const std::vector<Vec>& cols,
                                                      long cap = 200000) const;

private:
    Ring() = default;
    void init_zz();

    BaseRing base_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<Poly> ideal_;

    mutable std::optional<std::vector<Poly>> gb_;
    // graph bases recur many times in cohomology and lifting loops
    const std::vector<std::vector<Poly>>& graph_gb(int n,
                                                   const std::vector<std::vector<Poly>>& cols) const;
    mutable std::map<std::string, std::vector<std::vector<Poly>>> graph_gb_cache_;

    // ZZ regime data
    std::vector<int> monic_deg_;
    std::vector<Poly> monic_repl_; // x_i^{d_i} rewrites to this
    std::vector<Monomial> zbasis_;
    std::map<Monomial, int> zbasis_idx_;
    Mat zlattice_;
};

// ring homomorphism given on variables
struct RingMap {
    RingPtr src, dst;
    std::vector<Poly> images; // one element of dst per src variable

    static RingMap identity(const RingPtr& R);
    Poly apply(const Poly& p) const;
    Vec apply_vec(const Vec& v) const;
    bool well_defined() const; // ideal generators map to zero
    RingMap compose(const RingMap& inner) const; // this o inner
};

// B tensor_A C. A-structure given by maps into B and C; the result identifies
// the two images of every A-variable. Returns the tensor ring and the two
// inclusion maps.
struct TensorRing {
    RingPtr ring;
    RingMap incl_left, incl_right;
};
TensorRing tensor_rings(const RingMap& a_to_b, const RingMap& a_to_c,
                        const std::string& lsuf = "1", const std::string& rsuf = "2");

// localization at s: adjoin inverse variable (field regime only)
struct Localization {
    RingPtr ring;
    RingMap to_localized;
    int inv_var;
};
Localization localize(const RingPtr& R, const Poly& s, const std::string& invname = "s_inv");

} // namespace dgc
