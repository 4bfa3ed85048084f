#pragma once

#include "dgcalc/poly.hpp"

#include <climits>

namespace dgc {

// element of a free module P^r, entry per component
using Vec = std::vector<Poly>;

struct ModTerm {
    int comp;
    Monomial mon;
    bool operator==(const ModTerm& o) const { return comp == o.comp && mon == o.mon; }
};

// Term-over-position inside each block, with every monomial of the first
// `block` components greater than anything in the later components. The
// block split makes submodule elimination (syzygies, lifts) work.
struct ModOrder {
    MonomialOrder mo;
    int block = INT_MAX;
    bool less(const ModTerm& a, const ModTerm& b) const {
        bool la = a.comp >= block, lb = b.comp >= block;
        if (la != lb) return la;
        if (a.mon != b.mon) return mo.less(a.mon, b.mon);
        return a.comp > b.comp;
    }
};

bool vec_is_zero(const Vec& v);
Vec vec_zero(const BaseRing& b, int nvars, int r);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Poly& c);
ModTerm vec_lead(const Vec& v, const ModOrder& ord);
Scalar vec_lead_coeff(const Vec& v, const ModOrder& ord);

// full normal form of f modulo G (field coefficients)
Vec gb_reduce(Vec f, const std::vector<Vec>& G, const ModOrder& ord);

// reduced Groebner basis of the submodule generated by gens
std::vector<Vec> buchberger(std::vector<Vec> gens, const ModOrder& ord);

} // namespace dgc
