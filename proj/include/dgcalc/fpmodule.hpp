#pragma once

#include "dgcalc/ring.hpp"

namespace dgc {

// finitely presented module: R^ngens / (relation columns)
struct FPModule {
    RingPtr R;
    int ngens = 0;
    std::vector<Vec> rels; // each of length ngens

    static FPModule free_module(const RingPtr& R, int n) { return {R, n, {}}; }

    bool contains(const Vec& v) const; // v in the relation span
    bool elements_equal(const Vec& v, const Vec& w) const;
    bool is_zero_module() const;

    // write target as a combination of the listed elements, modulo relations
    std::optional<Vec> express(const std::vector<Vec>& elems, const Vec& target) const;

    // base-field dimension (field regime); nullopt if infinite
    std::optional<long> dimension() const;

    struct ZInvariants {
        long free_rank = 0;
        std::vector<mpz_class> torsion; // invariant factors > 1
    };
    ZInvariants z_invariants() const; // ZZ regime

    FPModule pruned() const;
    FPModule base_change(const RingMap& f) const; // M tensor_R (f.dst)
    std::string str() const;
};

struct FPMap {
    FPModule src, dst;
    std::vector<Vec> images; // element of dst per src generator

    Vec apply(const Vec& v) const;
    bool well_defined() const;
    std::vector<Vec> kernel_gens() const; // elements of src
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const { return well_defined() && is_injective() && is_surjective(); }
    FPMap compose(const FPMap& inner) const; // this o inner
};

} // namespace dgc
