#pragma once

#include "dgcalc/fpmodule.hpp"

namespace dgc {

struct FComplex;
using FCPtr = std::shared_ptr<const FComplex>;

// cochain complex of finitely presented modules in a degree window
struct FComplex {
    RingPtr R;
    int lo = 0, hi = -1;
    std::map<int, FPModule> term;
    // dmat[i][g] = image in term[i+1] of generator g of term[i]
    std::map<int, std::vector<Vec>> dmat;

    const FPModule& T(int i) const;
    int ngens(int i) const { return T(i).ngens; }
    std::vector<Vec> d_cols(int i) const; // empty vecs handled
    Vec d_apply(int i, const Vec& x) const;
    bool validate() const;

    struct Cohom {
        FPModule H;
        std::vector<Vec> cocycles; // representative in term[i] per H generator
    };
    Cohom cohomology(int i) const;

    // express a cocycle's class in the generators of cohomology(i)
    std::optional<Vec> class_in_H(int i, const Cohom& coh, const Vec& z) const;

    static FCPtr make(RingPtr R, int lo, int hi);
};

// degree-preserving collection of maps X.term[i] -> Y.term[i+shift]
struct ChainMap {
    FCPtr X, Y;
    int shift = 0;
    std::map<int, std::vector<Vec>> comp; // per generator of X.term[i]

    Vec apply(int i, const Vec& x) const;
    bool is_chain_map(int a, int b) const; // d o f = f o d on [a, b], shift 0
    FPMap induced_H(int i) const;
    bool is_quasi_iso(int a, int b) const;
    ChainMap compose(const ChainMap& inner) const;
};

ChainMap chain_identity(const FCPtr& X);
ChainMap chain_sub(const ChainMap& F, const ChainMap& G);

// degree -1 data h with F - G = d h + h d on the window
struct Homotopy {
    std::map<int, std::vector<Vec>> h; // per gen of X.term[i], element of Y.term[i-1]
};

std::optional<Homotopy> homotopy_solve(const ChainMap& F, const ChainMap& G, int a, int b);
bool homotopy_verifies(const ChainMap& F, const ChainMap& G, const Homotopy& h, int a, int b);

} // namespace dgc
