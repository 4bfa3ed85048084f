#pragma once

#include "dgcalc/dgalgebra.hpp"
#include "dgcalc/fcomplex.hpp"

namespace dgc {

struct SFGen {
    std::string name;
    int degree;
};

// element of a semi-free DG module: sum of coeff * gmon * generator
using MElem = std::map<std::pair<int, GMon>, Poly>;

// semi-free DG module over a DG algebra: free on graded generators after
// forgetting the differential
struct DGModule {
    DGAPtr E;
    std::vector<SFGen> gens;
    std::vector<MElem> dgen;

    MElem zero() const { return {}; }
    MElem gen_elem(int j) const;
    void add_term(MElem& m, int gen, const GMon& mon, const Poly& c) const;
    MElem add(const MElem& a, const MElem& b) const;
    MElem sub(const MElem& a, const MElem& b) const;
    MElem scale(const MElem& a, const Poly& c) const;
    MElem act(const AlgElem& a, const MElem& m) const;
    MElem d(const MElem& m) const;
    MElem nf(const MElem& m) const;
    int elem_degree(const MElem& m) const; // homogeneous; throws otherwise
    bool validate() const;                 // d^2 = 0, degree consistency
    std::string elem_str(const MElem& m) const;
};

// DG algebra seen as free rank-one module over itself
DGModule algebra_as_module(const DGAPtr& E);

// flattening of a semi-free module to free modules over ring0 in a window
struct Flattening {
    DGModule M;
    int lo = 0, hi = -1;
    std::map<int, std::vector<std::pair<int, GMon>>> basis;
    std::map<int, std::map<std::pair<int, GMon>, int>> index;
    FCPtr C;

    Vec coords(int deg, const MElem& m) const;
    MElem from_coords(int deg, const Vec& v) const;
};

Flattening flatten_sf(const DGModule& M, int lo, int hi);

// Ml tensor_A Mr as a semi-free module over the tensor algebra
struct SFTensor {
    DGModule P; // over T.E
    int right_gens = 0;
    int pair_index(int i, int j) const { return i * right_gens + j; }
    // image of x tensor y, with the Koszul sign from moving y past the
    // left generators
    MElem tensor_elem(const DGModule& Ml, const MElem& x, const DGModule& Mr,
                      const MElem& y, const TensorDGA& T) const;
};
SFTensor tensor_sf(const DGModule& Ml, const DGModule& Mr, const TensorDGA& T);

// DG module in flattened form: complex of FP modules over ring0 together
// with the action of every graded variable
struct DGFlat {
    DGAPtr E;
    FCPtr C;
    // act[i][k][g] = image in term (i + deg_k) of generator g of term i
    std::map<int, std::vector<std::vector<Vec>>> act;

    Vec act_gvar(int k, int i, const Vec& x) const;
    // homogeneous algebra element action: term i -> term i + |a|
    Vec act_alg(const AlgElem& a, int i, const Vec& x) const;
};

DGFlat dgflat_from_sf(const Flattening& F);
DGFlat dgflat_concentrated(const DGAPtr& E, const FPModule& M0, int deg = 0);

// Hom_E(P, N) for semi-free P, flattened N. Components are indexed by the
// generators of P; module structure over F through iota : F -> E acting on
// the target.
struct HomFlat {
    DGAPtr E;
    DGModule P;
    DGFlat N;
    int lo = 0, hi = -1;
    std::map<int, std::vector<int>> offset; // per degree, per P-generator; -1 if empty
    FCPtr C;

    Vec assemble(int t, const std::vector<Vec>& comps) const;
    std::vector<Vec> components(int t, const Vec& phi) const;
    DGFlat as_dgflat(const DGAMap& iota) const; // with F-action through iota
};

HomFlat hom_sf(const DGModule& P, const DGFlat& N, int lo, int hi);

// the same complex with the action of another algebra through w
DGFlat restrict_flat(const DGFlat& N, const DGAMap& w);

// chain map of flattened semi-free modules determined by generator images,
// extended linearly over the algebra (through `via` when the algebras differ)
ChainMap sf_chain_from_gens(const DGModule& src, const Flattening& Fsrc,
                            const std::vector<MElem>& gen_images,
                            const DGModule& dst, const Flattening& Fdst,
                            const DGAMap* via = nullptr);

// Hom(P, N) -> Hom(P, N'): postcompose with a chain map g : N -> N'
// (both Hom complexes taken out of the same P)
ChainMap hom_postcompose(const HomFlat& Hsrc, const HomFlat& Hdst, const ChainMap& g);

// Hom(P, N) -> Hom(P', N): precompose with the map P' -> P given on the
// generators of P' by coordinates in P's flattening
ChainMap hom_precompose(const HomFlat& Hsrc, const Flattening& FP,
                        const HomFlat& Hdst, const std::vector<Vec>& alpha_gen);

} // namespace dgc
