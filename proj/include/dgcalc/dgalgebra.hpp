#pragma once

#include "dgcalc/ring.hpp"

namespace dgc {

// exponent vector over the graded variables; odd-degree variables square to zero
using GMon = std::vector<int>;

struct GradedVar {
    std::string name;
    int degree; // strictly negative
};

class DGAlgebra;
using DGAPtr = std::shared_ptr<const DGAlgebra>;

// element: sum of (ring0 coefficient) * (graded monomial)
struct AlgElem {
    std::map<GMon, Poly> t;
    bool is_zero() const { return t.empty(); }
    void add_term(const GMon& m, const Poly& c);
    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator-() const;
    bool operator==(const AlgElem& o) const { return t == o.t; }
};

// Non-positively graded super-commutative DG algebra: a presented ring in
// degree 0 with strictly negative polynomial/exterior generators on top.
// ab = (-1)^{|a||b|} ba, odd squares vanish, d(ab) = d(a)b + (-1)^{|a|} a d(b).
class DGAlgebra {
public:
    static DGAPtr make(const RingPtr& ring0, std::vector<GradedVar> gvars,
                       std::vector<AlgElem> dgv);

    RingPtr ring0;
    std::vector<GradedVar> gvars;
    std::vector<AlgElem> dgv; // differential of each graded variable

    int ngv() const { return (int)gvars.size(); }
    int gmon_degree(const GMon& m) const;
    bool gvar_odd(int k) const { return gvars[k].degree % 2 != 0; }

    AlgElem zero() const { return {}; }
    AlgElem unit() const;
    AlgElem from_ring(const Poly& c) const;
    AlgElem gvar(int k) const;

    // (sign, monomial) product; nullopt when an odd variable squares
    std::optional<std::pair<int, GMon>> mul_mon(const GMon& a, const GMon& b) const;

    AlgElem mul(const AlgElem& a, const AlgElem& b) const;
    AlgElem scale(const AlgElem& a, const Poly& c) const;
    AlgElem d(const AlgElem& a) const;
    AlgElem nf(const AlgElem& a) const;
    bool is_zero_elem(const AlgElem& a) const { return nf(a).is_zero(); }

    bool homogeneous(const AlgElem& a, int* deg_out = nullptr) const;
    AlgElem component(const AlgElem& a, int deg) const;

    // d(d(x)) = 0 for every generator
    bool validate() const;

    // all graded monomials of the given (non-positive) degree
    std::vector<GMon> gmons_of_degree(int deg) const;

    std::string elem_str(const AlgElem& a) const;

private:
    DGAlgebra() = default;
};

// DG algebra morphism: ring map in degree 0, element images for generators
struct DGAMap {
    DGAPtr src, dst;
    RingMap r0;
    std::vector<AlgElem> images; // per src graded variable

    AlgElem apply(const AlgElem& a) const;
    bool chain_compatible() const; // d(apply(x)) = apply(d(x)) on generators
};

// Btil tensor_A Ctil for plain A; returns the tensor algebra and inclusions
struct TensorDGA {
    DGAPtr E;
    DGAMap incl_left, incl_right;
};
TensorDGA tensor_dga(const DGAPtr& B, const DGAPtr& C, const RingMap& a_to_b0,
                     const RingMap& a_to_c0);

} // namespace dgc
