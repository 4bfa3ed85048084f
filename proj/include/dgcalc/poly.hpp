#pragma once

#include "dgcalc/scalar.hpp"

#include <map>
#include <vector>

namespace dgc {

using Monomial = std::vector<int>; // exponent vector

int mon_deg(const Monomial& m);
Monomial mon_mul(const Monomial& a, const Monomial& b);
bool mon_divides(const Monomial& a, const Monomial& b); // a | b
Monomial mon_quot(const Monomial& b, const Monomial& a); // b / a
Monomial mon_lcm(const Monomial& a, const Monomial& b);

enum class OrderKind { DegRevLex, Lex };

struct MonomialOrder {
    OrderKind kind = OrderKind::DegRevLex;
    // returns true if a < b
    bool less(const Monomial& a, const Monomial& b) const;
};

// Multivariate polynomial with exact coefficients. The number of variables
// is fixed by context (the ring); exponent vectors all share that length.
class Poly {
public:
    Poly() : base_(BaseRing::QQ()), nvars_(0) {}
    Poly(const BaseRing& b, int nvars) : base_(b), nvars_(nvars) {}

    static Poly constant(const BaseRing& b, int nvars, const Scalar& c);
    static Poly constant(const BaseRing& b, int nvars, long c);
    static Poly var(const BaseRing& b, int nvars, int i, int exp = 1);

    const BaseRing& base() const { return base_; }
    int nvars() const { return nvars_; }
    const std::map<Monomial, Scalar>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    int total_degree() const; // -1 for zero

    void add_term(const Monomial& m, const Scalar& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Scalar& c) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // term-by-monomial product
    Poly shifted(const Monomial& m, const Scalar& c) const;

    // largest monomial under the order; poly must be nonzero
    const Monomial& lead_monomial(const MonomialOrder& ord) const;
    const Scalar& lead_coeff(const MonomialOrder& ord) const;

    // substitute images[i] for variable i (images live in another ring context)
    Poly substitute(const std::vector<Poly>& images, const BaseRing& target_base,
                    int target_nvars) const;

    // pad/shuffle exponent vectors into a larger variable context
    Poly rename_vars(const std::vector<int>& new_index, int target_nvars) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    BaseRing base_;
    int nvars_;
    std::map<Monomial, Scalar> t_;
};

} // namespace dgc
