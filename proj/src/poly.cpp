#include "dgcalc/poly.hpp"

#include <sstream>

namespace dgc {

int mon_deg(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

Monomial mon_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < r.size(); i++) r[i] += b[i];
    return r;
}

bool mon_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); i++)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mon_quot(const Monomial& b, const Monomial& a) {
    Monomial r(b);
    for (size_t i = 0; i < r.size(); i++) r[i] -= a[i];
    return r;
}

Monomial mon_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (size_t i = 0; i < r.size(); i++) r[i] = std::max(a[i], b[i]);
    return r;
}

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
    if (kind == OrderKind::Lex) {
        for (size_t i = 0; i < a.size(); i++)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    int da = mon_deg(a), db = mon_deg(b);
    if (da != db) return da < db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

Poly Poly::constant(const BaseRing& b, int nvars, const Scalar& c) {
    Poly p(b, nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Poly Poly::constant(const BaseRing& b, int nvars, long c) {
    return constant(b, nvars, Scalar(b, c));
}

Poly Poly::var(const BaseRing& b, int nvars, int i, int exp) {
    Poly p(b, nvars);
    Monomial m(nvars, 0);
    m[i] = exp;
    p.add_term(m, Scalar::one(b));
    return p;
}

bool Poly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && mon_deg(t_.begin()->first) == 0);
}

Scalar Poly::constant_term() const {
    auto it = t_.find(Monomial(nvars_, 0));
    return it == t_.end() ? Scalar::zero(base_) : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, mon_deg(m));
    return d;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(base_, nvars_);
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) r.add_term(mon_mul(m1, m2), c1 * c2);
    return r;
}

Poly Poly::operator*(const Scalar& c) const {
    Poly r(base_, nvars_);
    for (const auto& [m, cc] : t_) r.add_term(m, cc * c);
    return r;
}

Poly Poly::operator-() const { return *this * Scalar(base_, -1); }

Poly Poly::shifted(const Monomial& m, const Scalar& c) const {
    Poly r(base_, nvars_);
    for (const auto& [mm, cc] : t_) r.add_term(mon_mul(mm, m), cc * c);
    return r;
}

const Monomial& Poly::lead_monomial(const MonomialOrder& ord) const {
    if (t_.empty()) throw std::logic_error("lead of zero polynomial");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : t_)
        if (!best || ord.less(*best, m)) best = &m;
    return *best;
}

const Scalar& Poly::lead_coeff(const MonomialOrder& ord) const {
    return t_.at(lead_monomial(ord));
}

Poly Poly::substitute(const std::vector<Poly>& images, const BaseRing& target_base,
                      int target_nvars) const {
    Poly r(target_base, target_nvars);
    for (const auto& [m, c] : t_) {
        Poly term = Poly::constant(target_base, target_nvars, Scalar(target_base, c.rat()));
        for (int i = 0; i < nvars_; i++)
            for (int e = 0; e < m[i]; e++) term = term * images[i];
        r += term;
    }
    return r;
}

Poly Poly::rename_vars(const std::vector<int>& new_index, int target_nvars) const {
    Poly r(base_, target_nvars);
    for (const auto& [m, c] : t_) {
        Monomial mm(target_nvars, 0);
        for (int i = 0; i < nvars_; i++) mm[new_index[i]] = m[i];
        r.add_term(mm, c);
    }
    return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpq_class v = c.rat();
        bool neg = v < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        mpq_class av = abs(v);
        bool unit_coeff = (av == 1) && mon_deg(m) > 0;
        if (!unit_coeff) os << av.get_str();
        bool printed = !unit_coeff;
        for (size_t i = 0; i < m.size(); i++) {
            if (m[i] == 0) continue;
            if (printed) os << "*";
            os << names[i];
            if (m[i] > 1) os << "^" << m[i];
            printed = true;
        }
    }
    return os.str();
}

} // namespace dgc
