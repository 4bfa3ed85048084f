#include "dgcalc/dgalgebra.hpp"

#include <sstream>

namespace dgc {

void AlgElem::add_term(const GMon& m, const Poly& c) {
    if (c.is_zero()) return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    AlgElem r = *this;
    for (const auto& [m, c] : o.t) r.add_term(m, c);
    return r;
}

AlgElem AlgElem::operator-(const AlgElem& o) const {
    AlgElem r = *this;
    for (const auto& [m, c] : o.t) r.add_term(m, -c);
    return r;
}

AlgElem AlgElem::operator-() const {
    AlgElem r;
    for (const auto& [m, c] : t) r.t.emplace(m, -c);
    return r;
}

DGAPtr DGAlgebra::make(const RingPtr& ring0, std::vector<GradedVar> gvars,
                       std::vector<AlgElem> dgv) {
    auto a = std::shared_ptr<DGAlgebra>(new DGAlgebra());
    a->ring0 = ring0;
    a->gvars = std::move(gvars);
    a->dgv = std::move(dgv);
    for (const auto& g : a->gvars)
        if (g.degree >= 0) throw std::logic_error("graded variables must have negative degree");
    if (a->dgv.size() != a->gvars.size())
        throw std::logic_error("differential images missing");
    return a;
}

int DGAlgebra::gmon_degree(const GMon& m) const {
    int d = 0;
    for (int k = 0; k < ngv(); k++) d += m[k] * gvars[k].degree;
    return d;
}

AlgElem DGAlgebra::unit() const { return from_ring(ring0->one()); }

AlgElem DGAlgebra::from_ring(const Poly& c) const {
    AlgElem a;
    a.add_term(GMon(ngv(), 0), c);
    return a;
}

AlgElem DGAlgebra::gvar(int k) const {
    AlgElem a;
    GMon m(ngv(), 0);
    m[k] = 1;
    a.add_term(m, ring0->one());
    return a;
}

std::optional<std::pair<int, GMon>> DGAlgebra::mul_mon(const GMon& a, const GMon& b) const {
    GMon r(ngv(), 0);
    int sgn = 0;
    for (int k = 0; k < ngv(); k++) {
        r[k] = a[k] + b[k];
        if (gvar_odd(k) && r[k] > 1) return std::nullopt;
    }
    for (int i = 0; i < ngv(); i++) {
        if (!gvar_odd(i) || a[i] == 0) continue;
        for (int j = 0; j < i; j++)
            if (gvar_odd(j)) sgn += a[i] * b[j];
    }
    return std::make_pair(sgn % 2 == 0 ? 1 : -1, r);
}

AlgElem DGAlgebra::mul(const AlgElem& a, const AlgElem& b) const {
    AlgElem r;
    for (const auto& [m1, c1] : a.t)
        for (const auto& [m2, c2] : b.t) {
            auto p = mul_mon(m1, m2);
            if (!p) continue;
            Poly c = c1 * c2;
            if (p->first < 0) c = -c;
            r.add_term(p->second, c);
        }
    return r;
}

AlgElem DGAlgebra::scale(const AlgElem& a, const Poly& c) const {
    AlgElem r;
    for (const auto& [m, cc] : a.t) r.add_term(m, cc * c);
    return r;
}

AlgElem DGAlgebra::d(const AlgElem& a) const {
    AlgElem r;
    for (const auto& [m, c] : a.t) {
        int prefix_deg = 0;
        for (int i = 0; i < ngv(); i++) {
            if (m[i] > 0) {
                GMon prefix(ngv(), 0), rest(ngv(), 0);
                for (int j = 0; j < i; j++) prefix[j] = m[j];
                rest[i] = m[i] - 1;
                for (int j = i + 1; j < ngv(); j++) rest[j] = m[j];
                AlgElem pre;
                pre.add_term(prefix, c);
                AlgElem term = mul(mul(pre, dgv[i]), [&] {
                    AlgElem e;
                    e.add_term(rest, ring0->one());
                    return e;
                }());
                Scalar f(ring0->base(), prefix_deg % 2 == 0 ? m[i] : -m[i]);
                for (const auto& [mm, cc] : term.t) r.add_term(mm, cc * f);
            }
            prefix_deg += m[i] * gvars[i].degree;
        }
    }
    return r;
}

AlgElem DGAlgebra::nf(const AlgElem& a) const {
    AlgElem r;
    for (const auto& [m, c] : a.t) r.add_term(m, ring0->nf(c));
    return r;
}

bool DGAlgebra::homogeneous(const AlgElem& a, int* deg_out) const {
    int deg = 0;
    bool seen = false;
    for (const auto& [m, c] : a.t) {
        int d = gmon_degree(m);
        if (seen && d != deg) return false;
        deg = d;
        seen = true;
    }
    if (deg_out) *deg_out = seen ? deg : 0;
    return true;
}

AlgElem DGAlgebra::component(const AlgElem& a, int deg) const {
    AlgElem r;
    for (const auto& [m, c] : a.t)
        if (gmon_degree(m) == deg) r.add_term(m, c);
    return r;
}

bool DGAlgebra::validate() const {
    for (int k = 0; k < ngv(); k++) {
        if (!is_zero_elem(d(dgv[k]))) return false;
        int deg;
        if (!homogeneous(dgv[k], &deg)) return false;
        if (!dgv[k].is_zero() && deg != gvars[k].degree + 1) return false;
    }
    return true;
}

std::vector<GMon> DGAlgebra::gmons_of_degree(int deg) const {
    std::vector<GMon> out;
    GMon cur(ngv(), 0);
    std::function<void(int, int)> rec = [&](int k, int rem) {
        if (rem > 0) return;
        if (k == ngv()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        int dk = gvars[k].degree;
        int emax = gvar_odd(k) ? 1 : rem / dk; // rem, dk negative
        for (int e = 0; e <= emax && e * dk >= rem; e++) {
            cur[k] = e;
            rec(k + 1, rem - e * dk);
        }
        cur[k] = 0;
    };
    rec(0, deg);
    return out;
}

std::string DGAlgebra::elem_str(const AlgElem& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.t) {
        if (!first) os << " + ";
        first = false;
        os << "(" << ring0->elem_str(c) << ")";
        for (int k = 0; k < ngv(); k++) {
            if (m[k] == 0) continue;
            os << "*" << gvars[k].name;
            if (m[k] > 1) os << "^" << m[k];
        }
    }
    return os.str();
}

AlgElem DGAMap::apply(const AlgElem& a) const {
    AlgElem out;
    for (const auto& [m, c] : a.t) {
        AlgElem term = dst->from_ring(r0.apply(c));
        for (int k = 0; k < src->ngv(); k++)
            for (int e = 0; e < m[k]; e++) term = dst->mul(term, images[k]);
        out = out + term;
    }
    return dst->nf(out);
}

bool DGAMap::chain_compatible() const {
    for (int k = 0; k < src->ngv(); k++) {
        AlgElem lhs = apply(src->dgv[k]);
        AlgElem rhs = dst->d(images[k]);
        if (!dst->is_zero_elem(lhs - rhs)) return false;
    }
    return true;
}

TensorDGA tensor_dga(const DGAPtr& B, const DGAPtr& C, const RingMap& a_to_b0,
                     const RingMap& a_to_c0) {
    TensorRing t0 = tensor_rings(a_to_b0, a_to_c0);
    std::vector<GradedVar> gv;
    for (const auto& g : B->gvars) gv.push_back({g.name + "1", g.degree});
    for (const auto& g : C->gvars) gv.push_back({g.name + "2", g.degree});

    auto lift_elem = [&](const DGAPtr& side, const RingMap& rmap, int offset,
                         const AlgElem& a) {
        AlgElem out;
        int total = (int)gv.size();
        for (const auto& [m, c] : a.t) {
            GMon mm(total, 0);
            for (int k = 0; k < side->ngv(); k++) mm[offset + k] = m[k];
            out.add_term(mm, rmap.apply(c));
        }
        return out;
    };

    std::vector<AlgElem> dgv;
    for (int k = 0; k < B->ngv(); k++) dgv.push_back(lift_elem(B, t0.incl_left, 0, B->dgv[k]));
    for (int k = 0; k < C->ngv(); k++)
        dgv.push_back(lift_elem(C, t0.incl_right, B->ngv(), C->dgv[k]));

    TensorDGA out;
    out.E = DGAlgebra::make(t0.ring, gv, dgv);
    out.incl_left = DGAMap{B, out.E, t0.incl_left, {}};
    for (int k = 0; k < B->ngv(); k++) out.incl_left.images.push_back(out.E->gvar(k));
    out.incl_right = DGAMap{C, out.E, t0.incl_right, {}};
    for (int k = 0; k < C->ngv(); k++)
        out.incl_right.images.push_back(out.E->gvar(B->ngv() + k));
    return out;
}

} // namespace dgc
