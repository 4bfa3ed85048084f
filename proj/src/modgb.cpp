#include "dgcalc/modgb.hpp"

#include <deque>

namespace dgc {

bool vec_is_zero(const Vec& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

Vec vec_zero(const BaseRing& b, int nvars, int r) {
    return Vec(r, Poly(b, nvars));
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); i++) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); i++) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Vec& a, const Poly& c) {
    Vec r = a;
    for (auto& p : r) p = p * c;
    return r;
}

ModTerm vec_lead(const Vec& v, const ModOrder& ord) {
    const Monomial* bm = nullptr;
    int bc = -1;
    for (size_t c = 0; c < v.size(); c++)
        for (const auto& [m, co] : v[c].terms()) {
            ModTerm cur{(int)c, m};
            if (bc < 0 || ord.less(ModTerm{bc, *bm}, cur)) { bc = (int)c; bm = &m; }
        }
    if (bc < 0) throw std::logic_error("lead of zero vector");
    return ModTerm{bc, *bm};
}

Scalar vec_lead_coeff(const Vec& v, const ModOrder& ord) {
    ModTerm lt = vec_lead(v, ord);
    return v[lt.comp].terms().at(lt.mon);
}

Vec gb_reduce(Vec f, const std::vector<Vec>& G, const ModOrder& ord) {
    if (f.empty()) return f;
    const BaseRing& base = f[0].base();
    int nv = f[0].nvars();
    Vec rem = vec_zero(base, nv, (int)f.size());
    while (!vec_is_zero(f)) {
        ModTerm lt = vec_lead(f, ord);
        Scalar lc = f[lt.comp].terms().at(lt.mon);
        bool reduced = false;
        for (const auto& g : G) {
            if (vec_is_zero(g)) continue;
            ModTerm gl = vec_lead(g, ord);
            if (gl.comp != lt.comp || !mon_divides(gl.mon, lt.mon)) continue;
            Scalar gc = g[gl.comp].terms().at(gl.mon);
            Monomial q = mon_quot(lt.mon, gl.mon);
            Scalar c = lc / gc;
            for (size_t i = 0; i < f.size(); i++) f[i] -= g[i].shifted(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem[lt.comp].add_term(lt.mon, lc);
            f[lt.comp].add_term(lt.mon, -lc);
        }
    }
    return rem;
}

std::vector<Vec> buchberger(std::vector<Vec> gens, const ModOrder& ord) {
    std::vector<Vec> G;
    for (auto& g : gens)
        if (!vec_is_zero(g)) G.push_back(g);
    if (G.empty()) return G;
    if (!G[0][0].base().is_field())
        throw std::logic_error("buchberger needs field coefficients");

    std::deque<std::pair<int, int>> pairs;
    auto add_pairs = [&](int k) {
        ModTerm lk = vec_lead(G[k], ord);
        for (int i = 0; i < k; i++)
            if (vec_lead(G[i], ord).comp == lk.comp) pairs.emplace_back(i, k);
    };
    for (int k = 0; k < (int)G.size(); k++) add_pairs(k);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        ModTerm li = vec_lead(G[i], ord), lj = vec_lead(G[j], ord);
        Monomial L = mon_lcm(li.mon, lj.mon);
        Scalar ci = G[i][li.comp].terms().at(li.mon);
        Scalar cj = G[j][lj.comp].terms().at(lj.mon);
        Vec s = vec_sub(
            [&] { Vec v = G[i]; for (auto& p : v) p = p.shifted(mon_quot(L, li.mon), ci.inv()); return v; }(),
            [&] { Vec v = G[j]; for (auto& p : v) p = p.shifted(mon_quot(L, lj.mon), cj.inv()); return v; }());
        Vec r = gb_reduce(s, G, ord);
        if (!vec_is_zero(r)) {
            G.push_back(r);
            add_pairs((int)G.size() - 1);
        }
    }

    // interreduce
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k < G.size(); k++) {
            Vec g = G[k];
            std::vector<Vec> others;
            for (size_t j = 0; j < G.size(); j++)
                if (j != k) others.push_back(G[j]);
            Vec r = gb_reduce(g, others, ord);
            if (!(r == g)) {
                changed = true;
                if (vec_is_zero(r)) {
                    G.erase(G.begin() + k);
                    k--;
                } else {
                    G[k] = r;
                }
            }
        }
    }
    for (auto& g : G) {
        Scalar c = vec_lead_coeff(g, ord).inv();
        for (auto& p : g) p = p * c;
    }
    return G;
}

} // namespace dgc
