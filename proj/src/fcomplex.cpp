#include "dgcalc/fcomplex.hpp"

namespace dgc {

const FPModule& FComplex::T(int i) const {
    auto it = term.find(i);
    if (it != term.end()) return it->second;
    static FPModule empty;
    static std::map<const Ring*, FPModule> empties;
    auto e = empties.find(R.get());
    if (e == empties.end()) e = empties.emplace(R.get(), FPModule{R, 0, {}}).first;
    return e->second;
}

std::vector<Vec> FComplex::d_cols(int i) const {
    auto it = dmat.find(i);
    if (it != dmat.end()) return it->second;
    return std::vector<Vec>(ngens(i), Vec(ngens(i + 1), R->zero()));
}

Vec FComplex::d_apply(int i, const Vec& x) const {
    int n1 = ngens(i + 1);
    Vec out(n1, R->zero());
    auto cols = d_cols(i);
    for (size_t g = 0; g < cols.size(); g++)
        for (int j = 0; j < n1; j++) out[j] += x[g] * cols[g][j];
    for (auto& p : out) p = R->nf(p);
    return out;
}

bool FComplex::validate() const {
    for (int i = lo; i <= hi; i++) {
        const FPModule& Ti = T(i);
        const FPModule& T1 = T(i + 1);
        auto cols = d_cols(i);
        if ((int)cols.size() != Ti.ngens) return false;
        // well-defined on relations
        for (const auto& rel : Ti.rels)
            if (!T1.contains(d_apply(i, rel))) return false;
        // d o d = 0
        for (int g = 0; g < Ti.ngens; g++) {
            Vec e(Ti.ngens, R->zero());
            e[g] = R->one();
            if (!T(i + 2).contains(d_apply(i + 1, d_apply(i, e)))) return false;
        }
    }
    return true;
}

FComplex::Cohom FComplex::cohomology(int i) const {
    Cohom out;
    const FPModule& Ti = T(i);
    const FPModule& T1 = T(i + 1);
    int n = Ti.ngens;

    // cocycle generators: x with d(x) in the relation span of term[i+1]
    std::vector<Vec> Z;
    if (T1.ngens == 0) {
        for (int g = 0; g < n; g++) {
            Vec e(n, R->zero());
            e[g] = R->one();
            Z.push_back(e);
        }
    } else {
        std::vector<Vec> cols = d_cols(i);
        for (const auto& r : T1.rels) cols.push_back(r);
        auto K = R->kernel(T1.ngens, cols);
        for (const auto& k : K) {
            Vec z(k.begin(), k.begin() + n);
            if (!vec_is_zero(z)) Z.push_back(z);
        }
    }

    // boundaries and inherited relations
    std::vector<Vec> B;
    auto dprev = dmat.find(i - 1);
    if (dprev != dmat.end())
        for (const auto& img : dprev->second) B.push_back(img);
    for (const auto& r : Ti.rels) B.push_back(r);

    // H = Z / (B): relations are all coordinate vectors landing in the span
    // of the boundaries, i.e. the kernel of [Z | B] restricted to the Z block
    FPModule H{R, (int)Z.size(), {}};
    for (const auto& b : B) {
        if (!R->lift(n, Z, b))
            throw std::logic_error("boundary not in cocycle span (complex invalid?)");
    }
    std::vector<Vec> cols = Z;
    cols.insert(cols.end(), B.begin(), B.end());
    for (const auto& k : R->kernel(n, cols)) {
        Vec c(k.begin(), k.begin() + Z.size());
        if (!vec_is_zero(c)) H.rels.push_back(c);
    }
    out.H = H;
    out.cocycles = Z;
    return out;
}

std::optional<Vec> FComplex::class_in_H(int i, const Cohom& coh, const Vec& z) const {
    std::vector<Vec> cols = coh.cocycles;
    auto dprev = dmat.find(i - 1);
    if (dprev != dmat.end())
        for (const auto& img : dprev->second) cols.push_back(img);
    for (const auto& r : T(i).rels) cols.push_back(r);
    auto sol = R->lift(T(i).ngens, cols, z);
    if (!sol) return std::nullopt;
    return Vec(sol->begin(), sol->begin() + coh.cocycles.size());
}

FCPtr FComplex::make(RingPtr R, int lo, int hi) {
    auto c = std::make_shared<FComplex>();
    c->R = std::move(R);
    c->lo = lo;
    c->hi = hi;
    return c;
}

Vec ChainMap::apply(int i, const Vec& x) const {
    const FPModule& Ty = Y->T(i + shift);
    Vec out(Ty.ngens, Y->R->zero());
    auto it = comp.find(i);
    if (it == comp.end()) return out;
    for (size_t g = 0; g < it->second.size(); g++)
        for (int j = 0; j < Ty.ngens; j++) out[j] += x[g] * it->second[g][j];
    for (auto& p : out) p = Y->R->nf(p);
    return out;
}

bool ChainMap::is_chain_map(int a, int b) const {
    if (shift != 0) throw std::logic_error("is_chain_map expects shift 0");
    for (int i = a; i <= b; i++) {
        for (int g = 0; g < X->ngens(i); g++) {
            Vec e(X->ngens(i), X->R->zero());
            e[g] = X->R->one();
            Vec lhs = Y->d_apply(i, apply(i, e));
            Vec rhs = apply(i + 1, X->d_apply(i, e));
            if (!Y->T(i + 1).elements_equal(lhs, rhs)) return false;
        }
    }
    return true;
}

FPMap ChainMap::induced_H(int i) const {
    if (shift != 0) throw std::logic_error("induced_H expects shift 0");
    auto cx = X->cohomology(i);
    auto cy = Y->cohomology(i);
    FPMap f{cx.H, cy.H, {}};
    for (const auto& z : cx.cocycles) {
        auto c = Y->class_in_H(i, cy, apply(i, z));
        if (!c) throw std::logic_error("image of cocycle is not a cocycle class");
        f.images.push_back(*c);
    }
    return f;
}

bool ChainMap::is_quasi_iso(int a, int b) const {
    for (int i = a; i <= b; i++)
        if (!induced_H(i).is_iso()) return false;
    return true;
}

ChainMap ChainMap::compose(const ChainMap& inner) const {
    ChainMap r{inner.X, Y, shift + inner.shift, {}};
    for (const auto& [i, mats] : inner.comp) {
        std::vector<Vec> out;
        for (const auto& img : mats) out.push_back(apply(i + inner.shift, img));
        r.comp[i] = out;
    }
    return r;
}

ChainMap chain_identity(const FCPtr& X) {
    ChainMap r{X, X, 0, {}};
    for (int i = X->lo; i <= X->hi; i++) {
        std::vector<Vec> m;
        for (int g = 0; g < X->ngens(i); g++) {
            Vec e(X->ngens(i), X->R->zero());
            e[g] = X->R->one();
            m.push_back(e);
        }
        r.comp[i] = m;
    }
    return r;
}

ChainMap chain_sub(const ChainMap& F, const ChainMap& G) {
    ChainMap r{F.X, F.Y, F.shift, {}};
    for (int i = F.X->lo; i <= F.X->hi; i++) {
        std::vector<Vec> m;
        for (int g = 0; g < F.X->ngens(i); g++) {
            Vec e(F.X->ngens(i), F.X->R->zero());
            e[g] = F.X->R->one();
            m.push_back(vec_sub(F.apply(i, e), G.apply(i, e)));
        }
        r.comp[i] = m;
    }
    return r;
}

namespace {

std::optional<Homotopy> homotopy_greedy(const ChainMap& D, int a, int b) {
    const FCPtr& X = D.X;
    const FCPtr& Y = D.Y;
    const RingPtr& R = X->R;
    Homotopy ht;
    for (int i = b; i >= a; i--) {
        int nx = X->ngens(i);
        std::vector<Vec> hi;
        for (int g = 0; g < nx; g++) {
            Vec e(nx, R->zero());
            e[g] = R->one();
            Vec rhs = D.apply(i, e);
            // subtract h_{i+1}(d e)
            auto hup = ht.h.find(i + 1);
            if (hup != ht.h.end()) {
                Vec de = X->d_apply(i, e);
                for (size_t g2 = 0; g2 < hup->second.size(); g2++)
                    rhs = vec_sub(rhs, vec_scale(hup->second[g2], de[g2]));
            }
            // solve d(y) = rhs modulo relations of Y.term[i]
            int nprev = Y->ngens(i - 1);
            std::vector<Vec> cols = Y->d_cols(i - 1);
            for (const auto& r : Y->T(i).rels) cols.push_back(r);
            auto sol = R->lift(Y->ngens(i), cols, rhs);
            if (!sol) return std::nullopt;
            hi.push_back(Vec(sol->begin(), sol->begin() + nprev));
        }
        ht.h[i] = hi;
    }
    return ht;
}

std::optional<Homotopy> homotopy_global(const ChainMap& D, int a, int b) {
    const FCPtr& X = D.X;
    const FCPtr& Y = D.Y;
    const RingPtr& R = X->R;

    // unknown slots: h_i[g][ygen] for i in [a, b+1]; aux multipliers for the
    // relations of Y.term[i] in each equation (i, g)
    struct Slot { int i, g, ygen; };
    std::vector<Slot> slots;
    for (int i = a; i <= b + 1; i++)
        for (int g = 0; g < X->ngens(i); g++)
            for (int y = 0; y < Y->ngens(i - 1); y++) slots.push_back({i, g, y});

    std::vector<std::pair<int, int>> eqs; // (i, g)
    std::map<std::pair<int, int>, int> eq_off;
    int total = 0;
    for (int i = a; i <= b; i++)
        for (int g = 0; g < X->ngens(i); g++) {
            eq_off[{i, g}] = total;
            total += Y->ngens(i);
            eqs.push_back({i, g});
        }

    std::vector<Vec> cols;
    auto blank = [&] { return Vec(total, R->zero()); };
    for (const auto& s : slots) {
        Vec c = blank();
        // d_Y o h term in equation (s.i, s.g)
        if (s.i <= b) {
            auto dY = Y->d_cols(s.i - 1);
            int off = eq_off[{s.i, s.g}];
            for (int j = 0; j < Y->ngens(s.i); j++) c[off + j] += dY[s.ygen][j];
        }
        // h o d_X term in equations (s.i - 1, g2)
        if (s.i - 1 >= a) {
            auto dX = X->d_cols(s.i - 1);
            for (int g2 = 0; g2 < X->ngens(s.i - 1); g2++) {
                int off = eq_off[{s.i - 1, g2}];
                c[off + s.ygen] += dX[g2][s.g];
            }
        }
        cols.push_back(c);
    }
    std::vector<std::pair<int, int>> auxinfo;
    for (auto [i, g] : eqs) {
        const auto& rels = Y->T(i).rels;
        for (const auto& r : rels) {
            Vec c = blank();
            int off = eq_off[{i, g}];
            for (int j = 0; j < Y->ngens(i); j++) c[off + j] = r[j];
            cols.push_back(c);
            auxinfo.push_back({i, g});
        }
    }

    Vec rhs = blank();
    for (auto [i, g] : eqs) {
        Vec e(X->ngens(i), R->zero());
        e[g] = R->one();
        Vec v = D.apply(i, e);
        int off = eq_off[{i, g}];
        for (int j = 0; j < Y->ngens(i); j++) rhs[off + j] = v[j];
    }

    auto sol = R->lift(total, cols, rhs);
    if (!sol) return std::nullopt;
    Homotopy ht;
    for (int i = a; i <= b + 1; i++) {
        std::vector<Vec> hi(X->ngens(i), Vec(Y->ngens(i - 1), R->zero()));
        ht.h[i] = hi;
    }
    for (size_t k = 0; k < slots.size(); k++)
        ht.h[slots[k].i][slots[k].g][slots[k].ygen] = (*sol)[k];
    return ht;
}

} // namespace

std::optional<Homotopy> homotopy_solve(const ChainMap& F, const ChainMap& G, int a, int b) {
    ChainMap D = chain_sub(F, G);
    auto ht = homotopy_greedy(D, a, b);
    if (ht && homotopy_verifies(F, G, *ht, a, b)) return ht;
    ht = homotopy_global(D, a, b);
    if (ht && homotopy_verifies(F, G, *ht, a, b)) return ht;
    return std::nullopt;
}

bool homotopy_verifies(const ChainMap& F, const ChainMap& G, const Homotopy& ht, int a, int b) {
    const FCPtr& X = F.X;
    const FCPtr& Y = F.Y;
    const RingPtr& R = X->R;
    for (int i = a; i <= b; i++) {
        for (int g = 0; g < X->ngens(i); g++) {
            Vec e(X->ngens(i), R->zero());
            e[g] = R->one();
            Vec want = vec_sub(F.apply(i, e), G.apply(i, e));
            Vec got(Y->ngens(i), R->zero());
            auto hi = ht.h.find(i);
            if (hi != ht.h.end() && g < (int)hi->second.size())
                got = Y->d_apply(i - 1, hi->second[g]);
            auto hup = ht.h.find(i + 1);
            if (hup != ht.h.end()) {
                Vec de = X->d_apply(i, e);
                for (size_t g2 = 0; g2 < hup->second.size(); g2++)
                    got = vec_add(got, vec_scale(hup->second[g2], de[g2]));
            }
            if (!Y->T(i).elements_equal(want, got)) return false;
        }
    }
    return true;
}

} // namespace dgc
