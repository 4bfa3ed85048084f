#include "dgcalc/ring.hpp"

#include <algorithm>

namespace dgc {

RingPtr Ring::make(const BaseRing& base, std::vector<std::string> vars,
                   std::vector<Poly> ideal, OrderKind order) {
    auto r = std::shared_ptr<Ring>(new Ring());
    r->base_ = base;
    r->vars_ = std::move(vars);
    r->order_.kind = order;
    for (auto& p : ideal)
        if (!p.is_zero()) r->ideal_.push_back(p);
    if (r->zz_regime()) r->init_zz();
    return r;
}

int Ring::var_index(const std::string& name) const {
    for (int i = 0; i < nvars(); i++)
        if (vars_[i] == name) return i;
    throw std::out_of_range("no variable named " + name);
}

void Ring::init_zz() {
    int n = nvars();
    monic_deg_.assign(n, -1);
    monic_repl_.assign(n, zero());
    std::vector<bool> used(ideal_.size(), false);

    for (size_t k = 0; k < ideal_.size(); k++) {
        const Poly& p = ideal_[k];
        int v = -1;
        bool univar = true;
        for (const auto& [m, c] : p.terms())
            for (int i = 0; i < n; i++)
                if (m[i] > 0) {
                    if (v < 0) v = i;
                    else if (v != i) univar = false;
                }
        if (!univar || v < 0) continue;
        int d = 0;
        for (const auto& [m, c] : p.terms()) d = std::max(d, m[v]);
        Scalar lc = Scalar::zero(base_);
        for (const auto& [m, c] : p.terms())
            if (m[v] == d) lc = c;
        if (!lc.is_unit()) continue;
        if (monic_deg_[v] >= 0 && monic_deg_[v] <= d) continue;
        Poly q = p * lc.inv(); // lead coefficient 1
        Monomial lead(n, 0);
        lead[v] = d;
        Poly repl(base_, n);
        for (const auto& [m, c] : q.terms())
            if (m != lead) repl.add_term(m, -c);
        monic_deg_[v] = d;
        monic_repl_[v] = repl;
        used[k] = true;
    }
    for (int i = 0; i < n; i++)
        if (monic_deg_[i] < 0)
            throw std::domain_error(
                "over ZZ every variable needs a monic univariate relation (got none for " +
                vars_[i] + ")");

    // finite monomial basis
    long count = 1;
    for (int i = 0; i < n; i++) {
        count *= monic_deg_[i];
        if (count > 100000) throw std::domain_error("ZZ monomial basis too large");
    }
    Monomial m(n, 0);
    for (long k = 0; k < count; k++) {
        zbasis_.push_back(m);
        for (int i = 0; i < n; i++) {
            if (++m[i] < monic_deg_[i]) break;
            m[i] = 0;
        }
    }
    std::sort(zbasis_.begin(), zbasis_.end(), [&](const Monomial& a, const Monomial& b) {
        return order_.less(a, b);
    });
    for (size_t i = 0; i < zbasis_.size(); i++) zbasis_idx_[zbasis_[i]] = (int)i;

    // relation lattice from the remaining generators
    std::vector<std::vector<Scalar>> cols;
    for (size_t k = 0; k < ideal_.size(); k++) {
        for (const Monomial& mu : zbasis_) {
            Poly prod = reduce_monic(ideal_[k].shifted(mu, Scalar::one(base_)));
            std::vector<Scalar> co(zbasis_.size(), Scalar::zero(base_));
            for (const auto& [mm, c] : prod.terms()) co[zbasis_idx_.at(mm)] += c;
            bool nz = false;
            for (auto& x : co) nz = nz || !x.is_zero();
            if (nz) cols.push_back(co);
        }
    }
    Mat L(base_, (int)zbasis_.size(), (int)cols.size());
    for (size_t j = 0; j < cols.size(); j++) L.set_col((int)j, cols[j]);
    zlattice_ = hermite_column_form(L);
}

Poly Ring::reduce_monic(const Poly& p) const {
    Poly cur = p;
    for (;;) {
        bool hit = false;
        for (const auto& [m, c] : cur.terms()) {
            for (int i = 0; i < nvars(); i++) {
                if (m[i] < monic_deg_[i]) continue;
                Monomial rest = m;
                rest[i] -= monic_deg_[i];
                cur.add_term(m, -c);
                cur += monic_repl_[i].shifted(rest, c);
                hit = true;
                break;
            }
            if (hit) break;
        }
        if (!hit) return cur;
    }
}

std::vector<Scalar> Ring::z_coords(const Poly& p) const {
    std::vector<Scalar> co(zbasis_.size(), Scalar::zero(base_));
    for (const auto& [m, c] : p.terms()) co[zbasis_idx_.at(m)] += c;
    return co;
}

Poly Ring::from_z_coords(const std::vector<Scalar>& c) const {
    Poly p(base_, nvars());
    for (size_t i = 0; i < c.size(); i++)
        if (!c[i].is_zero()) p.add_term(zbasis_[i], c[i]);
    return p;
}

const std::vector<Monomial>& Ring::zbasis() const { return zbasis_; }
const Mat& Ring::zlattice() const { return zlattice_; }

const std::vector<Poly>& Ring::ideal_gb() const {
    if (!gb_) {
        std::vector<Vec> gens;
        for (const auto& p : ideal_) gens.push_back({p});
        ModOrder ord{order_, 1};
        auto G = buchberger(gens, ord);
        std::vector<Poly> gb;
        for (auto& g : G) gb.push_back(g[0]);
        gb_ = gb;
    }
    return *gb_;
}

Poly Ring::nf(const Poly& p) const {
    if (zz_regime())
        return from_z_coords(reduce_mod_lattice(z_coords(reduce_monic(p)), zlattice_));
    std::vector<Vec> G;
    for (const auto& g : ideal_gb()) G.push_back({g});
    ModOrder ord{order_, 1};
    return gb_reduce({p}, G, ord)[0];
}

bool Ring::is_unit(const Poly& p) const { return try_invert(p).has_value(); }

std::optional<Poly> Ring::try_invert(const Poly& p) const {
    auto x = lift(1, {{p}}, {one()});
    if (!x) return std::nullopt;
    return nf((*x)[0]);
}

// ---- linear algebra over the ring ----

namespace {

// big module layout for field-regime kernel/lift: n value components
// followed by m coefficient components
std::vector<Vec> graph_generators(const Ring& R, int n, const std::vector<Vec>& cols) {
    int m = (int)cols.size();
    std::vector<Vec> gens;
    for (int i = 0; i < m; i++) {
        Vec v = vec_zero(R.base(), R.nvars(), n + m);
        for (int j = 0; j < n; j++) v[j] = cols[i][j];
        v[n + i] = R.one();
        gens.push_back(v);
    }
    for (const auto& g : R.ideal())
        for (int j = 0; j < n; j++) {
            Vec v = vec_zero(R.base(), R.nvars(), n + m);
            v[j] = g;
            gens.push_back(v);
        }
    return gens;
}

} // namespace

const std::vector<Vec>& Ring::graph_gb(int n, const std::vector<Vec>& cols) const {
    std::string key = std::to_string(n);
    for (const auto& c : cols) {
        key += '|';
        for (const auto& p : c) {
            key += ';';
            for (const auto& [mon, a] : p.terms()) {
                for (int e : mon) {
                    key += std::to_string(e);
                    key += ',';
                }
                key += a.str();
                key += ' ';
            }
        }
    }
    auto it = graph_gb_cache_.find(key);
    if (it != graph_gb_cache_.end()) return it->second;
    if (graph_gb_cache_.size() > 512) graph_gb_cache_.clear();
    ModOrder ord{order_, n};
    auto G = buchberger(graph_generators(*this, n, cols), ord);
    return graph_gb_cache_.emplace(std::move(key), std::move(G)).first->second;
}

std::vector<Vec> Ring::kernel(int n, const std::vector<Vec>& cols) const {
    int m = (int)cols.size();
    if (m == 0) return {};
    if (!zz_regime()) {
        ModOrder ord{order_, n};
        const auto& G = graph_gb(n, cols);
        std::vector<Vec> ker;
        for (const auto& g : G) {
            bool val_zero = true;
            for (int j = 0; j < n; j++) val_zero = val_zero && g[j].is_zero();
            if (!val_zero) continue;
            Vec c(m, zero());
            bool nz = false;
            for (int i = 0; i < m; i++) {
                c[i] = nf(g[n + i]);
                nz = nz || !c[i].is_zero();
            }
            if (nz) ker.push_back(c);
        }
        return ker;
    }

    // ZZ regime: flatten to an integer kernel
    int r = (int)zbasis_.size();
    Mat Phi(base_, n * r, m * r);
    for (int i = 0; i < m; i++)
        for (int u = 0; u < r; u++) {
            for (int j = 0; j < n; j++) {
                Poly prod = reduce_monic(cols[i][j].shifted(zbasis_[u], Scalar::one(base_)));
                auto co = z_coords(prod);
                for (int v = 0; v < r; v++) Phi.at(j * r + v, i * r + u) = co[v];
            }
        }
    const Mat& H = zlattice_;
    Mat L(base_, n * r, n * H.cols());
    for (int j = 0; j < n; j++)
        for (int k = 0; k < H.cols(); k++)
            for (int v = 0; v < r; v++) L.at(j * r + v, j * H.cols() + k) = H.at(v, k);
    Mat K = kernel_basis(Phi.hstack(L));
    std::vector<Vec> ker;
    for (int col = 0; col < K.cols(); col++) {
        Vec c(m, zero());
        bool nz = false;
        for (int i = 0; i < m; i++) {
            std::vector<Scalar> co(r, Scalar::zero(base_));
            for (int u = 0; u < r; u++) co[u] = K.at(i * r + u, col);
            c[i] = nf(from_z_coords(co));
            nz = nz || !c[i].is_zero();
        }
        if (nz) ker.push_back(c);
    }
    return ker;
}

std::optional<Vec> Ring::lift(int n, const std::vector<Vec>& cols, const Vec& b) const {
    int m = (int)cols.size();
    if (m == 0) {
        for (int j = 0; j < n; j++)
            if (!is_zero_elem(b[j])) return std::nullopt;
        return Vec{};
    }
    if (!zz_regime()) {
        ModOrder ord{order_, n};
        const auto& G = graph_gb(n, cols);
        Vec target = vec_zero(base_, nvars(), n + m);
        for (int j = 0; j < n; j++) target[j] = b[j];
        Vec rem = gb_reduce(target, G, ord);
        for (int j = 0; j < n; j++)
            if (!rem[j].is_zero()) return std::nullopt;
        Vec c(m, zero());
        for (int i = 0; i < m; i++) c[i] = nf(-rem[n + i]);
        return c;
    }

    int r = (int)zbasis_.size();
    Mat Phi(base_, n * r, m * r);
    for (int i = 0; i < m; i++)
        for (int u = 0; u < r; u++)
            for (int j = 0; j < n; j++) {
                Poly prod = reduce_monic(cols[i][j].shifted(zbasis_[u], Scalar::one(base_)));
                auto co = z_coords(prod);
                for (int v = 0; v < r; v++) Phi.at(j * r + v, i * r + u) = co[v];
            }
    const Mat& H = zlattice_;
    Mat L(base_, n * r, n * H.cols());
    for (int j = 0; j < n; j++)
        for (int k = 0; k < H.cols(); k++)
            for (int v = 0; v < r; v++) L.at(j * r + v, j * H.cols() + k) = H.at(v, k);
    std::vector<Scalar> rhs(n * r, Scalar::zero(base_));
    for (int j = 0; j < n; j++) {
        auto co = z_coords(reduce_monic(b[j]));
        for (int v = 0; v < r; v++) rhs[j * r + v] = co[v];
    }
    auto sol = solve(Phi.hstack(L), rhs);
    if (!sol) return std::nullopt;
    Vec c(m, zero());
    for (int i = 0; i < m; i++) {
        std::vector<Scalar> co(r, Scalar::zero(base_));
        for (int u = 0; u < r; u++) co[u] = (*sol)[i * r + u];
        c[i] = nf(from_z_coords(co));
    }
    return c;
}

std::optional<std::vector<ModTerm>> Ring::std_monomials(int n, const std::vector<Vec>& cols,
                                                        long cap) const {
    if (zz_regime()) throw std::logic_error("std_monomials needs a field base");
    std::vector<Vec> gens;
    for (const auto& c : cols) gens.push_back(c);
    for (const auto& g : ideal_)
        for (int j = 0; j < n; j++) {
            Vec v = vec_zero(base_, nvars(), n);
            v[j] = g;
            gens.push_back(v);
        }
    ModOrder ord{order_, n};
    auto G = buchberger(gens, ord);
    std::vector<ModTerm> leads;
    for (const auto& g : G) leads.push_back(vec_lead(g, ord));

    std::vector<ModTerm> out;
    for (int c = 0; c < n; c++) {
        bool dead = false;
        std::vector<int> bound(nvars(), -1);
        for (const auto& lt : leads) {
            if (lt.comp != c) continue;
            int support = -1;
            bool pure = true;
            for (int i = 0; i < nvars(); i++)
                if (lt.mon[i] > 0) {
                    if (support < 0) support = i;
                    else pure = false;
                }
            if (support < 0) { dead = true; break; }
            if (pure && (bound[support] < 0 || lt.mon[support] < bound[support]))
                bound[support] = lt.mon[support];
        }
        if (dead) continue;
        for (int i = 0; i < nvars(); i++)
            if (bound[i] < 0) return std::nullopt;
        // enumerate below the bounds, prune by divisibility
        Monomial m(nvars(), 0);
        long total = 1;
        for (int i = 0; i < nvars(); i++) total *= bound[i];
        if (nvars() == 0) total = 1;
        for (long k = 0; k < total; k++) {
            bool divis = false;
            for (const auto& lt : leads)
                if (lt.comp == c && mon_divides(lt.mon, m)) { divis = true; break; }
            if (!divis) {
                out.push_back(ModTerm{c, m});
                if ((long)out.size() > cap) throw std::runtime_error("std_monomials cap hit");
            }
            for (int i = 0; i < nvars(); i++) {
                if (++m[i] < bound[i]) break;
                m[i] = 0;
            }
        }
    }
    return out;
}

// ---- ring maps ----

RingMap RingMap::identity(const RingPtr& R) {
    RingMap f{R, R, {}};
    for (int i = 0; i < R->nvars(); i++) f.images.push_back(R->var(i));
    return f;
}

Poly RingMap::apply(const Poly& p) const {
    return dst->nf(p.substitute(images, dst->base(), dst->nvars()));
}

Vec RingMap::apply_vec(const Vec& v) const {
    Vec r;
    for (const auto& p : v) r.push_back(apply(p));
    return r;
}

bool RingMap::well_defined() const {
    for (const auto& g : src->ideal())
        if (!apply(g).is_zero()) return false;
    return true;
}

RingMap RingMap::compose(const RingMap& inner) const {
    if (inner.dst.get() != src.get())
        throw std::logic_error("ring map composition mismatch");
    RingMap r{inner.src, dst, {}};
    for (const auto& im : inner.images) r.images.push_back(apply(im));
    return r;
}

TensorRing tensor_rings(const RingMap& a_to_b, const RingMap& a_to_c,
                        const std::string& lsuf, const std::string& rsuf) {
    if (a_to_b.src.get() != a_to_c.src.get())
        throw std::logic_error("tensor: different base rings");
    const RingPtr& A = a_to_b.src;
    const RingPtr& B = a_to_b.dst;
    const RingPtr& C = a_to_c.dst;
    if (B->base() != C->base()) throw std::logic_error("tensor: base mismatch");

    int nb = B->nvars(), nc = C->nvars();
    std::vector<std::string> vars;
    std::vector<int> bidx, cidx;
    for (int i = 0; i < nb; i++) { vars.push_back(B->vars()[i] + lsuf); bidx.push_back(i); }
    for (int i = 0; i < nc; i++) { vars.push_back(C->vars()[i] + rsuf); cidx.push_back(nb + i); }

    std::vector<Poly> ideal;
    for (const auto& g : B->ideal()) ideal.push_back(g.rename_vars(bidx, nb + nc));
    for (const auto& g : C->ideal()) ideal.push_back(g.rename_vars(cidx, nb + nc));
    for (int i = 0; i < A->nvars(); i++) {
        Poly l = a_to_b.images[i].rename_vars(bidx, nb + nc);
        Poly r = a_to_c.images[i].rename_vars(cidx, nb + nc);
        ideal.push_back(l - r);
    }
    TensorRing t;
    t.ring = Ring::make(B->base(), vars, ideal, B->order().kind);
    t.incl_left = RingMap{B, t.ring, {}};
    for (int i = 0; i < nb; i++) t.incl_left.images.push_back(t.ring->var(i));
    t.incl_right = RingMap{C, t.ring, {}};
    for (int i = 0; i < nc; i++) t.incl_right.images.push_back(t.ring->var(nb + i));
    return t;
}

Localization localize(const RingPtr& R, const Poly& s, const std::string& invname) {
    if (R->zz_regime()) throw std::domain_error("localization needs a field base");
    int n = R->nvars();
    std::vector<std::string> vars = R->vars();
    vars.push_back(invname);
    std::vector<int> idx;
    for (int i = 0; i < n; i++) idx.push_back(i);
    std::vector<Poly> ideal;
    for (const auto& g : R->ideal()) ideal.push_back(g.rename_vars(idx, n + 1));
    Poly srel = s.rename_vars(idx, n + 1) * Poly::var(R->base(), n + 1, n) -
                Poly::constant(R->base(), n + 1, 1);
    ideal.push_back(srel);
    Localization loc;
    loc.ring = Ring::make(R->base(), vars, ideal, R->order().kind);
    loc.to_localized = RingMap{R, loc.ring, {}};
    for (int i = 0; i < n; i++) loc.to_localized.images.push_back(loc.ring->var(i));
    loc.inv_var = n;
    return loc;
}

} // namespace dgc
