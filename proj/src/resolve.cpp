#include "dgcalc/resolve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgc {

DGAPtr koszul(const RingPtr& R, const std::vector<Poly>& seq, const std::string& prefix) {
    int n = (int)seq.size();
    std::vector<GradedVar> gv;
    std::vector<AlgElem> dgv;
    for (int i = 0; i < n; i++) {
        gv.push_back({prefix + std::to_string(i + 1), -1});
        AlgElem e;
        e.add_term(GMon(n, 0), R->nf(seq[i]));
        dgv.push_back(e);
    }
    return DGAlgebra::make(R, gv, dgv);
}

namespace {

// pad graded monomials after new variables were appended
AlgElem pad_elem(const AlgElem& a, int ngv) {
    AlgElem r;
    for (const auto& [m, c] : a.t) {
        GMon mm = m;
        mm.resize(ngv, 0);
        r.add_term(mm, c);
    }
    return r;
}

AlgElem melem_to_alg(const MElem& m) {
    AlgElem r;
    for (const auto& [k, c] : m) r.add_term(k.second, c);
    return r;
}

bool monic_univariate(const Poly& g) {
    int v = -1;
    for (const auto& [m, c] : g.terms())
        for (int i = 0; i < (int)m.size(); i++)
            if (m[i] != 0) {
                if (v != -1 && v != i) return false;
                v = i;
            }
    if (v == -1) return false;
    int top = 0;
    for (const auto& [m, c] : g.terms()) top = std::max(top, m[v]);
    for (const auto& [m, c] : g.terms())
        if (m[v] == top) return c.is_unit();
    return false;
}

Vec unit_vec(const RingPtr& R, int n, int i) {
    Vec v(n, R->zero());
    v[i] = R->one();
    return v;
}

} // namespace

AlgResolution semifree_algebra_resolution(const RingMap& u, int depth,
                                          const std::vector<Poly>& pad) {
    RingPtr A = u.src, B = u.dst;
    const BaseRing& base = A->base();
    int na = A->nvars(), nb = B->nvars();

    AlgResolution res;
    res.A = A;
    res.B = B;
    res.u = u;

    // degree-0 ring: A's variables followed by one fresh variable per B variable
    std::vector<std::string> vars = A->vars();
    std::set<std::string> used(vars.begin(), vars.end());
    res.bvar_in_ring0.resize(nb);
    for (int i = 0; i < nb; i++) {
        std::string nm = B->vars()[i];
        while (used.count(nm)) nm += "_b";
        used.insert(nm);
        res.bvar_in_ring0[i] = (int)vars.size();
        vars.push_back(nm);
    }
    int nv = (int)vars.size();

    std::vector<int> aidx(na);
    for (int i = 0; i < na; i++) aidx[i] = i;

    std::vector<Poly> r0_ideal;
    for (const auto& g : A->ideal()) r0_ideal.push_back(g.rename_vars(aidx, nv));

    // over ZZ each variable needs a monic rule: keep those in the ring itself
    std::vector<Poly>& J = res.vkernel;
    for (const auto& g : B->ideal()) {
        Poly lifted = g.rename_vars(res.bvar_in_ring0, nv);
        if (base.kind == BaseKind::ZZ && monic_univariate(g))
            r0_ideal.push_back(lifted);
        else
            J.push_back(lifted);
    }

    RingPtr ring0 = Ring::make(base, vars, r0_ideal, A->order().kind);

    res.a_incl = {A, ring0, {}};
    for (int i = 0; i < na; i++) res.a_incl.images.push_back(ring0->var(i));
    res.v0 = {ring0, B, {}};
    for (int i = 0; i < na; i++) res.v0.images.push_back(B->nf(u.images[i]));
    for (int i = 0; i < nb; i++) res.v0.images.push_back(B->var(i));
    if (!res.v0.well_defined()) throw std::runtime_error("augmentation ill-defined");

    // identify each A variable with a lift of its image
    for (int i = 0; i < na; i++) {
        Poly lifted = B->nf(u.images[i]).rename_vars(res.bvar_in_ring0, nv);
        J.push_back(ring0->nf(ring0->var(i) - lifted));
    }

    std::vector<GradedVar> gv;
    std::vector<AlgElem> dgv;
    int gcount = 0;
    auto mk = [&]() {
        int n = (int)gv.size();
        std::vector<AlgElem> dd;
        dd.reserve(dgv.size());
        for (const auto& a : dgv) dd.push_back(pad_elem(a, n));
        return DGAlgebra::make(ring0, gv, dd);
    };

    for (const auto& g : J) {
        if (ring0->is_zero_elem(g)) continue;
        gv.push_back({"y" + std::to_string(++gcount), -1});
        AlgElem e;
        e.add_term(GMon{}, ring0->nf(g));
        dgv.push_back(e);
    }
    for (const auto& p : pad) {
        Poly lifted = ring0->nf(p.rename_vars(res.bvar_in_ring0, nv));
        if (!B->is_zero_elem(res.v0.apply(lifted)))
            throw std::runtime_error("pad element not in the augmentation kernel");
        gv.push_back({"y" + std::to_string(++gcount), -1});
        AlgElem e;
        if (!lifted.is_zero()) e.add_term(GMon{}, lifted);
        dgv.push_back(e);
    }

    // stage j kills H^{-j} by adjoining variables in degree -j-1
    for (int j = 1; j <= depth - 1; j++) {
        DGAPtr Bt = mk();
        Flattening F = flatten_sf(algebra_as_module(Bt), -j - 1, 0);
        auto coh = F.C->cohomology(-j);
        if (coh.H.is_zero_module()) continue;
        int n = F.C->ngens(-j);
        std::vector<Vec> accepted;
        std::vector<Vec> cols = F.C->d_cols(-j - 1);
        for (const auto& z : coh.cocycles) {
            std::vector<Vec> test = accepted;
            test.insert(test.end(), cols.begin(), cols.end());
            if (ring0->lift(n, test, z)) continue; // already hit
            accepted.push_back(z);
            gv.push_back({"y" + std::to_string(++gcount), -j - 1});
            dgv.push_back(melem_to_alg(F.from_coords(-j, z)));
        }
    }

    res.Btil = mk();
    res.exact_to = depth >= 2 ? -(depth - 1) : -1;
    if (!res.Btil->validate()) throw std::runtime_error("resolution failed validation");
    return res;
}

TowerResolution semifree_algebra_resolution_over(const AlgResolution& Bres,
                                                 const RingMap& u, int depth) {
    RingPtr A = Bres.A, C = u.dst;
    if (u.src != Bres.B) throw std::runtime_error("tower: map does not start at the resolved ring");
    const RingPtr& rB = Bres.Btil->ring0;
    const BaseRing& base = A->base();
    int na = A->nvars(), nrb = rB->nvars(), nc = C->nvars();

    AlgResolution res;
    res.A = A;
    res.B = C;
    res.u = RingMap{A, C, {}};
    for (int i = 0; i < na; i++) res.u.images.push_back(C->nf(u.apply(Bres.u.images[i])));

    // degree-0 ring: all of Bres's ring0 variables, then one fresh variable
    // per C variable
    std::vector<std::string> vars = rB->vars();
    std::set<std::string> used(vars.begin(), vars.end());
    res.bvar_in_ring0.resize(nc);
    for (int i = 0; i < nc; i++) {
        std::string nm = C->vars()[i];
        while (used.count(nm)) nm += "_c";
        used.insert(nm);
        res.bvar_in_ring0[i] = (int)vars.size();
        vars.push_back(nm);
    }
    int nv = (int)vars.size();
    std::vector<int> bidx(nrb);
    for (int i = 0; i < nrb; i++) bidx[i] = i;

    std::vector<Poly> r0_ideal;
    for (const auto& g : rB->ideal()) r0_ideal.push_back(g.rename_vars(bidx, nv));
    std::vector<Poly>& J = res.vkernel;
    for (const auto& g : C->ideal()) {
        Poly lifted = g.rename_vars(res.bvar_in_ring0, nv);
        if (base.kind == BaseKind::ZZ && monic_univariate(g))
            r0_ideal.push_back(lifted);
        else
            J.push_back(lifted);
    }

    RingPtr ring0 = Ring::make(base, vars, r0_ideal, rB->order().kind);

    res.a_incl = {A, ring0, {}};
    for (int i = 0; i < na; i++) res.a_incl.images.push_back(ring0->var(i));
    res.v0 = {ring0, C, {}};
    for (int i = 0; i < nrb; i++) res.v0.images.push_back(C->nf(u.apply(Bres.v0.images[i])));
    for (int i = 0; i < nc; i++) res.v0.images.push_back(C->var(i));
    if (!res.v0.well_defined()) throw std::runtime_error("tower augmentation ill-defined");

    // identify every inherited degree-0 variable with a lift of its image
    for (int i = 0; i < nrb; i++) {
        Poly lifted = res.v0.images[i].rename_vars(res.bvar_in_ring0, nv);
        J.push_back(ring0->nf(ring0->var(i) - lifted));
    }

    std::vector<GradedVar> gv = Bres.Btil->gvars;
    std::vector<AlgElem> dgv;
    for (const auto& a : Bres.Btil->dgv) {
        AlgElem e;
        for (const auto& [m, c] : a.t) e.add_term(m, c.rename_vars(bidx, nv));
        dgv.push_back(e);
    }
    int gcount = 0;
    auto mk = [&]() {
        int n = (int)gv.size();
        std::vector<AlgElem> dd;
        dd.reserve(dgv.size());
        for (const auto& a : dgv) dd.push_back(pad_elem(a, n));
        return DGAlgebra::make(ring0, gv, dd);
    };

    for (const auto& g : J) {
        if (ring0->is_zero_elem(g)) continue;
        gv.push_back({"z" + std::to_string(++gcount), -1});
        AlgElem e;
        e.add_term(GMon{}, ring0->nf(g));
        dgv.push_back(e);
    }

    for (int j = 1; j <= depth - 1; j++) {
        DGAPtr Bt = mk();
        Flattening F = flatten_sf(algebra_as_module(Bt), -j - 1, 0);
        auto coh = F.C->cohomology(-j);
        if (coh.H.is_zero_module()) continue;
        int n = F.C->ngens(-j);
        std::vector<Vec> accepted;
        std::vector<Vec> cols = F.C->d_cols(-j - 1);
        for (const auto& z : coh.cocycles) {
            std::vector<Vec> test = accepted;
            test.insert(test.end(), cols.begin(), cols.end());
            if (ring0->lift(n, test, z)) continue;
            accepted.push_back(z);
            gv.push_back({"z" + std::to_string(++gcount), -j - 1});
            dgv.push_back(melem_to_alg(F.from_coords(-j, z)));
        }
    }

    res.Btil = mk();
    res.exact_to = depth >= 2 ? -(depth - 1) : -1;
    if (!res.Btil->validate()) throw std::runtime_error("tower resolution failed validation");

    TowerResolution out;
    RingMap ir0{rB, ring0, {}};
    for (int i = 0; i < nrb; i++) ir0.images.push_back(ring0->var(i));
    out.incl = DGAMap{Bres.Btil, res.Btil, ir0, {}};
    for (int k = 0; k < Bres.Btil->ngv(); k++) {
        AlgElem e;
        GMon m(res.Btil->ngv(), 0);
        m[k] = 1;
        e.add_term(m, ring0->one());
        out.incl.images.push_back(e);
    }
    if (!out.incl.chain_compatible()) throw std::logic_error("tower inclusion not a DG map");
    out.res = std::move(res);
    return out;
}

FPModule target_fp(const AlgResolution& res) {
    FPModule M{res.Btil->ring0, 1, {}};
    for (const auto& g : res.vkernel)
        if (!res.Btil->ring0->is_zero_elem(g)) M.rels.push_back({res.Btil->ring0->nf(g)});
    return M;
}

ChainMap augmentation_map(const AlgResolution& res, const Flattening& F) {
    const RingPtr& R = res.Btil->ring0;
    auto Y = std::make_shared<FComplex>();
    Y->R = R;
    Y->lo = 0;
    Y->hi = 0;
    Y->term[0] = target_fp(res);
    ChainMap v{F.C, Y, 0, {}};
    for (int i = F.lo; i <= F.hi; i++) {
        auto it = F.basis.find(i);
        if (it == F.basis.end()) continue;
        std::vector<Vec> comps;
        for (const auto& bg : it->second) {
            (void)bg;
            if (i == 0)
                comps.push_back({R->one()});
            else
                comps.push_back(Vec{});
        }
        v.comp[i] = comps;
    }
    return v;
}

DGAMap lift_dg_morphism(const AlgResolution& src, const AlgResolution& dst,
                        const RingMap* u) {
    if (src.A->vars() != dst.A->vars())
        throw std::runtime_error("lift: resolutions over different bases");
    RingPtr r0d = dst.Btil->ring0;
    int na = src.A->nvars(), nb = src.B->nvars();
    std::vector<Poly> im0;
    for (int i = 0; i < na; i++) im0.push_back(r0d->var(i));
    if (u) {
        // degree 0 over u: express u(x_j) through the target presentation
        for (int j = 0; j < nb; j++)
            im0.push_back(
                dst.B->nf(u->apply(src.B->var(j))).rename_vars(dst.bvar_in_ring0, r0d->nvars()));
    } else {
        // identity lift: the two targets must present the same ring on the
        // same variables
        if (src.B->vars() != dst.B->vars())
            throw std::runtime_error("lift: resolutions of different maps");
        RingMap idb{src.B, dst.B, {}};
        for (int i = 0; i < src.B->nvars(); i++) idb.images.push_back(dst.B->var(i));
        RingMap idb2{dst.B, src.B, {}};
        for (int i = 0; i < src.B->nvars(); i++) idb2.images.push_back(src.B->var(i));
        if (!idb.well_defined() || !idb2.well_defined())
            throw std::runtime_error("lift: resolutions of different maps");
        for (int j = 0; j < nb; j++) im0.push_back(r0d->var(dst.bvar_in_ring0[j]));
    }
    RingMap r0{src.Btil->ring0, r0d, im0};
    if (!r0.well_defined()) throw std::runtime_error("lift: degree-0 map ill-defined");

    int lowest = 0;
    for (const auto& g : src.Btil->gvars) lowest = std::min(lowest, g.degree);
    Flattening F = flatten_sf(algebra_as_module(dst.Btil), lowest - 1, 0);

    DGAMap w{src.Btil, dst.Btil, r0, {}};
    w.images.assign(src.Btil->ngv(), AlgElem{});
    // generators were adjoined stage by stage, so d of each one only involves
    // earlier generators and the partial map below is always defined
    for (int k = 0; k < src.Btil->ngv(); k++) {
        int t = src.Btil->gvars[k].degree;
        AlgElem b = w.apply(src.Btil->dgv[k]);
        MElem bm;
        for (const auto& [m, c] : b.t) F.M.add_term(bm, 0, m, c);
        Vec bv = F.coords(t + 1, bm);
        auto x = r0d->lift(F.C->ngens(t + 1), F.C->d_cols(t), bv);
        if (!x) throw std::runtime_error("lift: target resolution not deep enough");
        w.images[k] = melem_to_alg(F.from_coords(t, *x));
    }
    return w;
}

SFResolution semifree_module_resolution(const DGAPtr& E, const DGFlat& N, int lo, int hi) {
    const RingPtr& R = E->ring0;
    SFResolution res;
    res.lo = lo;
    res.hi = hi;
    DGModule P{E, {}, {}};
    std::vector<Vec>& vgen = res.vgen;
    int gname = 0;

    Flattening F;
    ChainMap v;
    auto rebuild = [&]() {
        F = flatten_sf(P, lo, hi);
        v = sf_map_to_flat(P, F, N, vgen);
    };

    const int cap = 500;
    for (int t = hi; t >= lo; t--) {
        // make the induced map in degree t+1 injective: kill kernel classes
        // with a new generator e, d(e) the cocycle, v(e) a preimage of its image
        if (t + 1 <= hi) {
            for (int it = 0;; it++) {
                if (it > cap) throw std::runtime_error("module resolution: no progress");
                rebuild();
                auto cohP = F.C->cohomology(t + 1);
                FPMap hv = v.induced_H(t + 1);
                bool added = false;
                for (const auto& kap : hv.kernel_gens()) {
                    int n1 = F.C->ngens(t + 1);
                    Vec c(n1, R->zero());
                    for (size_t l = 0; l < kap.size(); l++)
                        for (int r = 0; r < n1; r++)
                            c[r] = R->nf(c[r] + kap[l] * cohP.cocycles[l][r]);
                    if (R->lift(n1, F.C->d_cols(t), c)) continue; // boundary
                    Vec vc = v.apply(t + 1, c);
                    std::vector<Vec> cols = N.C->d_cols(t);
                    int nd = (int)cols.size();
                    for (const auto& r : N.C->T(t + 1).rels) cols.push_back(r);
                    auto sol = R->lift(N.C->ngens(t + 1), cols, vc);
                    if (!sol) throw std::runtime_error("module resolution: image not a boundary");
                    Vec n(sol->begin(), sol->begin() + nd);
                    P.gens.push_back({"p" + std::to_string(++gname), t});
                    P.dgen.push_back(F.from_coords(t + 1, c));
                    vgen.push_back(n);
                    added = true;
                    break;
                }
                if (!added) break;
            }
        }
        // make the induced map in degree t surjective: adjoin cycle generators
        for (int it = 0;; it++) {
            if (it > cap) throw std::runtime_error("module resolution: no progress");
            rebuild();
            auto cohN = N.C->cohomology(t);
            if (cohN.cocycles.empty()) break;
            auto cohP = F.C->cohomology(t);
            std::vector<Vec> cols;
            for (const auto& zP : cohP.cocycles) cols.push_back(v.apply(t, zP));
            for (const auto& b : N.C->d_cols(t - 1)) cols.push_back(b);
            for (const auto& r : N.C->T(t).rels) cols.push_back(r);
            bool added = false;
            for (const auto& z : cohN.cocycles) {
                if (R->lift(N.C->ngens(t), cols, z)) continue; // covered
                P.gens.push_back({"p" + std::to_string(++gname), t});
                P.dgen.push_back(MElem{});
                vgen.push_back(z);
                added = true;
                break;
            }
            if (!added) break;
        }
    }

    rebuild();
    res.P = P;
    res.F = F;
    res.Pflat = dgflat_from_sf(F);
    res.v = v;
    return res;
}

std::optional<QisLift> lift_through_qis(const DGModule& Q, const Flattening& FQ,
                                        const std::vector<Vec>& f_gen_images,
                                        const Flattening& FP, const DGFlat& Pflat,
                                        const DGFlat& N, const ChainMap& zeta,
                                        const DGAMap* via) {
    // all arithmetic happens on the target side; f_gen_images are expected
    // in the target's degree-0 ring already
    const RingPtr& R = FP.M.E->ring0;
    auto transport = [&](const AlgElem& a) { return via ? via->apply(a) : a; };
    int ng = (int)Q.gens.size();
    std::vector<Vec> X(ng), Y(ng);
    std::vector<int> order(ng);
    for (int i = 0; i < ng; i++) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return Q.gens[a].degree > Q.gens[b].degree; });

    for (int q : order) {
        int t = Q.gens[q].degree;
        int p = FP.C->ngens(t), p1 = FP.C->ngens(t + 1);
        int m = N.C->ngens(t - 1), n2 = N.C->ngens(t);

        // ftil(d q) and h(d q); d q only involves strictly higher generators
        Vec r1(p1, R->zero());
        Vec r2 = f_gen_images[q];
        if ((int)r2.size() != n2) r2.assign(n2, R->zero());
        for (const auto& [key, c] : Q.dgen[q]) {
            auto [j, mu] = key;
            AlgElem a;
            a.add_term(mu, c);
            a = transport(a);
            int dj = Q.gens[j].degree;
            Vec fx = Pflat.act_alg(a, dj, X[j]);
            for (int r = 0; r < p1; r++) r1[r] = R->nf(r1[r] + fx[r]);
            int md = Q.E->gmon_degree(mu);
            Vec hx = N.act_alg(a, dj - 1, Y[j]);
            Scalar sg(R->base(), md % 2 == 0 ? 1 : -1);
            for (int r = 0; r < n2; r++) r2[r] = R->nf(r2[r] + hx[r] * sg);
        }

        // stacked system: d_P x = r1 and zeta(x) - d_N y = r2, modulo relations
        std::vector<Vec> cols;
        auto stacked = [&](const Vec& top, const Vec& bot) {
            Vec col(p1 + n2, R->zero());
            for (int r = 0; r < (int)top.size(); r++) col[r] = top[r];
            for (int r = 0; r < (int)bot.size(); r++) col[p1 + r] = bot[r];
            return col;
        };
        for (int i = 0; i < p; i++) {
            Vec e(p, R->zero());
            e[i] = R->one();
            cols.push_back(stacked(FP.C->d_apply(t, e), zeta.apply(t, e)));
        }
        for (int jY = 0; jY < m; jY++) {
            Vec e(m, R->zero());
            e[jY] = R->one();
            Vec dn = N.C->d_apply(t - 1, e);
            for (auto& x : dn) x = R->nf(-x);
            cols.push_back(stacked(Vec(p1, R->zero()), dn));
        }
        for (const auto& r : FP.C->T(t + 1).rels) cols.push_back(stacked(r, Vec{}));
        for (const auto& r : N.C->T(t).rels) cols.push_back(stacked(Vec{}, r));

        auto sol = R->lift(p1 + n2, cols, stacked(r1, r2));
        if (!sol) return std::nullopt;
        X[q] = Vec(sol->begin(), sol->begin() + p);
        Y[q] = Vec(sol->begin() + p, sol->begin() + p + m);
    }

    QisLift out;
    out.gen_images = X;
    out.ftil = ChainMap{FQ.C, FP.C, 0, {}};
    for (int i = FQ.lo; i <= FQ.hi; i++) {
        auto it = FQ.basis.find(i);
        if (it == FQ.basis.end()) continue;
        std::vector<Vec> comps;
        for (const auto& [j, mu] : it->second) {
            AlgElem a;
            a.add_term(mu, R->one());
            comps.push_back(Pflat.act_alg(transport(a), Q.gens[j].degree, X[j]));
        }
        out.ftil.comp[i] = comps;
    }
    return out;
}

std::optional<std::vector<Vec>> sf_null_homotopy(const DGModule& P, const Flattening& FP,
                                                 const DGFlat& Pflat, const Poly& z,
                                                 int strict_above) {
    const RingPtr& R = P.E->ring0;
    int ng = (int)P.gens.size();
    std::vector<Vec> H(ng);
    std::vector<int> order(ng);
    for (int i = 0; i < ng; i++) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return P.gens[a].degree > P.gens[b].degree; });

    for (int q : order) {
        int t = P.gens[q].degree;
        int n = FP.C->ngens(t), nlow = FP.C->ngens(t - 1);
        // d h(e) = z e - h(d e), with h extended by h(a m) = (-1)^{|a|} a h(m)
        Vec rhs(n, R->zero());
        Vec e(n, R->zero());
        int self = FP.index.at(t).at({q, GMon(P.E->ngv(), 0)});
        e[self] = R->one();
        for (int r = 0; r < n; r++) rhs[r] = R->nf(z * e[r]);
        for (const auto& [key, c] : P.dgen[q]) {
            auto [j, mu] = key;
            AlgElem a;
            a.add_term(mu, c);
            int md = P.E->gmon_degree(mu);
            Vec hx = Pflat.act_alg(a, P.gens[j].degree - 1, H[j]);
            Scalar sg(R->base(), md % 2 == 0 ? 1 : -1);
            for (int r = 0; r < n; r++) rhs[r] = R->nf(rhs[r] - hx[r] * sg);
        }
        auto sol = R->lift(n, FP.C->d_cols(t - 1), rhs);
        if (!sol) {
            if (t >= strict_above) return std::nullopt;
            H[q] = Vec(nlow, R->zero());
            continue;
        }
        H[q] = Vec(sol->begin(), sol->begin() + nlow);
    }
    return H;
}

ChainMap sf_map_to_flat(const DGModule& P, const Flattening& F, const DGFlat& N,
                        const std::vector<Vec>& vgen) {
    const RingPtr& R = P.E->ring0;
    ChainMap v{F.C, N.C, 0, {}};
    for (int i = F.lo; i <= F.hi; i++) {
        auto it = F.basis.find(i);
        if (it == F.basis.end()) continue;
        std::vector<Vec> comps;
        for (const auto& [j, mu] : it->second) {
            AlgElem a;
            a.add_term(mu, R->one());
            comps.push_back(N.act_alg(a, P.gens[j].degree, vgen[j]));
        }
        v.comp[i] = comps;
    }
    return v;
}

} // namespace dgc
