#include "dgcalc/rigidity.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dgc {

namespace {

int single_var_index(const Poly& p) {
    if (p.terms().size() != 1) throw std::logic_error("expected a single variable");
    const Monomial& m = p.terms().begin()->first;
    int idx = -1;
    for (int i = 0; i < (int)m.size(); i++)
        if (m[i] != 0) {
            if (idx != -1 || m[i] != 1) throw std::logic_error("expected a single variable");
            idx = i;
        }
    return idx;
}

// element of B pushed into the enveloping degree-0 ring through the left copy
Poly to_left(const SqModel& S, const Poly& c) {
    const RingPtr& B = S.u.dst;
    const RingPtr& R0 = S.Bres.Btil->ring0;
    Poly ch = B->nf(c).rename_vars(S.Bres.bvar_in_ring0, R0->nvars());
    return S.T.E->ring0->nf(S.T.incl_left.r0.apply(ch));
}

Poly to_right(const SqModel& S, const Poly& c) {
    const RingPtr& B = S.u.dst;
    const RingPtr& R0 = S.Bres.Btil->ring0;
    Poly ch = B->nf(c).rename_vars(S.Bres.bvar_in_ring0, R0->nvars());
    return S.T.E->ring0->nf(S.T.incl_right.r0.apply(ch));
}

Vec scaled(const RingPtr& R, const Vec& v, const Poly& c) {
    Vec w;
    w.reserve(v.size());
    for (const auto& p : v) w.push_back(R->nf(p * c));
    return w;
}

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) i--;
        if (i < 0) break;
        cur[i]++;
        for (int j = i + 1; j < k; j++) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// monomial basis of a finite-dimensional quotient ring over its base field;
// irreducible monomials are closed under division, so a breadth-first walk
// from 1 finds them all
std::vector<Monomial> monomial_basis(const RingPtr& C) {
    auto dim = FPModule{C, 1, {}}.dimension();
    if (!dim) throw std::runtime_error("monomial basis: ring is not finite-dimensional");
    int n = C->nvars();
    std::set<Monomial> seen;
    std::vector<Monomial> out, frontier;
    Monomial one(n, 0);
    auto standard = [&](const Monomial& m) {
        Poly p(C->base(), n);
        p.add_term(m, Scalar::one(C->base()));
        return C->nf(p) == p;
    };
    seen.insert(one);
    out.push_back(one);
    frontier.push_back(one);
    while (!frontier.empty() && (long)out.size() < *dim) {
        std::vector<Monomial> next;
        for (const auto& m : frontier)
            for (int v = 0; v < n; v++) {
                Monomial m2 = m;
                m2[v]++;
                if (!seen.insert(m2).second) continue;
                if (!standard(m2)) continue;
                out.push_back(m2);
                next.push_back(m2);
            }
        frontier = std::move(next);
    }
    if ((long)out.size() != *dim) throw std::logic_error("monomial basis: count mismatch");
    std::sort(out.begin(), out.end());
    return out;
}

Poly monomial_poly(const RingPtr& C, const Monomial& m) {
    Poly p(C->base(), C->nvars());
    p.add_term(m, Scalar::one(C->base()));
    return p;
}

// flatness of B (resp. the module) over the base of the squaring model:
// field bases are always flat, identity maps trivially so, and over the
// integers torsion-freeness decides
bool flat_certificate(const SqModel& S) {
    const RingPtr& A = S.u.src;
    const RingPtr& B = S.u.dst;
    if (A->nvars() == 0 && A->base().is_field()) return true;
    if (A->nvars() == B->nvars() && A->ideal() == B->ideal()) {
        bool id = true;
        for (int j = 0; j < A->nvars(); j++)
            if (!(S.u.images[j] == B->var(j))) id = false;
        if (id) return true;
    }
    if (A->nvars() == 0 && !A->base().is_field() && B->zz_regime())
        return S.M.z_invariants().torsion.empty();
    return false;
}

} // namespace

FPModule module_over_e(const SqModel& S) {
    const RingPtr& E0 = S.T.E->ring0;
    const RingPtr& R0 = S.Bres.Btil->ring0;
    int g = S.M.ngens;
    FPModule out{E0, g, {}};
    for (const auto& r : S.Mr0.rels) {
        Vec w;
        for (const auto& p : r) w.push_back(E0->nf(S.T.incl_left.r0.apply(p)));
        out.rels.push_back(w);
    }
    // both copies of the degree-0 ring act the same way
    for (int j = 0; j < R0->nvars(); j++) {
        Poly dz = E0->nf(S.T.incl_left.r0.images[j] - S.T.incl_right.r0.images[j]);
        if (dz.is_zero()) continue;
        for (int i = 0; i < g; i++) {
            Vec w(g, E0->zero());
            w[i] = dz;
            out.rels.push_back(w);
        }
    }
    return out;
}

ModelH model_h(const SqModel& S, int t) {
    auto coh = S.coh(t);
    return ModelH{coh.H.base_change(S.diag), coh.cocycles};
}

RigidComplex rigid_from_cocycles(const SqModel& S, const std::vector<Vec>& reps) {
    if ((int)reps.size() != S.M.ngens)
        throw std::runtime_error("rigid structure: one representative per generator");
    RigidComplex rc;
    rc.S = S;
    int t0 = -S.shift;
    auto X = std::make_shared<FComplex>();
    X->R = S.T.E->ring0;
    X->lo = t0;
    X->hi = t0;
    X->term[t0] = module_over_e(S);
    rc.Mc = X;
    rc.rho = ChainMap{rc.Mc, S.hom.C, 0, {{t0, reps}}};
    auto coh = S.coh(t0);
    for (const auto& rep : reps) {
        auto cls = S.hom.C->class_in_H(t0, coh, rep);
        if (!cls) throw std::runtime_error("rigid structure: representative is not a cocycle");
        rc.rho_cls.push_back(S.diag.apply_vec(*cls));
    }
    return rc;
}

RigidComplex rigid_from_classes(const SqModel& S, const std::vector<Vec>& cls) {
    int t0 = -S.shift;
    auto coh = S.coh(t0);
    const RingPtr& E0 = S.T.E->ring0;
    std::vector<Vec> reps;
    for (const auto& row : cls) {
        if (row.size() != coh.cocycles.size())
            throw std::runtime_error("rigid structure: class length mismatch");
        Vec rep(S.hom.C->ngens(t0), E0->zero());
        for (size_t k = 0; k < row.size(); k++) {
            Poly c = to_left(S, row[k]);
            if (c.is_zero()) continue;
            for (size_t i = 0; i < rep.size(); i++)
                rep[i] = E0->nf(rep[i] + c * coh.cocycles[k][i]);
        }
        reps.push_back(rep);
    }
    return rigid_from_cocycles(S, reps);
}

std::optional<RigidComplex> rigid_search(const SqModel& S) {
    int t0 = -S.shift;
    auto MH = model_h(S, t0);
    const RingPtr& B = S.u.dst;
    int h = (int)MH.cocycles.size();
    int g = S.M.ngens;
    if (g == 0) return std::nullopt;
    std::vector<Vec> cands;
    for (int k = 0; k < h; k++)
        for (int sgn : {1, -1}) {
            Vec v(h, B->zero());
            v[k] = B->cst(sgn);
            cands.push_back(v);
        }
    for (int k = 0; k < h; k++)
        for (int l = k + 1; l < h; l++)
            for (int sgn : {1, -1}) {
                Vec v(h, B->zero());
                v[k] = B->one();
                v[l] = B->cst(sgn);
                cands.push_back(v);
            }
    if (cands.empty()) return std::nullopt;
    long tries = 0;
    std::vector<int> idx(g, 0);
    while (true) {
        if (++tries > 2000) break;
        std::vector<Vec> imgs;
        for (int i = 0; i < g; i++) imgs.push_back(cands[idx[i]]);
        FPMap f{S.M, MH.H, imgs};
        if (f.is_iso()) return rigid_from_classes(S, imgs);
        int i = g - 1;
        while (i >= 0 && idx[i] == (int)cands.size() - 1) idx[i--] = 0;
        if (i < 0) break;
        idx[i]++;
    }
    return std::nullopt;
}

RigidReport verify_rigid(const RigidComplex& rc) {
    RigidReport rep;
    const SqModel& S = rc.S;
    rep.flat_over_base = flat_certificate(S);
    rep.bounded_finite = true;
    for (int t = S.lo; t <= S.hi; t++) (void)S.coh_over_B(t);
    rep.chain = rc.rho.is_chain_map(S.lo, S.hi);
    rep.quasi_iso = rc.rho.is_quasi_iso(S.lo, S.hi);
    return rep;
}

Vec canonical_flat_class(const SqModel& S) {
    if (!S.flat) throw std::runtime_error("canonical class: flat model required");
    if (S.MM.P.gens.size() != 1 || S.Bconc.C->ngens(0) != 1)
        throw std::logic_error("canonical class: unexpected model shape");
    const RingPtr& E0 = S.T.E->ring0;
    // multiplication quasi-isomorphism of the tensor onto B
    std::vector<Vec> mg{Vec{E0->one()}};
    ChainMap zeta = sf_map_to_flat(S.MM.P, S.FMM, S.Bconc, mg);
    auto lf = lift_through_qis(S.P.P, S.P.F, S.P.vgen, S.FMM, S.NMM, S.Bconc, zeta);
    if (!lf) throw std::runtime_error("canonical class: lift failed");
    return S.hom.assemble(0, lf->gen_images);
}

RigidComplex tautological_rigid(const RingPtr& A, int lo, int hi) {
    SqModel S = sq_flat(RingMap::identity(A), SqOptions{lo, hi, 0, {}});
    Vec rep = canonical_flat_class(S);
    return rigid_from_cocycles(S, {rep});
}

bool end_is_scalar(const FPModule& M) {
    const RingPtr& R = M.R;
    int g = M.ngens;
    int nr = (int)M.rels.size();
    if (g == 0) return R->nf(R->one()).is_zero();
    int gg = g * g;
    auto idx = [&](int i, int a) { return i * g + a; };
    Vec iota(gg, R->zero());
    for (int i = 0; i < g; i++) iota[idx(i, i)] = R->one();
    // congruence of matrices: columns may differ by relation elements
    std::vector<Vec> icols{iota};
    for (int i = 0; i < g; i++)
        for (const auto& r : M.rels) {
            Vec col(gg, R->zero());
            for (int a = 0; a < g; a++) col[idx(i, a)] = r[a];
            icols.push_back(col);
        }
    // generators of Hom(M, M): matrices carrying the relations into the
    // relation span
    std::vector<Vec> homgens;
    if (nr == 0) {
        for (int i = 0; i < gg; i++) {
            Vec h(gg, R->zero());
            h[i] = R->one();
            homgens.push_back(h);
        }
    } else {
        int nc = nr * g;
        auto cdx = [&](int j, int a) { return j * g + a; };
        std::vector<Vec> cols;
        for (int i = 0; i < g; i++)
            for (int a = 0; a < g; a++) {
                Vec col(nc, R->zero());
                for (int j = 0; j < nr; j++) col[cdx(j, a)] = M.rels[j][i];
                cols.push_back(col);
            }
        for (int j = 0; j < nr; j++)
            for (int j2 = 0; j2 < nr; j2++) {
                Vec col(nc, R->zero());
                for (int a = 0; a < g; a++) col[cdx(j, a)] = -M.rels[j2][a];
                cols.push_back(col);
            }
        for (const auto& k : R->kernel(nc, cols)) {
            Vec h(k.begin(), k.begin() + gg);
            bool nz = false;
            for (auto& p : h)
                if (!R->nf(p).is_zero()) nz = true;
            if (nz) homgens.push_back(h);
        }
        homgens.push_back(iota);
    }
    // injective: c * id congruent to zero forces c = 0
    for (const auto& k : R->kernel(gg, icols))
        if (!R->nf(k[0]).is_zero()) return false;
    // surjective: every endomorphism is congruent to a scalar
    for (const auto& h : homgens)
        if (!R->lift(gg, icols, h)) return false;
    return true;
}

EndoCheck rigid_endo(const RigidComplex& rc, const Poly& c) {
    EndoCheck E;
    E.c = c;
    const SqModel& S = rc.S;
    const RingPtr& E0 = S.T.E->ring0;
    E.law = square_law(S, c);
    Poly cl = to_left(S, c);
    Poly ccr = E0->nf(cl * to_right(S, c));
    int t0 = -S.shift;
    ChainMap F = rc.rho, G = rc.rho;
    std::vector<Vec> fc, gc;
    for (const auto& rep : rc.rho.comp.at(t0)) {
        fc.push_back(scaled(E0, rep, cl));
        gc.push_back(scaled(E0, rep, ccr));
    }
    F.comp[t0] = fc;
    G.comp[t0] = gc;
    E.witness = homotopy_solve(F, G, S.lo, S.hi);
    E.rigid = E.law.ok() && E.witness.has_value();
    return E;
}

std::optional<std::vector<Poly>> rigid_auto_scan(const RigidComplex& rc,
                                                const std::vector<Poly>& units) {
    if (!end_is_scalar(rc.S.M)) return std::nullopt;
    std::vector<Poly> out;
    for (const auto& c : units)
        if (rigid_endo(rc, c).rigid) out.push_back(c);
    return out;
}

std::vector<Poly> units_up_to_height(const RingPtr& B, long height) {
    auto basis = monomial_basis(B);
    int d = (int)basis.size();
    std::vector<Poly> out;
    std::vector<long> coef(d, -height);
    while (true) {
        Poly p = B->zero();
        for (int i = 0; i < d; i++) {
            if (coef[i] == 0) continue;
            Poly t(B->base(), B->nvars());
            t.add_term(basis[i], Scalar(B->base(), coef[i]));
            p = p + t;
        }
        p = B->nf(p);
        if (!p.is_zero() && B->is_unit(p)) {
            bool dup = false;
            for (const auto& q : out)
                if (q == p) dup = true;
            if (!dup) out.push_back(p);
        }
        int i = d - 1;
        while (i >= 0 && coef[i] == height) coef[i--] = -height;
        if (i < 0) break;
        coef[i]++;
    }
    return out;
}

std::vector<Scalar> FiniteDualRigid::coords(const Poly& c) const {
    const RingPtr& C = u.dst;
    Poly p = C->nf(c);
    std::vector<Scalar> out(cbasis.size(), Scalar::zero(C->base()));
    for (const auto& [m, s] : p.terms()) {
        auto it = std::lower_bound(cbasis.begin(), cbasis.end(), m);
        if (it == cbasis.end() || *it != m)
            throw std::logic_error("dual coordinates: non-standard monomial");
        out[it - cbasis.begin()] += s;
    }
    return out;
}

std::vector<Scalar> FiniteDualRigid::act_dual(const Poly& c,
                                              const std::vector<Scalar>& w) const {
    const RingPtr& C = u.dst;
    int d = (int)cbasis.size();
    std::vector<Scalar> out(d, Scalar::zero(C->base()));
    Poly cn = C->nf(c);
    for (const auto& [m, s] : cn.terms()) {
        std::vector<Scalar> cur = w;
        for (int v = 0; v < (int)m.size(); v++)
            for (int e = 0; e < m[v]; e++) {
                std::vector<Scalar> nx(d, Scalar::zero(C->base()));
                for (int a = 0; a < d; a++)
                    for (int b = 0; b < d; b++) nx[a] += mult[v][a][b] * cur[b];
                cur = std::move(nx);
            }
        for (int a = 0; a < d; a++) out[a] += s * cur[a];
    }
    return out;
}

Vec FiniteDualRigid::trace_eval(const Vec& v) const {
    const RingPtr& A = u.src;
    Scalar t = Scalar::zero(A->base());
    for (size_t i = 0; i < v.size(); i++) t += coords(v[i])[i];
    return Vec{A->cst(t)};
}

std::shared_ptr<FiniteDualRigid> flat_shriek_base(const RingMap& u, int lo, int hi) {
    const RingPtr& A = u.src;
    const RingPtr& C = u.dst;
    if (A->nvars() != 0 || !A->base().is_field())
        throw std::runtime_error("finite dual: base must be a field");
    auto fd = std::make_shared<FiniteDualRigid>();
    fd->u = u;
    fd->cbasis = monomial_basis(C);
    int d = (int)fd->cbasis.size();
    const BaseRing& F = C->base();
    fd->mult.resize(C->nvars());
    for (int v = 0; v < C->nvars(); v++) {
        fd->mult[v].resize(d);
        for (int e = 0; e < d; e++)
            fd->mult[v][e] = fd->coords(C->var(v) * monomial_poly(C, fd->cbasis[e]));
    }
    // presentation of the dual: kernel of c (x) delta |-> c . delta
    Mat Phi(F, d, d * d);
    for (int j = 0; j < d; j++)
        for (int a = 0; a < d; a++) {
            std::vector<Scalar> unit(d, Scalar::zero(F));
            unit[j] = Scalar::one(F);
            auto col = fd->act_dual(monomial_poly(C, fd->cbasis[a]), unit);
            for (int b = 0; b < d; b++) Phi.at(b, j * d + a) = col[b];
        }
    fd->N = FPModule{C, d, {}};
    Mat ker = kernel_basis(Phi);
    for (int c0 = 0; c0 < ker.cols(); c0++) {
        Vec rel(d, C->zero());
        for (int j = 0; j < d; j++)
            for (int a = 0; a < d; a++) {
                const Scalar& s = ker.at(j * d + a, c0);
                if (s == Scalar::zero(F)) continue;
                Poly t(F, C->nvars());
                t.add_term(fd->cbasis[a], s);
                rel[j] = C->nf(rel[j] + t);
            }
        fd->N.rels.push_back(rel);
    }

    fd->taut = sq_flat(RingMap::identity(A), SqOptions{lo, hi, 0, {}});
    fd->taut_coh = fd->taut.hom.C->cohomology(0);
    Vec trep = canonical_flat_class(fd->taut);
    auto tcls = fd->taut.hom.C->class_in_H(0, fd->taut_coh, trep);
    if (!tcls) throw std::logic_error("finite dual: reference class failed");
    fd->taut_ref = *tcls;

    SqModel S = sq_object(u, fd->N, SqOptions{lo, hi, 0, {}});
    auto cohN = S.hom.C->cohomology(0);
    int hN = (int)cohN.cocycles.size();
    const RingPtr& E0 = S.T.E->ring0;

    FiniteDualRigid* p = fd.get();
    RingMap v0 = S.Bres.v0;
    auto trace_phi = [p, v0, C](const Vec& v) {
        Vec w;
        for (const auto& q : v) w.push_back(C->nf(v0.apply(q)));
        return p->trace_eval(w);
    };
    SqMorphism sm = sq_morphism(S, fd->taut, u, trace_phi);

    // scalar value (against the reference class) of the trace applied to
    // each basis multiple of each cohomology generator
    auto scalar_of = [&](const Vec& img) {
        auto cls = fd->taut.hom.C->class_in_H(0, fd->taut_coh, img);
        if (!cls) throw std::logic_error("finite dual: trace image is not a cocycle");
        auto ex = fd->taut_coh.H.express({fd->taut_ref}, *cls);
        if (!ex) throw std::logic_error("finite dual: class outside the reference line");
        return (*ex)[0].constant_term();
    };
    std::vector<std::vector<Scalar>> val(d);
    for (int e = 0; e < d; e++) {
        Poly me = to_left(S, monomial_poly(C, fd->cbasis[e]));
        for (int k = 0; k < hN; k++)
            val[e].push_back(scalar_of(sm.apply(0, scaled(E0, cohN.cocycles[k], me))));
    }
    std::vector<std::vector<std::vector<Scalar>>> pc(d);
    for (int a = 0; a < d; a++) {
        pc[a].resize(d);
        for (int b = 0; b < d; b++)
            pc[a][b] = fd->coords(monomial_poly(C, fd->cbasis[a]) *
                                  monomial_poly(C, fd->cbasis[b]));
    }
    // trace condition: evaluation against every basis element matches the
    // dual pairing; one linear system per dual generator
    Mat T(F, d, hN * d);
    for (int b = 0; b < d; b++)
        for (int k = 0; k < hN; k++)
            for (int a = 0; a < d; a++) {
                Scalar s = Scalar::zero(F);
                for (int e = 0; e < d; e++) s += pc[a][b][e] * val[e][k];
                T.at(b, k * d + a) = s;
            }
    if (getenv("DGC_DEBUG_TRACE")) {
        fprintf(stderr, "d=%d hN=%d nrels=%d\n", d, hN, (int)fd->N.rels.size());
        auto vnamesE = S.T.E->ring0->vars();
        for (int k = 0; k < hN; k++) {
            auto comps = S.hom.components(0, cohN.cocycles[k]);
            for (int q = 0; q < (int)comps.size(); q++) {
                bool nz = false;
                for (auto& pp : comps[q]) if (!pp.is_zero()) nz = true;
                if (!nz) continue;
                fprintf(stderr, "z%d comp on gen %d (deg %d):", k, q, S.P.P.gens[q].degree);
                for (auto& pp : comps[q]) fprintf(stderr, " %s;", pp.str(vnamesE).c_str());
                fprintf(stderr, "\n");
            }
        }
        for (size_t b2 = 0; b2 < sm.alpha.gen_images.size(); b2++) {
            fprintf(stderr, "alpha[%d]:", (int)b2);
            for (auto& pp : sm.alpha.gen_images[b2]) fprintf(stderr, " %s;", pp.str(vnamesE).c_str());
            fprintf(stderr, "\n");
        }
        for (int e = 0; e < d; e++)
            for (int k = 0; k < hN; k++)
                fprintf(stderr, "val[%d][%d]=%s\n", e, k, val[e][k].str().c_str());
        fprintf(stderr, "T=\n%s\n", T.str().c_str());
    }
    fd->trace_unique = rank_field(T) == hN * d;
    std::vector<Vec> cls;
    for (int j = 0; j < d; j++) {
        std::vector<Scalar> rhs(d, Scalar::zero(F));
        rhs[j] = Scalar::one(F);
        auto sol = solve(T, rhs);
        if (!sol) throw std::runtime_error("finite dual: no trace-compatible structure");
        Vec row(hN, C->zero());
        for (int k = 0; k < hN; k++) {
            Poly q(F, C->nvars());
            for (int a = 0; a < d; a++)
                if ((*sol)[k * d + a] != Scalar::zero(F))
                    q.add_term(fd->cbasis[a], (*sol)[k * d + a]);
            row[k] = C->nf(q);
        }
        cls.push_back(row);
    }
    fd->rc = rigid_from_classes(S, cls);
    fd->sqm = sq_morphism(fd->rc.S, fd->taut, u, trace_phi);
    return fd;
}

bool trace_is_rigid(const FiniteDualRigid& fd, const Poly& c) {
    const SqModel& S = fd.rc.S;
    const RingPtr& C = fd.u.dst;
    const RingPtr& A = fd.u.src;
    const RingPtr& E0 = S.T.E->ring0;
    Poly cn = C->nf(c);
    const FiniteDualRigid* p = &fd;
    RingMap v0 = S.Bres.v0;
    SqMorphism sm = fd.sqm;
    sm.phi_eval = [p, cn, v0, C](const Vec& v) {
        Vec w;
        for (const auto& q : v) w.push_back(C->nf(v0.apply(q) * cn));
        return p->trace_eval(w);
    };
    int d = (int)fd.cbasis.size();
    const auto& reps = fd.rc.rho.comp.at(0);
    for (int j = 0; j < d; j++)
        for (int b = 0; b < d; b++) {
            Poly pb = monomial_poly(C, fd.cbasis[b]);
            Vec img = sm.apply(0, scaled(E0, reps[j], to_left(S, pb)));
            auto cls = fd.taut.hom.C->class_in_H(0, fd.taut_coh, img);
            if (!cls) return false;
            Scalar lhs = fd.coords(C->nf(cn * pb))[j];
            Vec want;
            for (const auto& q : fd.taut_ref) want.push_back(A->nf(q * A->cst(lhs)));
            if (!fd.taut_coh.H.elements_equal(*cls, want)) return false;
        }
    return true;
}

std::vector<Poly> trace_scan(const FiniteDualRigid& fd, const std::vector<Poly>& units) {
    std::vector<Poly> out;
    for (const auto& c : units)
        if (trace_is_rigid(fd, c)) out.push_back(c);
    return out;
}

CoalgebraCheck coalgebra_check(const FiniteDualRigid& fd) {
    CoalgebraCheck out;
    const SqModel& S = fd.rc.S;
    const DGAPtr& EC = S.T.E;
    const RingPtr& E0 = EC->ring0;
    const DGAPtr& Ctil = S.Bres.Btil;
    const RingPtr& R0C = Ctil->ring0;
    const RingPtr& C = fd.u.dst;
    const BaseRing& F = C->base();
    int d = (int)fd.cbasis.size();
    int nvC = R0C->nvars();

    std::vector<int> side(E0->nvars(), -1), back(E0->nvars(), -1);
    for (int j = 0; j < nvC; j++) {
        int l = single_var_index(S.T.incl_left.r0.images[j]);
        int r = single_var_index(S.T.incl_right.r0.images[j]);
        side[l] = 0;
        back[l] = j;
        side[r] = 1;
        back[r] = j;
    }
    int q0 = -1;
    for (int q = 0; q < (int)S.P.P.gens.size(); q++)
        if (S.P.P.gens[q].degree == 0) {
            if (q0 >= 0) throw std::logic_error("comultiplication: several degree-0 generators");
            q0 = q;
        }
    // dual coordinates of the degree-0 resolution generators of the module
    std::map<int, std::vector<Scalar>> coordsN;
    for (int gi = 0; gi < (int)S.MtP.gens.size(); gi++) {
        if (S.MtP.gens[gi].degree != 0) continue;
        std::vector<Scalar> cn(d, Scalar::zero(F));
        const Vec& vv = S.Mt.vgen[gi];
        for (int i = 0; i < (int)vv.size(); i++) {
            std::vector<Scalar> unit(d, Scalar::zero(F));
            unit[i] = Scalar::one(F);
            auto acc = fd.act_dual(C->nf(S.Bres.v0.apply(vv[i])), unit);
            for (int a = 0; a < d; a++) cn[a] += acc[a];
        }
        coordsN[gi] = cn;
    }

    std::vector<std::vector<std::vector<Scalar>>> Delta(
        d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar::zero(F))));
    const auto& reps = fd.rc.rho.comp.at(0);
    const auto& nbas = S.FMM.basis.at(0);
    for (int j = 0; j < d; j++) {
        auto comps = S.hom.components(0, reps[j]);
        const Vec& v = comps[q0];
        for (int idx = 0; idx < (int)v.size(); idx++) {
            if (v[idx].is_zero()) continue;
            auto [pg, mu] = nbas[idx];
            for (int gexp : mu)
                if (gexp != 0) throw std::logic_error("comultiplication: graded term at degree 0");
            int gi = pg / S.MM.right_gens, gj = pg % S.MM.right_gens;
            auto itL = coordsN.find(gi), itR = coordsN.find(gj);
            if (itL == coordsN.end() || itR == coordsN.end())
                throw std::logic_error("comultiplication: non-module generator at degree 0");
            for (const auto& [mon, s] : v[idx].terms()) {
                Monomial mL(nvC, 0), mR(nvC, 0);
                for (int v2 = 0; v2 < (int)mon.size(); v2++) {
                    if (mon[v2] == 0) continue;
                    if (side[v2] == 0)
                        mL[back[v2]] += mon[v2];
                    else if (side[v2] == 1)
                        mR[back[v2]] += mon[v2];
                    else
                        throw std::logic_error("comultiplication: unsorted variable");
                }
                Poly pl(F, nvC), pr(F, nvC);
                pl.add_term(mL, Scalar::one(F));
                pr.add_term(mR, Scalar::one(F));
                auto uL = fd.act_dual(C->nf(S.Bres.v0.apply(pl)), itL->second);
                auto uR = fd.act_dual(C->nf(S.Bres.v0.apply(pr)), itR->second);
                for (int e = 0; e < d; e++)
                    for (int f = 0; f < d; f++) Delta[j][e][f] += s * uL[e] * uR[f];
            }
        }
    }

    out.cocommutative = true;
    for (int j = 0; j < d && out.cocommutative; j++)
        for (int e = 0; e < d; e++)
            for (int f = 0; f < d; f++)
                if (Delta[j][e][f] != Delta[j][f][e]) out.cocommutative = false;
    Monomial one(C->nvars(), 0);
    int idx1 = (int)(std::lower_bound(fd.cbasis.begin(), fd.cbasis.end(), one) -
                     fd.cbasis.begin());
    out.counit = true;
    for (int j = 0; j < d; j++)
        for (int f = 0; f < d; f++) {
            Scalar want = Scalar(F, j == f ? 1 : 0);
            if (Delta[j][idx1][f] != want || Delta[j][f][idx1] != want) out.counit = false;
        }
    out.coassociative = true;
    for (int j = 0; j < d && out.coassociative; j++)
        for (int p2 = 0; p2 < d; p2++)
            for (int q = 0; q < d; q++)
                for (int r = 0; r < d; r++) {
                    Scalar lhs = Scalar::zero(F), rhs = Scalar::zero(F);
                    for (int e = 0; e < d; e++) lhs += Delta[j][e][r] * Delta[e][p2][q];
                    for (int f = 0; f < d; f++) rhs += Delta[j][p2][f] * Delta[f][q][r];
                    if (lhs != rhs) out.coassociative = false;
                }
    return out;
}

KoszulCompare compare_to_koszul(const SqModel& S, const std::vector<Poly>& b) {
    if (S.T.E->ngv() != 0)
        throw std::runtime_error("diagonal comparison: polynomial presentation required");
    const RingPtr& E0 = S.T.E->ring0;
    int n = (int)b.size();
    KoszulCompare KC;
    DGModule K;
    K.E = S.T.E;
    std::vector<std::vector<std::vector<int>>> ss;
    for (int p = 0; p <= n; p++) ss.push_back(subsets(n, p));
    std::map<std::vector<int>, int> gidx;
    for (int p = 0; p <= n; p++)
        for (const auto& sub : ss[p]) {
            std::string name = "k";
            for (int i : sub) name += "_" + std::to_string(i);
            gidx[sub] = (int)K.gens.size();
            K.gens.push_back({name, -p});
        }
    for (int p = 0; p <= n; p++)
        for (const auto& sub : ss[p]) {
            MElem dm;
            for (int j = 0; j < p; j++) {
                std::vector<int> rest = sub;
                rest.erase(rest.begin() + j);
                Poly c = j % 2 == 0 ? b[sub[j]] : -b[sub[j]];
                K.add_term(dm, gidx[rest], GMon{}, E0->nf(c));
            }
            K.dgen.push_back(dm);
        }
    KC.Kmod = K;
    KC.FK = flatten_sf(K, -n, 0);
    std::vector<Vec> kv;
    for (const auto& g : K.gens) {
        Vec v(S.Bconc.C->ngens(g.degree), E0->zero());
        if (g.degree == 0) v[0] = E0->one();
        kv.push_back(v);
    }
    ChainMap zeta = sf_map_to_flat(K, KC.FK, S.Bconc, kv);
    DGFlat Kflat = dgflat_from_sf(KC.FK);
    auto lf = lift_through_qis(S.P.P, S.P.F, S.P.vgen, KC.FK, Kflat, S.Bconc, zeta);
    if (!lf) throw std::runtime_error("diagonal comparison: lift failed");
    KC.gen_images = lf->gen_images;
    return KC;
}

Vec fraction_class_in_model(const SqModel& S, const KoszulCompare& KC,
                            const std::vector<Poly>& b, const Poly& w) {
    const RingPtr& E0 = S.T.E->ring0;
    int n = (int)b.size();
    int t = -n, mm = -2 * n;
    GMon triv(S.T.E->ngv(), 0);
    int tgt = S.FMM.index.at(mm).at({S.MM.pair_index(0, 0), triv});
    std::vector<Vec> comps;
    for (int q = 0; q < (int)S.P.P.gens.size(); q++) {
        int dq = S.P.P.gens[q].degree;
        Vec val(S.NMM.C->ngens(dq + t), E0->zero());
        if (dq == -n && !val.empty()) {
            const Vec& x = KC.gen_images[q];
            if (x.size() != 1) throw std::logic_error("fraction class: top term shape");
            val[tgt] = E0->nf(x[0] * w);
        }
        comps.push_back(val);
    }
    return S.hom.assemble(t, comps);
}

Poly diagonal_numerator(const SqModel& S, const std::vector<Poly>& b) {
    const RingPtr& E0 = S.T.E->ring0;
    int N = E0->nvars();
    std::vector<Vec> rows;
    for (const auto& bi : b) {
        Vec row;
        for (int v = 0; v < N; v++) row.push_back(E0->nf(derivative(bi, v)));
        rows.push_back(row);
    }
    const RingPtr& R0 = S.Bres.Btil->ring0;
    for (int j = 0; j < R0->nvars(); j++) {
        Vec row(N, E0->zero());
        row[single_var_index(S.T.incl_right.r0.images[j])] = E0->one();
        rows.push_back(row);
    }
    if ((int)rows.size() != N) throw std::runtime_error("chart mismatch");
    return E0->nf(poly_det(E0, rows));
}

namespace {

// validity of a diagonal sequence plus the fraction-class construction
SmoothRigid smooth_from_sequence(const RingMap& u, SqModel S, std::vector<Poly> b) {
    const RingPtr& E0 = S.T.E->ring0;
    const RingPtr& R0 = S.Bres.Btil->ring0;
    for (const auto& bi : b)
        if (!S.u.dst->nf(S.diag.apply(bi)).is_zero())
            throw std::runtime_error("diagonal sequence: not in the diagonal ideal");
    std::vector<Vec> bcols;
    for (const auto& bi : b) bcols.push_back(Vec{bi});
    for (int j = 0; j < R0->nvars(); j++) {
        Poly dz = E0->nf(S.T.incl_left.r0.images[j] - S.T.incl_right.r0.images[j]);
        if (!E0->lift(1, bcols, Vec{dz}))
            throw std::runtime_error("diagonal sequence: does not generate the diagonal");
    }
    if (!is_regular_sequence(E0, b))
        throw std::runtime_error("diagonal sequence: not regular");
    Poly w = diagonal_numerator(S, b);
    auto KC = compare_to_koszul(S, b);
    Vec rep = fraction_class_in_model(S, KC, b, w);
    return SmoothRigid{u, b, w, rigid_from_cocycles(S, {rep})};
}

} // namespace

SmoothRigid sharp_base(const RingMap& u) {
    const RingPtr& A = u.src;
    const RingPtr& C = u.dst;
    if (A->nvars() != 0 || !A->base().is_field())
        throw std::runtime_error("smooth chart: base must be a field");
    if (!C->ideal().empty())
        throw std::runtime_error("smooth chart: polynomial algebra required");
    int n = C->nvars();
    SqModel S = sq_object(u, omega_power(u, n), SqOptions{-n - 1, -n + 1, n, {}});
    const RingPtr& E0 = S.T.E->ring0;
    std::vector<Poly> b;
    for (int j = 0; j < n; j++)
        b.push_back(E0->nf(S.T.incl_left.r0.images[j] - S.T.incl_right.r0.images[j]));
    return smooth_from_sequence(u, std::move(S), std::move(b));
}

SmoothRigid sharp_step(const SmoothRigid& SB, const RingMap& g) {
    const RingPtr& B = SB.u.dst;
    const RingPtr& C = g.dst;
    if (!C->ideal().empty())
        throw std::runtime_error("smooth chart: polynomial algebra required");
    RingMap u2 = g.compose(SB.u);
    int n2 = C->nvars();
    SqModel S2 = sq_object(u2, omega_power(u2, n2), SqOptions{-n2 - 1, -n2 + 1, n2, {}});
    const RingPtr& E0B = SB.rc.S.T.E->ring0;
    const RingPtr& E0C = S2.T.E->ring0;
    const RingPtr& R0C = S2.Bres.Btil->ring0;
    std::vector<Poly> gim(E0B->nvars(), E0C->zero());
    std::vector<bool> covered(n2, false);
    for (int j = 0; j < B->nvars(); j++) {
        Poly gt = C->nf(g.apply(B->var(j))).rename_vars(S2.Bres.bvar_in_ring0,
                                                        R0C->nvars());
        int li = single_var_index(SB.rc.S.T.incl_left.r0.images[j]);
        int ri = single_var_index(SB.rc.S.T.incl_right.r0.images[j]);
        gim[li] = E0C->nf(S2.T.incl_left.r0.apply(gt));
        gim[ri] = E0C->nf(S2.T.incl_right.r0.apply(gt));
        if (gt.terms().size() == 1) {
            const Monomial& m = gt.terms().begin()->first;
            int v = -1;
            bool single = gt.terms().begin()->second == Scalar::one(C->base());
            for (int i = 0; i < (int)m.size(); i++)
                if (m[i] != 0) {
                    if (v != -1 || m[i] != 1) single = false;
                    v = i;
                }
            if (single && v >= 0) covered[v] = true;
        }
    }
    RingMap gE{E0B, E0C, gim};
    std::vector<Poly> b2;
    for (const auto& bi : SB.b) b2.push_back(E0C->nf(gE.apply(bi)));
    for (int v = 0; v < n2; v++)
        if (!covered[v])
            b2.push_back(E0C->nf(S2.T.incl_left.r0.images[v] -
                                 S2.T.incl_right.r0.images[v]));
    if ((int)b2.size() != n2) throw std::runtime_error("chart mismatch");
    return smooth_from_sequence(u2, std::move(S2), std::move(b2));
}

RigidComplex tensor_rigid(const SmoothRigid& M, const RingMap& g) {
    return sharp_step(M, g).rc;
}

ShriekStep flat_shriek_regular(const RingMap& base_to_B, const RingMap& u,
                               const std::vector<Poly>& a, const FPModule& L, int s) {
    const RingPtr& B = u.src;
    int k = (int)a.size();
    if (!is_regular_sequence(B, a))
        throw std::runtime_error("kernel sequence is not regular");
    ShriekStep out;
    out.u = u;
    out.a = a;
    out.N = ext_via_koszul(B, a, L, k).base_change(u).pruned();
    out.shift = s - k;
    RingMap uAC = u.compose(base_to_B);
    SqModel S = sq_object(uAC, out.N,
                          SqOptions{-out.shift - 1, -out.shift + 1, out.shift, {}});
    auto rs = rigid_search(S);
    if (!rs) throw std::runtime_error("no rigidifying isomorphism found");
    out.rc = std::move(*rs);
    return out;
}

QSharp q_sharp(const RingMap& f, const FPModule& M) {
    QSharp out;
    out.f = f;
    out.etale = kaehler(f).omega.is_zero_module();
    out.Mp = M.base_change(f);
    std::vector<Vec> ims;
    for (int i = 0; i < out.Mp.ngens; i++) {
        Vec v(out.Mp.ngens, out.Mp.R->zero());
        v[i] = out.Mp.R->one();
        ims.push_back(v);
    }
    out.nondegenerate = FPMap{out.Mp, out.Mp, ims}.is_iso();
    return out;
}

RigidExistence rigid_existence(const RingPtr& A) {
    if (!A->base().is_field())
        throw std::runtime_error("rigid existence: field base required");
    RigidExistence out;
    out.A = A;
    int n = A->nvars();
    RingPtr K = Ring::make(A->base(), {}, {});
    if (A->ideal().empty()) {
        if (n == 0) {
            out.rc = tautological_rigid(A);
            out.shift = 0;
        } else {
            auto SR = sharp_base(RingMap{K, A, {}});
            out.rc = std::move(SR.rc);
            out.shift = n;
        }
        out.R = out.rc.S.M;
    } else {
        RingPtr B = Ring::make(A->base(), A->vars(), {});
        RingMap uKB{K, B, {}};
        std::vector<Poly> a = A->ideal();
        std::vector<Poly> av;
        for (int j = 0; j < n; j++) av.push_back(A->var(j));
        RingMap uBA{B, A, av};
        auto st = flat_shriek_regular(uKB, uBA, a, omega_power(uKB, n), n);
        out.rc = std::move(st.rc);
        out.shift = st.shift;
        out.R = st.N;
    }
    out.report = verify_rigid(out.rc);
    out.end_matches = end_is_scalar(out.R);
    return out;
}

} // namespace dgc
