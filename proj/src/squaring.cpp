#include "dgcalc/squaring.hpp"

#include <stdexcept>

namespace dgc {

namespace {

// window layout: deep enough that neither truncation edge can leak into the
// requested cohomology range; a right shift (module placed above degree 0)
// pushes the resolution cutoff further down
void windows(const SqOptions& o, int& p_lo, int& n_lo, int& m_lo, int& n_hi, int& m_hi) {
    p_lo = o.lo - o.hi - 4 + std::min(0, 2 * o.shift);
    n_lo = p_lo + o.lo - 3;
    m_lo = n_lo - 1;
    n_hi = std::max(0, -2 * o.shift);
    m_hi = std::max(0, -o.shift);
}

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

FPMap fpmap_inverse(const FPMap& f) {
    FPMap g{f.dst, f.src, {}};
    const RingPtr& R = f.dst.R;
    for (int i = 0; i < f.dst.ngens; i++) {
        Vec e(f.dst.ngens, R->zero());
        e[i] = R->one();
        auto x = f.dst.express(f.images, e);
        if (!x) throw std::runtime_error("map not invertible");
        g.images.push_back(*x);
    }
    return g;
}

SqModel build_model(const RingMap& u, const FPModule* M, const SqOptions& opt) {
    SqModel S;
    S.u = u;
    S.lo = opt.lo;
    S.hi = opt.hi;
    S.shift = opt.shift;
    int p_lo, n_lo, m_lo, n_hi, m_hi;
    windows(opt, p_lo, n_lo, m_lo, n_hi, m_hi);
    int mdeg = -opt.shift;

    S.Bres = semifree_algebra_resolution(u, opt.hi - opt.lo + 4, opt.pad);
    const DGAPtr& Btil = S.Bres.Btil;
    const RingPtr& R0 = Btil->ring0;
    S.T = tensor_dga(Btil, Btil, S.Bres.a_incl, S.Bres.a_incl);
    const DGAPtr& E = S.T.E;
    const RingPtr& E0 = E->ring0;
    const RingPtr& B = u.dst;

    S.diag = RingMap{E0, B, std::vector<Poly>(E0->nvars(), B->zero())};
    for (int j = 0; j < R0->nvars(); j++) {
        S.diag.images[single_var_index(S.T.incl_left.r0.images[j])] = S.Bres.v0.images[j];
        S.diag.images[single_var_index(S.T.incl_right.r0.images[j])] = S.Bres.v0.images[j];
    }

    S.Bfp = FPModule{E0, 1, {}};
    auto push_rel = [&](const Poly& p) {
        Poly q = E0->nf(p);
        if (!q.is_zero()) S.Bfp.rels.push_back({q});
    };
    for (const auto& g : S.Bres.vkernel) {
        push_rel(S.T.incl_left.r0.apply(g));
        push_rel(S.T.incl_right.r0.apply(g));
    }
    for (int j = 0; j < R0->nvars(); j++)
        push_rel(S.T.incl_left.r0.images[j] - S.T.incl_right.r0.images[j]);

    // M over ring0, then its resolution over Btil
    if (!M) {
        S.flat = true;
        S.M = FPModule{B, 1, {}};
        S.Mr0 = target_fp(S.Bres);
        S.Mconc = dgflat_concentrated(Btil, S.Mr0, mdeg);
        S.MtP = algebra_as_module(Btil);
        S.MtP.gens[0].degree = mdeg;
        S.Mt.P = S.MtP;
        S.Mt.vgen = {Vec{R0->one()}};
        S.Mt.lo = m_lo;
        S.Mt.hi = m_hi;
        S.Mt.F = flatten_sf(S.MtP, m_lo, m_hi);
        S.Mt.Pflat = dgflat_from_sf(S.Mt.F);
        S.Mt.v = sf_map_to_flat(S.MtP, S.Mt.F, S.Mconc, S.Mt.vgen);
    } else {
        S.M = *M;
        S.Mr0 = FPModule{R0, M->ngens, {}};
        for (const auto& r : M->rels) {
            Vec rr;
            for (const auto& p : r)
                rr.push_back(R0->nf(B->nf(p).rename_vars(S.Bres.bvar_in_ring0, R0->nvars())));
            S.Mr0.rels.push_back(rr);
        }
        for (const auto& g : S.Bres.vkernel)
            for (int i = 0; i < M->ngens; i++) {
                Vec rr(M->ngens, R0->zero());
                rr[i] = R0->nf(g);
                if (!rr[i].is_zero()) S.Mr0.rels.push_back(rr);
            }
        S.Mconc = dgflat_concentrated(Btil, S.Mr0, mdeg);
        S.Mt = semifree_module_resolution(Btil, S.Mconc, m_lo, m_hi);
        S.MtP = S.Mt.P;
    }

    S.MM = tensor_sf(S.MtP, S.MtP, S.T);
    S.FMM = flatten_sf(S.MM.P, n_lo, n_hi);
    S.NMM = dgflat_from_sf(S.FMM);

    S.Bconc = dgflat_concentrated(E, S.Bfp);
    S.P = semifree_module_resolution(E, S.Bconc, p_lo, 0);
    S.hom = hom_sf(S.P.P, S.NMM, opt.lo - 1, opt.hi + 1);
    return S;
}

} // namespace

SqModel sq_flat(const RingMap& u, const SqOptions& opt) { return build_model(u, nullptr, opt); }

SqModel sq_object(const RingMap& u, const FPModule& M, const SqOptions& opt) {
    return build_model(u, &M, opt);
}

SqComparison compare_models(const SqModel& S1, const SqModel& S2) {
    if (S1.lo != S2.lo || S1.hi != S2.hi || S1.shift != S2.shift)
        throw std::runtime_error("compare: different windows");
    if (S1.Bres.Btil->ring0->vars() != S2.Bres.Btil->ring0->vars())
        throw std::runtime_error("compare: resolutions present different rings in degree 0");
    int lo = S1.lo, hi = S1.hi;
    SqOptions opt{lo, hi, S1.shift};
    int p_lo, n_lo, m_lo, n_hi, m_hi;
    windows(opt, p_lo, n_lo, m_lo, n_hi, m_hi);

    auto w21 = lift_dg_morphism(S2.Bres, S1.Bres);
    auto w12 = lift_dg_morphism(S1.Bres, S2.Bres);
    auto Emix = tensor_dga(S1.Bres.Btil, S2.Bres.Btil, S1.Bres.a_incl, S2.Bres.a_incl);
    const RingPtr& Emix0 = Emix.E->ring0;

    auto ident_r0 = [&](const RingPtr& dst) {
        RingMap r{Emix0, dst, {}};
        for (int i = 0; i < Emix0->nvars(); i++) r.images.push_back(dst->var(i));
        return r;
    };
    int n1 = S1.Bres.Btil->ngv(), n2 = S2.Bres.Btil->ngv();
    DGAMap wE1{Emix.E, S1.T.E, ident_r0(S1.T.E->ring0), {}};
    for (int k = 0; k < n1; k++) wE1.images.push_back(S1.T.incl_left.images[k]);
    for (int k = 0; k < n2; k++) wE1.images.push_back(S1.T.incl_right.apply(w21.images[k]));
    DGAMap wE2{Emix.E, S2.T.E, ident_r0(S2.T.E->ring0), {}};
    for (int k = 0; k < n1; k++) wE2.images.push_back(S2.T.incl_left.apply(w12.images[k]));
    for (int k = 0; k < n2; k++) wE2.images.push_back(S2.T.incl_right.images[k]);

    // identity of M lifted both ways between the module resolutions
    auto psi21 = lift_through_qis(S2.MtP, S2.Mt.F, S2.Mt.vgen, S1.Mt.F, S1.Mt.Pflat,
                                  S1.Mconc, S1.Mt.v, &w21);
    auto psi12 = lift_through_qis(S1.MtP, S1.Mt.F, S1.Mt.vgen, S2.Mt.F, S2.Mt.Pflat,
                                  S2.Mconc, S2.Mt.v, &w12);
    if (!psi21 || !psi12) throw std::runtime_error("compare: module lift failed");

    // mixed tensor and the mixed resolution of B
    auto Nmix = tensor_sf(S1.MtP, S2.MtP, Emix);
    auto FNmix = flatten_sf(Nmix.P, n_lo, n_hi);
    auto NmixFlat = dgflat_from_sf(FNmix);

    FPModule Bfp_mix{Emix0, 1, {}};
    auto push_rel = [&](const Poly& p) {
        Poly q = Emix0->nf(p);
        if (!q.is_zero()) Bfp_mix.rels.push_back({q});
    };
    for (const auto& g : S1.Bres.vkernel) push_rel(Emix.incl_left.r0.apply(g));
    for (const auto& g : S2.Bres.vkernel) push_rel(Emix.incl_right.r0.apply(g));
    int nr0 = S1.Bres.Btil->ring0->nvars();
    for (int j = 0; j < nr0; j++)
        push_rel(Emix.incl_left.r0.images[j] - Emix.incl_right.r0.images[j]);

    SqComparison C;
    C.Pmix = semifree_module_resolution(Emix.E, dgflat_concentrated(Emix.E, Bfp_mix), p_lo, 0);

    auto a1 = lift_through_qis(C.Pmix.P, C.Pmix.F, C.Pmix.vgen, S1.P.F, S1.P.Pflat,
                               S1.Bconc, S1.P.v, &wE1);
    auto a2 = lift_through_qis(C.Pmix.P, C.Pmix.F, C.Pmix.vgen, S2.P.F, S2.P.Pflat,
                               S2.Bconc, S2.P.v, &wE2);
    if (!a1 || !a2) throw std::runtime_error("compare: resolution lift failed");

    C.mix1 = hom_sf(C.Pmix.P, restrict_flat(S1.NMM, wE1), lo - 1, hi + 1);
    C.mixN = hom_sf(C.Pmix.P, NmixFlat, lo - 1, hi + 1);
    C.mix2 = hom_sf(C.Pmix.P, restrict_flat(S2.NMM, wE2), lo - 1, hi + 1);

    // tensor-side maps 1 (x) psi21 and psi12 (x) 1
    int lg1 = (int)S1.MtP.gens.size(), rg2 = (int)S2.MtP.gens.size();
    std::vector<MElem> g1_images, g2_images;
    for (int i = 0; i < lg1; i++)
        for (int j = 0; j < rg2; j++) {
            MElem yi = S1.Mt.F.from_coords(S2.MtP.gens[j].degree, psi21->gen_images[j]);
            g1_images.push_back(
                S1.MM.tensor_elem(S1.MtP, S1.MtP.gen_elem(i), S1.MtP, yi, S1.T));
            MElem xj = S2.Mt.F.from_coords(S1.MtP.gens[i].degree, psi12->gen_images[i]);
            g2_images.push_back(
                S2.MM.tensor_elem(S2.MtP, xj, S2.MtP, S2.MtP.gen_elem(j), S2.T));
        }
    auto gmap1 = sf_chain_from_gens(Nmix.P, FNmix, g1_images, S1.MM.P, S1.FMM, &wE1);
    auto gmap2 = sf_chain_from_gens(Nmix.P, FNmix, g2_images, S2.MM.P, S2.FMM, &wE2);

    C.leg1 = hom_precompose(S1.hom, S1.P.F, C.mix1, a1->gen_images);
    C.leg2 = hom_precompose(S2.hom, S2.P.F, C.mix2, a2->gen_images);
    C.legN1 = hom_postcompose(C.mixN, C.mix1, gmap1);
    C.legN2 = hom_postcompose(C.mixN, C.mix2, gmap2);

    C.certified = C.leg1.is_chain_map(lo, hi) && C.leg2.is_chain_map(lo, hi) &&
                  C.legN1.is_chain_map(lo, hi) && C.legN2.is_chain_map(lo, hi) &&
                  C.leg1.is_quasi_iso(lo, hi) && C.leg2.is_quasi_iso(lo, hi) &&
                  C.legN1.is_quasi_iso(lo, hi) && C.legN2.is_quasi_iso(lo, hi);
    return C;
}

FPMap SqComparison::induced_iso(int t) const {
    FPMap q1 = leg1.induced_H(t);
    FPMap q2 = leg2.induced_H(t);
    FPMap g1 = legN1.induced_H(t);
    FPMap g2 = legN2.induced_H(t);
    return fpmap_inverse(q2).compose(g2.compose(fpmap_inverse(g1).compose(q1)));
}

SquareLaw square_law(const SqModel& S, const Poly& c) {
    SquareLaw L;
    L.c = c;
    const RingPtr& B = S.u.dst;
    const RingPtr& R0 = S.Bres.Btil->ring0;
    const RingPtr& E0 = S.T.E->ring0;
    Poly ch = B->nf(c).rename_vars(S.Bres.bvar_in_ring0, R0->nvars());
    Poly cl = S.T.incl_left.r0.apply(ch);
    Poly cr = S.T.incl_right.r0.apply(ch);
    L.z = E0->nf(cl * cr - cl * cl);

    int bottom = S.P.lo + 2;
    auto h = sf_null_homotopy(S.P.P, S.P.F, S.P.Pflat, L.z, bottom);
    if (!h) return L;
    L.h = *h;

    // chain certificate on the resolution, away from the truncation edge
    const FCPtr& X = S.P.F.C;
    ChainMap multz{X, X, 0, {}};
    ChainMap zero{X, X, 0, {}};
    Homotopy hfl;
    for (int i = X->lo; i <= X->hi; i++) {
        int n = X->ngens(i);
        std::vector<Vec> mz, zz, hc;
        const auto& bas = S.P.F.basis.at(i);
        for (int g = 0; g < n; g++) {
            Vec e(n, E0->zero());
            e[g] = E0->one();
            Vec ze = e;
            for (auto& p : ze) p = E0->nf(p * L.z);
            mz.push_back(ze);
            zz.push_back(Vec(n, E0->zero()));
            if (i > X->lo) {
                auto [j, mu] = bas[g];
                AlgElem a;
                int md = S.T.E->gmon_degree(mu);
                a.add_term(mu, E0->cst(md % 2 == 0 ? 1 : -1));
                hc.push_back(S.P.Pflat.act_alg(a, S.P.P.gens[j].degree - 1, L.h[j]));
            }
        }
        multz.comp[i] = mz;
        zero.comp[i] = zz;
        if (i > X->lo) hfl.h[i] = hc;
    }
    L.chain_certified = homotopy_verifies(multz, zero, hfl, bottom, 0);

    // exact equality of the two actions on cohomology in the window
    L.cohom_certified = true;
    for (int t = S.lo; t <= S.hi; t++) {
        auto coh = S.hom.C->cohomology(t);
        for (const auto& zc : coh.cocycles) {
            Vec zz2 = zc;
            for (auto& p : zz2) p = E0->nf(p * L.z);
            auto cls = S.hom.C->class_in_H(t, coh, zz2);
            if (!cls || !coh.H.contains(*cls)) {
                L.cohom_certified = false;
                break;
            }
        }
        if (!L.cohom_certified) break;
    }
    return L;
}

SqMorphism sq_morphism(const SqModel& SN, const SqModel& SM, const RingMap& u,
                       std::function<Vec(const Vec&)> phi_eval) {
    if (SM.Bres.Btil->ngv() != 0 || !SM.flat)
        throw std::runtime_error("sq_morphism: target side must resolve trivially");
    if (SN.shift != SM.shift || SN.lo != SM.lo || SN.hi != SM.hi)
        throw std::runtime_error("sq_morphism: window mismatch");
    SqMorphism F;
    F.SN = &SN;
    F.SM = &SM;
    F.phi_eval = std::move(phi_eval);

    const RingPtr& R0B = SM.Bres.Btil->ring0;
    const RingPtr& R0C = SN.Bres.Btil->ring0;
    const RingPtr& EB0 = SM.T.E->ring0;
    const RingPtr& EC0 = SN.T.E->ring0;
    const RingPtr& C = SN.u.dst;

    // degree-0 part of the lifted map, doubled onto the enveloping rings
    std::vector<Poly> ut0;
    for (int j = 0; j < R0B->nvars(); j++)
        ut0.push_back(C->nf(u.apply(SM.Bres.v0.images[j]))
                          .rename_vars(SN.Bres.bvar_in_ring0, R0C->nvars()));
    F.uE0 = RingMap{EB0, EC0, std::vector<Poly>(EB0->nvars(), EC0->zero())};
    for (int j = 0; j < R0B->nvars(); j++) {
        F.uE0.images[single_var_index(SM.T.incl_left.r0.images[j])] =
            EC0->nf(SN.T.incl_left.r0.apply(ut0[j]));
        F.uE0.images[single_var_index(SM.T.incl_right.r0.images[j])] =
            EC0->nf(SN.T.incl_right.r0.apply(ut0[j]));
    }
    DGAMap uE{SM.T.E, SN.T.E, F.uE0, {}};

    // lift of the identity of B between the two resolutions of B
    std::vector<Vec> fgen;
    for (const auto& v : SM.P.vgen) {
        Vec w;
        for (const auto& p : v) w.push_back(EC0->nf(F.uE0.apply(p)));
        fgen.push_back(w);
    }
    auto a = lift_through_qis(SM.P.P, SM.P.F, fgen, SN.P.F, SN.P.Pflat, SN.Bconc,
                              SN.P.v, &uE);
    if (!a) throw std::runtime_error("sq_morphism: resolution lift failed");
    F.alpha = *a;
    return F;
}

Vec SqMorphism::apply(int t, const Vec& psi) const {
    const SqModel& N = *SN;
    const SqModel& M = *SM;
    const DGAPtr& EC = N.T.E;
    const DGAPtr& Ctil = N.Bres.Btil;
    const RingPtr& EC0 = EC->ring0;
    const RingPtr& EB0 = M.T.E->ring0;
    const RingPtr& R0C = Ctil->ring0;
    const RingPtr& R0B = M.Bres.Btil->ring0;
    const RingPtr& B = M.u.dst;
    const RingPtr& C = N.u.dst;
    int mdeg = -N.shift;
    int ngvC = Ctil->ngv();
    int nvC = R0C->nvars();

    // sort the variables of the enveloping algebra into the two factors
    std::vector<int> side(EC0->nvars(), -1), back(EC0->nvars(), -1);
    for (int j = 0; j < nvC; j++) {
        int l = single_var_index(N.T.incl_left.r0.images[j]);
        int r = single_var_index(N.T.incl_right.r0.images[j]);
        side[l] = 0;
        back[l] = j;
        side[r] = 1;
        back[r] = j;
    }
    std::vector<int> gside(EC->ngv(), -1), gback(EC->ngv(), -1);
    auto mark = [&](const DGAMap& incl, int sd) {
        for (int k = 0; k < ngvC; k++) {
            const GMon& g = incl.images[k].t.begin()->first;
            for (int p = 0; p < (int)g.size(); p++)
                if (g[p] != 0) {
                    gside[p] = sd;
                    gback[p] = k;
                }
        }
    };
    mark(N.T.incl_left, 0);
    mark(N.T.incl_right, 1);

    // one tensor factor pushed down to the module and through phi
    auto all_zero = [](const Vec& v) {
        for (const auto& p : v)
            if (!p.is_zero()) return false;
        return true;
    };
    auto factor = [&](const Poly& coef, const GMon& lamC, int gen) -> Vec {
        int dd = N.MtP.gens[gen].degree + Ctil->gmon_degree(lamC);
        MElem m;
        N.MtP.add_term(m, gen, lamC, coef);
        Vec v = N.Mt.F.coords(dd, N.MtP.nf(m));
        Vec w0 = N.Mt.v.apply(dd, v);
        Vec out;
        for (const auto& p : w0) out.push_back(C->nf(N.Bres.v0.apply(p)));
        return out;
    };

    auto comps = N.hom.components(t, psi);
    int mm = 2 * mdeg;
    GMon triv(M.T.E->ngv(), 0);
    int pidx = M.MM.pair_index(0, 0);
    std::vector<Vec> out;
    for (int q = 0; q < (int)M.P.P.gens.size(); q++) {
        int dq = M.P.P.gens[q].degree;
        int s = dq + t;
        int nb = M.NMM.C->ngens(s);
        Vec val(nb, EB0->zero());
        if (nb == 0 || s != mm) {
            out.push_back(val);
            continue;
        }
        int tgt = M.FMM.index.at(s).at({pidx, triv});

        // psi(alpha(e_q)) in the source tensor at degree s
        int nC = N.NMM.C->ngens(s);
        Vec w(nC, EC0->zero());
        const auto& bas = N.P.F.basis.at(dq);
        for (size_t b = 0; b < bas.size(); b++) {
            const Poly& c = alpha.gen_images[q][b];
            if (c.is_zero()) continue;
            auto [jp, mu] = bas[b];
            AlgElem a;
            int md = EC->gmon_degree(mu);
            a.add_term(mu, (t * md) % 2 == 0 ? c : -c);
            Vec img = N.NMM.act_alg(a, t + N.P.P.gens[jp].degree, comps[jp]);
            for (int r = 0; r < nC; r++) w[r] = EC0->nf(w[r] + img[r]);
        }

        if (getenv("DGC_DEBUG_APPLY")) {
            fprintf(stderr, "q=%d s=%d w:", q, s);
            for (auto& p : w) fprintf(stderr, " %s;", p.str(EC0->vars()).c_str());
            fprintf(stderr, "\n");
        }
        // split each term into its two factors and evaluate phi on both
        const auto& nbas = N.FMM.basis.at(s);
        for (int bidx = 0; bidx < nC; bidx++) {
            if (w[bidx].is_zero()) continue;
            auto [pg, mu] = nbas[bidx];
            int gi = pg / N.MM.right_gens, gj = pg % N.MM.right_gens;
            GMon lamE(mu.size(), 0), rhoE(mu.size(), 0);
            GMon lamC(ngvC, 0), rhoC(ngvC, 0);
            for (int k = 0; k < (int)mu.size(); k++) {
                if (mu[k] == 0) continue;
                if (gside[k] == 0) {
                    lamE[k] = mu[k];
                    lamC[gback[k]] = mu[k];
                } else {
                    rhoE[k] = mu[k];
                    rhoC[gback[k]] = mu[k];
                }
            }
            int dL = N.MtP.gens[gi].degree + Ctil->gmon_degree(lamC);
            int dR = N.MtP.gens[gj].degree + Ctil->gmon_degree(rhoC);
            if (dL != mdeg || dR != mdeg) continue;
            auto prod = EC->mul_mon(lamE, rhoE);
            if (!prod) continue;
            int sgn = prod->first;
            if ((Ctil->gmon_degree(rhoC) * N.MtP.gens[gi].degree) % 2 != 0) sgn = -sgn;

            for (const auto& [mon, scal] : w[bidx].terms()) {
                Monomial mL(nvC, 0), mR(nvC, 0);
                for (int v2 = 0; v2 < (int)mon.size(); v2++) {
                    if (mon[v2] == 0) continue;
                    if (side[v2] == 0)
                        mL[back[v2]] += mon[v2];
                    else if (side[v2] == 1)
                        mR[back[v2]] += mon[v2];
                    else
                        throw std::logic_error("unsorted degree-0 variable");
                }
                Poly pl(R0C->base(), nvC), pr(R0C->base(), nvC);
                pl.add_term(mL, scal);
                pr.add_term(mR, Scalar(R0C->base(), 1));
                Vec aL = factor(R0C->nf(pl), lamC, gi);
                if (getenv("DGC_DEBUG_APPLY")) {
                    fprintf(stderr, "  term %s gi=%d gj=%d aL:", w[bidx].str(EC0->vars()).c_str(), gi, gj);
                    for (auto& p : aL) fprintf(stderr, " %s;", p.str(C->vars()).c_str());
                    fprintf(stderr, "\n");
                }
                if (all_zero(aL)) continue;
                Vec aR = factor(R0C->nf(pr), rhoC, gj);
                if (all_zero(aR)) continue;
                Vec bL = phi_eval(aL), bR = phi_eval(aR);
                if (getenv("DGC_DEBUG_APPLY")) {
                    fprintf(stderr, "  bL=%s bR=%s\n", bL[0].str(B->vars()).c_str(),
                            bR[0].str(B->vars()).c_str());
                }
                if ((int)bL.size() != 1 || (int)bR.size() != 1)
                    throw std::runtime_error("sq_morphism: target module must have one generator");
                Poly left = B->nf(bL[0]).rename_vars(M.Bres.bvar_in_ring0, R0B->nvars());
                Poly right = B->nf(bR[0]).rename_vars(M.Bres.bvar_in_ring0, R0B->nvars());
                Poly pb = EB0->nf(M.T.incl_left.r0.apply(left) * M.T.incl_right.r0.apply(right));
                if (sgn < 0) pb = -pb;
                val[tgt] = EB0->nf(val[tgt] + pb);
            }
        }
        out.push_back(val);
    }
    return M.hom.assemble(t, out);
}

} // namespace dgc
