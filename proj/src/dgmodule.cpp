#include "dgcalc/dgmodule.hpp"

#include <sstream>

namespace dgc {

MElem DGModule::gen_elem(int j) const {
    MElem m;
    m.emplace(std::make_pair(j, GMon(E->ngv(), 0)), E->ring0->one());
    return m;
}

void DGModule::add_term(MElem& m, int gen, const GMon& mon, const Poly& c) const {
    if (c.is_zero()) return;
    auto key = std::make_pair(gen, mon);
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
}

MElem DGModule::add(const MElem& a, const MElem& b) const {
    MElem r = a;
    for (const auto& [k, c] : b) add_term(r, k.first, k.second, c);
    return r;
}

MElem DGModule::sub(const MElem& a, const MElem& b) const {
    MElem r = a;
    for (const auto& [k, c] : b) add_term(r, k.first, k.second, -c);
    return r;
}

MElem DGModule::scale(const MElem& a, const Poly& c) const {
    MElem r;
    for (const auto& [k, cc] : a) add_term(r, k.first, k.second, cc * c);
    return r;
}

MElem DGModule::act(const AlgElem& a, const MElem& m) const {
    MElem r;
    for (const auto& [am, ac] : a.t)
        for (const auto& [k, c] : m) {
            auto p = E->mul_mon(am, k.second);
            if (!p) continue;
            Poly cc = ac * c;
            if (p->first < 0) cc = -cc;
            add_term(r, k.first, p->second, cc);
        }
    return r;
}

MElem DGModule::d(const MElem& m) const {
    MElem r;
    for (const auto& [k, c] : m) {
        auto [j, mon] = k;
        // d(c mon) tensor e_j
        AlgElem a;
        a.add_term(mon, c);
        AlgElem da = E->d(a);
        for (const auto& [dm, dc] : da.t) add_term(r, j, dm, dc);
        // +/- c mon . d(e_j)
        int s = E->gmon_degree(mon) % 2 == 0 ? 1 : -1;
        AlgElem front;
        front.add_term(mon, s > 0 ? c : -c);
        r = add(r, act(front, dgen[j]));
    }
    return r;
}

MElem DGModule::nf(const MElem& m) const {
    MElem r;
    for (const auto& [k, c] : m) add_term(r, k.first, k.second, E->ring0->nf(c));
    return r;
}

int DGModule::elem_degree(const MElem& m) const {
    int deg = 0;
    bool seen = false;
    for (const auto& [k, c] : m) {
        int d = E->gmon_degree(k.second) + gens[k.first].degree;
        if (seen && d != deg) throw std::logic_error("inhomogeneous module element");
        deg = d;
        seen = true;
    }
    return deg;
}

bool DGModule::validate() const {
    for (size_t j = 0; j < gens.size(); j++) {
        if (!dgen[j].empty() && elem_degree(dgen[j]) != gens[j].degree + 1) return false;
        MElem dd = nf(d(dgen[j]));
        if (!dd.empty()) return false;
    }
    return true;
}

std::string DGModule::elem_str(const MElem& m) const {
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : m) {
        if (!first) os << " + ";
        first = false;
        os << "(" << E->ring0->elem_str(c) << ")";
        for (int v = 0; v < E->ngv(); v++) {
            if (k.second[v] == 0) continue;
            os << "*" << E->gvars[v].name;
            if (k.second[v] > 1) os << "^" << k.second[v];
        }
        os << "*" << gens[k.first].name;
    }
    return os.str();
}

DGModule algebra_as_module(const DGAPtr& E) {
    DGModule M;
    M.E = E;
    M.gens.push_back({"1", 0});
    M.dgen.push_back({});
    return M;
}

SFTensor tensor_sf(const DGModule& Ml, const DGModule& Mr, const TensorDGA& T) {
    SFTensor out;
    out.right_gens = (int)Mr.gens.size();
    DGModule P;
    P.E = T.E;
    for (const auto& gl : Ml.gens)
        for (const auto& gr : Mr.gens)
            P.gens.push_back({gl.name + "(x)" + gr.name, gl.degree + gr.degree});
    P.dgen.resize(P.gens.size());
    for (size_t i = 0; i < Ml.gens.size(); i++)
        for (size_t j = 0; j < Mr.gens.size(); j++) {
            MElem dg;
            // d(g_i) tensor g_j
            for (const auto& [k, c] : Ml.dgen[i]) {
                AlgElem a;
                a.add_term(k.second, c);
                AlgElem lifted = T.incl_left.apply(a);
                MElem term = P.act(lifted, P.gen_elem(out.pair_index(k.first, (int)j)));
                dg = P.add(dg, term);
            }
            // (-1)^{d_i} g_i tensor d(g_j), extra (-1)^{|b| d_i} from moving b
            int di = Ml.gens[i].degree;
            for (const auto& [k, c] : Mr.dgen[j]) {
                AlgElem b;
                b.add_term(k.second, c);
                int bdeg = Mr.E->gmon_degree(k.second);
                AlgElem lifted = T.incl_right.apply(b);
                MElem term = P.act(lifted, P.gen_elem(out.pair_index((int)i, k.first)));
                int sgn = ((di * (1 + bdeg)) % 2 + 2) % 2 == 0 ? 1 : -1;
                term = P.scale(term, P.E->ring0->cst(sgn));
                dg = P.add(dg, term);
            }
            P.dgen[out.pair_index((int)i, (int)j)] = P.nf(dg);
        }
    out.P = P;
    return out;
}

MElem SFTensor::tensor_elem(const DGModule& Ml, const MElem& x, const DGModule& Mr,
                            const MElem& y, const TensorDGA& T) const {
    MElem out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            AlgElem a;
            a.add_term(kx.second, cx);
            AlgElem b;
            b.add_term(ky.second, cy);
            int bdeg = Mr.E->gmon_degree(ky.second);
            int di = Ml.gens[kx.first].degree;
            AlgElem prod = P.E->mul(T.incl_left.apply(a), T.incl_right.apply(b));
            MElem term = P.act(prod, P.gen_elem(pair_index(kx.first, ky.first)));
            if (((bdeg * di) % 2 + 2) % 2 != 0)
                term = P.scale(term, P.E->ring0->cst(-1));
            out = P.add(out, term);
        }
    return P.nf(out);
}

Vec Flattening::coords(int deg, const MElem& m) const {
    auto bit = basis.find(deg);
    const RingPtr& R = M.E->ring0;
    if (bit == basis.end()) {
        if (!m.empty()) throw std::logic_error("element outside flattening window");
        return {};
    }
    Vec v(bit->second.size(), R->zero());
    auto iit = index.find(deg);
    for (const auto& [k, c] : m) {
        if (iit == index.end()) throw std::logic_error("basis element missing in flattening");
        auto it = iit->second.find(k);
        if (it == iit->second.end())
            throw std::logic_error("basis element missing in flattening");
        v[it->second] += c;
    }
    for (auto& p : v) p = R->nf(p);
    return v;
}

MElem Flattening::from_coords(int deg, const Vec& v) const {
    MElem m;
    const auto& b = basis.at(deg);
    for (size_t i = 0; i < v.size(); i++)
        M.add_term(m, b[i].first, b[i].second, v[i]);
    return m;
}

Flattening flatten_sf(const DGModule& M, int lo, int hi) {
    Flattening F;
    F.M = M;
    F.lo = lo;
    F.hi = hi;
    const RingPtr& R = M.E->ring0;
    auto C = std::make_shared<FComplex>();
    C->R = R;
    C->lo = lo;
    C->hi = hi;
    for (int t = lo; t <= hi; t++) {
        std::vector<std::pair<int, GMon>> b;
        for (size_t j = 0; j < M.gens.size(); j++) {
            int need = t - M.gens[j].degree;
            if (need > 0) continue;
            for (const auto& mon : M.E->gmons_of_degree(need))
                b.push_back({(int)j, mon});
        }
        F.basis[t] = b;
        for (size_t i = 0; i < b.size(); i++) F.index[t][b[i]] = (int)i;
        C->term[t] = FPModule::free_module(R, (int)b.size());
    }
    for (int t = lo; t < hi; t++) {
        std::vector<Vec> cols;
        for (const auto& [j, mon] : F.basis[t]) {
            MElem e;
            M.add_term(e, j, mon, R->one());
            cols.push_back(F.coords(t + 1, M.nf(M.d(e))));
        }
        C->dmat[t] = cols;
    }
    F.C = C;
    return F;
}

Vec DGFlat::act_gvar(int k, int i, const Vec& x) const {
    int tgt = i + E->gvars[k].degree;
    const FPModule& Tt = C->T(tgt);
    Vec out(Tt.ngens, C->R->zero());
    auto it = act.find(i);
    if (it == act.end()) return out;
    const auto& mats = it->second[k];
    for (size_t g = 0; g < mats.size(); g++)
        for (int j = 0; j < Tt.ngens; j++) out[j] += x[g] * mats[g][j];
    for (auto& p : out) p = C->R->nf(p);
    return out;
}

Vec DGFlat::act_alg(const AlgElem& a, int i, const Vec& x) const {
    int deg;
    if (!E->homogeneous(a, &deg)) throw std::logic_error("act_alg needs homogeneous element");
    const FPModule& Tt = C->T(i + deg);
    Vec out(Tt.ngens, C->R->zero());
    for (const auto& [mon, c] : a.t) {
        Vec cur = x;
        int at = i;
        for (int k = E->ngv() - 1; k >= 0; k--)
            for (int e = 0; e < mon[k]; e++) {
                cur = act_gvar(k, at, cur);
                at += E->gvars[k].degree;
            }
        for (size_t j = 0; j < out.size(); j++) out[j] += cur[j] * c;
    }
    for (auto& p : out) p = C->R->nf(p);
    return out;
}

DGFlat dgflat_from_sf(const Flattening& F) {
    DGFlat D;
    D.E = F.M.E;
    D.C = F.C;
    const RingPtr& R = D.E->ring0;
    for (int t = F.lo; t <= F.hi; t++) {
        auto bit = F.basis.find(t);
        if (bit == F.basis.end()) continue;
        std::vector<std::vector<Vec>> per_var;
        for (int k = 0; k < D.E->ngv(); k++) {
            std::vector<Vec> mats;
            int tgt = t + D.E->gvars[k].degree;
            for (const auto& [j, mon] : bit->second) {
                MElem e;
                F.M.add_term(e, j, mon, R->one());
                MElem xe = F.M.act(D.E->gvar(k), e);
                if (F.basis.count(tgt))
                    mats.push_back(F.coords(tgt, xe));
                else
                    mats.push_back({});
            }
            per_var.push_back(mats);
        }
        D.act[t] = per_var;
    }
    return D;
}

DGFlat dgflat_concentrated(const DGAPtr& E, const FPModule& M0, int deg) {
    DGFlat D;
    D.E = E;
    auto C = std::make_shared<FComplex>();
    C->R = E->ring0;
    C->lo = deg;
    C->hi = deg;
    C->term[deg] = M0;
    D.C = C;
    std::vector<std::vector<Vec>> per_var;
    for (int k = 0; k < E->ngv(); k++)
        per_var.push_back(std::vector<Vec>(M0.ngens, Vec{}));
    D.act[deg] = per_var;
    return D;
}

Vec HomFlat::assemble(int t, const std::vector<Vec>& comps) const {
    const FPModule& Tt = C->T(t);
    Vec out(Tt.ngens, C->R->zero());
    const auto& off = offset.at(t);
    for (size_t j = 0; j < comps.size(); j++) {
        if (off[j] < 0) continue;
        for (size_t g = 0; g < comps[j].size(); g++) out[off[j] + g] = comps[j][g];
    }
    return out;
}

std::vector<Vec> HomFlat::components(int t, const Vec& phi) const {
    std::vector<Vec> comps;
    const auto& off = offset.at(t);
    for (size_t j = 0; j < P.gens.size(); j++) {
        int dj = P.gens[j].degree;
        const FPModule& Nt = N.C->T(t + dj);
        Vec c(Nt.ngens, C->R->zero());
        if (off[j] >= 0)
            for (int g = 0; g < Nt.ngens; g++) c[g] = phi[off[j] + g];
        comps.push_back(c);
    }
    return comps;
}

HomFlat hom_sf(const DGModule& P, const DGFlat& N, int lo, int hi) {
    HomFlat H;
    H.E = N.E;
    H.P = P;
    H.N = N;
    H.lo = lo;
    H.hi = hi;
    const RingPtr& R = N.C->R;
    auto C = std::make_shared<FComplex>();
    C->R = R;
    C->lo = lo;
    C->hi = hi;
    for (int t = lo; t <= hi; t++) {
        std::vector<int> off;
        int total = 0;
        std::vector<Vec> rels;
        for (size_t j = 0; j < P.gens.size(); j++) {
            int s = t + P.gens[j].degree;
            const FPModule& Nt = N.C->T(s);
            if (Nt.ngens == 0 || s < N.C->lo || s > N.C->hi) {
                off.push_back(-1);
                continue;
            }
            off.push_back(total);
            total += Nt.ngens;
        }
        FPModule M{R, total, {}};
        for (size_t j = 0; j < P.gens.size(); j++) {
            if (off[j] < 0) continue;
            int s = t + P.gens[j].degree;
            const FPModule& Nt = N.C->T(s);
            for (const auto& r : Nt.rels) {
                Vec rr(total, R->zero());
                for (int g = 0; g < Nt.ngens; g++) rr[off[j] + g] = r[g];
                M.rels.push_back(rr);
            }
        }
        H.offset[t] = off;
        C->term[t] = M;
    }
    H.C = C;

    // differential: d(phi)_j = d_N(phi_j) - (-1)^t sum_k (-1)^{|a_jk| t} a_jk . phi_k
    for (int t = lo; t < hi; t++) {
        std::vector<Vec> cols;
        const auto& off = H.offset.at(t);
        for (size_t j = 0; j < P.gens.size(); j++) {
            if (off[j] < 0) continue;
            int s = t + P.gens[j].degree;
            const FPModule& Nt = N.C->T(s);
            for (int g = 0; g < Nt.ngens; g++) {
                // phi has single component phi_j = e_g
                std::vector<Vec> out_comps;
                for (size_t m = 0; m < P.gens.size(); m++) {
                    int sm = t + 1 + P.gens[m].degree;
                    const FPModule& Nm = N.C->T(sm);
                    Vec acc(Nm.ngens, R->zero());
                    if ((int)m == (int)j && sm == s + 1) {
                        Vec e(Nt.ngens, R->zero());
                        e[g] = R->one();
                        acc = vec_add(acc, N.C->d_apply(s, e));
                    }
                    // action part: a_mj entries of d(e_m) on component j
                    for (const auto& [key, c] : P.dgen[m]) {
                        if (key.first != (int)j) continue;
                        AlgElem a;
                        a.add_term(key.second, c);
                        int adeg = P.E->gmon_degree(key.second);
                        // a maps N^{t+dj} into N^{t+dj+adeg} = N^{t+1+dm}
                        Vec e(Nt.ngens, R->zero());
                        e[g] = R->one();
                        Vec img = N.act_alg(a, s, e);
                        // total sign: -(-1)^t (-1)^{adeg * t}
                        if (((t * (1 + adeg)) % 2 + 2) % 2 == 0)
                            acc = vec_sub(acc, img);
                        else
                            acc = vec_add(acc, img);
                    }
                    out_comps.push_back(acc);
                }
                cols.push_back(H.assemble(t + 1, out_comps));
            }
        }
        C->dmat[t] = cols;
    }
    H.C = C;
    return H;
}

DGFlat HomFlat::as_dgflat(const DGAMap& iota) const {
    DGFlat D;
    D.E = iota.src;
    D.C = C;
    const RingPtr& R = C->R;
    for (int t = lo; t <= hi; t++) {
        std::vector<std::vector<Vec>> per_var;
        const auto& off = offset.at(t);
        for (int k = 0; k < iota.src->ngv(); k++) {
            std::vector<Vec> mats;
            int dk = iota.src->gvars[k].degree;
            for (size_t j = 0; j < P.gens.size(); j++) {
                if (off[j] < 0) continue;
                int s = t + P.gens[j].degree;
                const FPModule& Nt = N.C->T(s);
                for (int g = 0; g < Nt.ngens; g++) {
                    Vec e(Nt.ngens, R->zero());
                    e[g] = R->one();
                    Vec img = N.act_alg(iota.images[k], s, e);
                    std::vector<Vec> comps(P.gens.size());
                    for (size_t m = 0; m < P.gens.size(); m++) {
                        int sm = t + dk + P.gens[m].degree;
                        comps[m] = Vec(N.C->T(sm).ngens, R->zero());
                    }
                    if (t + dk >= lo && t + dk <= hi) {
                        comps[j] = img;
                        mats.push_back(assemble(t + dk, comps));
                    } else {
                        mats.push_back({});
                    }
                }
            }
            per_var.push_back(mats);
        }
        D.act[t] = per_var;
    }
    return D;
}

DGFlat restrict_flat(const DGFlat& N, const DGAMap& w) {
    DGFlat D;
    D.E = w.src;
    D.C = N.C;
    const RingPtr& R = N.C->R;
    for (int t = N.C->lo; t <= N.C->hi; t++) {
        std::vector<std::vector<Vec>> per_var;
        for (int k = 0; k < w.src->ngv(); k++) {
            std::vector<Vec> mats;
            int n = N.C->ngens(t);
            for (int g = 0; g < n; g++) {
                Vec e(n, R->zero());
                e[g] = R->one();
                mats.push_back(N.act_alg(w.images[k], t, e));
            }
            per_var.push_back(mats);
        }
        D.act[t] = per_var;
    }
    return D;
}

ChainMap sf_chain_from_gens(const DGModule& src, const Flattening& Fsrc,
                            const std::vector<MElem>& gen_images,
                            const DGModule& dst, const Flattening& Fdst,
                            const DGAMap* via) {
    const RingPtr& R = dst.E->ring0;
    ChainMap f{Fsrc.C, Fdst.C, 0, {}};
    for (int i = Fsrc.lo; i <= Fsrc.hi; i++) {
        auto it = Fsrc.basis.find(i);
        if (it == Fsrc.basis.end()) continue;
        std::vector<Vec> comps;
        for (const auto& [j, mu] : it->second) {
            AlgElem a;
            a.add_term(mu, src.E->ring0->one());
            if (via) a = via->apply(a);
            MElem img = dst.act(a, gen_images[j]);
            if (Fdst.basis.count(i))
                comps.push_back(Fdst.coords(i, dst.nf(img)));
            else
                comps.push_back(Vec{});
        }
        f.comp[i] = comps;
    }
    return f;
}

ChainMap hom_postcompose(const HomFlat& Hsrc, const HomFlat& Hdst, const ChainMap& g) {
    const RingPtr& R = Hsrc.C->R;
    ChainMap f{Hsrc.C, Hdst.C, 0, {}};
    int ng = (int)Hsrc.P.gens.size();
    for (int t = Hsrc.lo; t <= Hsrc.hi; t++) {
        const auto& off = Hsrc.offset.at(t);
        std::vector<Vec> cols;
        for (int j = 0; j < ng; j++) {
            if (off[j] < 0) continue;
            int s = t + Hsrc.P.gens[j].degree;
            int n = Hsrc.N.C->ngens(s);
            for (int gi = 0; gi < n; gi++) {
                Vec e(n, R->zero());
                e[gi] = R->one();
                std::vector<Vec> comps(ng);
                for (int m = 0; m < ng; m++)
                    comps[m] = Vec(Hdst.N.C->ngens(t + Hdst.P.gens[m].degree), R->zero());
                comps[j] = g.apply(s, e);
                cols.push_back(Hdst.assemble(t, comps));
            }
        }
        f.comp[t] = cols;
    }
    return f;
}

ChainMap hom_precompose(const HomFlat& Hsrc, const Flattening& FP,
                        const HomFlat& Hdst, const std::vector<Vec>& alpha_gen) {
    const RingPtr& R = Hsrc.C->R;
    ChainMap f{Hsrc.C, Hdst.C, 0, {}};
    int ng = (int)Hsrc.P.gens.size();
    int ng2 = (int)Hdst.P.gens.size();
    for (int t = Hsrc.lo; t <= Hsrc.hi; t++) {
        const auto& off = Hsrc.offset.at(t);
        std::vector<Vec> cols;
        for (int j0 = 0; j0 < ng; j0++) {
            if (off[j0] < 0) continue;
            int s = t + Hsrc.P.gens[j0].degree;
            int n = Hsrc.N.C->ngens(s);
            for (int g0 = 0; g0 < n; g0++) {
                Vec e(n, R->zero());
                e[g0] = R->one();
                // value of phi o alpha on each generator q of the new source
                std::vector<Vec> comps;
                for (int q = 0; q < ng2; q++) {
                    int dq = Hdst.P.gens[q].degree;
                    Vec acc(Hsrc.N.C->ngens(t + dq), R->zero());
                    const auto& bas = FP.basis.at(dq);
                    for (size_t b = 0; b < bas.size(); b++) {
                        const Poly& c = alpha_gen[q][b];
                        if (c.is_zero()) continue;
                        auto [jp, mu] = bas[b];
                        if (jp != j0) continue;
                        // phi(mu e_j0) = (-1)^{t |mu|} mu . phi(e_j0)
                        AlgElem a;
                        int md = Hsrc.P.E->gmon_degree(mu);
                        a.add_term(mu, (t * md) % 2 == 0 ? c : -c);
                        Vec img = Hsrc.N.act_alg(a, s, e);
                        for (size_t r = 0; r < acc.size(); r++)
                            acc[r] = R->nf(acc[r] + img[r]);
                    }
                    comps.push_back(acc);
                }
                cols.push_back(Hdst.assemble(t, comps));
            }
        }
        f.comp[t] = cols;
    }
    return f;
}

} // namespace dgc
