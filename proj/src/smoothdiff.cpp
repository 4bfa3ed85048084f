#include "dgcalc/smoothdiff.hpp"

#include "dgcalc/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgc {

namespace {

// ascending k-subsets of {0..n-1}
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; i++) cur[i] = i;
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

int subset_index(const std::vector<std::vector<int>>& ss, const std::vector<int>& s) {
    auto it = std::find(ss.begin(), ss.end(), s);
    if (it == ss.end()) throw std::logic_error("subset not found");
    return (int)(it - ss.begin());
}

// jacobian relation rows of the differentials
std::vector<Vec> kaehler_rels(const RingMap& u) {
    const RingPtr& B = u.dst;
    int k = B->nvars();
    std::vector<Vec> rels;
    auto push = [&](const Poly& f) {
        Vec row;
        bool nz = false;
        for (int i = 0; i < k; i++) {
            Poly d = B->nf(derivative(f, i));
            if (!d.is_zero()) nz = true;
            row.push_back(d);
        }
        if (nz) rels.push_back(row);
    };
    for (const auto& f : B->ideal()) push(f);
    for (const auto& g : u.images) push(B->nf(g));
    return rels;
}

} // namespace

Poly derivative(const Poly& p, int i) {
    Poly out(p.base(), p.nvars());
    for (const auto& [m, c] : p.terms()) {
        if (i >= (int)m.size() || m[i] == 0) continue;
        Monomial m2 = m;
        m2[i]--;
        out.add_term(m2, c * Scalar(p.base(), m[i]));
    }
    return out;
}

KaehlerModule kaehler(const RingMap& u) {
    KaehlerModule K;
    K.u = u;
    const RingPtr& B = u.dst;
    K.omega = FPModule{B, B->nvars(), kaehler_rels(u)};
    if (B->base().is_field()) {
        bool constant = true;
        Mat rm(B->base(), (int)K.omega.rels.size(), K.omega.ngens);
        for (size_t r = 0; r < K.omega.rels.size() && constant; r++)
            for (int i = 0; i < K.omega.ngens; i++) {
                const Poly& p = K.omega.rels[r][i];
                if (!p.is_constant()) {
                    constant = false;
                    break;
                }
                rm.at((int)r, i) = p.constant_term();
            }
        if (constant) K.rank = K.omega.ngens - rank_field(rm);
    }
    return K;
}

FPModule omega_power(const RingMap& u, int n) {
    if (n < 0) throw std::domain_error("negative exterior power");
    const RingPtr& B = u.dst;
    if (n == 0) return FPModule::free_module(B, 1);
    int k = B->nvars();
    auto gens = subsets(k, n);
    FPModule out{B, (int)gens.size(), {}};
    auto rows = kaehler_rels(u);
    for (const auto& row : rows)
        for (const auto& T : subsets(k, n - 1)) {
            Vec rel(out.ngens, B->zero());
            bool nz = false;
            for (int i = 0; i < k; i++) {
                if (std::find(T.begin(), T.end(), i) != T.end()) continue;
                if (row[i].is_zero()) continue;
                std::vector<int> S = T;
                S.push_back(i);
                std::sort(S.begin(), S.end());
                int pos = (int)(std::find(S.begin(), S.end(), i) - S.begin());
                Poly c = pos % 2 == 0 ? row[i] : -row[i];
                rel[subset_index(gens, S)] = B->nf(rel[subset_index(gens, S)] + c);
                nz = true;
            }
            if (nz) out.rels.push_back(rel);
        }
    return out;
}

bool is_regular_sequence(const RingPtr& R, const std::vector<Poly>& a) {
    int n = (int)a.size();
    if (n == 0) return true;
    auto K = koszul(R, a);
    auto F = flatten_sf(algebra_as_module(K), -n, 0);
    for (int i = -n; i <= -1; i++)
        if (!F.C->cohomology(i).H.is_zero_module()) return false;
    return true;
}

FCPtr koszul_dual(const RingPtr& R, const std::vector<Poly>& a, const FPModule& M) {
    int n = (int)a.size();
    auto C = std::make_shared<FComplex>();
    C->R = R;
    C->lo = 0;
    C->hi = n;
    std::vector<std::vector<std::vector<int>>> ss;
    for (int p = 0; p <= n; p++) ss.push_back(subsets(n, p));
    for (int p = 0; p <= n; p++) {
        int blocks = (int)ss[p].size();
        FPModule T{R, blocks * M.ngens, {}};
        for (int b = 0; b < blocks; b++)
            for (const auto& r : M.rels) {
                Vec row(T.ngens, R->zero());
                for (int m = 0; m < M.ngens; m++) row[b * M.ngens + m] = r[m];
                T.rels.push_back(row);
            }
        C->term[p] = T;
    }
    // (d phi)(e_{S'}) = -(-1)^p phi(d e_{S'})
    for (int p = 0; p < n; p++) {
        std::vector<Vec> cols;
        for (int b = 0; b < (int)ss[p].size(); b++)
            for (int m = 0; m < M.ngens; m++) {
                Vec img(C->term[p + 1].ngens, R->zero());
                for (int b2 = 0; b2 < (int)ss[p + 1].size(); b2++) {
                    const auto& S2 = ss[p + 1][b2];
                    for (int j = 0; j < p + 1; j++) {
                        std::vector<int> S = S2;
                        S.erase(S.begin() + j);
                        if (S != ss[p][b]) continue;
                        int sgn = ((p + j) % 2 == 0) ? -1 : 1;
                        Poly c = R->nf(a[S2[j]] * R->cst(sgn));
                        img[b2 * M.ngens + m] = R->nf(img[b2 * M.ngens + m] + c);
                    }
                }
                cols.push_back(img);
            }
        C->dmat[p] = cols;
    }
    return C;
}

FPModule ext_via_koszul(const RingPtr& R, const std::vector<Poly>& a, const FPModule& M,
                        int p) {
    if (!is_regular_sequence(R, a))
        throw std::runtime_error("ext_via_koszul: sequence is not regular");
    int n = (int)a.size();
    if (p < 0 || p > n) return FPModule{R, 0, {}};
    return koszul_dual(R, a, M)->cohomology(p).H;
}

Vec fraction_coords(const FCPtr& D, const FPModule& M, const GeneralizedFraction& fr) {
    int n = (int)fr.a.size();
    Vec out(D->T(n).ngens, D->R->zero());
    // the top term has a single block, dual to e_{a_1} ^ ... ^ e_{a_n}
    for (int m = 0; m < M.ngens; m++) out[m] = D->R->nf(fr.mu[m]);
    return out;
}

Poly poly_det(const RingPtr& R, const std::vector<Vec>& m) {
    int n = (int)m.size();
    if (n == 0) return R->one();
    if (n == 1) return R->nf(m[0][0]);
    Poly out = R->zero();
    for (int j = 0; j < n; j++) {
        if (m[0][j].is_zero()) continue;
        std::vector<Vec> minor;
        for (int i = 1; i < n; i++) {
            Vec row;
            for (int k = 0; k < n; k++)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Poly c = R->nf(m[0][j] * poly_det(R, minor));
        out = R->nf(j % 2 == 0 ? out + c : out - c);
    }
    return out;
}

GeneralizedFraction fraction_change_of_sequence(const RingPtr& R,
                                                const GeneralizedFraction& fr,
                                                const std::vector<Vec>& g) {
    int n = (int)fr.a.size();
    if ((int)g.size() != n) throw std::domain_error("matrix size mismatch");
    Poly det = poly_det(R, g);
    // det must be invertible modulo the denominator ideal
    std::vector<Vec> cols{{det}};
    for (const auto& ai : fr.a) cols.push_back({ai});
    if (!R->lift(1, cols, {R->one()}))
        throw std::domain_error("change of sequence is not invertible");
    GeneralizedFraction out;
    for (int i = 0; i < n; i++) {
        Poly ai = R->zero();
        for (int j = 0; j < n; j++) ai = R->nf(ai + g[i][j] * fr.a[j]);
        out.a.push_back(ai);
    }
    for (const auto& mu : fr.mu) out.mu.push_back(R->nf(det * mu));
    return out;
}

FundamentalIso fundamental_iso(const RingMap& u, std::optional<Chart> chart) {
    const RingPtr& B = u.dst;
    auto K = kaehler(u);
    if (!K.rank) throw std::runtime_error("fundamental_iso: rank of the differentials unknown");
    int n = (int)*K.rank;

    FundamentalIso out;
    auto T = tensor_rings(u, u);
    out.Be = T.ring;
    out.incl_left = T.incl_left;
    out.incl_right = T.incl_right;
    out.n = n;
    const RingPtr& Be = out.Be;

    out.diag = RingMap{Be, B, std::vector<Poly>(Be->nvars(), B->zero())};
    auto var_of = [&](const Poly& p) {
        if (p.terms().size() != 1) throw std::logic_error("expected a variable");
        const Monomial& m = p.terms().begin()->first;
        for (int i = 0; i < (int)m.size(); i++)
            if (m[i] == 1) return i;
        throw std::logic_error("expected a variable");
    };
    for (int j = 0; j < B->nvars(); j++) {
        out.diag.images[var_of(T.incl_left.images[j])] = B->var(j);
        out.diag.images[var_of(T.incl_right.images[j])] = B->var(j);
    }

    if (chart) {
        if (!B->equal(chart->s, B->one()))
            throw std::runtime_error("fundamental_iso: localized charts not supported");
        out.b = chart->b;
    } else {
        for (int j = 0; j < B->nvars(); j++)
            out.b.push_back(Be->nf(T.incl_left.images[j] - T.incl_right.images[j]));
    }
    if ((int)out.b.size() != n)
        throw std::runtime_error("fundamental_iso: chart length differs from the rank");
    bool regular = is_regular_sequence(Be, out.b);
    if (!regular) throw std::runtime_error("fundamental_iso: chart sequence is not regular");

    out.omega_n = omega_power(u, n);
    int N2 = Be->nvars();
    auto KBe = kaehler(RingMap{u.src, Be, [&] {
                            std::vector<Poly> im;
                            for (const auto& p : u.images) im.push_back(T.incl_left.apply(p));
                            return im;
                        }()});
    if (!KBe.rank || *KBe.rank != 2 * n)
        throw std::runtime_error("fundamental_iso: enveloping ring is not smooth of rank 2n");

    // Omega^{2n} of B^e is free of rank one; classes land in its Koszul dual
    FPModule M1 = FPModule::free_module(Be, 1);
    out.dual = koszul_dual(Be, out.b, M1);
    out.ext_n = out.dual->cohomology(n);

    // rows of the top form d(b) ^ p2*(d x_{S}): the determinant of the
    // stacked coefficient matrix is the fraction numerator
    std::vector<Vec> drows;
    for (const auto& bi : out.b) {
        Vec row;
        for (int v = 0; v < N2; v++) row.push_back(Be->nf(derivative(bi, v)));
        drows.push_back(row);
    }
    auto gens = subsets(B->nvars(), n);
    for (const auto& S : gens) {
        std::vector<Vec> rows = drows;
        for (int i : S) {
            Vec row(N2, Be->zero());
            row[var_of(T.incl_right.images[i])] = Be->one();
            rows.push_back(row);
        }
        Poly w = poly_det(Be, rows);
        GeneralizedFraction fr{out.b, {w}};
        auto cls = out.dual->class_in_H(n, out.ext_n, fraction_coords(out.dual, M1, fr));
        if (!cls) throw std::runtime_error("fundamental_iso: fraction is not a cocycle class");
        out.matrix.push_back(*cls);
    }

    // push the target down to B along the diagonal and package the map
    FPModule HB = out.ext_n.H.base_change(out.diag);
    out.as_map = FPMap{out.omega_n, HB, {}};
    for (const auto& row : out.matrix) out.as_map.images.push_back(out.diag.apply_vec(row));
    out.certified = regular && out.as_map.is_iso();
    return out;
}

EtaleDecomposition etale_decomposition(const RingMap& u) {
    const RingPtr& B = u.dst;
    auto K = kaehler(u);
    if (!K.omega.is_zero_module())
        throw std::runtime_error("etale_decomposition: differentials do not vanish");

    EtaleDecomposition out;
    auto T = tensor_rings(u, u);
    out.Be = T.ring;
    out.incl_left = T.incl_left;
    out.incl_right = T.incl_right;
    const RingPtr& Be = out.Be;

    out.diag = RingMap{Be, B, std::vector<Poly>(Be->nvars(), B->zero())};
    auto var_of = [&](const Poly& p) {
        const Monomial& m = p.terms().begin()->first;
        for (int i = 0; i < (int)m.size(); i++)
            if (m[i] == 1) return i;
        throw std::logic_error("expected a variable");
    };
    for (int j = 0; j < B->nvars(); j++) {
        out.diag.images[var_of(T.incl_left.images[j])] = B->var(j);
        out.diag.images[var_of(T.incl_right.images[j])] = B->var(j);
    }

    std::vector<Poly> J;
    for (int j = 0; j < B->nvars(); j++)
        J.push_back(Be->nf(T.incl_left.images[j] - T.incl_right.images[j]));

    // annihilator of the diagonal ideal, then its unit element
    std::vector<Vec> ann;
    if (J.empty()) {
        ann = {{Be->one()}};
    } else {
        Vec col;
        for (const auto& g : J) col.push_back(g);
        ann = Be->kernel((int)J.size(), {col});
    }
    if (ann.empty()) throw std::runtime_error("etale_decomposition: empty annihilator");
    int r = (int)ann.size();
    std::vector<Vec> cols;
    Vec target;
    for (int k = 0; k < r; k++) target.push_back(ann[k][0]);
    for (int i = 0; i < r; i++) {
        Vec c;
        for (int k = 0; k < r; k++) c.push_back(Be->nf(ann[i][0] * ann[k][0]));
        cols.push_back(c);
    }
    auto y = Be->lift(r, cols, target);
    if (!y) throw std::runtime_error("etale_decomposition: no unit in the annihilator");
    Poly e = Be->zero();
    for (int i = 0; i < r; i++) e = Be->nf(e + (*y)[i] * ann[i][0]);
    out.e = e;

    out.idempotent = Be->is_zero_elem(e * e - e);
    out.kills_diagonal = true;
    for (const auto& g : J)
        if (!Be->is_zero_elem(g * e)) out.kills_diagonal = false;
    out.diag_one = B->is_zero_elem(out.diag.apply(e) - B->one());
    out.section = true;
    for (int j = 0; j < B->nvars(); j++)
        if (!B->is_zero_elem(out.diag.apply(Be->nf(e * T.incl_left.images[j])) - B->var(j)))
            out.section = false;
    out.Bprime = FPModule{Be, 1, {{e}}};
    return out;
}

} // namespace dgc
