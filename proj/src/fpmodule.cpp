#include "dgcalc/fpmodule.hpp"

#include <sstream>

namespace dgc {

bool FPModule::contains(const Vec& v) const {
    return R->lift(ngens, rels, v).has_value();
}

bool FPModule::elements_equal(const Vec& v, const Vec& w) const {
    return contains(vec_sub(v, w));
}

bool FPModule::is_zero_module() const {
    for (int i = 0; i < ngens; i++) {
        Vec e(ngens, R->zero());
        e[i] = R->one();
        if (!contains(e)) return false;
    }
    return true;
}

std::optional<Vec> FPModule::express(const std::vector<Vec>& elems, const Vec& target) const {
    std::vector<Vec> cols = elems;
    for (const auto& r : rels) cols.push_back(r);
    auto sol = R->lift(ngens, cols, target);
    if (!sol) return std::nullopt;
    return Vec(sol->begin(), sol->begin() + elems.size());
}

std::optional<long> FPModule::dimension() const {
    auto sm = R->std_monomials(ngens, rels);
    if (!sm) return std::nullopt;
    return (long)sm->size();
}

FPModule::ZInvariants FPModule::z_invariants() const {
    if (!R->zz_regime()) throw std::logic_error("z_invariants needs the ZZ regime");
    int r = (int)R->zbasis().size();
    const Mat& H = R->zlattice();
    int nc = (int)rels.size() + ngens * H.cols();
    Mat M(R->base(), ngens * r, nc);
    int col = 0;
    for (const auto& rel : rels) {
        for (int g = 0; g < ngens; g++) {
            auto co = R->z_coords(R->reduce_monic(rel[g]));
            for (int u = 0; u < r; u++) M.at(g * r + u, col) = co[u];
        }
        col++;
    }
    for (int g = 0; g < ngens; g++)
        for (int k = 0; k < H.cols(); k++) {
            for (int u = 0; u < r; u++) M.at(g * r + u, col) = H.at(u, k);
            col++;
        }
    SmithResult s = smith_normal_form(M);
    ZInvariants out;
    out.free_rank = ngens * r - s.rank;
    for (const auto& f : s.invariant_factors())
        if (f.num() > 1) out.torsion.push_back(f.num());
    return out;
}

FPModule FPModule::pruned() const {
    FPModule M = *this;
    // normal-form and drop zero relations
    for (;;) {
        std::vector<Vec> rr;
        for (const auto& rel : M.rels) {
            Vec r2(M.ngens, M.R->zero());
            bool nz = false;
            for (int i = 0; i < M.ngens; i++) {
                r2[i] = M.R->nf(rel[i]);
                nz = nz || !r2[i].is_zero();
            }
            if (nz) rr.push_back(r2);
        }
        M.rels = rr;
        // look for a relation with a unit coefficient
        int ri = -1, gi = -1;
        Poly inv = M.R->zero();
        for (size_t k = 0; k < M.rels.size() && ri < 0; k++)
            for (int i = 0; i < M.ngens; i++) {
                auto u = M.R->try_invert(M.rels[k][i]);
                if (u) { ri = (int)k; gi = i; inv = *u; break; }
            }
        if (ri < 0) {
            // drop relations in the span of the others
            for (size_t k = 0; k < M.rels.size();) {
                std::vector<Vec> others;
                for (size_t j = 0; j < M.rels.size(); j++)
                    if (j != k) others.push_back(M.rels[j]);
                if (M.R->lift(M.ngens, others, M.rels[k]))
                    M.rels.erase(M.rels.begin() + k);
                else
                    k++;
            }
            return M;
        }
        // g_i = -inv * sum_{j != i} rel_j g_j ; substitute into other relations
        Vec piv = M.rels[ri];
        FPModule N{M.R, M.ngens - 1, {}};
        for (size_t k = 0; k < M.rels.size(); k++) {
            if ((int)k == ri) continue;
            const Vec& rel = M.rels[k];
            Vec nr;
            Poly c = rel[gi] * inv;
            for (int j = 0; j < M.ngens; j++) {
                if (j == gi) continue;
                nr.push_back(M.R->nf(rel[j] - c * piv[j]));
            }
            N.rels.push_back(nr);
        }
        M = N;
    }
}

FPModule FPModule::base_change(const RingMap& f) const {
    if (f.src.get() != R.get()) throw std::logic_error("base_change: wrong source ring");
    FPModule M{f.dst, ngens, {}};
    for (const auto& rel : rels) {
        Vec r2 = f.apply_vec(rel);
        if (!vec_is_zero(r2)) M.rels.push_back(r2);
    }
    return M;
}

std::string FPModule::str() const {
    std::ostringstream os;
    os << "gens " << ngens << ", rels";
    if (rels.empty()) os << " none";
    for (const auto& rel : rels) {
        os << " (";
        for (int i = 0; i < ngens; i++) os << (i ? ", " : "") << R->elem_str(rel[i]);
        os << ")";
    }
    return os.str();
}

Vec FPMap::apply(const Vec& v) const {
    Vec out(dst.ngens, dst.R->zero());
    for (int i = 0; i < src.ngens; i++)
        for (int j = 0; j < dst.ngens; j++) out[j] += v[i] * images[i][j];
    for (auto& p : out) p = dst.R->nf(p);
    return out;
}

bool FPMap::well_defined() const {
    for (const auto& rel : src.rels)
        if (!dst.contains(apply(rel))) return false;
    return true;
}

std::vector<Vec> FPMap::kernel_gens() const {
    std::vector<Vec> cols = images;
    for (const auto& r : dst.rels) cols.push_back(r);
    auto K = src.R->kernel(dst.ngens, cols);
    std::vector<Vec> out;
    for (const auto& k : K) {
        Vec v(k.begin(), k.begin() + src.ngens);
        if (!vec_is_zero(v)) out.push_back(v);
    }
    return out;
}

bool FPMap::is_injective() const {
    for (const auto& k : kernel_gens())
        if (!src.contains(k)) return false;
    return true;
}

bool FPMap::is_surjective() const {
    std::vector<Vec> cols = images;
    for (int j = 0; j < dst.ngens; j++) {
        Vec e(dst.ngens, dst.R->zero());
        e[j] = dst.R->one();
        if (!dst.express(cols, e)) return false;
    }
    return true;
}

FPMap FPMap::compose(const FPMap& inner) const {
    FPMap r{inner.src, dst, {}};
    for (const auto& im : inner.images) r.images.push_back(apply(im));
    return r;
}

} // namespace dgc
