#include "dgcalc/matrix.hpp"

#include <sstream>

namespace dgc {

Mat Mat::identity(const BaseRing& r, int n) {
    Mat I(r, n, n);
    for (int i = 0; i < n; i++) I.at(i, i) = Scalar::one(r);
    return I;
}

Mat Mat::operator*(const Mat& o) const {
    if (n_ != o.m_) throw std::logic_error("matrix shape mismatch in product");
    Mat r(ring_, m_, o.n_);
    for (int i = 0; i < m_; i++)
        for (int k = 0; k < n_; k++) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.n_; j++)
                if (!o.at(k, j).is_zero()) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw std::logic_error("matrix shape mismatch in sum");
    Mat r = *this;
    for (int i = 0; i < m_; i++)
        for (int j = 0; j < n_; j++) r.at(i, j) += o.at(i, j);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    return *this + (o * Scalar(ring_, -1));
}

Mat Mat::operator*(const Scalar& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return m_ == o.m_ && n_ == o.n_ && a_ == o.a_;
}

Mat Mat::transpose() const {
    Mat r(ring_, n_, m_);
    for (int i = 0; i < m_; i++)
        for (int j = 0; j < n_; j++) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::hstack(const Mat& o) const {
    if (m_ != o.m_) throw std::logic_error("hstack row mismatch");
    Mat r(ring_, m_, n_ + o.n_);
    for (int i = 0; i < m_; i++) {
        for (int j = 0; j < n_; j++) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.n_; j++) r.at(i, n_ + j) = o.at(i, j);
    }
    return r;
}

Mat Mat::vstack(const Mat& o) const {
    if (n_ != o.n_) throw std::logic_error("vstack col mismatch");
    Mat r(ring_, m_ + o.m_, n_);
    for (int j = 0; j < n_; j++) {
        for (int i = 0; i < m_; i++) r.at(i, j) = at(i, j);
        for (int i = 0; i < o.m_; i++) r.at(m_ + i, j) = o.at(i, j);
    }
    return r;
}

std::vector<Scalar> Mat::col(int j) const {
    std::vector<Scalar> v;
    v.reserve(m_);
    for (int i = 0; i < m_; i++) v.push_back(at(i, j));
    return v;
}

std::vector<Scalar> Mat::row(int i) const {
    std::vector<Scalar> v;
    v.reserve(n_);
    for (int j = 0; j < n_; j++) v.push_back(at(i, j));
    return v;
}

void Mat::set_col(int j, const std::vector<Scalar>& v) {
    for (int i = 0; i < m_; i++) at(i, j) = v[i];
}

Mat Mat::cols_slice(int j0, int j1) const {
    Mat r(ring_, m_, j1 - j0);
    for (int i = 0; i < m_; i++)
        for (int j = j0; j < j1; j++) r.at(i, j - j0) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& x) const {
    if ((int)x.size() != n_) throw std::logic_error("apply: size mismatch");
    std::vector<Scalar> r(m_, Scalar::zero(ring_));
    for (int i = 0; i < m_; i++)
        for (int j = 0; j < n_; j++)
            if (!at(i, j).is_zero() && !x[j].is_zero()) r[i] += at(i, j) * x[j];
    return r;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (int i = 0; i < m_; i++) {
        os << "[";
        for (int j = 0; j < n_; j++) os << (j ? " " : "") << at(i, j).str();
        os << "]\n";
    }
    return os.str();
}

// ---- field linear algebra ----

RrefResult rref(const Mat& A) {
    if (!A.ring().is_field()) throw std::logic_error("rref needs a field");
    RrefResult res;
    res.R = A;
    res.T = Mat::identity(A.ring(), A.rows());
    int m = A.rows(), n = A.cols();
    int r = 0;
    for (int c = 0; c < n && r < m; c++) {
        int piv = -1;
        for (int i = r; i < m; i++)
            if (!res.R.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < n; j++) std::swap(res.R.at(piv, j), res.R.at(r, j));
            for (int j = 0; j < m; j++) std::swap(res.T.at(piv, j), res.T.at(r, j));
        }
        Scalar inv = res.R.at(r, c).inv();
        for (int j = 0; j < n; j++) res.R.at(r, j) *= inv;
        for (int j = 0; j < m; j++) res.T.at(r, j) *= inv;
        for (int i = 0; i < m; i++) {
            if (i == r || res.R.at(i, c).is_zero()) continue;
            Scalar f = res.R.at(i, c);
            for (int j = 0; j < n; j++) res.R.at(i, j) -= f * res.R.at(r, j);
            for (int j = 0; j < m; j++) res.T.at(i, j) -= f * res.T.at(r, j);
        }
        res.pivots.push_back(c);
        r++;
    }
    res.rank = r;
    return res;
}

int rank_field(const Mat& A) { return rref(A).rank; }

Mat inverse_field(const Mat& A) {
    if (A.rows() != A.cols()) throw std::logic_error("inverse of non-square matrix");
    RrefResult rr = rref(A);
    if (rr.rank != A.rows()) throw std::domain_error("matrix not invertible");
    return rr.T;
}

// ---- integer normal forms ----

namespace {

mpz_class zval(const Scalar& s) { return s.num(); }

// quotient rounding toward zero
Scalar tquo(const Scalar& a, const Scalar& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), zval(a).get_mpz_t(), zval(b).get_mpz_t());
    return Scalar(a.ring(), mpq_class(q));
}

// floor quotient
Scalar fquo(const Scalar& a, const Scalar& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), zval(a).get_mpz_t(), zval(b).get_mpz_t());
    return Scalar(a.ring(), mpq_class(q));
}

mpz_class zabs(const Scalar& s) { return abs(zval(s)); }

void row_op(Mat& M, int dst, int src, const Scalar& f) { // row_dst -= f * row_src
    for (int j = 0; j < M.cols(); j++) M.at(dst, j) -= f * M.at(src, j);
}
void col_op(Mat& M, int dst, int src, const Scalar& f) { // col_dst -= f * col_src
    for (int i = 0; i < M.rows(); i++) M.at(i, dst) -= f * M.at(i, src);
}
void row_swap(Mat& M, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < M.cols(); j++) std::swap(M.at(a, j), M.at(b, j));
}
void col_swap(Mat& M, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < M.rows(); i++) std::swap(M.at(i, a), M.at(i, b));
}
void row_negate(Mat& M, int r) {
    for (int j = 0; j < M.cols(); j++) M.at(r, j) = -M.at(r, j);
}
void col_negate(Mat& M, int c) {
    for (int i = 0; i < M.rows(); i++) M.at(i, c) = -M.at(i, c);
}

} // namespace

SmithResult smith_normal_form(const Mat& M) {
    if (M.ring().kind != BaseKind::ZZ) throw std::logic_error("smith_normal_form needs ZZ");
    SmithResult res;
    res.S = M;
    res.U = Mat::identity(M.ring(), M.rows());
    res.V = Mat::identity(M.ring(), M.cols());
    Mat& S = res.S;
    int m = M.rows(), n = M.cols();
    int t = 0;
    for (; t < std::min(m, n); t++) {
        for (;;) {
            // pivot: smallest |value| in the trailing submatrix, ties by (row, col)
            int pi = -1, pj = -1;
            mpz_class best;
            for (int i = t; i < m; i++)
                for (int j = t; j < n; j++) {
                    if (S.at(i, j).is_zero()) continue;
                    mpz_class a = zabs(S.at(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) { pi = -2; break; }
            row_swap(S, t, pi); row_swap(res.U, t, pi);
            col_swap(S, t, pj); col_swap(res.V, t, pj);

            bool clear = true;
            for (int i = t + 1; i < m; i++) {
                if (S.at(i, t).is_zero()) continue;
                Scalar q = tquo(S.at(i, t), S.at(t, t));
                row_op(S, i, t, q); row_op(res.U, i, t, q);
                if (!S.at(i, t).is_zero()) clear = false;
            }
            for (int j = t + 1; j < n; j++) {
                if (S.at(t, j).is_zero()) continue;
                Scalar q = tquo(S.at(t, j), S.at(t, t));
                col_op(S, j, t, q); col_op(res.V, j, t, q);
                if (!S.at(t, j).is_zero()) clear = false;
            }
            if (!clear) continue;

            // divisibility d_t | everything remaining
            int bi = -1, bj = -1;
            for (int i = t + 1; i < m && bi < 0; i++)
                for (int j = t + 1; j < n; j++) {
                    if (S.at(i, j).is_zero()) continue;
                    mpz_class r;
                    mpz_tdiv_r(r.get_mpz_t(), zval(S.at(i, j)).get_mpz_t(),
                               zval(S.at(t, t)).get_mpz_t());
                    if (r != 0) { bi = i; bj = j; break; }
                }
            if (bi >= 0) {
                Scalar mone(M.ring(), -1);
                row_op(S, t, bi, mone); row_op(res.U, t, bi, mone);
                continue;
            }
            break;
        }
        if (S.at(t, t).is_zero()) break;
        if (zval(S.at(t, t)) < 0) { row_negate(S, t); row_negate(res.U, t); }
    }
    res.rank = 0;
    for (int i = 0; i < std::min(m, n); i++)
        if (!S.at(i, i).is_zero()) res.rank++;
    return res;
}

std::vector<Scalar> SmithResult::invariant_factors() const {
    std::vector<Scalar> f;
    for (int i = 0; i < rank; i++) f.push_back(S.at(i, i));
    return f;
}

Mat hermite_column_form(const Mat& M) {
    if (M.ring().kind != BaseKind::ZZ) throw std::logic_error("hermite needs ZZ");
    Mat H = M;
    int m = H.rows(), n = H.cols();
    int c = 0;
    for (int r = 0; r < m && c < n; r++) {
        for (;;) {
            int pj = -1;
            mpz_class best;
            for (int j = c; j < n; j++) {
                if (H.at(r, j).is_zero()) continue;
                mpz_class a = zabs(H.at(r, j));
                if (pj < 0 || a < best) { best = a; pj = j; }
            }
            if (pj < 0) { pj = -2; break; }
            col_swap(H, c, pj);
            bool clear = true;
            for (int j = c + 1; j < n; j++) {
                if (H.at(r, j).is_zero()) continue;
                col_op(H, j, c, tquo(H.at(r, j), H.at(r, c)));
                if (!H.at(r, j).is_zero()) clear = false;
            }
            if (clear) break;
        }
        if (H.at(r, c).is_zero()) continue;
        if (zval(H.at(r, c)) < 0) col_negate(H, c);
        for (int j = 0; j < c; j++)
            col_op(H, j, c, fquo(H.at(r, j), H.at(r, c)));
        c++;
    }
    return H.cols_slice(0, c);
}

std::vector<Scalar> reduce_mod_lattice(std::vector<Scalar> v, const Mat& H) {
    for (int j = 0; j < H.cols(); j++) {
        int r = -1;
        for (int i = 0; i < H.rows(); i++)
            if (!H.at(i, j).is_zero()) { r = i; break; }
        if (r < 0) continue;
        Scalar q = fquo(v[r], H.at(r, j));
        if (q.is_zero()) continue;
        for (int i = 0; i < H.rows(); i++) v[i] -= q * H.at(i, j);
    }
    return v;
}

// ---- unified solve/kernel ----

Mat kernel_basis(const Mat& A) {
    const BaseRing& R = A.ring();
    if (R.kind == BaseKind::ZZ) {
        SmithResult s = smith_normal_form(A);
        return s.V.cols_slice(s.rank, A.cols());
    }
    RrefResult rr = rref(A);
    int n = A.cols();
    std::vector<bool> is_piv(n, false);
    for (int c : rr.pivots) is_piv[c] = true;
    Mat K(R, n, n - rr.rank);
    int k = 0;
    for (int c = 0; c < n; c++) {
        if (is_piv[c]) continue;
        K.at(c, k) = Scalar::one(R);
        for (int i = 0; i < rr.rank; i++)
            K.at(rr.pivots[i], k) = -rr.R.at(i, c);
        k++;
    }
    return K;
}

std::optional<std::vector<Scalar>> solve(const Mat& A, const std::vector<Scalar>& b) {
    const BaseRing& R = A.ring();
    if ((int)b.size() != A.rows()) throw std::logic_error("solve: size mismatch");
    if (R.kind == BaseKind::ZZ) {
        SmithResult s = smith_normal_form(A);
        std::vector<Scalar> ub(A.rows(), Scalar::zero(R));
        for (int i = 0; i < A.rows(); i++)
            for (int j = 0; j < A.rows(); j++)
                if (!s.U.at(i, j).is_zero()) ub[i] += s.U.at(i, j) * b[j];
        std::vector<Scalar> y(A.cols(), Scalar::zero(R));
        for (int i = 0; i < A.rows(); i++) {
            if (i < s.rank) {
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), zval(ub[i]).get_mpz_t(),
                            zval(s.S.at(i, i)).get_mpz_t());
                if (r != 0) return std::nullopt;
                y[i] = Scalar(R, mpq_class(q));
            } else if (!ub[i].is_zero()) {
                return std::nullopt;
            }
        }
        return s.V.apply(y);
    }
    RrefResult rr = rref(A);
    std::vector<Scalar> tb(A.rows(), Scalar::zero(R));
    for (int i = 0; i < A.rows(); i++)
        for (int j = 0; j < A.rows(); j++)
            if (!rr.T.at(i, j).is_zero()) tb[i] += rr.T.at(i, j) * b[j];
    for (int i = rr.rank; i < A.rows(); i++)
        if (!tb[i].is_zero()) return std::nullopt;
    std::vector<Scalar> x(A.cols(), Scalar::zero(R));
    for (int i = 0; i < rr.rank; i++) x[rr.pivots[i]] = tb[i];
    return x;
}

std::optional<Mat> solve_many(const Mat& A, const Mat& B) {
    Mat X(A.ring(), A.cols(), B.cols());
    for (int j = 0; j < B.cols(); j++) {
        auto x = solve(A, B.col(j));
        if (!x) return std::nullopt;
        X.set_col(j, *x);
    }
    return X;
}

Scalar determinant(const Mat& A) {
    if (A.rows() != A.cols()) throw std::logic_error("determinant of non-square matrix");
    const BaseRing& R = A.ring();
    BaseRing F = R.kind == BaseKind::ZZ ? BaseRing::QQ() : R;
    Mat W(F, A.rows(), A.cols());
    for (int i = 0; i < A.rows(); i++)
        for (int j = 0; j < A.cols(); j++) W.at(i, j) = Scalar(F, A.at(i, j).rat());
    Scalar det = Scalar::one(F);
    int n = W.rows();
    for (int c = 0; c < n; c++) {
        int piv = -1;
        for (int i = c; i < n; i++)
            if (!W.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return Scalar::zero(R);
        if (piv != c) {
            for (int j = 0; j < n; j++) std::swap(W.at(piv, j), W.at(c, j));
            det = -det;
        }
        det *= W.at(c, c);
        Scalar inv = W.at(c, c).inv();
        for (int i = c + 1; i < n; i++) {
            if (W.at(i, c).is_zero()) continue;
            Scalar f = W.at(i, c) * inv;
            for (int j = c; j < n; j++) W.at(i, j) -= f * W.at(c, j);
        }
    }
    return Scalar(R, det.rat());
}

} // namespace dgc
