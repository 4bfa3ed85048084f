#pragma once

#include "dgcalc/scalar.hpp"

#include <optional>
#include <vector>

namespace dgc {

// Dense exact matrix over ZZ, QQ or F_p.
class Mat {
public:
    Mat() : ring_(BaseRing::QQ()), m_(0), n_(0) {}
    Mat(const BaseRing& r, int m, int n)
        : ring_(r), m_(m), n_(n), a_(size_t(m) * n, Scalar::zero(r)) {}

    static Mat identity(const BaseRing& r, int n);

    const BaseRing& ring() const { return ring_; }
    int rows() const { return m_; }
    int cols() const { return n_; }

    Scalar& at(int i, int j) { return a_[size_t(i) * n_ + j]; }
    const Scalar& at(int i, int j) const { return a_[size_t(i) * n_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Scalar& c) const;
    Mat operator-() const { return *this * Scalar(ring_, -1); }
    bool operator==(const Mat& o) const;

    Mat transpose() const;
    Mat hstack(const Mat& o) const;
    Mat vstack(const Mat& o) const;
    std::vector<Scalar> col(int j) const;
    std::vector<Scalar> row(int i) const;
    void set_col(int j, const std::vector<Scalar>& v);
    Mat cols_slice(int j0, int j1) const; // columns [j0, j1)
    bool is_zero() const;

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const; // A x
    std::string str() const;

private:
    BaseRing ring_;
    int m_, n_;
    std::vector<Scalar> a_;
};

// ---- field linear algebra ----

struct RrefResult {
    Mat R;                   // reduced row echelon form
    Mat T;                   // T * A = R, T invertible
    std::vector<int> pivots; // pivot column per pivot row
    int rank = 0;
};

RrefResult rref(const Mat& A);
int rank_field(const Mat& A);
Mat inverse_field(const Mat& A);

// ---- integer normal forms ----

// U * M * V = S, U and V unimodular, S diagonal with s_1 | s_2 | ... >= 0.
struct SmithResult {
    Mat S, U, V;
    int rank = 0;
    std::vector<Scalar> invariant_factors() const;
};

SmithResult smith_normal_form(const Mat& M);

// Column Hermite form of the lattice spanned by the columns: pivot rows
// strictly increasing, pivots positive, entries left of a pivot reduced
// into [0, pivot). Zero columns dropped.
Mat hermite_column_form(const Mat& M);

// canonical representative of v modulo the lattice spanned by columns of H
// (H must be in column Hermite form)
std::vector<Scalar> reduce_mod_lattice(std::vector<Scalar> v, const Mat& H);

// ---- unified solve/kernel (dispatch on base ring) ----

// basis (field) / lattice basis (ZZ) of {x : A x = 0}, as matrix columns
Mat kernel_basis(const Mat& A);

// one solution of A x = b, if any
std::optional<std::vector<Scalar>> solve(const Mat& A, const std::vector<Scalar>& b);

// columnwise solve A X = B
std::optional<Mat> solve_many(const Mat& A, const Mat& B);

Scalar determinant(const Mat& A);

} // namespace dgc
