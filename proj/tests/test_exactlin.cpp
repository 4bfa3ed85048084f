#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcalc/matrix.hpp"

#include <numeric>
#include <random>

using namespace dgc;

namespace {

Mat make(const BaseRing& R, int m, int n, std::initializer_list<long> vals) {
    Mat A(R, m, n);
    auto it = vals.begin();
    for (int i = 0; i < m; i++)
        for (int j = 0; j < n; j++) A.at(i, j) = Scalar(R, *it++);
    return A;
}

Mat random_zmat(std::mt19937& rng, int m, int n, int lim) {
    Mat A(BaseRing::ZZ(), m, n);
    std::uniform_int_distribution<int> d(-lim, lim);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < n; j++) A.at(i, j) = Scalar(BaseRing::ZZ(), d(rng));
    return A;
}

// independent oracle for invariant factors: gcds of k x k minors
std::vector<mpz_class> minor_gcd_factors(const Mat& A) {
    int m = A.rows(), n = A.cols();
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    for (int k = 1; k <= std::min(m, n); k++) {
        std::vector<int> ri(k), ci(k);
        std::iota(ri.begin(), ri.end(), 0);
        mpz_class g = 0;
        std::function<void(int, int)> rows_loop;
        std::vector<int> rsel, csel;
        std::function<void(int)> pick_cols = [&](int start) {
            if ((int)csel.size() == k) {
                Mat S(BaseRing::ZZ(), k, k);
                for (int a = 0; a < k; a++)
                    for (int b = 0; b < k; b++) S.at(a, b) = A.at(rsel[a], csel[b]);
                mpz_class d = determinant(S).num();
                g = gcd(g, d);
                return;
            }
            for (int c = start; c < n; c++) { csel.push_back(c); pick_cols(c + 1); csel.pop_back(); }
        };
        std::function<void(int)> pick_rows = [&](int start) {
            if ((int)rsel.size() == k) { pick_cols(0); return; }
            for (int r = start; r < m; r++) { rsel.push_back(r); pick_rows(r + 1); rsel.pop_back(); }
        };
        pick_rows(0);
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

} // namespace

TEST_CASE("smith normal form of diag(2,3)") {
    Mat A = make(BaseRing::ZZ(), 2, 2, {2, 0, 0, 3});
    SmithResult s = smith_normal_form(A);
    CHECK(s.rank == 2);
    CHECK(s.S.at(0, 0) == Scalar(BaseRing::ZZ(), 1));
    CHECK(s.S.at(1, 1) == Scalar(BaseRing::ZZ(), 6));
    CHECK(s.U * A * s.V == s.S);
}

TEST_CASE("kernel of [[1,1]]") {
    Mat A = make(BaseRing::ZZ(), 1, 2, {1, 1});
    Mat K = kernel_basis(A);
    CHECK(K.cols() == 1);
    CHECK((A * K).is_zero());
    // basis vector is (1,-1) up to sign
    CHECK(K.at(0, 0) == -K.at(1, 0));
    CHECK(K.at(0, 0).is_unit());
}

TEST_CASE("solve 2x = 3 over ZZ and QQ") {
    Mat Az = make(BaseRing::ZZ(), 1, 1, {2});
    CHECK(!solve(Az, {Scalar(BaseRing::ZZ(), 3)}).has_value());
    Mat Aq = make(BaseRing::QQ(), 1, 1, {2});
    auto x = solve(Aq, {Scalar(BaseRing::QQ(), 3)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar(BaseRing::QQ(), mpq_class(3, 2)));
}

TEST_CASE("smith properties on random matrices") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 60; iter++) {
        int m = 1 + rng() % 4, n = 1 + rng() % 4;
        Mat A = random_zmat(rng, m, n, 8);
        SmithResult s = smith_normal_form(A);
        CHECK(s.U * A * s.V == s.S);
        Scalar du = determinant(s.U), dv = determinant(s.V);
        CHECK(du.is_unit());
        CHECK(dv.is_unit());
        auto f = s.invariant_factors();
        for (size_t i = 0; i + 1 < f.size(); i++) {
            mpz_class r;
            mpz_tdiv_r(r.get_mpz_t(), f[i + 1].num().get_mpz_t(), f[i].num().get_mpz_t());
            CHECK(r == 0);
        }
        for (int i = 0; i < s.S.rows(); i++)
            for (int j = 0; j < s.S.cols(); j++)
                if (i != j) CHECK(s.S.at(i, j).is_zero());
        // independent oracle: gcds of k x k minors
        auto oracle = minor_gcd_factors(A);
        REQUIRE(oracle.size() == f.size());
        for (size_t i = 0; i < f.size(); i++) CHECK(f[i].num() == oracle[i]);
    }
}

TEST_CASE("integer kernel and solve on random matrices") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 60; iter++) {
        int m = 1 + rng() % 4, n = 1 + rng() % 4;
        Mat A = random_zmat(rng, m, n, 6);
        Mat K = kernel_basis(A);
        CHECK((A * K).is_zero());
        // kernel basis has full expected rank
        SmithResult s = smith_normal_form(A);
        CHECK(K.cols() == n - s.rank);
        // A * (random combination) = b must be solvable integrally
        Mat X = random_zmat(rng, n, 1, 5);
        auto sol = solve(A, (A * X).col(0));
        REQUIRE(sol.has_value());
        std::vector<Scalar> bx = A.apply(*sol);
        CHECK(bx == (A * X).col(0));
    }
}

TEST_CASE("hermite column form and lattice reduction") {
    std::mt19937 rng(999);
    for (int iter = 0; iter < 40; iter++) {
        int m = 1 + rng() % 4, n = 1 + rng() % 5;
        Mat A = random_zmat(rng, m, n, 7);
        Mat H = hermite_column_form(A);
        // every original column lies in the lattice spanned by H
        for (int j = 0; j < n; j++) {
            auto r = reduce_mod_lattice(A.col(j), H);
            for (auto& x : r) CHECK(x.is_zero());
        }
        // H columns lie in the lattice spanned by A
        for (int j = 0; j < H.cols(); j++)
            CHECK(solve(A, H.col(j)).has_value());
        // reduction is idempotent
        Mat v = random_zmat(rng, m, 1, 20);
        auto r1 = reduce_mod_lattice(v.col(0), H);
        auto r2 = reduce_mod_lattice(r1, H);
        CHECK(r1 == r2);
    }
}

TEST_CASE("field elimination over QQ and F5") {
    for (BaseRing R : {BaseRing::QQ(), BaseRing::Fp(5)}) {
        Mat A = make(R, 3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
        RrefResult rr = rref(A);
        CHECK(rr.rank == 2);
        CHECK(rr.T * A == rr.R);
        Mat K = kernel_basis(A);
        CHECK(K.cols() == 1);
        CHECK((A * K).is_zero());
    }
    Mat B = make(BaseRing::QQ(), 2, 2, {1, 1, 0, 1});
    Mat Binv = inverse_field(B);
    CHECK(B * Binv == Mat::identity(BaseRing::QQ(), 2));
}

TEST_CASE("determinant") {
    Mat A = make(BaseRing::ZZ(), 2, 2, {3, 1, 4, 2});
    CHECK(determinant(A) == Scalar(BaseRing::ZZ(), 2));
    Mat B = make(BaseRing::Fp(5), 2, 2, {2, 1, 1, 3});
    CHECK(determinant(B) == Scalar(BaseRing::Fp(5), 0));
}
