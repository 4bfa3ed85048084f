#include "dgcalc/scalar.hpp"

namespace dgc {

std::string BaseRing::str() const {
    switch (kind) {
        case BaseKind::ZZ: return "ZZ";
        case BaseKind::QQ: return "QQ";
        case BaseKind::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

void Scalar::normalize() {
    v_.canonicalize();
    switch (ring_.kind) {
        case BaseKind::QQ:
            break;
        case BaseKind::ZZ:
            if (v_.get_den() != 1)
                throw std::domain_error("non-integer scalar in ZZ");
            break;
        case BaseKind::Fp: {
            mpz_class p(ring_.p);
            mpz_class den = v_.get_den();
            mpz_class num = v_.get_num();
            if (den != 1) {
                mpz_class dinv;
                if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
                    throw std::domain_error("denominator not invertible mod p");
                num *= dinv;
            }
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
            v_ = mpq_class(r);
            break;
        }
    }
}

bool Scalar::is_unit() const {
    if (is_zero()) return false;
    if (ring_.kind == BaseKind::ZZ) return v_ == 1 || v_ == -1;
    return true;
}

Scalar Scalar::inv() const {
    if (!is_unit()) throw std::domain_error("scalar not invertible: " + str());
    if (ring_.kind == BaseKind::Fp) {
        mpz_class p(ring_.p), a = num(), r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::domain_error("not invertible mod p");
        return Scalar(ring_, mpq_class(r));
    }
    return Scalar(ring_, 1 / v_);
}

Scalar Scalar::divide_exact(const Scalar& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (ring_.kind != BaseKind::ZZ) return *this / o;
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num().get_mpz_t(), o.num().get_mpz_t());
    if (r != 0) throw std::domain_error("inexact integer division");
    return Scalar(ring_, mpq_class(q));
}

std::string Scalar::str() const {
    return v_.get_str();
}

} // namespace dgc
