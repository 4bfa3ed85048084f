#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace dgc {

enum class BaseKind { ZZ, QQ, Fp };

struct BaseRing {
    BaseKind kind = BaseKind::QQ;
    unsigned long p = 0;

    bool is_field() const { return kind != BaseKind::ZZ; }
    bool operator==(const BaseRing& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const BaseRing& o) const { return !(*this == o); }
    std::string str() const;

    static BaseRing ZZ() { return {BaseKind::ZZ, 0}; }
    static BaseRing QQ() { return {BaseKind::QQ, 0}; }
    static BaseRing Fp(unsigned long p) { return {BaseKind::Fp, p}; }
};

// Exact scalar in ZZ, QQ or F_p, tagged with its base ring.
class Scalar {
public:
    Scalar() : ring_(BaseRing::QQ()), v_(0) {}
    Scalar(const BaseRing& r, const mpq_class& v) : ring_(r), v_(v) { normalize(); }
    Scalar(const BaseRing& r, long v) : ring_(r), v_(v) { normalize(); }

    static Scalar zero(const BaseRing& r) { return Scalar(r, 0); }
    static Scalar one(const BaseRing& r) { return Scalar(r, 1); }

    const BaseRing& ring() const { return ring_; }
    const mpq_class& rat() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator+(const Scalar& o) const { check(o); return Scalar(ring_, v_ + o.v_); }
    Scalar operator-(const Scalar& o) const { check(o); return Scalar(ring_, v_ - o.v_); }
    Scalar operator*(const Scalar& o) const { check(o); return Scalar(ring_, v_ * o.v_); }
    Scalar operator-() const { return Scalar(ring_, -v_); }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return ring_ == o.ring_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    bool is_unit() const;
    Scalar inv() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    // exact division in ZZ; throws if not divisible
    Scalar divide_exact(const Scalar& o) const;

    std::string str() const;

private:
    void normalize();
    void check(const Scalar& o) const {
        if (ring_ != o.ring_) throw std::logic_error("scalar base ring mismatch");
    }
    BaseRing ring_;
    mpq_class v_;
};

} // namespace dgc
