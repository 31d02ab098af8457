#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rho {

using Rational = mpq_class;

/// Coefficient field of an algebra.  Real-rational data lives in Q; anything
/// touching the imaginary unit needs QI (the Gaussian rationals Q(i)).
enum class Field { Q, QI };

std::string to_string(Field f);
Field field_from_string(std::string_view s);

/// Exact element of Q(i).  Elements of Q are the ones with zero imaginary part,
/// so one type serves both fields.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |z|^2, always rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Scalar inverse() const;

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text: "p/q", "p/q*i", "a+b*i", "a-b*i".
    std::string to_string() const;
    /// Inverse of to_string; also accepts "i", "-i" and surrounding blanks.
    static Scalar parse(std::string_view text);

private:
    Rational re_;
    Rational im_;
};

inline Scalar sign(int exponent) { return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1); }

} // namespace rho
