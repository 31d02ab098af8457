#include "rho/scalar.hpp"

#include "rho/errors.hpp"

#include <cctype>

namespace rho {

std::string to_string(Field f)
{
    return f == Field::Q ? "Q" : "Q(i)";
}

Field field_from_string(std::string_view s)
{
    if (s == "Q")
        return Field::Q;
    if (s == "Q(i)")
        return Field::QI;
    throw ParseError("unknown scalar field '" + std::string(s) + "'");
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero scalar");
    if (sgn(im_) == 0)
        return Scalar(Rational(1) / re_);
    Rational n = norm();
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0)
        im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0)
        im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero scalar");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        if (sgn(im_) != 0)
            im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::to_string() const
{
    if (sgn(im_) == 0)
        return re_.get_str();
    std::string im_part;
    if (im_ == 1)
        im_part = "i";
    else if (im_ == -1)
        im_part = "-i";
    else
        im_part = im_.get_str() + "*i";
    if (sgn(re_) == 0)
        return im_part;
    if (sgn(im_) > 0)
        return re_.get_str() + "+" + im_part;
    return re_.get_str() + im_part;
}

namespace {

Rational parse_rational(std::string_view s, std::string_view whole)
{
    if (s.empty())
        throw ParseError("empty number in '" + std::string(whole) + "'");
    std::size_t k = 0;
    if (s[0] == '+' || s[0] == '-')
        k = 1;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t j = k; j < s.size(); ++j) {
        char c = s[j];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digit_after : digit_before) = true;
        } else if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else {
            throw ParseError("bad rational '" + std::string(s) + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw ParseError("bad rational '" + std::string(s) + "'");
    std::string body(s[0] == '+' ? s.substr(1) : s);
    Rational r;
    if (r.set_str(body, 10) != 0)
        throw ParseError("bad rational '" + std::string(s) + "'");
    if (seen_slash && r.get_den() == 0)
        throw ParseError("zero denominator in '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

/// Parses "i", "-i", "+i", "q*i", "q".  Returns (value, is_imaginary).
std::pair<Rational, bool> parse_part(std::string_view s, std::string_view whole)
{
    if (s == "i" || s == "+i")
        return {Rational(1), true};
    if (s == "-i")
        return {Rational(-1), true};
    if (s.size() > 2 && s.substr(s.size() - 2) == "*i")
        return {parse_rational(s.substr(0, s.size() - 2), whole), true};
    return {parse_rational(s, whole), false};
}

} // namespace

Scalar Scalar::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw ParseError("empty scalar");
    // split at a sign that is not the leading one
    std::size_t split = std::string::npos;
    for (std::size_t j = 1; j < s.size(); ++j)
        if ((s[j] == '+' || s[j] == '-') && s[j - 1] != '/')
            split = j;
    if (split == std::string::npos) {
        auto [v, imag] = parse_part(s, text);
        return imag ? Scalar(Rational(0), v) : Scalar(v);
    }
    auto [a, a_imag] = parse_part(std::string_view(s).substr(0, split), text);
    auto [b, b_imag] = parse_part(std::string_view(s).substr(split), text);
    if (a_imag || !b_imag)
        throw ParseError("bad Gaussian rational '" + std::string(text) + "'");
    return Scalar(a, b);
}

} // namespace rho
