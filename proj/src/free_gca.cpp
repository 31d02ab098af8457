#include "rho/free_gca.hpp"

#include "rho/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace rho {

bool Monomial::is_unit() const
{
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

namespace {

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

TextTerm parse_term(std::string_view body, bool negative, std::string_view whole)
{
    TextTerm t;
    Rational coef(negative ? -1 : 1);
    bool imaginary = false;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t star = body.find('*', start);
        std::string_view f = body.substr(start, star == std::string_view::npos ? star : star - start);
        if (f.empty())
            throw ParseError("empty factor in '" + std::string(whole) + "'");
        if (std::isdigit(static_cast<unsigned char>(f[0]))) {
            coef *= Scalar::parse(f).re();
        } else if (f == "i") {
            if (imaginary)
                throw ParseError("repeated i in '" + std::string(whole) + "'");
            imaginary = true;
        } else {
            std::size_t caret = f.find('^');
            std::string_view name = f.substr(0, caret);
            int exp = 1;
            if (caret != std::string_view::npos) {
                std::string_view e = f.substr(caret + 1);
                if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    throw ParseError("bad exponent in '" + std::string(whole) + "'");
                exp = std::stoi(std::string(e));
                if (exp < 1)
                    throw ParseError("exponent must be positive in '" + std::string(whole) + "'");
            }
            if (!is_identifier(name))
                throw ParseError("bad name '" + std::string(name) + "' in '" + std::string(whole) + "'");
            t.factors.emplace_back(std::string(name), exp);
        }
        if (star == std::string_view::npos)
            break;
        start = star + 1;
    }
    t.coefficient = imaginary ? Scalar(Rational(0), coef) : Scalar(coef);
    return t;
}

} // namespace

std::vector<TextTerm> parse_terms(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw ParseError("empty polynomial");
    if (s == "0")
        return {};
    std::vector<TextTerm> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        } else if (pos != 0) {
            throw ParseError("expected + or - in '" + s + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-')
            ++end;
        if (end == pos)
            throw ParseError("empty term in '" + s + "'");
        terms.push_back(parse_term(std::string_view(s).substr(pos, end - pos), negative, s));
        pos = end;
    }
    return terms;
}

FreeGCA::FreeGCA(std::vector<Generator> generators, int cap) : cap_(cap)
{
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (!is_identifier(g.name) || g.name == "i")
            throw PreconditionError("invalid generator name '" + g.name + "'");
        if (!names.insert(g.name).second)
            throw PreconditionError("duplicate generator name '" + g.name + "'");
        if (g.degree() < 1)
            throw PreconditionError("generator '" + g.name + "' must have total degree >= 1");
    }
    if (cap < 0)
        throw PreconditionError("negative degree cap");
    std::stable_sort(generators.begin(), generators.end(),
                     [](const Generator& a, const Generator& b) { return a.degree() < b.degree(); });
    generators_ = std::move(generators);
}

bool FreeGCA::finite() const
{
    return std::all_of(generators_.begin(), generators_.end(), [](const Generator& g) { return g.odd(); });
}

int FreeGCA::top_degree() const
{
    if (!finite())
        return cap_;
    int sum = 0;
    for (const auto& g : generators_)
        sum += g.degree();
    return std::min(sum, cap_);
}

std::optional<std::size_t> FreeGCA::index(std::string_view name) const
{
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (generators_[g].name == name)
            return g;
    return std::nullopt;
}

Monomial FreeGCA::generator(std::size_t g) const
{
    Monomial m = unit();
    m.exponents.at(g) = 1;
    return m;
}

void FreeGCA::check(const Monomial& m) const
{
    if (m.exponents.size() != generators_.size())
        throw PreconditionError("monomial does not belong to this algebra");
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (m.exponents[g] < 0 || (generators_[g].odd() && m.exponents[g] > 1))
            throw PreconditionError("invalid exponent in monomial");
}

int FreeGCA::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t g = 0; g < generators_.size(); ++g)
        d += m.exponents[g] * generators_[g].degree();
    return d;
}

Bidegree FreeGCA::bidegree(const Monomial& m) const
{
    Bidegree b;
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        b.p += m.exponents[g] * generators_[g].bidegree.p;
        b.q += m.exponents[g] * generators_[g].bidegree.q;
    }
    return b;
}

int FreeGCA::word_length(const Monomial& m) const
{
    return std::accumulate(m.exponents.begin(), m.exponents.end(), 0);
}

SignedMonomial FreeGCA::multiply(const Monomial& a, const Monomial& b) const
{
    check(a);
    check(b);
    if (degree(a) + degree(b) > cap_)
        throw PreconditionError("product exceeds degree cap " + std::to_string(cap_));
    const std::size_t n = generators_.size();
    // Each odd factor of b moves left past the odd factors of a that sit later
    // in canonical order.
    int swaps = 0;
    int odd_in_a_after = 0;
    for (std::size_t k = n; k-- > 0;) {
        if (!generators_[k].odd())
            continue;
        if (a.exponents[k] && b.exponents[k])
            return {};
        if (b.exponents[k])
            swaps += odd_in_a_after;
        if (a.exponents[k])
            ++odd_in_a_after;
    }
    SignedMonomial r;
    r.sign = (swaps % 2 == 0) ? 1 : -1;
    r.monomial.exponents.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        r.monomial.exponents[k] = a.exponents[k] + b.exponents[k];
    return r;
}

std::vector<Monomial> FreeGCA::basis_in_degree(int n) const
{
    if (n > cap_)
        throw PreconditionError("degree " + std::to_string(n) + " beyond cap " + std::to_string(cap_));
    std::vector<Monomial> out;
    if (n < 0)
        return out;
    Monomial current = unit();
    const std::size_t count = generators_.size();
    // Depth-first over generators, larger exponents first.
    auto rec = [&](auto&& self, std::size_t g, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        if (g == count)
            return;
        int d = generators_[g].degree();
        int max_e = generators_[g].odd() ? 1 : remaining / d;
        max_e = std::min(max_e, remaining / d);
        for (int e = max_e; e >= 0; --e) {
            current.exponents[g] = e;
            self(self, g + 1, remaining - e * d);
        }
        current.exponents[g] = 0;
    };
    rec(rec, 0, n);
    return out;
}

Poly FreeGCA::multiply(const Poly& a, const Poly& b) const
{
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            SignedMonomial s = multiply(ma, mb);
            if (s.sign == 0)
                continue;
            add_term(out, s.monomial, s.sign > 0 ? ca * cb : -(ca * cb));
        }
    return out;
}

std::string FreeGCA::to_string(const Monomial& m) const
{
    std::string s;
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        if (m.exponents[g] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += generators_[g].name;
        if (m.exponents[g] > 1)
            s += "^" + std::to_string(m.exponents[g]);
    }
    return s.empty() ? "1" : s;
}

std::string FreeGCA::to_string(const Poly& p) const
{
    std::string s;
    for (const auto& [m, c] : p) {
        if (c.is_zero())
            continue;
        std::string mono = to_string(m);
        std::string term;
        Scalar coef = c;
        bool negative = false;
        // pull a leading sign out so terms join with + / -
        if (coef.is_real() && sgn(coef.re()) < 0) {
            negative = true;
            coef = -coef;
        } else if (sgn(coef.re()) == 0 && sgn(coef.im()) < 0) {
            negative = true;
            coef = -coef;
        }
        if (!coef.is_real() && sgn(coef.re()) != 0) {
            // a+b*i: split into two terms
            Scalar re_part(coef.re());
            Scalar im_part(Rational(0), coef.im());
            std::string a = FreeGCA::to_string(Poly{{m, negative ? -re_part : re_part}});
            std::string b = FreeGCA::to_string(Poly{{m, negative ? -im_part : im_part}});
            if (!s.empty() && a[0] != '-')
                s += "+";
            s += a;
            s += (b[0] == '-' ? "" : "+") + b;
            continue;
        }
        std::string c_text;
        if (coef.is_real()) {
            if (!(coef.re() == 1))
                c_text = coef.re().get_str();
        } else {
            c_text = coef.im() == 1 ? "i" : coef.im().get_str() + "*i";
        }
        if (c_text.empty())
            term = mono;
        else if (mono == "1")
            term = c_text;
        else
            term = c_text + "*" + mono;
        if (negative)
            s += "-";
        else if (!s.empty())
            s += "+";
        s += term;
    }
    return s.empty() ? "0" : s;
}

Poly FreeGCA::parse(std::string_view text) const
{
    Poly out;
    for (const auto& t : parse_terms(text)) {
        Poly term{{unit(), t.coefficient}};
        for (const auto& [name, exp] : t.factors) {
            auto g = index(name);
            if (!g)
                throw ParseError("unknown generator '" + name + "'");
            Poly factor{{generator(*g), Scalar(1)}};
            for (int k = 0; k < exp; ++k)
                term = multiply(term, factor);
        }
        out = add(out, term);
    }
    return out;
}

bool operator==(const FreeGCA& a, const FreeGCA& b)
{
    if (a.cap_ != b.cap_ || a.generators_.size() != b.generators_.size())
        return false;
    for (std::size_t g = 0; g < a.generators_.size(); ++g)
        if (a.generators_[g].name != b.generators_[g].name || a.generators_[g].bidegree != b.generators_[g].bidegree)
            return false;
    return true;
}

void add_term(Poly& p, const Monomial& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            p.erase(it);
    }
}

Poly add(const Poly& a, const Poly& b)
{
    Poly out(a);
    for (const auto& [m, c] : b)
        add_term(out, m, c);
    return out;
}

Poly scale(const Poly& p, const Scalar& s)
{
    Poly out;
    for (const auto& [m, c] : p)
        add_term(out, m, c * s);
    return out;
}

} // namespace rho
