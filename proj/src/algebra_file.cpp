#include "rho/algebra_file.hpp"

#include "rho/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rho {

namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, std::set<std::string>>& allowed_fields()
{
    static const std::map<std::string, std::set<std::string>> fields = [] {
        std::set<std::string> common{"kind", "name", "scalars", "generators"};
        auto with = [&](std::initializer_list<const char*> extra) {
            std::set<std::string> s = common;
            for (const char* e : extra)
                s.insert(e);
            return s;
        };
        return std::map<std::string, std::set<std::string>>{
            {"free-dga", with({"differential", "cap", "trace", "kahler_class"})},
            {"tabular-dga", with({"differential", "products", "trace", "kahler_class"})},
            {"bicomplex", with({"presentation", "differential", "differential_c", "products", "metric"})},
            {"frobenius", with({"n", "products", "trace", "kahler_class", "rational_basis"})},
            {"cy-package", with({"n", "products", "trace", "kahler_class", "rational_basis", "omega", "volume_scale",
                                 "b_side", "flat"})},
        };
    }();
    return fields;
}

[[noreturn]] void fail(const std::string& what)
{
    throw ParseError(what);
}

void check_keys(const json& obj, const std::set<std::string>& keys, const std::string& where)
{
    if (!obj.is_object())
        fail(where + " must be an object");
    for (const auto& [k, v] : obj.items())
        if (!keys.count(k))
            fail("unknown field '" + k + "' in " + where);
    for (const auto& k : keys)
        if (!obj.contains(k))
            fail("missing field '" + k + "' in " + where);
}

std::string get_string(const json& v, const std::string& where)
{
    if (!v.is_string())
        fail(where + " must be a string");
    return v.get<std::string>();
}

int get_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        fail(where + " must be an integer");
    return v.get<int>();
}

void check_value(const std::string& text, const std::string& where)
{
    try {
        parse_terms(text);
    } catch (const ParseError& e) {
        fail(where + ": " + e.what());
    }
}

std::vector<FileGenerator> get_generators(const json& v, const std::string& where)
{
    if (!v.is_array())
        fail(where + " must be an array");
    std::vector<FileGenerator> out;
    for (const auto& g : v) {
        check_keys(g, {"name", "p", "q"}, where + " entry");
        out.push_back({get_string(g["name"], "generator name"), get_int(g["p"], "generator p"),
                       get_int(g["q"], "generator q")});
    }
    return out;
}

std::vector<FileValue> get_values(const json& v, const std::string& where)
{
    if (!v.is_array())
        fail(where + " must be an array");
    std::vector<FileValue> out;
    for (const auto& e : v) {
        check_keys(e, {"on", "value"}, where + " entry");
        FileValue fv{get_string(e["on"], where + " 'on'"), get_string(e["value"], where + " 'value'")};
        check_value(fv.value, where);
        out.push_back(std::move(fv));
    }
    return out;
}

std::vector<FileProduct> get_products(const json& v, const std::string& where)
{
    if (!v.is_array())
        fail(where + " must be an array");
    std::vector<FileProduct> out;
    for (const auto& e : v) {
        check_keys(e, {"a", "b", "value"}, where + " entry");
        FileProduct fp{get_string(e["a"], "product 'a'"), get_string(e["b"], "product 'b'"),
                       get_string(e["value"], "product 'value'")};
        check_value(fp.value, where);
        out.push_back(std::move(fp));
    }
    return out;
}

FileMetric get_metric(const json& v)
{
    if (!v.is_object())
        fail("metric must be an object");
    FileMetric m;
    if (v.contains("orthonormal")) {
        check_keys(v, {"orthonormal"}, "metric");
        if (!v["orthonormal"].is_boolean() || !v["orthonormal"].get<bool>())
            fail("metric 'orthonormal' must be true");
        m.orthonormal = true;
        return m;
    }
    check_keys(v, {"gram"}, "metric");
    if (!v["gram"].is_array())
        fail("metric 'gram' must be an array");
    for (const auto& g : v["gram"]) {
        check_keys(g, {"degree", "rows"}, "gram entry");
        FileGram fg{get_int(g["degree"], "gram degree"), {}};
        if (!g["rows"].is_array())
            fail("gram rows must be an array");
        for (const auto& row : g["rows"]) {
            if (!row.is_array())
                fail("gram row must be an array");
            std::vector<std::string> r;
            for (const auto& x : row) {
                std::string s = get_string(x, "gram entry");
                try {
                    Scalar::parse(s);
                } catch (const ParseError& e) {
                    fail(std::string("gram entry: ") + e.what());
                }
                r.push_back(std::move(s));
            }
            fg.rows.push_back(std::move(r));
        }
        m.gram.push_back(std::move(fg));
    }
    return m;
}

json put_generators(const std::vector<FileGenerator>& gens)
{
    json a = json::array();
    for (const auto& g : gens)
        a.push_back({{"name", g.name}, {"p", g.p}, {"q", g.q}});
    return a;
}

json put_values(const std::vector<FileValue>& vals)
{
    json a = json::array();
    for (const auto& v : vals)
        a.push_back({{"on", v.on}, {"value", v.value}});
    return a;
}

json put_products(const std::vector<FileProduct>& prods)
{
    json a = json::array();
    for (const auto& v : prods)
        a.push_back({{"a", v.a}, {"b", v.b}, {"value", v.value}});
    return a;
}

// Builds a tabular algebra from non-unit basis elements and listed products.
struct TabularBuilder {
    Field field;
    std::shared_ptr<GradedSpace> space = std::make_shared<GradedSpace>();

    TabularBuilder(Field f, std::vector<FileGenerator> gens) : field(f)
    {
        std::set<std::string> seen{"1"};
        for (const auto& g : gens) {
            if (g.p < 0 || g.q < 0 || g.p + g.q == 0)
                throw PreconditionError("basis element '" + g.name + "' needs positive total degree");
            if (!seen.insert(g.name).second)
                throw PreconditionError("duplicate basis label '" + g.name + "'");
        }
        std::stable_sort(gens.begin(), gens.end(),
                         [](const FileGenerator& a, const FileGenerator& b) { return a.p + a.q < b.p + b.q; });
        space->add("1", {0, 0});
        for (const auto& g : gens)
            space->add(g.name, {g.p, g.q});
    }

    std::pair<int, std::size_t> locate(const std::string& label) const
    {
        auto at = space->find(label);
        if (!at)
            throw PreconditionError("unknown basis label '" + label + "'");
        return *at;
    }

    Vector linear(const std::string& text, int degree) const
    {
        Vector v(space->dim(degree));
        for (const auto& term : parse_terms(text)) {
            std::pair<int, std::size_t> at{0, 0};
            if (term.factors.size() == 1 && term.factors[0].second == 1)
                at = locate(term.factors[0].first);
            else if (!term.factors.empty())
                throw PreconditionError("'" + text + "' is not linear in basis labels");
            if (at.first != degree)
                throw PreconditionError("'" + text + "' is not of degree " + std::to_string(degree));
            v[at.second] += term.coefficient;
        }
        return v;
    }
};

SparseVector sparse(const Vector& v)
{
    SparseVector out;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero())
            out.emplace_back(k, v[k]);
    return out;
}

std::shared_ptr<TabularProduct> tabular_products(const TabularBuilder& tb, const std::vector<FileProduct>& prods)
{
    const GradedSpace& s = *tb.space;
    auto rule = std::make_shared<TabularProduct>(tb.space);
    for (int p = 0; p <= s.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i) {
            rule->set(0, 0, p, i, {{i, Scalar(1)}});
            rule->set(p, i, 0, 0, {{i, Scalar(1)}});
        }
    std::set<std::pair<std::string, std::string>> listed;
    for (const auto& fp : prods) {
        if (fp.a == "1" || fp.b == "1")
            throw PreconditionError("products with the unit are implicit");
        auto [p, i] = tb.locate(fp.a);
        auto [q, j] = tb.locate(fp.b);
        if (listed.count({fp.a, fp.b}))
            throw PreconditionError("product " + fp.a + "*" + fp.b + " listed twice");
        listed.insert({fp.a, fp.b});
        listed.insert({fp.b, fp.a});
        if (p + q > s.top()) {
            if (!parse_terms(fp.value).empty())
                throw PreconditionError("product " + fp.a + "*" + fp.b + " lands beyond the top degree");
            continue;
        }
        Vector v = tb.linear(fp.value, p + q);
        rule->set(p, i, q, j, sparse(v));
        rule->set(q, j, p, i, sparse(scale(v, sign(p * q))));
    }
    return rule;
}

std::vector<Matrix> tabular_differential(const TabularBuilder& tb, const std::vector<FileValue>& values)
{
    const GradedSpace& s = *tb.space;
    std::vector<Matrix> d;
    for (int p = 0; p <= s.top(); ++p)
        d.emplace_back(s.dim(p + 1), s.dim(p));
    std::set<std::string> seen;
    for (const auto& fv : values) {
        if (!seen.insert(fv.on).second)
            throw PreconditionError("differential of '" + fv.on + "' listed twice");
        auto [p, i] = tb.locate(fv.on);
        if (p + 1 > s.top()) {
            if (!parse_terms(fv.value).empty())
                throw PreconditionError("differential of '" + fv.on + "' lands beyond the top degree");
            continue;
        }
        d[p].set_column(i, tb.linear(fv.value, p + 1));
    }
    return d;
}

void require_valid(const FiniteDGA& a, const std::string& what)
{
    if (auto r = check_algebra(a); !r)
        throw PreconditionError(what + " is not a graded-commutative algebra: " + r.witness);
    if (auto r = check_d_squared(a); !r)
        throw PreconditionError(what + ": d^2 != 0: " + r.witness);
    if (auto r = check_leibniz(a); !r)
        throw PreconditionError(what + ": Leibniz rule fails: " + r.witness);
}

void check_scalars(const FiniteDGA& a, Field field)
{
    if (field == Field::QI)
        return;
    auto real = [](const Matrix& m) { return m.is_real(); };
    for (int p = 0; p <= a.top(); ++p)
        if (!real(a.d(p)))
            throw PreconditionError("Gaussian coefficient in a file declared over Q");
}

bool free_kind(const AlgebraFile& f)
{
    return f.kind == "free-dga" || (f.kind == "bicomplex" && f.presentation == "free");
}

} // namespace

AlgebraFile parse_algebra_file(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        fail("algebra file must be a JSON object");
    if (!j.contains("kind"))
        fail("missing field 'kind'");
    AlgebraFile f;
    f.kind = get_string(j["kind"], "kind");
    auto it = allowed_fields().find(f.kind);
    if (it == allowed_fields().end())
        fail("unknown kind '" + f.kind + "'");
    for (const auto& [k, v] : j.items())
        if (!it->second.count(k))
            fail("field '" + k + "' is not allowed for kind " + f.kind);
    for (const char* required : {"scalars", "generators"})
        if (!j.contains(required))
            fail(std::string("missing field '") + required + "'");

    std::string scalars = get_string(j["scalars"], "scalars");
    if (scalars != "Q" && scalars != "Q(i)")
        fail("scalars must be \"Q\" or \"Q(i)\"");
    f.scalars = field_from_string(scalars);
    if (j.contains("name"))
        f.name = get_string(j["name"], "name");
    f.generators = get_generators(j["generators"], "generators");
    if (j.contains("presentation")) {
        f.presentation = get_string(j["presentation"], "presentation");
        if (f.presentation != "free" && f.presentation != "tabular")
            fail("presentation must be \"free\" or \"tabular\"");
    } else if (f.kind == "bicomplex") {
        fail("missing field 'presentation'");
    }
    if (j.contains("cap"))
        f.cap = get_int(j["cap"], "cap");
    if (j.contains("n"))
        f.n = get_int(j["n"], "n");
    if (j.contains("differential"))
        f.differential = get_values(j["differential"], "differential");
    if (j.contains("differential_c"))
        f.differential_c = get_values(j["differential_c"], "differential_c");
    if (j.contains("products"))
        f.products = get_products(j["products"], "products");
    if (j.contains("metric"))
        f.metric = get_metric(j["metric"]);
    else if (f.kind == "bicomplex")
        fail("missing field 'metric'");
    if (j.contains("trace"))
        f.trace = get_values(j["trace"], "trace");
    if (j.contains("kahler_class")) {
        f.kahler_class = get_string(j["kahler_class"], "kahler_class");
        check_value(f.kahler_class, "kahler_class");
    }
    if (j.contains("rational_basis")) {
        if (!j["rational_basis"].is_array())
            fail("rational_basis must be an array");
        for (const auto& v : j["rational_basis"]) {
            f.rational_basis.push_back(get_string(v, "rational_basis entry"));
            check_value(f.rational_basis.back(), "rational_basis");
        }
    }
    if (j.contains("omega")) {
        check_keys(j["omega"], {"class"}, "omega");
        f.omega = get_string(j["omega"]["class"], "omega class");
        check_value(f.omega, "omega");
    }
    if (j.contains("volume_scale")) {
        f.volume_scale = get_string(j["volume_scale"], "volume_scale");
        try {
            Scalar::parse(f.volume_scale);
        } catch (const ParseError& e) {
            fail(std::string("volume_scale: ") + e.what());
        }
    }
    if (j.contains("b_side")) {
        check_keys(j["b_side"], {"generators", "products"}, "b_side");
        f.b_side = FileBSide{get_generators(j["b_side"]["generators"], "b_side generators"),
                             get_products(j["b_side"]["products"], "b_side products")};
    }
    if (j.contains("flat"))
        f.flat = get_values(j["flat"], "flat");
    if (f.kind == "cy-package")
        for (const char* required : {"n", "omega", "volume_scale", "b_side", "flat", "trace"})
            if (!j.contains(required))
                fail(std::string("missing field '") + required + "' for kind cy-package");
    if (f.kind == "frobenius")
        for (const char* required : {"n", "trace"})
            if (!j.contains(required))
                fail(std::string("missing field '") + required + "' for kind frobenius");
    return f;
}

std::string emit_algebra_file(const AlgebraFile& f)
{
    json j;
    j["kind"] = f.kind;
    if (!f.name.empty())
        j["name"] = f.name;
    j["scalars"] = to_string(f.scalars);
    if (!f.presentation.empty())
        j["presentation"] = f.presentation;
    if (f.n)
        j["n"] = *f.n;
    if (f.cap)
        j["cap"] = *f.cap;
    j["generators"] = put_generators(f.generators);
    if (!f.products.empty())
        j["products"] = put_products(f.products);
    if (!f.differential.empty())
        j["differential"] = put_values(f.differential);
    if (!f.differential_c.empty())
        j["differential_c"] = put_values(f.differential_c);
    if (f.metric) {
        if (f.metric->orthonormal) {
            j["metric"] = {{"orthonormal", true}};
        } else {
            json grams = json::array();
            for (const auto& g : f.metric->gram)
                grams.push_back({{"degree", g.degree}, {"rows", g.rows}});
            j["metric"] = {{"gram", grams}};
        }
    }
    if (!f.trace.empty())
        j["trace"] = put_values(f.trace);
    if (!f.kahler_class.empty())
        j["kahler_class"] = f.kahler_class;
    if (!f.rational_basis.empty())
        j["rational_basis"] = f.rational_basis;
    if (!f.omega.empty())
        j["omega"] = {{"class", f.omega}};
    if (!f.volume_scale.empty())
        j["volume_scale"] = f.volume_scale;
    if (f.b_side)
        j["b_side"] = {{"generators", put_generators(f.b_side->generators)},
                       {"products", put_products(f.b_side->products)}};
    if (!f.flat.empty())
        j["flat"] = put_values(f.flat);
    return j.dump(2) + "\n";
}

AlgebraFile read_algebra_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_algebra_file(text.str());
}

FreeDGA load_free_dga(const AlgebraFile& file, const std::vector<FileValue>& differential, int cap)
{
    std::vector<Generator> gens;
    int widest = 0;
    for (const auto& g : file.generators) {
        if (g.p < 0 || g.q < 0)
            throw PreconditionError("generator '" + g.name + "' has a negative bidegree");
        gens.push_back({g.name, {g.p, g.q}});
        widest = std::max(widest, g.p + g.q);
    }
    FreeDGA free{file.scalars, FreeGCA(std::move(gens), std::max(cap, widest + 1)), {}};
    free.differential.resize(free.algebra.size());
    std::set<std::string> seen;
    for (const auto& fv : differential) {
        auto k = free.algebra.index(fv.on);
        if (!k)
            throw PreconditionError("differential of unknown generator '" + fv.on + "'");
        if (!seen.insert(fv.on).second)
            throw PreconditionError("differential of '" + fv.on + "' listed twice");
        free.differential[*k] = free.algebra.parse(fv.value);
    }
    if (auto r = check_free(free); !r)
        throw PreconditionError("invalid free DGA: " + r.witness);
    return free;
}

FiniteDGA load_tabular_dga(const AlgebraFile& file)
{
    if (free_kind(file))
        throw PreconditionError("kind " + file.kind + " has a free presentation");
    TabularBuilder tb(file.scalars, file.generators);
    auto rule = tabular_products(tb, file.products);
    auto d = tabular_differential(tb, file.differential);
    FiniteDGA a(file.scalars, tb.space, rule, std::move(d), Element{0, Vector{Scalar(1)}}, std::nullopt);
    require_valid(a, "algebra");
    check_scalars(a, file.scalars);
    return a;
}

FiniteDGA load_dga(const AlgebraFile& file, int cap)
{
    if (!free_kind(file))
        return load_tabular_dga(file);
    int c = file.cap.value_or(cap);
    FiniteDGA a = materialize(load_free_dga(file, file.differential, c), c);
    check_scalars(a, file.scalars);
    return a;
}

MetricBicomplex load_bicomplex(const AlgebraFile& file)
{
    if (file.kind != "bicomplex")
        throw PreconditionError("expected a bicomplex file, got " + file.kind);
    std::shared_ptr<const FiniteDGA> carrier;
    std::vector<Matrix> dc;
    if (file.presentation == "free") {
        int sum = 0;
        for (const auto& g : file.generators) {
            if ((g.p + g.q) % 2 == 0)
                throw PreconditionError("a free bicomplex carrier must be a finite exterior algebra");
            sum += g.p + g.q;
        }
        carrier = std::make_shared<const FiniteDGA>(materialize(load_free_dga(file, file.differential, sum), sum));
        FiniteDGA second = materialize(load_free_dga(file, file.differential_c, sum), sum);
        for (int p = 0; p <= second.top(); ++p)
            dc.push_back(second.d(p));
    } else {
        carrier = std::make_shared<const FiniteDGA>(load_tabular_dga(file));
        TabularBuilder tb(file.scalars, file.generators);
        dc = tabular_differential(tb, file.differential_c);
    }
    LinearMap dcmap(carrier->space_ptr(), carrier->space_ptr(), 1);
    for (int p = 0; p <= carrier->top(); ++p)
        dcmap.block(p) = dc[p];
    std::vector<Matrix> gram;
    if (file.metric->orthonormal) {
        gram = orthonormal_gram(carrier->space());
    } else {
        gram.resize(carrier->top() + 1);
        std::vector<bool> given(carrier->top() + 1, false);
        for (const auto& g : file.metric->gram) {
            if (g.degree < 0 || g.degree > carrier->top() || given[g.degree])
                throw PreconditionError("bad or repeated Gram degree " + std::to_string(g.degree));
            std::size_t n = carrier->dim(g.degree);
            if (g.rows.size() != n)
                throw PreconditionError("Gram matrix in degree " + std::to_string(g.degree) + " has wrong shape");
            Matrix m(n, n);
            for (std::size_t r = 0; r < n; ++r) {
                if (g.rows[r].size() != n)
                    throw PreconditionError("Gram matrix in degree " + std::to_string(g.degree) + " has wrong shape");
                for (std::size_t c = 0; c < n; ++c)
                    m(r, c) = Scalar::parse(g.rows[r][c]);
            }
            gram[g.degree] = std::move(m);
            given[g.degree] = true;
        }
        for (int p = 0; p <= carrier->top(); ++p)
            if (!given[p] && carrier->dim(p) > 0)
                throw PreconditionError("missing Gram matrix in degree " + std::to_string(p));
    }
    return make_bicomplex(carrier, std::move(dcmap), std::move(gram));
}

Element parse_element(const FiniteDGA& a, const std::string& text)
{
    auto terms = parse_terms(text);
    if (const FreeDGA* free = a.presentation()) {
        Poly poly = free->algebra.parse(text);
        if (poly.empty())
            throw PreconditionError("cannot infer the degree of '" + text + "'");
        int degree = free->algebra.degree(poly.begin()->first);
        if (degree > a.top())
            throw PreconditionError("'" + text + "' lies beyond the materialized degrees");
        Element x = a.zero(degree);
        const auto& basis = a.monomials(degree);
        for (const auto& [m, c] : poly) {
            if (free->algebra.degree(m) != degree)
                throw PreconditionError("'" + text + "' is not homogeneous");
            auto it = std::find(basis.begin(), basis.end(), m);
            x.coeffs[it - basis.begin()] += c;
        }
        return x;
    }
    std::optional<Element> x;
    for (const auto& term : terms) {
        std::pair<int, std::size_t> at{0, 0};
        if (term.factors.size() == 1 && term.factors[0].second == 1) {
            auto found = a.space().find(term.factors[0].first);
            if (!found)
                throw PreconditionError("unknown basis label '" + term.factors[0].first + "'");
            at = *found;
        } else if (!term.factors.empty()) {
            throw PreconditionError("'" + text + "' is not linear in basis labels");
        }
        if (!x)
            x = a.zero(at.first);
        if (x->degree != at.first)
            throw PreconditionError("'" + text + "' is not homogeneous");
        x->coeffs[at.second] += term.coefficient;
    }
    if (!x)
        throw PreconditionError("cannot infer the degree of '" + text + "'");
    return *x;
}

} // namespace rho

namespace rho {

namespace {

// Monomial labels such as "x*y^2" become identifiers such as "x_y__2".
std::string file_label(const std::string& label)
{
    std::string out;
    for (char c : label)
        out += c == '*' ? std::string("_") : c == '^' ? std::string("__") : std::string(1, c);
    return out;
}

} // namespace

std::string linear_text(const GradedSpace& space, int degree, const Vector& v)
{
    std::string out;
    auto term = [&](const Rational& c, const std::string& factor) {
        if (sgn(c) == 0)
            return;
        Rational mag = abs(c);
        std::string body = mag == 1 ? factor : mag.get_str() + "*" + factor;
        if (out.empty())
            out = sgn(c) < 0 ? "-" + body : body;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + body;
    };
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::string label = file_label(space.label(degree, k));
        bool unit = label == "1";
        if (unit) {
            if (sgn(v[k].re()) != 0)
                term(v[k].re(), "1");
            if (sgn(v[k].im()) != 0)
                term(v[k].im(), "i");
            continue;
        }
        term(v[k].re(), label);
        term(v[k].im(), "i*" + label);
    }
    return out.empty() ? "0" : out;
}

AlgebraFile export_tabular(const FiniteDGA& a, std::string kind)
{
    if (!a.complete() || a.dim(0) != 1 || a.space().label(0, 0) != "1" || !a.unit().coeffs[0].is_one())
        throw PreconditionError("export needs a complete algebra whose unit is the basis element '1'");
    const GradedSpace& s = a.space();
    AlgebraFile f;
    f.kind = std::move(kind);
    f.scalars = a.field();
    for (int p = 1; p <= a.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            f.generators.push_back({file_label(s.label(p, i)), s.bidegree(p, i).p, s.bidegree(p, i).q});
    for (int p = 1; p <= a.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i)
            for (int q = p; p + q <= a.top(); ++q)
                for (std::size_t j = (q == p ? i : 0); j < s.dim(q); ++j) {
                    Element x = a.multiply(a.basis(p, i), a.basis(q, j));
                    if (!x.is_zero())
                        f.products.push_back({file_label(s.label(p, i)), file_label(s.label(q, j)), linear_text(s, p + q, x.coeffs)});
                }
    for (int p = 0; p < a.top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i) {
            Vector dx = a.d(p).column(i);
            if (!is_zero(dx))
                f.differential.push_back({file_label(s.label(p, i)), linear_text(s, p + 1, dx)});
        }
    return f;
}

AlgebraFile export_bicomplex(const MetricBicomplex& b)
{
    AlgebraFile f = export_tabular(*b.carrier, "bicomplex");
    f.presentation = "tabular";
    const GradedSpace& s = *b.space();
    for (int p = 0; p < b.carrier->top(); ++p)
        for (std::size_t i = 0; i < s.dim(p); ++i) {
            Vector dx = b.dc.block(p).column(i);
            if (!is_zero(dx))
                f.differential_c.push_back({file_label(s.label(p, i)), linear_text(s, p + 1, dx)});
        }
    FileMetric m;
    m.orthonormal = b.gram == orthonormal_gram(s);
    if (!m.orthonormal)
        for (int p = 0; p <= b.carrier->top(); ++p) {
            FileGram g{p, {}};
            for (std::size_t r = 0; r < s.dim(p); ++r) {
                std::vector<std::string> row;
                for (std::size_t c = 0; c < s.dim(p); ++c)
                    row.push_back(b.gram[p](r, c).to_string());
                g.rows.push_back(std::move(row));
            }
            m.gram.push_back(std::move(g));
        }
    f.metric = m;
    return f;
}

} // namespace rho
