#include "rho/report.hpp"

#include "rho/errors.hpp"
#include "rho/formality.hpp"
#include "rho/hodge.hpp"
#include "rho/mirror.hpp"

#include <sstream>

namespace rho {

namespace {

using nlohmann::ordered_json;

ordered_json scalars(const Vector& v)
{
    ordered_json out = ordered_json::array();
    for (const auto& s : v)
        out.push_back(s.to_string());
    return out;
}

ordered_json matrix_json(const Matrix& m)
{
    ordered_json out = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(scalars(m.row(r)));
    return out;
}

ordered_json hodge_json(const std::map<Bidegree, std::size_t>& h)
{
    ordered_json out = ordered_json::object();
    for (auto [b, n] : h)
        out[to_string(b)] = n;
    return out;
}

ordered_json header(const std::string& command, const AlgebraFile& file)
{
    return {{"command", command}, {"input", file.name}, {"kind", file.kind}, {"scalars", to_string(file.scalars)}};
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k)
        out += (k ? " " : "") + std::to_string(v[k]);
    return out;
}

void require_kind(const AlgebraFile& file, std::initializer_list<const char*> kinds, const std::string& what)
{
    for (const char* k : kinds)
        if (file.kind == k)
            return;
    throw PreconditionError(what + " does not accept kind " + file.kind);
}

ordered_json qi_json(const QuasiIsoReport& r)
{
    ordered_json out{{"quasi_isomorphism", r.quasi_isomorphism}};
    out["failing_degree"] = r.failing_degree ? ordered_json(*r.failing_degree) : ordered_json(nullptr);
    out["detail"] = r.detail;
    return out;
}

RationalStructure standard_basis(const FiniteDGA& a)
{
    RationalStructure r;
    for (int p = 0; p <= a.top(); ++p)
        for (std::size_t i = 0; i < a.dim(p); ++i) {
            r.names.push_back(a.space().label(p, i));
            r.basis.push_back(a.basis(p, i));
        }
    return r;
}

ordered_json yukawa_json(const CYInput& in, std::string& text)
{
    const CYPackage& p = in.package;
    bool designated = !in.rational.names.empty();
    RationalStructure basis = designated ? in.rational : standard_basis(p.a_side.a());
    YukawaReport y = yukawa(p, basis);
    ordered_json entries = ordered_json::array();
    for (std::size_t a = 0; a < y.size; ++a)
        for (std::size_t b = 0; b < y.size; ++b)
            for (std::size_t c = 0; c < y.size; ++c)
                if (!y.at(a, b, c).is_zero())
                    entries.push_back({{"a", y.names[a]}, {"b", y.names[b]}, {"c", y.names[c]},
                                       {"value", y.at(a, b, c).to_string()}});
    auto s = yukawa_scaling_exponent(p, basis);
    BAlgebra b = b_algebra(p);
    Verdict sc = b_simply_connected_check(b);
    ordered_json out{{"lambda", p.lambda.to_string()},
                     {"designated_basis", designated},
                     {"basis", y.names},
                     {"nonzero", entries},
                     {"rational", y.rational},
                     {"rational_witness", y.rational_witness},
                     {"graded_symmetric", y.symmetric},
                     {"symmetry_witness", y.symmetry_witness}};
    out["scaling_exponent"] = s ? ordered_json(*s) : ordered_json(nullptr);
    out["transport_audit"] = b.transport_audit;
    out["b_simply_connected"] = sc.pass;
    out["b_simply_connected_witness"] = sc.witness;
    std::ostringstream t;
    t << "yukawa: " << entries.size() << " nonzero couplings, " << (y.rational ? "rational" : "not rational")
      << (y.rational ? "" : " at " + y.rational_witness) << ", "
      << (y.symmetric ? "graded symmetric" : "not graded symmetric")
      << (s ? ", scaling exponent " + std::to_string(*s) : std::string()) << "\n";
    text += t.str();
    return out;
}

} // namespace

Report cohomology_report(const AlgebraFile& file, int max_degree)
{
    require_kind(file, {"free-dga", "tabular-dga"}, "cohomology");
    if (max_degree < 0)
        throw PreconditionError("max degree must be non-negative");
    auto a = std::make_shared<const FiniteDGA>(load_dga(file, max_degree + 1));
    int up_to = std::min(max_degree, a->complete() ? a->top() : a->valid_degree());
    Cohomology h(a, up_to);
    Report r;
    r.machine = header("cohomology", file);
    r.machine["max_degree"] = max_degree;
    int through = a->complete() ? max_degree : up_to;
    r.machine["determined_through"] = through;
    ordered_json dims = ordered_json::array();
    std::vector<std::size_t> shown;
    for (int p = 0; p <= max_degree; ++p) {
        if (p <= up_to)
            shown.push_back(h.dim(p));
        else if (a->complete())
            shown.push_back(0);
        else
            break;
        dims.push_back(shown.back());
    }
    r.machine["dims"] = dims;
    ordered_json classes = ordered_json::array(), products = ordered_json::array();
    for (int p = 0; p <= up_to; ++p)
        for (std::size_t i = 0; i < h.dim(p); ++i)
            classes.push_back({{"degree", p}, {"index", i}, {"representative", to_string(*a, h.representative(p, i))}});
    for (int p = 1; p <= up_to; ++p)
        for (int q = p; p + q <= up_to; ++q)
            for (std::size_t i = 0; i < h.dim(p); ++i)
                for (std::size_t j = p == q ? i : 0; j < h.dim(q); ++j)
                    if (Vector v = h.product(p, i, q, j); !is_zero(v))
                        products.push_back({{"a", {p, i}}, {"b", {q, j}}, {"value", scalars(v)}});
    r.machine["classes"] = classes;
    r.machine["products"] = products;
    std::ostringstream t;
    t << "cohomology of " << (file.name.empty() ? "input" : file.name) << " through degree " << through << "\n"
      << "  dims: " << join(shown) << "\n"
      << "  nonzero products of positive classes: " << products.size() << "\n";
    r.text = t.str();
    return r;
}

Report minimal_model_report(const AlgebraFile& file, int max_degree)
{
    require_kind(file, {"free-dga", "tabular-dga"}, "minimal-model");
    if (max_degree < 1)
        throw PreconditionError("max degree must be at least 1");
    auto a = std::make_shared<const FiniteDGA>(load_dga(file, max_degree + 2));
    MinimalModel m = build_minimal_model(a, max_degree);
    const FreeGCA& g = m.free.algebra;
    ordered_json gens = ordered_json::array();
    for (std::size_t k = 0; k < g.generators().size(); ++k)
        gens.push_back({{"name", g.generators()[k].name},
                        {"degree", g.generators()[k].degree()},
                        {"d", g.to_string(m.free.differential[k])},
                        {"role", m.cocycle_generator[k] ? "cocycle" : "killer"}});
    ordered_json counts = ordered_json::object(), ranks = ordered_json::object();
    auto c = m.generator_counts();
    for (int p = 1; p <= m.valid_up_to; ++p)
        counts[std::to_string(p)] = p < static_cast<int>(c.size()) ? c[p] : 0;
    for (auto [p, n] : homotopy_ranks(m))
        ranks[std::to_string(p)] = n;
    CheckResult morphism = check_morphism(m.rho);
    QuasiIsoReport qi = quasi_isomorphism(m.rho, m.valid_up_to);
    Report r;
    r.machine = header("minimal-model", file);
    r.machine["max_degree"] = max_degree;
    r.machine["valid_up_to"] = m.valid_up_to;
    r.machine["generators"] = gens;
    r.machine["generator_counts"] = counts;
    r.machine["homotopy_ranks"] = ranks;
    r.machine["rho"] = {{"dga_morphism", morphism.pass}, {"witness", morphism.witness}, {"quasi_isomorphism", qi_json(qi)}};
    std::ostringstream t;
    t << "minimal model of " << (file.name.empty() ? "input" : file.name) << " through degree " << m.valid_up_to
      << "\n";
    for (const auto& x : gens)
        t << "  " << x["name"].get<std::string>() << " (degree " << x["degree"].get<int>() << "): d = "
          << x["d"].get<std::string>() << "\n";
    t << "  rho: " << (morphism.pass && qi.quasi_isomorphism ? "verified quasi-isomorphism" : "FAILED") << "\n";
    r.text = t.str();
    return r;
}

Report formality_report(const AlgebraFile& file, const std::string& engine, int max_degree, std::size_t budget)
{
    Report r;
    r.machine = header("formality", file);
    r.machine["engine"] = engine;
    std::ostringstream t;
    std::string name = file.name.empty() ? "input" : file.name;
    if (engine == "hodge") {
        require_kind(file, {"bicomplex"}, "the hodge engine");
        HodgeData hd(load_bicomplex(file));
        r.machine["max_degree"] = hd.bicomplex().carrier->top();
        HypothesisReport hyp = hd.verify_hypotheses();
        ordered_json trail = ordered_json::array();
        for (const auto& e : hyp.entries)
            trail.push_back({{"name", e.name}, {"pass", e.pass}, {"witness", e.witness}});
        r.machine["hypotheses"] = trail;
        try {
            FormalityCertificate c = hd.formality_certificate();
            std::size_t lemma = 0;
            for (const auto& rec : c.circ)
                lemma += rec.lemma_d && rec.lemma_dc;
            r.machine["certificate"] = {
                {"valid", c.valid()},
                {"fivefold", {{"dims", c.fivefold.dims},
                              {"sums_to_total", c.fivefold.sums_to_total},
                              {"pairwise_independent", c.fivefold.pairwise_independent}}},
                {"kernel_closed", c.kernel_closed},
                {"kernel_decomposes", c.kernel_decomposes},
                {"d_induces_zero", c.d_induces_zero},
                {"inclusion", qi_json(c.inclusion_qi)},
                {"projection", qi_json(c.projection_qi)},
                {"dims_h_d", c.dims_h_d},
                {"dims_h_dc", c.dims_h_dc},
                {"dims_harmonic", c.dims_harmonic},
                {"harmonic_products", {{"checked", c.circ.size()}, {"lemma_holds", lemma}}}};
            r.machine["refusal"] = nullptr;
            t << "formality of " << name << ": certificate " << (c.valid() ? "issued" : "INVALID") << "\n"
              << "  harmonic dims: " << join(c.dims_harmonic) << "\n";
        } catch (const PreconditionError& e) {
            const HypothesisEntry* fail = hyp.first_failure();
            r.machine["certificate"] = nullptr;
            r.machine["refusal"] = {{"hypothesis", fail ? fail->name : ""},
                                    {"witness", fail ? fail->witness : ""},
                                    {"message", e.what()}};
            t << "formality of " << name << ": refused, " << (fail ? fail->name + " fails " + fail->witness : e.what())
              << "\n";
        }
    } else if (engine == "direct") {
        require_kind(file, {"free-dga", "tabular-dga"}, "the direct engine");
        auto a = std::make_shared<const FiniteDGA>(load_dga(file, max_degree + 2));
        FormalityVerdict v = formality_test_direct(a, max_degree, budget);
        r.machine["max_degree"] = max_degree;
        r.machine["budget"] = budget;
        r.machine["status"] = to_string(v.status);
        r.machine["up_to"] = v.up_to;
        r.machine["obstruction_degree"] = v.obstruction_degree ? ordered_json(*v.obstruction_degree) : nullptr;
        if (v.massey_arguments) {
            ordered_json args = ordered_json::array();
            for (const auto& x : *v.massey_arguments)
                args.push_back(to_string(*a, x));
            r.machine["massey"] = {{"arguments", args},
                                   {"representative", to_string(*a, v.massey->representative)},
                                   {"nonzero", v.massey->nonzero}};
        } else {
            r.machine["massey"] = nullptr;
        }
        r.machine["nodes"] = v.nodes;
        r.machine["detail"] = v.detail;
        t << "formality of " << name << " through degree " << v.up_to << ": " << to_string(v.status)
          << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
    } else {
        throw PreconditionError("unknown engine '" + engine + "'");
    }
    r.text = t.str();
    return r;
}

Report mirror_report(const AlgebraFile& a_file, const AlgebraFile& b_file, std::size_t budget)
{
    require_kind(a_file, {"frobenius", "tabular-dga", "free-dga", "cy-package"}, "the A side");
    require_kind(b_file, {"frobenius", "tabular-dga", "cy-package"}, "the B side");
    BigradedFrobenius a = a_file.kind == "cy-package" ? load_cy(a_file).package.a_side
                                                      : load_frobenius(a_file).frobenius;
    std::optional<CYInput> bc;
    DgaPtr b;
    if (b_file.kind == "cy-package") {
        bc = load_cy(b_file);
        b = bc->package.b_side;
    } else {
        b = std::make_shared<const FiniteDGA>(load_tabular_dga(b_file));
    }
    if (a.a().field() != b->field())
        throw PreconditionError("the two sides are over different fields");
    MirrorVerdict v = mirror_check(a.a(), *b, budget);

    Report r;
    r.machine = {{"command", "mirror"},
                 {"a_input", a_file.name},
                 {"b_input", b_file.name},
                 {"budget", budget},
                 {"a_hodge", hodge_json(a.hodge_numbers())}};
    std::map<Bidegree, std::size_t> hb;
    for (Bidegree bd : b->space().bidegrees())
        hb[bd] = b->space().component(bd).size();
    r.machine["b_hodge"] = hodge_json(hb);
    ordered_json verdict{{"outcome", to_string(v.outcome)}, {"detail", v.detail}, {"nodes", v.nodes}};
    if (v.outcome == MirrorOutcome::Isomorphism) {
        ordered_json blocks = ordered_json::array();
        for (const auto& [bd, m] : v.blocks)
            blocks.push_back({{"bidegree", to_string(bd)}, {"matrix", matrix_json(m)}});
        verdict["isomorphism"] = {{"verified", !isomorphism_defect(*b, a.a(), *v.map)}, {"blocks", blocks}};
    } else if (v.outcome == MirrorOutcome::Obstruction) {
        verdict["obstruction"] = {{"reason", v.detail}};
    }
    r.machine["verdict"] = verdict;
    std::ostringstream t;
    t << "mirror check of " << (a_file.name.empty() ? "A" : a_file.name) << " against the B side of "
      << (b_file.name.empty() ? "B" : b_file.name) << ": " << to_string(v.outcome) << " (" << v.detail << ")\n";
    r.text = t.str();
    if (bc)
        r.machine["yukawa"] = yukawa_json(*bc, r.text);
    else
        r.machine["yukawa"] = nullptr;
    return r;
}

} // namespace rho
