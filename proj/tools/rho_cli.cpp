#include "rho/corpus.hpp"
#include "rho/errors.hpp"
#include "rho/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace fs = std::filesystem;

int env_max_degree()
{
    const char* env = std::getenv("RHO_MAX_DEGREE");
    if (!env || !*env)
        return rho::default_max_degree;
    try {
        std::size_t used = 0;
        int v = std::stoi(env, &used);
        if (used == std::string(env).size() && v >= 0)
            return v;
    } catch (const std::exception&) {
    }
    throw rho::ParseError(std::string("RHO_MAX_DEGREE is not a non-negative integer: ") + env);
}

void write_atomically(const fs::path& path, const std::string& text)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw rho::PreconditionError("cannot write " + tmp.string());
        out << text;
        if (!out.flush())
            throw rho::PreconditionError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

void emit(const rho::Report& r, const std::string& format)
{
    std::cout << (format == "json" ? r.machine_text() : r.text);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rho: rational homotopy, Hodge formality and Calabi-Yau algebra toolkit"};
    app.require_subcommand(1);

    int max_degree = rho::default_max_degree;
    std::string format = "text";
    std::size_t budget = rho::default_budget;
    std::string engine;
    std::string file, b_file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_degree = [&](CLI::App* sub) {
        sub->add_option("--max-degree", max_degree, "Degree cap (default 8, or RHO_MAX_DEGREE)")
            ->check(CLI::NonNegativeNumber);
    };

    auto* coh = app.add_subcommand("cohomology", "Cohomology dimensions and ring constants");
    coh->add_option("file", file, "Algebra file")->required();
    add_degree(coh);
    add_common(coh);

    auto* mm = app.add_subcommand("minimal-model", "Sullivan minimal model and homotopy ranks");
    mm->add_option("file", file, "Algebra file")->required();
    add_degree(mm);
    add_common(mm);

    auto* form = app.add_subcommand("formality", "Formality certificate or test");
    form->add_option("file", file, "Algebra file")->required();
    form->add_option("--engine", engine, "hodge or direct (default: hodge for bicomplex files, direct otherwise)")
        ->check(CLI::IsMember({"hodge", "direct"}));
    form->add_option("--budget", budget, "Search budget of the direct engine");
    add_degree(form);
    add_common(form);

    auto* mir = app.add_subcommand("mirror", "Mirror pair check of two algebras");
    mir->add_option("a_file", file, "A-side file")->required();
    mir->add_option("b_file", b_file, "B-side file")->required();
    mir->add_option("--budget", budget, "Search budget (default 1000)");
    add_common(mir);

    std::string name, dir, out;
    bool list = false, all = false;
    auto* corp = app.add_subcommand("corpus", "Built-in example files");
    corp->add_option("name", name, "Corpus entry");
    corp->add_flag("--list", list, "List the catalog");
    corp->add_flag("--all", all, "Write every entry to --dir");
    corp->add_option("--dir", dir, "Output directory for --all");
    corp->add_option("--out", out, "Output file for a single entry");

    try {
        max_degree = env_max_degree();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const rho::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (coh->parsed()) {
            emit(rho::cohomology_report(rho::read_algebra_file(file), max_degree), format);
        } else if (mm->parsed()) {
            emit(rho::minimal_model_report(rho::read_algebra_file(file), max_degree), format);
        } else if (form->parsed()) {
            rho::AlgebraFile f = rho::read_algebra_file(file);
            if (engine.empty())
                engine = f.kind == "bicomplex" ? "hodge" : "direct";
            emit(rho::formality_report(f, engine, max_degree, budget), format);
        } else if (mir->parsed()) {
            emit(rho::mirror_report(rho::read_algebra_file(file), rho::read_algebra_file(b_file), budget), format);
        } else if (corp->parsed()) {
            if (list) {
                for (const auto& e : rho::corpus_catalog())
                    std::cout << e.name << "  " << e.summary << "\n";
            } else if (all) {
                if (dir.empty())
                    throw rho::PreconditionError("--all needs --dir");
                fs::create_directories(dir);
                for (const auto& e : rho::corpus_catalog())
                    write_atomically(fs::path(dir) / (e.name + ".json"),
                                     rho::emit_algebra_file(rho::corpus_file(e.name)));
            } else if (!name.empty()) {
                std::string text = rho::emit_algebra_file(rho::corpus_file(name));
                if (out.empty())
                    std::cout << text;
                else
                    write_atomically(out, text);
            } else {
                throw rho::PreconditionError("corpus needs a name, --list or --all");
            }
        }
    } catch (const rho::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const rho::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const rho::ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
