#pragma once

#include "rho/dga.hpp"
#include "rho/hodge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rho {

struct FileGenerator {
    std::string name;
    int p = 0;
    int q = 0;

    friend bool operator==(const FileGenerator&, const FileGenerator&) = default;
};

struct FileValue {
    std::string on;
    std::string value;

    friend bool operator==(const FileValue&, const FileValue&) = default;
};

struct FileProduct {
    std::string a;
    std::string b;
    std::string value;

    friend bool operator==(const FileProduct&, const FileProduct&) = default;
};

struct FileGram {
    int degree = 0;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const FileGram&, const FileGram&) = default;
};

struct FileMetric {
    bool orthonormal = false;
    std::vector<FileGram> gram;

    friend bool operator==(const FileMetric&, const FileMetric&) = default;
};

/// B-side basis and products of a Calabi-Yau package.
struct FileBSide {
    std::vector<FileGenerator> generators;
    std::vector<FileProduct> products;

    friend bool operator==(const FileBSide&, const FileBSide&) = default;
};

/// In-memory form of the JSON algebra file.  Which fields are allowed depends
/// on `kind`; parse() rejects anything else.
///
/// Tabular kinds list non-unit basis elements in `generators` (the unit is
/// the implicit label "1"); products and differentials are linear in basis
/// labels, unlisted products of non-unit elements are zero and b*a is filled
/// in by graded commutativity.  The free kinds list free generators and write
/// values as polynomials.
struct AlgebraFile {
    std::string kind;
    std::string name;
    Field scalars = Field::Q;
    std::string presentation; // bicomplex only: "free" or "tabular"
    std::optional<int> cap;
    std::optional<int> n;
    std::vector<FileGenerator> generators;
    std::vector<FileValue> differential;
    std::vector<FileValue> differential_c;
    std::vector<FileProduct> products;
    std::optional<FileMetric> metric;
    std::vector<FileValue> trace;
    std::string kahler_class;
    std::vector<std::string> rational_basis;
    std::string omega;
    std::string volume_scale;
    std::optional<FileBSide> b_side;
    std::vector<FileValue> flat;

    friend bool operator==(const AlgebraFile&, const AlgebraFile&) = default;
};

/// Strict parse; throws ParseError on malformed JSON, unknown or misplaced
/// fields and bad values.
AlgebraFile parse_algebra_file(const std::string& text);
/// Canonical JSON text (two-space indent, trailing newline).
std::string emit_algebra_file(const AlgebraFile& file);

AlgebraFile read_algebra_file(const std::string& path);

/// Generators and differential of a free kind; `cap` bounds the parsed values.
FreeDGA load_free_dga(const AlgebraFile& file, const std::vector<FileValue>& differential, int cap);
/// Carrier of any non-free kind with its differential ("bicomplex" uses d).
FiniteDGA load_tabular_dga(const AlgebraFile& file);
/// Any DGA kind: free ones are materialized through the file's cap, or `cap`
/// when it has none (complete when the exterior algebra fits).
FiniteDGA load_dga(const AlgebraFile& file, int cap);
MetricBicomplex load_bicomplex(const AlgebraFile& file);

/// Element of a loaded algebra written in the file's grammar: linear in basis
/// labels for tabular algebras, a polynomial for materialized free ones.
Element parse_element(const FiniteDGA& a, const std::string& text);

/// Linear combination of basis labels of one degree in the file grammar.
std::string linear_text(const GradedSpace& space, int degree, const Vector& v);
/// Tabular file (basis, products, differential) describing `a`.
AlgebraFile export_tabular(const FiniteDGA& a, std::string kind);
/// Tabular bicomplex file; the metric is written as "orthonormal" when it is.
AlgebraFile export_bicomplex(const MetricBicomplex& b);

} // namespace rho
