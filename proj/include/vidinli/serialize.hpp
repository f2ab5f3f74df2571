#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "char2.hpp"
#include "charnot2.hpp"

namespace vidinli {

using json = nlohmann::ordered_json;

namespace detail {

inline input_error at_path(const std::string& path, const std::string& msg) {
    return input_error(path + ": " + msg);
}

} // namespace detail

inline json field_to_json(const Field& f) {
    if (f.is_rational()) return json{{"kind", "rational"}};
    return json{{"kind", "prime"}, {"p", f.characteristic()}};
}

inline Field field_from_json(const json& j, const std::string& path = "field") {
    if (!j.is_object() || !j.contains("kind"))
        throw detail::at_path(path, "expected an object with a \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rational") return Field::rationals();
    if (kind == "prime") {
        if (!j.contains("p") || !j["p"].is_number_integer())
            throw detail::at_path(path, "prime field needs an integer \"p\"");
        return Field::gf(j["p"].get<std::uint64_t>());
    }
    throw detail::at_path(path, "unknown field kind \"" + kind + "\"");
}

inline json scalar_to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from_json(const Field& f, const json& j, const std::string& path) {
    if (j.is_number_integer()) return Scalar::of_int(f, j.get<long>());
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    throw detail::at_path(path, "expected an integer or scalar string");
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Matrix matrix_from_json(const Field& f, const json& j, const std::string& path) {
    if (!j.is_array()) throw detail::at_path(path, "expected an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j[0].size();
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& r = j[i];
        if (!r.is_array() || r.size() != cols)
            throw detail::at_path(path + "[" + std::to_string(i) + "]",
                                  "ragged or non-array row");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_json(f, r[c], path + "[" + std::to_string(i) + "][" +
                                                       std::to_string(c) + "]");
    }
    return m;
}

inline json vec_to_json(const Vec& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(scalar_to_json(s));
    return out;
}

inline Vec vec_from_json(const Field& f, const json& j, const std::string& path) {
    if (!j.is_array()) throw detail::at_path(path, "expected an array");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(scalar_from_json(f, j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

/// Cubic arrays c[i][j][k] flatten to the (i*n+j)*n+k layout.
inline json constants_to_json(const std::vector<Scalar>& c, std::size_t n) {
    json out = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json plane = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            json row = json::array();
            for (std::size_t k = 0; k < n; ++k)
                row.push_back(scalar_to_json(c[(i * n + j) * n + k]));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

inline std::vector<Scalar> constants_from_json(const Field& f, const json& j,
                                               const std::string& path) {
    if (!j.is_array()) throw detail::at_path(path, "expected a cubic array");
    std::size_t n = j.size();
    std::vector<Scalar> c(n * n * n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw detail::at_path(path, "cubic array must be n x n x n");
        for (std::size_t jj = 0; jj < n; ++jj) {
            const json& row = j[i][jj];
            if (!row.is_array() || row.size() != n)
                throw detail::at_path(path, "cubic array must be n x n x n");
            for (std::size_t k = 0; k < n; ++k)
                c[(i * n + jj) * n + k] =
                    scalar_from_json(f, row[k], path + "[" + std::to_string(i) + "][" +
                                                    std::to_string(jj) + "][" +
                                                    std::to_string(k) + "]");
        }
    }
    return c;
}

inline json subspace_to_json(const Subspace& s) {
    return json{{"dim", s.dim()}, {"basis", matrix_to_json(s.basis_matrix())}};
}

inline json operator_span_to_json(const OperatorSpan& s) {
    json basis = json::array();
    for (const auto& m : s.basis_matrices()) basis.push_back(matrix_to_json(m));
    return json{{"dim", s.dim()}, {"basis", std::move(basis)}};
}

inline json poly_to_json(const Poly& p) {
    json j = json::array();
    for (const auto& c : p.coeffs()) j.push_back(scalar_to_json(c));
    return json{{"coeffs_low_first", std::move(j)}, {"display", p.str()}};
}

inline Poly poly_from_coeff_json(const Field& f, const json& j, const std::string& path) {
    return Poly(f, vec_from_json(f, j, path));
}

enum class PresentationKind { bilinear, char2, structure };

inline const char* to_string(PresentationKind k) {
    switch (k) {
        case PresentationKind::bilinear: return "bilinear";
        case PresentationKind::char2: return "char2";
        case PresentationKind::structure: return "structure";
    }
    return "?";
}

/// One parsed input file: the algebra it describes plus which of the
/// three presentation kinds carried it.
struct AlgebraFile {
    Field field;
    PresentationKind kind;
    std::optional<Matrix> bilinear;            // kind bilinear: B on V
    std::optional<Char2Presentation> char2p;   // kind char2
    Algebra algebra;
};

inline AlgebraFile algebra_file_from_json(const json& j) {
    if (!j.is_object()) throw input_error("top level: expected an object");
    if (!j.contains("field")) throw input_error("top level: missing \"field\"");
    if (!j.contains("presentation")) throw input_error("top level: missing \"presentation\"");
    Field f = field_from_json(j["field"]);
    const json& p = j["presentation"];
    if (!p.is_object() || !p.contains("kind"))
        throw input_error("presentation: expected an object with a \"kind\"");
    std::string kind = p["kind"].get<std::string>();

    if (kind == "bilinear") {
        if (f.characteristic() == 2)
            throw input_error("presentation: the bilinear presentation needs characteristic "
                              "!= 2; over GF(2) use the char2 presentation instead");
        if (!p.contains("matrix")) throw input_error("presentation: missing \"matrix\"");
        Matrix b = matrix_from_json(f, p["matrix"], "presentation.matrix");
        VidinliPresentation vp = from_bilinear_form(f, b);
        return AlgebraFile{f, PresentationKind::bilinear, std::move(b), std::nullopt,
                           std::move(vp.algebra)};
    }
    if (kind == "char2") {
        if (f.characteristic() != 2)
            throw input_error("presentation: the char2 presentation needs characteristic 2");
        if (!p.contains("phi") || !p.contains("star"))
            throw input_error("presentation: char2 needs \"phi\" and \"star\"");
        Matrix phi = matrix_from_json(f, p["phi"], "presentation.phi");
        std::size_t m = phi.rows();
        const json& sj = p["star"];
        if (!sj.is_array() || sj.size() != m)
            throw input_error("presentation.star: expected an m x m x m array");
        std::vector<Scalar> star(m * m * m, Scalar::zero(f));
        for (std::size_t i = 0; i < m; ++i) {
            if (!sj[i].is_array() || sj[i].size() != m)
                throw input_error("presentation.star: expected an m x m x m array");
            for (std::size_t jj = 0; jj < m; ++jj) {
                Vec row = vec_from_json(f, sj[i][jj],
                                        "presentation.star[" + std::to_string(i) + "][" +
                                            std::to_string(jj) + "]");
                if (row.size() != m)
                    throw input_error("presentation.star: expected an m x m x m array");
                for (std::size_t k = 0; k < m; ++k) star[(i * m + jj) * m + k] = row[k];
            }
        }
        Char2Presentation cp = make_char2_presentation(f, std::move(star), std::move(phi));
        Algebra a = build_char2(cp);
        return AlgebraFile{f, PresentationKind::char2, std::nullopt, std::move(cp),
                           std::move(a)};
    }
    if (kind == "structure") {
        if (!p.contains("constants")) throw input_error("presentation: missing \"constants\"");
        std::vector<Scalar> c = constants_from_json(f, p["constants"],
                                                    "presentation.constants");
        std::size_t n = p["constants"].size();
        std::optional<std::size_t> unit;
        if (p.contains("unit_index")) {
            if (!p["unit_index"].is_number_integer())
                throw input_error("presentation.unit_index: expected an integer");
            unit = p["unit_index"].get<std::size_t>();
        }
        return AlgebraFile{f, PresentationKind::structure, std::nullopt, std::nullopt,
                           Algebra(f, n, std::move(c), unit)};
    }
    throw input_error("presentation: unknown kind \"" + kind + "\"");
}

inline json algebra_file_to_json(const AlgebraFile& a) {
    json p;
    switch (a.kind) {
        case PresentationKind::bilinear:
            p = json{{"kind", "bilinear"}, {"matrix", matrix_to_json(*a.bilinear)}};
            break;
        case PresentationKind::char2: {
            const Char2Presentation& cp = *a.char2p;
            json star = json::array();
            for (std::size_t i = 0; i < cp.m; ++i) {
                json plane = json::array();
                for (std::size_t j = 0; j < cp.m; ++j) plane.push_back(vec_to_json(cp.star_vec(i, j)));
                star.push_back(std::move(plane));
            }
            p = json{{"kind", "char2"},
                     {"phi", matrix_to_json(cp.phi)},
                     {"star", std::move(star)}};
            break;
        }
        case PresentationKind::structure: {
            json body{{"kind", "structure"},
                      {"constants", constants_to_json(a.algebra.constants(), a.algebra.dim())}};
            if (a.algebra.unit_index()) body["unit_index"] = *a.algebra.unit_index();
            p = std::move(body);
            break;
        }
    }
    return json{{"field", field_to_json(a.field)}, {"presentation", std::move(p)}};
}

inline AlgebraFile parse_algebra_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    return algebra_file_from_json(j);
}

/// FNV-1a over the raw input bytes; reports echo it so outputs can be
/// traced to inputs.
inline std::string input_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace vidinli
