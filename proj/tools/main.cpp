#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vidinli/vidinli.hpp"

namespace {

using vidinli::json;

struct CommonOpts {
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* sc, CommonOpts& o) {
    sc->add_option("--out", o.out, "write the report to this path instead of stdout");
    sc->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vidinli::input_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string plain(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_text(const json& j, std::ostream& os, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object()) {
                os << prefix << k << ":\n";
                render_text(v, os, prefix + "  ");
            } else {
                os << prefix << k << ": " << plain(v) << "\n";
            }
        }
    } else {
        os << prefix << plain(j) << "\n";
    }
}

void emit(const json& report, const CommonOpts& o) {
    std::ostringstream body;
    if (o.format == "json") body << report.dump(2) << "\n";
    else render_text(report, body, "");
    if (o.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw vidinli::input_error("cannot write " + o.out);
        out << body.str();
    }
}

json report_shell(const std::string& command, const std::string& digest) {
    return json{{"command", command}, {"input_digest", digest}};
}

vidinli::AlgebraFile load(const std::string& path, std::string& digest) {
    std::string text = slurp(path);
    digest = vidinli::input_digest(text);
    return vidinli::parse_algebra_file(text);
}

/// Char != 2 commands need the derived presentation; rejection here is a
/// user-input problem, not a bug.
vidinli::VidinliPresentation presentation_or_fail(const vidinli::Algebra& a) {
    auto res = vidinli::is_vidinli(a);
    if (!res.presentation)
        throw vidinli::input_error(std::string("the input algebra is not accepted: ") +
                                   vidinli::to_string(res.reason));
    return std::move(*res.presentation);
}

void require_not_char2(const vidinli::Field& f, const char* cmd) {
    if (f.characteristic() == 2)
        throw vidinli::input_error(std::string(cmd) +
                                   " applies to characteristic != 2; over GF(2) use "
                                   "verify, centers, classify2, or iso");
}

int cmd_verify(const vidinli::AlgebraFile& af, const std::string& digest,
               const CommonOpts& opts) {
    json rep = report_shell("verify", digest);
    bool accepted = false;
    if (af.field.characteristic() == 2) {
        auto res = vidinli::is_vidinli_char2(af.algebra);
        accepted = res.record.has_value();
        json result{{"regime", "char_2"}, {"accepted", accepted}};
        if (accepted) {
            json qv = json::array();
            for (const auto& s : res.record->q_values) qv.push_back(vidinli::scalar_to_json(s));
            result["q_values"] = std::move(qv);
            result["qA1_zero"] = res.record->qA1_zero;
        } else {
            result["reason"] = res.reason;
        }
        rep["result"] = std::move(result);
    } else {
        auto res = vidinli::is_vidinli(af.algebra);
        accepted = res.presentation.has_value();
        json result{{"regime", "char_not_2"}, {"accepted", accepted}};
        if (accepted) {
            const auto& p = *res.presentation;
            result["V"] = vidinli::subspace_to_json(p.V);
            result["B"] = vidinli::matrix_to_json(p.B);
            result["omega"] = vidinli::matrix_to_json(p.omega);
            result["q_gram"] = vidinli::matrix_to_json(p.q.q_gram);
            result["B_symmetric"] = p.B_symmetric();
        } else {
            result["reason"] = vidinli::to_string(res.reason);
        }
        rep["result"] = std::move(result);
    }
    emit(rep, opts);
    return accepted ? 0 : 1;
}

int cmd_analyze(const vidinli::AlgebraFile& af, const std::string& digest,
                const CommonOpts& opts, bool force_oracle) {
    require_not_char2(af.field, "analyze");
    auto p = presentation_or_fail(af.algebra);
    vidinli::StructureOptions so;
    so.force_oracle = force_oracle;
    auto rep = vidinli::structure_report(p, so);

    json out = report_shell("analyze", digest);
    json result{{"rad", vidinli::subspace_to_json(rep.rad)},
                {"quotient_class", vidinli::to_string(rep.quotient_class)},
                {"complement_S", vidinli::subspace_to_json(rep.complement_S)},
                {"maximal_ideal_count", vidinli::to_string(rep.maximal_ideal_count)}};
    if (rep.dims) {
        result["dims"] = json{{"derivations", rep.dims->der},
                              {"mult_algebra", rep.dims->mult},
                              {"lie_mult_algebra", rep.dims->lie_mult},
                              {"center", rep.dims->center}};
    }
    out["result"] = std::move(result);
    out["checks"] = json{{"oracle_checked", rep.oracle_checked}};
    emit(out, opts);
    return 0;
}

int cmd_derivations(const vidinli::AlgebraFile& af, const std::string& digest,
                    const CommonOpts& opts) {
    require_not_char2(af.field, "derivations");
    auto p = presentation_or_fail(af.algebra);
    auto skew = vidinli::derivations_skew(p);
    auto generic = vidinli::derivations_generic(af.algebra);
    if (!(skew == generic))
        throw vidinli::theorem_violation("derivations from the skew description differ from "
                                         "the Leibniz kernel");
    json out = report_shell("derivations", digest);
    out["result"] = vidinli::operator_span_to_json(skew);
    out["checks"] = json{{"skew_equals_generic", true}};
    emit(out, opts);
    return 0;
}

int cmd_multalg(const vidinli::AlgebraFile& af, const std::string& digest,
                const CommonOpts& opts) {
    require_not_char2(af.field, "multalg");
    auto p = presentation_or_fail(af.algebra);
    auto rep = vidinli::mult_algebra_report(p);
    if (!rep.match) throw vidinli::theorem_violation("multiplication algebra differs from its "
                                                     "predicted span");
    if (!rep.annihilator_ok)
        throw vidinli::theorem_violation("the radical annihilator identity failed");
    if (!rep.square_zero_ok)
        throw vidinli::theorem_violation("the radical-functional ideal does not square to zero");
    json out = report_shell("multalg", digest);
    out["result"] = json{{"case", vidinli::to_string(rep.case_label)},
                         {"dim", rep.computed.dim()},
                         {"basis", vidinli::operator_span_to_json(rep.computed)["basis"]}};
    out["checks"] = json{{"match", rep.match},
                         {"annihilator_ok", rep.annihilator_ok},
                         {"square_zero_ok", rep.square_zero_ok}};
    emit(out, opts);
    return 0;
}

int cmd_liemultalg(const vidinli::AlgebraFile& af, const std::string& digest,
                   const CommonOpts& opts) {
    require_not_char2(af.field, "liemultalg");
    auto p = presentation_or_fail(af.algebra);
    auto rep = vidinli::lie_mult_algebra_report(p);
    if (!rep.match)
        throw vidinli::theorem_violation("Lie multiplication algebra differs from its "
                                         "predicted span");
    json out = report_shell("liemultalg", digest);
    out["result"] = json{{"symmetric_case", rep.symmetric_case},
                         {"dim", rep.computed.dim()},
                         {"basis", vidinli::operator_span_to_json(rep.computed)["basis"]}};
    out["checks"] = json{{"match", rep.match}};
    emit(out, opts);
    return 0;
}

int cmd_decompose(const vidinli::AlgebraFile& af, const std::string& digest,
                  const CommonOpts& opts, const std::string& factors_arg) {
    require_not_char2(af.field, "decompose");
    auto p = presentation_or_fail(af.algebra);

    std::optional<std::vector<vidinli::Poly>> factors;
    if (!factors_arg.empty()) {
        std::vector<vidinli::Poly> fs;
        std::stringstream ss(factors_arg);
        std::string part;
        while (std::getline(ss, part, ';')) {
            std::vector<vidinli::Scalar> coeffs;
            std::stringstream ps(part);
            std::string tok;
            while (std::getline(ps, tok, ','))
                coeffs.push_back(vidinli::Scalar::parse(af.field, tok));
            fs.emplace_back(af.field, std::move(coeffs));
        }
        if (fs.empty()) throw vidinli::input_error("--factors parsed to an empty list");
        factors = std::move(fs);
    }
    auto dec = vidinli::sigma_decompose(p, factors);

    json out = report_shell("decompose", digest);
    json fl = json::array(), comps = json::array(), subs = json::array(),
         pairing = json::array(), mults = json::array(), partners = json::array();
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        fl.push_back(vidinli::poly_to_json(dec.factors[i]));
        mults.push_back(dec.multiplicities[i]);
        partners.push_back(dec.partner[i]);
        pairing.push_back(vidinli::to_string(dec.pairing[i]));
        comps.push_back(vidinli::subspace_to_json(dec.components[i]));
    }
    for (const auto& s : dec.subalgebras) subs.push_back(vidinli::subspace_to_json(s));
    out["result"] = json{{"sigma", vidinli::matrix_to_json(dec.sigma)},
                         {"factors", std::move(fl)},
                         {"multiplicities", std::move(mults)},
                         {"partner", std::move(partners)},
                         {"pairing", std::move(pairing)},
                         {"self_paired_count", dec.r},
                         {"isotropic_pair_count", dec.s},
                         {"components_in_V_coordinates", std::move(comps)},
                         {"nondegenerate_subalgebras", std::move(subs)}};
    out["checks"] = json{{"skew_verified", true},
                         {"orthogonality_verified", true},
                         {"isotropy_verified", true}};
    emit(out, opts);
    return 0;
}

int cmd_centers(const vidinli::AlgebraFile& af, const std::string& digest,
                const CommonOpts& opts) {
    json out = report_shell("centers", digest);
    if (af.field.characteristic() == 2) {
        auto rep = vidinli::center_char2(af.algebra);
        out["result"] = json{{"regime", "char_2"},
                             {"Z", vidinli::subspace_to_json(rep.Z)},
                             {"N", vidinli::subspace_to_json(rep.N)},
                             {"branch", vidinli::to_string(rep.branch)}};
    } else {
        auto p = presentation_or_fail(af.algebra);
        auto rep = vidinli::center_report(p);
        out["result"] = json{{"regime", "char_not_2"},
                             {"K", vidinli::subspace_to_json(rep.K)},
                             {"N", vidinli::subspace_to_json(rep.N)},
                             {"Z", vidinli::subspace_to_json(rep.Z)},
                             {"branch", vidinli::to_string(rep.branch)}};
    }
    out["checks"] = json{{"nucleus_equals_center", true}};
    emit(out, opts);
    return 0;
}

vidinli::Char2Presentation char2_presentation_of(const vidinli::AlgebraFile& af) {
    if (af.char2p) return *af.char2p;
    if (af.field.characteristic() != 2)
        throw vidinli::input_error("iso needs characteristic-2 inputs");
    return vidinli::extract_char2_presentation(af.algebra);
}

int cmd_iso(const std::string& path_a, const std::string& path_b, const CommonOpts& opts,
            std::size_t max_iso_dim) {
    std::string dig_a, dig_b;
    auto fa = load(path_a, dig_a);
    auto fb = load(path_b, dig_b);
    auto pa = char2_presentation_of(fa);
    auto pb = char2_presentation_of(fb);
    auto witness = vidinli::iso_test_char2(pa, pb, max_iso_dim);

    json out{{"command", "iso"},
             {"input_digest", json::array({dig_a, dig_b})}};
    if (witness) {
        out["result"] = json{{"isomorphic", true},
                             {"f", vidinli::vec_to_json(witness->f)},
                             {"Phi", vidinli::matrix_to_json(witness->Phi)},
                             {"Upsilon", vidinli::matrix_to_json(witness->Upsilon)}};
        out["checks"] = json{{"witness_reverified", true}};
    } else {
        out["result"] = json{{"isomorphic", false}};
        out["checks"] = json{{"search_exhausted", true}};
    }
    emit(out, opts);
    return 0;
}

int cmd_classify2(const vidinli::AlgebraFile& af, const std::string& digest,
                  const CommonOpts& opts) {
    auto cls = vidinli::classify_dim2(af.algebra);
    json out = report_shell("classify2", digest);
    out["result"] = json{{"class", vidinli::to_string(cls.tag)},
                         {"witness", vidinli::vec_to_json(cls.witness)},
                         {"min_poly", vidinli::poly_to_json(cls.min_poly)}};
    emit(out, opts);
    return 0;
}

int cmd_example(const std::string& family, std::size_t n, const std::string& field_arg,
                const CommonOpts& opts) {
    if (family != "coskun-eden")
        throw vidinli::input_error("unknown example family \"" + family +
                                   "\"; available: coskun-eden");
    vidinli::Field f = vidinli::Field::rationals();
    if (!field_arg.empty() && field_arg != "rational")
        f = vidinli::Field::gf(std::stoull(field_arg));
    auto p = vidinli::coskun_eden_example(f, n);
    vidinli::Matrix bv = p.B_on_V();
    vidinli::AlgebraFile af{f, vidinli::PresentationKind::bilinear, bv, std::nullopt,
                            p.algebra};
    emit(vidinli::algebra_file_to_json(af), opts);
    return 0;
}

int cmd_oracle_ideals(const vidinli::AlgebraFile& af, const std::string& digest,
                      const CommonOpts& opts, std::size_t bound) {
    auto ideals = vidinli::enumerate_ideals(af.algebra, bound);
    json out = report_shell("oracle-ideals", digest);
    json list = json::array();
    for (const auto& s : ideals) list.push_back(vidinli::subspace_to_json(s));
    out["result"] = json{{"count", ideals.size()},
                         {"simple", ideals.size() == 2},
                         {"ideals", std::move(list)}};
    emit(out, opts);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structure analysis for conic algebras with central commutators"};
    app.require_subcommand(1);

    std::string in_path, in_path_b, factors_arg, field_arg, family;
    std::size_t example_n = 1;
    std::size_t max_iso_dim = vidinli::kDefaultIsoDimBound;
    std::size_t bound = vidinli::kDefaultEnumerationBound;
    bool force_oracle = false;
    CommonOpts opts;

    auto* verify = app.add_subcommand("verify", "acceptance test and derived forms");
    verify->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(verify, opts);

    auto* analyze = app.add_subcommand("analyze", "radical, quotient class, key dimensions");
    analyze->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    analyze->add_flag("--oracle", force_oracle,
                      "force the ideal-enumeration cross-check on finite fields");
    add_common(analyze, opts);

    auto* derivations = app.add_subcommand("derivations", "derivation algebra basis");
    derivations->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(derivations, opts);

    auto* multalg = app.add_subcommand("multalg", "multiplication algebra versus prediction");
    multalg->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(multalg, opts);

    auto* liemultalg =
        app.add_subcommand("liemultalg", "Lie multiplication algebra versus prediction");
    liemultalg->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(liemultalg, opts);

    auto* decompose = app.add_subcommand("decompose", "primary decomposition under sigma");
    decompose->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    decompose->add_option("--factors", factors_arg,
                          "irreducible factors of sigma's minimal polynomial, lowest-degree "
                          "coefficient first, comma-separated, factors joined by ';' "
                          "(required over the rationals)");
    add_common(decompose, opts);

    auto* centers = app.add_subcommand("centers", "commutative center, nucleus, center");
    centers->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(centers, opts);

    auto* iso = app.add_subcommand("iso", "characteristic-2 isomorphism search");
    iso->add_option("A", in_path)->required()->check(CLI::ExistingFile);
    iso->add_option("B", in_path_b)->required()->check(CLI::ExistingFile);
    iso->add_option("--max-iso-dim", max_iso_dim, "largest dim V the search will attempt");
    add_common(iso, opts);

    auto* classify2 = app.add_subcommand("classify2", "two-dimensional classification");
    classify2->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    add_common(classify2, opts);

    auto* example = app.add_subcommand("example", "emit a built-in algebra file");
    example->add_option("family", family)->required();
    example->add_option("n", example_n)->required();
    example->add_option("--field", field_arg, "rational (default) or a prime p");
    add_common(example, opts);

    auto* oracle_ideals =
        app.add_subcommand("oracle-ideals", "exhaustive ideal enumeration (finite fields)");
    oracle_ideals->add_option("input", in_path)->required()->check(CLI::ExistingFile);
    oracle_ideals->add_option("--bound", bound, "largest vector count the search will scan");
    add_common(oracle_ideals, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*iso) return cmd_iso(in_path, in_path_b, opts, max_iso_dim);
        if (*example) return cmd_example(family, example_n, field_arg, opts);

        std::string digest;
        auto af = load(in_path, digest);
        if (*verify) return cmd_verify(af, digest, opts);
        if (*analyze) return cmd_analyze(af, digest, opts, force_oracle);
        if (*derivations) return cmd_derivations(af, digest, opts);
        if (*multalg) return cmd_multalg(af, digest, opts);
        if (*liemultalg) return cmd_liemultalg(af, digest, opts);
        if (*decompose) return cmd_decompose(af, digest, opts, factors_arg);
        if (*centers) return cmd_centers(af, digest, opts);
        if (*classify2) return cmd_classify2(af, digest, opts);
        if (*oracle_ideals) return cmd_oracle_ideals(af, digest, opts, bound);
        throw vidinli::input_error("no subcommand selected");
    } catch (const vidinli::theorem_violation& e) {
        std::cerr << "property violated: " << e.what() << "\n";
        return 2;
    } catch (const vidinli::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
