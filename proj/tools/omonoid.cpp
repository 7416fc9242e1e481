// omonoid - exact computations with increasingly enumerable additive
// submonoids of the reals: enumeration, generating sets, footprints,
// numerical semigroup tools, classification, and tuning-file export.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "omega/classify.hpp"
#include "omega/errors.hpp"
#include "omega/exact.hpp"
#include "omega/json_io.hpp"
#include "omega/monoid.hpp"
#include "omega/numsgp.hpp"
#include "omega/temperament.hpp"

namespace {

using namespace omega;

struct FamilyArgs {
    std::vector<std::string> spec;
    std::uint64_t radix = 2;
    std::uint64_t offset = 1;
    std::int64_t d = 12;
    std::string theta = "3/5";
};

struct OutputArgs {
    std::string format = "text";
    std::string out_path;
    unsigned digits = 4;
};

EnumerateOptions enumerate_options(std::uint64_t cap_flag) {
    EnumerateOptions options;
    if (const char* env = std::getenv("OMONOID_ELEMENT_CAP")) {
        options.element_cap = std::strtoull(env, nullptr, 10);
    }
    if (cap_flag != 0) options.element_cap = cap_flag;
    if (options.element_cap == 0) options.element_cap = EnumerateOptions{}.element_cap;
    return options;
}

bool is_family_keyword(const std::string& s) {
    return s == "naturals" || s == "logarithmic" || s == "log" || s == "pythagorean" ||
           s == "golden-fractal" || s == "golden" || s == "radix-fractal" || s == "harmonic";
}

MonoidDescriptor make_descriptor(const FamilyArgs& args) {
    if (args.spec.empty()) throw CLI::ValidationError("missing monoid family or generator list");
    const std::string& head = args.spec.front();
    if (is_family_keyword(head)) {
        if (args.spec.size() != 1) {
            throw CLI::ValidationError("family '" + head + "' takes no extra positional arguments");
        }
        if (head == "naturals") return MonoidDescriptor::finite({ExactReal(1)});
        if (head == "logarithmic" || head == "log") return MonoidDescriptor::logarithmic();
        if (head == "pythagorean") return MonoidDescriptor::pythagorean();
        if (head == "golden-fractal" || head == "golden") return MonoidDescriptor::golden_fractal();
        if (head == "radix-fractal") return MonoidDescriptor::radix_fractal(args.radix, args.offset);
        return MonoidDescriptor::harmonic(args.d, Rational::parse(args.theta));
    }
    std::vector<ExactReal> gens;
    for (const auto& token : args.spec) {
        try {
            gens.push_back(parse_exact(token));
        } catch (const ParseError& e) {
            throw CLI::ValidationError(std::string("bad generator '") + token + "': " + e.what());
        }
    }
    return MonoidDescriptor::finite(std::move(gens));
}

void emit(const OutputArgs& out, const std::string& body) {
    if (out.out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + out.out_path + " for writing");
    f << body;
    if (!f.flush()) throw IoError("write to " + out.out_path + " failed");
}

std::string join_exact(const std::vector<ExactReal>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += values[i].str();
    }
    out += '\n';
    return out;
}

std::string join_decimal(const std::vector<ExactReal>& values, unsigned digits) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += values[i].to_decimal(digits);
    }
    out += '\n';
    return out;
}

void add_family_flags(CLI::App* cmd, FamilyArgs& fam) {
    cmd->add_option("spec", fam.spec,
                    "monoid family (naturals|logarithmic|pythagorean|golden-fractal|"
                    "radix-fractal|harmonic) or a list of exact generators");
    cmd->add_option("--radix", fam.radix, "radix for radix-fractal (default 2)");
    cmd->add_option("--offset", fam.offset, "period exponent offset c in r^(n+c) (default 1)");
    cmd->add_option("--d", fam.d, "divisions per octave for harmonic (default 12)");
    cmd->add_option("--theta", fam.theta, "offset for harmonic, e.g. 3/5 (default 3/5)");
}

void add_output_flags(CLI::App* cmd, OutputArgs& out) {
    cmd->add_option("--format", out.format, "text|json|csv (default text)")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out.out_path, "write output to a file instead of stdout");
    cmd->add_option("--digits", out.digits, "fractional digits for decimal output (default 4)");
}

NumericalSemigroup harmonic_or_throw(std::int64_t d, const std::string& theta) {
    auto result = harmonic_semigroup(EdoMap{d, Rational::parse(theta)});
    if (!result.closed) {
        const auto [a, b] = *result.witness;
        throw NotClosedError({a, b}, "floor image of harmonic(" + std::to_string(d) + "," + theta +
                                         ") is not additively closed");
    }
    return *result.semigroup;
}

int run(int argc, char** argv) {
    CLI::App app{"exact toolkit for increasingly enumerable additive submonoids of the reals"};
    app.require_subcommand(1);
    std::uint64_t cap_flag = 0;
    app.add_option("--cap", cap_flag,
                   "element cap for enumerations (overrides OMONOID_ELEMENT_CAP)");

    // enumerate
    auto* enum_cmd = app.add_subcommand("enumerate", "list the monoid elements up to a bound");
    FamilyArgs enum_fam;
    OutputArgs enum_out;
    std::string enum_bound;
    bool enum_exact = false;
    add_family_flags(enum_cmd, enum_fam);
    add_output_flags(enum_cmd, enum_out);
    enum_cmd->add_option("--bound", enum_bound, "inclusive bound (exact expression)")->required();
    enum_cmd->add_flag("--exact", enum_exact, "print exact forms instead of decimals");

    // generators
    auto* gen_cmd = app.add_subcommand("generators", "minimal generating set");
    FamilyArgs gen_fam;
    OutputArgs gen_out;
    std::string gen_bound;
    add_family_flags(gen_cmd, gen_fam);
    add_output_flags(gen_cmd, gen_out);
    gen_cmd->add_option("--bound", gen_bound,
                        "truncation bound (required except for harmonic, whose generating set is "
                        "finite)");

    // footprint
    auto* fp_cmd = app.add_subcommand("footprint", "fractional parts of a/a1 up to a bound");
    FamilyArgs fp_fam;
    OutputArgs fp_out;
    std::string fp_bound;
    add_family_flags(fp_cmd, fp_fam);
    add_output_flags(fp_cmd, fp_out);
    fp_cmd->add_option("--bound", fp_bound, "inclusive truncation bound")->required();

    // periods
    auto* per_cmd = app.add_subcommand("periods", "periods of a normalized monoid");
    FamilyArgs per_fam;
    OutputArgs per_out;
    std::uint64_t per_upto = 1;
    add_family_flags(per_cmd, per_fam);
    add_output_flags(per_cmd, per_out);
    per_cmd->add_option("--upto", per_upto, "largest period index")->required();

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "scaled numerical semigroup or tempered monoid");
    FamilyArgs cls_fam;
    OutputArgs cls_out;
    std::string cls_verify_bound;
    add_family_flags(cls_cmd, cls_fam);
    add_output_flags(cls_cmd, cls_out);
    cls_cmd->add_option("--verify-bound", cls_verify_bound,
                        "cross-check the classification by enumeration up to this bound");

    // genus-count
    auto* gc_cmd = app.add_subcommand("genus-count", "count numerical semigroups by genus");
    OutputArgs gc_out;
    gc_out.format = "csv";
    unsigned gc_gmax = 7;
    unsigned gc_threads = 0;
    unsigned gc_ceiling = 35;
    bool gc_timings = false;
    gc_cmd->add_option("--gmax", gc_gmax, "largest genus")->required();
    gc_cmd->add_option("--threads", gc_threads, "worker threads (0 = hardware)");
    gc_cmd->add_option("--ceiling", gc_ceiling, "refuse genus requests beyond this (default 35)");
    gc_cmd->add_flag("--timings", gc_timings, "append the elapsed_ms column (not byte-stable)");
    add_output_flags(gc_cmd, gc_out);

    // harmonic
    auto* harm_cmd = app.add_subcommand("harmonic", "the harmonic numerical semigroup of (d, theta)");
    OutputArgs harm_out;
    std::int64_t harm_d = 12;
    std::string harm_theta = "3/5";
    std::uint64_t harm_imax = 0;
    harm_cmd->add_option("--d", harm_d, "divisions per octave")->required();
    harm_cmd->add_option("--theta", harm_theta, "offset, e.g. 3/5")->required();
    harm_cmd->add_option("--imax", harm_imax, "harmonics listed in csv output (default: cofinite index)");
    add_output_flags(harm_cmd, harm_out);

    // floor-check
    auto* fc_cmd = app.add_subcommand("floor-check",
                                      "check floor(scale * source + theta) against a target semigroup");
    FamilyArgs fc_src;
    std::int64_t fc_scale = 12;
    std::string fc_theta = "0";
    std::string fc_target = "harmonic";
    std::int64_t fc_target_d = 12;
    std::string fc_target_theta = "3/5";
    std::size_t fc_n = 64;
    fc_cmd->add_option("--scale", fc_scale, "integer scale factor")->required();
    fc_cmd->add_option("--theta", fc_theta, "rational offset")->required();
    fc_cmd->add_option("--source", fc_src.spec, "source monoid family or generators")->required();
    fc_cmd->add_option("--radix", fc_src.radix, "radix for radix-fractal source");
    fc_cmd->add_option("--offset", fc_src.offset, "exponent offset for radix-fractal source");
    fc_cmd->add_option("--target", fc_target, "target semigroup (harmonic)")
        ->check(CLI::IsMember({"harmonic"}));
    fc_cmd->add_option("--target-d", fc_target_d, "divisions of the target harmonic semigroup");
    fc_cmd->add_option("--target-theta", fc_target_theta, "offset of the target harmonic semigroup");
    fc_cmd->add_option("--n", fc_n, "number of source elements checked")->required();

    // pythagorean
    auto* pyth_cmd = app.add_subcommand("pythagorean", "circle-of-fifths scale");
    OutputArgs pyth_out;
    unsigned pyth_fifths = 12;
    pyth_cmd->add_option("--fifths", pyth_fifths, "number of ascending fifths")->required();
    add_output_flags(pyth_cmd, pyth_out);

    // export-scl
    auto* scl_cmd = app.add_subcommand("export-scl", "write a Scala .scl tuning file");
    std::string scl_spec;
    std::string scl_out;
    scl_cmd->add_option("spec", scl_spec, "scale spec: edo:<divisions> or pythagorean:<fifths>")
        ->required();
    scl_cmd->add_option("--out", scl_out, "output path")->required();

    // product-compat
    auto* pc_cmd = app.add_subcommand("product-compat",
                                      "check tau_{ab-1} = tau_{a-1} + tau_{b-1} for a,b <= N");
    FamilyArgs pc_fam;
    std::uint64_t pc_n = 10;
    add_family_flags(pc_cmd, pc_fam);
    pc_cmd->add_option("--N", pc_n, "range of the product-compatibility check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    const EnumerateOptions options = enumerate_options(cap_flag);

    if (*enum_cmd) {
        const auto el = enumerate(make_descriptor(enum_fam), parse_exact(enum_bound), options);
        if (enum_out.format == "json") {
            emit(enum_out, to_json(el).dump(2) + "\n");
        } else if (enum_out.format == "csv") {
            std::ostringstream os;
            element_list_csv(os, el, enum_out.digits);
            emit(enum_out, os.str());
        } else {
            emit(enum_out, enum_exact ? join_exact(el.elements)
                                      : join_decimal(el.elements, enum_out.digits));
        }
        return 0;
    }

    if (*gen_cmd) {
        std::vector<ExactReal> gens;
        ExactReal bound;
        if (!gen_fam.spec.empty() && gen_fam.spec.front() == "harmonic" && gen_bound.empty()) {
            const auto S = harmonic_or_throw(gen_fam.d, gen_fam.theta);
            for (auto g : S.minimal_generators()) gens.push_back(ExactReal(Rational(g)));
            bound = ExactReal(Rational(S.conductor() + S.multiplicity()));
        } else {
            if (gen_bound.empty()) {
                throw CLI::RequiredError("--bound (required for every family except harmonic)");
            }
            bound = parse_exact(gen_bound);
            gens = minimal_generating_set(enumerate(make_descriptor(gen_fam), bound, options));
        }
        if (gen_out.format == "json") {
            Json j{{"bound", to_json(bound)}, {"generators", Json::array()}};
            for (const auto& g : gens) j["generators"].push_back(to_json(g));
            emit(gen_out, j.dump(2) + "\n");
        } else {
            emit(gen_out, join_exact(gens));
        }
        return 0;
    }

    if (*fp_cmd) {
        const auto fp = footprint(enumerate(make_descriptor(fp_fam), parse_exact(fp_bound), options));
        if (fp_out.format == "json") {
            emit(fp_out, to_json(fp).dump(2) + "\n");
        } else {
            emit(fp_out, join_exact(fp.values));
        }
        return 0;
    }

    if (*per_cmd) {
        const auto el = enumerate(make_descriptor(per_fam), ExactReal(Int(per_upto + 1)), options);
        const auto pers = periods(el, per_upto);
        if (per_out.format == "json") {
            Json j{{"granularity", pers.front().members.size()}, {"periods", Json::array()}};
            for (const auto& p : pers) {
                Json members = Json::array();
                for (const auto& m : p.members) members.push_back(to_json(m));
                j["periods"].push_back(Json{{"index", p.index}, {"members", std::move(members)}});
            }
            emit(per_out, j.dump(2) + "\n");
        } else {
            std::string body = "granularity " + std::to_string(pers.front().members.size()) + "\n";
            for (const auto& p : pers) {
                body += std::to_string(p.index) + ": " + join_exact(p.members);
            }
            emit(per_out, body);
        }
        return 0;
    }

    if (*cls_cmd) {
        if (cls_fam.spec.empty()) throw CLI::ValidationError("classify needs generators or a family");
        const std::string& head = cls_fam.spec.front();
        std::optional<Classification> result;
        std::vector<ExactReal> gens;
        if (head == "logarithmic" || head == "log" || head == "golden-fractal" ||
            head == "golden" || head == "radix-fractal") {
            // Infinite minimal generating set: tempered without computation.
            const auto el = first_n_elements(make_descriptor(cls_fam), 8, options);
            result = TemperedClassification{el.elements[1], el.elements[2], "infinite-generating-set"};
        } else {
            if (head == "pythagorean") {
                gens = {ExactReal(1), ExactReal::log2_of(Int(3))};
            } else if (head == "harmonic") {
                const auto S = harmonic_or_throw(cls_fam.d, cls_fam.theta);
                for (auto g : S.minimal_generators()) {
                    gens.push_back(ExactReal(Rational(g)));
                }
            } else if (head == "naturals") {
                gens = {ExactReal(1)};
            } else {
                for (const auto& token : cls_fam.spec) gens.push_back(parse_exact(token));
            }
            result = classify(gens);
        }

        bool verified = false;
        bool ran_verify = false;
        if (!cls_verify_bound.empty() && !gens.empty()) {
            verified = verify_classification(gens, *result, parse_exact(cls_verify_bound), options);
            ran_verify = true;
        }
        if (cls_out.format == "json") {
            Json j = to_json(*result);
            if (ran_verify) j["verified"] = verified;
            emit(cls_out, j.dump(2) + "\n");
        } else {
            std::string body;
            if (const auto* sc = std::get_if<ScaledClassification>(&*result)) {
                body = "scaled lambda=" + sc->lambda.str() + " generators=";
                const auto& mg = sc->semigroup.minimal_generators();
                for (std::size_t i = 0; i < mg.size(); ++i) {
                    body += (i ? "," : "") + std::to_string(mg[i]);
                }
            } else {
                const auto& t = std::get<TemperedClassification>(*result);
                body = "tempered witness=(" + t.witness_a.str() + ", " + t.witness_b.str() +
                       ") reason=" + t.reason;
            }
            if (ran_verify) body += verified ? " verified=true" : " verified=false";
            emit(cls_out, body + "\n");
        }
        return 0;
    }

    if (*gc_cmd) {
        GenusCountOptions gopt;
        gopt.threads = gc_threads;
        gopt.ceiling = gc_ceiling;
        const auto report = genus_count(gc_gmax, gopt);
        if (gc_out.format == "json") {
            emit(gc_out, to_json(report, gc_timings).dump(2) + "\n");
        } else {
            std::ostringstream os;
            genus_report_csv(os, report, gc_timings);
            emit(gc_out, os.str());
        }
        return 0;
    }

    if (*harm_cmd) {
        if (harm_out.format == "csv") {
            const EdoMap map{harm_d, Rational::parse(harm_theta)};
            std::uint64_t imax = harm_imax;
            if (imax == 0) {
                imax = 1;
                while (!(pow_checked(Int(imax + 1), Int(harm_d)) <
                         2 * pow_checked(Int(imax), Int(harm_d)))) {
                    ++imax;
                }
            }
            std::ostringstream os;
            harmonic_table_csv(os, map, imax, harm_out.digits);
            emit(harm_out, os.str());
            return 0;
        }
        const auto result = harmonic_semigroup(EdoMap{harm_d, Rational::parse(harm_theta)});
        if (harm_out.format == "json") {
            Json j{{"closed", result.closed}};
            if (result.closed) {
                j["semigroup"] = to_json(*result.semigroup);
            } else {
                j["witness"] = {result.witness->first, result.witness->second};
            }
            emit(harm_out, j.dump(2) + "\n");
        } else {
            std::string body = std::string("closed ") + (result.closed ? "true" : "false") + "\n";
            if (result.closed) {
                const auto& S = *result.semigroup;
                body += "multiplicity " + std::to_string(S.multiplicity()) + "\n";
                body += "genus " + std::to_string(S.genus()) + "\n";
                body += "frobenius " + std::to_string(S.frobenius()) + "\n";
                body += "gaps";
                for (auto g : S.gaps()) body += " " + std::to_string(g);
                body += "\ngenerators";
                for (auto g : S.minimal_generators()) body += " " + std::to_string(g);
                body += "\n";
            } else {
                body += "witness " + std::to_string(result.witness->first) + "+" +
                        std::to_string(result.witness->second) + "\n";
            }
            emit(harm_out, body);
        }
        return 0;
    }

    if (*fc_cmd) {
        const auto target = harmonic_or_throw(fc_target_d, fc_target_theta);
        const auto source = first_n_elements(make_descriptor(fc_src), fc_n, options);
        const bool ok =
            floor_relation_check(fc_scale, Rational::parse(fc_theta), source.elements, target, fc_n);
        std::cout << (ok ? "true" : "false") << "\n";
        return 0;
    }

    if (*pyth_cmd) {
        const auto scale = pythagorean_scale(pyth_fifths);
        if (pyth_out.format == "json") {
            emit(pyth_out, to_json(scale).dump(2) + "\n");
        } else {
            std::string body;
            for (const auto& p : scale.pitches) {
                body += p.label + " " + scalar_mul(Rational(1200), p.value).to_decimal(6) + " " +
                        p.value.str() + "\n";
            }
            emit(pyth_out, body);
        }
        return 0;
    }

    if (*scl_cmd) {
        const auto colon = scl_spec.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("scale spec must be edo:<divisions> or pythagorean:<fifths>");
        }
        const std::string kind = scl_spec.substr(0, colon);
        unsigned arg = 0;
        try {
            arg = static_cast<unsigned>(std::stoul(scl_spec.substr(colon + 1)));
        } catch (const std::exception&) {
            throw CLI::ValidationError("scale spec needs a number after ':'");
        }
        Scale scale;
        if (kind == "edo") {
            scale = edo_scale(arg);
        } else if (kind == "pythagorean") {
            scale = pythagorean_scale(arg);
        } else {
            throw CLI::ValidationError("unknown scale kind '" + kind + "'");
        }
        export_scl(scale, scl_out);
        return 0;
    }

    if (*pc_cmd) {
        const auto el = first_n_elements(make_descriptor(pc_fam), pc_n * pc_n, options);
        std::cout << (product_compatible_check(el, pc_n) ? "true" : "false") << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const omega::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const omega::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
