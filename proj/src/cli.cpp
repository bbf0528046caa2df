#include "gdd/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "gdd/errors.hpp"
#include "gdd/io.hpp"

namespace gdd::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-format problems in arguments are usage errors, not domain errors.
template <typename F>
auto parse_arg(const std::string& flag, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    } catch (const Json::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<std::int64_t> int_list(const std::string& flag, const std::string& text) {
    return parse_arg(flag, [&] { return io::parse_int_list(text); });
}

std::vector<std::size_t> size_list(const std::string& flag, const std::string& text) {
    std::vector<std::size_t> out;
    if (text.empty() || text == "()") return out;
    for (auto v : int_list(flag, text)) {
        if (v <= 0) throw UsageError(flag + ": cycle lengths must be positive");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// Inline JSON, @file, or - for stdin.
Json json_arg(const std::string& flag, const std::string& text) {
    std::string body = text;
    if (text == "-") {
        body.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw UsageError(flag + ": cannot read " + text.substr(1));
        body.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(body);
    } catch (const Json::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Json unwrap(const Json& j, const char* key) { return j.is_object() && j.contains(key) ? j.at(key) : j; }

CombinatorialType combinatorial_type(std::size_t n, const std::string& c1, const std::string& c2, const std::string& c3) {
    return parse_arg("--c1/--c2/--c3", [&] {
        return CombinatorialType{n, CycleType(size_list("--c1", c1), n), CycleType(size_list("--c2", c2), n),
                                 CycleType(size_list("--c3", c3), n)};
    });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Good deformation data, dessins and lifting criteria over finite fields", "gdd"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();

    bool pretty = false;
    unsigned threads = 1;
    app.add_flag("--pretty", pretty, "Indented JSON output");
    app.add_option("--threads", threads, "Worker threads for searches")->check(CLI::PositiveNumber);

    // shared option storage
    std::string lift, type_text, other_text, num_text, den_text, form_text, json_text, poles_text;
    std::string c1_text, c2_text, c3_text;
    std::uint64_t p = 0, m = 1, h = 0, cap = 0, start_offset = 0, bound = 0;
    unsigned ext = 1;
    std::size_t n = 0, limit = 0, max_degree = kDefaultMaxDegree;
    bool dot = false, primitive = false, emit_witness = false;

    auto* realizable_cmd = app.add_subcommand("realizable", "Realizability of the combinatorial type of a lift");
    realizable_cmd->add_option("--lift", lift, "Zero-sum lift, e.g. 2,4,-3,-2,-1")->required();

    auto* tree_cmd = app.add_subcommand("tree", "Weighted plane tree and generating system of a lift");
    auto* tree_lift = tree_cmd->add_option("--lift", lift, "Zero-sum lift");
    auto* tree_json = tree_cmd->add_option("--from-json", json_text, "Tree JSON (inline, @file or -)");
    tree_lift->excludes(tree_json);
    tree_cmd->add_flag("--dot", dot, "Include Graphviz DOT text");

    auto* dessin_cmd = app.add_subcommand("dessin", "Generating systems of a combinatorial type");
    dessin_cmd->require_subcommand(1);
    dessin_cmd->fallthrough();
    auto* dessin_search = dessin_cmd->add_subcommand("search", "List generating systems");
    auto* dessin_count = dessin_cmd->add_subcommand("count", "Count them up to simultaneous conjugation");
    for (auto* sub : {dessin_search, dessin_count}) {
        sub->add_option("--n", n, "Degree")->required();
        sub->add_option("--c1", c1_text, "Cycle lengths of sigma1")->required();
        sub->add_option("--c2", c2_text, "Cycle lengths of sigma2")->required();
        sub->add_option("--c3", c3_text, "Cycle lengths of sigma3")->required();
        sub->add_option("--max-degree", max_degree, "Refuse larger degrees");
    }
    dessin_search->add_option("--limit", limit, "Stop after this many systems");

    auto* type_cmd = app.add_subcommand("type", "Residue types");
    type_cmd->require_subcommand(1);
    type_cmd->fallthrough();
    auto* type_canon = type_cmd->add_subcommand("canon", "Canonical representative");
    auto* type_equiv = type_cmd->add_subcommand("equiv", "Equivalence of two types");
    auto* type_certify = type_cmd->add_subcommand("certify", "Lift certificates for m = 1");
    for (auto* sub : {type_canon, type_equiv, type_certify}) {
        sub->add_option("--p", p, "Prime")->required();
        sub->add_option("--type", type_text, "Residues, comma-separated")->required();
    }
    for (auto* sub : {type_canon, type_equiv}) sub->add_option("--m", m, "Order of the tame part");
    type_equiv->add_option("--other", other_text, "Second type")->required();
    type_certify->add_option("--bound", bound, "Largest |A_i| examined");

    auto* def_cmd = app.add_subcommand("defdatum", "Deformation data");
    def_cmd->require_subcommand(1);
    def_cmd->fallthrough();
    auto* def_construct = def_cmd->add_subcommand("construct", "Explicit good deformation datum");
    def_construct->add_option("--p", p)->required();
    def_construct->add_option("--m", m)->required();
    def_construct->add_option("--h", h)->required();
    def_construct->add_flag("--primitive", primitive, "dz/prod(z^m - z_i^m) instead of h dz/(z^{h+1} - z)");
    auto* def_search = def_cmd->add_subcommand("search", "Exhaustive search over a finite field");
    def_search->add_option("--p", p)->required();
    def_search->add_option("--m", m)->required();
    def_search->add_option("--type", type_text, "Canonical type")->required();
    def_search->add_option("--ext", ext, "Extension degree d of F_{p^d}")->check(CLI::PositiveNumber);
    def_search->add_option("--cap", cap, "Candidate cap (default from DEFDATUM_MAX_CANDIDATES or 1e9)");
    def_search->add_option("--start-offset", start_offset, "First candidate index");
    def_search->add_flag("--emit-witness", emit_witness, "Include each form");
    auto* def_verify = def_cmd->add_subcommand("verify", "Goodness report of a form");
    def_verify->add_option("--p", p);
    auto* verify_m = def_verify->add_option("--m", m, "Defaults to the m recorded next to --form, else 1");
    def_verify->add_option("--ext", ext)->check(CLI::PositiveNumber);
    def_verify->add_option("--num", num_text, "Numerator, lowest degree first");
    def_verify->add_option("--den", den_text, "Denominator, lowest degree first");
    def_verify->add_option("--form", form_text, "Form JSON (inline, @file or -)");

    auto* lift_cmd = app.add_subcommand("lift", "Local lifting problem");
    lift_cmd->require_subcommand(1);
    lift_cmd->fallthrough();
    auto* lift_decide = lift_cmd->add_subcommand("decide", "Whether the action lifts");
    lift_decide->add_option("--p", p)->required();
    lift_decide->add_option("--m", m)->required();
    lift_decide->add_option("--h", h)->required();

    auto* prop4_cmd = app.add_subcommand("prop4", "Ramification of the m = 2 reduction");
    prop4_cmd->require_subcommand(1);
    prop4_cmd->fallthrough();
    auto* prop4_verify = prop4_cmd->add_subcommand("verify", "Check the fibers of g~");
    prop4_verify->add_option("--p", p)->required();
    prop4_verify->add_option("--lift", lift, "Positive lift A")->required();
    prop4_verify->add_option("--poles", poles_text, "z_1,...,z_r; searched for when absent");
    prop4_verify->add_option("--ext", ext)->check(CLI::PositiveNumber);

    auto* portrait_cmd = app.add_subcommand("portrait", "Fibers over 0, 1, infinity of a rational function");
    portrait_cmd->add_option("--p", p)->required();
    portrait_cmd->add_option("--ext", ext)->check(CLI::PositiveNumber);
    portrait_cmd->add_option("--num", num_text)->required();
    portrait_cmd->add_option("--den", den_text)->required();

    std::vector<std::string> argv_store{"gdd"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kComputed : kUsageError;
    }

    auto emit = [&](const Json& j) {
        out << (pretty ? j.dump(2) : j.dump()) << "\n";
        return kComputed;
    };

    try {
        if (realizable_cmd->parsed()) {
            const LiftedType a(int_list("--lift", lift));
            const auto s = stats(a);
            return emit(Json{{"realizable", realizable(a)}, {"n", s.n}, {"k", s.k}, {"r", a.size()}, {"lift", a.entries()}});
        }

        if (tree_cmd->parsed()) {
            if (lift.empty() == json_text.empty()) throw UsageError("tree: give exactly one of --lift and --from-json");
            Json result;
            WeightedPlaneTree t;
            if (!lift.empty()) {
                const LiftedType a(int_list("--lift", lift));
                t = build_tree(a);
                result["lift"] = a.entries();
            } else {
                const auto j = unwrap(json_arg("--from-json", json_text), "tree");
                t = parse_arg("--from-json", [&] { return io::tree_from_json(j); });
                if (!is_valid_tree(t)) throw DomainError("invalid_tree", "tree fails validation");
                result["lift"] = t.signed_valencies();
            }
            result["tree"] = io::tree_json(t);
            result["generating_system"] = io::generating_system_json(tree_to_generating_system(t));
            if (dot) result["dot"] = to_dot(t);
            return emit(result);
        }

        if (dessin_cmd->parsed()) {
            const auto c = combinatorial_type(n, c1_text, c2_text, c3_text);
            Json result{{"n", n},
                        {"c1", io::cycle_type_json(c.c1)},
                        {"c2", io::cycle_type_json(c.c2)},
                        {"c3", io::cycle_type_json(c.c3)}};
            if (dessin_count->parsed()) {
                result["classes"] = count_classes(c, max_degree);
                return emit(result);
            }
            const auto systems = search_generating_systems(
                c, limit > 0 ? std::optional<std::size_t>(limit) : std::nullopt, max_degree, threads);
            Json list = Json::array();
            for (const auto& s : systems) list.push_back(io::generating_system_json(s));
            result["count"] = systems.size();
            result["systems"] = list;
            return emit(result);
        }

        if (type_cmd->parsed()) {
            const ResidueType t(p, type_certify->parsed() ? 1 : m, int_list("--type", type_text));
            if (type_canon->parsed())
                return emit(Json{{"p", p}, {"m", m}, {"type", t.entries()}, {"canonical", canonicalize(t).entries()}});
            if (type_equiv->parsed()) {
                const ResidueType o(p, m, int_list("--other", other_text));
                return emit(Json{{"p", p},
                                 {"m", m},
                                 {"type", t.entries()},
                                 {"other", o.entries()},
                                 {"equivalent", equivalent(t, o)}});
            }
            const auto b = bound > 0 ? bound : default_lift_bound(t);
            const auto cert = nonexistence_certificate(t, b);
            const auto window = existence_window(t, b);
            return emit(Json{{"p", p},
                             {"type", t.entries()},
                             {"bound", b},
                             {"nonexistence_certificate", cert ? Json(cert->entries()) : Json(nullptr)},
                             {"existence_window", window ? Json(window->entries()) : Json(nullptr)}});
        }

        if (def_construct->parsed()) {
            const auto omega = primitive ? construct_prop1(p, m, h) : construct_nonprimitive(p, m, h);
            const auto report = goodness(omega, EquivariantContext::make(omega.field(), m));
            return emit(Json{{"p", p},
                             {"m", m},
                             {"h", h},
                             {"construction", primitive ? "primitive" : "nonprimitive"},
                             {"form", io::form_json(omega)},
                             {"report", io::goodness_json(report)}});
        }

        if (def_search->parsed()) {
            const auto t = ResidueType(p, m, int_list("--type", type_text));
            SearchOptions options;
            if (cap > 0) options.cap = cap;
            options.start_offset = start_offset;
            options.threads = threads;
            return emit(io::search_report_json(search_good_deformation(p, m, t, ext, options), emit_witness));
        }

        if (def_verify->parsed()) {
            std::optional<DifferentialForm> omega;
            if (!form_text.empty()) {
                if (!num_text.empty() || !den_text.empty()) throw UsageError("verify: --form excludes --num/--den");
                const auto wrapped = json_arg("--form", form_text);
                if (verify_m->count() == 0 && wrapped.is_object() && wrapped.contains("m") && wrapped.contains("form"))
                    m = parse_arg("--form", [&] { return wrapped.at("m").get<std::uint64_t>(); });
                const auto j = unwrap(wrapped, "form");
                omega = parse_arg("--form", [&] { return io::form_from_json(j); });
            } else {
                if (p == 0 || num_text.empty() || den_text.empty())
                    throw UsageError("verify: give --p, --num and --den, or --form");
                const auto field = Field::make(p, ext);
                const auto num = parse_arg("--num", [&] { return io::parse_polynomial(field, num_text); });
                const auto den = parse_arg("--den", [&] { return io::parse_polynomial(field, den_text); });
                omega = DifferentialForm(num, den);
            }
            auto result = io::goodness_json(goodness(*omega, EquivariantContext::make(omega->field(), m)));
            result["m"] = m;
            result["form"] = io::form_json(*omega);
            return emit(result);
        }

        if (lift_decide->parsed()) return emit(io::verdict_json(decide_lifting(p, m, h)));

        if (prop4_verify->parsed()) {
            const LiftedType a(int_list("--lift", lift));
            std::vector<PoleConfiguration> configs;
            const auto field = Field::make(p, ext);
            if (!poles_text.empty()) {
                PoleConfiguration c{2, parse_arg("--poles", [&] { return io::parse_elements(field, poles_text); })};
                configs.push_back(std::move(c));
            } else {
                const ResidueType t(p, 2, a.entries());
                if (canonicalize(t) != t)
                    throw DomainError("invalid_argument", "without --poles the lift must reduce to a canonical type");
                SearchOptions options;
                options.threads = threads;
                configs = search_good_deformation(p, 2, t, ext, options).solutions;
            }
            Json checks = Json::array();
            bool all = !configs.empty();
            for (const auto& c : configs) {
                const auto gt = m2_reduce(a, c);
                const auto report = verify_prop4(gt, a, c);
                all = all && report.holds();
                checks.push_back({{"poles", io::configuration_json(c)},
                                  {"gt", {{"num", io::polynomial_json(gt.num())}, {"den", io::polynomial_json(gt.den())}}},
                                  {"report", io::prop4_json(report)}});
            }
            return emit(Json{{"p", p},
                             {"lift", a.entries()},
                             {"field", io::field_json(field)},
                             {"holds", all},
                             {"checks", checks}});
        }

        if (portrait_cmd->parsed()) {
            const auto field = Field::make(p, ext);
            const auto num = parse_arg("--num", [&] { return io::parse_polynomial(field, num_text); });
            const auto den = parse_arg("--den", [&] { return io::parse_polynomial(field, den_text); });
            return emit(io::portrait_json(branch_portrait(RationalFunction(num, den))));
        }
    } catch (const UsageError& e) {
        err << "gdd: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        out << Json{{"error", e.reason()}, {"message", e.what()}}.dump() << "\n";
        return kDomainError;
    } catch (const std::logic_error& e) {
        out << Json{{"error", "internal_error"}, {"message", e.what()}}.dump() << "\n";
        return kDomainError;
    }
    err << "gdd: no command\n";
    return kUsageError;
}

}  // namespace gdd::cli
