#include "gdd/io.hpp"

#include <charconv>

#include "gdd/errors.hpp"

namespace gdd::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError("invalid_argument", what); }

std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (depth < 0) bad("unbalanced brackets in '" + text + "'");
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (depth != 0) bad("unbalanced brackets in '" + text + "'");
    out.push_back(cur);
    return out;
}

const Json& at(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    if (text.empty()) bad("empty integer list");
    for (const auto& tok : split_top_level(text)) {
        std::int64_t v = 0;
        const auto* end = tok.data() + tok.size();
        const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
        if (tok.empty() || ec != std::errc() || ptr != end) bad("'" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<FqElement> parse_elements(const FieldPtr& field, const std::string& text) {
    std::vector<FqElement> out;
    if (text.empty()) bad("empty element list");
    for (const auto& tok : split_top_level(text)) {
        try {
            out.emplace_back(field, field->parse(tok));
        } catch (const DomainError&) {
            bad("'" + tok + "' is not a field element");
        }
    }
    return out;
}

Polynomial parse_polynomial(const FieldPtr& field, const std::string& text) {
    std::vector<Field::Code> codes;
    for (const auto& x : parse_elements(field, text)) codes.push_back(x.code());
    return Polynomial(field, codes);
}

Json element_json(const FqElement& x) {
    const auto& f = *x.field();
    if (f.degree() == 1) return *f.prime_field_value(x.code());
    return f.coefficients(x.code());
}

FqElement element_from_json(const FieldPtr& field, const Json& j) {
    if (j.is_number_integer()) return FqElement::from_int(field, j.get<std::int64_t>());
    if (j.is_array()) {
        std::vector<std::uint64_t> c;
        for (const auto& v : j) {
            if (!v.is_number_integer()) bad("field element coefficients must be integers");
            const auto x = v.get<std::int64_t>();
            const auto p = static_cast<std::int64_t>(field->characteristic());
            c.push_back(static_cast<std::uint64_t>(((x % p) + p) % p));
        }
        if (c.size() > field->degree()) bad("too many coefficients for the field");
        c.resize(field->degree(), 0);
        return FqElement(field, field->from_coefficients(c));
    }
    bad("field element must be an integer or an array");
}

Json point_json(const Point& x) {
    if (std::holds_alternative<Infinity>(x)) return "inf";
    return element_json(std::get<FqElement>(x));
}

Json polynomial_json(const Polynomial& f) {
    Json out = Json::array();
    for (auto c : f.codes()) out.push_back(element_json(FqElement(f.field(), c)));
    return out;
}

Polynomial polynomial_from_json(const FieldPtr& field, const Json& j) {
    if (!j.is_array()) bad("polynomial must be a coefficient array");
    std::vector<Field::Code> codes;
    for (const auto& c : j) codes.push_back(element_from_json(field, c).code());
    return Polynomial(field, codes);
}

Json field_json(const FieldPtr& field) {
    return Json{{"p", field->characteristic()}, {"d", field->degree()}, {"modulus", field->modulus()}};
}

FieldPtr field_from_json(const Json& j) {
    const auto& p = at(j, "p");
    if (!p.is_number_unsigned()) bad("field p must be a positive integer");
    unsigned d = 1;
    if (j.contains("d")) {
        if (!j.at("d").is_number_unsigned()) bad("field d must be a positive integer");
        d = j.at("d").get<unsigned>();
    }
    const auto field = Field::make(p.get<std::uint64_t>(), d);
    if (j.contains("modulus") && j.at("modulus").get<std::vector<std::uint64_t>>() != field->modulus())
        bad("modulus differs from the canonical one for this field");
    return field;
}

Json form_json(const DifferentialForm& omega) {
    return Json{{"field", field_json(omega.field())},
                {"num", polynomial_json(omega.num())},
                {"den", polynomial_json(omega.den())}};
}

DifferentialForm form_from_json(const Json& j) {
    const auto field = field_from_json(at(j, "field"));
    const auto den = polynomial_from_json(field, at(j, "den"));
    if (den.is_zero()) throw DomainError("division_by_zero", "denominator is zero");
    return DifferentialForm(polynomial_from_json(field, at(j, "num")), den);
}

Json goodness_json(const GoodnessReport& report) {
    Json out{{"good", report.is_good}};
    out["zero"] = report.zero_location ? point_json(*report.zero_location) : Json(nullptr);
    out["conductor"] = report.conductor_h;
    out["primitive"] = report.primitive;
    out["c"] = report.c;
    out["type"] = report.type ? Json(report.type->entries()) : Json(nullptr);
    return out;
}

Json verdict_json(const LiftingVerdict& verdict) {
    return Json{{"lifts", verdict.lifts},
                {"reason", std::string(to_string(verdict.reason))},
                {"p", verdict.p},
                {"m", verdict.m},
                {"h", verdict.h}};
}

Json tree_json(const WeightedPlaneTree& t) {
    Json vertices = Json::array();
    for (std::size_t v = 0; v < t.colors.size(); ++v)
        vertices.push_back({{"id", v}, {"color", t.colors[v] == Color::black ? "black" : "white"}});
    Json edges = Json::array();
    for (const auto& e : t.edges) edges.push_back({{"black", e.black}, {"white", e.white}, {"weight", e.weight}});
    Json rotation = Json::object();
    for (std::size_t v = 0; v < t.rotation.size(); ++v) rotation[std::to_string(v)] = t.rotation[v];
    return Json{{"vertices", vertices}, {"edges", edges}, {"rotation", rotation}};
}

WeightedPlaneTree tree_from_json(const Json& j) {
    WeightedPlaneTree t;
    try {
        const auto& vertices = at(j, "vertices");
        t.colors.resize(vertices.size(), Color::black);
        for (const auto& v : vertices) {
            const auto id = at(v, "id").get<std::size_t>();
            if (id >= t.colors.size()) bad("vertex id out of range");
            const auto color = at(v, "color").get<std::string>();
            if (color != "black" && color != "white") bad("vertex color must be black or white");
            t.colors[id] = color == "black" ? Color::black : Color::white;
        }
        for (const auto& e : at(j, "edges"))
            t.edges.push_back({at(e, "black").get<std::size_t>(), at(e, "white").get<std::size_t>(),
                               at(e, "weight").get<std::uint64_t>()});
        t.rotation.resize(t.colors.size());
        for (const auto& [key, ids] : at(j, "rotation").items()) {
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
            if (ec != std::errc() || ptr != key.data() + key.size() || v >= t.colors.size())
                bad("rotation key '" + key + "' is not a vertex id");
            t.rotation[v] = ids.get<std::vector<std::size_t>>();
        }
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed tree: ") + e.what());
    }
    return t;
}

Json cycle_type_json(const CycleType& c) {
    std::vector<std::size_t> nontrivial;
    for (auto k : c.parts())
        if (k > 1) nontrivial.push_back(k);
    return nontrivial;
}

Json generating_system_json(const GeneratingSystem& s) {
    const auto type = s.type();
    return Json{{"n", s.degree()},
                {"sigma1", s.sigma1.to_string()},
                {"sigma2", s.sigma2.to_string()},
                {"sigma3", s.sigma3.to_string()},
                {"c1", cycle_type_json(type.c1)},
                {"c2", cycle_type_json(type.c2)},
                {"c3", cycle_type_json(type.c3)},
                {"genus", genus(type)}};
}

Json configuration_json(const PoleConfiguration& c) {
    Json poles = Json::array();
    for (const auto& z : c.poles) poles.push_back(element_json(z));
    return poles;
}

Json search_report_json(const SearchReport& report, bool emit_witness) {
    Json query{{"p", report.p},
               {"m", report.m},
               {"type", report.type.entries()},
               {"ext", report.ext_degree},
               {"normalization", report.normalization}};
    Json solutions = Json::array();
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        Json s{{"poles", configuration_json(report.solutions[i])}, {"orbit", report.orbit_of[i]}};
        if (emit_witness) s["witness"] = form_json(form_from_poles(report.type, report.solutions[i]));
        solutions.push_back(std::move(s));
    }
    return Json{{"query", query},
                {"field", field_json(Field::make(report.p, report.ext_degree))},
                {"candidates", report.candidates},
                {"exhaustive", report.exhaustive},
                {"solution_count", report.solutions.size()},
                {"orbit_count", report.orbit_count},
                {"solutions", solutions}};
}

Json fiber_json(const Fiber& f) {
    Json points = Json::array();
    for (const auto& x : f.points)
        points.push_back({{"at", point_json(x.location)}, {"index", x.index}, {"wild", x.wild}});
    Json unsplit = Json::array();
    for (const auto& u : f.unsplit) unsplit.push_back({{"count", u.count}, {"index", u.index}, {"wild", u.wild}});
    return Json{{"points", points}, {"unsplit", unsplit}};
}

Json portrait_json(const RamificationPortrait& portrait) {
    return Json{{"degree", portrait.degree},
                {"over_zero", fiber_json(portrait.over_zero)},
                {"over_one", fiber_json(portrait.over_one)},
                {"over_infinity", fiber_json(portrait.over_infinity)},
                {"three_point", portrait.three_point},
                {"tame", portrait.tame}};
}

Json prop4_json(const Prop4Report& report) {
    Json out{{"holds", report.holds()},
             {"degree", report.degree},
             {"fiber_one", report.fiber_one},
             {"fiber_zero", report.fiber_zero},
             {"fiber_infinity", report.fiber_infinity},
             {"three_point", report.three_point},
             {"tame", report.tame}};
    out["failed"] = report.detail.empty() ? Json(nullptr) : Json(report.detail);
    return out;
}

}  // namespace gdd::io
