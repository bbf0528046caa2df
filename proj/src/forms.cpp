#include "gdd/forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gdd/errors.hpp"

namespace gdd {

namespace {

std::int64_t deg(const Polynomial& f) { return static_cast<std::int64_t>(*f.degree()); }

std::int64_t ord_infinity(const DifferentialForm& omega) { return deg(omega.den()) - deg(omega.num()) - 2; }

std::size_t low_order(const Polynomial& f) {
    std::size_t i = 0;
    while (f.codes()[i] == 0) ++i;
    return i;
}

bool support_in_progression(const Polynomial& f, std::size_t start, std::uint64_t m) {
    for (std::size_t i = start; i < f.codes().size(); ++i)
        if (f.codes()[i] != 0 && (i - start) % m != 0) return false;
    return true;
}

std::int64_t centered_lift(std::uint64_t v, std::uint64_t p) {
    return 2 * v > p ? static_cast<std::int64_t>(v) - static_cast<std::int64_t>(p) : static_cast<std::int64_t>(v);
}

void check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("necessary condition violated by a good form: ") + what);
}

}  // namespace

std::string to_string(const Point& x) {
    if (std::holds_alternative<Infinity>(x)) return "inf";
    return std::get<FqElement>(x).to_string();
}

DifferentialForm::DifferentialForm(RationalFunction f) : f_(std::move(f)) {
    if (f_.is_zero()) throw DomainError("zero_form", "the zero form is not a differential form here");
}

DifferentialForm DifferentialForm::operator*(const FqElement& c) const {
    return DifferentialForm(f_ * RationalFunction::constant(c));
}

DifferentialForm d_log(const RationalFunction& g) {
    if (g.is_zero()) throw DomainError("division_by_zero", "d log of the zero function");
    return DifferentialForm(derivative(g) / g);
}

std::int64_t ord_at(const DifferentialForm& omega, const Point& x) {
    if (std::holds_alternative<Infinity>(x)) return ord_infinity(omega);
    const auto& alpha = std::get<FqElement>(x);
    require_same_field(omega.field(), alpha.field());
    return static_cast<std::int64_t>(root_multiplicity(omega.num(), alpha)) -
           static_cast<std::int64_t>(root_multiplicity(omega.den(), alpha));
}

FqElement residue_at(const DifferentialForm& omega, const FqElement& alpha) {
    const auto ord = ord_at(omega, alpha);
    if (ord >= 0) return FqElement(omega.field(), 0);
    if (ord < -1) throw DomainError("higher_order_pole", "residue requested at a pole of order " + std::to_string(-ord));
    return omega.num()(alpha) / derivative(omega.den())(alpha);
}

FqElement residue_at(const DifferentialForm& omega, const Point& x) {
    if (std::holds_alternative<FqElement>(x)) return residue_at(omega, std::get<FqElement>(x));
    const auto ord = ord_infinity(omega);
    if (ord >= 0) return FqElement(omega.field(), 0);
    if (ord < -1) throw DomainError("higher_order_pole", "residue requested at a pole of order " + std::to_string(-ord));
    return -(omega.num().leading() / omega.den().leading());
}

LogarithmicReport is_logarithmic(const DifferentialForm& omega) {
    const auto roots = roots_in_field(omega.den());
    if (roots.unsplit_degree > 0)
        throw DomainError("extend_field", "the denominator has " + std::to_string(roots.unsplit_degree) +
                                              " roots outside the field");
    LogarithmicReport report;
    if (ord_infinity(omega) < -1) return report;
    const auto& F = omega.field();
    RationalFunction g = RationalFunction::constant(FqElement(F, F->one()));
    for (const auto& [alpha, mult] : roots.roots) {
        if (mult != 1) return report;
        const auto a = F->prime_field_value(residue_at(omega, alpha).code());
        if (!a) return report;
        g = g * pow(RationalFunction(Polynomial::linear(alpha)), centered_lift(*a, F->characteristic()));
    }
    report.logarithmic = true;
    report.witness = std::move(g);
    return report;
}

bool is_logarithmic_over_closure(const DifferentialForm& omega) {
    const Polynomial& D = omega.den();
    if (D.is_constant() || *omega.num().degree() >= *D.degree()) return false;
    const Polynomial dD = derivative(D);
    const auto inv = inverse_mod(dD, D);
    if (!inv) return false;  // repeated or inseparable factor
    const Polynomial rho = (omega.num() * *inv) % D;
    return powmod(rho, omega.field()->characteristic(), D) == rho;
}

EquivariantContext EquivariantContext::make(const FieldPtr& field, std::uint64_t m) {
    if (m == 0 || std::gcd(m, field->characteristic()) != 1)
        throw DomainError("invalid_context", "m = " + std::to_string(m) + " must be positive and prime to p");
    EquivariantContext ctx;
    ctx.m = m;
    if (auto z = field->primitive_root_of_unity(m)) ctx.zeta = FqElement(field, *z);
    return ctx;
}

std::optional<std::uint64_t> equivariance_exponent(const DifferentialForm& omega, const EquivariantContext& ctx) {
    const std::uint64_t m = ctx.m;
    if (m == 1) return 0;
    const std::size_t a = low_order(omega.num());
    const std::size_t b = low_order(omega.den());
    if (!support_in_progression(omega.num(), a, m) || !support_in_progression(omega.den(), b, m)) return std::nullopt;
    const auto sm = static_cast<std::int64_t>(m);
    const std::int64_t c = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b) + 1;
    return static_cast<std::uint64_t>(((c % sm) + sm) % sm);
}

GoodnessReport goodness(const DifferentialForm& omega, const EquivariantContext& ctx) {
    const auto c = equivariance_exponent(omega, ctx);
    if (!c) throw DomainError("not_equivariant", "the form is not an eigenvector of z -> zeta z");
    if (!is_logarithmic_over_closure(omega)) throw DomainError("not_logarithmic", "the form is not logarithmic");

    const auto& F = omega.field();
    const std::uint64_t p = F->characteristic();
    const std::uint64_t m = ctx.m;
    GoodnessReport report;
    report.c = *c;
    const auto ord_inf = ord_infinity(omega);
    if (omega.num().is_constant()) {
        if (ord_inf <= 0) return report;
        report.zero_location = Infinity{};
        report.conductor_h = static_cast<std::uint64_t>(ord_inf) + 1;
    } else {
        if (ord_inf > 0) return report;
        const auto lp = is_linear_power(omega.num());
        if (!lp) return report;
        report.zero_location = lp->first;
        report.conductor_h = lp->second + 1;
    }
    report.is_good = true;
    const std::uint64_t h = report.conductor_h;
    report.primitive = std::gcd(h, m) == 1;

    check(h % p != 0, "p divides the conductor");
    check(report.primitive == (std::gcd(*c, m) == 1), "primitivity disagrees with the eigenvalue exponent");
    if (report.primitive) {
        check((p - 1) % m == 0, "m does not divide p - 1");
        check((h + 1) % m == 0, "h is not -1 mod m");
    } else {
        check(h % m == 0, "m does not divide h");
        check(*c == 0, "sigma does not fix omega");
    }
    if (std::holds_alternative<Infinity>(*report.zero_location)) {
        check((h + *c) % m == 0, "h is not -c mod m");
    } else {
        const auto& alpha = std::get<FqElement>(*report.zero_location);
        check(m == 1 || alpha.is_zero(), "the zero is not a fixed point of sigma");
        if (alpha.is_zero()) check((h + m - *c) % m == 0, "h is not c mod m");
    }

    if (std::holds_alternative<Infinity>(*report.zero_location) && roots_in_field(omega.den()).unsplit_degree == 0)
        report.type = extract_type(omega, ctx);
    return report;
}

ResidueType extract_type(const DifferentialForm& omega, const EquivariantContext& ctx) {
    if (!omega.num().is_constant() || ord_infinity(omega) <= 0)
        throw DomainError("zero_not_at_infinity", "normalize the zero to infinity first");
    const auto roots = roots_in_field(omega.den());
    if (roots.unsplit_degree > 0)
        throw DomainError("extend_field", "the poles do not split over the field");
    const auto& F = omega.field();
    std::map<Field::Code, FqElement> representative;  // sigma-orbit key z^m -> smallest pole
    for (const auto& [alpha, mult] : roots.roots) {
        if (mult != 1) throw DomainError("not_logarithmic", "pole of order " + std::to_string(mult));
        representative.try_emplace(F->pow(alpha.code(), ctx.m), alpha);
    }
    std::vector<std::int64_t> residues;
    for (const auto& [key, alpha] : representative) {
        const auto a = F->prime_field_value(residue_at(omega, alpha).code());
        if (!a) throw DomainError("not_logarithmic", "residue outside F_p at " + alpha.to_string());
        residues.push_back(static_cast<std::int64_t>(*a));
    }
    std::sort(residues.begin(), residues.end());
    return ResidueType(F->characteristic(), ctx.m, residues);
}

DifferentialForm invert_coordinate(const DifferentialForm& omega) {
    const auto& F = omega.field();
    const auto dn = deg(omega.num());
    const auto dd = deg(omega.den());
    Polynomial num = -reverse(omega.num(), static_cast<std::size_t>(dn));
    Polynomial den = reverse(omega.den(), static_cast<std::size_t>(dd));
    const auto e = dd - dn - 2;
    if (e >= 0) num = num * Polynomial::monomial(F, static_cast<std::size_t>(e));
    else den = den * Polynomial::monomial(F, static_cast<std::size_t>(-e));
    return DifferentialForm(std::move(num), std::move(den));
}

DifferentialForm translate(const DifferentialForm& omega, const FqElement& alpha) {
    return DifferentialForm(shift_variable(omega.num(), alpha), shift_variable(omega.den(), alpha));
}

DifferentialForm normalize_zero_at_infinity(const DifferentialForm& omega, const GoodnessReport& report) {
    if (!report.is_good || !report.zero_location)
        throw DomainError("not_good", "only a good form has a zero to normalize");
    if (std::holds_alternative<Infinity>(*report.zero_location)) return omega;
    return invert_coordinate(translate(omega, std::get<FqElement>(*report.zero_location)));
}

}  // namespace gdd
