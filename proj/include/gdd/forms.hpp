#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "gdd/rational_function.hpp"
#include "gdd/types.hpp"

namespace gdd {

struct Infinity {
    bool operator==(const Infinity&) const = default;
};

/// A point of P^1 over the ambient field.
using Point = std::variant<FqElement, Infinity>;

std::string to_string(const Point& x);

/// omega = f(z) dz with f != 0.
class DifferentialForm {
public:
    /// Throws DomainError("zero_form") for f = 0.
    explicit DifferentialForm(RationalFunction f);
    DifferentialForm(Polynomial num, Polynomial den) : DifferentialForm(RationalFunction(std::move(num), std::move(den))) {}

    const RationalFunction& f() const noexcept { return f_; }
    const Polynomial& num() const noexcept { return f_.num(); }
    const Polynomial& den() const noexcept { return f_.den(); }
    const FieldPtr& field() const noexcept { return f_.field(); }

    DifferentialForm operator*(const FqElement& c) const;
    bool operator==(const DifferentialForm& o) const noexcept { return f_ == o.f_; }

private:
    RationalFunction f_;
};

/// dg/g. Throws DomainError("zero_form") when g is constant and
/// DomainError("division_by_zero") when g = 0.
DifferentialForm d_log(const RationalFunction& g);

/// Order of omega at a point; at infinity this includes the double pole of dz.
std::int64_t ord_at(const DifferentialForm& omega, const Point& x);

/// Residue at a point of order >= -1. Throws DomainError("higher_order_pole").
FqElement residue_at(const DifferentialForm& omega, const FqElement& alpha);
FqElement residue_at(const DifferentialForm& omega, const Point& x);

struct LogarithmicReport {
    bool logarithmic = false;
    /// prod (z - z_i)^{A_i}, A_i the lift of the residue in (-p/2, p/2].
    std::optional<RationalFunction> witness;
};

/// Residue test: simple poles only, all residues in F_p. Needs the
/// denominator to split (DomainError("extend_field") otherwise).
LogarithmicReport is_logarithmic(const DifferentialForm& omega);

/// The same test over the algebraic closure, without splitting the
/// denominator: den squarefree, deg num < deg den, and rho = num/den' mod den
/// satisfies rho^p = rho mod den.
bool is_logarithmic_over_closure(const DifferentialForm& omega);

/// The group <sigma>, sigma(z) = zeta z, acting on forms.
struct EquivariantContext {
    std::uint64_t m = 1;
    std::optional<FqElement> zeta;  // smallest primitive m-th root in the field, if any
    std::optional<std::uint64_t> c;

    /// Throws DomainError("invalid_context") unless m >= 1 and gcd(m, p) = 1.
    static EquivariantContext make(const FieldPtr& field, std::uint64_t m);
};

/// c in Z/m with sigma^* omega = zeta^c omega, or none. Decided on the
/// supports of num and den, so zeta need not lie in the field.
std::optional<std::uint64_t> equivariance_exponent(const DifferentialForm& omega, const EquivariantContext& ctx);

struct GoodnessReport {
    bool is_good = false;
    std::optional<Point> zero_location;
    std::uint64_t conductor_h = 0;
    bool primitive = false;
    std::uint64_t c = 0;
    /// Present when good, the zero is at infinity and the poles split.
    std::optional<ResidueType> type;
};

/// Runs the equivariance and logarithmic checks (DomainError "not_equivariant"
/// / "not_logarithmic"), locates the zeros, and when there is exactly one
/// reports the conductor. The necessary conditions on (p, m, h, c) are
/// re-checked and a failure throws std::logic_error.
GoodnessReport goodness(const DifferentialForm& omega, const EquivariantContext& ctx);

/// Residues at the smallest pole of each sigma-orbit, sorted ascending.
/// Requires the only zero at infinity (DomainError("zero_not_at_infinity")),
/// split poles (DomainError("extend_field")) and a logarithmic form.
ResidueType extract_type(const DifferentialForm& omega, const EquivariantContext& ctx);

/// Pullback along z -> 1/z.
DifferentialForm invert_coordinate(const DifferentialForm& omega);
/// Pullback along z -> z + alpha; the point alpha moves to 0.
DifferentialForm translate(const DifferentialForm& omega, const FqElement& alpha);
/// Moves the unique zero of a good form to infinity.
DifferentialForm normalize_zero_at_infinity(const DifferentialForm& omega, const GoodnessReport& report);

}  // namespace gdd
