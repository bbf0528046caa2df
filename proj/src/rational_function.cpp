#include "gdd/rational_function.hpp"

#include "gdd/errors.hpp"

namespace gdd {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    require_same_field(num_.field(), den_.field());
    if (den_.is_zero()) throw DomainError("division_by_zero", "rational function with zero denominator");
    const FieldPtr& F = den_.field();
    if (num_.is_zero()) {
        den_ = Polynomial::constant(FqElement(F, F->one()));
        return;
    }
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    const FqElement lead = den_.leading();
    if (!lead.is_one()) {
        const FqElement inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(FqElement(num_.field(), num_.field()->one()))) {}

RationalFunction RationalFunction::constant(const FqElement& c) {
    return RationalFunction(Polynomial::constant(c));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (den_ == o.den_) return {num_ + o.num_, den_};
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator-() const { return {-num_, den_, true}; }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (num_.is_zero() || o.num_.is_zero()) return RationalFunction(Polynomial(field()));
    // Cross-cancel first so the products stay small.
    const Polynomial g1 = gcd(num_, o.den_);
    const Polynomial g2 = gcd(o.num_, den_);
    return {(num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1)};
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DomainError("division_by_zero", "division by the zero rational function");
    return *this * RationalFunction(o.den_, o.num_);
}

RationalFunction ratfn_reduce(const Polynomial& num, const Polynomial& den) { return {num, den}; }

RationalFunction derivative(const RationalFunction& f) {
    const Polynomial& n = f.num();
    const Polynomial& d = f.den();
    return {derivative(n) * d - n * derivative(d), d * d};
}

RationalFunction pow(const RationalFunction& f, std::int64_t e) {
    if (e >= 0) return {pow(f.num(), static_cast<std::size_t>(e)), pow(f.den(), static_cast<std::size_t>(e))};
    if (f.is_zero()) throw DomainError("division_by_zero", "negative power of zero");
    const auto k = static_cast<std::size_t>(-e);
    return {pow(f.den(), k), pow(f.num(), k)};
}

RationalFunction scale_variable(const RationalFunction& f, const FqElement& c) {
    return {scale_variable(f.num(), c), scale_variable(f.den(), c)};
}

}  // namespace gdd
