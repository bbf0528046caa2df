#pragma once

#include <cstdint>
#include <string>

#include "gdd/polynomial.hpp"

namespace gdd {

/// num/den in lowest terms with den monic; zero is 0/1.
class RationalFunction {
public:
    /// Reduces to canonical form; throws DomainError("division_by_zero").
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(Polynomial num);
    static RationalFunction constant(const FqElement& c);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    const FieldPtr& field() const noexcept { return num_.field(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;

    bool operator==(const RationalFunction& o) const noexcept {
        return num_ == o.num_ && den_ == o.den_;
    }

    std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

private:
    RationalFunction(Polynomial num, Polynomial den, bool reduced)
        : num_(std::move(num)), den_(std::move(den)) { (void)reduced; }

    Polynomial num_;
    Polynomial den_;
};

RationalFunction ratfn_reduce(const Polynomial& num, const Polynomial& den);
RationalFunction derivative(const RationalFunction& f);
/// Integer power; negative exponents need f != 0.
RationalFunction pow(const RationalFunction& f, std::int64_t e);
/// f(c z).
RationalFunction scale_variable(const RationalFunction& f, const FqElement& c);

}  // namespace gdd
