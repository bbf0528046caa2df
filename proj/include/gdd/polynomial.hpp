#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdd/field.hpp"

namespace gdd {

/// Degree of a polynomial; the zero polynomial has no degree (nullopt).
using Degree = std::optional<std::size_t>;

/// Univariate polynomial over a finite field, coefficients lowest first,
/// no trailing zeros.
class Polynomial {
public:
    explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}
    Polynomial(FieldPtr field, std::vector<Field::Code> coeffs);
    static Polynomial constant(const FqElement& c);
    static Polynomial from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs);
    /// z - alpha
    static Polynomial linear(const FqElement& alpha);
    /// z^n
    static Polynomial monomial(const FieldPtr& field, std::size_t n);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Field::Code>& codes() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    Degree degree() const noexcept;
    /// Coefficient of z^i (zero past the degree).
    FqElement coeff(std::size_t i) const;
    FqElement leading() const;
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == field_->one(); }
    Polynomial monic() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const FqElement& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const noexcept { return coeffs_ == o.coeffs_; }

    FqElement operator()(const FqElement& x) const;

    /// "[c0,c1,...]" in the field's element encoding.
    std::string to_string() const;

private:
    void normalize();

    FieldPtr field_;
    std::vector<Field::Code> coeffs_;
};

/// Quotient and remainder; throws DomainError("division_by_zero").
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Formal derivative, so (z^p)' = 0.
Polynomial derivative(const Polynomial& f);
Polynomial pow(const Polynomial& f, std::size_t e);
/// u with a u = 1 mod modulus, if gcd(a, modulus) = 1.
std::optional<Polynomial> inverse_mod(const Polynomial& a, const Polynomial& modulus);
/// base^e mod modulus.
Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& modulus);

/// f(c z).
Polynomial scale_variable(const Polynomial& f, const FqElement& c);
/// f(z + c).
Polynomial shift_variable(const Polynomial& f, const FqElement& c);
/// z^n f(1/z); requires n >= deg f.
Polynomial reverse(const Polynomial& f, std::size_t n);
/// f(z^k).
Polynomial inflate(const Polynomial& f, std::size_t k);
/// g with g(z^k) = f, if every exponent of f is a multiple of k.
std::optional<Polynomial> deflate(const Polynomial& f, std::size_t k);

/// Multiplicity of alpha as a root of f (f != 0).
std::size_t root_multiplicity(const Polynomial& f, const FqElement& alpha);

struct RootReport {
    std::vector<std::pair<FqElement, std::size_t>> roots;  // ascending in the field order
    std::size_t unsplit_degree = 0;
};

/// Roots of f != 0 in the ambient field with multiplicities; the degree of the
/// part of f without roots in the field is reported as unsplit_degree.
RootReport roots_in_field(const Polynomial& f);

/// f = c * prod factor^multiplicity, each factor monic squarefree, pairwise
/// coprime, multiplicities strictly increasing. Works in characteristic p.
std::vector<std::pair<Polynomial, std::size_t>> squarefree_decomposition(const Polynomial& f);

/// (alpha, e) with f = c (z - alpha)^e, for nonconstant f. Over a finite
/// field such an alpha always lies in the field of f.
std::optional<std::pair<FqElement, std::size_t>> is_linear_power(const Polynomial& f);

}  // namespace gdd
