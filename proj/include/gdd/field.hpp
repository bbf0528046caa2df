#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gdd {

/// Finite field F_q, q = p^d, realised as F_p[t]/(modulus).
///
/// Elements are passed around as integer codes. The code of
/// c_0 + c_1 t + ... + c_{d-1} t^{d-1} is the base-p number whose most
/// significant digit is c_0, so comparing codes is the same as comparing
/// coefficient sequences lexicographically. That comparison is the total
/// order used for every canonical choice in the library.
///
/// The modulus is the lexicographically smallest monic irreducible of degree d
/// (same ordering on c_0, ..., c_{d-1}), so two processes asking for the same
/// (p, d) get identical element codes.
class Field {
public:
    using Code = std::uint64_t;

    static constexpr std::uint64_t kMaxTableOrder = std::uint64_t{1} << 22;

    /// Throws DomainError if p is not prime, d == 0, or p^d is too large.
    static std::shared_ptr<const Field> make(std::uint64_t p, unsigned d = 1);

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return d_; }
    std::uint64_t order() const noexcept { return q_; }
    /// Coefficients c_0..c_d of the modulus, lowest first (c_d = 1).
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

    Code zero() const noexcept { return 0; }
    Code one() const noexcept { return one_; }
    /// Image of an integer under Z -> F_p -> F_q.
    Code from_int(std::int64_t n) const noexcept;

    Code add(Code a, Code b) const noexcept;
    Code sub(Code a, Code b) const noexcept;
    Code neg(Code a) const noexcept;
    Code mul(Code a, Code b) const noexcept;
    /// Throws DomainError("division_by_zero") on zero.
    Code inv(Code a) const;
    Code pow(Code a, std::uint64_t e) const noexcept;
    /// Inverse Frobenius, x -> x^{1/p}.
    Code pth_root(Code a) const noexcept;

    bool in_prime_field(Code a) const noexcept;
    /// Integer lift in [0, p) of an element of F_p.
    std::optional<std::uint64_t> prime_field_value(Code a) const noexcept;

    std::vector<std::uint64_t> coefficients(Code a) const;
    Code from_coefficients(std::span<const std::uint64_t> coeffs) const;

    /// Multiplicative order of a nonzero element.
    std::uint64_t multiplicative_order(Code a) const;
    /// Smallest (in the total order) element of exact order m, if any.
    std::optional<Code> primitive_root_of_unity(std::uint64_t m) const;

    /// "7" for d = 1, "[2,0,1]" (power basis, lowest first) otherwise.
    std::string format(Code a) const;
    /// Inverse of format(); also accepts a bare integer for any d.
    Code parse(const std::string& text) const;

    bool operator==(const Field& other) const noexcept {
        return p_ == other.p_ && d_ == other.d_ && modulus_ == other.modulus_;
    }

private:
    Field(std::uint64_t p, unsigned d, std::vector<std::uint64_t> modulus);

    Code mul_slow(Code a, Code b) const;
    void build_tables();

    std::uint64_t p_;
    unsigned d_;
    std::uint64_t q_;
    Code one_;
    std::uint64_t top_weight_;  // p^{d-1}, weight of c_0
    std::vector<std::uint64_t> modulus_;

    // d > 1 only
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> add_table_;  // small q only
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n) noexcept;

/// Both fields are the same object or compare equal; throws
/// DomainError("mixed_field") otherwise.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

/// Value-semantic field element.
class FqElement {
public:
    FqElement() = default;
    FqElement(FieldPtr field, Field::Code code) : field_(std::move(field)), code_(code) {}
    static FqElement from_int(const FieldPtr& field, std::int64_t n) {
        return {field, field->from_int(n)};
    }

    const FieldPtr& field() const noexcept { return field_; }
    Field::Code code() const noexcept { return code_; }
    bool is_zero() const noexcept { return code_ == 0; }
    bool is_one() const noexcept { return field_ && code_ == field_->one(); }

    FqElement operator+(const FqElement& o) const;
    FqElement operator-(const FqElement& o) const;
    FqElement operator*(const FqElement& o) const;
    FqElement operator/(const FqElement& o) const;
    FqElement operator-() const { return {field_, field_->neg(code_)}; }
    FqElement& operator+=(const FqElement& o) { return *this = *this + o; }
    FqElement& operator-=(const FqElement& o) { return *this = *this - o; }
    FqElement& operator*=(const FqElement& o) { return *this = *this * o; }

    FqElement inverse() const { return {field_, field_->inv(code_)}; }
    FqElement pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }

    bool operator==(const FqElement& o) const noexcept { return code_ == o.code_; }
    std::strong_ordering operator<=>(const FqElement& o) const noexcept {
        return code_ <=> o.code_;
    }

    std::string to_string() const { return field_->format(code_); }

private:
    FieldPtr field_;
    Field::Code code_ = 0;
};

}  // namespace gdd
