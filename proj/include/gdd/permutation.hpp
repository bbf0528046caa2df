#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gdd {

/// Cycle lengths sorted descending, fixed points included.
class CycleType {
public:
    CycleType() = default;
    /// Pads with 1s up to n; throws DomainError("not_well_formed") when a part
    /// is zero or the parts exceed n.
    CycleType(std::vector<std::size_t> parts, std::size_t n);

    const std::vector<std::size_t>& parts() const noexcept { return parts_; }
    std::size_t degree() const noexcept { return degree_; }
    std::size_t cycles() const noexcept { return parts_.size(); }

    /// Nontrivial parts only, e.g. "(4,2)"; "()" for the identity class.
    std::string to_string() const;

    bool operator==(const CycleType&) const = default;

private:
    std::vector<std::size_t> parts_;
    std::size_t degree_ = 0;
};

/// Bijection of {0, ..., n-1}; printed 1-based. Composition is
/// (a * b)(x) = a(b(x)).
class Permutation {
public:
    explicit Permutation(std::size_t n = 0);
    /// Throws DomainError("invalid_permutation") unless images is a bijection.
    explicit Permutation(std::vector<std::uint8_t> images);
    /// Cycles given 0-based.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles);
    /// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" is the identity.
    static Permutation parse(const std::string& text, std::size_t n);

    std::size_t degree() const noexcept { return images_.size(); }
    std::size_t operator()(std::size_t x) const { return images_[x]; }
    const std::vector<std::uint8_t>& images() const noexcept { return images_; }

    Permutation operator*(const Permutation& o) const;
    Permutation inverse() const;
    bool is_identity() const noexcept;

    std::vector<std::vector<std::size_t>> cycles() const;
    std::size_t cycle_count() const;
    CycleType cycle_type() const;

    std::string to_string() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint8_t> images_;
};

CycleType cycle_type(const Permutation& s);

/// Whether the group generated by the given permutations is transitive.
bool is_transitive(const std::vector<Permutation>& gens);

}  // namespace gdd
