#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdd {

/// Residues (a_1, ..., a_r) of a deformation datum at orbit representatives
/// of its poles, each in F_p^x, stored as integers in [1, p).
///
/// Entries keep the order they were given in; canonicalize() produces the
/// representative used for equivalence.
class ResidueType {
public:
    /// Reduces entries mod p. Throws DomainError("invalid_type") when p is not
    /// prime, the tuple is empty, an entry is 0 mod p, or m = 1 and the sum is
    /// not 0 mod p.
    ResidueType(std::uint64_t p, std::uint64_t m, const std::vector<std::int64_t>& entries);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t m() const noexcept { return m_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<std::uint64_t>& entries() const noexcept { return entries_; }

    bool operator==(const ResidueType&) const = default;

private:
    std::uint64_t p_;
    std::uint64_t m_;
    std::vector<std::uint64_t> entries_;
};

/// Integer lift (A_1, ..., A_r) of a type; entries nonzero.
class LiftedType {
public:
    /// Throws DomainError("invalid_lift") for an empty tuple or a zero entry.
    explicit LiftedType(std::vector<std::int64_t> entries);

    const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::int64_t sum() const noexcept;

    bool operator==(const LiftedType&) const = default;

private:
    std::vector<std::int64_t> entries_;
};

struct LiftStats {
    std::uint64_t n = 0;  // sum of positive entries
    std::uint64_t k = 0;  // gcd of the entries
};

LiftStats stats(const LiftedType& lift);

/// k_A (r - 1) <= n_A, the criterion for a genus-0 three-point cover of type
/// C(A). Requires a zero-sum lift with r >= 2 (DomainError("invalid_lift")).
bool realizable(const LiftedType& lift);

/// Each entry replaced by the smallest element of its orbit under the powers
/// of zeta_m, then sorted ascending. For m > 1 this needs m | p - 1
/// (DomainError("invalid_context")).
ResidueType canonicalize(const ResidueType& type);
bool equivalent(const ResidueType& a, const ResidueType& b);

/// max(3p, 3 * largest integer lift of an entry).
std::uint64_t default_lift_bound(const ResidueType& type);

/// Lazy, deterministic stream of lifts of a type with |A_i| <= bound, in order
/// of increasing n_A, ties broken lexicographically. m = 1 streams zero-sum
/// lifts, m = 2 all-positive ones.
class LiftStream {
public:
    LiftStream(const ResidueType& type, std::uint64_t bound);

    std::optional<LiftedType> next();

private:
    void fill_level(std::uint64_t level);
    void search(std::size_t index, std::uint64_t pos, std::uint64_t neg, std::uint64_t level,
                std::vector<std::int64_t>& current);

    bool zero_sum_;
    std::vector<std::vector<std::int64_t>> candidates_;
    std::vector<std::uint64_t> suffix_max_pos_;
    std::vector<std::uint64_t> suffix_max_neg_;
    std::vector<std::uint64_t> suffix_min_;
    std::uint64_t level_ = 0;
    std::uint64_t max_level_ = 0;
    std::vector<LiftedType> buffer_;
    std::size_t cursor_ = 0;
};

LiftStream enumerate_lifts(const ResidueType& type, std::uint64_t bound);

/// First lift with k_A min(r-1, p) > n_A; its existence rules out a good
/// deformation datum of this type. m = 1 only.
std::optional<LiftedType> nonexistence_certificate(const ResidueType& type, std::uint64_t bound);

/// First lift with k_A (r-1) <= n_A < k_A p; its existence guarantees a good
/// deformation datum of this type. m = 1 only.
std::optional<LiftedType> existence_window(const ResidueType& type, std::uint64_t bound);

enum class ConductorVerdict { primitive_ok, nonprimitive_ok, invalid };

struct NecessaryConditions {
    ConductorVerdict verdict;
    std::string reason;  // violated clause for invalid, empty otherwise
};

/// Necessary conditions on (p, m, h) for a good deformation datum of conductor h.
NecessaryConditions necessary_conditions(std::uint64_t p, std::uint64_t m, std::uint64_t h);

enum class LiftingReason { cyclic_case, condition_i_failed, condition_ii_failed, ok_injective };

std::string_view to_string(LiftingReason reason) noexcept;
std::string_view to_string(ConductorVerdict verdict) noexcept;

struct LiftingVerdict {
    bool lifts = false;
    LiftingReason reason = LiftingReason::cyclic_case;
    std::uint64_t p = 0;
    std::uint64_t m = 0;
    std::uint64_t h = 0;
};

/// Whether a local action of Z/p x| Z/m with conductor h lifts to
/// characteristic zero: m | h, or gcd(h, m) = 1 and h = -1 mod m.
/// Throws DomainError when p is not prime, gcd(m, p) != 1 or p | h.
LiftingVerdict decide_lifting(std::uint64_t p, std::uint64_t m, std::uint64_t h);

}  // namespace gdd
