#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdd/forms.hpp"
#include "gdd/types.hpp"

namespace gdd {

/// h dz / (z^{h+1} - z) over F_p: good of conductor h, with c = 0. Requires
/// m | h, gcd(h, p) = 1 and gcd(m, p) = 1 (DomainError("invalid_argument")).
DifferentialForm construct_nonprimitive(std::uint64_t p, std::uint64_t m, std::uint64_t h);

/// dz / prod (z^m - z_i^m) over F_p with r = (h + 1) / m orbit representatives
/// taken greedily from 1, 2, ..., p - 1 (then 0 when m = 1). Requires
/// m | p - 1, h < p and h = -1 mod m (DomainError("invalid_argument")).
DifferentialForm construct_prop1(std::uint64_t p, std::uint64_t m, std::uint64_t h);

/// Orbit representatives z_1, ..., z_r; the form carries residue a_i at z_i.
struct PoleConfiguration {
    std::uint64_t m = 1;
    std::vector<FqElement> poles;

    bool operator==(const PoleConfiguration&) const = default;
};

/// Whether the m r points zeta^j z_i are pairwise distinct (z_i != 0 for m > 1).
bool is_admissible(const PoleConfiguration& config);

/// sum a_i dz / (z - z_i) for m = 1, sum m a_i z_i^{m-1} dz / (z^m - z_i^m)
/// otherwise. Requires an admissible configuration with one pole per entry.
DifferentialForm form_from_poles(const ResidueType& type, const PoleConfiguration& config);

/// Whether q(z) = omega * prod (z^m - z_i^m) is constant, decided through the
/// power sums sum_i a_i z_i^{m t - 1} for t = 1, ..., r - 1.
bool q_is_constant(const ResidueType& type, const PoleConfiguration& config);

constexpr std::uint64_t kDefaultCandidateCap = 1'000'000'000;

struct SearchOptions {
    /// Candidate tuples past the cap raise DomainError("search_space_too_large").
    /// Defaults to DEFDATUM_MAX_CANDIDATES when set, kDefaultCandidateCap otherwise.
    std::optional<std::uint64_t> cap;
    std::uint64_t start_offset = 0;
    unsigned threads = 1;
};

struct SearchReport {
    std::uint64_t p = 0;
    std::uint64_t m = 1;
    unsigned ext_degree = 1;
    ResidueType type;
    std::string normalization;  // "z1=0,z2=1" or "z1=1"
    std::uint64_t candidates = 0;
    std::vector<PoleConfiguration> solutions;  // lexicographic in the field order
    /// Solutions modulo permutations of equal-residue poles and per-pole
    /// multiplication by powers of zeta_m.
    std::size_t orbit_count = 0;
    std::vector<std::size_t> orbit_of;  // orbit index per solution
    bool exhaustive = false;
};

/// Every admissible configuration over F_{p^d} under the normalization, in
/// lexicographic order from start_offset; accepted configurations are
/// re-verified by goodness(). Requires m = 1 or m | p - 1 and a canonical type
/// (DomainError("invalid_argument")).
SearchReport search_good_deformation(std::uint64_t p, std::uint64_t m, const ResidueType& type, unsigned d,
                                     const SearchOptions& options = {});

/// The form of the configuration after the first scaling z -> c z, c in the
/// ambient field, that leaves all coefficients in F_p, rewritten over F_p.
/// Poles of such a form may still lie outside F_p.
std::optional<DifferentialForm> prime_field_model(const ResidueType& type, const PoleConfiguration& config);

/// prod (z - z_i)^{A_i} for m = 1.
RationalFunction lift_function(const LiftedType& lift, const PoleConfiguration& config);

struct FiberPoint {
    Point location;
    std::uint64_t index = 1;
    bool wild = false;  // p divides the index
};

/// Points of a fiber without a rational location: `count` conjugate points,
/// each of ramification index `index`.
struct UnsplitPoints {
    std::uint64_t count = 0;
    std::uint64_t index = 1;
    bool wild = false;
};

struct Fiber {
    std::vector<FiberPoint> points;  // rational points, ascending, infinity last
    std::vector<UnsplitPoints> unsplit;

    std::size_t size() const;
    /// Number of points (rational or not) with the given index.
    std::uint64_t count_with_index(std::uint64_t e) const;
    std::optional<std::uint64_t> index_at(const Point& x) const;
    bool split() const noexcept { return unsplit.empty(); }
};

struct RamificationPortrait {
    std::uint64_t degree = 0;
    Fiber over_zero, over_one, over_infinity;
    /// No ramification outside the three fibers.
    bool three_point = false;
    bool tame = false;
};

/// Fibers of g over 0, 1 and infinity with ramification indices. Points with
/// no rational location are reported in aggregate; with `require_split` they
/// raise DomainError("extend_field") instead. g must be nonconstant.
RamificationPortrait branch_portrait(const RationalFunction& g, bool require_split = false);

/// Checks the ramification of prod (z - z_i)^{A_i} against a good datum with
/// poles z_i and conductor h = r - 1: index |A_i| at z_i, index at infinity
/// >= min(h, p) and equal to h exactly when tame, nothing else ramified.
bool matches_three_point_portrait(const RamificationPortrait& portrait, const LiftedType& lift,
                                  const PoleConfiguration& config);

/// g~ with g~(z^2) = ((g - 1)/(g + 1))^2, g = prod ((z - z_i)/(z + z_i))^{A_i}.
/// Requires odd p, all A_i > 0 and an admissible m = 2 configuration.
RationalFunction m2_reduce(const LiftedType& lift, const PoleConfiguration& config);

struct Prop4Report {
    bool degree = false;
    bool fiber_one = false;
    bool fiber_zero = false;
    bool fiber_infinity = false;
    bool three_point = false;
    bool tame = false;
    std::string detail;  // first failed clause

    bool holds() const noexcept {
        return degree && fiber_one && fiber_zero && fiber_infinity && three_point && tame;
    }
};

/// The fiber structure expected of g~ for a good m = 2 datum with lift A.
/// With a configuration the points of the fiber over 1 are also located at z_i^2.
Prop4Report verify_prop4(const RationalFunction& gt, const LiftedType& lift,
                         const std::optional<PoleConfiguration>& config = std::nullopt);

}  // namespace gdd
