#include "gdd/types.hpp"

#include <algorithm>
#include <numeric>

#include "gdd/errors.hpp"
#include "gdd/field.hpp"

namespace gdd {

namespace {

std::uint64_t mod_p(std::int64_t v, std::uint64_t p) {
    const auto sp = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((v % sp) + sp) % sp);
}

std::uint64_t abs_u(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

}  // namespace

ResidueType::ResidueType(std::uint64_t p, std::uint64_t m, const std::vector<std::int64_t>& entries)
    : p_(p), m_(m) {
    if (!is_prime(p)) throw DomainError("invalid_type", "p = " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("invalid_type", "m must be positive");
    if (entries.empty()) throw DomainError("invalid_type", "a type needs at least one entry");
    std::uint64_t sum = 0;
    for (auto v : entries) {
        const auto a = mod_p(v, p);
        if (a == 0) throw DomainError("invalid_type", "type entries must be nonzero mod p");
        entries_.push_back(a);
        sum = (sum + a) % p;
    }
    if (m == 1 && sum != 0) throw DomainError("invalid_type", "for m = 1 the entries must sum to 0 mod p");
}

LiftedType::LiftedType(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("invalid_lift", "a lift needs at least one entry");
    if (std::find(entries_.begin(), entries_.end(), 0) != entries_.end())
        throw DomainError("invalid_lift", "lift entries must be nonzero");
}

std::int64_t LiftedType::sum() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0}); }

LiftStats stats(const LiftedType& lift) {
    LiftStats s;
    for (auto a : lift.entries()) {
        if (a > 0) s.n += static_cast<std::uint64_t>(a);
        s.k = std::gcd(s.k, abs_u(a));
    }
    return s;
}

bool realizable(const LiftedType& lift) {
    if (lift.size() < 2) throw DomainError("invalid_lift", "realizability needs at least two entries");
    if (lift.sum() != 0) throw DomainError("invalid_lift", "realizability needs a zero-sum lift");
    const auto s = stats(lift);
    return s.k * (lift.size() - 1) <= s.n;
}

ResidueType canonicalize(const ResidueType& type) {
    const std::uint64_t p = type.p(), m = type.m();
    std::vector<std::uint64_t> orbit_min = type.entries();
    if (m > 1) {
        const auto F = Field::make(p);
        const auto zeta = F->primitive_root_of_unity(m);
        if (!zeta)
            throw DomainError("invalid_context", "zeta_" + std::to_string(m) + " is not in F_" + std::to_string(p));
        for (auto& a : orbit_min) {
            std::uint64_t x = a, best = a;
            for (std::uint64_t j = 1; j < m; ++j) {
                x = F->mul(x, *zeta);
                best = std::min(best, x);
            }
            a = best;
        }
    }
    std::sort(orbit_min.begin(), orbit_min.end());
    return ResidueType(p, m, std::vector<std::int64_t>(orbit_min.begin(), orbit_min.end()));
}

bool equivalent(const ResidueType& a, const ResidueType& b) {
    if (a.p() != b.p() || a.m() != b.m())
        throw DomainError("invalid_context", "types over different (p, m) cannot be compared");
    return a.size() == b.size() && canonicalize(a) == canonicalize(b);
}

std::uint64_t default_lift_bound(const ResidueType& type) {
    const auto largest = *std::max_element(type.entries().begin(), type.entries().end());
    return std::max(3 * type.p(), 3 * largest);
}

LiftStream::LiftStream(const ResidueType& type, std::uint64_t bound) : zero_sum_(type.m() == 1) {
    if (type.m() != 1 && type.m() != 2)
        throw DomainError("invalid_context", "lifts are defined for m = 1 and m = 2 only");
    const auto p = static_cast<std::int64_t>(type.p());
    const auto b = static_cast<std::int64_t>(bound);
    for (auto a : type.entries()) {
        std::vector<std::int64_t> values;
        const auto base = static_cast<std::int64_t>(a);
        // a + kp for all k with |a + kp| <= bound
        for (std::int64_t v = base - ((base + b) / p) * p; v <= b; v += p) {
            if (v == 0 || v < -b) continue;
            if (!zero_sum_ && v < 0) continue;
            values.push_back(v);
        }
        candidates_.push_back(std::move(values));
    }
    const std::size_t r = candidates_.size();
    suffix_max_pos_.assign(r + 1, 0);
    suffix_max_neg_.assign(r + 1, 0);
    suffix_min_.assign(r + 1, 0);
    for (std::size_t i = r; i-- > 0;) {
        std::uint64_t max_pos = 0, max_neg = 0, min_abs = ~std::uint64_t{0};
        for (auto v : candidates_[i]) {
            if (v > 0) max_pos = std::max(max_pos, abs_u(v));
            else max_neg = std::max(max_neg, abs_u(v));
            min_abs = std::min(min_abs, abs_u(v));
        }
        if (candidates_[i].empty()) min_abs = 0;
        suffix_max_pos_[i] = suffix_max_pos_[i + 1] + max_pos;
        suffix_max_neg_[i] = suffix_max_neg_[i + 1] + max_neg;
        suffix_min_[i] = suffix_min_[i + 1] + min_abs;
    }
    const bool any_empty =
        std::any_of(candidates_.begin(), candidates_.end(), [](const auto& c) { return c.empty(); });
    max_level_ = any_empty ? 0 : (zero_sum_ ? std::min(suffix_max_pos_[0], suffix_max_neg_[0]) : suffix_max_pos_[0]);
    level_ = any_empty ? 1 : 0;
}

void LiftStream::search(std::size_t index, std::uint64_t pos, std::uint64_t neg, std::uint64_t level,
                        std::vector<std::int64_t>& current) {
    if (index == candidates_.size()) {
        if (pos == level && (!zero_sum_ || neg == level)) buffer_.emplace_back(current);
        return;
    }
    if (pos + suffix_max_pos_[index] < level) return;
    if (zero_sum_ && neg + suffix_max_neg_[index] < level) return;
    if (!zero_sum_ && pos + suffix_min_[index] > level) return;
    for (auto v : candidates_[index]) {
        const auto a = abs_u(v);
        const std::uint64_t np = v > 0 ? pos + a : pos;
        const std::uint64_t nn = v < 0 ? neg + a : neg;
        if (np > level || nn > level) continue;
        current.push_back(v);
        search(index + 1, np, nn, level, current);
        current.pop_back();
    }
}

void LiftStream::fill_level(std::uint64_t level) {
    buffer_.clear();
    cursor_ = 0;
    std::vector<std::int64_t> current;
    current.reserve(candidates_.size());
    search(0, 0, 0, level, current);
}

std::optional<LiftedType> LiftStream::next() {
    while (cursor_ >= buffer_.size()) {
        if (level_ > max_level_) return std::nullopt;
        fill_level(level_++);
    }
    return buffer_[cursor_++];
}

LiftStream enumerate_lifts(const ResidueType& type, std::uint64_t bound) { return LiftStream(type, bound); }

std::optional<LiftedType> nonexistence_certificate(const ResidueType& type, std::uint64_t bound) {
    if (type.m() != 1) throw DomainError("invalid_context", "nonexistence certificates are for m = 1");
    const std::uint64_t r = type.size();
    auto stream = enumerate_lifts(type, bound);
    while (auto lift = stream.next()) {
        const auto s = stats(*lift);
        if (s.k * std::min<std::uint64_t>(r - 1, type.p()) > s.n) return lift;
    }
    return std::nullopt;
}

std::optional<LiftedType> existence_window(const ResidueType& type, std::uint64_t bound) {
    if (type.m() != 1) throw DomainError("invalid_context", "the existence window is for m = 1");
    const std::uint64_t r = type.size();
    auto stream = enumerate_lifts(type, bound);
    while (auto lift = stream.next()) {
        const auto s = stats(*lift);
        if (s.k * (r - 1) <= s.n && s.n < s.k * type.p()) return lift;
    }
    return std::nullopt;
}

NecessaryConditions necessary_conditions(std::uint64_t p, std::uint64_t m, std::uint64_t h) {
    if (!is_prime(p)) throw DomainError("invalid_argument", "p must be prime");
    if (m == 0 || h == 0) throw DomainError("invalid_argument", "m and h must be positive");
    if (std::gcd(m, p) != 1) throw DomainError("invalid_argument", "m must be prime to p");
    if (h % p == 0) return {ConductorVerdict::invalid, "conductor divisible by p"};
    if (std::gcd(h, m) == 1) {
        if ((p - 1) % m != 0) return {ConductorVerdict::invalid, "primitive case needs m | p-1"};
        if ((h + 1) % m != 0) return {ConductorVerdict::invalid, "primitive case needs h = -1 mod m"};
        return {ConductorVerdict::primitive_ok, ""};
    }
    if (h % m == 0) return {ConductorVerdict::nonprimitive_ok, ""};
    return {ConductorVerdict::invalid, "h is neither prime to m nor divisible by m"};
}

std::string_view to_string(LiftingReason reason) noexcept {
    switch (reason) {
        case LiftingReason::cyclic_case: return "cyclic_case";
        case LiftingReason::condition_i_failed: return "condition_i_failed";
        case LiftingReason::condition_ii_failed: return "condition_ii_failed";
        case LiftingReason::ok_injective: return "ok_injective";
    }
    return "unknown";
}

std::string_view to_string(ConductorVerdict verdict) noexcept {
    switch (verdict) {
        case ConductorVerdict::primitive_ok: return "primitive_ok";
        case ConductorVerdict::nonprimitive_ok: return "nonprimitive_ok";
        case ConductorVerdict::invalid: return "invalid";
    }
    return "unknown";
}

LiftingVerdict decide_lifting(std::uint64_t p, std::uint64_t m, std::uint64_t h) {
    if (!is_prime(p)) throw DomainError("invalid_argument", "p must be prime");
    if (m == 0 || h == 0) throw DomainError("invalid_argument", "m and h must be positive");
    if (std::gcd(m, p) != 1) throw DomainError("invalid_argument", "m must be prime to p");
    if (h % p == 0) throw DomainError("conductor_divisible_by_p", "no local action has a conductor divisible by p");
    LiftingVerdict v{false, LiftingReason::cyclic_case, p, m, h};
    if (h % m == 0) {
        v.lifts = true;
    } else if (std::gcd(h, m) != 1) {
        v.reason = LiftingReason::condition_i_failed;
    } else if ((h + 1) % m == 0) {
        v.lifts = true;
        v.reason = LiftingReason::ok_injective;
    } else {
        v.reason = LiftingReason::condition_ii_failed;
    }
    return v;
}

}  // namespace gdd
