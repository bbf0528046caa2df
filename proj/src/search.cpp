#include "gdd/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gdd/errors.hpp"

namespace gdd {

namespace {

std::int64_t deg(const Polynomial& f) { return f.is_zero() ? -1 : static_cast<std::int64_t>(*f.degree()); }

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("invalid_argument", what);
}

// z^m - c
Polynomial binomial(const FieldPtr& f, std::uint64_t m, const FqElement& c) {
    return Polynomial::monomial(f, m) - Polynomial::constant(c);
}

std::uint64_t candidate_cap(const SearchOptions& options) {
    if (options.cap) return *options.cap;
    if (const char* env = std::getenv("DEFDATUM_MAX_CANDIDATES")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DomainError("invalid_argument", "DEFDATUM_MAX_CANDIDATES is not an integer");
        }
    }
    return kDefaultCandidateCap;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

using Codes = std::vector<Field::Code>;

Codes codes_of(const PoleConfiguration& c) {
    Codes out;
    for (const auto& z : c.poles) out.push_back(z.code());
    return out;
}

// Image of a configuration in the normalized slice: z1 -> 0, z2 -> 1 for m = 1,
// z1 -> 1 otherwise.
Codes normalize(const Field& f, std::uint64_t m, Codes z) {
    if (m == 1) {
        const auto shift = z[0];
        const auto scale = f.inv(f.sub(z[1], z[0]));
        for (auto& x : z) x = f.mul(f.sub(x, shift), scale);
    } else {
        const auto scale = f.inv(z[0]);
        for (auto& x : z) x = f.mul(x, scale);
    }
    return z;
}

}  // namespace

DifferentialForm construct_nonprimitive(std::uint64_t p, std::uint64_t m, std::uint64_t h) {
    require(is_prime(p), "p must be prime");
    require(m >= 1 && h >= 1 && h % m == 0, "m must divide h");
    require(h % p != 0, "p divides h");
    require(m % p != 0, "p divides m");
    const auto f = Field::make(p);
    const auto num = Polynomial::constant(FqElement::from_int(f, static_cast<std::int64_t>(h % p)));
    const auto den = Polynomial::monomial(f, h + 1) - Polynomial::monomial(f, 1);
    return DifferentialForm(num, den);
}

DifferentialForm construct_prop1(std::uint64_t p, std::uint64_t m, std::uint64_t h) {
    require(is_prime(p), "p must be prime");
    require(m >= 1 && (p - 1) % m == 0, "m must divide p - 1");
    require(h < p, "h must be smaller than p");
    require((h + 1) % m == 0, "h must be -1 mod m");
    const auto f = Field::make(p);
    const std::uint64_t r = (h + 1) / m;
    std::vector<Field::Code> used_powers;
    auto den = Polynomial::constant(FqElement::from_int(f, 1));
    std::uint64_t taken = 0;
    for (std::uint64_t x = 1; x < p && taken < r; ++x) {
        const auto zm = f->pow(f->from_int(static_cast<std::int64_t>(x)), m);
        if (std::find(used_powers.begin(), used_powers.end(), zm) != used_powers.end()) continue;
        used_powers.push_back(zm);
        den *= binomial(f, m, FqElement(f, zm));
        ++taken;
    }
    if (taken < r && m == 1) {
        den *= Polynomial::monomial(f, 1);
        ++taken;
    }
    if (taken < r) throw std::logic_error("construct_prop1: not enough pole orbits");
    return DifferentialForm(Polynomial::constant(FqElement::from_int(f, 1)), den);
}

bool is_admissible(const PoleConfiguration& config) {
    const auto& z = config.poles;
    if (z.empty() || config.m == 0) return false;
    std::vector<Field::Code> powers;
    for (const auto& x : z) {
        if (config.m > 1 && x.is_zero()) return false;
        powers.push_back(x.pow(config.m).code());
    }
    std::sort(powers.begin(), powers.end());
    return std::adjacent_find(powers.begin(), powers.end()) == powers.end();
}

DifferentialForm form_from_poles(const ResidueType& type, const PoleConfiguration& config) {
    if (type.size() != config.poles.size()) throw DomainError("invalid_argument", "one pole per type entry");
    if (type.m() != config.m) throw DomainError("invalid_argument", "type and configuration disagree on m");
    if (!is_admissible(config)) throw DomainError("invalid_argument", "poles are not admissible");
    const auto& f = config.poles.front().field();
    const auto m = config.m;
    std::vector<Polynomial> factors;
    for (const auto& z : config.poles) factors.push_back(binomial(f, m, z.pow(m)));
    auto den = Polynomial::constant(FqElement::from_int(f, 1));
    for (const auto& g : factors) den *= g;
    Polynomial num(f);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto term = Polynomial::constant(FqElement::from_int(f, static_cast<std::int64_t>(m * type.entries()[i])) *
                                         config.poles[i].pow(m - 1));
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (j != i) term *= factors[j];
        num += term;
    }
    return DifferentialForm(num, den);
}

bool q_is_constant(const ResidueType& type, const PoleConfiguration& config) {
    const auto& f = config.poles.front().field();
    const auto m = config.m;
    const std::size_t r = config.poles.size();
    for (std::size_t t = 1; t < r; ++t) {
        FqElement s(f, 0);
        for (std::size_t i = 0; i < r; ++i)
            s += FqElement::from_int(f, static_cast<std::int64_t>(type.entries()[i])) * config.poles[i].pow(m * t - 1);
        if (!s.is_zero()) return false;
    }
    return true;
}

SearchReport search_good_deformation(std::uint64_t p, std::uint64_t m, const ResidueType& type, unsigned d,
                                     const SearchOptions& options) {
    require(is_prime(p), "p must be prime");
    require(m == 1 || (m >= 2 && (p - 1) % m == 0), "m must be 1 or divide p - 1");
    require(type.p() == p && type.m() == m, "type does not match (p, m)");
    require(canonicalize(type) == type, "type must be canonical");
    require(d >= 1, "extension degree must be positive");
    if (m == 1) require(type.size() >= 2, "m = 1 types have at least two entries");

    const auto field = Field::make(p, d);
    const Field& F = *field;
    const std::size_t r = type.size();
    const std::uint64_t q = F.order();

    SearchReport report{.p = p,
                        .m = m,
                        .ext_degree = d,
                        .type = type,
                        .normalization = m == 1 ? "z1=0,z2=1" : "z1=1",
                        .candidates = 0,
                        .solutions = {},
                        .orbit_count = 0,
                        .orbit_of = {},
                        .exhaustive = false};

    const std::size_t fixed = m == 1 ? 2 : 1;
    const std::size_t free_count = r - fixed;
    const std::uint64_t base = m == 1 ? q : q - 1;
    const std::uint64_t value_shift = m == 1 ? 0 : 1;  // m > 1 ranges over nonzero codes

    const std::uint64_t cap = candidate_cap(options);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_count; ++i) {
        if (total > cap / base + 1) throw DomainError("search_space_too_large", "candidate count exceeds the cap");
        total *= base;
    }
    require(options.start_offset <= total, "start offset past the end of the search space");
    if (total - options.start_offset > cap)
        throw DomainError("search_space_too_large",
                          std::to_string(total - options.start_offset) + " candidates exceed the cap of " +
                              std::to_string(cap));
    report.candidates = total - options.start_offset;
    report.exhaustive = options.start_offset == 0;

    // Conductor 1 (m r = 2) never admits a unique zero.
    if (m * r == 2) return report;

    // Exponents m t - 1 of the power sums that must vanish; t = 1 is automatic for m = 1.
    std::vector<std::uint64_t> exps;
    for (std::uint64_t t = m == 1 ? 2 : 1; t < r; ++t) exps.push_back(m * t - 1);
    const std::size_t E = exps.size();

    std::vector<Field::Code> a(r);
    for (std::size_t i = 0; i < r; ++i) a[i] = F.from_int(static_cast<std::int64_t>(type.entries()[i]));

    std::vector<Field::Code> powers(static_cast<std::size_t>(q) * E);
    for (std::uint64_t x = 0; x < q; ++x)
        for (std::size_t k = 0; k < E; ++k) powers[x * E + k] = F.pow(x, exps[k]);

    std::vector<Field::Code> fixed_values = m == 1 ? std::vector<Field::Code>{F.zero(), F.one()}
                                                   : std::vector<Field::Code>{F.one()};
    std::vector<Field::Code> base_sum(E, F.zero());
    for (std::size_t i = 0; i < fixed; ++i)
        for (std::size_t k = 0; k < E; ++k)
            base_sum[k] = F.add(base_sum[k], F.mul(a[i], powers[fixed_values[i] * E + k]));

    auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<Codes>& out) {
        if (lo >= hi) return;
        std::vector<std::uint64_t> digit(free_count);
        std::uint64_t rest = lo;
        for (std::size_t j = free_count; j-- > 0;) {
            digit[j] = rest % base;
            rest /= base;
        }
        std::vector<Field::Code> sum = base_sum;
        auto apply = [&](std::size_t j, std::uint64_t value, bool add) {
            const auto coeff = a[fixed + j];
            for (std::size_t k = 0; k < E; ++k) {
                const auto term = F.mul(coeff, powers[value * E + k]);
                sum[k] = add ? F.add(sum[k], term) : F.sub(sum[k], term);
            }
        };
        for (std::size_t j = 0; j < free_count; ++j) apply(j, digit[j] + value_shift, true);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (std::all_of(sum.begin(), sum.end(), [](Field::Code c) { return c == 0; })) {
                Codes z = fixed_values;
                for (auto dg : digit) z.push_back(dg + value_shift);
                PoleConfiguration cfg{m, {}};
                for (auto c : z) cfg.poles.emplace_back(field, c);
                if (is_admissible(cfg)) out.push_back(std::move(z));
            }
            for (std::size_t j = free_count; j-- > 0;) {
                apply(j, digit[j] + value_shift, false);
                digit[j] = digit[j] + 1 == base ? 0 : digit[j] + 1;
                apply(j, digit[j] + value_shift, true);
                if (digit[j] != 0) break;
            }
        }
    };

    const unsigned threads = std::max(1u, options.threads);
    const std::uint64_t span = total - options.start_offset;
    std::vector<std::vector<Codes>> found(threads);
    if (threads == 1) {
        scan(options.start_offset, total, found[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const auto lo = options.start_offset + span * t / threads;
            const auto hi = options.start_offset + span * (t + 1) / threads;
            pool.emplace_back([&, lo, hi, t] { scan(lo, hi, found[t]); });
        }
        for (auto& th : pool) th.join();
    }

    const auto ctx = EquivariantContext::make(field, m);
    std::map<Codes, std::size_t> index;
    for (auto& chunk : found) {
        for (auto& z : chunk) {
            PoleConfiguration cfg{m, {}};
            for (auto c : z) cfg.poles.emplace_back(field, c);
            const auto omega = form_from_poles(type, cfg);
            const auto g = goodness(omega, ctx);
            if (!g.is_good || !g.zero_location || !std::holds_alternative<Infinity>(*g.zero_location) ||
                g.conductor_h != m * r - 1 || canonicalize(extract_type(omega, ctx)) != type)
                throw std::logic_error("search: accepted configuration fails re-verification");
            index.emplace(z, report.solutions.size());
            report.solutions.push_back(std::move(cfg));
        }
    }

    DisjointSets sets(report.solutions.size());
    const auto zeta = ctx.zeta ? ctx.zeta->code() : F.one();
    for (std::size_t s = 0; s < report.solutions.size(); ++s) {
        const auto z = codes_of(report.solutions[s]);
        for (std::size_t i = 0; i + 1 < r; ++i) {
            if (type.entries()[i] != type.entries()[i + 1]) continue;
            auto w = z;
            std::swap(w[i], w[i + 1]);
            const auto it = index.find(normalize(F, m, w));
            if (it != index.end())
                sets.unite(s, it->second);
            else if (report.exhaustive)
                throw std::logic_error("search: solution set not closed under pole permutation");
        }
        if (m == 1) continue;
        for (std::size_t i = 0; i < r; ++i) {
            auto w = z;
            w[i] = F.mul(w[i], zeta);
            const auto it = index.find(normalize(F, m, w));
            if (it != index.end()) sets.unite(s, it->second);
        }
    }
    std::map<std::size_t, std::size_t> roots;
    for (std::size_t s = 0; s < report.solutions.size(); ++s) {
        const auto root = sets.find(s);
        const auto [it, inserted] = roots.emplace(root, roots.size());
        report.orbit_of.push_back(it->second);
    }
    report.orbit_count = roots.size();
    return report;
}

std::optional<DifferentialForm> prime_field_model(const ResidueType& type, const PoleConfiguration& config) {
    const auto& field = config.poles.front().field();
    const auto prime = Field::make(field->characteristic());
    auto descend = [&](const Polynomial& f) -> std::optional<Polynomial> {
        std::vector<Field::Code> out;
        for (auto c : f.codes()) {
            const auto v = field->prime_field_value(c);
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        return Polynomial(prime, out);
    };
    for (Field::Code c = 1; c < field->order(); ++c) {
        const auto inv = FqElement(field, c).inverse();
        PoleConfiguration scaled{config.m, {}};
        for (const auto& z : config.poles) scaled.poles.push_back(z * inv);
        const auto omega = form_from_poles(type, scaled);
        const auto num = descend(omega.num());
        const auto den = descend(omega.den());
        if (num && den) return DifferentialForm(*num, *den);
    }
    return std::nullopt;
}

RationalFunction lift_function(const LiftedType& lift, const PoleConfiguration& config) {
    if (lift.size() != config.poles.size()) throw DomainError("invalid_argument", "one pole per lift entry");
    const auto& f = config.poles.front().field();
    auto num = Polynomial::constant(FqElement::from_int(f, 1));
    auto den = num;
    for (std::size_t i = 0; i < lift.size(); ++i) {
        const auto e = lift[i];
        const auto factor = pow(Polynomial::linear(config.poles[i]), static_cast<std::size_t>(e > 0 ? e : -e));
        (e > 0 ? num : den) *= factor;
    }
    return RationalFunction(num, den);
}

std::size_t Fiber::size() const {
    std::size_t n = points.size();
    for (const auto& u : unsplit) n += u.count;
    return n;
}

std::uint64_t Fiber::count_with_index(std::uint64_t e) const {
    std::uint64_t n = 0;
    for (const auto& x : points) n += x.index == e;
    for (const auto& u : unsplit)
        if (u.index == e) n += u.count;
    return n;
}

std::optional<std::uint64_t> Fiber::index_at(const Point& x) const {
    for (const auto& pt : points)
        if (pt.location == x) return pt.index;
    return std::nullopt;
}

namespace {

Fiber fiber_of(const Polynomial& f, std::uint64_t p, bool require_split) {
    Fiber fiber;
    if (f.is_zero() || f.is_constant()) return fiber;
    const auto report = roots_in_field(f);
    auto rest = f;
    for (const auto& [alpha, e] : report.roots) {
        fiber.points.push_back({alpha, e, e % p == 0});
        rest = rest / pow(Polynomial::linear(alpha), e);
    }
    if (report.unsplit_degree > 0) {
        if (require_split) throw DomainError("extend_field", "fiber does not split over the ambient field");
        for (const auto& [factor, e] : squarefree_decomposition(rest))
            fiber.unsplit.push_back({*factor.degree(), e, e % p == 0});
    }
    return fiber;
}

void add_infinity(Fiber& fiber, std::int64_t index, std::uint64_t p) {
    const auto e = static_cast<std::uint64_t>(index);
    fiber.points.push_back({Infinity{}, e, e % p == 0});
}

bool fiber_tame(const Fiber& f) {
    return std::none_of(f.points.begin(), f.points.end(), [](const FiberPoint& x) { return x.wild; }) &&
           std::none_of(f.unsplit.begin(), f.unsplit.end(), [](const UnsplitPoints& x) { return x.wild; });
}

}  // namespace

RamificationPortrait branch_portrait(const RationalFunction& g, bool require_split) {
    if (g.is_constant()) throw DomainError("invalid_argument", "g must be nonconstant");
    const auto& N = g.num();
    const auto& D = g.den();
    const auto M = N - D;
    const auto p = g.field()->characteristic();
    const auto dn = deg(N), dd = deg(D), dm = deg(M);

    RamificationPortrait out;
    out.degree = static_cast<std::uint64_t>(std::max(dn, dd));
    out.over_zero = fiber_of(N, p, require_split);
    out.over_infinity = fiber_of(D, p, require_split);
    out.over_one = fiber_of(M, p, require_split);
    if (dd > dn) add_infinity(out.over_zero, dd - dn, p);
    if (dn > dd) add_infinity(out.over_infinity, dn - dd, p);
    if (dn == dd && dm < dn) add_infinity(out.over_one, dn - dm, p);

    bool elsewhere = false;
    const auto W = derivative(N) * D - N * derivative(D);
    if (W.is_zero()) {
        elsewhere = true;
    } else {
        auto R = W;
        const auto special = N * D * M;
        for (;;) {
            const auto c = gcd(R, special);
            if (c.is_constant()) break;
            R = R / c;
        }
        elsewhere = !R.is_constant();
        if (dn == dd && dm == dn) {
            // g(infinity) = lc(N) is not 0, 1 or infinity
            const auto rest = N - D * N.leading();
            if (dd - deg(rest) > 1) elsewhere = true;
        }
    }
    out.three_point = !elsewhere;
    out.tame = fiber_tame(out.over_zero) && fiber_tame(out.over_one) && fiber_tame(out.over_infinity);
    return out;
}

bool matches_three_point_portrait(const RamificationPortrait& portrait, const LiftedType& lift,
                                  const PoleConfiguration& config) {
    if (config.m != 1 || lift.size() != config.poles.size()) return false;
    const auto p = config.poles.front().field()->characteristic();
    const std::uint64_t h = lift.size() - 1;
    if (portrait.degree != stats(lift).n || !portrait.three_point) return false;
    std::size_t above_zero = 0, above_inf = 0;
    for (std::size_t i = 0; i < lift.size(); ++i) {
        const auto e = static_cast<std::uint64_t>(lift[i] > 0 ? lift[i] : -lift[i]);
        const auto& fiber = lift[i] > 0 ? portrait.over_zero : portrait.over_infinity;
        (lift[i] > 0 ? above_zero : above_inf) += 1;
        if (fiber.index_at(Point{config.poles[i]}) != e) return false;
    }
    if (portrait.over_zero.size() != above_zero || portrait.over_infinity.size() != above_inf) return false;
    const auto e_inf = portrait.over_one.index_at(Point{Infinity{}});
    if (!e_inf || *e_inf < std::min(h, p)) return false;
    if ((*e_inf % p != 0) != (*e_inf == h)) return false;
    return portrait.over_one.count_with_index(1) + 1 == portrait.over_one.size();
}

RationalFunction m2_reduce(const LiftedType& lift, const PoleConfiguration& config) {
    if (config.m != 2 || lift.size() != config.poles.size())
        throw DomainError("invalid_argument", "m = 2 configuration with one pole per lift entry required");
    const auto& f = config.poles.front().field();
    if (f->characteristic() == 2) throw DomainError("invalid_argument", "p must be odd");
    if (!is_admissible(config)) throw DomainError("invalid_argument", "poles +-z_i must be pairwise distinct");
    for (auto e : lift.entries())
        if (e <= 0) throw DomainError("invalid_argument", "lift entries must be positive");

    auto num = Polynomial::constant(FqElement::from_int(f, 1));
    auto den = num;
    for (std::size_t i = 0; i < lift.size(); ++i) {
        const auto e = static_cast<std::size_t>(lift[i]);
        num *= pow(Polynomial::linear(config.poles[i]), e);
        den *= pow(Polynomial::linear(-config.poles[i]), e);
    }
    const RationalFunction g(num, den);
    const auto one = RationalFunction::constant(FqElement::from_int(f, 1));
    if (g == one || g == -one) throw std::logic_error("m2_reduce: g is constant");
    const auto v = (g - one) / (g + one);
    const auto u = v * v;
    const auto tn = deflate(u.num(), 2);
    const auto td = deflate(u.den(), 2);
    if (!tn || !td) throw std::logic_error("m2_reduce: ((g - 1)/(g + 1))^2 is not even");
    return RationalFunction(*tn, *td);
}

Prop4Report verify_prop4(const RationalFunction& gt, const LiftedType& lift,
                         const std::optional<PoleConfiguration>& config) {
    Prop4Report out;
    const auto portrait = branch_portrait(gt);
    const std::uint64_t r = lift.size();
    const std::uint64_t h = 2 * r - 1;
    std::uint64_t n = 0;
    for (auto e : lift.entries()) n += static_cast<std::uint64_t>(e > 0 ? e : 0);

    auto fail = [&](const char* clause) {
        if (out.detail.empty()) out.detail = clause;
    };

    out.degree = portrait.degree == n;
    if (!out.degree) fail("degree");

    {
        std::vector<std::uint64_t> got, want;
        for (const auto& x : portrait.over_one.points) got.push_back(x.index);
        for (const auto& u : portrait.over_one.unsplit) got.insert(got.end(), u.count, u.index);
        for (auto e : lift.entries()) want.push_back(static_cast<std::uint64_t>(e));
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        out.fiber_one = got == want;
        if (out.fiber_one && config) {
            for (std::size_t i = 0; i < r; ++i) {
                const Point x{config->poles[i] * config->poles[i]};
                if (portrait.over_one.index_at(x) != static_cast<std::uint64_t>(lift[i])) out.fiber_one = false;
            }
        }
        if (!out.fiber_one) fail("fiber_one");
    }

    const Point inf{Infinity{}};
    const Point zero{FqElement(gt.field(), 0)};
    const auto& F0 = portrait.over_zero;
    const auto& Finf = portrait.over_infinity;
    if (n % 2 == 0) {
        const auto twos = n >= 2 * r ? (n - 2 * r) / 2 : 0;
        out.fiber_zero = n >= 2 * r && F0.index_at(inf) == h && F0.index_at(zero) == 1 && F0.size() == 2 + twos &&
                         F0.count_with_index(2) == twos;
        out.fiber_infinity = Finf.size() == n / 2 && Finf.count_with_index(2) == n / 2;
    } else {
        const auto twos = n + 1 >= 2 * r ? (n + 1 - 2 * r) / 2 : 0;
        out.fiber_zero = n + 1 >= 2 * r && F0.index_at(inf) == h && F0.size() == 1 + twos &&
                         F0.count_with_index(2) == twos;
        out.fiber_infinity = Finf.index_at(zero) == 1 && Finf.size() == 1 + (n - 1) / 2 &&
                             Finf.count_with_index(2) == (n - 1) / 2;
    }
    if (!out.fiber_zero) fail("fiber_zero");
    if (!out.fiber_infinity) fail("fiber_infinity");
    out.three_point = portrait.three_point;
    if (!out.three_point) fail("three_point");
    out.tame = portrait.tame;
    if (!out.tame) fail("tame");
    return out;
}

}  // namespace gdd
