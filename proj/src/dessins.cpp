#include "gdd/dessins.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "gdd/errors.hpp"

namespace gdd {

namespace {

std::uint64_t abs_u(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

std::uint64_t encode(const Permutation& s) {
    std::uint64_t key = 0;
    for (std::size_t x = 0; x < s.degree(); ++x) key |= static_cast<std::uint64_t>(s(x)) << (4 * x);
    return key;
}

// Every permutation of a given cycle type exactly once: the smallest free
// point opens the next cycle, which takes each available length in turn.
class ClassEnumerator {
public:
    ClassEnumerator(const CycleType& c, std::function<bool(const Permutation&)> visit)
        : n_(c.degree()), images_(n_), used_(n_, false), visit_(std::move(visit)) {
        for (auto k : c.parts()) ++remaining_[k];
    }

    void run() { open_cycle(); }

private:
    bool open_cycle() {
        std::size_t x = 0;
        while (x < n_ && used_[x]) ++x;
        if (x == n_) return visit_(Permutation(images_));
        used_[x] = true;
        for (auto& [len, count] : remaining_) {
            if (count == 0) continue;
            --count;
            cycle_.assign(1, x);
            const bool go_on = extend(len);
            ++count;
            if (!go_on) {
                used_[x] = false;
                return false;
            }
        }
        used_[x] = false;
        return true;
    }

    bool extend(std::size_t len) {
        if (cycle_.size() == len) {
            for (std::size_t i = 0; i < len; ++i) images_[cycle_[i]] = static_cast<std::uint8_t>(cycle_[(i + 1) % len]);
            const auto saved = cycle_;
            const bool go_on = open_cycle();
            cycle_ = saved;
            return go_on;
        }
        for (std::size_t y = 0; y < n_; ++y) {
            if (used_[y]) continue;
            used_[y] = true;
            cycle_.push_back(y);
            const bool go_on = extend(len);
            cycle_.pop_back();
            used_[y] = false;
            if (!go_on) return false;
        }
        return true;
    }

    std::size_t n_;
    std::vector<std::uint8_t> images_;
    std::vector<bool> used_;
    std::map<std::size_t, std::size_t> remaining_;
    std::vector<std::size_t> cycle_;
    std::function<bool(const Permutation&)> visit_;
};

void require_degree(const CombinatorialType& c, std::size_t max_degree) {
    if (c.n > max_degree || c.n > 16)
        throw DomainError("degree_too_large", "degree " + std::to_string(c.n) + " exceeds the search cap " +
                                                  std::to_string(std::min<std::size_t>(max_degree, 16)));
    if (c.c1.degree() != c.n || c.c2.degree() != c.n || c.c3.degree() != c.n)
        throw DomainError("not_well_formed", "cycle types of different degrees");
}

// Generators of the centralizer of canonical_representative(c).
std::vector<Permutation> centralizer_generators(const CycleType& c) {
    const std::size_t n = c.degree();
    std::vector<Permutation> gens;
    std::size_t start = 0;
    const auto& parts = c.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::size_t len = parts[i];
        if (len > 1) {
            std::vector<std::size_t> cyc(len);
            std::iota(cyc.begin(), cyc.end(), start);
            gens.push_back(Permutation::from_cycles(n, {cyc}));
        }
        if (i + 1 < parts.size() && parts[i + 1] == len) {
            std::vector<std::vector<std::size_t>> swaps;
            for (std::size_t j = 0; j < len; ++j) swaps.push_back({start + j, start + len + j});
            gens.push_back(Permutation::from_cycles(n, swaps));
        }
        start += len;
    }
    return gens;
}

// Edges as vertex-id pairs; rotation lists per vertex id.
struct PartialTree {
    struct Edge {
        std::size_t a, b;
        std::uint64_t weight;
    };
    std::vector<Edge> edges;
    std::map<std::size_t, std::vector<std::size_t>> rotation;

    void add_edge(std::size_t center, std::size_t leaf, std::uint64_t weight, bool front) {
        const std::size_t id = edges.size();
        edges.push_back({center, leaf, weight});
        auto& rc = rotation[center];
        if (front) rc.insert(rc.begin(), id);
        else rc.push_back(id);
        rotation[leaf].push_back(id);
    }
};

std::uint64_t gcd_abs(const std::vector<std::int64_t>& v) {
    std::uint64_t g = 0;
    for (auto x : v) g = std::gcd(g, abs_u(x));
    return g;
}

void build(const std::vector<std::int64_t>& vals, const std::vector<std::size_t>& ids, PartialTree& out) {
    const std::size_t r = vals.size();
    const std::uint64_t k = gcd_abs(vals);
    if (k > 1) {
        std::vector<std::int64_t> reduced(vals);
        for (auto& x : reduced) x /= static_cast<std::int64_t>(k);
        const std::size_t first = out.edges.size();
        build(reduced, ids, out);
        for (std::size_t e = first; e < out.edges.size(); ++e) out.edges[e].weight *= k;
        return;
    }
    const auto s = static_cast<std::size_t>(std::count_if(vals.begin(), vals.end(), [](auto x) { return x > 0; }));
    if (s == 1 || r - s == 1) {
        const bool center_positive = s == 1;
        std::size_t center = 0;
        while ((vals[center] > 0) != center_positive) ++center;
        for (std::size_t i = 0; i < r; ++i)
            if (i != center) out.add_edge(ids[center], ids[i], abs_u(vals[i]), false);
        return;
    }

    std::uint64_t mu = ~std::uint64_t{0};
    for (auto x : vals) mu = std::min(mu, abs_u(x));
    std::size_t j = r;
    for (std::size_t i = 0; i < r && j == r; ++i) {
        if (abs_u(vals[i]) != mu) continue;
        for (auto y : vals)
            if ((y > 0) != (vals[i] > 0) && abs_u(y) > mu) j = i;
    }
    if (j == r) throw std::logic_error("tree construction: no entry to split off");
    const std::int64_t sign = vals[j] > 0 ? 1 : -1;
    std::vector<std::int64_t> w(vals);
    for (auto& x : w) x *= sign;

    std::size_t i0 = r;
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (w[i] >= 0 || w[i] + w[j] >= 0) continue;
        std::vector<std::int64_t> reduced;
        for (std::size_t t = 0; t < r; ++t)
            if (t != j) reduced.push_back(t == i ? w[i] + w[j] : w[t]);
        const auto m = gcd_abs(reduced);
        if (i0 == r || m < best) {
            i0 = i;
            best = m;
        }
    }
    if (i0 == r) throw std::logic_error("tree construction: no merge partner");

    std::vector<std::int64_t> next;
    std::vector<std::size_t> next_ids;
    for (std::size_t t = 0; t < r; ++t) {
        if (t == j) continue;
        next.push_back(t == i0 ? w[t] + w[j] : w[t]);
        next_ids.push_back(ids[t]);
    }
    build(next, next_ids, out);
    out.add_edge(ids[i0], ids[j], abs_u(w[j]), true);
}

std::optional<GeneratingSystem> expand(const WeightedPlaneTree& t, bool reverse_white) {
    std::vector<std::size_t> base(t.edges.size());
    std::size_t n = 0;
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        base[e] = n;
        n += t.edges[e].weight;
    }
    std::vector<std::vector<std::size_t>> black_cycles, white_cycles;
    for (std::size_t v = 0; v < t.colors.size(); ++v) {
        std::vector<std::size_t> cyc;
        const bool white = t.colors[v] == Color::white;
        for (auto e : t.rotation[v]) {
            const auto w = t.edges[e].weight;
            for (std::size_t s = 0; s < w; ++s) cyc.push_back(base[e] + ((white && reverse_white) ? w - 1 - s : s));
        }
        (white ? white_cycles : black_cycles).push_back(std::move(cyc));
    }
    GeneratingSystem g{Permutation::from_cycles(n, black_cycles), Permutation(n), Permutation::from_cycles(n, white_cycles)};
    g.sigma2 = g.sigma1.inverse() * g.sigma3.inverse();
    const std::size_t r = t.colors.size();
    if (!is_generating_system(g)) return std::nullopt;
    if (g.sigma2.cycle_type() != CycleType({r - 1}, n)) return std::nullopt;
    if (genus(g.type()) != 0) return std::nullopt;
    return g;
}

}  // namespace

CombinatorialType GeneratingSystem::type() const {
    return {degree(), sigma1.cycle_type(), sigma2.cycle_type(), sigma3.cycle_type()};
}

bool is_generating_system(const GeneratingSystem& s) {
    const auto n = s.sigma1.degree();
    if (s.sigma2.degree() != n || s.sigma3.degree() != n) return false;
    if (!(s.sigma1 * s.sigma2 * s.sigma3).is_identity()) return false;
    return is_transitive({s.sigma1, s.sigma2, s.sigma3});
}

std::int64_t genus(const CombinatorialType& c) {
    const auto v = static_cast<std::int64_t>(c.c1.cycles() + c.c2.cycles() + c.c3.cycles()) -
                   static_cast<std::int64_t>(c.n);
    if (v % 2 != 0) throw DomainError("not_realizable", "Riemann-Hurwitz gives an odd Euler characteristic");
    if (v > 2) throw DomainError("not_realizable", "Riemann-Hurwitz gives a negative genus");
    return (2 - v) / 2;
}

CombinatorialType combinatorial_type_m1(const LiftedType& a) {
    if (a.sum() != 0) throw DomainError("not_well_formed", "C(A) for m = 1 needs a zero-sum lift");
    const auto n = static_cast<std::size_t>(stats(a).n);
    const std::size_t r = a.size();
    if (r - 1 > n)
        throw DomainError("not_well_formed", "an (r-1)-cycle does not fit in S_" + std::to_string(n));
    std::vector<std::size_t> pos, neg;
    for (auto x : a.entries()) (x > 0 ? pos : neg).push_back(static_cast<std::size_t>(abs_u(x)));
    return {n, CycleType(pos, n), CycleType({r - 1}, n), CycleType(neg, n)};
}

CombinatorialType combinatorial_type_m2(const LiftedType& a) {
    std::size_t n = 0;
    std::vector<std::size_t> c2;
    for (auto x : a.entries()) {
        if (x <= 0) throw DomainError("not_well_formed", "C(A) for m = 2 needs positive entries");
        n += static_cast<std::size_t>(x);
        c2.push_back(static_cast<std::size_t>(x));
    }
    const std::size_t h = 2 * a.size() - 1;
    if (h > n) throw DomainError("not_well_formed", "a " + std::to_string(h) + "-cycle does not fit in S_" + std::to_string(n));
    std::vector<std::size_t> c1{h};
    c1.resize(1 + (n - h) / 2, 2);
    return {n, CycleType(c1, n), CycleType(c2, n), CycleType(std::vector<std::size_t>(n / 2, 2), n)};
}

Permutation canonical_representative(const CycleType& c) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t start = 0;
    for (auto len : c.parts()) {
        std::vector<std::size_t> cyc(len);
        std::iota(cyc.begin(), cyc.end(), start);
        cycles.push_back(std::move(cyc));
        start += len;
    }
    return Permutation::from_cycles(c.degree(), cycles);
}

std::vector<GeneratingSystem> search_generating_systems(const CombinatorialType& c, std::optional<std::size_t> limit,
                                                        std::size_t max_degree, unsigned threads) {
    require_degree(c, max_degree);
    std::vector<GeneratingSystem> found;
    if (limit && *limit == 0) return found;
    const Permutation s1 = canonical_representative(c.c1);
    auto accept = [&](const Permutation& s2) -> std::optional<GeneratingSystem> {
        Permutation s3 = (s1 * s2).inverse();
        if (s3.cycle_type() != c.c3 || !is_transitive({s1, s2})) return std::nullopt;
        return GeneratingSystem{s1, s2, std::move(s3)};
    };
    if (threads <= 1) {
        ClassEnumerator(c.c2, [&](const Permutation& s2) {
            if (auto s = accept(s2)) found.push_back(std::move(*s));
            return !limit || found.size() < *limit;
        }).run();
        return found;
    }
    std::vector<std::vector<std::pair<std::size_t, GeneratingSystem>>> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::size_t index = 0;
            ClassEnumerator(c.c2, [&](const Permutation& s2) {
                const auto i = index++;
                if (i % threads != t) return true;
                if (auto s = accept(s2)) parts[t].emplace_back(i, std::move(*s));
                return !limit || parts[t].size() < *limit;
            }).run();
        });
    }
    for (auto& th : pool) th.join();
    std::vector<std::pair<std::size_t, GeneratingSystem>> merged;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(merged));
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (limit && merged.size() > *limit) merged.resize(*limit);
    for (auto& [i, s] : merged) found.push_back(std::move(s));
    return found;
}

std::size_t count_classes(const CombinatorialType& c, std::size_t max_degree) {
    const auto systems = search_generating_systems(c, std::nullopt, max_degree);
    std::unordered_set<std::uint64_t> pending;
    for (const auto& s : systems) pending.insert(encode(s.sigma2));
    const auto gens = centralizer_generators(c.c1);
    std::vector<Permutation> gens_inv;
    for (const auto& g : gens) gens_inv.push_back(g.inverse());
    std::size_t classes = 0;
    for (const auto& s : systems) {
        if (!pending.erase(encode(s.sigma2))) continue;
        ++classes;
        std::vector<Permutation> stack{s.sigma2};
        while (!stack.empty()) {
            const Permutation x = stack.back();
            stack.pop_back();
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Permutation y = gens[i] * x * gens_inv[i];
                if (pending.erase(encode(y))) stack.push_back(std::move(y));
            }
        }
    }
    return classes;
}

bool verify_identity_lemma4(std::size_t n) {
    if (n < 3 || n % 2 == 0) throw DomainError("invalid_argument", "the identity is stated for odd n >= 3");
    std::vector<std::size_t> full(n), down;
    std::iota(full.begin(), full.end(), 0);
    for (std::size_t x = n;; x -= 2) {
        down.push_back(x - 1);
        if (x == 1) break;
    }
    std::vector<std::vector<std::size_t>> pairs;
    for (std::size_t x = 2; x + 1 <= n; x += 2) pairs.push_back({x - 1, x});
    return Permutation::from_cycles(n, {full}) * Permutation::from_cycles(n, {down}) == Permutation::from_cycles(n, pairs);
}

std::uint64_t WeightedPlaneTree::valency(std::size_t v) const {
    std::uint64_t total = 0;
    for (auto e : rotation[v]) total += edges[e].weight;
    return total;
}

std::vector<std::int64_t> WeightedPlaneTree::signed_valencies() const {
    std::vector<std::int64_t> out;
    for (std::size_t v = 0; v < colors.size(); ++v) {
        const auto val = static_cast<std::int64_t>(valency(v));
        out.push_back(colors[v] == Color::black ? val : -val);
    }
    return out;
}

std::uint64_t WeightedPlaneTree::total_weight() const {
    std::uint64_t total = 0;
    for (const auto& e : edges) total += e.weight;
    return total;
}

bool is_valid_tree(const WeightedPlaneTree& t) {
    const std::size_t r = t.colors.size();
    if (r == 0 || t.rotation.size() != r || t.edges.size() != r - 1) return false;
    std::vector<std::vector<std::size_t>> incident(r);
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        const auto& ed = t.edges[e];
        if (ed.black >= r || ed.white >= r || ed.weight == 0) return false;
        if (t.colors[ed.black] != Color::black || t.colors[ed.white] != Color::white) return false;
        const auto a = find(ed.black), b = find(ed.white);
        if (a == b) return false;
        parent[a] = b;
        incident[ed.black].push_back(e);
        incident[ed.white].push_back(e);
    }
    for (std::size_t v = 0; v < r; ++v) {
        auto rot = t.rotation[v];
        std::sort(rot.begin(), rot.end());
        if (rot != incident[v]) return false;
    }
    return true;
}

WeightedPlaneTree build_tree(const LiftedType& a) {
    if (a.size() < 2 || a.sum() != 0 || !realizable(a))
        throw DomainError("not_realizable", "no weighted plane tree has this valency list");
    const std::size_t r = a.size();
    PartialTree partial;
    std::vector<std::size_t> ids(r);
    std::iota(ids.begin(), ids.end(), 0);
    build(a.entries(), ids, partial);

    WeightedPlaneTree t;
    for (auto x : a.entries()) t.colors.push_back(x > 0 ? Color::black : Color::white);
    for (const auto& e : partial.edges) {
        const bool a_black = t.colors[e.a] == Color::black;
        t.edges.push_back({a_black ? e.a : e.b, a_black ? e.b : e.a, e.weight});
    }
    t.rotation.resize(r);
    for (auto& [v, rot] : partial.rotation) t.rotation[v] = rot;
    if (!is_valid_tree(t) || t.signed_valencies() != a.entries())
        throw std::logic_error("tree construction produced an inconsistent tree");
    return t;
}

GeneratingSystem tree_to_generating_system(const WeightedPlaneTree& t) {
    if (!is_valid_tree(t)) throw DomainError("invalid_tree", "not a bicolored weighted plane tree");
    if (auto g = expand(t, true)) return *g;
    if (auto g = expand(t, false)) return *g;
    throw std::logic_error("strand expansion violates the face condition under both conventions");
}

std::string to_dot(const WeightedPlaneTree& t) {
    std::string out = "graph tree {\n  node [shape=circle, label=\"\", width=0.25];\n";
    for (std::size_t v = 0; v < t.colors.size(); ++v) {
        out += "  v" + std::to_string(v) + " [xlabel=\"" + std::to_string(t.signed_valencies()[v]) + "\"";
        out += t.colors[v] == Color::black ? ", style=filled, fillcolor=black" : "";
        out += "];\n";
    }
    for (const auto& e : t.edges)
        out += "  v" + std::to_string(e.black) + " -- v" + std::to_string(e.white) + " [label=\"" +
               std::to_string(e.weight) + "\"];\n";
    return out + "}\n";
}

}  // namespace gdd
