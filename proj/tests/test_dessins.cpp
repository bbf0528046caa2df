#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gdd/dessins.hpp"
#include "gdd/errors.hpp"

using namespace gdd;

namespace {

std::vector<std::vector<std::size_t>> partitions(std::size_t n, std::size_t max_part) {
    if (n == 0) return {{}};
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t k = std::min(n, max_part); k >= 1; --k)
        for (auto rest : partitions(n - k, k)) {
            rest.insert(rest.begin(), k);
            out.push_back(rest);
        }
    return out;
}

// n! / prod k^{m_k} m_k!
std::uint64_t class_size(const std::vector<std::size_t>& parts, std::size_t n) {
    std::uint64_t size = 1;
    for (std::size_t i = 2; i <= n; ++i) size *= i;
    std::map<std::size_t, std::size_t> mult;
    for (auto k : parts) ++mult[k];
    for (auto [k, m] : mult) {
        for (std::size_t i = 0; i < m; ++i) size /= k;
        for (std::size_t i = 2; i <= m; ++i) size /= i;
    }
    return size;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<std::uint8_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do out.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Classes of generating systems of type c under simultaneous conjugation by S_n,
// with no pinned sigma1.
std::size_t brute_force_classes(const CombinatorialType& c) {
    const auto group = all_permutations(c.n);
    std::set<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>> remaining;
    for (const auto& a : group) {
        if (a.cycle_type() != c.c1) continue;
        for (const auto& b : group) {
            if (b.cycle_type() != c.c2) continue;
            const auto s3 = (a * b).inverse();
            if (s3.cycle_type() == c.c3 && is_transitive({a, b})) remaining.insert({a.images(), b.images()});
        }
    }
    std::size_t classes = 0;
    while (!remaining.empty()) {
        const Permutation a(remaining.begin()->first), b(remaining.begin()->second);
        ++classes;
        for (const auto& t : group) {
            const auto ti = t.inverse();
            remaining.erase({(t * a * ti).images(), (t * b * ti).images()});
        }
    }
    return classes;
}

std::vector<std::vector<std::int64_t>> zero_sum_tuples(std::size_t r, std::uint64_t max_n) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    const auto m = static_cast<std::int64_t>(max_n);
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t neg) -> void {
        if (cur.size() == r) {
            if (pos == neg) out.push_back(cur);
            return;
        }
        for (std::int64_t v = -m; v <= m; ++v) {
            if (v == 0) continue;
            const auto np = pos + std::max<std::int64_t>(v, 0), nn = neg + std::max<std::int64_t>(-v, 0);
            if (np > m || nn > m) continue;
            cur.push_back(v);
            self(self, np, nn);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<std::size_t> padded(std::vector<std::size_t> parts, std::size_t n) { return CycleType(parts, n).parts(); }

}  // namespace

TEST(Permutation, CompositionConvention) {
    const auto a = Permutation::parse("(1 2 3)", 3);
    const auto b = Permutation::parse("(3 1)", 3);
    EXPECT_EQ(a * b, Permutation::parse("(2 3)", 3));
    EXPECT_EQ((a * b)(0), a(b(0)));
}

TEST(Permutation, ParsePrint) {
    const auto s = Permutation::parse("(1 4)(2 3 5)", 6);
    EXPECT_EQ(s.to_string(), "(1 4)(2 3 5)");
    EXPECT_EQ(s.cycle_type().parts(), (std::vector<std::size_t>{3, 2, 1}));
    EXPECT_EQ(s.cycle_type().to_string(), "(3,2)");
    EXPECT_EQ(Permutation::parse("()", 4).to_string(), "()");
    EXPECT_TRUE((s * s.inverse()).is_identity());
    EXPECT_THROW(Permutation::parse("(1 2)(2 3)", 3), DomainError);
    EXPECT_THROW(Permutation::parse("(1 7)", 3), DomainError);
    EXPECT_THROW(Permutation::parse("1 2", 3), DomainError);
    EXPECT_THROW(Permutation(std::vector<std::uint8_t>{0, 0}), DomainError);
}

TEST(Permutation, IdentityFromUniquenessProof) {
    EXPECT_TRUE(verify_identity_lemma4(5));
    for (std::size_t n = 3; n <= 25; n += 2) EXPECT_TRUE(verify_identity_lemma4(n));
    EXPECT_THROW(verify_identity_lemma4(4), DomainError);
}

TEST(Dessins, GenusExamples) {
    const auto c = combinatorial_type_m1(LiftedType({2, 4, -3, -2, -1}));
    EXPECT_EQ(genus(c), 0);
    EXPECT_EQ(genus({1, CycleType({}, 1), CycleType({}, 1), CycleType({}, 1)}), 0);
    EXPECT_THROW(genus({4, CycleType({4}, 4), CycleType({4}, 4), CycleType({4}, 4)}), DomainError);
    // three 3-cycles in S_3: 2 - 2g = 0
    EXPECT_EQ(genus({3, CycleType({3}, 3), CycleType({3}, 3), CycleType({3}, 3)}), 1);
}

TEST(Dessins, CombinatorialTypeM1) {
    const auto c = combinatorial_type_m1(LiftedType({2, 4, -3, -2, -1}));
    EXPECT_EQ(c.n, 6u);
    EXPECT_EQ(c.c1.parts(), padded({4, 2}, 6));
    EXPECT_EQ(c.c2.parts(), padded({4}, 6));
    EXPECT_EQ(c.c3.parts(), padded({3, 2, 1}, 6));
    const auto t = combinatorial_type_m1(LiftedType({1, -1}));
    EXPECT_EQ(t.n, 1u);
    EXPECT_THROW(combinatorial_type_m1(LiftedType({1, 1, -1, -1})), DomainError);
    EXPECT_THROW(combinatorial_type_m1(LiftedType({1, 1, -1})), DomainError);
}

TEST(Dessins, CombinatorialTypeM2) {
    auto c = combinatorial_type_m2(LiftedType({1, 1, 3}));
    EXPECT_EQ(c.n, 5u);
    EXPECT_EQ(c.c1.parts(), padded({5}, 5));
    EXPECT_EQ(c.c2.parts(), padded({3}, 5));
    EXPECT_EQ(c.c3.parts(), padded({2, 2}, 5));
    c = combinatorial_type_m2(LiftedType({1, 1, 1, 4}));
    EXPECT_EQ(c.c1.parts(), padded({7}, 7));
    EXPECT_EQ(c.c2.parts(), padded({4}, 7));
    EXPECT_EQ(c.c3.parts(), padded({2, 2, 2}, 7));
    c = combinatorial_type_m2(LiftedType({2, 2}));
    EXPECT_EQ(c.c1.parts(), padded({3}, 4));
    EXPECT_EQ(c.c3.parts(), padded({2, 2}, 4));
    EXPECT_THROW(combinatorial_type_m2(LiftedType({1, 1})), DomainError);
    EXPECT_THROW(combinatorial_type_m2(LiftedType({3, -1})), DomainError);
}

TEST(Dessins, ClassEnumerationMatchesClassSize) {
    // With sigma1 = 1 every sigma2 of type c qualifies once transitivity holds,
    // which needs an n-cycle.
    for (std::size_t n = 1; n <= 7; ++n) {
        for (const auto& parts : partitions(n, n)) {
            const CycleType c(parts, n);
            const auto count = search_generating_systems({n, CycleType({}, n), c, c}).size();
            EXPECT_EQ(count, parts.front() == n ? class_size(parts, n) : 0u);
        }
    }
}

TEST(Dessins, SearchExamples) {
    EXPECT_TRUE(search_generating_systems({3, CycleType({3}, 3), CycleType({3}, 3), CycleType({2}, 3)}).empty());
    const auto c = combinatorial_type_m1(LiftedType({2, 4, -3, -2, -1}));
    const auto found = search_generating_systems(c);
    ASSERT_FALSE(found.empty());
    for (const auto& s : found) {
        EXPECT_TRUE(is_generating_system(s));
        EXPECT_EQ(s.type(), c);
        EXPECT_EQ(genus(s.type()), 0);
    }
    EXPECT_EQ(search_generating_systems(c, 2).size(), std::min<std::size_t>(2, found.size()));
    const CombinatorialType big{10, CycleType({10}, 10), CycleType({10}, 10), CycleType({}, 10)};
    EXPECT_THROW(search_generating_systems(big), DomainError);
}

TEST(Dessins, SearchIndependentOfThreads) {
    const auto c = combinatorial_type_m1(LiftedType({2, 4, -3, -2, -1}));
    const auto serial = search_generating_systems(c);
    ASSERT_FALSE(serial.empty());
    for (unsigned threads : {2u, 3u}) {
        const auto par = search_generating_systems(c, std::nullopt, kDefaultMaxDegree, threads);
        ASSERT_EQ(par.size(), serial.size());
        for (std::size_t i = 0; i < par.size(); ++i) EXPECT_EQ(par[i].sigma2, serial[i].sigma2);
        const auto first = search_generating_systems(c, 3, kDefaultMaxDegree, threads);
        ASSERT_EQ(first.size(), 3u);
        for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(first[i].sigma2, serial[i].sigma2);
    }
}

TEST(Dessins, CountClassesExamples) {
    EXPECT_EQ(count_classes(combinatorial_type_m2(LiftedType({1, 1, 3}))), 1u);
    EXPECT_EQ(count_classes(combinatorial_type_m2(LiftedType({1, 2}))), 1u);
}

TEST(Dessins, CountClassesMatchesBruteForce) {
    std::size_t checked = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto ps = partitions(n, n);
        for (const auto& a : ps)
            for (const auto& b : ps)
                for (const auto& c : ps) {
                    const CombinatorialType t{n, CycleType(a, n), CycleType(b, n), CycleType(c, n)};
                    EXPECT_EQ(count_classes(t), brute_force_classes(t)) << t.c1.to_string() << t.c2.to_string()
                                                                        << t.c3.to_string();
                    ++checked;
                }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Dessins, RealizabilityMatchesSearchSmall) {
    std::map<std::vector<std::size_t>, bool> cache;
    for (std::size_t r = 2; r <= 5; ++r) {
        for (const auto& v : zero_sum_tuples(r, 5)) {
            const LiftedType a(v);
            bool searched = false;
            try {
                const auto c = combinatorial_type_m1(a);
                searched = !search_generating_systems(c, 1).empty();
            } catch (const DomainError&) {
                searched = false;
            }
            EXPECT_EQ(realizable(a), searched) << ::testing::PrintToString(v);
        }
    }
}

TEST(Dessins, BuildTreeExamples) {
    auto t = build_tree(LiftedType({2, 4, -3, -2, -1}));
    EXPECT_TRUE(is_valid_tree(t));
    EXPECT_EQ(t.signed_valencies(), (std::vector<std::int64_t>{2, 4, -3, -2, -1}));
    auto g = tree_to_generating_system(t);
    EXPECT_EQ(g.type(), combinatorial_type_m1(LiftedType({2, 4, -3, -2, -1})));

    t = build_tree(LiftedType({3, -1, -1, -1}));
    ASSERT_EQ(t.edges.size(), 3u);
    EXPECT_EQ(t.colors[0], Color::black);
    EXPECT_EQ(t.rotation[0], (std::vector<std::size_t>{0, 1, 2}));
    for (const auto& e : t.edges) {
        EXPECT_EQ(e.black, 0u);
        EXPECT_EQ(e.weight, 1u);
    }
    g = tree_to_generating_system(t);
    EXPECT_EQ(g.sigma1.cycle_type().parts(), padded({3}, 3));
    EXPECT_TRUE(g.sigma3.is_identity());
    EXPECT_EQ(g.sigma2.cycle_type().parts(), padded({3}, 3));

    for (std::int64_t k = 1; k <= 6; ++k) {
        t = build_tree(LiftedType({k, -k}));
        ASSERT_EQ(t.edges.size(), 1u);
        EXPECT_EQ(t.edges[0].weight, static_cast<std::uint64_t>(k));
        g = tree_to_generating_system(t);
        EXPECT_TRUE(g.sigma2.is_identity());
        EXPECT_EQ(genus(g.type()), 0);
    }
    EXPECT_THROW(build_tree(LiftedType({1, 1, -1, -1})), DomainError);
    EXPECT_THROW(build_tree(LiftedType({1, 1, -1})), DomainError);
}

TEST(Dessins, BuildTreeProperties) {
    std::size_t built = 0;
    for (std::size_t r = 2; r <= 6; ++r) {
        for (const auto& v : zero_sum_tuples(r, r <= 4 ? 12 : 8)) {
            const LiftedType a(v);
            if (!realizable(a)) continue;
            const auto t = build_tree(a);
            ++built;
            EXPECT_TRUE(is_valid_tree(t));
            EXPECT_EQ(t.signed_valencies(), v);
            const auto k = stats(a).k;
            for (const auto& e : t.edges) EXPECT_EQ(e.weight % k, 0u);
            const auto g = tree_to_generating_system(t);
            EXPECT_TRUE(is_generating_system(g));
            EXPECT_EQ(genus(g.type()), 0);
            EXPECT_EQ(g.type(), combinatorial_type_m1(a));
            std::size_t nontrivial = 0;
            const auto c2 = g.sigma2.cycle_type();
            for (auto len : c2.parts()) nontrivial += len > 1;
            EXPECT_LE(nontrivial, 1u);
        }
    }
    EXPECT_GT(built, 1000u);
}

TEST(Dessins, DotOutput) {
    const auto dot = to_dot(build_tree(LiftedType({2, 4, -3, -2, -1})));
    EXPECT_NE(dot.find("graph tree"), std::string::npos);
    EXPECT_NE(dot.find("--"), std::string::npos);
}
