#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdd/permutation.hpp"
#include "gdd/types.hpp"

namespace gdd {

struct CombinatorialType {
    std::size_t n = 0;
    CycleType c1, c2, c3;

    bool operator==(const CombinatorialType&) const = default;
};

/// sigma1 sigma2 sigma3 = 1, transitive.
struct GeneratingSystem {
    Permutation sigma1, sigma2, sigma3;

    std::size_t degree() const noexcept { return sigma1.degree(); }
    CombinatorialType type() const;
};

/// Whether the triple has product one and generates a transitive group.
bool is_generating_system(const GeneratingSystem& s);

/// From 2 - 2g = c(C1) + c(C2) + c(C3) - n. Throws DomainError("not_realizable")
/// when that value is odd or g would be negative.
std::int64_t genus(const CombinatorialType& c);

/// C(A) for m = 1: positive entries, one (r-1)-cycle, negated negative entries.
/// Throws DomainError("not_well_formed") when r - 1 > n_A or sum A != 0.
CombinatorialType combinatorial_type_m1(const LiftedType& a);

/// C(A) for m = 2 with n = sum A_i: (2r-1, 2, ..., 2), (A_1, ..., A_r), (2, ..., 2).
CombinatorialType combinatorial_type_m2(const LiftedType& a);

/// sigma1 with the cycles of c1 on consecutive points, longest first.
Permutation canonical_representative(const CycleType& c);

constexpr std::size_t kDefaultMaxDegree = 9;

/// All generating systems of type c with sigma1 = canonical_representative(c1),
/// in the enumeration order of sigma2 over its class. Stops after `limit`
/// systems when given. Throws DomainError("degree_too_large") above max_degree.
/// With several threads the class is dealt out round-robin; the result does not
/// depend on the thread count.
std::vector<GeneratingSystem> search_generating_systems(const CombinatorialType& c,
                                                        std::optional<std::size_t> limit = std::nullopt,
                                                        std::size_t max_degree = kDefaultMaxDegree,
                                                        unsigned threads = 1);

/// Generating systems of type c up to simultaneous conjugation.
std::size_t count_classes(const CombinatorialType& c, std::size_t max_degree = kDefaultMaxDegree);

/// (1 2 ... n)(n n-2 ... 3 1) == (2 3)(4 5)...(n-1 n) for odd n >= 3.
bool verify_identity_lemma4(std::size_t n);

enum class Color { black, white };

struct TreeEdge {
    std::size_t black = 0;
    std::size_t white = 0;
    std::uint64_t weight = 0;
};

/// Bicolored tree with positive edge weights and a cyclic edge order at each
/// vertex. Vertex i carries entry i of the lift it was built from.
struct WeightedPlaneTree {
    std::vector<Color> colors;
    std::vector<TreeEdge> edges;
    std::vector<std::vector<std::size_t>> rotation;  // edge ids, counterclockwise

    std::uint64_t valency(std::size_t v) const;
    /// Positive for black, negative for white.
    std::vector<std::int64_t> signed_valencies() const;
    std::uint64_t total_weight() const;
};

/// Checks connectivity, acyclicity, coloring, weights and rotations.
bool is_valid_tree(const WeightedPlaneTree& t);

/// Tree with signed valency list A, following the inductive proof of the
/// realizability criterion. Throws DomainError("not_realizable").
WeightedPlaneTree build_tree(const LiftedType& a);

/// Expands each weight-w edge into w strands and reads sigma1 (black
/// rotations), sigma3 (white rotations) and sigma2 off the result. Throws
/// std::logic_error when the output fails the face condition.
GeneratingSystem tree_to_generating_system(const WeightedPlaneTree& t);

/// Graphviz rendering of the tree shape (no embedding guarantees).
std::string to_dot(const WeightedPlaneTree& t);

}  // namespace gdd
