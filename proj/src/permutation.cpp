#include "gdd/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "gdd/errors.hpp"

namespace gdd {

CycleType::CycleType(std::vector<std::size_t> parts, std::size_t n) : parts_(std::move(parts)), degree_(n) {
    std::size_t total = 0;
    for (auto k : parts_) {
        if (k == 0) throw DomainError("not_well_formed", "cycle lengths must be positive");
        total += k;
    }
    if (total > n)
        throw DomainError("not_well_formed",
                          "cycle lengths sum to " + std::to_string(total) + " > degree " + std::to_string(n));
    parts_.resize(parts_.size() + (n - total), 1);
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::string CycleType::to_string() const {
    std::string out = "(";
    bool first = true;
    for (auto k : parts_) {
        if (k == 1) break;
        if (!first) out += ",";
        out += std::to_string(k);
        first = false;
    }
    return out + ")";
}

Permutation::Permutation(std::size_t n) : images_(n) {
    if (n > 255) throw DomainError("degree_too_large", "permutations are limited to degree 255");
    std::iota(images_.begin(), images_.end(), std::uint8_t{0});
}

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
        if (x >= images_.size() || seen[x]) throw DomainError("invalid_permutation", "images are not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
    Permutation s(n);
    std::vector<bool> used(n, false);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= n || used[c[i]]) throw DomainError("invalid_permutation", "cycles are not disjoint points of 1..n");
            used[c[i]] = true;
            s.images_[c[i]] = static_cast<std::uint8_t>(c[(i + 1) % c.size()]);
        }
    }
    return s;
}

Permutation Permutation::parse(const std::string& text, std::size_t n) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t i = 0;
    auto fail = [&] { throw DomainError("invalid_permutation", "cannot parse permutation '" + text + "'"); };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') fail();
        const auto close = text.find(')', i);
        if (close == std::string::npos) fail();
        std::istringstream in(text.substr(i + 1, close - i - 1));
        std::vector<std::size_t> cycle;
        std::string tok;
        while (in >> tok) {
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &pos);
            } catch (const std::exception&) {
                fail();
            }
            if (pos != tok.size() || v == 0 || v > n) fail();
            cycle.push_back(v - 1);
        }
        if (!cycle.empty()) cycles.push_back(std::move(cycle));
        i = close + 1;
    }
    return from_cycles(n, cycles);
}

Permutation Permutation::operator*(const Permutation& o) const {
    if (degree() != o.degree()) throw DomainError("degree_mismatch", "composing permutations of different degree");
    Permutation r(degree());
    for (std::size_t x = 0; x < degree(); ++x) r.images_[x] = images_[o.images_[x]];
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r(degree());
    for (std::size_t x = 0; x < degree(); ++x) r.images_[images_[x]] = static_cast<std::uint8_t>(x);
    return r;
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t x = 0; x < degree(); ++x)
        if (images_[x] != x) return false;
    return true;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t x = 0; x < degree(); ++x) {
        if (seen[x]) continue;
        std::vector<std::size_t> c;
        for (std::size_t y = x; !seen[y]; y = images_[y]) {
            seen[y] = true;
            c.push_back(y);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t Permutation::cycle_count() const {
    std::size_t count = 0;
    std::vector<bool> seen(degree(), false);
    for (std::size_t x = 0; x < degree(); ++x) {
        if (seen[x]) continue;
        ++count;
        for (std::size_t y = x; !seen[y]; y = images_[y]) seen[y] = true;
    }
    return count;
}

CycleType Permutation::cycle_type() const {
    std::vector<std::size_t> parts;
    for (const auto& c : cycles()) parts.push_back(c.size());
    return CycleType(std::move(parts), degree());
}

std::string Permutation::to_string() const {
    std::string out;
    for (const auto& c : cycles()) {
        if (c.size() == 1) continue;
        out += "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += " ";
            out += std::to_string(c[i] + 1);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

CycleType cycle_type(const Permutation& s) { return s.cycle_type(); }

bool is_transitive(const std::vector<Permutation>& gens) {
    if (gens.empty()) return true;
    const std::size_t n = gens.front().degree();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            const auto y = g(x);
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == n;
}

}  // namespace gdd
