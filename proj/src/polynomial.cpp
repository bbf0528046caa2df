#include "gdd/polynomial.hpp"

#include <algorithm>

#include "gdd/errors.hpp"

namespace gdd {

Polynomial::Polynomial(FieldPtr field, std::vector<Field::Code> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    normalize();
}

Polynomial Polynomial::constant(const FqElement& c) {
    return Polynomial(c.field(), {c.code()});
}

Polynomial Polynomial::from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs) {
    std::vector<Field::Code> codes;
    codes.reserve(coeffs.size());
    for (auto c : coeffs) codes.push_back(field->from_int(c));
    return Polynomial(field, std::move(codes));
}

Polynomial Polynomial::linear(const FqElement& alpha) {
    const auto& f = alpha.field();
    return Polynomial(f, {f->neg(alpha.code()), f->one()});
}

Polynomial Polynomial::monomial(const FieldPtr& field, std::size_t n) {
    std::vector<Field::Code> c(n + 1, 0);
    c[n] = field->one();
    return Polynomial(field, std::move(c));
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Degree Polynomial::degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

FqElement Polynomial::coeff(std::size_t i) const {
    return {field_, i < coeffs_.size() ? coeffs_[i] : 0};
}

FqElement Polynomial::leading() const {
    if (coeffs_.empty()) return {field_, 0};
    return {field_, coeffs_.back()};
}

Polynomial Polynomial::monic() const {
    if (coeffs_.empty() || is_monic()) return *this;
    return *this * leading().inverse();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    std::vector<Field::Code> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Field::Code a = i < coeffs_.size() ? coeffs_[i] : 0;
        const Field::Code b = i < o.coeffs_.size() ? o.coeffs_[i] : 0;
        r[i] = field_->add(a, b);
    }
    return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator-() const {
    std::vector<Field::Code> r(coeffs_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->neg(coeffs_[i]);
    return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    if (coeffs_.empty() || o.coeffs_.empty()) return Polynomial(field_);
    std::vector<Field::Code> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] = field_->add(r[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
    }
    return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator*(const FqElement& c) const {
    require_same_field(field_, c.field());
    std::vector<Field::Code> r(coeffs_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->mul(coeffs_[i], c.code());
    return Polynomial(field_, std::move(r));
}

FqElement Polynomial::operator()(const FqElement& x) const {
    require_same_field(field_, x.field());
    Field::Code acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x.code()), coeffs_[i]);
    return {field_, acc};
}

std::string Polynomial::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += field_->format(coeffs_[i]);
    }
    return out + "]";
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    require_same_field(a.field(), b.field());
    if (b.is_zero()) throw DomainError("division_by_zero", "polynomial division by zero");
    const auto& F = a.field();
    auto rem = a.codes();
    const auto& bc = b.codes();
    const std::size_t db = bc.size() - 1;
    if (rem.size() < bc.size()) return {Polynomial(F), a};
    std::vector<Field::Code> quot(rem.size() - db, 0);
    const Field::Code lead_inv = F->inv(bc.back());
    for (std::size_t k = rem.size(); k-- > db;) {
        const Field::Code c = F->mul(rem[k], lead_inv);
        if (c == 0) continue;
        const std::size_t shift = k - db;
        quot[shift] = c;
        for (std::size_t i = 0; i <= db; ++i) rem[shift + i] = F->sub(rem[shift + i], F->mul(c, bc[i]));
    }
    rem.resize(db);
    return {Polynomial(F, std::move(quot)), Polynomial(F, std::move(rem))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Polynomial derivative(const Polynomial& f) {
    const auto& F = f.field();
    const auto& c = f.codes();
    if (c.size() <= 1) return Polynomial(F);
    std::vector<Field::Code> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        r[i - 1] = F->mul(c[i], F->from_int(static_cast<std::int64_t>(i % F->characteristic())));
    return Polynomial(F, std::move(r));
}

Polynomial pow(const Polynomial& f, std::size_t e) {
    Polynomial result = Polynomial::constant(FqElement(f.field(), f.field()->one()));
    Polynomial base = f;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::optional<Polynomial> inverse_mod(const Polynomial& a, const Polynomial& modulus) {
    const auto& F = modulus.field();
    Polynomial r0 = modulus, r1 = a % modulus;
    Polynomial s0(F), s1 = Polynomial::constant(FqElement(F, F->one()));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Polynomial s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != std::size_t{0}) return std::nullopt;
    return (s0 * r0.leading().inverse()) % modulus;
}

Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& modulus) {
    Polynomial result = Polynomial::constant(FqElement(base.field(), base.field()->one())) % modulus;
    base = base % modulus;
    while (e) {
        if (e & 1) result = (result * base) % modulus;
        e >>= 1;
        if (e) base = (base * base) % modulus;
    }
    return result;
}

Polynomial scale_variable(const Polynomial& f, const FqElement& c) {
    const auto& F = f.field();
    std::vector<Field::Code> r = f.codes();
    Field::Code w = F->one();
    for (auto& x : r) {
        x = F->mul(x, w);
        w = F->mul(w, c.code());
    }
    return Polynomial(F, std::move(r));
}

Polynomial shift_variable(const Polynomial& f, const FqElement& c) {
    const auto& F = f.field();
    const Polynomial step = Polynomial::monomial(F, 1) + Polynomial::constant(c);
    Polynomial r(F);
    for (std::size_t i = f.codes().size(); i-- > 0;) r = r * step + Polynomial(F, {f.codes()[i]});
    return r;
}

Polynomial reverse(const Polynomial& f, std::size_t n) {
    const auto deg = f.degree();
    if (deg && *deg > n) throw DomainError("invalid_argument", "reverse: n below the degree");
    std::vector<Field::Code> r(n + 1, 0);
    for (std::size_t i = 0; i < f.codes().size(); ++i) r[n - i] = f.codes()[i];
    return Polynomial(f.field(), std::move(r));
}

Polynomial inflate(const Polynomial& f, std::size_t k) {
    if (f.is_zero()) return f;
    std::vector<Field::Code> r((f.codes().size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < f.codes().size(); ++i) r[i * k] = f.codes()[i];
    return Polynomial(f.field(), std::move(r));
}

std::optional<Polynomial> deflate(const Polynomial& f, std::size_t k) {
    if (f.is_zero()) return f;
    std::vector<Field::Code> r;
    for (std::size_t i = 0; i < f.codes().size(); ++i) {
        if (i % k == 0)
            r.push_back(f.codes()[i]);
        else if (f.codes()[i] != 0)
            return std::nullopt;
    }
    return Polynomial(f.field(), std::move(r));
}

std::size_t root_multiplicity(const Polynomial& f, const FqElement& alpha) {
    if (f.is_zero()) throw DomainError("invalid_argument", "multiplicity in the zero polynomial");
    const Polynomial lin = Polynomial::linear(alpha);
    Polynomial g = f;
    std::size_t k = 0;
    while (true) {
        auto [q, r] = divmod(g, lin);
        if (!r.is_zero()) return k;
        g = std::move(q);
        ++k;
    }
}

std::vector<std::pair<Polynomial, std::size_t>> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw DomainError("invalid_argument", "squarefree decomposition of zero");
    const auto& F = f.field();
    const std::size_t p = F->characteristic();
    std::vector<std::pair<Polynomial, std::size_t>> out;
    Polynomial g = f.monic();
    if (g.is_constant()) return out;

    Polynomial c = gcd(g, derivative(g));
    Polynomial w = g / c;
    std::size_t i = 1;
    while (!w.is_constant()) {
        Polynomial y = gcd(w, c);
        Polynomial z = w / y;
        if (!z.is_constant()) out.emplace_back(z, i);
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (!c.is_constant()) {
        // c is a p-th power: c(z) = s(z)^p with s's coefficients the p-th roots.
        auto defl = deflate(c, p);
        std::vector<Field::Code> root_coeffs;
        for (auto code : defl->codes()) root_coeffs.push_back(F->pth_root(code));
        for (auto& [factor, mult] : squarefree_decomposition(Polynomial(F, std::move(root_coeffs))))
            out.emplace_back(factor, mult * p);
    }
    // Merge equal multiplicities (from the recursive branch) and sort.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Polynomial, std::size_t>> merged;
    for (auto& entry : out) {
        if (!merged.empty() && merged.back().second == entry.second)
            merged.back().first = merged.back().first * entry.first;
        else
            merged.push_back(std::move(entry));
    }
    return merged;
}

namespace {

// Roots of a monic squarefree polynomial that splits into distinct linear
// factors over the field.
void split_linear_factors(const Polynomial& g, std::vector<FqElement>& roots) {
    const auto& F = g.field();
    const auto deg = *g.degree();
    if (deg == 0) return;
    if (deg == 1) {
        roots.emplace_back(F, F->neg(g.codes()[0]));
        return;
    }
    const std::uint64_t q = F->order();
    if (q % 2 == 0 || q <= 4096) {
        std::size_t found = 0;
        for (Field::Code x = 0; x < q && found < deg; ++x) {
            FqElement e(F, x);
            if (g(e).is_zero()) {
                roots.push_back(e);
                ++found;
            }
        }
        return;
    }
    // Deterministic equal-degree splitting with shifts z + a.
    const Polynomial one = Polynomial::constant(FqElement(F, F->one()));
    for (Field::Code a = 0; a < q; ++a) {
        Polynomial shifted(F, {a, F->one()});
        Polynomial h = powmod(shifted, (q - 1) / 2, g) - one;
        Polynomial d = gcd(h, g);
        const auto dd = d.degree();
        if (dd && *dd > 0 && *dd < deg) {
            split_linear_factors(d, roots);
            split_linear_factors(g / d, roots);
            return;
        }
    }
}

}  // namespace

RootReport roots_in_field(const Polynomial& f) {
    if (f.is_zero()) throw DomainError("invalid_argument", "roots of the zero polynomial");
    const auto& F = f.field();
    RootReport report;
    std::size_t found_degree = 0;
    const Polynomial z = Polynomial::monomial(F, 1);
    for (const auto& [factor, mult] : squarefree_decomposition(f)) {
        const Polynomial frob = powmod(z, F->order(), factor);
        const Polynomial linear_part = gcd(frob - z, factor);
        std::vector<FqElement> roots;
        split_linear_factors(linear_part, roots);
        for (auto& r : roots) report.roots.emplace_back(r, mult);
        found_degree += roots.size() * mult;
    }
    std::sort(report.roots.begin(), report.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    report.unsplit_degree = *f.degree() - found_degree;
    return report;
}

std::optional<std::pair<FqElement, std::size_t>> is_linear_power(const Polynomial& f) {
    if (f.is_constant()) throw DomainError("invalid_argument", "is_linear_power needs a nonconstant polynomial");
    const auto parts = squarefree_decomposition(f);
    if (parts.size() != 1 || *parts.front().first.degree() != 1) return std::nullopt;
    const auto& lin = parts.front().first;
    return std::make_pair(-lin.coeff(0), parts.front().second);
}

}  // namespace gdd
