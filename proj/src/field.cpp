#include "gdd/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gdd/errors.hpp"

namespace gdd {

namespace {

constexpr std::uint64_t kAddTableOrder = 1024;

// Dense polynomials over F_p, lowest coefficient first. Only used while
// setting up a field, before element codes exist.
using BasePoly = std::vector<std::uint64_t>;

void trim(BasePoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t powmod_int(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

BasePoly base_mod(BasePoly a, const BasePoly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = powmod_int(m.back(), p - 2, p);
    while (a.size() > dm) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

BasePoly base_mulmod(const BasePoly& a, const BasePoly& b, const BasePoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    BasePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return base_mod(std::move(r), m, p);
}

BasePoly base_powmod(BasePoly a, std::uint64_t e, const BasePoly& m, std::uint64_t p) {
    BasePoly r{1};
    a = base_mod(std::move(a), m, p);
    while (e) {
        if (e & 1) r = base_mulmod(r, a, m, p);
        a = base_mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

BasePoly base_gcd(BasePoly a, BasePoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = base_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Irreducible iff x^{p^d} = x mod f and gcd(x^{p^k} - x, f) = 1 for 0 < k < d.
bool base_irreducible(const BasePoly& f, std::uint64_t p) {
    const std::size_t d = f.size() - 1;
    if (d <= 1) return true;
    BasePoly x{0, 1};
    BasePoly frob = x;
    for (std::size_t k = 1; k <= d; ++k) {
        frob = base_powmod(frob, p, f, p);
        BasePoly diff = frob;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (k < d) {
            if (diff.empty()) return false;
            if (base_gcd(diff, f, p).size() != 1) return false;
        } else if (!diff.empty()) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b))
        throw DomainError("mixed_field", "operands live in different fields");
}

FieldPtr Field::make(std::uint64_t p, unsigned d) {
    if (!is_prime(p)) throw DomainError("invalid_field", "characteristic " + std::to_string(p) + " is not prime");
    if (d == 0) throw DomainError("invalid_field", "extension degree must be at least 1");
    if (p >= (std::uint64_t{1} << 32))
        throw DomainError("invalid_field", "characteristic too large");
    if (d == 1) return std::shared_ptr<const Field>(new Field(p, 1, {0, 1}));

    std::uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= p;
        if (q > kMaxTableOrder) throw DomainError("field_too_large", "p^d exceeds the supported field size");
    }
    // Lower coefficients c_0..c_{d-1} scanned in lexicographic order, c_0 most
    // significant.
    for (std::uint64_t t = 0; t < q; ++t) {
        BasePoly f(d + 1, 0);
        std::uint64_t rest = t;
        for (unsigned i = d; i-- > 0;) {
            f[i] = rest % p;
            rest /= p;
        }
        f[d] = 1;
        if (f[0] == 0) continue;
        if (base_irreducible(f, p)) return std::shared_ptr<const Field>(new Field(p, d, std::move(f)));
    }
    throw DomainError("invalid_field", "no irreducible polynomial found");  // unreachable
}

Field::Field(std::uint64_t p, unsigned d, std::vector<std::uint64_t> modulus)
    : p_(p), d_(d), q_(1), one_(0), top_weight_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < d_; ++i) q_ *= p_;
    top_weight_ = q_ / p_;
    one_ = top_weight_;
    if (d_ > 1) build_tables();
}

std::vector<std::uint64_t> Field::coefficients(Code a) const {
    std::vector<std::uint64_t> c(d_, 0);
    for (unsigned i = d_; i-- > 0;) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Field::Code Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
    Code a = 0;
    for (unsigned i = 0; i < d_; ++i) a = a * p_ + (i < coeffs.size() ? coeffs[i] % p_ : 0);
    return a;
}

Field::Code Field::mul_slow(Code a, Code b) const {
    const auto prod = base_mulmod(coefficients(a), coefficients(b), modulus_, p_);
    return from_coefficients(prod);
}

void Field::build_tables() {
    if (q_ <= kAddTableOrder) {
        add_table_.resize(q_ * q_);
        for (Code a = 0; a < q_; ++a) {
            const auto ca = coefficients(a);
            for (Code b = 0; b < q_; ++b) {
                auto cb = coefficients(b);
                for (unsigned i = 0; i < d_; ++i) cb[i] = (cb[i] + ca[i]) % p_;
                add_table_[a * q_ + b] = static_cast<std::uint32_t>(from_coefficients(cb));
            }
        }
    }
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    for (Code g = 1; g < q_; ++g) {
        Code x = one_;
        std::uint64_t k = 0;
        bool primitive = true;
        for (; k < q_ - 1; ++k) {
            if (k > 0 && x == one_) {
                primitive = false;
                break;
            }
            exp_[k] = static_cast<std::uint32_t>(x);
            x = mul_slow(x, g);
        }
        if (primitive && x == one_) {
            for (std::uint64_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = static_cast<std::uint32_t>(i);
            return;
        }
    }
}

Field::Code Field::from_int(std::int64_t n) const noexcept {
    const auto sp = static_cast<std::int64_t>(p_);
    const auto r = static_cast<std::uint64_t>(((n % sp) + sp) % sp);
    return r * top_weight_;
}

Field::Code Field::add(Code a, Code b) const noexcept {
    if (d_ == 1) {
        const Code s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    Code r = 0, w = 1;
    while (a || b) {
        r += ((a % p_ + b % p_) % p_) * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return r;
}

Field::Code Field::neg(Code a) const noexcept {
    if (d_ == 1) return a == 0 ? 0 : p_ - a;
    Code r = 0, w = 1;
    while (a) {
        const Code c = a % p_;
        r += (c == 0 ? 0 : p_ - c) * w;
        a /= p_;
        w *= p_;
    }
    return r;
}

Field::Code Field::sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

Field::Code Field::mul(Code a, Code b) const noexcept {
    if (d_ == 1) return a * b % p_;
    if (a == 0 || b == 0) return 0;
    const std::uint64_t e = (std::uint64_t{log_[a]} + log_[b]) % (q_ - 1);
    return exp_[e];
}

Field::Code Field::inv(Code a) const {
    if (a == 0) throw DomainError("division_by_zero", "inverse of zero");
    if (d_ == 1) return powmod_int(a, p_ - 2, p_);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Field::Code Field::pow(Code a, std::uint64_t e) const noexcept {
    if (e == 0) return one_;
    if (a == 0) return 0;
    if (d_ == 1) return powmod_int(a, e, p_);
    const std::uint64_t k = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(log_[a]) * (e % (q_ - 1))) % (q_ - 1));
    return exp_[k];
}

Field::Code Field::pth_root(Code a) const noexcept {
    if (d_ == 1) return a;
    return pow(a, q_ / p_);
}

bool Field::in_prime_field(Code a) const noexcept { return a % top_weight_ == 0; }

std::optional<std::uint64_t> Field::prime_field_value(Code a) const noexcept {
    if (!in_prime_field(a)) return std::nullopt;
    return a / top_weight_;
}

std::uint64_t Field::multiplicative_order(Code a) const {
    if (a == 0) throw DomainError("division_by_zero", "zero has no multiplicative order");
    std::uint64_t n = q_ - 1;
    std::uint64_t order = n;
    auto strip = [&](std::uint64_t prime) {
        while (order % prime == 0 && pow(a, order / prime) == one_) order /= prime;
    };
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f != 0) continue;
        while (n % f == 0) n /= f;
        strip(f);
    }
    if (n > 1) strip(n);
    return order;
}

std::optional<Field::Code> Field::primitive_root_of_unity(std::uint64_t m) const {
    if (m == 0 || (q_ - 1) % m != 0) return std::nullopt;
    for (Code x = 1; x < q_; ++x)
        if (multiplicative_order(x) == m) return x;
    return std::nullopt;
}

std::string Field::format(Code a) const {
    if (d_ == 1) return std::to_string(a);
    std::string out = "[";
    const auto c = coefficients(a);
    for (unsigned i = 0; i < d_; ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out + "]";
}

Field::Code Field::parse(const std::string& text) const {
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw DomainError("parse_error", "cannot parse field element '" + text + "'");
        return v;
    };
    if (text.empty()) throw DomainError("parse_error", "empty field element");
    if (text.front() != '[') return from_int(parse_int(text));
    if (text.back() != ']') throw DomainError("parse_error", "unterminated field element '" + text + "'");
    std::vector<std::uint64_t> coeffs;
    std::string_view body(text.data() + 1, text.size() - 2);
    while (true) {
        const auto comma = body.find(',');
        const auto v = parse_int(body.substr(0, comma));
        const auto sp = static_cast<std::int64_t>(p_);
        coeffs.push_back(static_cast<std::uint64_t>(((v % sp) + sp) % sp));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (coeffs.size() > d_) throw DomainError("parse_error", "too many coefficients in '" + text + "'");
    return from_coefficients(coeffs);
}

FqElement FqElement::operator+(const FqElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->add(code_, o.code_)};
}

FqElement FqElement::operator-(const FqElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->sub(code_, o.code_)};
}

FqElement FqElement::operator*(const FqElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->mul(code_, o.code_)};
}

FqElement FqElement::operator/(const FqElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->mul(code_, field_->inv(o.code_))};
}

}  // namespace gdd
