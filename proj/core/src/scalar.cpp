#include "twistlab/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

namespace twistlab {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

// ---- integer polynomial helpers for cyclotomic polynomials ----

using ZPoly = std::vector<mpz_class>; // low degree first, no trailing zeros

ZPoly x_pow_minus_one(std::uint64_t n) {
    ZPoly p(n + 1, mpz_class(0));
    p[0] = -1;
    p[n] = 1;
    return p;
}

// Exact division of polynomials with integer coefficients; divisor monic.
ZPoly divide_exact(ZPoly num, const ZPoly& den) {
    ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0,
               mpz_class(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        mpz_class c = num[i + den.size() - 1];
        if (c == 0) continue;
        quot[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    return quot;
}

// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed once per n.
const ZPoly& cyclotomic_poly(std::uint64_t n) {
    static std::mutex mutex;
    static std::map<std::uint64_t, ZPoly> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<const ZPoly&(std::uint64_t)> get = [&](std::uint64_t m) -> const ZPoly& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        ZPoly p = x_pow_minus_one(m);
        for (std::uint64_t d = 1; d < m; ++d)
            if (m % d == 0) p = divide_exact(std::move(p), get(d));
        return cache.emplace(m, std::move(p)).first->second;
    };
    return get(n);
}

// ---- prime field helpers ----

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw DivisionByZeroError("inverse of 0 in prime field");
    // extended Euclid on (a, p); p prime so gcd = 1
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// ---- cyclotomic coefficient-vector helpers ----

using QVec = std::vector<mpq_class>;

QVec zero_vec(std::size_t deg) { return QVec(deg, mpq_class(0)); }

bool vec_is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& c) { return c == 0; });
}

// Reduce an arbitrary-degree polynomial modulo the monic integer polynomial
// phi, returning exactly deg(phi) coefficients.
QVec reduce_mod(QVec poly, const ZPoly& phi) {
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        mpq_class c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            poly[i - deg + j] -= c * mpq_class(phi[j]);
    }
    poly.resize(deg, mpq_class(0));
    return poly;
}

QVec vec_mul(const QVec& a, const QVec& b, const ZPoly& phi) {
    QVec prod(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    return reduce_mod(std::move(prod), phi);
}

std::size_t poly_degree(const QVec& v) {
    for (std::size_t i = v.size(); i-- > 0;)
        if (v[i] != 0) return i;
    return 0;
}

// Extended Euclid over the rationals: returns u with u * f = gcd mod phi.
// phi is irreducible, so any nonzero f has an inverse.
QVec vec_inverse(const QVec& f, const ZPoly& phi) {
    const std::size_t deg = phi.size() - 1;
    QVec r0(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) r0[i] = mpq_class(phi[i]);
    QVec r1 = f;
    r1.resize(std::max<std::size_t>(r1.size(), 1), mpq_class(0));
    QVec s0 = zero_vec(deg + 1), s1 = zero_vec(deg + 1);
    s1[0] = 1;

    auto trim = [](QVec& v) {
        while (v.size() > 1 && v.back() == 0) v.pop_back();
    };
    trim(r0);
    trim(r1);

    while (!(r1.size() == 1 && r1[0] == 0)) {
        // divide r0 by r1
        QVec rem = r0;
        QVec quot(rem.size(), mpq_class(0));
        while (rem.size() >= r1.size() && !(rem.size() == 1 && rem[0] == 0)) {
            std::size_t d = rem.size() - r1.size();
            mpq_class c = rem.back() / r1.back();
            if (c == 0) break;
            quot[d] += c;
            for (std::size_t j = 0; j < r1.size(); ++j)
                rem[d + j] -= c * r1[j];
            trim(rem);
            if (rem.size() == 1 && rem[0] == 0) break;
        }
        // s_next = s0 - quot * s1
        QVec qs(quot.size() + s1.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < quot.size(); ++i)
            if (quot[i] != 0)
                for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += quot[i] * s1[j];
        QVec s_next = s0;
        s_next.resize(std::max(s_next.size(), qs.size()), mpq_class(0));
        for (std::size_t i = 0; i < qs.size(); ++i) s_next[i] -= qs[i];
        s0 = std::move(s1);
        s1 = std::move(s_next);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is a nonzero constant gcd; normalize
    mpq_class g = r0[0];
    QVec result = reduce_mod(std::move(s0), phi);
    for (auto& c : result) c /= g;
    return result;
}

void require_same_field(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field()))
        throw FieldMismatchError("scalars from different fields: " +
                                 a.field().to_string() + " vs " + b.field().to_string());
}

}  // namespace

// Access to Scalar internals for the implementation file only.
class ScalarOps {
public:
    static Scalar make(const FieldSpec& f,
                       std::variant<mpq_class, std::uint64_t, QVec> payload) {
        Scalar s;
        s.field_ = f;
        s.payload_ = std::move(payload);
        return s;
    }
    static const mpq_class& rat(const Scalar& s) { return std::get<mpq_class>(s.payload_); }
    static std::uint64_t res(const Scalar& s) { return std::get<std::uint64_t>(s.payload_); }
    static const QVec& cyc(const Scalar& s) { return std::get<QVec>(s.payload_); }
};

// ---- FieldSpec ----

FieldSpec FieldSpec::rational() { return FieldSpec(Kind::Rational, 0); }

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw Error("field parameter " + std::to_string(p) + " is not prime");
    return FieldSpec(Kind::Prime, p);
}

FieldSpec FieldSpec::cyclotomic(std::uint64_t n) {
    if (n < 1) throw Error("cyclotomic index must be >= 1");
    return FieldSpec(Kind::Cyclotomic, n);
}

std::uint64_t FieldSpec::characteristic() const {
    return kind_ == Kind::Prime ? param_ : 0;
}

std::size_t FieldSpec::extension_degree() const {
    if (kind_ != Kind::Cyclotomic) return 1;
    return cyclotomic_polynomial().size() - 1;
}

const std::vector<mpz_class>& FieldSpec::cyclotomic_polynomial() const {
    if (kind_ != Kind::Cyclotomic) throw Error("not a cyclotomic field");
    return cyclotomic_poly(param_);
}

std::string FieldSpec::to_string() const {
    switch (kind_) {
        case Kind::Rational: return "rational";
        case Kind::Prime: return "prime(" + std::to_string(param_) + ")";
        case Kind::Cyclotomic: return "cyclotomic(" + std::to_string(param_) + ")";
    }
    return "?";
}

FieldSpec FieldSpec::parse(const std::string& text) {
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    std::string s = strip(text);
    if (s == "rational" || s == "Q") return rational();
    auto parse_arg = [&](const std::string& prefix) -> std::optional<std::uint64_t> {
        if (s.rfind(prefix + "(", 0) == 0 && s.back() == ')') {
            std::string arg = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
            if (!arg.empty() && std::all_of(arg.begin(), arg.end(),
                                            [](unsigned char c) { return std::isdigit(c); }))
                return std::stoull(arg);
        }
        return std::nullopt;
    };
    if (auto p = parse_arg("prime")) return prime(*p);
    if (auto n = parse_arg("cyclotomic")) return cyclotomic(*n);
    throw ParseError("unrecognized field: " + text, 1, 1);
}

// ---- Scalar ----

Scalar Scalar::zero(const FieldSpec& f) { return from_integer(f, 0); }
Scalar Scalar::one(const FieldSpec& f) { return from_integer(f, 1); }

Scalar Scalar::from_integer(const FieldSpec& f, long value) {
    switch (f.kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(f, mpq_class(value));
        case FieldSpec::Kind::Prime: {
            std::int64_t p = static_cast<std::int64_t>(f.parameter());
            std::int64_t r = value % p;
            if (r < 0) r += p;
            return ScalarOps::make(f, static_cast<std::uint64_t>(r));
        }
        case FieldSpec::Kind::Cyclotomic: {
            QVec v = zero_vec(f.extension_degree());
            v[0] = value;
            return ScalarOps::make(f, std::move(v));
        }
    }
    throw Error("unreachable");
}

Scalar Scalar::from_rational(const FieldSpec& f, const mpq_class& value) {
    switch (f.kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(f, value);
        case FieldSpec::Kind::Prime: {
            mpz_class p(static_cast<unsigned long>(f.parameter()));
            mpz_class den = value.get_den() % p;
            if (den == 0) throw DivisionByZeroError("denominator vanishes in prime field");
            mpz_class num = value.get_num() % p;
            if (num < 0) num += p;
            std::uint64_t n = num.get_ui();
            std::uint64_t d = mpz_class(den < 0 ? den + p : den).get_ui();
            return ScalarOps::make(f, mulmod(n, invmod(d, f.parameter()), f.parameter()));
        }
        case FieldSpec::Kind::Cyclotomic: {
            QVec v = zero_vec(f.extension_degree());
            v[0] = value;
            return ScalarOps::make(f, std::move(v));
        }
    }
    throw Error("unreachable");
}

Scalar Scalar::cyclotomic_generator(const FieldSpec& f) {
    if (f.kind() != FieldSpec::Kind::Cyclotomic)
        throw Error("cyclotomic generator requested from " + f.to_string());
    QVec v = zero_vec(f.extension_degree());
    if (v.size() == 1) {
        // n in {1, 2}: the root is rational (1 or -1)
        v[0] = (f.parameter() == 1) ? 1 : -1;
    } else {
        v[1] = 1;
    }
    return ScalarOps::make(f, std::move(v));
}

bool Scalar::is_zero() const {
    switch (field_.kind()) {
        case FieldSpec::Kind::Rational: return ScalarOps::rat(*this) == 0;
        case FieldSpec::Kind::Prime: return ScalarOps::res(*this) == 0;
        case FieldSpec::Kind::Cyclotomic: return vec_is_zero(ScalarOps::cyc(*this));
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

Scalar Scalar::operator-() const {
    switch (field_.kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(field_, mpq_class(-ScalarOps::rat(*this)));
        case FieldSpec::Kind::Prime: {
            std::uint64_t r = ScalarOps::res(*this);
            return ScalarOps::make(field_, r == 0 ? 0 : field_.parameter() - r);
        }
        case FieldSpec::Kind::Cyclotomic: {
            QVec v = ScalarOps::cyc(*this);
            for (auto& c : v) c = -c;
            return ScalarOps::make(field_, std::move(v));
        }
    }
    throw Error("unreachable");
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero");
    switch (field_.kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(field_, mpq_class(1) / ScalarOps::rat(*this));
        case FieldSpec::Kind::Prime:
            return ScalarOps::make(field_, invmod(ScalarOps::res(*this), field_.parameter()));
        case FieldSpec::Kind::Cyclotomic:
            return ScalarOps::make(
                field_, vec_inverse(ScalarOps::cyc(*this), field_.cyclotomic_polynomial()));
    }
    throw Error("unreachable");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_field(a, b);
    switch (a.field().kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(a.field(), mpq_class(ScalarOps::rat(a) + ScalarOps::rat(b)));
        case FieldSpec::Kind::Prime: {
            std::uint64_t p = a.field().parameter();
            std::uint64_t s = ScalarOps::res(a) + ScalarOps::res(b); // p < 2^63, no overflow
            return ScalarOps::make(a.field(), s >= p ? s - p : s);
        }
        case FieldSpec::Kind::Cyclotomic: {
            QVec v = ScalarOps::cyc(a);
            const QVec& w = ScalarOps::cyc(b);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
            return ScalarOps::make(a.field(), std::move(v));
        }
    }
    throw Error("unreachable");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_field(a, b);
    switch (a.field().kind()) {
        case FieldSpec::Kind::Rational:
            return ScalarOps::make(a.field(), mpq_class(ScalarOps::rat(a) * ScalarOps::rat(b)));
        case FieldSpec::Kind::Prime:
            return ScalarOps::make(
                a.field(), mulmod(ScalarOps::res(a), ScalarOps::res(b), a.field().parameter()));
        case FieldSpec::Kind::Cyclotomic:
            return ScalarOps::make(a.field(),
                                   vec_mul(ScalarOps::cyc(a), ScalarOps::cyc(b),
                                           a.field().cyclotomic_polynomial()));
    }
    throw Error("unreachable");
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field())) return false;
    return a.payload_ == b.payload_;
}

Scalar Scalar::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Scalar result = one(field_);
    Scalar base = *this;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

// ---- textual syntax ----

namespace {

std::string rational_to_string(const mpq_class& q) {
    std::ostringstream os;
    os << q; // gmp prints num/den, or plain integer when den == 1
    return os.str();
}

std::string cyc_term(const mpq_class& c, std::size_t power, bool first) {
    std::ostringstream os;
    mpq_class a = c;
    if (first) {
        if (a < 0) { os << "-"; a = -a; }
    } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    bool unit_coeff = (a == 1) && power > 0;
    if (!unit_coeff) os << rational_to_string(a);
    if (power > 0) {
        if (!unit_coeff) os << "*";
        os << "z";
        if (power > 1) os << "^" << power;
    }
    return os.str();
}

mpq_class parse_rational_text(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ParseError("empty scalar", 1, 1);
    try {
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw ParseError("zero denominator", 1, 1);
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational: " + text, 1, 1);
    }
}

}  // namespace

std::string Scalar::to_string() const {
    switch (field_.kind()) {
        case FieldSpec::Kind::Rational:
            return rational_to_string(ScalarOps::rat(*this));
        case FieldSpec::Kind::Prime:
            return std::to_string(ScalarOps::res(*this)) + " mod " +
                   std::to_string(field_.parameter());
        case FieldSpec::Kind::Cyclotomic: {
            const QVec& v = ScalarOps::cyc(*this);
            std::string out;
            bool first = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                out += cyc_term(v[i], i, first);
                first = false;
            }
            return first ? "0" : out;
        }
    }
    throw Error("unreachable");
}

Scalar Scalar::parse(const FieldSpec& field, const std::string& text) {
    switch (field.kind()) {
        case FieldSpec::Kind::Rational:
            return from_rational(field, parse_rational_text(text));
        case FieldSpec::Kind::Prime: {
            std::string s = text;
            auto pos = s.find("mod");
            if (pos != std::string::npos) {
                std::string mod_part = s.substr(pos + 3);
                mpq_class m = parse_rational_text(mod_part);
                if (m != mpq_class(static_cast<long>(field.parameter())))
                    throw ParseError("modulus mismatch in " + text, 1, pos + 1);
                s = s.substr(0, pos);
            }
            return from_rational(field, parse_rational_text(s));
        }
        case FieldSpec::Kind::Cyclotomic: {
            // grammar: term (('+'|'-') term)*, term: coeff | coeff '*' zpow | zpow
            QVec acc = zero_vec(field.extension_degree());
            const ZPoly& phi = field.cyclotomic_polynomial();
            std::string s = text;
            s.erase(std::remove_if(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    s.end());
            if (s.empty()) throw ParseError("empty scalar", 1, 1);
            std::size_t i = 0;
            bool leading = true;
            while (i < s.size()) {
                int sign = 1;
                if (s[i] == '+' || s[i] == '-') {
                    if (!leading && i == 0) throw ParseError("bad sign", 1, 1);
                    sign = (s[i] == '-') ? -1 : 1;
                    ++i;
                }
                leading = false;
                std::size_t start = i;
                while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
                std::string term = s.substr(start, i - start);
                if (term.empty()) throw ParseError("empty term in " + text, 1, start + 1);
                mpq_class coeff(1);
                std::size_t power = 0;
                auto zpos = term.find('z');
                if (zpos == std::string::npos) {
                    coeff = parse_rational_text(term);
                } else {
                    std::string coeff_part = term.substr(0, zpos);
                    if (!coeff_part.empty() && coeff_part.back() == '*')
                        coeff_part.pop_back();
                    if (!coeff_part.empty()) coeff = parse_rational_text(coeff_part);
                    std::string pow_part = term.substr(zpos + 1);
                    if (pow_part.empty()) {
                        power = 1;
                    } else if (pow_part[0] == '^' && pow_part.size() > 1 &&
                               std::all_of(pow_part.begin() + 1, pow_part.end(),
                                           [](unsigned char c) { return std::isdigit(c); })) {
                        power = std::stoull(pow_part.substr(1));
                    } else {
                        throw ParseError("bad power in " + text, 1, start + 1);
                    }
                }
                QVec mono(power + 1, mpq_class(0));
                mono[power] = sign * coeff;
                mono = reduce_mod(std::move(mono), phi);
                for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += mono[j];
            }
            return ScalarOps::make(field, std::move(acc));
        }
    }
    throw Error("unreachable");
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---- root_of_unity / characteristic ----

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

Scalar root_of_unity(const FieldSpec& field, std::uint64_t order) {
    if (order == 0) throw UnsupportedOrderError("order must be positive");
    if (order == 1) return Scalar::one(field);
    switch (field.kind()) {
        case FieldSpec::Kind::Rational:
            if (order == 2) return Scalar::from_integer(field, -1);
            throw UnsupportedOrderError("the rationals only contain roots of order 1 and 2");
        case FieldSpec::Kind::Prime: {
            std::uint64_t p = field.parameter();
            if ((p - 1) % order != 0)
                throw UnsupportedOrderError("no element of order " + std::to_string(order) +
                                            " in prime field of size " + std::to_string(p));
            auto factors = prime_factors(order);
            for (std::uint64_t c = 2; c < p; ++c) {
                if (powmod(c, order, p) != 1) continue;
                bool primitive = true;
                for (std::uint64_t q : factors)
                    if (powmod(c, order / q, p) == 1) { primitive = false; break; }
                if (primitive) return ScalarOps::make(field, c);
            }
            throw UnsupportedOrderError("no primitive root found"); // unreachable for valid input
        }
        case FieldSpec::Kind::Cyclotomic: {
            std::uint64_t n = field.parameter();
            if (n % order != 0)
                throw UnsupportedOrderError("order " + std::to_string(order) +
                                            " does not divide the cyclotomic index " +
                                            std::to_string(n));
            return Scalar::cyclotomic_generator(field).pow(static_cast<long>(n / order));
        }
    }
    throw Error("unreachable");
}

std::uint64_t characteristic(const FieldSpec& field) { return field.characteristic(); }

}  // namespace twistlab
