#include "polar/gf.hpp"

#include <algorithm>
#include <sstream>

namespace polar {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case Errc::DegreeZero: return "DegreeZero";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ContextMismatch: return "ContextMismatch";
        case Errc::OddExtensionDegree: return "OddExtensionDegree";
        case Errc::EvenCharacteristic: return "EvenCharacteristic";
        case Errc::BadDimensionParity: return "BadDimensionParity";
        case Errc::ParabolicEvenCharacteristic: return "ParabolicEvenCharacteristic";
        case Errc::KindMismatch: return "KindMismatch";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::Degenerate: return "Degenerate";
        case Errc::DimensionOutOfRange: return "DimensionOutOfRange";
        case Errc::OrderNotWellDefined: return "OrderNotWellDefined";
        case Errc::NotSingular: return "NotSingular";
        case Errc::WrongDimension: return "WrongDimension";
        case Errc::NotPairwiseCollinear: return "NotPairwiseCollinear";
        case Errc::RankTooLow: return "RankTooLow";
        case Errc::NotRegular: return "NotRegular";
        case Errc::NotStronglyRegular: return "NotStronglyRegular";
        case Errc::Imprimitive: return "Imprimitive";
        case Errc::IrrationalEigenvalues: return "IrrationalEigenvalues";
        case Errc::FewerThanTwoCliques: return "FewerThanTwoCliques";
        case Errc::NotAnEigenfunction: return "NotAnEigenfunction";
        case Errc::ZeroFunction: return "ZeroFunction";
        case Errc::NotNonPrincipal: return "NotNonPrincipal";
        case Errc::NotInSigmaL: return "NotInSigmaL";
        case Errc::NotDelsarte: return "NotDelsarte";
        case Errc::NotMaxIntersection: return "NotMaxIntersection";
        case Errc::TNotInPerp: return "TNotInPerp";
        case Errc::TInAffM: return "TInAffM";
        case Errc::WitnessNotFound: return "WitnessNotFound";
        case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

}  // namespace polar

namespace polar::gf {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Remainder of a by monic b over GF(p); both little-endian.
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
    const std::size_t db = b.size() - 1;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (a.size() > db) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(const std::vector<unsigned>& monic, unsigned p) {
    const std::size_t deg = monic.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::vector<unsigned> divisor(d + 1);
            std::uint64_t rest = c;
            for (std::size_t i = 0; i < d; ++i) {
                divisor[i] = static_cast<unsigned>(rest % p);
                rest /= p;
            }
            divisor[d] = 1;
            if (poly_rem(monic, divisor, p).empty()) return false;
        }
    }
    return true;
}

Field field_new(unsigned p, unsigned k, std::uint64_t cap) {
    if (!is_prime(p)) {
        throw Error(Errc::NonPrimeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
    }
    if (k == 0) throw Error(Errc::DegreeZero, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > cap) {
            throw Error(Errc::CapExceeded, "field order exceeds cap " + std::to_string(cap));
        }
    }

    std::shared_ptr<FieldContext> ctx(new FieldContext());
    ctx->p_ = p;
    ctx->k_ = k;
    ctx->q_ = static_cast<Code>(q);
    if (k % 2 == 0) {
        Code s = 1;
        for (unsigned i = 0; i < k / 2; ++i) s *= p;
        ctx->sqrt_q_ = s;
    }

    // Least monic irreducible: scan the lower coefficients in code order.
    for (std::uint64_t c = 0; c < q; ++c) {
        std::vector<unsigned> m(k + 1);
        std::uint64_t rest = c;
        for (unsigned i = 0; i < k; ++i) {
            m[i] = static_cast<unsigned>(rest % p);
            rest /= p;
        }
        m[k] = 1;
        if (is_irreducible(m, p)) {
            ctx->modulus_ = std::move(m);
            break;
        }
    }

    const auto qq = ctx->q_;
    if (qq <= 256) {
        ctx->add_table_.resize(std::size_t{qq} * qq);
        ctx->mul_table_.resize(std::size_t{qq} * qq);
        for (Code a = 0; a < qq; ++a) {
            for (Code b = 0; b < qq; ++b) {
                ctx->add_table_[std::size_t{a} * qq + b] = ctx->add_slow(a, b);
                ctx->mul_table_[std::size_t{a} * qq + b] = ctx->mul_slow(a, b);
            }
        }
    }
    if (qq <= (1u << 16)) {
        ctx->neg_table_.resize(qq);
        ctx->inv_table_.resize(qq);
        for (Code a = 0; a < qq; ++a) {
            ctx->neg_table_[a] = ctx->neg_slow(a);
            ctx->inv_table_[a] = a == 0 ? 0 : ctx->inv_slow(a);
        }
        if (ctx->is_square()) {
            ctx->frob_table_.resize(qq);
            for (Code a = 0; a < qq; ++a) ctx->frob_table_[a] = ctx->pow(a, ctx->sqrt_q_);
        }
    }

    ctx->group_order_prime_factors_ = prime_factors(q - 1);
    for (Code a = 1; a < qq; ++a) {
        if (ctx->multiplicative_order(a) == q - 1) {
            ctx->primitive_ = a;
            break;
        }
    }
    return ctx;
}

Field field_from_order(std::uint64_t q, std::uint64_t cap) {
    if (q < 2) throw Error(Errc::NonPrimeCharacteristic, "field order must be a prime power");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) {
        throw Error(Errc::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
    }
    return field_new(static_cast<unsigned>(p), k, cap);
}

std::vector<unsigned> FieldContext::coeffs(Code a) const {
    std::vector<unsigned> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Code FieldContext::from_coeffs(const std::vector<unsigned>& c) const {
    if (c.size() != k_) throw Error(Errc::DimMismatch, "coefficient vector must have length k");
    Code out = 0;
    for (unsigned i = k_; i-- > 0;) out = out * p_ + (c[i] % p_);
    return out;
}

Code FieldContext::add_slow(Code a, Code b) const noexcept {
    Code out = 0;
    Code place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

Code FieldContext::neg_slow(Code a) const noexcept {
    Code out = 0;
    Code place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += ((p_ - a % p_) % p_) * place;
        a /= p_;
        place *= p_;
    }
    return out;
}

Code FieldContext::mul_slow(Code a, Code b) const noexcept {
    const auto ca = coeffs(a);
    const auto cb = coeffs(b);
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (ca[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
    }
    for (std::size_t i = prod.size(); i-- > k_;) {
        const std::uint64_t lead = prod[i];
        if (lead == 0) continue;
        for (unsigned j = 0; j <= k_; ++j) {
            auto& slot = prod[i - k_ + j];
            slot = (slot + (p_ - lead) * modulus_[j]) % p_;
        }
    }
    Code out = 0;
    for (unsigned i = k_; i-- > 0;) out = out * p_ + static_cast<Code>(prod[i]);
    return out;
}

Code FieldContext::inv_slow(Code a) const noexcept { return pow(a, q_ - 2); }

Code FieldContext::inv(Code a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "zero has no inverse");
    return inv_table_.empty() ? inv_slow(a) : inv_table_[a];
}

Code FieldContext::pow(Code a, std::uint64_t e) const noexcept {
    Code result = 1;
    Code base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Code FieldContext::frobenius_sqrt(Code a) const {
    if (!is_square()) throw Error(Errc::OddExtensionDegree, "x -> x^sqrt(q) needs an even extension degree");
    return frob_table_.empty() ? pow(a, sqrt_q_) : frob_table_[a];
}

Code FieldContext::norm(Code a) const { return mul(a, frobenius_sqrt(a)); }

std::uint64_t FieldContext::multiplicative_order(Code a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "zero has no multiplicative order");
    std::uint64_t order = q_ - 1;
    for (auto r : group_order_prime_factors_) {
        while (order % r == 0 && pow(a, order / r) == 1) order /= r;
    }
    return order;
}

FieldElement FieldContext::element(Code c) const {
    if (c >= q_) throw Error(Errc::BadInput, "element code out of range");
    return {c, this};
}
FieldElement FieldContext::zero() const { return {0, this}; }
FieldElement FieldContext::one() const { return {1, this}; }

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    if (e.context() == nullptr) return os << "<null>";
    const auto c = e.coeffs();
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os << ']';
}

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
        case ArithOp::pow: return a.pow(b.code());
    }
    return a;
}

FieldElement frobenius_sqrt(const FieldElement& x) { return x.frobenius_sqrt(); }

NormOneSubgroup norm_one_subgroup(const Field& ctx) {
    if (!ctx->is_square()) throw Error(Errc::OddExtensionDegree, "norm-one subgroup needs q square");
    NormOneSubgroup out;
    for (Code a = 1; a < ctx->q(); ++a) {
        if (ctx->norm(a) == 1) out.elements.push_back(ctx->element(a));
    }
    return out;
}

FieldElement epsilon_unit(const Field& ctx) { return epsilon_unit(ctx, ctx->primitive()); }

FieldElement epsilon_unit(const Field& ctx, Code primitive) {
    if (ctx->p() == 2) throw Error(Errc::EvenCharacteristic, "epsilon is defined for odd q only");
    if (!ctx->is_square()) throw Error(Errc::OddExtensionDegree, "epsilon needs q square");
    const Code eps = ctx->pow(primitive, (ctx->sqrt_q() - 1) / 2);
    const Code minus_one = ctx->neg(1);
    if (ctx->norm(eps) != minus_one || ctx->frobenius_sqrt(eps) != ctx->mul(minus_one, ctx->inv(eps))) {
        std::ostringstream msg;
        msg << "epsilon postcondition failed for primitive code " << primitive;
        throw Error(Errc::BadInput, msg.str());
    }
    return ctx->element(eps);
}

}  // namespace polar::gf
