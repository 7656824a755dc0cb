#pragma once

// Exact arithmetic in GF(p^k).
//
// Elements are stored as a single integer code: the coefficient vector
// (c_0, ..., c_{k-1}) of the polynomial representative, read as the base-p
// number c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Ordering elements by code is the
// lexicographic order on (c_{k-1}, ..., c_0), which is the canonical element
// order used by every enumeration in the library.

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include "polar/error.hpp"

namespace polar::gf {

using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 20;

class FieldElement;

class FieldContext {
public:
    unsigned p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    Code q() const noexcept { return q_; }
    bool is_square() const noexcept { return k_ % 2 == 0; }
    /// sqrt(q); only meaningful when is_square().
    Code sqrt_q() const noexcept { return sqrt_q_; }

    /// Monic modulus, little-endian coefficients, length k+1.
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    std::vector<unsigned> coeffs(Code a) const;
    Code from_coeffs(const std::vector<unsigned>& c) const;

    Code add(Code a, Code b) const noexcept {
        return add_table_.empty() ? add_slow(a, b) : add_table_[std::size_t{a} * q_ + b];
    }
    Code neg(Code a) const noexcept { return neg_table_.empty() ? neg_slow(a) : neg_table_[a]; }
    Code sub(Code a, Code b) const noexcept { return add(a, neg(b)); }
    Code mul(Code a, Code b) const noexcept {
        return mul_table_.empty() ? mul_slow(a, b) : mul_table_[std::size_t{a} * q_ + b];
    }
    /// Throws DivisionByZero for a == 0.
    Code inv(Code a) const;
    Code div(Code a, Code b) const { return mul(a, inv(b)); }
    Code pow(Code a, std::uint64_t e) const noexcept;
    /// x -> x^sqrt(q). Throws OddExtensionDegree unless k is even.
    Code frobenius_sqrt(Code a) const;
    /// x -> x^(sqrt(q)+1), the norm to GF(sqrt q). Requires k even.
    Code norm(Code a) const;

    /// Least element (in code order) generating the multiplicative group.
    Code primitive() const noexcept { return primitive_; }
    std::uint64_t multiplicative_order(Code a) const;

    FieldElement element(Code c) const;
    FieldElement zero() const;
    FieldElement one() const;

    friend std::shared_ptr<const FieldContext> field_new(unsigned p, unsigned k, std::uint64_t cap);

private:
    FieldContext() = default;

    Code add_slow(Code a, Code b) const noexcept;
    Code neg_slow(Code a) const noexcept;
    Code mul_slow(Code a, Code b) const noexcept;
    Code inv_slow(Code a) const noexcept;

    unsigned p_ = 0;
    unsigned k_ = 0;
    Code q_ = 0;
    Code sqrt_q_ = 0;
    Code primitive_ = 0;
    std::vector<unsigned> modulus_;
    std::vector<std::uint64_t> group_order_prime_factors_;

    std::vector<Code> add_table_;
    std::vector<Code> mul_table_;
    std::vector<Code> neg_table_;
    std::vector<Code> inv_table_;
    std::vector<Code> frob_table_;
};

using Field = std::shared_ptr<const FieldContext>;

/// Builds GF(p^k) with the least irreducible monic modulus of degree k.
/// Throws NonPrimeCharacteristic, DegreeZero or CapExceeded.
Field field_new(unsigned p, unsigned k, std::uint64_t cap = kDefaultFieldCap);

/// Factors a prime power; throws NonPrimeCharacteristic if q is not one.
Field field_from_order(std::uint64_t q, std::uint64_t cap = kDefaultFieldCap);

bool is_prime(std::uint64_t n) noexcept;

/// Trial division by every monic polynomial of degree 1..deg/2 over GF(p).
bool is_irreducible(const std::vector<unsigned>& monic, unsigned p);

/// Value type pairing a code with its (non-owning) field context. The context
/// must outlive the element.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Code code, const FieldContext* ctx) noexcept : code_(code), ctx_(ctx) {}

    Code code() const noexcept { return code_; }
    const FieldContext* context() const noexcept { return ctx_; }
    std::vector<unsigned> coeffs() const { return ctx_->coeffs(code_); }
    bool is_zero() const noexcept { return code_ == 0; }

    FieldElement operator+(const FieldElement& o) const { return {ctx(o).add(code_, o.code_), ctx_}; }
    FieldElement operator-(const FieldElement& o) const { return {ctx(o).sub(code_, o.code_), ctx_}; }
    FieldElement operator*(const FieldElement& o) const { return {ctx(o).mul(code_, o.code_), ctx_}; }
    FieldElement operator/(const FieldElement& o) const { return {ctx(o).div(code_, o.code_), ctx_}; }
    FieldElement operator-() const { return {ctx_->neg(code_), ctx_}; }
    FieldElement pow(std::uint64_t e) const { return {ctx_->pow(code_, e), ctx_}; }
    FieldElement inverse() const { return {ctx_->inv(code_), ctx_}; }
    FieldElement frobenius_sqrt() const { return {ctx_->frobenius_sqrt(code_), ctx_}; }

    bool operator==(const FieldElement& o) const noexcept { return ctx_ == o.ctx_ && code_ == o.code_; }
    std::strong_ordering operator<=>(const FieldElement& o) const noexcept { return code_ <=> o.code_; }

private:
    const FieldContext& ctx(const FieldElement& o) const {
        if (ctx_ != o.ctx_ || ctx_ == nullptr) {
            throw Error(Errc::ContextMismatch, "operands belong to different fields");
        }
        return *ctx_;
    }

    Code code_ = 0;
    const FieldContext* ctx_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

enum class ArithOp { add, sub, mul, div, pow };

/// Dispatching form of the element operations; for pow the exponent is b's code.
FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

FieldElement frobenius_sqrt(const FieldElement& x);

struct NormOneSubgroup {
    std::vector<FieldElement> elements;  // sorted by code
};

/// {d : d^(sqrt q + 1) = 1}. Throws OddExtensionDegree.
NormOneSubgroup norm_one_subgroup(const Field& ctx);

/// beta^((sqrt q - 1)/2) for the canonical primitive beta; satisfies
/// eps^(sqrt q + 1) = -1. Throws EvenCharacteristic or OddExtensionDegree.
FieldElement epsilon_unit(const Field& ctx);

/// Same, for an arbitrary primitive element.
FieldElement epsilon_unit(const Field& ctx, Code primitive);

}  // namespace polar::gf
