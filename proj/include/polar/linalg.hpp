#pragma once

// Dense linear algebra over GF(q) on coordinate vectors of element codes.

#include <cstdint>
#include <span>
#include <vector>

#include "polar/gf.hpp"

namespace polar {

/// Coordinates of a vector in GF(q)^d, as element codes of the ambient field.
using Vec = std::vector<gf::Code>;
using Basis = std::vector<Vec>;

namespace linalg {

/// Reduced row echelon form, zero rows dropped, pivots equal to 1.
Basis rref(const gf::FieldContext& f, Basis rows);

std::size_t rank(const gf::FieldContext& f, const Basis& rows);

/// Basis (in RREF) of {x : <r, x> = 0 for every row r} under the standard dot product.
Basis nullspace(const gf::FieldContext& f, const Basis& rows, std::size_t dim);

Basis intersect(const gf::FieldContext& f, const Basis& a, const Basis& b, std::size_t dim);

/// True if v lies in the row space of an RREF basis.
bool in_span(const gf::FieldContext& f, const Basis& rref_basis, std::span<const gf::Code> v);

/// All q^r vectors of the span, in the order of coefficient tuples
/// (first basis vector's coefficient most significant).
std::vector<Vec> span_vectors(const gf::FieldContext& f, const Basis& basis, std::size_t dim);

/// Scales so the first nonzero coordinate is 1. The zero vector is returned unchanged.
Vec normalize(const gf::FieldContext& f, Vec v);

Vec add(const gf::FieldContext& f, std::span<const gf::Code> a, std::span<const gf::Code> b);
Vec sub(const gf::FieldContext& f, std::span<const gf::Code> a, std::span<const gf::Code> b);
Vec scale(const gf::FieldContext& f, gf::Code s, std::span<const gf::Code> a);
bool is_zero(std::span<const gf::Code> v) noexcept;

/// Lexicographic index of v in GF(q)^d, first coordinate most significant.
std::uint64_t vector_index(std::span<const gf::Code> v, gf::Code q) noexcept;
Vec vector_from_index(std::uint64_t index, gf::Code q, std::size_t dim);

}  // namespace linalg
}  // namespace polar
