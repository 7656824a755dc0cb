#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polar/gf.hpp"
#include "polar/linalg.hpp"

namespace polar {

enum class Family { sp, o_plus, o, o_minus, u };
enum class FormKind { symplectic, quadratic, hermitian };

std::string_view family_name(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
std::string_view kind_name(FormKind k) noexcept;

/// A nondegenerate symplectic, quadratic or Hermitian form on GF(q)^dim.
///
/// Quadratic forms keep an upper-triangular coefficient matrix c with
/// Q(x) = sum_{i<=j} c_ij x_i x_j, which works the same way in every
/// characteristic. Symplectic and Hermitian forms keep a Gram matrix G with
/// B(u, w) = sum u_i G_ij w_j (conjugating w_j by x -> x^sqrt(q) for Hermitian).
class Form {
public:
    /// Canonical representative of a family. Throws BadDimensionParity,
    /// ParabolicEvenCharacteristic or OddExtensionDegree.
    static Form standard(Family family, std::size_t dim, gf::Field field);

    /// Validated construction from raw coefficients; throws Degenerate.
    Form(gf::Field field, Family family, FormKind kind, std::size_t dim, int epsilon,
         std::vector<Vec> coefficients);

    const gf::Field& field() const noexcept { return field_; }
    const gf::FieldContext& ctx() const noexcept { return *field_; }
    Family family() const noexcept { return family_; }
    FormKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    /// +1 hyperbolic, -1 elliptic, 0 parabolic or not quadratic.
    int epsilon() const noexcept { return epsilon_; }
    const std::vector<Vec>& coefficients() const noexcept { return coeffs_; }

    gf::FieldElement eval_q(std::span<const gf::Code> v) const;
    /// Q(u+w) - Q(u) - Q(w).
    gf::FieldElement polarise(std::span<const gf::Code> u, std::span<const gf::Code> w) const;
    /// Gram pairing for symplectic and Hermitian forms.
    gf::FieldElement eval_pairing(std::span<const gf::Code> u, std::span<const gf::Code> w) const;

    /// Polarisation for quadratic forms, the pairing otherwise.
    gf::Code orth_code(std::span<const gf::Code> u, std::span<const gf::Code> w) const noexcept;
    gf::Code q_code(std::span<const gf::Code> v) const noexcept;

    /// Q(v) = 0 for quadratic forms, B(v, v) = 0 otherwise.
    bool is_singular(std::span<const gf::Code> v) const noexcept;

    /// RREF basis of {u : B(u, s) = 0 for all s in S}.
    Basis perp(const std::vector<Vec>& s) const;

private:
    void check_dim(std::span<const gf::Code> v) const;
    void validate() const;

    gf::Field field_;
    Family family_;
    FormKind kind_;
    std::size_t dim_;
    int epsilon_;
    std::vector<Vec> coeffs_;
    // Gram matrix of the orthogonality form (c + c^T for quadratic kinds).
    std::vector<Vec> gram_;
};

}  // namespace polar
