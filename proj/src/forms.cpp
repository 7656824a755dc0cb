#include "polar/forms.hpp"

#include <utility>

namespace polar {

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::sp: return "sp";
        case Family::o_plus: return "o+";
        case Family::o: return "o";
        case Family::o_minus: return "o-";
        case Family::u: return "u";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    if (name == "sp") return Family::sp;
    if (name == "o+") return Family::o_plus;
    if (name == "o") return Family::o;
    if (name == "o-") return Family::o_minus;
    if (name == "u") return Family::u;
    return std::nullopt;
}

std::string_view kind_name(FormKind k) noexcept {
    switch (k) {
        case FormKind::symplectic: return "symplectic";
        case FormKind::quadratic: return "quadratic";
        case FormKind::hermitian: return "hermitian";
    }
    return "?";
}

namespace {

std::vector<Vec> zero_matrix(std::size_t dim) { return std::vector<Vec>(dim, Vec(dim, 0)); }

// Least (a, b) in element order with t^2 + a t + b irreducible.
std::pair<gf::Code, gf::Code> elliptic_tail(const gf::FieldContext& f) {
    for (gf::Code a = 0; a < f.q(); ++a) {
        for (gf::Code b = 0; b < f.q(); ++b) {
            bool has_root = false;
            for (gf::Code t = 0; t < f.q() && !has_root; ++t) {
                has_root = f.add(f.add(f.mul(t, t), f.mul(a, t)), b) == 0;
            }
            if (!has_root) return {a, b};
        }
    }
    throw Error(Errc::BadInput, "no irreducible quadratic found");
}

}  // namespace

Form Form::standard(Family family, std::size_t dim, gf::Field field) {
    const auto& f = *field;
    auto c = zero_matrix(dim);
    switch (family) {
        case Family::sp: {
            if (dim < 2 || dim % 2 != 0) throw Error(Errc::BadDimensionParity, "Sp needs even dimension >= 2");
            for (std::size_t i = 0; i + 1 < dim; i += 2) {
                c[i][i + 1] = 1;
                c[i + 1][i] = f.neg(1);
            }
            return Form(std::move(field), family, FormKind::symplectic, dim, 0, std::move(c));
        }
        case Family::o_plus: {
            if (dim < 2 || dim % 2 != 0) throw Error(Errc::BadDimensionParity, "O+ needs even dimension >= 2");
            for (std::size_t i = 0; i + 1 < dim; i += 2) c[i][i + 1] = 1;
            return Form(std::move(field), family, FormKind::quadratic, dim, 1, std::move(c));
        }
        case Family::o: {
            if (dim < 3 || dim % 2 != 1) throw Error(Errc::BadDimensionParity, "O needs odd dimension >= 3");
            if (f.p() == 2) {
                throw Error(Errc::ParabolicEvenCharacteristic,
                            "O(2n+1,q) with q even has the collinearity graph of Sp(2n,q); use --family sp");
            }
            c[0][0] = 1;
            for (std::size_t i = 1; i + 1 < dim; i += 2) c[i][i + 1] = 1;
            return Form(std::move(field), family, FormKind::quadratic, dim, 0, std::move(c));
        }
        case Family::o_minus: {
            if (dim < 2 || dim % 2 != 0) throw Error(Errc::BadDimensionParity, "O- needs even dimension >= 2");
            for (std::size_t i = 0; i + 3 < dim; i += 2) c[i][i + 1] = 1;
            const auto [a, b] = elliptic_tail(f);
            c[dim - 2][dim - 2] = 1;
            c[dim - 2][dim - 1] = a;
            c[dim - 1][dim - 1] = b;
            return Form(std::move(field), family, FormKind::quadratic, dim, -1, std::move(c));
        }
        case Family::u: {
            if (!f.is_square()) throw Error(Errc::OddExtensionDegree, "Hermitian forms need q square");
            if (dim < 2) throw Error(Errc::BadDimensionParity, "U needs dimension >= 2");
            for (std::size_t i = 0; i < dim; ++i) c[i][i] = 1;
            return Form(std::move(field), family, FormKind::hermitian, dim, 0, std::move(c));
        }
    }
    throw Error(Errc::BadInput, "unknown family");
}

Form::Form(gf::Field field, Family family, FormKind kind, std::size_t dim, int epsilon,
           std::vector<Vec> coefficients)
    : field_(std::move(field)), family_(family), kind_(kind), dim_(dim), epsilon_(epsilon),
      coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != dim_) throw Error(Errc::DimMismatch, "coefficient matrix has wrong size");
    for (const auto& row : coeffs_) {
        if (row.size() != dim_) throw Error(Errc::DimMismatch, "coefficient matrix has wrong size");
    }
    const auto& f = *field_;
    if (kind_ == FormKind::hermitian && !f.is_square()) {
        throw Error(Errc::OddExtensionDegree, "Hermitian forms need q square");
    }
    if (kind_ == FormKind::quadratic) {
        gram_ = zero_matrix(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (coeffs_[i][i] != 0) gram_[i][i] = f.add(coeffs_[i][i], coeffs_[i][i]);
            for (std::size_t j = i + 1; j < dim_; ++j) {
                gram_[i][j] = coeffs_[i][j];
                gram_[j][i] = coeffs_[i][j];
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (coeffs_[i][j] != 0) throw Error(Errc::BadInput, "quadratic coefficients must be upper triangular");
            }
        }
    } else {
        gram_ = coeffs_;
    }
    validate();
}

void Form::validate() const {
    const auto& f = *field_;
    if (kind_ == FormKind::symplectic) {
        for (std::size_t i = 0; i < dim_; ++i) {
            if (gram_[i][i] != 0) throw Error(Errc::Degenerate, "symplectic Gram matrix must be alternating");
            for (std::size_t j = 0; j < dim_; ++j) {
                if (gram_[i][j] != f.neg(gram_[j][i])) {
                    throw Error(Errc::Degenerate, "symplectic Gram matrix must be antisymmetric");
                }
            }
        }
    }
    if (kind_ == FormKind::hermitian) {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                if (gram_[i][j] != f.frobenius_sqrt(gram_[j][i])) {
                    throw Error(Errc::Degenerate, "Hermitian Gram matrix must be conjugate symmetric");
                }
            }
        }
    }
    if (kind_ != FormKind::quadratic) {
        if (linalg::rank(f, gram_) != dim_) throw Error(Errc::Degenerate, "Gram matrix is singular");
        return;
    }
    // Quadric radical: vectors of rad(B) on which Q also vanishes.
    const Basis rad = linalg::nullspace(f, gram_, dim_);
    for (const auto& v : linalg::span_vectors(f, rad, dim_)) {
        if (!linalg::is_zero(v) && q_code(v) == 0) throw Error(Errc::Degenerate, "quadric radical is nontrivial");
    }
}

void Form::check_dim(std::span<const gf::Code> v) const {
    if (v.size() != dim_) {
        throw Error(Errc::DimMismatch, "vector has dimension " + std::to_string(v.size()) + ", form has " +
                                           std::to_string(dim_));
    }
}

gf::Code Form::q_code(std::span<const gf::Code> v) const noexcept {
    const auto& f = *field_;
    gf::Code acc = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (v[i] == 0) continue;
        gf::Code row = 0;
        for (std::size_t j = i; j < dim_; ++j) {
            if (coeffs_[i][j] != 0 && v[j] != 0) row = f.add(row, f.mul(coeffs_[i][j], v[j]));
        }
        acc = f.add(acc, f.mul(v[i], row));
    }
    return acc;
}

gf::Code Form::orth_code(std::span<const gf::Code> u, std::span<const gf::Code> w) const noexcept {
    const auto& f = *field_;
    gf::Code acc = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (w[j] == 0) continue;
        const gf::Code wj = kind_ == FormKind::hermitian ? f.frobenius_sqrt(w[j]) : w[j];
        gf::Code col = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (u[i] != 0 && gram_[i][j] != 0) col = f.add(col, f.mul(u[i], gram_[i][j]));
        }
        acc = f.add(acc, f.mul(col, wj));
    }
    return acc;
}

gf::FieldElement Form::eval_q(std::span<const gf::Code> v) const {
    if (kind_ != FormKind::quadratic) throw Error(Errc::KindMismatch, "eval_Q needs a quadratic form");
    check_dim(v);
    return {q_code(v), field_.get()};
}

gf::FieldElement Form::polarise(std::span<const gf::Code> u, std::span<const gf::Code> w) const {
    if (kind_ != FormKind::quadratic) throw Error(Errc::KindMismatch, "polarise needs a quadratic form");
    check_dim(u);
    check_dim(w);
    return {orth_code(u, w), field_.get()};
}

gf::FieldElement Form::eval_pairing(std::span<const gf::Code> u, std::span<const gf::Code> w) const {
    if (kind_ == FormKind::quadratic) throw Error(Errc::KindMismatch, "pairing needs a symplectic or Hermitian form");
    check_dim(u);
    check_dim(w);
    return {orth_code(u, w), field_.get()};
}

bool Form::is_singular(std::span<const gf::Code> v) const noexcept {
    switch (kind_) {
        case FormKind::symplectic: return true;
        case FormKind::quadratic: return q_code(v) == 0;
        case FormKind::hermitian: return orth_code(v, v) == 0;
    }
    return false;
}

Basis Form::perp(const std::vector<Vec>& s) const {
    Basis rows;
    rows.reserve(s.size());
    for (const auto& vec : s) {
        check_dim(vec);
        // row . u = B(u, vec)
        Vec row(dim_, 0);
        Vec e(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            e[i] = 1;
            row[i] = orth_code(e, vec);
            e[i] = 0;
        }
        rows.push_back(std::move(row));
    }
    return linalg::nullspace(*field_, rows, dim_);
}

}  // namespace polar
