#include "polar/linalg.hpp"

#include <algorithm>

namespace polar::linalg {

Basis rref(const gf::FieldContext& f, Basis rows) {
    if (rows.empty()) return rows;
    const std::size_t dim = rows.front().size();
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < dim && lead_row < rows.size(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[lead_row], rows[pivot]);
        const gf::Code inv = f.inv(rows[lead_row][col]);
        for (auto& x : rows[lead_row]) x = f.mul(x, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead_row || rows[r][col] == 0) continue;
            const gf::Code factor = rows[r][col];
            for (std::size_t c = col; c < dim; ++c) {
                rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[lead_row][c]));
            }
        }
        ++lead_row;
    }
    rows.resize(lead_row);
    return rows;
}

std::size_t rank(const gf::FieldContext& f, const Basis& rows) { return rref(f, rows).size(); }

Basis nullspace(const gf::FieldContext& f, const Basis& rows, std::size_t dim) {
    const Basis r = rref(f, rows);
    std::vector<int> pivot_of_col(dim, -1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto it = std::find_if(r[i].begin(), r[i].end(), [](gf::Code c) { return c != 0; });
        pivot_of_col[static_cast<std::size_t>(it - r[i].begin())] = static_cast<int>(i);
    }
    Basis out;
    for (std::size_t free = 0; free < dim; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        Vec v(dim, 0);
        v[free] = 1;
        for (std::size_t col = 0; col < dim; ++col) {
            const int row = pivot_of_col[col];
            if (row >= 0) v[col] = f.neg(r[static_cast<std::size_t>(row)][free]);
        }
        out.push_back(std::move(v));
    }
    return rref(f, std::move(out));
}

Basis intersect(const gf::FieldContext& f, const Basis& a, const Basis& b, std::size_t dim) {
    Basis ann = nullspace(f, a, dim);
    const Basis ann_b = nullspace(f, b, dim);
    ann.insert(ann.end(), ann_b.begin(), ann_b.end());
    return nullspace(f, ann, dim);
}

bool in_span(const gf::FieldContext& f, const Basis& rref_basis, std::span<const gf::Code> v) {
    Vec rest(v.begin(), v.end());
    for (const auto& row : rref_basis) {
        const auto it = std::find_if(row.begin(), row.end(), [](gf::Code c) { return c != 0; });
        const auto col = static_cast<std::size_t>(it - row.begin());
        const gf::Code factor = rest[col];
        if (factor == 0) continue;
        for (std::size_t c = col; c < rest.size(); ++c) rest[c] = f.sub(rest[c], f.mul(factor, row[c]));
    }
    return is_zero(rest);
}

std::vector<Vec> span_vectors(const gf::FieldContext& f, const Basis& basis, std::size_t dim) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= f.q();
    std::vector<Vec> out;
    out.reserve(total);
    for (std::uint64_t t = 0; t < total; ++t) {
        const Vec coeffs = vector_from_index(t, f.q(), basis.size());
        Vec v(dim, 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (coeffs[i] == 0) continue;
            for (std::size_t c = 0; c < dim; ++c) v[c] = f.add(v[c], f.mul(coeffs[i], basis[i][c]));
        }
        out.push_back(std::move(v));
    }
    return out;
}

Vec normalize(const gf::FieldContext& f, Vec v) {
    const auto it = std::find_if(v.begin(), v.end(), [](gf::Code c) { return c != 0; });
    if (it == v.end() || *it == 1) return v;
    const gf::Code inv = f.inv(*it);
    for (auto& x : v) x = f.mul(x, inv);
    return v;
}

Vec add(const gf::FieldContext& f, std::span<const gf::Code> a, std::span<const gf::Code> b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec sub(const gf::FieldContext& f, std::span<const gf::Code> a, std::span<const gf::Code> b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec scale(const gf::FieldContext& f, gf::Code s, std::span<const gf::Code> a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
    return out;
}

bool is_zero(std::span<const gf::Code> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](gf::Code c) { return c == 0; });
}

std::uint64_t vector_index(std::span<const gf::Code> v, gf::Code q) noexcept {
    std::uint64_t idx = 0;
    for (auto c : v) idx = idx * q + c;
    return idx;
}

Vec vector_from_index(std::uint64_t index, gf::Code q, std::size_t dim) {
    Vec v(dim);
    for (std::size_t i = dim; i-- > 0;) {
        v[i] = static_cast<gf::Code>(index % q);
        index /= q;
    }
    return v;
}

}  // namespace polar::linalg
