#include <cmath>
#include <vector>

#include "polar/graph.hpp"

namespace polar {

namespace {

std::int64_t isqrt(std::int64_t x) {
    if (x < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// det(A - theta I) mod p, Gaussian elimination.
u64 det_mod(const PolarGraph& g, std::int64_t theta, u64 p) {
    const std::size_t n = g.order();
    std::vector<u64> a(n * n);
    const u64 diag = static_cast<u64>(((-theta) % static_cast<std::int64_t>(p) + static_cast<std::int64_t>(p)) %
                                      static_cast<std::int64_t>(p));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = i == j ? diag : (g.adjacent(i, j) ? 1 : 0);
    }
    u64 det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * n + col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            det = (p - det) % p;
        }
        const u64 pv = a[col * n + col];
        det = mulmod(det, pv, p);
        const u64 inv = powmod(pv, p - 2, p);
        for (std::size_t r = col + 1; r < n; ++r) {
            const u64 x = a[r * n + col];
            if (x == 0) continue;
            const u64 factor = mulmod(x, inv, p);
            for (std::size_t j = col; j < n; ++j) {
                const u64 sub = mulmod(factor, a[col * n + j], p);
                a[r * n + j] = a[r * n + j] >= sub ? a[r * n + j] - sub : a[r * n + j] + p - sub;
            }
        }
    }
    return det;
}

}  // namespace

SpectrumInfo spectrum(const SrgParams& params) {
    const std::int64_t d = params.lambda - params.mu;
    const std::int64_t disc = d * d + 4 * (params.k - params.mu);
    const std::int64_t s = isqrt(disc);
    if (s <= 0 || s * s != disc || (d + s) % 2 != 0) {
        throw Error(Errc::IrrationalEigenvalues, "discriminant " + std::to_string(disc) + " gives non-integral roots");
    }
    SpectrumInfo out;
    out.theta1 = (d + s) / 2;
    out.theta2 = (d - s) / 2;
    if (!(params.k > out.theta1 && out.theta1 > 0 && out.theta2 < 0)) {
        throw Error(Errc::Imprimitive, "eigenvalues do not satisfy k > theta1 > 0 > theta2");
    }
    const std::int64_t num = 2 * params.k + (params.v - 1) * d;
    if (num % s != 0) throw Error(Errc::IrrationalEigenvalues, "non-integral multiplicities");
    out.mult1 = ((params.v - 1) - num / s) / 2;
    out.mult2 = ((params.v - 1) + num / s) / 2;
    return out;
}

std::optional<ClosedFormEigenvalues> closed_form_eigenvalues(const Provenance& prov) {
    const auto q = static_cast<std::int64_t>(prov.q);
    switch (prov.kind) {
        case GraphKind::collinearity:
        case GraphKind::unitary: {
            if (prov.rank < 2) return std::nullopt;
            ClosedFormEigenvalues c;
            c.theta1 = ipow(q, prov.rank - 1) - 1;
            c.theta2 = -static_cast<std::int64_t>(prov.t) * ipow(q, prov.rank - 2) - 1;
            c.labelled_theta1 = c.theta1;
            c.labelled_theta2 = c.theta2;
            return c;
        }
        case GraphKind::affine: {
            const std::int64_t eps = prov.epsilon;
            ClosedFormEigenvalues c;
            c.labelled_theta1 = eps * (q - 1) * ipow(q, prov.m - 1) - 1;
            c.labelled_theta2 = -eps * ipow(q, prov.m - 1) - 1;
            c.theta1 = std::max(c.labelled_theta1, c.labelled_theta2);
            c.theta2 = std::min(c.labelled_theta1, c.labelled_theta2);
            return c;
        }
        case GraphKind::generic: return std::nullopt;
    }
    return std::nullopt;
}

bool is_eigenvalue_exact(const PolarGraph& g, std::int64_t theta) {
    // |det| <= prod_i ||row_i||; row i has deg(i) ones and theta on the diagonal.
    long double log2_bound = 0;
    for (std::size_t i = 0; i < g.order(); ++i) {
        const auto norm2 = static_cast<long double>(g.degree(i)) + static_cast<long double>(theta) * theta;
        log2_bound += 0.5L * std::log2(norm2);
    }
    const long double needed = log2_bound + 4;  // > 2H, with slack for rounding
    long double covered = 0;
    u64 candidate = (u64{1} << 62) - 1;
    while (covered < needed) {
        while (!miller_rabin(candidate)) candidate -= 2;
        if (det_mod(g, theta, candidate) != 0) return false;
        covered += std::log2(static_cast<long double>(candidate));
        candidate -= 2;
    }
    return true;
}

}  // namespace polar
