#include "support.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace testsupport {

std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
    // m is monic.
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const unsigned lead = a.back() % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
        a.pop_back();
    }
    while (!a.empty() && a.back() % p == 0) a.pop_back();
    return a;
}

namespace {

std::vector<std::vector<unsigned>> monic_of_degree(unsigned p, unsigned d) {
    std::vector<std::vector<unsigned>> out;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<unsigned> poly(d + 1, 0);
        std::uint64_t x = idx;
        for (unsigned i = 0; i < d; ++i) {
            poly[i] = static_cast<unsigned>(x % p);
            x /= p;
        }
        poly[d] = 1;
        out.push_back(poly);
    }
    return out;
}

}  // namespace

bool naive_irreducible(const std::vector<unsigned>& monic, unsigned p) {
    const unsigned k = static_cast<unsigned>(monic.size() - 1);
    for (unsigned d = 1; d <= k / 2; ++d) {
        for (const auto& div : monic_of_degree(p, d)) {
            if (poly_mod(monic, div, p).empty()) return false;
        }
    }
    return true;
}

std::vector<unsigned> naive_least_irreducible(unsigned p, unsigned k) {
    // Lexicographic on (c_{k-1}, ..., c_0): enumerate with the highest free
    // coefficient most significant.
    std::vector<std::vector<unsigned>> all = monic_of_degree(p, k);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    for (const auto& poly : all) {
        if (naive_irreducible(poly, p)) return poly;
    }
    throw std::logic_error("no irreducible polynomial");
}

namespace {

long md(long a, long p) { return ((a % p) + p) % p; }

std::vector<std::vector<long>> all_vectors(std::size_t dim, long p) {
    std::vector<std::vector<long>> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= static_cast<std::uint64_t>(p);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<long> v(dim);
        std::uint64_t x = idx;
        for (std::size_t i = dim; i-- > 0;) {
            v[i] = static_cast<long>(x % static_cast<std::uint64_t>(p));
            x /= static_cast<std::uint64_t>(p);
        }
        out.push_back(v);
    }
    return out;
}

bool leading_one(const std::vector<long>& v) {
    for (long x : v) {
        if (x != 0) return x == 1;
    }
    return false;
}

std::pair<long, long> tail(long p) {
    for (long a = 0; a < p; ++a) {
        for (long b = 0; b < p; ++b) {
            bool root = false;
            for (long t = 0; t < p; ++t) root = root || md(t * t + a * t + b, p) == 0;
            if (!root) return {a, b};
        }
    }
    throw std::logic_error("no irreducible quadratic");
}

}  // namespace

NaiveGraph naive_collinearity(const std::string& family, std::size_t dim, unsigned pu) {
    const long p = pu;
    std::function<long(const std::vector<long>&)> Q;
    std::function<long(const std::vector<long>&, const std::vector<long>&)> B;
    if (family == "sp") {
        B = [p](const auto& x, const auto& y) {
            long s = 0;
            for (std::size_t i = 0; i + 1 < x.size(); i += 2) s += x[i] * y[i + 1] - x[i + 1] * y[i];
            return md(s, p);
        };
    } else {
        long a = 0, b = 0;
        if (family == "o-") std::tie(a, b) = tail(p);
        Q = [=](const std::vector<long>& x) {
            const std::size_t d = x.size();
            long s = 0;
            const std::size_t hyperbolic_pairs = family == "o-" ? d / 2 - 1 : d / 2;
            for (std::size_t i = 0; i < hyperbolic_pairs; ++i) s += x[2 * i] * x[2 * i + 1];
            if (family == "o-") s += x[d - 2] * x[d - 2] + a * x[d - 2] * x[d - 1] + b * x[d - 1] * x[d - 1];
            return md(s, p);
        };
        B = [=](const auto& x, const auto& y) {
            std::vector<long> z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = md(x[i] + y[i], p);
            return md(Q(z) - Q(x) - Q(y), p);
        };
    }
    std::vector<std::vector<long>> pts;
    for (auto& v : all_vectors(dim, p)) {
        if (!leading_one(v)) continue;
        if (Q ? Q(v) == 0 : true) pts.push_back(v);
    }
    NaiveGraph h;
    h.n = pts.size();
    h.adj.assign(h.n, std::vector<char>(h.n, 0));
    for (std::size_t i = 0; i < h.n; ++i) {
        for (std::size_t j = 0; j < h.n; ++j) h.adj[i][j] = i != j && B(pts[i], pts[j]) == 0;
    }
    return h;
}

NaiveGraph naive_affine(int m, int eps, unsigned pu) {
    const long p = pu;
    long a = 0, b = 0;
    if (eps == -1) std::tie(a, b) = tail(p);
    auto Q = [=](const std::vector<long>& x) {
        const std::size_t d = x.size();
        long s = 0;
        const std::size_t pairs = eps == -1 ? d / 2 - 1 : d / 2;
        for (std::size_t i = 0; i < pairs; ++i) s += x[2 * i] * x[2 * i + 1];
        if (eps == -1) s += x[d - 2] * x[d - 2] + a * x[d - 2] * x[d - 1] + b * x[d - 1] * x[d - 1];
        return md(s, p);
    };
    const auto vs = all_vectors(2 * static_cast<std::size_t>(m), p);
    NaiveGraph h;
    h.n = vs.size();
    h.adj.assign(h.n, std::vector<char>(h.n, 0));
    for (std::size_t i = 0; i < h.n; ++i) {
        for (std::size_t j = 0; j < h.n; ++j) {
            if (i == j) continue;
            std::vector<long> d(vs[i].size());
            for (std::size_t c = 0; c < d.size(); ++c) d[c] = md(vs[i][c] - vs[j][c], p);
            h.adj[i][j] = Q(d) == 0;
        }
    }
    return h;
}

NaiveGraph naive_unitary_4() {
    // H(u, v) = sum u_i v_i^2 over GF(4); vectors are base-4 digit strings.
    std::vector<std::vector<unsigned>> pts;
    for (unsigned idx = 1; idx < 256; ++idx) {
        std::vector<unsigned> v = {(idx >> 6) & 3u, (idx >> 4) & 3u, (idx >> 2) & 3u, idx & 3u};
        const auto lead = std::find_if(v.begin(), v.end(), [](unsigned c) { return c != 0; });
        if (*lead != 1) continue;
        pts.push_back(v);
    }
    auto H = [](const std::vector<unsigned>& u, const std::vector<unsigned>& w) {
        unsigned s = 0;
        for (std::size_t i = 0; i < 4; ++i) s = gf4_add(s, gf4_mul(u[i], gf4_mul(w[i], w[i])));
        return s;
    };
    std::vector<std::vector<unsigned>> iso;
    for (auto& v : pts) {
        if (H(v, v) == 0) iso.push_back(v);
    }
    NaiveGraph h;
    h.n = iso.size();
    h.adj.assign(h.n, std::vector<char>(h.n, 0));
    for (std::size_t i = 0; i < h.n; ++i) {
        for (std::size_t j = 0; j < h.n; ++j) h.adj[i][j] = i != j && H(iso[i], iso[j]) == 0;
    }
    return h;
}

bool same_graph(const polar::PolarGraph& g, const NaiveGraph& h) {
    if (g.order() != h.n) return false;
    for (std::size_t i = 0; i < h.n; ++i) {
        for (std::size_t j = 0; j < h.n; ++j) {
            if (g.adjacent(i, j) != static_cast<bool>(h.adj[i][j])) return false;
        }
    }
    return true;
}

std::optional<polar::SrgParams> naive_srg(const NaiveGraph& h) {
    std::optional<long> k, lambda, mu;
    for (std::size_t i = 0; i < h.n; ++i) {
        long d = 0;
        for (std::size_t j = 0; j < h.n; ++j) d += h.adj[i][j];
        if (k && *k != d) return std::nullopt;
        k = d;
    }
    for (std::size_t i = 0; i < h.n; ++i) {
        for (std::size_t j = i + 1; j < h.n; ++j) {
            long c = 0;
            for (std::size_t x = 0; x < h.n; ++x) c += h.adj[i][x] && h.adj[j][x];
            auto& slot = h.adj[i][j] ? lambda : mu;
            if (slot && *slot != c) return std::nullopt;
            slot = c;
        }
    }
    if (!k || !lambda || !mu) return std::nullopt;
    return polar::SrgParams{static_cast<std::int64_t>(h.n), *k, *lambda, *mu};
}

}  // namespace testsupport
