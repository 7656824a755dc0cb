#pragma once

// Shared fixtures, random generators and independent reference
// implementations used by the unit and acceptance tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <memory>
#include <random>
#include <tuple>
#include <vector>

#include "polar/forms.hpp"
#include "polar/gf.hpp"
#include "polar/graph.hpp"
#include "polar/polar_space.hpp"

namespace testsupport {

using polar::Vec;

inline constexpr std::size_t kCases = 1000;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
    polar::gf::Code element(const polar::gf::FieldContext& f) { return static_cast<polar::gf::Code>(below(f.q())); }
    polar::gf::Code nonzero(const polar::gf::FieldContext& f) {
        return static_cast<polar::gf::Code>(1 + below(f.q() - 1));
    }
    Vec vec(const polar::gf::FieldContext& f, std::size_t dim) {
        Vec v(dim);
        for (auto& x : v) x = element(f);
        return v;
    }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

private:
    std::mt19937_64 eng_;
};

inline const polar::gf::Field& field(std::uint64_t q) {
    static std::map<std::uint64_t, polar::gf::Field> cache;
    auto& slot = cache[q];
    if (!slot) slot = polar::gf::field_from_order(q);
    return slot;
}

inline const polar::PolarSpace& space(polar::Family fam, std::size_t dim, std::uint64_t q) {
    static std::map<std::tuple<int, std::size_t, std::uint64_t>, std::unique_ptr<polar::PolarSpace>> cache;
    auto& slot = cache[{static_cast<int>(fam), dim, q}];
    if (!slot) slot = std::make_unique<polar::PolarSpace>(polar::Form::standard(fam, dim, field(q)));
    return *slot;
}

// ---- Reference arithmetic written independently of the library ----

/// GF(4) = {0, 1, w, w+1} with w^2 = w + 1, codes 0..3 (w = 2).
inline unsigned gf4_mul(unsigned a, unsigned b) {
    static const unsigned t[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return t[a][b];
}
inline unsigned gf4_add(unsigned a, unsigned b) { return a ^ b; }

/// Polynomials over GF(p), little-endian, for the reference irreducibility test.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p);
bool naive_irreducible(const std::vector<unsigned>& monic, unsigned p);
/// Least monic irreducible of degree k, by exhaustive search.
std::vector<unsigned> naive_least_irreducible(unsigned p, unsigned k);

/// Adjacency matrix built from first principles for a prime field, or GF(4) for
/// the unitary case. Vertices are listed in the same canonical order the
/// library uses (normalized representatives, or vectors, in lexicographic order).
struct NaiveGraph {
    std::size_t n = 0;
    std::vector<std::vector<char>> adj;
};

/// Sp(4,p), O+(2m,p), O-(4,p) and O-(6,p) collinearity graphs over a prime p.
NaiveGraph naive_collinearity(const std::string& family, std::size_t dim, unsigned p);
/// VO^eps(2m, p) over a prime p.
NaiveGraph naive_affine(int m, int eps, unsigned p);
/// U(4,4) from hand-written GF(4) arithmetic.
NaiveGraph naive_unitary_4();

bool same_graph(const polar::PolarGraph& g, const NaiveGraph& h);

/// Independent SRG parameter computation by counting over all pairs.
std::optional<polar::SrgParams> naive_srg(const NaiveGraph& h);

}  // namespace testsupport
