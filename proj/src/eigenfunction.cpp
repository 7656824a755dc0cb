#include "polar/eigenfunction.hpp"

#include <algorithm>
#include <cstdlib>

namespace polar {

std::vector<std::size_t> Eigenfunction::support() const {
    std::vector<std::size_t> out;
    out.reserve(values.size());
    for (const auto& [v, x] : values) out.push_back(v);
    return out;
}

void Eigenfunction::set(std::size_t v, const mpq_class& x) {
    if (x == 0) {
        values.erase(v);
    } else {
        values[v] = x;
    }
}

EigenfunctionViolation::EigenfunctionViolation(std::size_t vertex, const mpq_class& lhs, const mpq_class& rhs)
    : Error(Errc::NotAnEigenfunction, "vertex " + std::to_string(vertex) + ": theta*f = " + lhs.get_str() +
                                          " but neighbour sum = " + rhs.get_str()),
      vertex_(vertex),
      lhs_(lhs.get_str()),
      rhs_(rhs.get_str()) {}

std::int64_t wdb(std::int64_t theta, const SrgParams& params) {
    const auto spec = spectrum(params);
    if (theta != spec.theta1 && theta != spec.theta2) {
        throw Error(Errc::NotNonPrincipal, std::to_string(theta) + " is not a non-principal eigenvalue (" +
                                               std::to_string(spec.theta1) + ", " + std::to_string(spec.theta2) + ")");
    }
    const mpq_class t(static_cast<long>(theta));
    const mpq_class inner = ((t - static_cast<long>(params.lambda)) * t - static_cast<long>(params.k)) /
                            mpq_class(static_cast<long>(params.mu));
    const mpq_class value = 1 + abs(t) + abs(inner);
    const std::int64_t expected = theta == spec.theta1 ? 2 * (spec.theta1 + 1) : -2 * spec.theta2;
    if (value != expected) {
        throw Error(Errc::NotNonPrincipal, "bound " + value.get_str() + " differs from " + std::to_string(expected));
    }
    return expected;
}

WdbReport verify_eigenfunction(const PolarGraph& g, const Eigenfunction& f, const SrgParams& params) {
    if (f.values.empty()) throw Error(Errc::ZeroFunction, "function has no nonzero value");
    for (const auto& [v, x] : f.values) {
        if (v >= g.order()) throw Error(Errc::BadInput, "vertex " + std::to_string(v) + " out of range");
        if (x == 0) throw Error(Errc::BadInput, "explicit zero entry at vertex " + std::to_string(v));
    }
    const mpq_class theta(static_cast<long>(f.theta));
    for (std::size_t x = 0; x < g.order(); ++x) {
        mpq_class lhs = 0;
        if (auto it = f.values.find(x); it != f.values.end()) lhs = theta * it->second;
        mpq_class rhs = 0;
        for (const auto& [v, val] : f.values) {
            if (g.adjacent(x, v)) rhs += val;
        }
        if (lhs != rhs) throw EigenfunctionViolation(x, lhs, rhs);
    }
    WdbReport r;
    r.theta = f.theta;
    r.support_size = f.support_size();
    if (f.theta != params.k) {
        r.bound = wdb(f.theta, params);
        r.tight = static_cast<std::int64_t>(r.support_size) == *r.bound;
    }
    return r;
}

Eigenfunction signed_indicator(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                               std::int64_t theta, Provenance prov) {
    Eigenfunction f;
    f.theta = theta;
    f.graph = std::move(prov);
    for (auto v : a) f.values[v] = 1;
    for (auto v : b) {
        if (f.values.count(v)) throw Error(Errc::BadInput, "the two parts overlap at " + std::to_string(v));
        f.values[v] = -1;
    }
    return f;
}

namespace {

std::vector<std::size_t> difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::int64_t theta1_of(const Provenance& prov) {
    const auto c = closed_form_eigenvalues(prov);
    if (!c) throw Error(Errc::BadInput, "no closed-form eigenvalues for " + prov.label());
    return c->theta1;
}

void check_sigma(const PolarSpace& space, const SingularSubspace& L, const SingularSubspace& M,
                 const SingularSubspace& N) {
    if (L.proj_dim() != space.rank() - 2) {
        throw Error(Errc::WrongDimension, "L must have projective dimension " + std::to_string(space.rank() - 2));
    }
    const auto sigma = space.sigma_L(L);
    auto has = [&](const SingularSubspace& X) {
        return std::find(sigma.begin(), sigma.end(), space.canonical(X.basis)) != sigma.end();
    };
    if (!has(M) || !has(N) || space.canonical(M.basis) == space.canonical(N.basis)) {
        throw Error(Errc::NotInSigmaL, "M and N must be distinct maximals containing L");
    }
}

std::size_t vertex_or_throw(const PolarGraph& g, const Vec& x) {
    const auto v = g.vertex_of(x);
    if (!v) throw Error(Errc::BadInput, "vector is not a vertex of " + g.provenance().label());
    return *v;
}

void check_affine(const PolarSpace& space, const PolarGraph& g, int epsilon) {
    const auto& prov = g.provenance();
    if (prov.kind != GraphKind::affine || prov.epsilon != epsilon || prov.dim != space.form().dim() ||
        space.form().epsilon() != epsilon || prov.q != space.ctx().q()) {
        throw Error(Errc::KindMismatch, "graph and polar space do not match");
    }
}

}  // namespace

Eigenfunction theta1_polar(const PolarSpace& space, const SingularSubspace& L, const SingularSubspace& M,
                           const SingularSubspace& N) {
    check_sigma(space, L, M, N);
    const auto Lc = L.basis.empty() ? SingularSubspace{} : space.canonical(L.basis);
    const auto prov = space_provenance(space);
    return signed_indicator(difference(space.canonical(M.basis).points, Lc.points),
                            difference(space.canonical(N.basis).points, Lc.points), theta1_of(prov), prov);
}

Eigenfunction theta1_from_clique_pair(const PolarGraph& g, const SrgParams& params, const CliqueInfo& c0,
                                      const CliqueInfo& c1) {
    const auto spec = spectrum(params);
    const auto bound = delsarte_bound(params, spec);
    const std::optional<std::int64_t> nexus =
        params.mu % -spec.theta2 == 0 ? std::optional<std::int64_t>(params.mu / -spec.theta2) : std::nullopt;
    for (const auto* c : {&c0, &c1}) {
        if (!bound || static_cast<std::int64_t>(c->vertices.size()) != *bound || !nexus ||
            clique_nexus(g, c->vertices) != nexus) {
            throw Error(Errc::NotDelsarte, "clique is not a Delsarte clique of " + g.provenance().label());
        }
    }
    auto a = difference(c0.vertices, c1.vertices);
    auto b = difference(c1.vertices, c0.vertices);
    if (a.empty()) throw Error(Errc::NotMaxIntersection, "cliques are equal");
    if (static_cast<std::int64_t>(a.size()) != spec.theta1 + 1) {
        throw Error(Errc::NotMaxIntersection, "intersection has " + std::to_string(c0.vertices.size() - a.size()) +
                                                  " vertices; the maximum leaves theta1+1 = " +
                                                  std::to_string(spec.theta1 + 1) + " on each side");
    }
    return signed_indicator(a, b, spec.theta1, g.provenance());
}

Eigenfunction theta1_hyperbolic(const PolarSpace& space, const PolarGraph& g, const Vec& v, const SingularSubspace& L,
                                const SingularSubspace& M, const SingularSubspace& N) {
    check_affine(space, g, 1);
    check_sigma(space, L, M, N);
    const auto& f = space.ctx();
    const auto Lc = L.basis.empty() ? SingularSubspace{} : space.canonical(L.basis);
    auto lift = [&](const SingularSubspace& X) {
        std::vector<std::size_t> out;
        for (auto pt : difference(space.canonical(X.basis).points, Lc.points)) {
            const auto& rep = space.points()[pt].rep;
            for (gf::Code c = 1; c < f.q(); ++c) {
                out.push_back(vertex_or_throw(g, linalg::add(f, v, linalg::scale(f, c, rep))));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return signed_indicator(lift(M), lift(N), theta1_of(g.provenance()), g.provenance());
}

Eigenfunction theta1_elliptic(const PolarSpace& space, const PolarGraph& g, const Vec& v, const SingularSubspace& M,
                              const Vec& t) {
    check_affine(space, g, -1);
    if (M.proj_dim() != space.rank() - 1) throw Error(Errc::WrongDimension, "M must be a maximal singular subspace");
    const auto& f = space.ctx();
    const auto Mc = space.canonical(M.basis);
    for (const auto& b : Mc.basis) {
        if (space.form().orth_code(t, b) != 0) throw Error(Errc::TNotInPerp, "t is not in Aff(M)^perp");
    }
    if (linalg::in_span(f, Mc.basis, t)) throw Error(Errc::TInAffM, "t lies in Aff(M)");
    const auto U = linalg::span_vectors(f, Mc.basis, space.form().dim());
    const Vec tv = linalg::add(f, t, v);
    std::vector<std::size_t> a, b;
    for (const auto& u : U) {
        a.push_back(vertex_or_throw(g, linalg::add(f, v, u)));
        b.push_back(vertex_or_throw(g, linalg::add(f, tv, u)));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return signed_indicator(a, b, theta1_of(g.provenance()), g.provenance());
}

UnitaryPair unitary_pair(const PolarGraph& g, std::optional<gf::Code> primitive) {
    const auto& prov = g.provenance();
    if (prov.kind != GraphKind::unitary || prov.dim != 4 || !g.field()) {
        throw Error(Errc::KindMismatch, "unitary pair needs U(4,q)");
    }
    const auto& field = g.field();
    const auto& f = *field;
    if (!f.is_square()) throw Error(Errc::OddExtensionDegree, "q is not a square");
    gf::Code scale = 1;
    if (f.p() != 2) scale = (primitive ? gf::epsilon_unit(field, *primitive) : gf::epsilon_unit(field)).code();
    UnitaryPair out;
    for (const auto& gamma : gf::norm_one_subgroup(field).elements) {
        const gf::Code x = f.mul(scale, gamma.code());
        out.t0.push_back(vertex_or_throw(g, Vec{1, x, 0, 0}));
        out.t1.push_back(vertex_or_throw(g, Vec{0, 0, 1, x}));
    }
    std::sort(out.t0.begin(), out.t0.end());
    std::sort(out.t1.begin(), out.t1.end());
    return out;
}

Eigenfunction theta2_unitary(const PolarGraph& g, std::optional<gf::Code> primitive) {
    auto pair = unitary_pair(g, primitive);
    const auto theta = -static_cast<std::int64_t>(g.field()->sqrt_q()) - 1;
    return signed_indicator(pair.t0, pair.t1, theta, g.provenance());
}

Eigenfunction scaled(const Eigenfunction& f, const mpq_class& c) {
    if (c == 0) throw Error(Errc::ZeroFunction, "scaling by zero");
    Eigenfunction out = f;
    for (auto& [v, x] : out.values) x *= c;
    return out;
}

}  // namespace polar
