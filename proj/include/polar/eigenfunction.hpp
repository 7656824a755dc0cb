#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "polar/graph.hpp"
#include "polar/polar_space.hpp"

namespace polar {

/// Sparse vertex function with a declared eigenvalue. Zero values are never stored.
struct Eigenfunction {
    std::map<std::size_t, mpq_class> values;
    std::int64_t theta = 0;
    Provenance graph;

    std::size_t support_size() const noexcept { return values.size(); }
    std::vector<std::size_t> support() const;
    /// Sets f(v) = x, dropping the entry when x = 0.
    void set(std::size_t v, const mpq_class& x);
};

struct WdbReport {
    std::int64_t theta = 0;
    /// Absent for the principal eigenvalue k.
    std::optional<std::int64_t> bound;
    std::size_t support_size = 0;
    bool tight = false;
};

/// Raised by verify_eigenfunction; carries the least violating vertex.
class EigenfunctionViolation : public Error {
public:
    EigenfunctionViolation(std::size_t vertex, const mpq_class& lhs, const mpq_class& rhs);
    std::size_t vertex() const noexcept { return vertex_; }
    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    std::size_t vertex_;
    std::string lhs_;
    std::string rhs_;
};

/// 1 + |theta| + |((theta - lambda) theta - k) / mu|, checked against 2(theta1+1)
/// and -2 theta2. Throws NotNonPrincipal unless theta is theta1 or theta2.
std::int64_t wdb(std::int64_t theta, const SrgParams& params);

/// Checks theta f(x) = sum of f over N(x) at every vertex, exactly. Throws
/// ZeroFunction, BadInput (index out of range) or EigenfunctionViolation.
WdbReport verify_eigenfunction(const PolarGraph& g, const Eigenfunction& f, const SrgParams& params);

/// +1 on M \ L, -1 on N \ L. Throws WrongDimension unless dim L = n-2 and
/// NotInSigmaL unless M, N are distinct maximals through L.
Eigenfunction theta1_polar(const PolarSpace& space, const SingularSubspace& L, const SingularSubspace& M,
                           const SingularSubspace& N);

/// +1 on C0 \ C1, -1 on C1 \ C0. Throws NotDelsarte, or NotMaxIntersection when
/// |C0 \ C1| differs from theta1 + 1.
Eigenfunction theta1_from_clique_pair(const PolarGraph& g, const SrgParams& params, const CliqueInfo& c0,
                                      const CliqueInfo& c1);

/// On VO+(2m,q): +1 on v + Aff*(M \ L), -1 on v + Aff*(N \ L). `space` is the
/// O+(2m,q) polar space whose form built `g`.
Eigenfunction theta1_hyperbolic(const PolarSpace& space, const PolarGraph& g, const Vec& v, const SingularSubspace& L,
                                const SingularSubspace& M, const SingularSubspace& N);

/// On VO-(2m,q): +1 on v + Aff(M), -1 on t + v + Aff(M). Throws TNotInPerp or TInAffM.
Eigenfunction theta1_elliptic(const PolarSpace& space, const PolarGraph& g, const Vec& v, const SingularSubspace& M,
                              const Vec& t);

struct UnitaryPair {
    std::vector<std::size_t> t0;  // sorted vertex indices
    std::vector<std::size_t> t1;
};

/// The two halves of the K_{sqrt q+1, sqrt q+1} in U(4,q): [(1,g,0,0)] and
/// [(0,0,1,g)] over the norm-one group, with g scaled by the unit eps =
/// beta^((sqrt q - 1)/2) when q is odd. `primitive` overrides beta.
UnitaryPair unitary_pair(const PolarGraph& g, std::optional<gf::Code> primitive = std::nullopt);

/// +1 on T0, -1 on T1, theta = -(sqrt q + 1).
Eigenfunction theta2_unitary(const PolarGraph& g, std::optional<gf::Code> primitive = std::nullopt);

/// c f for nonzero c; throws ZeroFunction for c = 0.
Eigenfunction scaled(const Eigenfunction& f, const mpq_class& c);

/// +1 on a, -1 on b.
Eigenfunction signed_indicator(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                               std::int64_t theta, Provenance prov);

}  // namespace polar
