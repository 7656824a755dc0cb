#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polar/gf.hpp"
#include "polar/linalg.hpp"
#include "polar/polar_space.hpp"

namespace polar {

enum class GraphKind { collinearity, affine, unitary, generic };

std::string_view graph_kind_name(GraphKind k) noexcept;

/// Where a graph came from: enough to rebuild it and to evaluate the closed
/// forms for its eigenvalues.
struct Provenance {
    std::string family = "generic";  // sp, o+, o, o-, u, vo+, vo-, generic
    GraphKind kind = GraphKind::generic;
    gf::Code q = 0;
    unsigned p = 0;
    unsigned k = 0;
    std::vector<unsigned> modulus;
    std::size_t dim = 0;
    int rank = 0;     // polar rank n
    int m = 0;        // affine half-dimension
    int epsilon = 0;  // affine type
    std::uint64_t t = 0;
    int e_twice = 0;

    /// "family:n:q" for polar graphs, "family:m:q" for affine ones.
    std::string label() const;
};

/// Simple undirected graph with dense bit rows. Vertex i carries label(i): a
/// normalized projective representative or an affine vector.
class PolarGraph {
public:
    PolarGraph(std::size_t n, std::vector<std::uint64_t> bits, Provenance prov, std::vector<Vec> labels = {},
               gf::Field field = nullptr);

    static PolarGraph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                                 Provenance prov = {});

    std::size_t order() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }
    const std::uint64_t* row(std::size_t i) const noexcept { return bits_.data() + i * words_; }
    bool adjacent(std::size_t i, std::size_t j) const noexcept { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    std::size_t degree(std::size_t i) const noexcept;
    std::vector<std::size_t> neighbors(std::size_t i) const;
    std::size_t edge_count() const noexcept;

    const Provenance& provenance() const noexcept { return prov_; }
    const std::vector<Vec>& labels() const noexcept { return labels_; }
    /// Ambient field of the labels; null for generic graphs.
    const gf::Field& field() const noexcept { return field_; }

    /// Vertex whose label is v (after projective normalization for point graphs).
    std::optional<std::size_t> vertex_of(std::span<const gf::Code> v) const;

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    Provenance prov_;
    std::vector<Vec> labels_;
    std::vector<std::uint64_t> label_keys_;  // sorted
    gf::Field field_;
};

std::size_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept;

inline constexpr std::size_t kDefaultVertexCap = 8192;

/// Provenance of the collinearity graph of a polar space.
Provenance space_provenance(const PolarSpace& space);

/// Gamma(Pi). Throws RankTooLow for rank < 2.
PolarGraph collinearity_graph(const PolarSpace& space);

/// VO^eps(2m, q). Throws CapExceeded above max_vertices.
PolarGraph affine_polar_graph(int m, int epsilon, const gf::Field& field, std::size_t max_vertices = 1u << 16);

/// U(dim, q) from the standard Hermitian form, built directly from the pairing.
PolarGraph unitary_graph(const gf::Field& field, std::size_t dim = 4);

struct SrgParams {
    std::int64_t v = 0;
    std::int64_t k = 0;
    std::int64_t lambda = 0;
    std::int64_t mu = 0;

    bool feasible() const noexcept { return k * (k - lambda - 1) == (v - k - 1) * mu; }
    bool operator==(const SrgParams&) const = default;
};

/// Exhaustive check over all vertex pairs. Throws NotRegular,
/// NotStronglyRegular or Imprimitive.
SrgParams srg_check(const PolarGraph& g);

struct SpectrumInfo {
    std::int64_t theta1 = 0;
    std::int64_t theta2 = 0;
    std::int64_t mult1 = 0;
    std::int64_t mult2 = 0;
};

/// Roots of x^2 - (lambda - mu) x - (k - mu). Throws IrrationalEigenvalues.
SpectrumInfo spectrum(const SrgParams& params);

struct ClosedFormEigenvalues {
    std::int64_t theta1 = 0;
    std::int64_t theta2 = 0;
    /// Values the closed forms assign to each label, before sorting by sign
    /// (differs from theta1 for elliptic affine graphs).
    std::int64_t labelled_theta1 = 0;
    std::int64_t labelled_theta2 = 0;
};

/// theta1 = q^{n-1}-1, theta2 = -t q^{n-2}-1 for collinearity graphs;
/// {eps(q-1)q^{m-1}-1, -eps q^{m-1}-1} sorted by sign for affine graphs.
std::optional<ClosedFormEigenvalues> closed_form_eigenvalues(const Provenance& prov);

/// Whether det(A - theta I) = 0, decided exactly: determinants modulo enough
/// primes to exceed twice the Hadamard bound.
bool is_eigenvalue_exact(const PolarGraph& g, std::int64_t theta);

struct CliqueInfo {
    std::vector<std::size_t> vertices;  // sorted
    bool is_delsarte = false;
    std::optional<std::int64_t> nexus;

    bool operator==(const CliqueInfo&) const = default;
};

/// 1 + k/(-theta2) when integral.
std::optional<std::int64_t> delsarte_bound(const SrgParams& params, const SpectrumInfo& spec);

/// All cliques with exactly s vertices, sorted lexicographically.
std::vector<std::vector<std::size_t>> cliques_of_size(const PolarGraph& g, std::size_t s, unsigned workers = 1);

/// Every maximal clique (Bron-Kerbosch with pivoting), sorted.
std::vector<std::vector<std::size_t>> maximal_cliques(const PolarGraph& g, std::size_t min_size = 1);

/// Regularity of a clique: the common count of neighbours each outside vertex has in it.
std::optional<std::int64_t> clique_nexus(const PolarGraph& g, std::span<const std::size_t> clique);

/// All Delsarte cliques, each verified regular with nexus mu/(-theta2).
std::vector<CliqueInfo> delsarte_cliques(const PolarGraph& g, const SrgParams& params, const SpectrumInfo& spec,
                                         unsigned workers = 1);

/// Pair of distinct cliques with the largest intersection, ties broken by
/// canonical clique order. Throws FewerThanTwoCliques.
std::pair<CliqueInfo, CliqueInfo> max_intersecting_delsarte_pair(const std::vector<CliqueInfo>& cliques);

}  // namespace polar
