#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polar/graph.hpp"
#include "polar/polar_space.hpp"

namespace polar {

enum class PairKind { isolated_cliques, complete_bipartite };

std::string_view pair_kind_name(PairKind k) noexcept;

struct VertexSetPair {
    std::vector<std::size_t> t0;  // sorted; t0 < t1 lexicographically
    std::vector<std::size_t> t1;
    /// Bipartite catalogs: every outside vertex sees as many of T0 as of T1.
    bool outside_regular = false;

    bool operator==(const VertexSetPair&) const = default;
    auto operator<=>(const VertexSetPair&) const = default;
};

struct PairCatalog {
    PairKind kind = PairKind::isolated_cliques;
    std::size_t s = 0;
    std::string graph;  // provenance label
    std::vector<VertexSetPair> pairs;  // sorted

    std::size_t total() const noexcept { return pairs.size(); }
    std::size_t outside_regular_count() const noexcept;
    bool operator==(const PairCatalog&) const = default;
};

/// Every unordered pair of s-cliques with no edge between them.
PairCatalog enumerate_isolated_clique_pairs(const PolarGraph& g, std::size_t s, unsigned workers = 1);

/// Every induced K_{s,s}: independent parts, all cross edges present.
PairCatalog enumerate_bipartite_pairs(const PolarGraph& g, std::size_t s, unsigned workers = 1);

/// Outcome of matching each catalog pair to the structure predicted for it.
struct CharacterisationReport {
    std::size_t checked = 0;
    std::size_t witnessed = 0;
    std::vector<std::size_t> counterexamples;  // catalog positions
    std::vector<std::string> witnesses;        // one line per witnessed pair, catalog order

    bool complete() const noexcept { return counterexamples.empty() && witnessed == checked; }
};

/// Polar spaces: {T0, T1} = {M \ L, N \ L} for M, N maximals through an (n-2)-space L.
CharacterisationReport check_polar_characterisation(const PolarSpace& space, const PairCatalog& catalog);

/// VO+(2m,q): {T0, T1} = v + {Aff*(M \ L), Aff*(N \ L)}.
CharacterisationReport check_hyperbolic_characterisation(const PolarSpace& space, const PolarGraph& g,
                                                         const PairCatalog& catalog);

/// VO-(2m,q): T0 = v + Aff(M), T1 = t + v + Aff(M) with t in Aff(M)^perp \ Aff(M).
CharacterisationReport check_elliptic_characterisation(const PolarSpace& space, const PolarGraph& g,
                                                       const PairCatalog& catalog);

/// Throws WitnessNotFound naming the first counterexample, if any.
void require_complete(const CharacterisationReport& report, const PairCatalog& catalog);

struct CountComparison {
    std::string family;
    gf::Code q = 0;
    int m_or_n = 0;
    std::uint64_t oracle = 0;
    std::uint64_t printed = 0;
    std::uint64_t derived = 0;

    bool printed_matches() const noexcept { return oracle == printed; }
    bool derived_matches() const noexcept { return oracle == derived; }
};

/// Closed-form count of isolated theta1-clique pairs in a collinearity graph:
/// C(t+1,2) (q^n-1)/(q-1) prod_{i=0}^{n-2} (q^{n+e-i-1}+1).
std::uint64_t printed_polar_count(const PolarSpaceDescriptor& d);
/// q^{m+1} (q^{2m}-1)/(q-1) prod_{i=0}^{m-1} (q^{m-i-1}+1).
std::uint64_t printed_hyperbolic_count(int m, std::uint64_t q);
/// q^{m-1} C(q^{m+1},2) prod_{i=0}^{m-2} (q^{m-i}+1).
std::uint64_t printed_elliptic_count(int m, std::uint64_t q);

/// Closed-form ("printed") and structure-derived counts against the catalog size. For polar graphs
/// `space` is the graph's own space; for VO^eps(2m,q) it is O^eps(2m,q).
CountComparison count_comparison(const PolarSpace& space, const PolarGraph& g, const PairCatalog& catalog);

/// JSON-lines catalog files: a header line then one pair per line.
std::filesystem::path catalog_path(const std::filesystem::path& dir, const std::string& graph, PairKind kind,
                                   std::size_t s);
void save_catalog(const PairCatalog& catalog, const std::filesystem::path& dir);
std::optional<PairCatalog> load_catalog(const std::filesystem::path& dir, const std::string& graph, PairKind kind,
                                        std::size_t s);

}  // namespace polar
