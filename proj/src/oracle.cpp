#include "polar/oracle.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "polar/parallel.hpp"

namespace polar {

using nlohmann::json;

std::string_view pair_kind_name(PairKind k) noexcept {
    return k == PairKind::isolated_cliques ? "isolated_cliques" : "complete_bipartite";
}

std::size_t PairCatalog::outside_regular_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const VertexSetPair& p) { return p.outside_regular; }));
}

namespace {

using Bits = std::vector<std::uint64_t>;

Bits mask_of(std::size_t words, const std::vector<std::size_t>& vs) {
    Bits m(words, 0);
    for (auto v : vs) m[v >> 6] |= std::uint64_t{1} << (v & 63);
    return m;
}

bool outside_regular(const PolarGraph& g, const VertexSetPair& p) {
    const Bits m0 = mask_of(g.words(), p.t0);
    const Bits m1 = mask_of(g.words(), p.t1);
    for (std::size_t u = 0; u < g.order(); ++u) {
        const auto bit = std::uint64_t{1} << (u & 63);
        if ((m0[u >> 6] & bit) || (m1[u >> 6] & bit)) continue;
        if (popcount_and(g.row(u), m0.data(), g.words()) != popcount_and(g.row(u), m1.data(), g.words())) {
            return false;
        }
    }
    return true;
}

// Independent sets of size `need` drawn from cand, in increasing vertex order.
template <class Sink>
void independent_sets(const PolarGraph& g, std::vector<std::size_t>& cur, Bits cand, std::size_t need, Sink& sink) {
    if (need == 0) {
        sink(cur);
        return;
    }
    std::size_t avail = 0;
    for (auto w : cand) avail += static_cast<std::size_t>(std::popcount(w));
    for (std::size_t w = 0; w < cand.size() && avail >= need; ++w) {
        while (cand[w] && avail >= need) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
            cand[w] &= cand[w] - 1;
            --avail;
            Bits next = cand;
            const auto* r = g.row(v);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] &= ~r[i];
            cur.push_back(v);
            independent_sets(g, cur, std::move(next), need - 1, sink);
            cur.pop_back();
        }
    }
}

Bits above(std::size_t words, std::size_t n, std::size_t a) {
    Bits b(words, 0);
    for (std::size_t v = a + 1; v < n; ++v) b[v >> 6] |= std::uint64_t{1} << (v & 63);
    return b;
}

std::vector<std::size_t> difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string list_str(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// M0, M1 maximal with L = M0 n M1 of dim n-2 and S_i = M_i \ L; the witness line or nothing.
std::optional<std::string> delta_witness(const PolarSpace& space, const std::vector<std::size_t>& s0,
                                         const std::vector<std::size_t>& s1) {
    try {
        const auto m0 = space.span_closure(s0);
        const auto m1 = space.span_closure(s1);
        const int top = space.rank() - 1;
        if (m0.proj_dim() != top || m1.proj_dim() != top || m0 == m1) return std::nullopt;
        const Basis meet = linalg::intersect(space.ctx(), m0.basis, m1.basis, space.form().dim());
        const auto L = meet.empty() ? SingularSubspace{} : space.canonical(meet);
        if (L.proj_dim() != space.rank() - 2) return std::nullopt;
        if (difference(m0.points, L.points) != s0 || difference(m1.points, L.points) != s1) return std::nullopt;
        return "L=" + list_str(L.points) + " M=" + list_str(m0.points) + " N=" + list_str(m1.points);
    } catch (const Error&) {
        return std::nullopt;
    }
}

template <class Finder>
CharacterisationReport run_check(const PairCatalog& catalog, Finder find) {
    CharacterisationReport r;
    for (std::size_t i = 0; i < catalog.pairs.size(); ++i) {
        ++r.checked;
        if (auto w = find(catalog.pairs[i])) {
            ++r.witnessed;
            r.witnesses.push_back(std::move(*w));
        } else {
            r.counterexamples.push_back(i);
        }
    }
    return r;
}

void check_graph(const PolarGraph& g, const PairCatalog& catalog) {
    if (catalog.graph != g.provenance().label()) {
        throw Error(Errc::BadInput, "catalog belongs to " + catalog.graph + ", not " + g.provenance().label());
    }
}

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::uint64_t choose2(std::uint64_t x) { return x * (x - 1) / 2; }

// q^(x/2) for integer x, with sqrt(q) exact when x is odd.
std::uint64_t half_power(std::uint64_t q, int twice) {
    if (twice % 2 == 0) return upow(q, twice / 2);
    std::uint64_t r = 1;
    while ((r + 1) * (r + 1) <= q) ++r;
    if (r * r != q) throw Error(Errc::OddExtensionDegree, "half-integral exponent needs q square");
    return upow(r, twice);
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '+') out += 'p';
        else if (c == '-') out += 'm';
        else if (c == ':') out += '_';
        else out += c;
    }
    return out;
}

}  // namespace

PairCatalog enumerate_isolated_clique_pairs(const PolarGraph& g, std::size_t s, unsigned workers) {
    PairCatalog cat;
    cat.kind = PairKind::isolated_cliques;
    cat.s = s;
    cat.graph = g.provenance().label();
    if (s == 0) return cat;
    const auto cliques = cliques_of_size(g, s, workers);
    const std::size_t words = g.words();
    std::vector<Bits> own(cliques.size()), closed(cliques.size());
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        own[i] = mask_of(words, cliques[i]);
        closed[i] = own[i];
        for (auto v : cliques[i]) {
            const auto* r = g.row(v);
            for (std::size_t w = 0; w < words; ++w) closed[i][w] |= r[w];
        }
    }
    cat.pairs = parallel_collect<VertexSetPair>(cliques.size(), workers, [&](std::size_t b, std::size_t e) {
        std::vector<VertexSetPair> out;
        for (std::size_t i = b; i < e; ++i) {
            for (std::size_t j = i + 1; j < cliques.size(); ++j) {
                bool clear = true;
                for (std::size_t w = 0; w < words && clear; ++w) clear = (closed[i][w] & own[j][w]) == 0;
                if (clear) out.push_back(VertexSetPair{cliques[i], cliques[j], false});
            }
        }
        return out;
    });
    return cat;
}

PairCatalog enumerate_bipartite_pairs(const PolarGraph& g, std::size_t s, unsigned workers) {
    PairCatalog cat;
    cat.kind = PairKind::complete_bipartite;
    cat.s = s;
    cat.graph = g.provenance().label();
    if (s == 0) return cat;
    const std::size_t n = g.order();
    const std::size_t words = g.words();
    cat.pairs = parallel_collect<VertexSetPair>(n, workers, [&](std::size_t b, std::size_t e) {
        std::vector<VertexSetPair> out;
        for (std::size_t a = b; a < e; ++a) {
            // a = least vertex of T0 u T1, placed in T0.
            const Bits up = above(words, n, a);
            Bits cand1 = up;
            for (std::size_t w = 0; w < words; ++w) cand1[w] &= g.row(a)[w];
            std::vector<std::size_t> cur;
            auto on_t1 = [&](const std::vector<std::size_t>& t1) {
                Bits cand0 = up;
                for (std::size_t w = 0; w < words; ++w) cand0[w] &= ~g.row(a)[w];
                for (auto y : t1) {
                    for (std::size_t w = 0; w < words; ++w) cand0[w] &= g.row(y)[w];
                }
                std::vector<std::size_t> cur0{a};
                auto on_t0 = [&](const std::vector<std::size_t>& t0) {
                    VertexSetPair p{t0, t1, false};
                    p.outside_regular = outside_regular(g, p);
                    out.push_back(std::move(p));
                };
                independent_sets(g, cur0, std::move(cand0), s - 1, on_t0);
            };
            independent_sets(g, cur, std::move(cand1), s, on_t1);
        }
        return out;
    });
    std::sort(cat.pairs.begin(), cat.pairs.end());
    return cat;
}

CharacterisationReport check_polar_characterisation(const PolarSpace& space, const PairCatalog& catalog) {
    return run_check(catalog, [&](const VertexSetPair& p) { return delta_witness(space, p.t0, p.t1); });
}

CharacterisationReport check_hyperbolic_characterisation(const PolarSpace& space, const PolarGraph& g,
                                                         const PairCatalog& catalog) {
    check_graph(g, catalog);
    const auto& f = space.ctx();
    auto project = [&](const std::vector<std::size_t>& part, const Vec& v) -> std::optional<std::vector<std::size_t>> {
        std::map<std::size_t, std::size_t> hits;
        for (auto x : part) {
            const Vec d = linalg::sub(f, g.labels()[x], v);
            if (linalg::is_zero(d)) return std::nullopt;
            const auto pt = space.point_index(d);
            if (!pt) return std::nullopt;
            ++hits[*pt];
        }
        std::vector<std::size_t> pts;
        for (auto [pt, c] : hits) {
            if (c != f.q() - 1) return std::nullopt;
            pts.push_back(pt);
        }
        return pts;
    };
    return run_check(catalog, [&](const VertexSetPair& p) -> std::optional<std::string> {
        for (const auto& v : g.labels()) {
            const auto s0 = project(p.t0, v);
            if (!s0) continue;
            const auto s1 = project(p.t1, v);
            if (!s1) continue;
            if (auto w = delta_witness(space, *s0, *s1)) return "v=" + vec_str(v) + " " + *w;
        }
        return std::nullopt;
    });
}

CharacterisationReport check_elliptic_characterisation(const PolarSpace& space, const PolarGraph& g,
                                                       const PairCatalog& catalog) {
    check_graph(g, catalog);
    const auto& f = space.ctx();
    const std::size_t dim = space.form().dim();
    auto try_order = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
        -> std::optional<std::string> {
        const Vec& v = g.labels()[a.front()];
        Basis diffs;
        for (auto x : a) diffs.push_back(linalg::sub(f, g.labels()[x], v));
        const Basis basis = linalg::rref(f, diffs);
        if (upow(f.q(), static_cast<int>(basis.size())) != a.size()) return std::nullopt;
        SingularSubspace M;
        try {
            M = space.canonical(basis);
        } catch (const Error&) {
            return std::nullopt;
        }
        if (M.proj_dim() != space.rank() - 1) return std::nullopt;
        const Vec t = linalg::sub(f, g.labels()[b.front()], v);
        for (const auto& row : M.basis) {
            if (space.form().orth_code(t, row) != 0) return std::nullopt;
        }
        if (linalg::in_span(f, M.basis, t)) return std::nullopt;
        std::vector<std::size_t> shifted;
        const Vec tv = linalg::add(f, t, v);
        for (const auto& u : linalg::span_vectors(f, M.basis, dim)) {
            const auto x = g.vertex_of(linalg::add(f, tv, u));
            if (!x) return std::nullopt;
            shifted.push_back(*x);
        }
        std::sort(shifted.begin(), shifted.end());
        if (shifted != b) return std::nullopt;
        return "M=" + list_str(M.points) + " v=" + vec_str(v) + " t=" + vec_str(t);
    };
    return run_check(catalog, [&](const VertexSetPair& p) -> std::optional<std::string> {
        if (auto w = try_order(p.t0, p.t1)) return w;
        return try_order(p.t1, p.t0);
    });
}

void require_complete(const CharacterisationReport& report, const PairCatalog& catalog) {
    if (report.counterexamples.empty()) return;
    const auto& p = catalog.pairs[report.counterexamples.front()];
    throw Error(Errc::WitnessNotFound, "no witness for T0=" + list_str(p.t0) + " T1=" + list_str(p.t1) + " in " +
                                           catalog.graph);
}

std::uint64_t printed_polar_count(const PolarSpaceDescriptor& d) {
    const std::uint64_t q = d.q;
    const int n = d.rank;
    std::uint64_t r = choose2(d.t + 1) * ((upow(q, n) - 1) / (q - 1));
    for (int i = 0; i <= n - 2; ++i) r *= half_power(q, 2 * (n - i - 1) + d.e_twice) + 1;
    return r;
}

std::uint64_t printed_hyperbolic_count(int m, std::uint64_t q) {
    std::uint64_t r = upow(q, m + 1) * ((upow(q, 2 * m) - 1) / (q - 1));
    for (int i = 0; i <= m - 1; ++i) r *= upow(q, m - i - 1) + 1;
    return r;
}

std::uint64_t printed_elliptic_count(int m, std::uint64_t q) {
    std::uint64_t r = upow(q, m - 1) * choose2(upow(q, m + 1));
    for (int i = 0; i <= m - 2; ++i) r *= upow(q, m - i) + 1;
    return r;
}

CountComparison count_comparison(const PolarSpace& space, const PolarGraph& g, const PairCatalog& catalog) {
    check_graph(g, catalog);
    const auto& prov = g.provenance();
    const auto& d = space.descriptor();
    CountComparison c;
    c.family = prov.family;
    c.q = prov.q;
    c.oracle = catalog.total();
    const std::uint64_t q = prov.q;
    if (prov.kind == GraphKind::affine) {
        if (space.form().epsilon() != prov.epsilon || space.form().dim() != prov.dim) {
            throw Error(Errc::KindMismatch, "polar space does not underlie " + prov.label());
        }
        const int m = prov.m;
        c.m_or_n = m;
        if (prov.epsilon == 1) {
            c.printed = printed_hyperbolic_count(m, q);
            c.derived = choose2(d.t + 1) * upow(q, m + 1) * space.singular_subspaces(m - 2).size();
        } else {
            c.printed = printed_elliptic_count(m, q);
            c.derived = space.maximals().size() * upow(q, m - 1) * choose2(upow(q, m + 1));
        }
    } else {
        c.m_or_n = d.rank;
        c.printed = printed_polar_count(d);
        c.derived = choose2(d.t + 1) * space.singular_subspaces(d.rank - 2).size();
    }
    return c;
}

std::filesystem::path catalog_path(const std::filesystem::path& dir, const std::string& graph, PairKind kind,
                                   std::size_t s) {
    return dir / ("catalog_" + sanitize(graph) + "_" + std::string(pair_kind_name(kind)) + "_s" + std::to_string(s) +
                  ".jsonl");
}

void save_catalog(const PairCatalog& catalog, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto file = catalog_path(dir, catalog.graph, catalog.kind, catalog.s);
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::BadInput, "cannot write " + tmp.string());
        json head = {{"graph", catalog.graph},
                     {"kind", pair_kind_name(catalog.kind)},
                     {"s", catalog.s},
                     {"total", catalog.total()},
                     {"outside_regular", catalog.outside_regular_count()}};
        out << head.dump() << '\n';
        for (const auto& p : catalog.pairs) {
            json line = {{"t0", p.t0}, {"t1", p.t1}, {"outside_regular", p.outside_regular}};
            out << line.dump() << '\n';
        }
        if (!out) throw Error(Errc::BadInput, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

std::optional<PairCatalog> load_catalog(const std::filesystem::path& dir, const std::string& graph, PairKind kind,
                                        std::size_t s) {
    const auto file = catalog_path(dir, graph, kind, s);
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    PairCatalog cat;
    cat.kind = kind;
    cat.s = s;
    cat.graph = graph;
    std::string line;
    try {
        if (!std::getline(in, line)) throw Error(Errc::BadInput, "empty catalog file");
        const auto head = json::parse(line);
        if (head.at("graph") != graph || head.at("kind") != pair_kind_name(kind) || head.at("s") != s) {
            throw Error(Errc::BadInput, "catalog header does not match its key");
        }
        const auto total = head.at("total").get<std::size_t>();
        while (std::getline(in, line)) {
            const auto j = json::parse(line);
            VertexSetPair p{j.at("t0").get<std::vector<std::size_t>>(), j.at("t1").get<std::vector<std::size_t>>(),
                            j.at("outside_regular").get<bool>()};
            if (p.t0.size() != s || p.t1.size() != s || !std::is_sorted(p.t0.begin(), p.t0.end()) ||
                !std::is_sorted(p.t1.begin(), p.t1.end()) || !(p.t0 < p.t1)) {
                throw Error(Errc::BadInput, "malformed pair in catalog");
            }
            if (!cat.pairs.empty() && !(cat.pairs.back() < p)) throw Error(Errc::BadInput, "catalog not sorted");
            cat.pairs.push_back(std::move(p));
        }
        if (cat.pairs.size() != total) throw Error(Errc::BadInput, "catalog truncated");
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, file.string() + ": " + e.what());
    }
    return cat;
}

}  // namespace polar
