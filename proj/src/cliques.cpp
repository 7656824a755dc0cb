#include <algorithm>
#include <bit>

#include "polar/graph.hpp"
#include "polar/parallel.hpp"

namespace polar {

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) noexcept {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

void clear_up_to(Bits& b, std::size_t v) noexcept {
    // Clears bits 0..v inclusive.
    const std::size_t w = v >> 6;
    for (std::size_t i = 0; i < w; ++i) b[i] = 0;
    const unsigned shift = static_cast<unsigned>(v & 63);
    b[w] &= shift == 63 ? 0 : ~((std::uint64_t{2} << shift) - 1);
}

void extend(const PolarGraph& g, std::vector<std::size_t>& cur, Bits cand, std::size_t s,
            std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == s) {
        out.push_back(cur);
        return;
    }
    const std::size_t need = s - cur.size();
    std::size_t avail = popcount(cand);
    for (std::size_t w = 0; w < cand.size() && avail >= need; ++w) {
        while (cand[w] && avail >= need) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
            cand[w] &= cand[w] - 1;
            --avail;
            Bits next = cand;
            const auto* r = g.row(v);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] &= r[i];
            cur.push_back(v);
            extend(g, cur, std::move(next), s, out);
            cur.pop_back();
        }
    }
}

void bron_kerbosch(const PolarGraph& g, std::vector<std::size_t>& r, Bits p, Bits x, std::size_t min_size,
                   std::vector<std::vector<std::size_t>>& out) {
    const std::size_t words = g.words();
    if (popcount(p) == 0) {
        if (popcount(x) == 0 && r.size() >= min_size) {
            auto c = r;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
        }
        return;
    }
    if (r.size() + popcount(p) < min_size) return;
    // Pivot: vertex of P u X with most neighbours in P.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t both = p[w] | x[w];
        while (both) {
            const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
            both &= both - 1;
            const std::size_t c = popcount_and(g.row(u), p.data(), words);
            if (!have || c > best) {
                pivot = u;
                best = c;
                have = true;
            }
        }
    }
    Bits todo = p;
    const auto* pr = g.row(pivot);
    for (std::size_t w = 0; w < words; ++w) todo[w] &= ~pr[w];
    for (std::size_t w = 0; w < words; ++w) {
        while (todo[w]) {
            const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(todo[w]));
            todo[w] &= todo[w] - 1;
            Bits np(words), nx(words);
            const auto* vr = g.row(v);
            for (std::size_t i = 0; i < words; ++i) {
                np[i] = p[i] & vr[i];
                nx[i] = x[i] & vr[i];
            }
            r.push_back(v);
            bron_kerbosch(g, r, std::move(np), std::move(nx), min_size, out);
            r.pop_back();
            p[w] &= ~(std::uint64_t{1} << (v & 63));
            x[w] |= std::uint64_t{1} << (v & 63);
        }
    }
}

}  // namespace

std::optional<std::int64_t> delsarte_bound(const SrgParams& params, const SpectrumInfo& spec) {
    const std::int64_t m = -spec.theta2;
    if (m <= 0 || params.k % m != 0) return std::nullopt;
    return 1 + params.k / m;
}

std::vector<std::vector<std::size_t>> cliques_of_size(const PolarGraph& g, std::size_t s, unsigned workers) {
    using Clique = std::vector<std::size_t>;
    if (s == 0) return {Clique{}};
    const std::size_t n = g.order();
    return parallel_collect<Clique>(n, workers, [&](std::size_t b, std::size_t e) {
        std::vector<Clique> out;
        Clique cur;
        for (std::size_t v = b; v < e; ++v) {
            Bits cand(g.row(v), g.row(v) + g.words());
            clear_up_to(cand, v);
            cur.assign(1, v);
            extend(g, cur, std::move(cand), s, out);
        }
        return out;
    });
}

std::vector<std::vector<std::size_t>> maximal_cliques(const PolarGraph& g, std::size_t min_size) {
    const std::size_t words = g.words();
    Bits p(words, 0), x(words, 0);
    for (std::size_t v = 0; v < g.order(); ++v) p[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> r;
    bron_kerbosch(g, r, std::move(p), std::move(x), min_size, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::int64_t> clique_nexus(const PolarGraph& g, std::span<const std::size_t> clique) {
    Bits mask(g.words(), 0);
    for (auto v : clique) mask[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::optional<std::int64_t> nexus;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if ((mask[x >> 6] >> (x & 63)) & 1u) continue;
        const auto c = static_cast<std::int64_t>(popcount_and(g.row(x), mask.data(), g.words()));
        if (nexus && *nexus != c) return std::nullopt;
        nexus = c;
    }
    return nexus;
}

std::vector<CliqueInfo> delsarte_cliques(const PolarGraph& g, const SrgParams& params, const SpectrumInfo& spec,
                                         unsigned workers) {
    const auto bound = delsarte_bound(params, spec);
    if (!bound) return {};
    const std::int64_t m = -spec.theta2;
    const std::optional<std::int64_t> expected_nexus =
        params.mu % m == 0 ? std::optional<std::int64_t>(params.mu / m) : std::nullopt;
    std::vector<CliqueInfo> out;
    for (auto& c : cliques_of_size(g, static_cast<std::size_t>(*bound), workers)) {
        CliqueInfo info;
        info.nexus = clique_nexus(g, c);
        info.is_delsarte = info.nexus.has_value() && info.nexus == expected_nexus;
        info.vertices = std::move(c);
        out.push_back(std::move(info));
    }
    return out;
}

std::pair<CliqueInfo, CliqueInfo> max_intersecting_delsarte_pair(const std::vector<CliqueInfo>& cliques) {
    if (cliques.size() < 2) throw Error(Errc::FewerThanTwoCliques, "need at least two Delsarte cliques");
    std::size_t best_i = 0, best_j = 1, best = 0;
    bool have = false;
    std::vector<std::size_t> scratch;
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        for (std::size_t j = i + 1; j < cliques.size(); ++j) {
            scratch.clear();
            std::set_intersection(cliques[i].vertices.begin(), cliques[i].vertices.end(), cliques[j].vertices.begin(),
                                  cliques[j].vertices.end(), std::back_inserter(scratch));
            if (!have || scratch.size() > best) {
                best = scratch.size();
                best_i = i;
                best_j = j;
                have = true;
            }
        }
    }
    return {cliques[best_i], cliques[best_j]};
}

}  // namespace polar
