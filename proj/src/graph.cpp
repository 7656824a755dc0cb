#include "polar/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace polar {

std::string_view graph_kind_name(GraphKind k) noexcept {
    switch (k) {
        case GraphKind::collinearity: return "collinearity";
        case GraphKind::affine: return "affine";
        case GraphKind::unitary: return "unitary";
        case GraphKind::generic: return "generic";
    }
    return "?";
}

std::string Provenance::label() const {
    if (kind == GraphKind::affine) return family + ":" + std::to_string(m) + ":" + std::to_string(q);
    if (kind == GraphKind::generic) return family;
    return family + ":" + std::to_string(rank) + ":" + std::to_string(q);
}

std::size_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return c;
}

PolarGraph::PolarGraph(std::size_t n, std::vector<std::uint64_t> bits, Provenance prov, std::vector<Vec> labels,
                       gf::Field field)
    : n_(n),
      words_((n + 63) / 64),
      bits_(std::move(bits)),
      prov_(std::move(prov)),
      labels_(std::move(labels)),
      field_(std::move(field)) {
    if (bits_.size() != n_ * words_) throw Error(Errc::DimMismatch, "adjacency storage has wrong size");
    if (!labels_.empty()) {
        if (labels_.size() != n_) throw Error(Errc::DimMismatch, "one label per vertex required");
        label_keys_.reserve(n_);
        for (const auto& l : labels_) label_keys_.push_back(linalg::vector_index(l, prov_.q));
        if (!std::is_sorted(label_keys_.begin(), label_keys_.end())) {
            throw Error(Errc::BadInput, "vertex labels must be in canonical order");
        }
    }
}

PolarGraph PolarGraph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                                  Provenance prov) {
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw Error(Errc::BadInput, "edge endpoint out of range");
        if (a == b) throw Error(Errc::BadInput, "loops are not allowed");
        bits[a * words + (b >> 6)] |= std::uint64_t{1} << (b & 63);
        bits[b * words + (a >> 6)] |= std::uint64_t{1} << (a & 63);
    }
    return PolarGraph(n, std::move(bits), std::move(prov));
}

std::size_t PolarGraph::degree(std::size_t i) const noexcept {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(i)[w]));
    return d;
}

std::vector<std::size_t> PolarGraph::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    const auto* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t PolarGraph::edge_count() const noexcept {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n_; ++i) total += degree(i);
    return total / 2;
}

std::optional<std::size_t> PolarGraph::vertex_of(std::span<const gf::Code> v) const {
    if (labels_.empty() || v.size() != labels_.front().size()) return std::nullopt;
    std::uint64_t key = 0;
    if (prov_.kind == GraphKind::affine || !field_) {
        key = linalg::vector_index(v, prov_.q);
    } else {
        if (linalg::is_zero(v)) return std::nullopt;
        key = linalg::vector_index(linalg::normalize(*field_, Vec(v.begin(), v.end())), prov_.q);
    }
    const auto it = std::lower_bound(label_keys_.begin(), label_keys_.end(), key);
    if (it == label_keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - label_keys_.begin());
}

namespace {

Provenance field_provenance(const gf::FieldContext& f) {
    Provenance p;
    p.q = f.q();
    p.p = f.p();
    p.k = f.k();
    p.modulus = f.modulus();
    return p;
}

}  // namespace

Provenance space_provenance(const PolarSpace& space) {
    Provenance prov = field_provenance(space.ctx());
    const auto& d = space.descriptor();
    prov.family = std::string(family_name(d.family));
    prov.kind = d.family == Family::u ? GraphKind::unitary : GraphKind::collinearity;
    prov.dim = d.dim;
    prov.rank = d.rank;
    prov.t = d.t;
    prov.e_twice = d.e_twice;
    prov.epsilon = space.form().epsilon();
    return prov;
}

PolarGraph collinearity_graph(const PolarSpace& space) {
    if (space.rank() < 2) {
        throw Error(Errc::RankTooLow, "collinearity graph needs rank >= 2 (rank is " + std::to_string(space.rank()) +
                                          "; the graph would be edgeless)");
    }
    const std::size_t n = space.point_count();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    std::vector<Vec> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(space.points()[i].rep);
        for (std::size_t j = 0; j < n; ++j) {
            if (space.collinear(i, j)) bits[i * words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        }
    }
    return PolarGraph(n, std::move(bits), space_provenance(space), std::move(labels), space.form().field());
}

PolarGraph affine_polar_graph(int m, int epsilon, const gf::Field& field, std::size_t max_vertices) {
    if (m < 1 || (epsilon != 1 && epsilon != -1)) throw Error(Errc::BadInput, "affine graph needs m >= 1, eps = +-1");
    const Form form = Form::standard(epsilon == 1 ? Family::o_plus : Family::o_minus, 2 * std::size_t(m), field);
    const auto& f = *field;
    const std::size_t dim = form.dim();
    std::uint64_t n64 = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        n64 *= f.q();
        if (n64 > max_vertices) {
            throw Error(Errc::CapExceeded, "VO graph has more than " + std::to_string(max_vertices) + " vertices");
        }
    }
    const auto n = static_cast<std::size_t>(n64);
    std::vector<Vec> labels;
    labels.reserve(n);
    std::vector<Vec> singular;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(linalg::vector_from_index(i, f.q(), dim));
        if (i != 0 && form.q_code(labels.back()) == 0) singular.push_back(labels.back());
    }
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (const auto& s : singular) {
            const auto y = static_cast<std::size_t>(linalg::vector_index(linalg::add(f, labels[x], s), f.q()));
            bits[x * words + (y >> 6)] |= std::uint64_t{1} << (y & 63);
        }
    }
    Provenance prov = field_provenance(f);
    prov.family = epsilon == 1 ? "vo+" : "vo-";
    prov.kind = GraphKind::affine;
    prov.dim = dim;
    prov.m = m;
    prov.epsilon = epsilon;
    return PolarGraph(n, std::move(bits), std::move(prov), std::move(labels), field);
}

PolarGraph unitary_graph(const gf::Field& field, std::size_t dim) {
    const Form form = Form::standard(Family::u, dim, field);
    const auto& f = *field;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= f.q();
    std::vector<Vec> labels;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec v = linalg::vector_from_index(idx, f.q(), dim);
        const auto lead = std::find_if(v.begin(), v.end(), [](gf::Code c) { return c != 0; });
        if (*lead != 1) continue;
        if (form.orth_code(v, v) == 0) labels.push_back(std::move(v));
    }
    const std::size_t n = labels.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (form.orth_code(labels[i], labels[j]) == 0) {
                bits[i * words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
                bits[j * words + (i >> 6)] |= std::uint64_t{1} << (i & 63);
            }
        }
    }
    Provenance prov = field_provenance(f);
    prov.family = "u";
    prov.kind = GraphKind::unitary;
    prov.dim = dim;
    prov.rank = static_cast<int>(dim / 2);
    const auto [t, e_twice] = table_order_and_e(Family::u, dim, f);
    prov.t = t;
    prov.e_twice = e_twice;
    return PolarGraph(n, std::move(bits), std::move(prov), std::move(labels), field);
}

namespace {

bool connected(const PolarGraph& g, bool complement) {
    const std::size_t n = g.order();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const auto x = todo.front();
        todo.pop();
        for (std::size_t y = 0; y < n; ++y) {
            if (seen[y] || y == x || g.adjacent(x, y) == complement) continue;
            seen[y] = 1;
            ++reached;
            todo.push(y);
        }
    }
    return reached == n;
}

}  // namespace

SrgParams srg_check(const PolarGraph& g) {
    const std::size_t n = g.order();
    if (n < 2) throw Error(Errc::NotStronglyRegular, "graph too small");
    const std::size_t k = g.degree(0);
    for (std::size_t i = 1; i < n; ++i) {
        if (g.degree(i) != k) {
            throw Error(Errc::NotRegular, "vertex " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) +
                                              ", vertex 0 has " + std::to_string(k));
        }
    }
    std::optional<std::size_t> lambda;
    std::optional<std::size_t> mu;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t c = popcount_and(g.row(i), g.row(j), g.words());
            auto& slot = g.adjacent(i, j) ? lambda : mu;
            if (slot && *slot != c) {
                throw Error(Errc::NotStronglyRegular, "pair (" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                                                          std::to_string(c) + " common neighbours");
            }
            slot = c;
        }
    }
    if (!connected(g, false) || !connected(g, true) || !mu || !lambda) {
        throw Error(Errc::Imprimitive, "graph or its complement is disconnected");
    }
    return SrgParams{static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), static_cast<std::int64_t>(*lambda),
                     static_cast<std::int64_t>(*mu)};
}

}  // namespace polar
