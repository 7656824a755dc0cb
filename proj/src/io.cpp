#include "polar/io.hpp"

#include <istream>
#include <sstream>

namespace polar::io {

using nlohmann::json;

json provenance_to_json(const Provenance& p) {
    return json{{"family", p.family},
                {"kind", graph_kind_name(p.kind)},
                {"label", p.label()},
                {"q", p.q},
                {"p", p.p},
                {"k", p.k},
                {"modulus", p.modulus},
                {"dim", p.dim},
                {"rank", p.rank},
                {"m", p.m},
                {"epsilon", p.epsilon},
                {"t", p.t},
                {"e_twice", p.e_twice}};
}

Provenance provenance_from_json(const json& j) {
    try {
        Provenance p;
        p.family = j.at("family").get<std::string>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "collinearity") p.kind = GraphKind::collinearity;
        else if (kind == "affine") p.kind = GraphKind::affine;
        else if (kind == "unitary") p.kind = GraphKind::unitary;
        else if (kind == "generic") p.kind = GraphKind::generic;
        else throw Error(Errc::BadInput, "unknown graph kind " + kind);
        p.q = j.at("q").get<gf::Code>();
        p.p = j.at("p").get<unsigned>();
        p.k = j.at("k").get<unsigned>();
        p.modulus = j.at("modulus").get<std::vector<unsigned>>();
        p.dim = j.at("dim").get<std::size_t>();
        p.rank = j.at("rank").get<int>();
        p.m = j.at("m").get<int>();
        p.epsilon = j.at("epsilon").get<int>();
        p.t = j.at("t").get<std::uint64_t>();
        p.e_twice = j.at("e_twice").get<int>();
        return p;
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("provenance: ") + e.what());
    }
}

json eigenfunction_to_json(const Eigenfunction& f) {
    json entries = json::array();
    for (const auto& [v, x] : f.values) {
        entries.push_back(json::array({v, x.get_num().get_str(), x.get_den().get_str()}));
    }
    return json{{"graph", provenance_to_json(f.graph)}, {"theta", f.theta}, {"entries", std::move(entries)}};
}

namespace {

mpz_class integer_from(const json& j) {
    mpz_class z;
    const std::string s = j.is_string() ? j.get<std::string>() : j.dump();
    if (z.set_str(s, 10) != 0) throw Error(Errc::BadInput, "not an integer: " + s);
    return z;
}

}  // namespace

Eigenfunction eigenfunction_from_json(const json& j) {
    try {
        Eigenfunction f;
        f.graph = provenance_from_json(j.at("graph"));
        f.theta = j.at("theta").get<std::int64_t>();
        for (const auto& e : j.at("entries")) {
            if (!e.is_array() || e.size() != 3) throw Error(Errc::BadInput, "entry must be [vertex, num, den]");
            const auto v = e[0].get<std::size_t>();
            const mpz_class num = integer_from(e[1]);
            const mpz_class den = integer_from(e[2]);
            if (den == 0) throw Error(Errc::BadInput, "zero denominator at vertex " + std::to_string(v));
            mpq_class x(num, den);
            x.canonicalize();
            if (f.values.count(v)) throw Error(Errc::BadInput, "duplicate vertex " + std::to_string(v));
            if (x != 0) f.values[v] = x;
        }
        return f;
    } catch (const json::exception& e) {
        throw Error(Errc::BadInput, std::string("eigenfunction: ") + e.what());
    }
}

std::string eigenfunction_to_csv(const Eigenfunction& f) {
    std::string out = "vertex,value\n";
    for (const auto& [v, x] : f.values) out += std::to_string(v) + "," + x.get_str() + "\n";
    return out;
}

Eigenfunction eigenfunction_from_csv(std::istream& in, std::int64_t theta, Provenance prov) {
    Eigenfunction f;
    f.theta = theta;
    f.graph = std::move(prov);
    std::string line;
    if (!std::getline(in, line) || (line != "vertex,value" && line != "vertex,value\r")) {
        throw Error(Errc::BadInput, "CSV header must be vertex,value");
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(Errc::BadInput, "row " + std::to_string(row) + " lacks a comma");
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoull(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(Errc::BadInput, "row " + std::to_string(row) + ": bad vertex");
        }
        mpq_class x;
        if (x.set_str(line.substr(comma + 1), 10) != 0 || x.get_den() == 0) {
            throw Error(Errc::BadInput, "row " + std::to_string(row) + ": bad value");
        }
        x.canonicalize();
        if (f.values.count(v)) throw Error(Errc::BadInput, "duplicate vertex " + std::to_string(v));
        if (x != 0) f.values[v] = x;
    }
    return f;
}

std::string to_edge_list(const PolarGraph& g) {
    std::string out;
    for (std::size_t u = 0; u < g.order(); ++u) {
        for (auto v : g.neighbors(u)) {
            if (v > u) out += std::to_string(u) + " " + std::to_string(v) + "\n";
        }
    }
    return out;
}

std::string to_graph6(const PolarGraph& g) {
    const std::uint64_t n = g.order();
    std::string out;
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else if (n <= 258047) {
        out += static_cast<char>(126);
        for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
    } else {
        out += static_cast<char>(126);
        out += static_cast<char>(126);
        for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
    }
    // Upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    unsigned acc = 0;
    int bits = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
            if (++bits == 6) {
                out += static_cast<char>(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if (bits > 0) out += static_cast<char>((acc << (6 - bits)) + 63);
    out += '\n';
    return out;
}

PolarGraph from_graph6(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
    std::size_t pos = 0;
    auto take = [&]() -> unsigned {
        if (pos >= s.size()) throw Error(Errc::BadInput, "graph6 string truncated");
        const int c = static_cast<unsigned char>(s[pos++]) - 63;
        if (c < 0 || c > 63) throw Error(Errc::BadInput, "graph6 byte out of range");
        return static_cast<unsigned>(c);
    };
    std::uint64_t n = 0;
    if (!s.empty() && s[0] == '~') {
        ++pos;
        int groups = 3;
        if (s.size() > 1 && s[1] == '~') {
            ++pos;
            groups = 6;
        }
        for (int i = 0; i < groups; ++i) n = (n << 6) | take();
    } else {
        n = take();
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    unsigned acc = 0;
    int bits = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (bits == 0) {
                acc = take();
                bits = 6;
            }
            --bits;
            if ((acc >> bits) & 1u) edges.emplace_back(i, j);
        }
    }
    if (pos != s.size()) throw Error(Errc::BadInput, "trailing bytes in graph6 string");
    return PolarGraph::from_edges(static_cast<std::size_t>(n), edges);
}

json graph_to_json(const PolarGraph& g) {
    json adj = json::array();
    for (std::size_t u = 0; u < g.order(); ++u) adj.push_back(g.neighbors(u));
    json j{{"provenance", provenance_to_json(g.provenance())},
           {"order", g.order()},
           {"edges", g.edge_count()},
           {"adjacency", std::move(adj)}};
    j["labels"] = g.labels();
    return j;
}

}  // namespace polar::io
