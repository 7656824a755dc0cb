#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polar/eigenfunction.hpp"
#include "polar/io.hpp"
#include "polar/oracle.hpp"

namespace polar::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string family;
    int n = 2;
    int m = 2;
    std::uint64_t q = 0;
    unsigned workers = 1;
    std::string cache;
    std::size_t cap = kDefaultVertexCap;
    std::string format;
    std::string out;
};

void add_graph_options(CLI::App* sub, RunConfig& cfg, bool with_family) {
    if (with_family) {
        sub->add_option("--family", cfg.family, "sp, o+, o, o-, u, vo+ or vo-")
            ->required()
            ->check(CLI::IsMember({"sp", "o+", "o", "o-", "u", "vo+", "vo-"}));
        sub->add_option("--n", cfg.n, "polar rank (polar families)");
        sub->add_option("--m", cfg.m, "half-dimension (affine families)");
        sub->add_option("--q", cfg.q, "field order, a prime power")->required();
    }
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--cache", cfg.cache, "cache directory")->envname("POLAR_EIG_CACHE");
    sub->add_option("--cap", cfg.cap, "maximum number of vertices");
}

std::uint64_t checked_pow(std::uint64_t b, std::size_t e, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= b;
        if (r > limit) return limit + 1;
    }
    return r;
}

struct Built {
    std::optional<PolarSpace> space;  // the graph's polar space, or O^eps(2m,q) for affine graphs
    std::optional<PolarGraph> graph;
};

std::size_t polar_dim(Family fam, int n) {
    switch (fam) {
        case Family::sp:
        case Family::o_plus:
        case Family::u: return 2 * static_cast<std::size_t>(n);
        case Family::o: return 2 * static_cast<std::size_t>(n) + 1;
        case Family::o_minus: return 2 * static_cast<std::size_t>(n) + 2;
    }
    return 0;
}

Built build_graph(const RunConfig& cfg) {
    const auto field = gf::field_from_order(cfg.q);
    EnumerationOptions opts;
    opts.workers = cfg.workers;
    if (!cfg.cache.empty()) opts.cache_dir = cfg.cache;
    Built b;
    if (cfg.family == "vo+" || cfg.family == "vo-") {
        if (cfg.m < 1) throw ConfigError("--m must be at least 1");
        const int eps = cfg.family == "vo+" ? 1 : -1;
        b.graph.emplace(affine_polar_graph(cfg.m, eps, field, cfg.cap));
        b.space.emplace(Form::standard(eps == 1 ? Family::o_plus : Family::o_minus, 2 * std::size_t(cfg.m), field),
                        opts);
        return b;
    }
    if (cfg.n < 1) throw ConfigError("--n must be at least 1");
    const Family fam = *parse_family(cfg.family);
    const Form form = Form::standard(fam, polar_dim(fam, cfg.n), field);
    // Count singular points before enumerating anything else.
    const std::uint64_t total = checked_pow(cfg.q, form.dim(), std::uint64_t{1} << 26);
    if (total > (std::uint64_t{1} << 26)) throw Error(Errc::CapExceeded, "ambient space too large");
    std::size_t points = 0;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const Vec v = linalg::vector_from_index(idx, field->q(), form.dim());
        const auto lead = std::find_if(v.begin(), v.end(), [](gf::Code c) { return c != 0; });
        if (*lead == 1 && form.is_singular(v)) ++points;
    }
    if (points > cfg.cap) {
        throw Error(Errc::CapExceeded, std::to_string(points) + " vertices exceed the cap of " + std::to_string(cfg.cap));
    }
    b.space.emplace(form, opts);
    b.graph.emplace(collinearity_graph(*b.space));
    return b;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw IoError("write failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json optional_int(const std::optional<std::int64_t>& x) { return x ? json(*x) : json(nullptr); }

int cmd_build(const RunConfig& cfg, std::ostream& out) {
    auto b = build_graph(cfg);
    const auto& g = *b.graph;
    const auto params = srg_check(g);
    const auto spec = spectrum(params);
    const auto closed = closed_form_eigenvalues(g.provenance());
    const auto dsize = delsarte_bound(params, spec);
    std::optional<std::int64_t> nexus;
    if (dsize && params.mu % -spec.theta2 == 0) nexus = params.mu / -spec.theta2;
    json j{{"graph", g.provenance().label()},
           {"v", params.v},
           {"k", params.k},
           {"lambda", params.lambda},
           {"mu", params.mu},
           {"theta1", spec.theta1},
           {"theta2", spec.theta2},
           {"mult1", spec.mult1},
           {"mult2", spec.mult2},
           {"delsarte_size", optional_int(dsize)},
           {"nexus", optional_int(nexus)},
           {"wdb_theta1", wdb(spec.theta1, params)},
           {"wdb_theta2", wdb(spec.theta2, params)},
           {"closed_form_matches", closed && closed->theta1 == spec.theta1 && closed->theta2 == spec.theta2}};
    if (g.provenance().kind == GraphKind::affine) {
        const auto& p = g.provenance();
        j["labelled_theta1"] = closed->labelled_theta1;
        j["labelled_theta2"] = closed->labelled_theta2;
        // 1 + (q^m - eps)(q^{m-1} + eps) / (eps q^{m-1} + 1), printed for comparison only.
        mpz_class qm, qm1;
        mpz_ui_pow_ui(qm.get_mpz_t(), p.q, static_cast<unsigned long>(p.m));
        mpz_ui_pow_ui(qm1.get_mpz_t(), p.q, static_cast<unsigned long>(p.m - 1));
        mpq_class formula(mpz_class((qm - p.epsilon) * (qm1 + p.epsilon)), mpz_class(p.epsilon * qm1 + 1));
        formula.canonicalize();
        formula += 1;
        j["formula_delsarte_size"] = formula.get_str();
    }
    emit(out, j);
    if (!cfg.out.empty()) {
        const std::string fmt = cfg.format.empty() ? "edge-list" : cfg.format;
        if (fmt == "edge-list") write_file(cfg.out, io::to_edge_list(g));
        else if (fmt == "graph6") write_file(cfg.out, io::to_graph6(g));
        else if (fmt == "json") write_file(cfg.out, io::graph_to_json(g).dump(2) + "\n");
        else throw ConfigError("unknown graph format " + fmt);
    }
    return kOk;
}

struct Witness {
    std::size_t L = 0;
    std::size_t M = 0;
    std::size_t N = 1;
    std::optional<std::size_t> v;
    std::optional<std::size_t> t;
};

template <class T>
const T& pick(const std::vector<T>& xs, std::size_t i, const char* what) {
    if (i >= xs.size()) {
        throw ConfigError(std::string(what) + " index " + std::to_string(i) + " out of range (" +
                          std::to_string(xs.size()) + " choices)");
    }
    return xs[i];
}

Eigenfunction construct(const std::string& which, const Built& b, const SrgParams& params, const Witness& w,
                        unsigned workers) {
    const auto& g = *b.graph;
    const auto& space = *b.space;
    const auto kind = g.provenance().kind;
    const bool affine = kind == GraphKind::affine;
    if (which == "theta1-polar") {
        if (affine) throw ConfigError("theta1-polar needs a polar family");
        const auto& L = pick(space.singular_subspaces(space.rank() - 2), w.L, "L");
        const auto sigma = space.sigma_L(L);
        return theta1_polar(space, L, pick(sigma, w.M, "M"), pick(sigma, w.N, "N"));
    }
    if (which == "theta1-hyperbolic") {
        if (!affine || g.provenance().epsilon != 1) throw ConfigError("theta1-hyperbolic needs vo+");
        const auto& L = pick(space.singular_subspaces(space.rank() - 2), w.L, "L");
        const auto sigma = space.sigma_L(L);
        const Vec& v = pick(g.labels(), w.v.value_or(0), "v");
        return theta1_hyperbolic(space, g, v, L, pick(sigma, w.M, "M"), pick(sigma, w.N, "N"));
    }
    if (which == "theta1-elliptic") {
        if (!affine || g.provenance().epsilon != -1) throw ConfigError("theta1-elliptic needs vo-");
        const auto& M = pick(space.maximals(), w.M, "M");
        const Vec& v = pick(g.labels(), w.v.value_or(0), "v");
        Vec t;
        if (w.t) {
            t = pick(g.labels(), *w.t, "t");
        } else {
            // Least vector of Aff(M)^perp outside Aff(M).
            const auto& f = space.ctx();
            std::optional<std::uint64_t> best;
            for (const auto& x : linalg::span_vectors(f, space.form().perp(M.basis), space.form().dim())) {
                if (linalg::in_span(f, M.basis, x)) continue;
                const auto idx = linalg::vector_index(x, f.q());
                if (!best || idx < *best) {
                    best = idx;
                    t = x;
                }
            }
            if (!best) throw ConfigError("Aff(M)^perp has no vector outside Aff(M)");
        }
        return theta1_elliptic(space, g, v, M, t);
    }
    if (which == "theta1-cliquepair") {
        const auto spec = spectrum(params);
        const auto cliques = delsarte_cliques(g, params, spec, workers);
        const auto [c0, c1] = max_intersecting_delsarte_pair(cliques);
        return theta1_from_clique_pair(g, params, c0, c1);
    }
    if (which == "theta2-unitary") {
        if (kind != GraphKind::unitary || g.provenance().dim != 4) throw ConfigError("theta2-unitary needs u with n=2");
        return theta2_unitary(g);
    }
    throw ConfigError("unknown construction " + which);
}

json report_json(const Provenance& prov, const WdbReport& r) {
    return json{{"graph", prov.label()},
                {"valid", true},
                {"theta", r.theta},
                {"bound", optional_int(r.bound)},
                {"support_size", r.support_size},
                {"tight", r.tight}};
}

int cmd_eigenfunction(const RunConfig& cfg, const std::string& which, const Witness& w, std::ostream& out) {
    auto b = build_graph(cfg);
    const auto params = srg_check(*b.graph);
    const auto f = construct(which, b, params, w, cfg.workers);
    const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
    if (fmt != "json" && fmt != "csv") throw ConfigError("eigenfunction format must be json or csv");
    try {
        const auto r = verify_eigenfunction(*b.graph, f, params);
        auto j = report_json(f.graph, r);
        j["construct"] = which;
        emit(out, j);
        if (!cfg.out.empty()) {
            write_file(cfg.out, fmt == "json" ? io::eigenfunction_to_json(f).dump(2) + "\n" : io::eigenfunction_to_csv(f));
        }
        return r.tight ? kOk : kVerificationFailed;
    } catch (const EigenfunctionViolation& e) {
        emit(out, json{{"graph", f.graph.label()},
                       {"construct", which},
                       {"valid", false},
                       {"vertex", e.vertex()},
                       {"lhs", e.lhs()},
                       {"rhs", e.rhs()}});
        return kVerificationFailed;
    }
}

std::size_t default_s(const std::string& kind, const SpectrumInfo& spec) {
    return static_cast<std::size_t>(kind == "isolated" ? spec.theta1 + 1 : -spec.theta2);
}

PairCatalog catalog_for(const RunConfig& cfg, const PolarGraph& g, PairKind kind, std::size_t s) {
    if (!cfg.cache.empty()) {
        if (auto cat = load_catalog(cfg.cache, g.provenance().label(), kind, s)) return *cat;
    }
    auto cat = kind == PairKind::isolated_cliques ? enumerate_isolated_clique_pairs(g, s, cfg.workers)
                                                  : enumerate_bipartite_pairs(g, s, cfg.workers);
    if (!cfg.cache.empty()) save_catalog(cat, cfg.cache);
    return cat;
}

std::optional<CharacterisationReport> characterise(const Built& b, const PairCatalog& cat) {
    const auto& prov = b.graph->provenance();
    if (prov.kind != GraphKind::affine) return check_polar_characterisation(*b.space, cat);
    if (prov.epsilon == 1) return check_hyperbolic_characterisation(*b.space, *b.graph, cat);
    return check_elliptic_characterisation(*b.space, *b.graph, cat);
}

int cmd_enumerate(const RunConfig& cfg, const std::string& kind_name, std::optional<std::size_t> s_opt,
                  std::ostream& out) {
    auto b = build_graph(cfg);
    const auto params = srg_check(*b.graph);
    const auto spec = spectrum(params);
    const std::size_t s = s_opt.value_or(default_s(kind_name, spec));
    const PairKind kind = kind_name == "isolated" ? PairKind::isolated_cliques : PairKind::complete_bipartite;
    const auto cat = catalog_for(cfg, *b.graph, kind, s);
    json j{{"graph", cat.graph},
           {"kind", pair_kind_name(cat.kind)},
           {"s", cat.s},
           {"total", cat.total()},
           {"outside_regular", cat.outside_regular_count()},
           {"characterisation", nullptr}};
    int code = kOk;
    if (kind == PairKind::isolated_cliques && static_cast<std::int64_t>(s) == spec.theta1 + 1) {
        const auto rep = characterise(b, cat);
        j["characterisation"] = json{{"checked", rep->checked},
                                     {"witnessed", rep->witnessed},
                                     {"counterexamples", rep->counterexamples}};
        if (!rep->complete()) code = kFormulaMismatch;
    }
    emit(out, j);
    if (!cfg.out.empty()) {
        std::string lines;
        for (const auto& p : cat.pairs) {
            lines += json{{"t0", p.t0}, {"t1", p.t1}, {"outside_regular", p.outside_regular}}.dump() + "\n";
        }
        write_file(cfg.out, lines);
    }
    return code;
}

int cmd_count_check(const RunConfig& cfg, std::ostream& out) {
    auto b = build_graph(cfg);
    const auto spec = spectrum(srg_check(*b.graph));
    const auto cat = catalog_for(cfg, *b.graph, PairKind::isolated_cliques, default_s("isolated", spec));
    const auto c = count_comparison(*b.space, *b.graph, cat);
    emit(out, json{{"family", c.family},
                   {"q", c.q},
                   {"m_or_n", c.m_or_n},
                   {"oracle", c.oracle},
                   {"printed", c.printed},
                   {"derived", c.derived},
                   {"printed_matches", c.printed_matches()},
                   {"derived_matches", c.derived_matches()}});
    return c.printed_matches() && c.derived_matches() ? kOk : kFormulaMismatch;
}

RunConfig parse_graph_spec(const std::string& spec, RunConfig cfg) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("--graph must look like family:n:q");
    cfg.family = spec.substr(0, a);
    if (cfg.family != "vo+" && cfg.family != "vo-" && !parse_family(cfg.family)) {
        throw ConfigError("unknown family " + cfg.family);
    }
    try {
        const int size = std::stoi(spec.substr(a + 1, b - a - 1));
        (cfg.family.rfind("vo", 0) == 0 ? cfg.m : cfg.n) = size;
        cfg.q = std::stoull(spec.substr(b + 1));
    } catch (const std::exception&) {
        throw ConfigError("--graph must look like family:n:q");
    }
    return cfg;
}

int cmd_verify(const RunConfig& base, const std::string& graph_spec, const std::string& path,
               std::optional<std::int64_t> theta, std::ostream& out) {
    const RunConfig cfg = parse_graph_spec(graph_spec, base);
    const std::string text = read_file(path);
    auto b = build_graph(cfg);
    const auto& g = *b.graph;
    Eigenfunction f;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(Errc::BadInput, std::string("malformed JSON: ") + e.what());
        }
        f = io::eigenfunction_from_json(j);
        if (f.graph.label() != g.provenance().label()) {
            throw ConfigError("function was built for " + f.graph.label() + ", not " + g.provenance().label());
        }
        if (theta && *theta != f.theta) throw ConfigError("--theta disagrees with the file");
    } else {
        if (!theta) throw ConfigError("CSV functions need --theta");
        std::istringstream in(text);
        f = io::eigenfunction_from_csv(in, *theta, g.provenance());
    }
    const auto params = srg_check(g);
    try {
        emit(out, report_json(g.provenance(), verify_eigenfunction(g, f, params)));
        return kOk;
    } catch (const EigenfunctionViolation& e) {
        emit(out, json{{"graph", g.provenance().label()},
                       {"valid", false},
                       {"vertex", e.vertex()},
                       {"lhs", e.lhs()},
                       {"rhs", e.rhs()}});
        return kVerificationFailed;
    } catch (const Error& e) {
        if (e.code() == Errc::ZeroFunction || e.code() == Errc::NotNonPrincipal || e.code() == Errc::BadInput) {
            emit(out, json{{"graph", g.provenance().label()}, {"valid", false}, {"error", e.what()}});
            return kVerificationFailed;
        }
        throw;
    }
}

int exit_for(Errc code) {
    switch (code) {
        case Errc::CapExceeded: return kCapExceeded;
        default: return kInvalidConfig;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polar spaces, polar graphs and their minimum-support eigenfunctions"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* build = app.add_subcommand("build", "build a graph and print its parameters");
    add_graph_options(build, cfg, true);
    build->add_option("--format", cfg.format, "export format")->check(CLI::IsMember({"edge-list", "graph6", "json"}));
    build->add_option("--out", cfg.out, "export file");

    auto* eig = app.add_subcommand("eigenfunction", "construct and verify an optimal eigenfunction");
    add_graph_options(eig, cfg, true);
    std::string construct_name;
    Witness w;
    eig->add_option("--construct", construct_name)
        ->required()
        ->check(CLI::IsMember(
            {"theta1-polar", "theta1-hyperbolic", "theta1-elliptic", "theta1-cliquepair", "theta2-unitary"}));
    eig->add_option("--L", w.L, "index of L among (n-2)-subspaces");
    eig->add_option("--M", w.M, "index of M in Sigma_L (maximals for theta1-elliptic)");
    eig->add_option("--N", w.N, "index of N in Sigma_L");
    eig->add_option("--v", w.v, "shift vector, as a vertex index");
    eig->add_option("--t", w.t, "translation vector, as a vertex index");
    eig->add_option("--format", cfg.format, "function file format")->check(CLI::IsMember({"json", "csv"}));
    eig->add_option("--out", cfg.out, "function file");

    auto* en = app.add_subcommand("enumerate", "enumerate candidate support pairs");
    add_graph_options(en, cfg, true);
    std::string pair_kind = "isolated";
    std::optional<std::size_t> s;
    en->add_option("--kind", pair_kind)->check(CLI::IsMember({"isolated", "bipartite"}));
    en->add_option("--s", s, "part size (default theta1+1 or -theta2)");
    en->add_option("--out", cfg.out, "catalog file (JSON lines)");

    auto* cc = app.add_subcommand("count-check", "compare counting formulas with exhaustive enumeration");
    add_graph_options(cc, cfg, true);

    auto* ver = app.add_subcommand("verify", "re-check a stored eigenfunction");
    add_graph_options(ver, cfg, false);
    std::string graph_spec, function_path;
    std::optional<std::int64_t> theta;
    ver->add_option("--graph", graph_spec, "family:n:q or vo+:m:q")->required();
    ver->add_option("--function", function_path, "JSON or CSV file")->required();
    ver->add_option("--theta", theta, "eigenvalue for CSV input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (*build) return cmd_build(cfg, out);
        if (*eig) return cmd_eigenfunction(cfg, construct_name, w, out);
        if (*en) return cmd_enumerate(cfg, pair_kind, s, out);
        if (*cc) return cmd_count_check(cfg, out);
        if (*ver) return cmd_verify(cfg, graph_spec, function_path, theta, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kInvalidConfig;
}

}  // namespace polar::cli
