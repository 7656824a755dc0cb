// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact.
//
// usage: polar_acceptance <path to polar_tests>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "polar/eigenfunction.hpp"
#include "polar/oracle.hpp"
#include "support.hpp"

using namespace polar;
using testsupport::field;

namespace {

constexpr double kBuildBudgetSeconds = 60.0;
constexpr std::size_t kPropertySuites = 14;

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::int64_t isqrt(std::int64_t x) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

struct Instance {
    std::string name;
    bool affine = false;
    Family family = Family::sp;  // polar graphs; affine ones use o+/o- for their space
    int m = 0;
    int eps = 0;
    std::size_t dim = 0;
    unsigned q = 0;
    std::optional<SrgParams> expected;  // nullopt: rank too low
    std::int64_t t = 0;                 // order parameter, polar graphs only

    std::unique_ptr<PolarSpace> space;
    std::optional<PolarGraph> graph;
    SrgParams params;
    SpectrumInfo spec;
};

SrgParams affine_params(int m, int eps, std::int64_t q) {
    const std::int64_t v = ipow(q, 2 * m);
    const std::int64_t k = (ipow(q, m) - eps) * (ipow(q, m - 1) + eps);
    const std::int64_t mu = ipow(q, m - 1) * (ipow(q, m - 1) + eps);
    const std::int64_t lambda = k - 1 - (v - k - 1) * mu / k;
    return {v, k, lambda, mu};
}

std::vector<Instance> grid() {
    std::vector<Instance> out;
    auto polar = [&](std::string name, Family fam, std::size_t dim, unsigned q, std::optional<SrgParams> p,
                     std::int64_t t) {
        Instance i;
        i.name = std::move(name);
        i.family = fam;
        i.dim = dim;
        i.q = q;
        i.expected = p;
        i.t = t;
        out.push_back(std::move(i));
    };
    auto affine = [&](std::string name, int m, int eps, unsigned q, SrgParams p) {
        Instance i;
        i.name = std::move(name);
        i.affine = true;
        i.family = eps == 1 ? Family::o_plus : Family::o_minus;
        i.m = m;
        i.eps = eps;
        i.dim = 2 * static_cast<std::size_t>(m);
        i.q = q;
        i.expected = p;
        out.push_back(std::move(i));
    };
    polar("Sp(4,2)", Family::sp, 4, 2, SrgParams{15, 6, 1, 3}, 2);
    polar("Sp(4,3)", Family::sp, 4, 3, SrgParams{40, 12, 2, 4}, 3);
    for (unsigned q : {2u, 3u, 4u}) {
        const std::int64_t Q = q;
        polar("O+(4," + std::to_string(q) + ")", Family::o_plus, 4, q, SrgParams{(Q + 1) * (Q + 1), 2 * Q, Q - 1, 2},
              1);
    }
    for (unsigned q : {2u, 3u}) polar("O-(4," + std::to_string(q) + ")", Family::o_minus, 4, q, std::nullopt, 0);
    // generalized quadrangle GQ(2,4)
    polar("O-(6,2)", Family::o_minus, 6, 2, SrgParams{27, 10, 1, 5}, 4);
    polar("U(4,4)", Family::u, 4, 4, SrgParams{45, 12, 3, 3}, 2);
    polar("U(4,9)", Family::u, 4, 9, SrgParams{280, 36, 8, 4}, 3);
    affine("VO+(4,2)", 2, 1, 2, SrgParams{16, 9, 4, 6});
    affine("VO-(4,2)", 2, -1, 2, SrgParams{16, 5, 0, 2});
    affine("VO+(4,3)", 2, 1, 3, affine_params(2, 1, 3));
    affine("VO-(4,3)", 2, -1, 3, SrgParams{81, 20, 1, 6});
    return out;
}

/// Closed forms for the two non-principal eigenvalues, sorted by sign.
std::pair<std::int64_t, std::int64_t> closed_forms(const Instance& i) {
    const std::int64_t q = i.q;
    if (i.affine) {
        const std::int64_t a = i.eps * (q - 1) * ipow(q, i.m - 1) - 1;
        const std::int64_t b = -i.eps * ipow(q, i.m - 1) - 1;
        return {std::max(a, b), std::min(a, b)};
    }
    const int n = 2;
    return {ipow(q, n - 1) - 1, -i.t * ipow(q, n - 2) - 1};
}

struct Line {
    bool pass = true;
    std::ostringstream detail;
    std::string first_failure;
    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
};

void report(int n, const Line& l) {
    std::cout << "criterion " << n << ": " << (l.pass ? "PASS" : "FAIL") << " -" << l.detail.str();
    if (!l.pass) std::cout << " first failure: " << l.first_failure;
    std::cout << "\n";
}

template <class Fn>
void guarded(Line& l, const std::string& what, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        l.fail(what + " threw: " + e.what());
    }
}

// 1. build and SRG-verify the grid, compare spectra with the closed forms.
Line criterion1(std::vector<Instance>& g) {
    Line l;
    const auto start = std::chrono::steady_clock::now();
    for (auto& i : g) {
        guarded(l, i.name, [&] {
            i.space = std::make_unique<PolarSpace>(Form::standard(i.family, i.dim, field(i.q)));
            if (!i.expected) {
                try {
                    (void)collinearity_graph(*i.space);
                    l.fail(i.name + " built despite rank " + std::to_string(i.space->rank()));
                } catch (const Error& e) {
                    if (e.code() != Errc::RankTooLow) l.fail(i.name + " raised the wrong error");
                }
                return;
            }
            i.graph = i.affine ? affine_polar_graph(i.m, i.eps, field(i.q))
                               : (i.family == Family::u ? unitary_graph(field(i.q)) : collinearity_graph(*i.space));
            i.params = srg_check(*i.graph);
            if (!(i.params == *i.expected)) {
                l.fail(i.name + " has parameters (" + std::to_string(i.params.v) + "," + std::to_string(i.params.k) +
                       "," + std::to_string(i.params.lambda) + "," + std::to_string(i.params.mu) + ")");
            }
            i.spec = spectrum(i.params);
            const auto [t1, t2] = closed_forms(i);
            if (i.spec.theta1 != t1 || i.spec.theta2 != t2) l.fail(i.name + " spectrum differs from closed form");
            const auto c = closed_form_eigenvalues(i.graph->provenance());
            if (!c || c->theta1 != t1 || c->theta2 != t2) l.fail(i.name + " library closed form differs");
            if (!is_eigenvalue_exact(*i.graph, t1) || !is_eigenvalue_exact(*i.graph, t2)) {
                l.fail(i.name + " eigenvalue not confirmed by determinant");
            }
        });
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= kBuildBudgetSeconds) l.fail("took " + std::to_string(secs) + " s");
    const auto vop3 = std::find_if(g.begin(), g.end(), [](const Instance& i) { return i.name == "VO+(4,3)"; });
    l.detail << " " << g.size() << " instances in " << static_cast<int>(secs * 1000) << " ms; VO+(4,3) = ("
             << vop3->params.v << "," << vop3->params.k << "," << vop3->params.lambda << "," << vop3->params.mu
             << ")";
    return l;
}

Vec least_t(const PolarSpace& s, const SingularSubspace& M) {
    const auto& f = s.ctx();
    const std::size_t dim = s.form().dim();
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(ipow(f.q(), static_cast<int>(dim))); ++idx) {
        const Vec t = linalg::vector_from_index(idx, f.q(), dim);
        bool perp = true;
        for (const auto& b : M.basis) perp = perp && s.form().orth_code(t, b) == 0;
        if (perp && !linalg::in_span(f, M.basis, t)) return t;
    }
    throw std::logic_error("no t outside Aff(M) in its perp");
}

// 2. theta1 constructions are verified and of support 2(theta1+1).
Line criterion2(std::vector<Instance>& g) {
    Line l;
    std::size_t checked = 0;
    for (auto& i : g) {
        if (!i.graph) continue;
        guarded(l, i.name, [&] {
            const std::int64_t want = 2 * (closed_forms(i).first + 1);
            auto check = [&](const Eigenfunction& f, const std::string& what) {
                ++checked;
                const auto r = verify_eigenfunction(*i.graph, f, i.params);
                if (f.theta != i.spec.theta1 || static_cast<std::int64_t>(r.support_size) != want || !r.tight) {
                    l.fail(i.name + " " + what + " support " + std::to_string(r.support_size));
                }
            };
            const auto& S = *i.space;
            const std::size_t dim = S.form().dim();
            for (const auto& L : S.singular_subspaces(S.rank() - 2)) {
                const auto sigma = S.sigma_L(L);
                for (std::size_t a = 0; a < sigma.size(); ++a) {
                    for (std::size_t b = a + 1; b < sigma.size(); ++b) {
                        if (!i.affine) {
                            check(theta1_polar(S, L, sigma[a], sigma[b]), "theta1_polar");
                        } else if (i.eps == 1) {
                            check(theta1_hyperbolic(S, *i.graph, Vec(dim, 0), L, sigma[a], sigma[b]),
                                  "theta1_hyperbolic");
                        }
                    }
                }
            }
            if (i.affine && i.eps == -1) {
                for (const auto& M : S.maximals()) {
                    check(theta1_elliptic(S, *i.graph, Vec(dim, 0), M, least_t(S, M)), "theta1_elliptic");
                }
            }
            if (i.affine && i.eps == 1) {
                // every shift of one witness
                const auto& L = S.singular_subspaces(S.rank() - 2).front();
                const auto sigma = S.sigma_L(L);
                for (const auto& v : i.graph->labels()) {
                    check(theta1_hyperbolic(S, *i.graph, v, L, sigma[0], sigma[1]), "shifted theta1_hyperbolic");
                }
            }
            if (!(i.affine && i.eps == -1)) {
                const auto cl = delsarte_cliques(*i.graph, i.params, i.spec);
                const auto [c0, c1] = max_intersecting_delsarte_pair(cl);
                check(theta1_from_clique_pair(*i.graph, i.params, c0, c1), "theta1_from_clique_pair");
            }
        });
    }
    l.detail << " " << checked << " functions verified at every vertex";
    return l;
}

// 3. theta2 on U(4,q) and the neighbour dichotomy for outside vertices.
Line criterion3() {
    Line l;
    for (unsigned q : {4u, 9u, 16u}) {
        guarded(l, "U(4," + std::to_string(q) + ")", [&] {
            const auto g = unitary_graph(field(q));
            const auto p = srg_check(g);
            const auto f = theta2_unitary(g);
            const auto r = verify_eigenfunction(g, f, p);
            const std::int64_t want = 2 * (isqrt(q) + 1);
            if (f.theta != spectrum(p).theta2 || static_cast<std::int64_t>(r.support_size) != want || !r.tight) {
                l.fail("U(4," + std::to_string(q) + ") support " + std::to_string(r.support_size));
            }
            const auto pair = unitary_pair(g);
            std::set<std::size_t> inside(pair.t0.begin(), pair.t0.end());
            inside.insert(pair.t1.begin(), pair.t1.end());
            std::size_t zero = 0, one = 0, other = 0;
            for (std::size_t u = 0; u < g.order(); ++u) {
                if (inside.count(u)) continue;
                std::size_t a = 0, b = 0;
                for (auto x : pair.t0) a += g.adjacent(u, x);
                for (auto x : pair.t1) b += g.adjacent(u, x);
                if (a != b || a > 1) {
                    ++other;
                } else {
                    (a == 0 ? zero : one)++;
                }
            }
            l.detail << " q=" << q << ": " << one << " outside vertices see 1+1, " << zero << " see 0+0, " << other
                     << " neither;";
            if (other != 0) l.fail("q=" + std::to_string(q) + " dichotomy broken");
            if (q % 2 == 1 && zero != 0) l.fail("q=" + std::to_string(q) + " has outside vertices with no neighbour");
        });
    }
    return l;
}

struct CatalogRun {
    std::string name;
    PairCatalog catalog;
};

// 4. every isolated theta1-clique pair has its structural witness.
Line criterion4(std::vector<Instance>& g, std::vector<CatalogRun>& catalogs) {
    Line l;
    const std::set<std::string> wanted = {"Sp(4,2)", "Sp(4,3)",  "O+(4,2)",  "O+(4,3)",
                                          "U(4,4)",  "VO+(4,2)", "VO-(4,2)", "VO-(4,3)"};
    for (auto& i : g) {
        if (!wanted.count(i.name) || !i.graph) continue;
        guarded(l, i.name, [&] {
            auto cat = enumerate_isolated_clique_pairs(*i.graph, static_cast<std::size_t>(i.spec.theta1 + 1));
            const auto r = !i.affine      ? check_polar_characterisation(*i.space, cat)
                           : i.eps == 1   ? check_hyperbolic_characterisation(*i.space, *i.graph, cat)
                                          : check_elliptic_characterisation(*i.space, *i.graph, cat);
            l.detail << " " << i.name << " " << r.witnessed << "/" << r.checked << ";";
            if (!r.complete() || r.checked == 0) l.fail(i.name + " has unwitnessed pairs");
            catalogs.push_back({i.name, std::move(cat)});
        });
    }
    return l;
}

// 5. oracle counts against the closed-form and structure-derived counts.
Line criterion5(std::vector<Instance>& g, const std::vector<CatalogRun>& catalogs) {
    Line l;
    // printed values quoted for the symplectic cases
    const std::map<std::string, std::uint64_t> quoted = {{"Sp(4,2)", 45}, {"Sp(4,3)", 240}};
    const std::set<std::string> polar_cases = {"Sp(4,2)", "Sp(4,3)", "O+(4,2)", "O+(4,3)", "U(4,4)"};
    for (auto& i : g) {
        if (!i.graph) continue;
        const bool is_polar = polar_cases.count(i.name) > 0;
        if (!is_polar && !i.affine) continue;
        guarded(l, i.name, [&] {
            const auto it = std::find_if(catalogs.begin(), catalogs.end(),
                                         [&](const CatalogRun& c) { return c.name == i.name; });
            const PairCatalog cat = it != catalogs.end() ? it->catalog
                                                         : enumerate_isolated_clique_pairs(
                                                               *i.graph, static_cast<std::size_t>(i.spec.theta1 + 1));
            const auto c = count_comparison(*i.space, *i.graph, cat);
            l.detail << " " << i.name << " oracle " << c.oracle << " printed " << c.printed << " derived "
                     << c.derived;
            if (auto q = quoted.find(i.name); q != quoted.end() && q->second != c.printed) {
                l.fail(i.name + " printed formula evaluates to " + std::to_string(c.printed));
            }
            if (is_polar) {
                if (!c.printed_matches()) l.fail(i.name + " oracle differs from printed");
                l.detail << ";";
                return;
            }
            l.detail << (c.derived_matches() ? " (= derived)" : c.printed_matches() ? " (= printed)" : " (neither)")
                     << ";";
            if (!c.derived_matches() && !c.printed_matches()) l.fail(i.name + " oracle matches neither count");
        });
    }
    return l;
}

// 6. property suites, run through the unit test binary.
Line criterion6(const std::string& unit_binary) {
    Line l;
    const std::vector<std::string> suites = {
        "field axioms hold exhaustively*",
        "field axioms on random triples*",
        "frobenius_sqrt is an involutive field automorphism",
        "polarisation is bilinear on random vectors",
        "polarisation expansion identity*",
        "perp dimension and double perp on random subspaces",
        "axiom III*",
        "all maximals have projective dimension n-1",
        "random span closures are singular and canonical",
        "affine shifts are automorphisms*",
        "every maximal clique of VO(4,2) is a shifted maximal*",
        "elliptic neighbour trichotomy",
        "scaling closure",
        "Q is nonzero on Aff(M)^perp minus Aff(M)*",
    };
    std::string filter;
    for (const auto& s : suites) filter += (filter.empty() ? "" : ",") + s;
    const std::string cmd = "\"" + unit_binary + "\" --no-colors=true \"--test-case=" + filter + "\" 2>&1";
    std::string output;
    if (FILE* pipe = ::popen(cmd.c_str(), "r")) {
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
        const int status = ::pclose(pipe);
        if (status != 0) l.fail("unit binary exited with status " + std::to_string(status));
    } else {
        l.fail("could not start " + unit_binary);
    }
    std::smatch m;
    const std::regex summary(R"(test cases:\s*(\d+)\s*\|\s*(\d+) passed)");
    if (!std::regex_search(output, m, summary)) {
        l.fail("no doctest summary");
    } else {
        const auto ran = std::stoul(m[1]);
        const auto passed = std::stoul(m[2]);
        l.detail << " " << passed << "/" << ran << " property suites passed";
        if (ran != kPropertySuites || passed != ran) l.fail("expected " + std::to_string(kPropertySuites) + " suites");
    }
    return l;
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[std::filesystem::relative(e.path(), dir).string()] = s.str();
    }
    return out;
}

/// Runs a fixed set of CLI invocations; returns their concatenated stdout.
std::string cli_suite(const std::filesystem::path& dir, unsigned workers) {
    const std::string w = std::to_string(workers);
    const std::string cache = (dir / "cache").string();
    const std::string out = (dir / "out").string();
    std::filesystem::create_directories(out);
    const std::vector<std::vector<std::string>> runs = {
        {"build", "--family", "sp", "--n", "2", "--q", "3", "--format", "json", "--out", out + "/sp23.json"},
        {"build", "--family", "u", "--q", "4", "--format", "graph6", "--out", out + "/u4.g6"},
        {"build", "--family", "vo+", "--m", "2", "--q", "3", "--format", "edge-list", "--out", out + "/vop3.txt"},
        {"build", "--family", "o-", "--n", "2", "--q", "2"},
        {"eigenfunction", "--family", "sp", "--n", "2", "--q", "3", "--construct", "theta1-polar", "--out",
         out + "/f_sp.json"},
        {"eigenfunction", "--family", "o+", "--n", "2", "--q", "3", "--construct", "theta1-cliquepair", "--out",
         out + "/f_op.json"},
        {"eigenfunction", "--family", "vo+", "--m", "2", "--q", "3", "--construct", "theta1-hyperbolic", "--out",
         out + "/f_vop.csv", "--format", "csv"},
        {"eigenfunction", "--family", "vo-", "--m", "2", "--q", "3", "--construct", "theta1-elliptic", "--out",
         out + "/f_vom.json"},
        {"eigenfunction", "--family", "u", "--q", "9", "--construct", "theta2-unitary", "--out", out + "/f_u9.json"},
        {"verify", "--graph", "u:2:9", "--function", out + "/f_u9.json"},
        {"enumerate", "--family", "sp", "--n", "2", "--q", "3", "--out", out + "/sp23.jsonl"},
        {"enumerate", "--family", "u", "--q", "4", "--kind", "bipartite", "--out", out + "/u4_bip.jsonl"},
        {"enumerate", "--family", "vo-", "--m", "2", "--q", "3"},
        {"count-check", "--family", "o+", "--n", "2", "--q", "3"},
        {"count-check", "--family", "vo+", "--m", "2", "--q", "2"},
    };
    std::ostringstream all;
    for (auto args : runs) {
        args.insert(args.begin(), "polar-eig");
        args.insert(args.end(), {"--workers", w, "--cache", cache});
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream o, e;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
        all << "$ " << args[1] << " -> " << code << "\n" << o.str();
    }
    return all.str();
}

// 7. identical bytes across runs and worker counts.
Line criterion7() {
    Line l;
    const auto root = std::filesystem::temp_directory_path() / "polar_acceptance_determinism";
    std::filesystem::remove_all(root);
    guarded(l, "determinism", [&] {
        const auto a = cli_suite(root / "a", 1);
        const auto b = cli_suite(root / "b", 8);
        const auto b_warm = cli_suite(root / "b", 8);
        const auto ta = read_tree(root / "a");
        const auto tb = read_tree(root / "b");
        std::size_t caches = 0, catalogs = 0;
        for (const auto& [k, v] : ta) {
            caches += k.rfind("cache/subspaces_", 0) == 0;
            catalogs += k.rfind("cache/catalog_", 0) == 0;
        }
        l.detail << " " << ta.size() << " files (" << caches << " subspace caches, " << catalogs
                 << " catalogs), stdout " << a.size() << " bytes";
        if (a != b) l.fail("stdout differs between 1 and 8 workers");
        if (b != b_warm) l.fail("stdout differs on a warm cache");
        if (ta != tb) l.fail("files differ between 1 and 8 workers");
        if (caches == 0 || catalogs == 0) l.fail("no cache or catalog written");
    });
    std::filesystem::remove_all(root);
    return l;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: polar_acceptance <path to polar_tests>\n";
        return 2;
    }
    auto g = grid();
    std::vector<CatalogRun> catalogs;
    const std::vector<Line> lines = [&] {
        std::vector<Line> out;
        out.push_back(criterion1(g));
        out.push_back(criterion2(g));
        out.push_back(criterion3());
        out.push_back(criterion4(g, catalogs));
        out.push_back(criterion5(g, catalogs));
        out.push_back(criterion6(argv[1]));
        out.push_back(criterion7());
        return out;
    }();
    bool ok = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        report(static_cast<int>(i + 1), lines[i]);
        ok = ok && lines[i].pass;
    }
    return ok ? 0 : 1;
}
