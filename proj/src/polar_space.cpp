#include "polar/polar_space.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polar/parallel.hpp"

namespace polar {

namespace {

constexpr std::uint64_t kAmbientCap = std::uint64_t{1} << 26;

bool test_bit(const std::uint64_t* row, std::size_t j) noexcept { return (row[j >> 6] >> (j & 63)) & 1u; }

}  // namespace

std::pair<std::uint64_t, int> table_order_and_e(Family family, std::size_t dim, const gf::FieldContext& f) {
    const std::uint64_t q = f.q();
    switch (family) {
        case Family::sp: return {q, 2};
        case Family::o_plus: return {1, 0};
        case Family::o: return {q, 2};
        case Family::o_minus: return {q * q, 4};
        case Family::u:
            if (dim % 2 == 0) return {f.sqrt_q(), 1};
            return {q * f.sqrt_q(), 3};
    }
    return {0, 0};
}

PolarSpace::PolarSpace(Form form, const EnumerationOptions& options) : form_(std::move(form)) {
    enumerate_points();
    empty_level_.push_back(SingularSubspace{});
    bool loaded = false;
    std::filesystem::path file;
    if (options.cache_dir) {
        file = cache_path(*options.cache_dir);
        loaded = std::filesystem::exists(file) && load_cache(file);
    }
    if (!loaded) enumerate_subspaces(options.workers);
    compute_descriptor();
    if (options.cache_dir && !loaded) write_cache(file);
}

void PolarSpace::enumerate_points() {
    const auto& f = ctx();
    const std::size_t dim = form_.dim();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        total *= f.q();
        if (total > kAmbientCap) throw Error(Errc::CapExceeded, "ambient space too large to enumerate");
    }
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        Vec v = linalg::vector_from_index(idx, f.q(), dim);
        const auto lead = std::find_if(v.begin(), v.end(), [](gf::Code c) { return c != 0; });
        if (*lead != 1) continue;
        if (!form_.is_singular(v)) continue;
        points_.push_back({std::move(v), points_.size()});
        point_keys_.push_back(idx);
    }
    const std::size_t n = points_.size();
    words_ = (n + 63) / 64;
    orth_.assign(n * words_, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (form_.orth_code(points_[i].rep, points_[j].rep) == 0) {
                orth_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
                orth_[j * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
            }
        }
    }
}

std::optional<std::size_t> PolarSpace::point_index(std::span<const gf::Code> v) const {
    if (v.size() != form_.dim() || linalg::is_zero(v)) return std::nullopt;
    const Vec n = linalg::normalize(ctx(), Vec(v.begin(), v.end()));
    const auto key = linalg::vector_index(n, ctx().q());
    const auto it = std::lower_bound(point_keys_.begin(), point_keys_.end(), key);
    if (it == point_keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - point_keys_.begin());
}

bool PolarSpace::collinear(std::size_t x, std::size_t y) const noexcept {
    return x != y && test_bit(&orth_[x * words_], y);
}

std::vector<std::size_t> PolarSpace::points_of(const Basis& basis) const {
    std::vector<std::size_t> out;
    for (const auto& v : linalg::span_vectors(ctx(), basis, form_.dim())) {
        if (linalg::is_zero(v)) continue;
        if (auto idx = point_index(v)) out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool PolarSpace::is_totally_singular(const Basis& basis) const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != form_.dim()) throw Error(Errc::DimMismatch, "basis vector has wrong dimension");
        if (!form_.is_singular(basis[i])) return false;
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (form_.orth_code(basis[i], basis[j]) != 0) return false;
        }
    }
    return true;
}

SingularSubspace PolarSpace::canonical(const Basis& basis) const {
    Basis r = linalg::rref(ctx(), basis);
    if (!is_totally_singular(r)) throw Error(Errc::NotSingular, "span is not totally singular");
    SingularSubspace s;
    s.points = points_of(r);
    s.basis = std::move(r);
    return s;
}

void PolarSpace::enumerate_subspaces(unsigned workers) {
    levels_.clear();
    std::vector<SingularSubspace> level;
    level.reserve(points_.size());
    for (const auto& p : points_) level.push_back(SingularSubspace{{p.rep}, {p.index}});
    const std::size_t n = points_.size();

    while (!level.empty()) {
        levels_.push_back(level);
        const auto& current = levels_.back();
        auto next = parallel_collect<Basis>(current.size(), workers, [&](std::size_t b, std::size_t e) {
            std::vector<Basis> found;
            std::vector<std::uint64_t> common(words_);
            for (std::size_t s = b; s < e; ++s) {
                const auto& sub = current[s];
                std::fill(common.begin(), common.end(), ~std::uint64_t{0});
                for (auto pt : sub.points) {
                    for (std::size_t w = 0; w < words_; ++w) common[w] &= orth_[pt * words_ + w];
                }
                for (std::size_t cand = 0; cand < n; ++cand) {
                    if (!test_bit(common.data(), cand)) continue;
                    if (std::binary_search(sub.points.begin(), sub.points.end(), cand)) continue;
                    Basis ext = sub.basis;
                    ext.push_back(points_[cand].rep);
                    found.push_back(linalg::rref(ctx(), std::move(ext)));
                }
            }
            std::sort(found.begin(), found.end());
            found.erase(std::unique(found.begin(), found.end()), found.end());
            return found;
        });
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = parallel_collect<SingularSubspace>(next.size(), workers, [&](std::size_t b, std::size_t e) {
            std::vector<SingularSubspace> out;
            for (std::size_t i = b; i < e; ++i) out.push_back(SingularSubspace{next[i], points_of(next[i])});
            return out;
        });
    }
}

void PolarSpace::compute_descriptor() {
    descriptor_.family = form_.family();
    descriptor_.q = ctx().q();
    descriptor_.dim = form_.dim();
    descriptor_.rank = static_cast<int>(levels_.size());
    descriptor_.point_count = points_.size();
    const auto [expected_t, e_twice] = table_order_and_e(form_.family(), form_.dim(), ctx());
    descriptor_.e_twice = e_twice;
    if (levels_.empty()) {
        descriptor_.t = 0;
        return;
    }
    const auto& maxes = levels_.back();
    descriptor_.maximal_count = maxes.size();

    const auto& base = singular_subspaces(descriptor_.rank - 2);
    std::optional<std::uint64_t> t_plus_one;
    for (const auto& L : base) {
        std::uint64_t count = 0;
        for (const auto& M : maxes) {
            if (std::includes(M.points.begin(), M.points.end(), L.points.begin(), L.points.end())) ++count;
        }
        if (t_plus_one && *t_plus_one != count) {
            throw Error(Errc::OrderNotWellDefined, "maximals over (n-2)-subspaces are not equinumerous");
        }
        t_plus_one = count;
    }
    descriptor_.t = t_plus_one.value_or(1) - 1;
    if (descriptor_.t != expected_t) {
        throw Error(Errc::OrderNotWellDefined, "computed t = " + std::to_string(descriptor_.t) +
                                                   " differs from the family value " + std::to_string(expected_t));
    }
}

const std::vector<SingularSubspace>& PolarSpace::singular_subspaces(int d) const {
    if (d == -1) return empty_level_;
    if (d < -1 || d >= static_cast<int>(levels_.size())) {
        throw Error(Errc::DimensionOutOfRange, "projective dimension " + std::to_string(d) + " outside [-1, " +
                                                   std::to_string(static_cast<int>(levels_.size()) - 1) + "]");
    }
    return levels_[static_cast<std::size_t>(d)];
}

std::vector<SingularSubspace> PolarSpace::sigma_L(const SingularSubspace& L) const {
    if (!is_totally_singular(L.basis)) throw Error(Errc::NotSingular, "L is not singular");
    const auto Lc = L.basis.empty() ? SingularSubspace{} : canonical(L.basis);
    std::vector<SingularSubspace> out;
    for (const auto& M : maximals()) {
        if (M.basis.size() > Lc.basis.size() &&
            std::includes(M.points.begin(), M.points.end(), Lc.points.begin(), Lc.points.end())) {
            out.push_back(M);
        }
    }
    return out;
}

std::vector<PolarSpace::PointSetPair> PolarSpace::delta_L(const SingularSubspace& L) const {
    if (L.proj_dim() != rank() - 2) {
        throw Error(Errc::WrongDimension, "Delta_L needs dim(L) = n-2 = " + std::to_string(rank() - 2));
    }
    const auto sigma = sigma_L(L);
    const auto Lc = L.basis.empty() ? SingularSubspace{} : canonical(L.basis);
    std::vector<PointSet> diffs;
    for (const auto& M : sigma) {
        PointSet d;
        std::set_difference(M.points.begin(), M.points.end(), Lc.points.begin(), Lc.points.end(),
                            std::back_inserter(d));
        diffs.push_back(std::move(d));
    }
    std::vector<PointSetPair> out;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        for (std::size_t j = i + 1; j < diffs.size(); ++j) out.emplace_back(diffs[i], diffs[j]);
    }
    return out;
}

SingularSubspace PolarSpace::span_closure(std::span<const std::size_t> point_indices) const {
    Basis rows;
    for (std::size_t i = 0; i < point_indices.size(); ++i) {
        const auto a = point_indices[i];
        if (a >= points_.size()) throw Error(Errc::BadInput, "point index out of range");
        for (std::size_t j = i + 1; j < point_indices.size(); ++j) {
            const auto b = point_indices[j];
            if (a != b && !collinear(a, b)) {
                throw Error(Errc::NotPairwiseCollinear,
                            "points " + std::to_string(a) + " and " + std::to_string(b) + " are not collinear");
            }
        }
        rows.push_back(points_[a].rep);
    }
    if (rows.empty()) return SingularSubspace{};
    return canonical(rows);
}

std::filesystem::path PolarSpace::cache_path(const std::filesystem::path& dir) const {
    std::ostringstream name;
    name << "subspaces_" << family_name(form_.family()) << "_" << form_.dim() << "_" << ctx().q() << "_m";
    for (auto c : ctx().modulus()) name << c;
    name << ".jsonl";
    return dir / name.str();
}

void PolarSpace::write_cache(const std::filesystem::path& file) const {
    std::filesystem::create_directories(file.parent_path());
    nlohmann::json header = {
        {"family", family_name(form_.family())},
        {"dim", form_.dim()},
        {"q", ctx().q()},
        {"p", ctx().p()},
        {"k", ctx().k()},
        {"modulus", ctx().modulus()},
        {"rank", descriptor_.rank},
        {"t", descriptor_.t},
        {"e_twice", descriptor_.e_twice},
        {"point_count", descriptor_.point_count},
        {"maximal_count", descriptor_.maximal_count},
    };
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << header.dump() << '\n';
        for (const auto& level : levels_) {
            for (const auto& s : level) out << nlohmann::json(s.basis).dump() << '\n';
        }
    }
    std::filesystem::rename(tmp, file);
}

bool PolarSpace::load_cache(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::string line;
    if (!std::getline(in, line)) return false;
    try {
        const auto header = nlohmann::json::parse(line);
        if (header.at("family") != family_name(form_.family()) || header.at("dim") != form_.dim() ||
            header.at("q") != ctx().q() || header.at("modulus").get<std::vector<unsigned>>() != ctx().modulus()) {
            return false;
        }
        std::vector<std::vector<SingularSubspace>> levels;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Basis basis = nlohmann::json::parse(line).get<Basis>();
            if (basis.empty() || linalg::rref(ctx(), basis) != basis || !is_totally_singular(basis)) return false;
            const std::size_t d = basis.size() - 1;
            if (d > levels.size()) return false;
            if (d == levels.size()) levels.emplace_back();
            auto pts = points_of(basis);
            levels[d].push_back(SingularSubspace{std::move(basis), std::move(pts)});
        }
        for (const auto& level : levels) {
            if (!std::is_sorted(level.begin(), level.end())) return false;
        }
        if (levels.empty() || levels.front().size() != points_.size()) return false;
        levels_ = std::move(levels);
        return true;
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

}  // namespace polar
