#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "polar/forms.hpp"

namespace polar {

struct ProjectivePoint {
    Vec rep;  // first nonzero coordinate is 1
    std::size_t index = 0;
};

/// Totally singular subspace in canonical RREF. `points` caches the sorted
/// indices of its projective points in the owning space.
struct SingularSubspace {
    Basis basis;
    std::vector<std::size_t> points;

    int proj_dim() const noexcept { return static_cast<int>(basis.size()) - 1; }

    bool operator==(const SingularSubspace& o) const noexcept { return basis == o.basis; }
    auto operator<=>(const SingularSubspace& o) const noexcept {
        if (auto c = basis.size() <=> o.basis.size(); c != 0) return c;
        return basis <=> o.basis;
    }
};

struct PolarSpaceDescriptor {
    Family family = Family::sp;
    gf::Code q = 0;
    std::size_t dim = 0;
    int rank = 0;
    std::uint64_t t = 0;
    /// Twice the order parameter e (e is a multiple of 1/2).
    int e_twice = 0;
    std::size_t point_count = 0;
    std::size_t maximal_count = 0;
};

/// Order parameter t and 2e for a family on GF(q)^dim.
std::pair<std::uint64_t, int> table_order_and_e(Family family, std::size_t dim, const gf::FieldContext& f);

struct EnumerationOptions {
    unsigned workers = 1;
    /// When set, subspace lists are read from / written to a JSON-lines cache here.
    std::optional<std::filesystem::path> cache_dir;
};

/// Embedded polar space of a nondegenerate form: its points, every singular
/// subspace (enumerated by breadth-first span closure), rank and order.
class PolarSpace {
public:
    explicit PolarSpace(Form form, const EnumerationOptions& options = {});

    const Form& form() const noexcept { return form_; }
    const gf::FieldContext& ctx() const noexcept { return form_.ctx(); }
    const std::vector<ProjectivePoint>& points() const noexcept { return points_; }
    std::size_t point_count() const noexcept { return points_.size(); }

    /// Index of the point spanned by v, if v is a nonzero singular vector.
    std::optional<std::size_t> point_index(std::span<const gf::Code> v) const;

    /// x, y distinct and orthogonal (lying on a common singular line).
    bool collinear(std::size_t x, std::size_t y) const noexcept;

    int rank() const noexcept { return descriptor_.rank; }
    const PolarSpaceDescriptor& descriptor() const noexcept { return descriptor_; }

    /// All singular subspaces of projective dimension d, sorted; d = -1 is the
    /// empty subspace. Throws DimensionOutOfRange unless -1 <= d <= rank-1.
    const std::vector<SingularSubspace>& singular_subspaces(int d) const;
    const std::vector<SingularSubspace>& maximals() const { return singular_subspaces(rank() - 1); }

    bool is_totally_singular(const Basis& basis) const;
    /// Canonical form (RREF + point set) of a totally singular span; throws NotSingular.
    SingularSubspace canonical(const Basis& basis) const;

    /// Maximals strictly containing L. Throws NotSingular.
    std::vector<SingularSubspace> sigma_L(const SingularSubspace& L) const;

    using PointSet = std::vector<std::size_t>;
    using PointSetPair = std::pair<PointSet, PointSet>;
    /// {M \ L, N \ L} for distinct M, N in Sigma_L; needs proj_dim(L) = rank-2.
    std::vector<PointSetPair> delta_L(const SingularSubspace& L) const;

    /// Smallest singular subspace containing the given points; throws NotPairwiseCollinear.
    SingularSubspace span_closure(std::span<const std::size_t> point_indices) const;

    /// Path of the cache file this space would use under `dir`.
    std::filesystem::path cache_path(const std::filesystem::path& dir) const;

private:
    void enumerate_points();
    void enumerate_subspaces(unsigned workers);
    bool load_cache(const std::filesystem::path& file);
    void write_cache(const std::filesystem::path& file) const;
    void compute_descriptor();
    std::vector<std::size_t> points_of(const Basis& basis) const;

    Form form_;
    std::vector<ProjectivePoint> points_;
    std::vector<std::uint64_t> point_keys_;  // sorted, parallel to points_
    std::size_t words_ = 0;
    std::vector<std::uint64_t> orth_;        // orthogonality bit rows between points
    std::vector<SingularSubspace> empty_level_;
    std::vector<std::vector<SingularSubspace>> levels_;  // levels_[d] = proj dim d
    PolarSpaceDescriptor descriptor_;
};

}  // namespace polar
