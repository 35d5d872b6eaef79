#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/space.hpp"

namespace twistlab {

/// Sparse column: (row index, nonzero coefficient), sorted by row.
struct Entry {
    std::uint32_t row;
    Scalar value;
    friend bool operator==(const Entry&, const Entry&) = default;
};
using Column = std::vector<Entry>;

/// A sparse vector in a space.
class Vec {
public:
    Vec(SpacePtr space, Column entries);
    static Vec basis(const SpacePtr& space, std::size_t index);
    static Vec zero(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    const Column& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Vec operator+(const Vec& other) const;
    Vec operator-(const Vec& other) const;
    Vec scaled(const Scalar& c) const;

    friend bool operator==(const Vec& a, const Vec& b);
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

    /// Human-readable form, e.g. "x⊗y - 2 x²⊗1".
    std::string to_string() const;

private:
    SpacePtr space_;
    Column entries_; // sorted by row, no zeros
};

/// Exact sparse linear map between spaces, stored columnwise.  Immutable
/// after construction; scalars all share the spaces' field and no zero
/// entries are ever stored, so equality is structural.
class LinearMap {
public:
    LinearMap(SpacePtr domain, SpacePtr codomain, std::vector<Column> columns);

    static LinearMap from_triplets(
        SpacePtr domain, SpacePtr codomain,
        const std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>& entries);

    const SpacePtr& domain() const { return domain_; }
    const SpacePtr& codomain() const { return codomain_; }
    const Column& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<Column>& columns() const { return columns_; }

    Vec apply(const Vec& v) const;

    friend bool operator==(const LinearMap& a, const LinearMap& b);
    friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<Column> columns_;
};

/// As LinearMap but columns may be left undefined; evaluation through an
/// undefined column raises UndefinedColumnError naming the basis label.
class PartialLinearMap {
public:
    PartialLinearMap(SpacePtr domain, SpacePtr codomain,
                     std::vector<std::optional<Column>> columns);

    static PartialLinearMap undefined(SpacePtr domain, SpacePtr codomain);
    static PartialLinearMap from_total(const LinearMap& map);

    const SpacePtr& domain() const { return domain_; }
    const SpacePtr& codomain() const { return codomain_; }
    bool is_defined(std::size_t j) const { return columns_.at(j).has_value(); }
    const Column& column(std::size_t j) const; // throws UndefinedColumnError

    PartialLinearMap with_column(std::size_t j, Column column) const;

    Vec apply(const Vec& v) const;

    /// Total map over the defined columns; throws if any column is missing.
    LinearMap to_total() const;

private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<std::optional<Column>> columns_;
};

/// An ordered list of stages whose domains/codomains chain; evaluated
/// pointwise so partial stages are permitted.
class DiagramPath {
public:
    explicit DiagramPath(std::vector<PartialLinearMap> stages);

    const std::vector<PartialLinearMap>& stages() const { return stages_; }
    const SpacePtr& domain() const { return stages_.front().domain(); }
    const SpacePtr& codomain() const { return stages_.back().codomain(); }

private:
    std::vector<PartialLinearMap> stages_;
};

Vec evaluate_path(const DiagramPath& path, const Vec& input);

// ---- constructions ----

LinearMap identity(const SpacePtr& space);
LinearMap zero_map(const SpacePtr& domain, const SpacePtr& codomain);

/// f after g; domain of f must equal the codomain of g.
LinearMap compose(const LinearMap& f, const LinearMap& g);
LinearMap compose_many(const std::vector<LinearMap>& stages_outermost_last);

/// Kronecker product consistent with the row-major tensor basis ordering.
LinearMap tensor_map(const LinearMap& f, const LinearMap& g);
LinearMap tensor_many_maps(const std::vector<LinearMap>& factors);

PartialLinearMap tensor_map(const PartialLinearMap& f, const PartialLinearMap& g);

/// The map sending a pure tensor of the given factors to the permuted pure
/// tensor; perm is one-line notation, input position i goes to position
/// perm[i].
LinearMap permute_factors(const std::vector<SpacePtr>& factors,
                          const std::vector<std::size_t>& perm);

/// Exchange of factors i and j (0-based).
LinearMap swap_factors(const std::vector<SpacePtr>& factors, std::size_t i, std::size_t j);

LinearMap left_unitor(const SpacePtr& v);       // k (x) V -> V
LinearMap right_unitor(const SpacePtr& v);      // V (x) k -> V
LinearMap left_unitor_inv(const SpacePtr& v);   // V -> k (x) V
LinearMap right_unitor_inv(const SpacePtr& v);  // V -> V (x) k

/// Exact inverse via Gaussian elimination; the roundtrip f o f^-1 = id is
/// verified before returning.  SingularMapError when the map is not
/// bijective.
LinearMap invert(const LinearMap& f);
std::optional<LinearMap> try_invert(const LinearMap& f);

/// Equality with a failure witness: the first domain basis label on which
/// the two maps disagree, together with both image vectors.
struct MapComparison {
    bool equal = false;
    std::string witness_label;
    std::optional<Vec> left;
    std::optional<Vec> right;
};
MapComparison maps_equal(const LinearMap& f, const LinearMap& g);

}  // namespace twistlab
