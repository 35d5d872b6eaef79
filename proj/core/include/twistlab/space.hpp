#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/scalar.hpp"

namespace twistlab {

/// A grade is an integer vector in Z^r; each coordinate may carry a cyclic
/// modulus (0 meaning a free Z factor), so the grading group is any finitely
/// generated abelian group.
struct GradingGroup {
    std::vector<std::uint64_t> moduli;

    std::size_t rank() const { return moduli.size(); }
    std::vector<std::int64_t> normalize(std::vector<std::int64_t> grade) const;
    friend bool operator==(const GradingGroup&, const GradingGroup&) = default;
};

struct Grading {
    GradingGroup group;
    std::vector<std::vector<std::int64_t>> grades; // one grade per basis label
    friend bool operator==(const Grading&, const Grading&) = default;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// A finite-dimensional vector space with an ordered, labeled, optionally
/// graded basis.  The ground field is itself the 1-dimensional space with
/// basis label "1".  Spaces compare structurally.
class Space {
public:
    Space(FieldSpec field, std::vector<std::string> labels,
          std::optional<Grading> grading = std::nullopt);

    static SpacePtr make(FieldSpec field, std::vector<std::string> labels,
                         std::optional<Grading> grading = std::nullopt);
    static SpacePtr ground(const FieldSpec& field);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::optional<Grading>& grading() const { return grading_; }
    bool is_ground() const { return labels_.size() == 1 && labels_[0] == "1"; }

    friend bool operator==(const Space& a, const Space& b);
    friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }

private:
    FieldSpec field_;
    std::vector<std::string> labels_;
    std::optional<Grading> grading_;
};

bool spaces_equal(const SpacePtr& a, const SpacePtr& b);

/// Row-major tensor product: the left index varies slowest.  Labels are
/// joined with U+2297 and never parenthesized, so the product is strictly
/// associative: (U (x) V) (x) W and U (x) (V (x) W) are the same space.
/// Gradings concatenate (the grading group of the product is the direct sum)
/// and survive only when every factor is graded.
SpacePtr tensor_space(const SpacePtr& v, const SpacePtr& w);
SpacePtr tensor_many(const std::vector<SpacePtr>& factors);

/// Dimension cap consulted by tensor_space; guards against accidental
/// blowups.  Default 4096.
std::size_t max_dimension();
void set_max_dimension(std::size_t limit);

}  // namespace twistlab
