#include "twistlab/space.hpp"

#include <atomic>
#include <set>

namespace twistlab {

namespace {
std::atomic<std::size_t> g_max_dimension{4096};
}

std::vector<std::int64_t> GradingGroup::normalize(std::vector<std::int64_t> grade) const {
    if (grade.size() != moduli.size())
        throw ShapeMismatchError("grade rank does not match grading group");
    for (std::size_t i = 0; i < grade.size(); ++i) {
        if (moduli[i] == 0) continue;
        std::int64_t m = static_cast<std::int64_t>(moduli[i]);
        grade[i] %= m;
        if (grade[i] < 0) grade[i] += m;
    }
    return grade;
}

Space::Space(FieldSpec field, std::vector<std::string> labels,
             std::optional<Grading> grading)
    : field_(std::move(field)), labels_(std::move(labels)), grading_(std::move(grading)) {
    if (labels_.empty()) throw ShapeMismatchError("spaces must have dimension >= 1");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw ShapeMismatchError("basis labels must be pairwise distinct");
    if (grading_) {
        if (grading_->grades.size() != labels_.size())
            throw ShapeMismatchError("grading must assign a grade to every basis label");
        for (auto& g : grading_->grades) g = grading_->group.normalize(std::move(g));
    }
}

SpacePtr Space::make(FieldSpec field, std::vector<std::string> labels,
                     std::optional<Grading> grading) {
    return std::make_shared<const Space>(std::move(field), std::move(labels),
                                         std::move(grading));
}

SpacePtr Space::ground(const FieldSpec& field) {
    return make(field, {"1"});
}

bool operator==(const Space& a, const Space& b) {
    return a.field_ == b.field_ && a.labels_ == b.labels_ && a.grading_ == b.grading_;
}

bool spaces_equal(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

SpacePtr tensor_space(const SpacePtr& v, const SpacePtr& w) {
    if (!(v->field() == w->field()))
        throw FieldMismatchError("tensor product of spaces over different fields");
    std::size_t dim = v->dim() * w->dim();
    if (dim > max_dimension())
        throw DimensionLimitError("tensor space of dimension " + std::to_string(dim) +
                                  " exceeds the cap of " + std::to_string(max_dimension()) +
                                  " (see TWISTLAB_MAX_DIM)");
    std::vector<std::string> labels;
    labels.reserve(dim);
    for (const auto& lv : v->labels())
        for (const auto& lw : w->labels())
            labels.push_back(lv + "⊗" + lw);

    std::optional<Grading> grading;
    if (v->grading() && w->grading()) {
        Grading g;
        g.group.moduli = v->grading()->group.moduli;
        g.group.moduli.insert(g.group.moduli.end(), w->grading()->group.moduli.begin(),
                              w->grading()->group.moduli.end());
        g.grades.reserve(dim);
        for (const auto& gv : v->grading()->grades)
            for (const auto& gw : w->grading()->grades) {
                std::vector<std::int64_t> grade = gv;
                grade.insert(grade.end(), gw.begin(), gw.end());
                g.grades.push_back(std::move(grade));
            }
        grading = std::move(g);
    }
    return Space::make(v->field(), std::move(labels), std::move(grading));
}

SpacePtr tensor_many(const std::vector<SpacePtr>& factors) {
    if (factors.empty()) throw ShapeMismatchError("tensor_many needs at least one factor");
    SpacePtr out = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_space(out, factors[i]);
    return out;
}

std::size_t max_dimension() { return g_max_dimension.load(); }
void set_max_dimension(std::size_t limit) { g_max_dimension.store(limit); }

}  // namespace twistlab
