#include "twistlab/linear_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace twistlab {

namespace {

Column canonicalize(Column col, std::size_t codim, const FieldSpec& field) {
    for (const Entry& e : col) {
        if (e.row >= codim) throw ShapeMismatchError("entry row out of range");
        if (!(e.value.field() == field))
            throw FieldMismatchError("matrix entry from the wrong field");
    }
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    Column out;
    out.reserve(col.size());
    for (auto& e : col) {
        if (!out.empty() && out.back().row == e.row)
            out.back().value = out.back().value + e.value;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Entry& e) { return e.value.is_zero(); }),
              out.end());
    return out;
}

Column accumulate_apply(const std::vector<Column>& cols, const Column& input) {
    std::map<std::uint32_t, Scalar> acc;
    for (const Entry& in : input) {
        for (const Entry& e : cols[in.row]) {
            auto [it, inserted] = acc.try_emplace(e.row, e.value * in.value);
            if (!inserted) it->second = it->second + e.value * in.value;
        }
    }
    Column out;
    out.reserve(acc.size());
    for (auto& [row, val] : acc)
        if (!val.is_zero()) out.push_back({row, std::move(val)});
    return out;
}

}  // namespace

// ---- Vec ----

Vec::Vec(SpacePtr space, Column entries) : space_(std::move(space)) {
    entries_ = canonicalize(std::move(entries), space_->dim(), space_->field());
}

Vec Vec::basis(const SpacePtr& space, std::size_t index) {
    return Vec(space, {Entry{static_cast<std::uint32_t>(index), Scalar::one(space->field())}});
}

Vec Vec::zero(const SpacePtr& space) { return Vec(space, {}); }

Vec Vec::operator+(const Vec& other) const {
    if (!spaces_equal(space_, other.space_))
        throw ShapeMismatchError("adding vectors from different spaces");
    Column joined = entries_;
    joined.insert(joined.end(), other.entries_.begin(), other.entries_.end());
    return Vec(space_, std::move(joined));
}

Vec Vec::operator-(const Vec& other) const {
    return *this + other.scaled(-Scalar::one(space_->field()));
}

Vec Vec::scaled(const Scalar& c) const {
    Column out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back({e.row, e.value * c});
    return Vec(space_, std::move(out));
}

bool operator==(const Vec& a, const Vec& b) {
    return spaces_equal(a.space_, b.space_) && a.entries_ == b.entries_;
}

std::string Vec::to_string() const {
    if (entries_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Entry& e : entries_) {
        std::string coeff = e.value.to_string();
        bool negated = false;
        if (!first && !coeff.empty() && coeff[0] == '-') {
            negated = true;
            coeff = coeff.substr(1);
        }
        out += first ? "" : (negated ? " - " : " + ");
        if (coeff != "1") out += coeff + "·";
        out += space_->label(e.row);
        first = false;
    }
    return out;
}

// ---- LinearMap ----

LinearMap::LinearMap(SpacePtr domain, SpacePtr codomain, std::vector<Column> columns)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (columns.size() != domain_->dim())
        throw ShapeMismatchError("column count does not match domain dimension");
    if (!(domain_->field() == codomain_->field()))
        throw FieldMismatchError("map between spaces over different fields");
    columns_.reserve(columns.size());
    for (auto& col : columns)
        columns_.push_back(canonicalize(std::move(col), codomain_->dim(), codomain_->field()));
}

LinearMap LinearMap::from_triplets(
    SpacePtr domain, SpacePtr codomain,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>& entries) {
    std::vector<Column> cols(domain->dim());
    for (const auto& [row, col, value] : entries) {
        if (col >= domain->dim()) throw ShapeMismatchError("entry column out of range");
        cols[col].push_back({row, value});
    }
    return LinearMap(std::move(domain), std::move(codomain), std::move(cols));
}

Vec LinearMap::apply(const Vec& v) const {
    if (!spaces_equal(v.space(), domain_))
        throw ShapeMismatchError("vector not in the map's domain");
    return Vec(codomain_, accumulate_apply(columns_, v.entries()));
}

bool operator==(const LinearMap& a, const LinearMap& b) {
    return spaces_equal(a.domain_, b.domain_) && spaces_equal(a.codomain_, b.codomain_) &&
           a.columns_ == b.columns_;
}

// ---- PartialLinearMap ----

PartialLinearMap::PartialLinearMap(SpacePtr domain, SpacePtr codomain,
                                   std::vector<std::optional<Column>> columns)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (columns.size() != domain_->dim())
        throw ShapeMismatchError("column count does not match domain dimension");
    columns_.reserve(columns.size());
    for (auto& col : columns) {
        if (col)
            columns_.push_back(canonicalize(std::move(*col), codomain_->dim(),
                                            codomain_->field()));
        else
            columns_.push_back(std::nullopt);
    }
}

PartialLinearMap PartialLinearMap::undefined(SpacePtr domain, SpacePtr codomain) {
    std::vector<std::optional<Column>> cols(domain->dim(), std::nullopt);
    return PartialLinearMap(std::move(domain), std::move(codomain), std::move(cols));
}

PartialLinearMap PartialLinearMap::from_total(const LinearMap& map) {
    std::vector<std::optional<Column>> cols;
    cols.reserve(map.domain()->dim());
    for (const Column& c : map.columns()) cols.emplace_back(c);
    return PartialLinearMap(map.domain(), map.codomain(), std::move(cols));
}

const Column& PartialLinearMap::column(std::size_t j) const {
    const auto& col = columns_.at(j);
    if (!col) throw UndefinedColumnError(domain_->label(j));
    return *col;
}

PartialLinearMap PartialLinearMap::with_column(std::size_t j, Column column) const {
    auto cols = columns_;
    cols.at(j) = std::move(column);
    return PartialLinearMap(domain_, codomain_, std::move(cols));
}

Vec PartialLinearMap::apply(const Vec& v) const {
    if (!spaces_equal(v.space(), domain_))
        throw ShapeMismatchError("vector not in the map's domain");
    std::map<std::uint32_t, Scalar> acc;
    for (const Entry& in : v.entries()) {
        for (const Entry& e : column(in.row)) {
            auto [it, inserted] = acc.try_emplace(e.row, e.value * in.value);
            if (!inserted) it->second = it->second + e.value * in.value;
        }
    }
    Column out;
    for (auto& [row, val] : acc)
        if (!val.is_zero()) out.push_back({row, std::move(val)});
    return Vec(codomain_, std::move(out));
}

LinearMap PartialLinearMap::to_total() const {
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (std::size_t j = 0; j < columns_.size(); ++j) cols.push_back(column(j));
    return LinearMap(domain_, codomain_, std::move(cols));
}

// ---- DiagramPath ----

DiagramPath::DiagramPath(std::vector<PartialLinearMap> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) throw ShapeMismatchError("a diagram path needs at least one stage");
    for (std::size_t i = 0; i + 1 < stages_.size(); ++i)
        if (!spaces_equal(stages_[i].codomain(), stages_[i + 1].domain()))
            throw ShapeMismatchError("path stages do not chain at position " +
                                     std::to_string(i));
}

Vec evaluate_path(const DiagramPath& path, const Vec& input) {
    Vec current = input;
    for (const auto& stage : path.stages()) current = stage.apply(current);
    return current;
}

// ---- constructions ----

LinearMap identity(const SpacePtr& space) {
    std::vector<Column> cols(space->dim());
    Scalar one = Scalar::one(space->field());
    for (std::uint32_t j = 0; j < space->dim(); ++j) cols[j] = {Entry{j, one}};
    return LinearMap(space, space, std::move(cols));
}

LinearMap zero_map(const SpacePtr& domain, const SpacePtr& codomain) {
    return LinearMap(domain, codomain, std::vector<Column>(domain->dim()));
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
    if (!spaces_equal(f.domain(), g.codomain()))
        throw ShapeMismatchError("compose: inner spaces disagree");
    std::vector<Column> cols;
    cols.reserve(g.domain()->dim());
    for (std::size_t j = 0; j < g.domain()->dim(); ++j)
        cols.push_back(accumulate_apply(f.columns(), g.column(j)));
    return LinearMap(g.domain(), f.codomain(), std::move(cols));
}

LinearMap compose_many(const std::vector<LinearMap>& stages_outermost_last) {
    if (stages_outermost_last.empty())
        throw ShapeMismatchError("compose_many needs at least one map");
    LinearMap out = stages_outermost_last.front();
    for (std::size_t i = 1; i < stages_outermost_last.size(); ++i)
        out = compose(stages_outermost_last[i], out);
    return out;
}

LinearMap tensor_map(const LinearMap& f, const LinearMap& g) {
    SpacePtr dom = tensor_space(f.domain(), g.domain());
    SpacePtr cod = tensor_space(f.codomain(), g.codomain());
    const std::size_t gcod = g.codomain()->dim();
    std::vector<Column> cols;
    cols.reserve(dom->dim());
    for (std::size_t jf = 0; jf < f.domain()->dim(); ++jf) {
        for (std::size_t jg = 0; jg < g.domain()->dim(); ++jg) {
            Column col;
            col.reserve(f.column(jf).size() * g.column(jg).size());
            for (const Entry& ef : f.column(jf))
                for (const Entry& eg : g.column(jg))
                    col.push_back({static_cast<std::uint32_t>(ef.row * gcod + eg.row),
                                   ef.value * eg.value});
            cols.push_back(std::move(col));
        }
    }
    return LinearMap(std::move(dom), std::move(cod), std::move(cols));
}

LinearMap tensor_many_maps(const std::vector<LinearMap>& factors) {
    if (factors.empty()) throw ShapeMismatchError("tensor of zero maps");
    LinearMap out = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_map(out, factors[i]);
    return out;
}

PartialLinearMap tensor_map(const PartialLinearMap& f, const PartialLinearMap& g) {
    SpacePtr dom = tensor_space(f.domain(), g.domain());
    SpacePtr cod = tensor_space(f.codomain(), g.codomain());
    const std::size_t gcod = g.codomain()->dim();
    std::vector<std::optional<Column>> cols;
    cols.reserve(dom->dim());
    for (std::size_t jf = 0; jf < f.domain()->dim(); ++jf) {
        for (std::size_t jg = 0; jg < g.domain()->dim(); ++jg) {
            if (!f.is_defined(jf) || !g.is_defined(jg)) {
                cols.push_back(std::nullopt);
                continue;
            }
            Column col;
            for (const Entry& ef : f.column(jf))
                for (const Entry& eg : g.column(jg))
                    col.push_back({static_cast<std::uint32_t>(ef.row * gcod + eg.row),
                                   ef.value * eg.value});
            cols.emplace_back(std::move(col));
        }
    }
    return PartialLinearMap(std::move(dom), std::move(cod), std::move(cols));
}

LinearMap permute_factors(const std::vector<SpacePtr>& factors,
                          const std::vector<std::size_t>& perm) {
    const std::size_t m = factors.size();
    if (perm.size() != m) throw ShapeMismatchError("permutation length mismatch");
    std::vector<bool> hit(m, false);
    for (std::size_t p : perm) {
        if (p >= m || hit[p]) throw ShapeMismatchError("not a permutation");
        hit[p] = true;
    }
    std::vector<SpacePtr> out_factors(m);
    for (std::size_t i = 0; i < m; ++i) out_factors[perm[i]] = factors[i];

    SpacePtr dom = tensor_many(factors);
    SpacePtr cod = tensor_many(out_factors);

    std::vector<std::size_t> in_stride(m, 1), out_stride(m, 1);
    for (std::size_t i = m; i-- > 1;)
        in_stride[i - 1] = in_stride[i] * factors[i]->dim();
    for (std::size_t i = m; i-- > 1;)
        out_stride[i - 1] = out_stride[i] * out_factors[i]->dim();

    Scalar one = Scalar::one(dom->field());
    std::vector<Column> cols(dom->dim());
    std::vector<std::size_t> tuple(m, 0);
    for (std::size_t j = 0; j < dom->dim(); ++j) {
        std::size_t rest = j;
        for (std::size_t i = 0; i < m; ++i) {
            tuple[i] = rest / in_stride[i];
            rest %= in_stride[i];
        }
        std::size_t target = 0;
        for (std::size_t i = 0; i < m; ++i) target += tuple[i] * out_stride[perm[i]];
        cols[j] = {Entry{static_cast<std::uint32_t>(target), one}};
    }
    return LinearMap(std::move(dom), std::move(cod), std::move(cols));
}

LinearMap swap_factors(const std::vector<SpacePtr>& factors, std::size_t i, std::size_t j) {
    std::vector<std::size_t> perm(factors.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[j]);
    return permute_factors(factors, perm);
}

LinearMap left_unitor(const SpacePtr& v) {
    SpacePtr dom = tensor_space(Space::ground(v->field()), v);
    std::vector<Column> cols(v->dim());
    Scalar one = Scalar::one(v->field());
    for (std::uint32_t j = 0; j < v->dim(); ++j) cols[j] = {Entry{j, one}};
    return LinearMap(dom, v, std::move(cols));
}

LinearMap right_unitor(const SpacePtr& v) {
    SpacePtr dom = tensor_space(v, Space::ground(v->field()));
    std::vector<Column> cols(v->dim());
    Scalar one = Scalar::one(v->field());
    for (std::uint32_t j = 0; j < v->dim(); ++j) cols[j] = {Entry{j, one}};
    return LinearMap(dom, v, std::move(cols));
}

LinearMap left_unitor_inv(const SpacePtr& v) {
    SpacePtr cod = tensor_space(Space::ground(v->field()), v);
    std::vector<Column> cols(v->dim());
    Scalar one = Scalar::one(v->field());
    for (std::uint32_t j = 0; j < v->dim(); ++j) cols[j] = {Entry{j, one}};
    return LinearMap(v, cod, std::move(cols));
}

LinearMap right_unitor_inv(const SpacePtr& v) {
    SpacePtr cod = tensor_space(v, Space::ground(v->field()));
    std::vector<Column> cols(v->dim());
    Scalar one = Scalar::one(v->field());
    for (std::uint32_t j = 0; j < v->dim(); ++j) cols[j] = {Entry{j, one}};
    return LinearMap(v, cod, std::move(cols));
}

// ---- inversion ----

std::optional<LinearMap> try_invert(const LinearMap& f) {
    const std::size_t n = f.domain()->dim();
    if (f.codomain()->dim() != n) return std::nullopt;
    const FieldSpec& field = f.domain()->field();
    Scalar zero = Scalar::zero(field);

    // dense augmented [M | I], straightforward exact elimination
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n, zero));
    for (std::size_t j = 0; j < n; ++j)
        for (const Entry& e : f.column(j)) m[e.row][j] = e.value;
    for (std::size_t i = 0; i < n; ++i) m[i][n + i] = Scalar::one(field);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        Scalar inv = m[col][col].inverse();
        for (std::size_t j = col; j < 2 * n; ++j) m[col][j] = m[col][j] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            Scalar factor = m[i][col];
            for (std::size_t j = col; j < 2 * n; ++j)
                m[i][j] = m[i][j] - factor * m[col][j];
        }
    }

    std::vector<Column> cols(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (!m[i][n + j].is_zero())
                cols[j].push_back({static_cast<std::uint32_t>(i), m[i][n + j]});
    LinearMap inverse(f.codomain(), f.domain(), std::move(cols));

    if (!(compose(f, inverse) == identity(f.codomain())) ||
        !(compose(inverse, f) == identity(f.domain())))
        throw InternalCoherenceError("inverse failed its roundtrip check");
    return inverse;
}

LinearMap invert(const LinearMap& f) {
    if (f.domain()->dim() != f.codomain()->dim())
        throw ShapeMismatchError("only square maps can be inverted");
    auto inv = try_invert(f);
    if (!inv)
        throw SingularMapError("map is not bijective");
    return *inv;
}

MapComparison maps_equal(const LinearMap& f, const LinearMap& g) {
    if (!spaces_equal(f.domain(), g.domain()) || !spaces_equal(f.codomain(), g.codomain()))
        throw ShapeMismatchError("maps_equal: maps have different shapes");
    for (std::size_t j = 0; j < f.domain()->dim(); ++j) {
        if (f.column(j) == g.column(j)) continue;
        MapComparison out;
        out.equal = false;
        out.witness_label = f.domain()->label(j);
        out.left = Vec(f.codomain(), f.column(j));
        out.right = Vec(g.codomain(), g.column(j));
        return out;
    }
    return MapComparison{true, {}, std::nullopt, std::nullopt};
}

}  // namespace twistlab
