#include "twistlab/twist.hpp"

#include <functional>
#include <map>
#include <set>

namespace twistlab {

namespace {

SpacePtr power_space(const SpacePtr& v, unsigned n) {
    std::vector<SpacePtr> factors(n, v);
    return tensor_many(factors);
}

LinearMap id_power(const SpacePtr& v, unsigned n) { return identity(power_space(v, n)); }

// lambda(h,1) and lambda(1,g) are forced to 1 by the unit squares; we build
// whatever table we are given and let the axiom report say so.
LinearMap lambda_table_map(const SpacePtr& a_space, const SpacePtr& b_space,
                           const GradedGroupTwistTable& table) {
    const std::size_t na = a_space->dim(), nb = b_space->dim();
    if (table.values.size() != nb)
        throw ShapeMismatchError("lambda table must have one row per basis element of H");
    SpacePtr dom = tensor_space(b_space, a_space);
    SpacePtr cod = tensor_space(a_space, b_space);
    std::vector<Column> cols(dom->dim());
    for (std::size_t ib = 0; ib < nb; ++ib) {
        if (table.values[ib].size() != na)
            throw ShapeMismatchError("lambda table must have one column per basis element of G");
        for (std::size_t ia = 0; ia < na; ++ia) {
            const Scalar& lam = table.values[ib][ia];
            if (lam.is_zero())
                throw NonInvertibleLambdaError("lambda value at (" + b_space->label(ib) +
                                               ", " + a_space->label(ia) + ") is zero");
            cols[ib * na + ia] = {Entry{static_cast<std::uint32_t>(ia * nb + ib), lam}};
        }
    }
    return LinearMap(dom, cod, std::move(cols));
}

void require_twist_shapes(const AlgebraData& a, const AlgebraData& b, const LinearMap& tau) {
    if (!(a.space->field() == b.space->field()))
        throw FieldMismatchError("twisting map between algebras over different fields");
    if (!spaces_equal(tau.domain(), tensor_space(b.space, a.space)) ||
        !spaces_equal(tau.codomain(), tensor_space(a.space, b.space)))
        throw ShapeMismatchError("twist must map B(x)A -> A(x)B");
}

void require_checked(const TwistingMap& t) {
    std::optional<bool> ok = t.verified();
    if (!ok.has_value()) {
        check_twisting(t);
        ok = t.verified();
    }
    if (!*ok)
        throw UncheckedTwistError("the map failed its twisting axioms; "
                                  "no twisted product is defined");
}

// compat = counit squares + comultiplication hexagon, the exact gate for
// coalgebra (and hence Frobenius) inheritance
struct CompatPieces {
    MapComparison counit_a;
    MapComparison counit_b;
    MapComparison hexagon;
    bool all() const { return counit_a.equal && counit_b.equal && hexagon.equal; }
};

CompatPieces compat_pieces(const TwistingMap& t, const CoalgebraData& ca,
                           const CoalgebraData& cb) {
    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;
    if (!spaces_equal(ca.space, A) || !spaces_equal(cb.space, B))
        throw ShapeMismatchError("coalgebras must live on the twisted algebras' spaces");
    SpacePtr k = Space::ground(A->field());
    LinearMap id_a = identity(A), id_b = identity(B);
    const LinearMap& tau = t.map();

    CompatPieces out;
    {
        LinearMap lhs = compose(tensor_map(ca.counit, id_b), tau);
        LinearMap rhs = compose(swap_factors({B, k}, 0, 1), tensor_map(id_b, ca.counit));
        out.counit_a = maps_equal(lhs, rhs);
    }
    {
        LinearMap lhs = compose(tensor_map(id_a, cb.counit), tau);
        LinearMap rhs = compose(swap_factors({k, A}, 0, 1), tensor_map(cb.counit, id_a));
        out.counit_b = maps_equal(lhs, rhs);
    }
    {
        LinearMap lhs = compose(tensor_map(ca.comul, cb.comul), tau);
        LinearMap rhs = compose_many({tensor_map(cb.comul, ca.comul),
                                      tensor_many_maps({id_b, tau, id_a}),
                                      tensor_map(tau, tau),
                                      tensor_many_maps({id_a, tau, id_b})});
        out.hexagon = maps_equal(lhs, rhs);
    }
    return out;
}

void require_frobenius_inputs(const FrobeniusData& fa, const FrobeniusData& fb) {
    if (!check_frobenius(fa).passed() || !check_frobenius(fb).passed())
        throw NotFrobeniusInputsError("both factors must be Frobenius algebras");
}

void require_compat(const TwistingMap& t, const CoalgebraData& ca, const CoalgebraData& cb) {
    auto pieces = compat_pieces(t, ca, cb);
    if (!pieces.all())
        throw NoInheritedStructureError(
            "the twist is not compatible with the comultiplications; "
            "no structure is inherited");
}

}  // namespace

// ---- TwistingMap ----

TwistingMap::TwistingMap(AlgebraData a, AlgebraData b, LinearMap tau,
                         std::optional<LinearMap> inverse)
    : a_(std::move(a)), b_(std::move(b)), tau_(std::move(tau)),
      cache_(std::make_shared<InverseCache>()), status_(std::make_shared<Status>()) {
    require_twist_shapes(a_, b_, tau_);
    if (inverse) {
        if (!(compose(tau_, *inverse) == identity(tau_.codomain())) ||
            !(compose(*inverse, tau_) == identity(tau_.domain())))
            throw InternalCoherenceError("supplied twist inverse fails its roundtrip");
        std::call_once(cache_->once, [&] { cache_->inverse = std::move(inverse); });
    }
}

const LinearMap& TwistingMap::inverse() const {
    std::call_once(cache_->once, [&] { cache_->inverse = try_invert(tau_); });
    if (!cache_->inverse)
        throw NotBijectiveError("twist is not bijective, its inverse does not exist");
    return *cache_->inverse;
}

// ---- constructors ----

TwistingMap trivial_twist(const AlgebraData& a, const AlgebraData& b) {
    LinearMap flip = swap_factors({b.space, a.space}, 0, 1);
    LinearMap flip_inv = swap_factors({a.space, b.space}, 0, 1);
    TwistingMap t(a, b, flip, flip_inv);
    check_twisting(t);
    if (!*t.verified())
        throw UncheckedTwistError("flip failed the twisting axioms; "
                                  "are the algebra structure maps valid?");
    return t;
}

TwistingMap bicharacter_twist(const AlgebraData& a, const AlgebraData& b,
                              const Bicharacter& t) {
    if (!a.space->grading() || !b.space->grading())
        throw UngradedAlgebraError("bicharacter twists need graded algebras");
    const Grading& ga = *a.space->grading();
    const Grading& gb = *b.space->grading();
    const FieldSpec& field = a.space->field();

    if (t.generator_values.size() != ga.group.rank())
        throw InconsistentBicharacterError("bicharacter rank mismatch with the first grading");
    for (const auto& row : t.generator_values)
        if (row.size() != gb.group.rank())
            throw InconsistentBicharacterError(
                "bicharacter rank mismatch with the second grading");

    // value^modulus must be 1 whenever a grading coordinate is cyclic,
    // otherwise the extension over that group is ill-defined
    for (std::size_t r = 0; r < ga.group.rank(); ++r)
        for (std::size_t s = 0; s < gb.group.rank(); ++s) {
            const Scalar& v = t.generator_values[r][s];
            if (v.is_zero())
                throw InconsistentBicharacterError("bicharacter values must be invertible");
            if (ga.group.moduli[r] != 0 &&
                !v.pow(static_cast<long>(ga.group.moduli[r])).is_one())
                throw InconsistentBicharacterError(
                    "bicharacter value incompatible with a cyclic modulus of the first grading");
            if (gb.group.moduli[s] != 0 &&
                !v.pow(static_cast<long>(gb.group.moduli[s])).is_one())
                throw InconsistentBicharacterError(
                    "bicharacter value incompatible with a cyclic modulus of the second grading");
        }

    auto value = [&](const std::vector<std::int64_t>& da,
                     const std::vector<std::int64_t>& db) {
        Scalar out = Scalar::one(field);
        for (std::size_t r = 0; r < da.size(); ++r)
            for (std::size_t s = 0; s < db.size(); ++s) {
                long e = static_cast<long>(da[r]) * static_cast<long>(db[s]);
                if (e != 0) out = out * t.generator_values[r][s].pow(e);
            }
        return out;
    };

    const std::size_t na = a.space->dim(), nb = b.space->dim();
    SpacePtr dom = tensor_space(b.space, a.space);
    SpacePtr cod = tensor_space(a.space, b.space);
    std::vector<Column> cols(dom->dim()), inv_cols(cod->dim());
    for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t ia = 0; ia < na; ++ia) {
            Scalar v = value(ga.grades[ia], gb.grades[ib]);
            cols[ib * na + ia] = {Entry{static_cast<std::uint32_t>(ia * nb + ib), v}};
            inv_cols[ia * nb + ib] = {
                Entry{static_cast<std::uint32_t>(ib * na + ia), v.inverse()}};
        }
    TwistingMap twist(a, b, LinearMap(dom, cod, std::move(cols)),
                      LinearMap(cod, dom, std::move(inv_cols)));
    check_twisting(twist);
    if (!*twist.verified())
        throw UncheckedTwistError(
            "bicharacter twist failed the twisting axioms; the multiplications "
            "are not graded for the declared gradings");
    return twist;
}

GradedGroupTwist graded_group_twist(const AlgebraData& group_algebra_g,
                                    const AlgebraData& group_algebra_h,
                                    const GradedGroupTwistTable& lambda) {
    LinearMap tau =
        lambda_table_map(group_algebra_g.space, group_algebra_h.space, lambda);
    // diagonal-by-scalars, so the inverse is entrywise reciprocal
    std::vector<Column> inv_cols(tau.codomain()->dim());
    for (std::size_t j = 0; j < tau.domain()->dim(); ++j) {
        const Entry& e = tau.column(j)[0];
        inv_cols[e.row] = {Entry{static_cast<std::uint32_t>(j), e.value.inverse()}};
    }
    TwistingMap twist(group_algebra_g, group_algebra_h, tau,
                      LinearMap(tau.codomain(), tau.domain(), std::move(inv_cols)));
    Report report = check_twisting(twist);
    return {std::move(twist), std::move(report)};
}

// ---- check_twisting ----

Report check_twisting(const TwistingMap& t) {
    const AlgebraData& a = t.algebra_a();
    const AlgebraData& b = t.algebra_b();
    const SpacePtr& A = a.space;
    const SpacePtr& B = b.space;
    SpacePtr k = Space::ground(A->field());
    LinearMap id_a = identity(A), id_b = identity(B);
    const LinearMap& tau = t.map();

    Report report;
    report.subject = "twisting axioms for " + a.name + " / " + b.name;

    bool bijective = try_invert(tau).has_value();
    report.add("bijectivity", bijective ? CheckStatus::Pass : CheckStatus::Fail,
               "a twisting map is a bijective linear map");

    LinearMap unit_a_lhs = compose(tau, tensor_map(id_b, a.unit));
    LinearMap unit_a_rhs = compose(tensor_map(a.unit, id_b), swap_factors({B, k}, 0, 1));
    auto unit_a = maps_equal(unit_a_lhs, unit_a_rhs);
    report.add_comparison("unit square (left factor)", unit_a,
                          "the twist fixes the unit of the left algebra");

    LinearMap unit_b_lhs = compose(tau, tensor_map(b.unit, id_a));
    LinearMap unit_b_rhs = compose(tensor_map(id_a, b.unit), swap_factors({k, A}, 0, 1));
    auto unit_b = maps_equal(unit_b_lhs, unit_b_rhs);
    report.add_comparison("unit square (right factor)", unit_b,
                          "the twist fixes the unit of the right algebra");

    LinearMap hex_lhs = compose(tau, tensor_map(b.mul, a.mul));
    LinearMap hex_rhs = compose_many({tensor_many_maps({id_b, tau, id_a}),
                                      tensor_map(tau, tau),
                                      tensor_many_maps({id_a, tau, id_b}),
                                      tensor_map(a.mul, b.mul)});
    auto hexagon = maps_equal(hex_lhs, hex_rhs);
    report.add_comparison("multiplications hexagon", hexagon,
                          "the twist preserves both multiplications at once");

    LinearMap ma_lhs = compose(tau, tensor_map(id_b, a.mul));
    LinearMap ma_rhs = compose_many({tensor_map(tau, id_a), tensor_map(id_a, tau),
                                     tensor_map(a.mul, id_b)});
    auto square_a = maps_equal(ma_lhs, ma_rhs);
    report.add_comparison("multiplication square (left factor)", square_a,
                          "the twist preserves the left algebra's multiplication");

    LinearMap mb_lhs = compose(tau, tensor_map(b.mul, id_a));
    LinearMap mb_rhs = compose_many({tensor_map(id_b, tau), tensor_map(tau, id_b),
                                     tensor_map(id_a, b.mul)});
    auto square_b = maps_equal(mb_lhs, mb_rhs);
    report.add_comparison("multiplication square (right factor)", square_b,
                          "the twist preserves the right algebra's multiplication");

    // The two axiom systems describe the same class of maps: given the unit
    // squares, the hexagon holds iff both one-sided squares hold, and the
    // one-sided squares imply the hexagon outright.
    bool units = unit_a.equal && unit_b.equal;
    bool defn = units && hexagon.equal;
    bool onesided = units && square_a.equal && square_b.equal;
    if (defn != onesided)
        throw InternalCoherenceError(
            "hexagon-based and one-sided twisting axioms disagree on this instance");
    if (square_a.equal && square_b.equal && !hexagon.equal)
        throw InternalCoherenceError(
            "one-sided multiplication squares hold but the hexagon fails");
    report.add("axiom system equivalence", CheckStatus::Pass,
               "unit squares + hexagon hold iff unit squares + one-sided squares hold");

    t.status_->ok = bijective && defn;
    return report;
}

// ---- extension from generators ----

TwistingMap extend_twist_from_generators(const ExtensionProblem& problem,
                                         const PartialLinearMap& seed) {
    const AlgebraData& a = problem.a;
    const AlgebraData& b = problem.b;
    const std::size_t na = a.space->dim(), nb = b.space->dim();
    const MonomialStructure& ma = problem.monomials_a;
    const MonomialStructure& mb = problem.monomials_b;
    if (ma.degree.size() != na || ma.split.size() != na || mb.degree.size() != nb ||
        mb.split.size() != nb)
        throw ShapeMismatchError("monomial structure does not match the bases");

    SpacePtr dom = tensor_space(b.space, a.space);
    SpacePtr cod = tensor_space(a.space, b.space);
    if (!spaces_equal(seed.domain(), dom) || !spaces_equal(seed.codomain(), cod))
        throw ShapeMismatchError("seed must map B(x)A -> A(x)B");

    const FieldSpec& field = a.space->field();
    Scalar one = Scalar::one(field);

    // table[ib][ia] = image column of b (x) a in A (x) B
    std::vector<std::vector<std::optional<Column>>> table(
        nb, std::vector<std::optional<Column>>(na, std::nullopt));
    for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t ia = 0; ia < na; ++ia)
            if (seed.is_defined(ib * na + ia)) table[ib][ia] = seed.column(ib * na + ia);

    auto place = [&](std::size_t ib, std::size_t ia, Column forced, const char* why) {
        auto& slot = table[ib][ia];
        if (slot && !(*slot == forced)) {
            std::string label = b.space->label(ib) + "⊗" + a.space->label(ia);
            throw InconsistentExtensionError(
                "seed value at " + label + " contradicts the " + why + ": seeded " +
                    Vec(cod, *slot).to_string() + " vs forced " +
                    Vec(cod, forced).to_string(),
                label);
        }
        slot = std::move(forced);
    };
    // unit rows and columns are forced by the unit squares
    for (std::size_t ib = 0; ib < nb; ++ib)
        place(ib, ma.unit_index,
              {Entry{static_cast<std::uint32_t>(ma.unit_index * nb + ib), one}},
              "unit square");
    for (std::size_t ia = 0; ia < na; ++ia)
        place(mb.unit_index, ia,
              {Entry{static_cast<std::uint32_t>(ia * nb + mb.unit_index), one}},
              "unit square");

    std::set<std::pair<std::size_t, std::size_t>> in_progress;
    std::function<const Column&(std::size_t, std::size_t)> col =
        [&](std::size_t ib, std::size_t ia) -> const Column& {
        if (table[ib][ia]) return *table[ib][ia];
        std::string label = b.space->label(ib) + "⊗" + a.space->label(ia);
        if (!in_progress.insert({ib, ia}).second)
            throw IncompleteSeedError("extension recursion cycles at " + label);

        std::map<std::uint32_t, Scalar> acc;
        auto add = [&](std::uint32_t row, const Scalar& v) {
            auto [it, inserted] = acc.try_emplace(row, v);
            if (!inserted) it->second = it->second + v;
        };

        if (ma.degree[ia] >= 2) {
            // tau(b (x) g*rest) through (mul_A (x) 1)(1 (x) tau)(tau (x) 1)
            auto [g, rest] = *ma.split[ia];
            for (const Entry& e1 : col(ib, g)) {
                std::size_t a1 = e1.row / nb, b1 = e1.row % nb;
                for (const Entry& e2 : col(b1, rest)) {
                    std::size_t a2 = e2.row / nb, b2 = e2.row % nb;
                    for (const Entry& p : a.mul.column(a1 * na + a2))
                        add(static_cast<std::uint32_t>(p.row * nb + b2),
                            e1.value * e2.value * p.value);
                }
            }
        } else if (mb.degree[ib] >= 2) {
            // tau(h*rest (x) a) through (1 (x) mul_B)(tau (x) 1)(1 (x) tau)
            auto [h, rest] = *mb.split[ib];
            for (const Entry& e1 : col(rest, ia)) {
                std::size_t a1 = e1.row / nb, b1 = e1.row % nb;
                for (const Entry& e2 : col(h, a1)) {
                    std::size_t a2 = e2.row / nb, b2 = e2.row % nb;
                    for (const Entry& p : b.mul.column(b2 * nb + b1))
                        add(static_cast<std::uint32_t>(a2 * nb + p.row),
                            e1.value * e2.value * p.value);
                }
            }
        } else {
            throw IncompleteSeedError("seed does not define the twist at " + label);
        }

        Column out;
        for (auto& [row, v] : acc)
            if (!v.is_zero()) out.push_back({row, std::move(v)});
        in_progress.erase({ib, ia});
        table[ib][ia] = std::move(out);
        return *table[ib][ia];
    };

    std::vector<Column> cols(dom->dim());
    for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t ia = 0; ia < na; ++ia) cols[ib * na + ia] = col(ib, ia);
    LinearMap tau(dom, cod, std::move(cols));

    // Audit: the one-sided multiplication squares must hold for every
    // factorization, including the ones that land on a relation (a product
    // that truncates to zero).  This is where inconsistent seeds surface.
    LinearMap id_a = identity(a.space), id_b = identity(b.space);
    {
        LinearMap lhs = compose(tau, tensor_map(id_b, a.mul));
        LinearMap rhs = compose_many({tensor_map(tau, id_a), tensor_map(id_a, tau),
                                      tensor_map(a.mul, id_b)});
        auto cmp = maps_equal(lhs, rhs);
        if (!cmp.equal)
            throw InconsistentExtensionError(
                "extension is inconsistent with the left algebra's relations at " +
                    cmp.witness_label + ": product route gives " + cmp.left->to_string() +
                    ", twist route gives " + cmp.right->to_string(),
                cmp.witness_label);
    }
    {
        LinearMap lhs = compose(tau, tensor_map(b.mul, id_a));
        LinearMap rhs = compose_many({tensor_map(id_b, tau), tensor_map(tau, id_b),
                                      tensor_map(id_a, b.mul)});
        auto cmp = maps_equal(lhs, rhs);
        if (!cmp.equal)
            throw InconsistentExtensionError(
                "extension is inconsistent with the right algebra's relations at " +
                    cmp.witness_label + ": product route gives " + cmp.left->to_string() +
                    ", twist route gives " + cmp.right->to_string(),
                cmp.witness_label);
    }

    if (!try_invert(tau))
        throw NotBijectiveError("the extended twist is not bijective");

    TwistingMap twist(a, b, std::move(tau));
    check_twisting(twist);
    if (!*twist.verified())
        throw InternalCoherenceError("audited extension still failed the twisting axioms");
    return twist;
}

// ---- twisted product ----

TwistedAlgebra build_twisted_algebra(
    const TwistingMap& t,
    const std::optional<std::pair<CoalgebraData, CoalgebraData>>& coalgebras) {
    require_checked(t);
    const AlgebraData& a = t.algebra_a();
    const AlgebraData& b = t.algebra_b();
    SpacePtr product = tensor_space(a.space, b.space);
    SpacePtr k = Space::ground(product->field());
    LinearMap id_a = identity(a.space), id_b = identity(b.space);

    LinearMap mul = compose(tensor_map(a.mul, b.mul),
                            tensor_many_maps({id_a, t.map(), id_b}));
    LinearMap unit = compose(tensor_map(a.unit, b.unit), left_unitor_inv(k));

    AlgebraData algebra{product, std::move(mul), std::move(unit),
                        a.name + "⊗" + b.name};
    if (!check_algebra(algebra).passed())
        throw InternalCoherenceError(
            "twisted product of a verified twist failed the algebra axioms");

    TwistedAlgebra out{std::move(algebra), std::nullopt};
    if (coalgebras)
        out.coalgebra = induced_coalgebra(t, coalgebras->first, coalgebras->second);
    return out;
}

CoalgebraData induced_coalgebra(const TwistingMap& t, const CoalgebraData& ca,
                                const CoalgebraData& cb) {
    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;
    if (!spaces_equal(ca.space, A) || !spaces_equal(cb.space, B))
        throw ShapeMismatchError("coalgebras must live on the twisted algebras' spaces");
    SpacePtr product = tensor_space(A, B);
    SpacePtr k = Space::ground(product->field());
    LinearMap id_a = identity(A), id_b = identity(B);

    LinearMap comul = compose(tensor_many_maps({id_a, t.inverse(), id_b}),
                              tensor_map(ca.comul, cb.comul));
    LinearMap counit = compose(left_unitor(k), tensor_map(ca.counit, cb.counit));
    return CoalgebraData{product, std::move(comul), std::move(counit),
                         ca.name + "⊗" + cb.name};
}

// ---- coalgebra compatibility ----

Report check_coalgebra_compat(const TwistingMap& t, const CoalgebraData& ca,
                              const CoalgebraData& cb) {
    // deliberately does not require the twisting axioms: the equivalences
    // verified here hold for any bijective linear map
    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;
    LinearMap id_a = identity(A), id_b = identity(B);
    const LinearMap& tau = t.map();

    Report report;
    report.subject = "coalgebra compatibility of the twist with " + ca.name + ", " + cb.name;

    CompatPieces pieces = compat_pieces(t, ca, cb);
    report.add_comparison("counit square (left factor)", pieces.counit_a,
                          "the twist is compatible with the left counit");
    report.add_comparison("counit square (right factor)", pieces.counit_b,
                          "the twist is compatible with the right counit");
    report.add_comparison("comultiplication hexagon", pieces.hexagon,
                          "the twist preserves both comultiplications at once");

    LinearMap cma_lhs = compose(tensor_map(ca.comul, id_b), tau);
    LinearMap cma_rhs = compose_many({tensor_map(id_b, ca.comul), tensor_map(tau, id_a),
                                      tensor_map(id_a, tau)});
    auto split_a = maps_equal(cma_lhs, cma_rhs);
    report.add_comparison("split square (left comultiplication)", split_a,
                          "the twist is compatible with the left comultiplication alone");

    LinearMap cmb_lhs = compose(tensor_map(id_a, cb.comul), tau);
    LinearMap cmb_rhs = compose_many({tensor_map(cb.comul, id_a), tensor_map(id_b, tau),
                                      tensor_map(tau, id_b)});
    auto split_b = maps_equal(cmb_lhs, cmb_rhs);
    report.add_comparison("split square (right comultiplication)", split_b,
                          "the twist is compatible with the right comultiplication alone");

    CoalgebraData induced = induced_coalgebra(t, ca, cb);
    Report induced_report = check_coalgebra(induced);
    report.merge(induced_report, "induced coalgebra: ");

    // Split squares imply the hexagon outright; with the counit squares the
    // implication upgrades to an equivalence.
    if (split_a.equal && split_b.equal && !pieces.hexagon.equal)
        throw InternalCoherenceError("split squares hold but the hexagon fails");
    bool counits = pieces.counit_a.equal && pieces.counit_b.equal;
    if (counits && pieces.hexagon.equal != (split_a.equal && split_b.equal))
        throw InternalCoherenceError(
            "hexagon and split squares disagree although the counit squares hold");
    report.add("split-square equivalence", CheckStatus::Pass,
               "under the counit squares, the hexagon holds iff both split squares hold");

    // The induced structure is a coalgebra exactly when the counit squares
    // and the hexagon hold.
    bool compat = counits && pieces.hexagon.equal;
    if (compat != induced_report.passed())
        throw InternalCoherenceError(
            "induced coalgebra axioms disagree with the compatibility diagrams");
    report.add("induced-coalgebra equivalence", CheckStatus::Pass,
               "the induced structure is a counital coassociative coalgebra iff the "
               "counit squares and the hexagon commute");
    return report;
}

// ---- bialgebra obstruction ----

Report check_bialgebra_obstruction(const TwistingMap& t, const CoalgebraData& ca,
                                   const CoalgebraData& cb) {
    require_checked(t);
    const AlgebraData& a = t.algebra_a();
    const AlgebraData& b = t.algebra_b();
    if (!check_bialgebra(a, ca).passed() || !check_bialgebra(b, cb).passed())
        throw NotBialgebraInputsError("both factors must be bialgebras");

    const SpacePtr& A = a.space;
    const SpacePtr& B = b.space;
    LinearMap id_a = identity(A), id_b = identity(B);

    Report report;
    report.subject = "bialgebra obstruction for the twisted product " + a.name +
                     "⊗" + b.name;

    TwistedAlgebra product = build_twisted_algebra(
        t, std::make_pair(ca, cb));
    Report product_report = check_bialgebra(product.algebra, *product.coalgebra);
    report.merge(product_report, "product: ");

    // comultiplication/flip squares: both ways of shuffling the two
    // comultiplications into the product's tensor square coincide
    LinearMap sq_a_lhs = compose(tensor_many_maps({id_a, t.inverse(), id_b}),
                                 tensor_map(ca.comul, cb.comul));
    LinearMap sq_a_rhs = compose(swap_factors({A, A, B, B}, 1, 2),
                                 tensor_map(ca.comul, cb.comul));
    auto square_a = maps_equal(sq_a_lhs, sq_a_rhs);
    report.add_comparison("comultiplication/flip square (product side)", square_a,
                          "on a bialgebra product, the inverse twist acts as the plain flip "
                          "after both comultiplications");

    LinearMap sq_b_lhs = compose(tensor_many_maps({id_b, t.map(), id_a}),
                                 tensor_map(cb.comul, ca.comul));
    LinearMap sq_b_rhs = compose(swap_factors({B, B, A, A}, 1, 2),
                                 tensor_map(cb.comul, ca.comul));
    auto square_b = maps_equal(sq_b_lhs, sq_b_rhs);
    report.add_comparison("comultiplication/flip square (opposite side)", square_b,
                          "on a bialgebra product, the twist acts as the plain flip after "
                          "both comultiplications");

    auto trivial = maps_equal(t.map(), swap_factors({B, A}, 0, 1));
    report.add_comparison("twist is the flip", trivial,
                          "exact equality against the transposition of tensor factors");

    if (product_report.passed() != trivial.equal)
        throw InternalCoherenceError(
            "twisted product of bialgebras is a bialgebra on a non-trivial twist "
            "(or fails on the trivial one)");
    report.add("obstruction equivalence", CheckStatus::Pass,
               "the twisted product of bialgebras is a bialgebra iff the twist is trivial");

    if (product_report.passed() && !(square_a.equal && square_b.equal))
        throw InternalCoherenceError(
            "product is a bialgebra but a comultiplication/flip square fails");
    return report;
}

// ---- pointwise probes ----

PointwiseVerdict check_pointwise_counterexample(const DiagramPath& lhs,
                                                const DiagramPath& rhs, const Vec& element) {
    if (!spaces_equal(lhs.domain(), rhs.domain()) ||
        !spaces_equal(lhs.codomain(), rhs.codomain()))
        throw ShapeMismatchError("the two paths must share domain and codomain");
    Vec left = evaluate_path(lhs, element);
    Vec right = evaluate_path(rhs, element);
    bool agree = left == right;
    return PointwiseVerdict{agree, std::move(left), std::move(right)};
}

// ---- iterated twists ----

namespace {

// tau_{i,A} : B^i (x) A -> A (x) B^i
LinearMap tau_left_power(const TwistingMap& t, unsigned i) {
    const SpacePtr& B = t.algebra_b().space;
    LinearMap out = t.map();
    for (unsigned m = 2; m <= i; ++m)
        out = compose(tensor_map(t.map(), id_power(B, m - 1)),
                      tensor_map(identity(B), out));
    return out;
}

// tau_{B,j} : B (x) A^j -> A^j (x) B
LinearMap tau_right_power(const TwistingMap& t, unsigned j) {
    const SpacePtr& A = t.algebra_a().space;
    LinearMap out = t.map();
    for (unsigned m = 2; m <= j; ++m)
        out = compose(tensor_map(id_power(A, m - 1), t.map()),
                      tensor_map(out, identity(A)));
    return out;
}

LinearMap iterated_via_b_peels(const TwistingMap& t, unsigned i, unsigned j) {
    const SpacePtr& B = t.algebra_b().space;
    LinearMap block = tau_right_power(t, j);
    LinearMap out = block;
    if (i == 1) return out;
    // first move the innermost B, then the next, outward
    std::vector<LinearMap> stages;
    for (unsigned s = i; s-- > 0;) {
        std::vector<LinearMap> parts;
        if (s > 0) parts.push_back(id_power(B, s));
        parts.push_back(block);
        if (i - 1 - s > 0) parts.push_back(id_power(B, i - 1 - s));
        stages.push_back(tensor_many_maps(parts));
    }
    return compose_many(stages);
}

LinearMap iterated_via_a_peels(const TwistingMap& t, unsigned i, unsigned j) {
    const SpacePtr& A = t.algebra_a().space;
    LinearMap block = tau_left_power(t, i);
    if (j == 1) return block;
    std::vector<LinearMap> stages;
    for (unsigned s = 0; s < j; ++s) {
        std::vector<LinearMap> parts;
        if (s > 0) parts.push_back(id_power(A, s));
        parts.push_back(block);
        if (j - 1 - s > 0) parts.push_back(id_power(A, j - 1 - s));
        stages.push_back(tensor_many_maps(parts));
    }
    return compose_many(stages);
}

}  // namespace

LinearMap iterated_twist(const TwistingMap& t, unsigned i, unsigned j) {
    if (i < 1 || j < 1) throw ShapeMismatchError("iterated twist needs i, j >= 1");
    require_checked(t);
    const AlgebraData& a = t.algebra_a();
    const AlgebraData& b = t.algebra_b();
    const SpacePtr& A = a.space;
    const SpacePtr& B = b.space;

    LinearMap via_b = iterated_via_b_peels(t, i, j);
    LinearMap via_a = iterated_via_a_peels(t, i, j);
    if (!maps_equal(via_b, via_a).equal)
        throw InternalCoherenceError("the two recursion orders for the iterated twist "
                                     "disagree");

    // multiplication compatibility: multiplying a fixed adjacent pair of
    // factors commutes with the iterated twist (first two B's, last two A's)
    // multiply the first two B's (reducing B^i to B^{i-1}) and/or the last
    // two A's, at the same positions before and after the twist
    auto mul_first_b = [&]() {
        return i == 2 ? b.mul : tensor_map(b.mul, id_power(B, i - 2));
    };
    auto mul_last_a = [&]() {
        return j == 2 ? a.mul : tensor_map(id_power(A, j - 2), a.mul);
    };
    if (i >= 2) {
        LinearMap m_in = tensor_many_maps({mul_first_b(), id_power(A, j)});
        LinearMap m_out = tensor_many_maps({id_power(A, j), mul_first_b()});
        LinearMap lhs = compose(iterated_via_b_peels(t, i - 1, j), m_in);
        LinearMap rhs = compose(m_out, via_b);
        if (!maps_equal(lhs, rhs).equal)
            throw InternalCoherenceError(
                "iterated twist is not compatible with the right algebra's multiplication");
    }
    if (j >= 2) {
        LinearMap m_in = tensor_many_maps({id_power(B, i), mul_last_a()});
        LinearMap m_out = tensor_many_maps({mul_last_a(), id_power(B, i)});
        LinearMap lhs = compose(iterated_via_b_peels(t, i, j - 1), m_in);
        LinearMap rhs = compose(m_out, via_b);
        if (!maps_equal(lhs, rhs).equal)
            throw InternalCoherenceError(
                "iterated twist is not compatible with the left algebra's multiplication");
    }
    if (i >= 2 && j >= 2) {
        LinearMap m_in = tensor_many_maps({mul_first_b(), mul_last_a()});
        LinearMap m_out = tensor_many_maps({mul_last_a(), mul_first_b()});
        LinearMap lhs = compose(iterated_via_b_peels(t, i - 1, j - 1), m_in);
        LinearMap rhs = compose(m_out, via_b);
        if (!maps_equal(lhs, rhs).equal)
            throw InternalCoherenceError(
                "iterated twist is not compatible with multiplying both factors");
    }
    return via_b;
}

// ---- Frobenius inheritance ----

Report check_frobenius_inheritance(const TwistingMap& t, const FrobeniusData& fa,
                                   const FrobeniusData& fb) {
    require_checked(t);
    require_frobenius_inputs(fa, fb);

    Report report;
    report.subject = "Frobenius inheritance over the twist of " + fa.algebra.name + ", " +
                     fb.algebra.name;

    CompatPieces pieces = compat_pieces(t, fa.coalgebra, fb.coalgebra);
    report.add_comparison("counit square (left factor)", pieces.counit_a,
                          "the twist is compatible with the left counit");
    report.add_comparison("counit square (right factor)", pieces.counit_b,
                          "the twist is compatible with the right counit");
    report.add_comparison("comultiplication hexagon", pieces.hexagon,
                          "the twist preserves both comultiplications at once");

    if (pieces.all()) {
        TwistedAlgebra product = build_twisted_algebra(
            t, std::make_pair(fa.coalgebra, fb.coalgebra));
        Report frob = check_frobenius({product.algebra, *product.coalgebra});
        report.merge(frob, "product: ");
        if (!frob.passed())
            throw InternalCoherenceError(
                "compatible twist of Frobenius algebras failed to produce a "
                "Frobenius algebra");
        report.add("frobenius structure inherited", CheckStatus::Pass,
                   "a twisted product of Frobenius algebras along a "
                   "comultiplication-compatible twist is a Frobenius algebra");
    } else {
        CoalgebraData induced = induced_coalgebra(t, fa.coalgebra, fb.coalgebra);
        Report co = check_coalgebra(induced);
        report.merge(co, "induced coalgebra: ");
        if (co.passed())
            throw InternalCoherenceError(
                "induced coalgebra valid although a compatibility diagram fails");
        report.add("frobenius structure inherited", CheckStatus::Fail,
                   "no structure inherited: the induced comultiplication is not a "
                   "coalgebra, as forced by the failing compatibility diagram");
    }
    return report;
}

Pairing twisted_pairing(const TwistingMap& t, const FrobeniusData& fa,
                        const FrobeniusData& fb) {
    require_checked(t);
    require_frobenius_inputs(fa, fb);
    require_compat(t, fa.coalgebra, fb.coalgebra);

    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;
    SpacePtr k = Space::ground(A->field());
    LinearMap id_a = identity(A), id_b = identity(B);

    LinearMap beta_a = pairing_from_frobenius(fa).form;
    LinearMap beta_b = pairing_from_frobenius(fb).form;
    LinearMap beta = compose_many({tensor_many_maps({id_a, t.map(), id_b}),
                                   tensor_map(beta_a, beta_b), left_unitor(k)});

    TwistedAlgebra product = build_twisted_algebra(
        t, std::make_pair(fa.coalgebra, fb.coalgebra));
    LinearMap via_product =
        pairing_from_frobenius({product.algebra, *product.coalgebra}).form;
    if (!maps_equal(beta, via_product).equal)
        throw InternalCoherenceError(
            "factorwise pairing through the twist disagrees with the product pairing");
    return Pairing{std::move(beta)};
}

Copairing twisted_copairing(const TwistingMap& t, const FrobeniusData& fa,
                            const FrobeniusData& fb) {
    require_checked(t);
    require_frobenius_inputs(fa, fb);
    require_compat(t, fa.coalgebra, fb.coalgebra);

    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;
    SpacePtr k = Space::ground(A->field());
    LinearMap id_a = identity(A), id_b = identity(B);

    LinearMap alpha_a = copairing_from_frobenius(fa).form;
    LinearMap alpha_b = copairing_from_frobenius(fb).form;
    LinearMap alpha = compose_many({left_unitor_inv(k), tensor_map(alpha_a, alpha_b),
                                    tensor_many_maps({id_a, t.inverse(), id_b})});

    TwistedAlgebra product = build_twisted_algebra(
        t, std::make_pair(fa.coalgebra, fb.coalgebra));
    LinearMap via_product =
        copairing_from_frobenius({product.algebra, *product.coalgebra}).form;
    if (!maps_equal(alpha, via_product).equal)
        throw InternalCoherenceError(
            "factorwise copairing through the twist disagrees with the product copairing");
    return Copairing{std::move(alpha)};
}

// ---- separability and specialness transfer ----

Report check_separability_transfer(const TwistingMap& t, const SeparabilitySection& ga,
                                   const SeparabilitySection& gb) {
    require_checked(t);
    const AlgebraData& a = t.algebra_a();
    const AlgebraData& b = t.algebra_b();
    if (!check_separable(a, ga).passed() || !check_separable(b, gb).passed())
        throw NotSeparableInputsError("both factors must be separable with the given "
                                      "sections");

    const SpacePtr& A = a.space;
    const SpacePtr& B = b.space;
    LinearMap id_a = identity(A), id_b = identity(B);
    const LinearMap& tau = t.map();

    Report report;
    report.subject = "separability transfer over the twist of " + a.name + ", " + b.name;

    LinearMap sa_lhs = compose(tensor_map(ga.gamma, id_b), tau);
    LinearMap sa_rhs = compose_many({tensor_map(id_b, ga.gamma), tensor_map(tau, id_a),
                                     tensor_map(id_a, tau)});
    auto square_a = maps_equal(sa_lhs, sa_rhs);
    report.add_comparison("section square (left factor)", square_a,
                          "the twist is compatible with the left section");

    LinearMap sb_lhs = compose(tensor_map(id_a, gb.gamma), tau);
    LinearMap sb_rhs = compose_many({tensor_map(gb.gamma, id_a), tensor_map(id_b, tau),
                                     tensor_map(tau, id_b)});
    auto square_b = maps_equal(sb_lhs, sb_rhs);
    report.add_comparison("section square (right factor)", square_b,
                          "the twist is compatible with the right section");

    TwistedAlgebra product = build_twisted_algebra(t);
    LinearMap gamma = compose(tensor_many_maps({id_a, t.inverse(), id_b}),
                              tensor_map(ga.gamma, gb.gamma));

    auto right_inverse = maps_equal(compose(product.algebra.mul, gamma),
                                    identity(product.algebra.space));
    report.add_comparison("product section triangle", right_inverse,
                          "the combined section is a right inverse of the product "
                          "multiplication");
    if (!right_inverse.equal)
        throw InternalCoherenceError("combined section is never allowed to fail the "
                                     "right-inverse triangle");

    Report sep = check_separable(product.algebra, SeparabilitySection{gamma});
    report.merge(sep, "product: ");

    if ((square_a.equal && square_b.equal) != sep.passed())
        throw InternalCoherenceError(
            "section squares disagree with separability of the twisted product");
    report.add("transfer equivalence", CheckStatus::Pass,
               "the twisted product is separable with the combined section iff both "
               "section squares commute");
    return report;
}

Report check_special_transfer(const TwistingMap& t, const FrobeniusData& fa,
                              const FrobeniusData& fb) {
    require_checked(t);
    require_frobenius_inputs(fa, fb);
    if (!check_special(fa).equal || !check_special(fb).equal)
        throw NotSpecialInputsError("both factors must be special Frobenius algebras");
    require_compat(t, fa.coalgebra, fb.coalgebra);

    Report report;
    report.subject = "specialness transfer over the twist of " + fa.algebra.name + ", " +
                     fb.algebra.name;

    TwistedAlgebra product = build_twisted_algebra(
        t, std::make_pair(fa.coalgebra, fb.coalgebra));
    auto special = check_special({product.algebra, *product.coalgebra});
    report.add_comparison("product special triangle", special,
                          "multiplication after comultiplication is the identity on the "
                          "twisted product");
    if (!special.equal)
        throw InternalCoherenceError(
            "twisted product of special Frobenius algebras failed to be special");
    return report;
}

// ---- Nakayama candidates ----

Report check_nakayama_candidates(const TwistingMap& t, const FrobeniusData& fa,
                                 const FrobeniusData& fb) {
    require_checked(t);
    require_frobenius_inputs(fa, fb);
    require_compat(t, fa.coalgebra, fb.coalgebra);

    const SpacePtr& A = t.algebra_a().space;
    const SpacePtr& B = t.algebra_b().space;

    Report report;
    report.subject = "Nakayama candidates for the twisted product of " + fa.algebra.name +
                     ", " + fb.algebra.name;

    TwistedAlgebra product = build_twisted_algebra(
        t, std::make_pair(fa.coalgebra, fb.coalgebra));
    Pairing beta = twisted_pairing(t, fa, fb);
    NakayamaAuto theta = nakayama_from_pairing(product.algebra, beta);

    auto symmetric = check_symmetric(beta);
    report.add_comparison("product pairing symmetric", symmetric,
                          "the induced pairing is invariant under swapping its arguments");
    auto theta_id = maps_equal(theta.theta, identity(product.algebra.space));
    report.add_comparison("computed automorphism is the identity", theta_id,
                          "the pairing is symmetric iff its automorphism is trivial");
    if (symmetric.equal != theta_id.equal)
        throw InternalCoherenceError("symmetry and triviality of the automorphism "
                                     "must coincide");

    NakayamaAuto theta_a =
        nakayama_from_pairing(fa.algebra, pairing_from_frobenius(fa));
    NakayamaAuto theta_b =
        nakayama_from_pairing(fb.algebra, pairing_from_frobenius(fb));

    LinearMap cand_factorwise = tensor_map(theta_a.theta, theta_b.theta);
    LinearMap cand_conjugated = compose_many(
        {t.inverse(), tensor_map(theta_b.theta, theta_a.theta), t.map()});

    LinearMap double_swap = permute_factors({A, B, A, B}, {2, 3, 0, 1});
    LinearMap beta_swapped = compose(beta.form, double_swap);
    LinearMap product_id = identity(product.algebra.space);

    auto eval_candidate = [&](const std::string& name, const LinearMap& cand) {
        LinearMap lhs = compose(beta.form, tensor_map(cand, product_id));
        report.add_comparison(
            name + ": intertwining diagram", maps_equal(lhs, beta_swapped),
            "pairing after the candidate on the first argument equals the pairing with "
            "both arguments exchanged");
        report.add_comparison(name + ": equals computed automorphism",
                              maps_equal(cand, theta.theta),
                              "exact map equality against the automorphism solved from "
                              "the Gram system");
    };
    eval_candidate("factorwise candidate", cand_factorwise);
    eval_candidate("twist-conjugated candidate", cand_conjugated);
    return report;
}

}  // namespace twistlab
