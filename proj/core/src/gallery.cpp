#include "twistlab/gallery.hpp"

namespace twistlab {
namespace gallery {

namespace {

std::string power_label(const std::string& symbol, std::uint64_t k) {
    if (k == 0) return "1";
    if (k == 1) return symbol;
    return symbol + "^" + std::to_string(k);
}

Scalar integer_scalar(const FieldSpec& field, const mpz_class& z) {
    return Scalar::from_rational(field, mpq_class(z));
}

}  // namespace

// ---- FiniteGroup ----

bool FiniteGroup::is_abelian() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (product[i][j] != product[j][i]) return false;
    return true;
}

void FiniteGroup::validate() const {
    const std::size_t n = size();
    if (product.size() != n || inverse.size() != n || identity >= n)
        throw UnsupportedGroupError("malformed multiplication table");
    for (std::size_t i = 0; i < n; ++i) {
        if (product[i].size() != n) throw UnsupportedGroupError("ragged multiplication table");
        for (std::size_t j = 0; j < n; ++j)
            if (product[i][j] >= n) throw UnsupportedGroupError("table entry out of range");
        if (product[identity][i] != i || product[i][identity] != i)
            throw UnsupportedGroupError("identity fails");
        if (product[i][inverse[i]] != identity || product[inverse[i]][i] != identity)
            throw UnsupportedGroupError("inverses fail");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (product[product[i][j]][k] != product[i][product[j][k]])
                    throw UnsupportedGroupError("table is not associative");
}

FiniteGroup FiniteGroup::cyclic(std::uint64_t n, const std::string& symbol) {
    if (n < 1) throw UnsupportedGroupError("cyclic group order must be >= 1");
    FiniteGroup g;
    for (std::uint64_t k = 0; k < n; ++k) g.element_names.push_back(power_label(symbol, k));
    g.product.assign(n, std::vector<std::uint32_t>(n));
    g.inverse.assign(n, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j)
            g.product[i][j] = static_cast<std::uint32_t>((i + j) % n);
        g.inverse[i] = static_cast<std::uint32_t>((n - i) % n);
    }
    g.identity = 0;
    g.cyclic_moduli = std::vector<std::uint64_t>{n};
    g.exponents = std::vector<std::vector<std::int64_t>>{};
    for (std::uint64_t k = 0; k < n; ++k)
        g.exponents->push_back({static_cast<std::int64_t>(k)});
    g.validate();
    return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    const std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            g.element_names.push_back("(" + a.element_names[i] + "," + b.element_names[j] +
                                      ")");
    g.product.assign(na * nb, std::vector<std::uint32_t>(na * nb));
    g.inverse.assign(na * nb, 0);
    auto idx = [&](std::size_t i, std::size_t j) {
        return static_cast<std::uint32_t>(i * nb + j);
    };
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < nb; ++j1) {
            g.inverse[idx(i1, j1)] = idx(a.inverse[i1], b.inverse[j1]);
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2)
                    g.product[idx(i1, j1)][idx(i2, j2)] =
                        idx(a.product[i1][i2], b.product[j1][j2]);
        }
    g.identity = idx(a.identity, b.identity);
    if (a.cyclic_moduli && b.cyclic_moduli) {
        g.cyclic_moduli = *a.cyclic_moduli;
        g.cyclic_moduli->insert(g.cyclic_moduli->end(), b.cyclic_moduli->begin(),
                                b.cyclic_moduli->end());
        g.exponents = std::vector<std::vector<std::int64_t>>{};
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j) {
                auto e = (*a.exponents)[i];
                e.insert(e.end(), (*b.exponents)[j].begin(), (*b.exponents)[j].end());
                g.exponents->push_back(std::move(e));
            }
    }
    g.validate();
    return g;
}

FiniteGroup FiniteGroup::semidirect(const FiniteGroup& h, const FiniteGroup& g,
                                    const std::vector<std::vector<std::uint32_t>>& action) {
    const std::size_t nh = h.size(), ng = g.size();
    if (action.size() != ng) throw NotAnActionError("action needs one row per acting element");
    for (const auto& row : action) {
        if (row.size() != nh) throw NotAnActionError("action row has the wrong length");
        std::vector<bool> hit(nh, false);
        for (std::uint32_t image : row) {
            if (image >= nh || hit[image]) throw NotAnActionError("action is not bijective");
            hit[image] = true;
        }
    }
    for (std::size_t s = 0; s < nh; ++s)
        if (action[g.identity][s] != s)
            throw NotAnActionError("the identity must act trivially");
    for (std::size_t r = 0; r < ng; ++r) {
        for (std::size_t s1 = 0; s1 < nh; ++s1)
            for (std::size_t s2 = 0; s2 < nh; ++s2)
                if (action[r][h.product[s1][s2]] != h.product[action[r][s1]][action[r][s2]])
                    throw NotAnActionError("action is not by automorphisms");
        for (std::size_t r2 = 0; r2 < ng; ++r2)
            for (std::size_t s = 0; s < nh; ++s)
                if (action[g.product[r][r2]][s] != action[r][action[r2][s]])
                    throw NotAnActionError("action is not a homomorphism");
    }

    FiniteGroup out;
    auto idx = [&](std::size_t s, std::size_t r) {
        return static_cast<std::uint32_t>(s * ng + r);
    };
    for (std::size_t s = 0; s < nh; ++s)
        for (std::size_t r = 0; r < ng; ++r)
            out.element_names.push_back("(" + h.element_names[s] + "," +
                                        g.element_names[r] + ")");
    out.product.assign(nh * ng, std::vector<std::uint32_t>(nh * ng));
    out.inverse.assign(nh * ng, 0);
    for (std::size_t s1 = 0; s1 < nh; ++s1)
        for (std::size_t r1 = 0; r1 < ng; ++r1) {
            out.inverse[idx(s1, r1)] =
                idx(action[g.inverse[r1]][h.inverse[s1]], g.inverse[r1]);
            for (std::size_t s2 = 0; s2 < nh; ++s2)
                for (std::size_t r2 = 0; r2 < ng; ++r2)
                    out.product[idx(s1, r1)][idx(s2, r2)] =
                        idx(h.product[s1][action[r1][s2]], g.product[r1][r2]);
        }
    out.identity = idx(h.identity, g.identity);
    out.validate();
    return out;
}

FiniteGroup FiniteGroup::dihedral(std::uint64_t n) {
    FiniteGroup rot = cyclic(n, "s");
    FiniteGroup flip = cyclic(2, "c");
    std::vector<std::vector<std::uint32_t>> action(2, std::vector<std::uint32_t>(n));
    for (std::uint64_t s = 0; s < n; ++s) {
        action[0][s] = static_cast<std::uint32_t>(s);
        action[1][s] = rot.inverse[s];
    }
    return semidirect(rot, flip, action);
}

// ---- group algebras ----

GroupAlgebra group_algebra(const FiniteGroup& group, const FieldSpec& field) {
    group.validate();
    const std::size_t n = group.size();

    std::optional<Grading> grading;
    if (group.cyclic_moduli && group.exponents)
        grading = Grading{GradingGroup{*group.cyclic_moduli}, *group.exponents};
    SpacePtr space = Space::make(field, group.element_names, std::move(grading));
    SpacePtr square = tensor_space(space, space);
    SpacePtr k = Space::ground(field);
    Scalar one = Scalar::one(field);

    std::vector<Column> mul_cols(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mul_cols[i * n + j] = {Entry{group.product[i][j], one}};
    LinearMap mul(square, space, std::move(mul_cols));
    LinearMap unit(k, space, {Column{Entry{group.identity, one}}});

    std::vector<Column> grouplike_cols(n), frob_cols(n), like_counit(n), frob_counit(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        grouplike_cols[i] = {Entry{static_cast<std::uint32_t>(i * n + i), one}};
        like_counit[i] = {Entry{0, one}};
        for (std::uint32_t r = 0; r < n; ++r)
            frob_cols[i].push_back(
                {static_cast<std::uint32_t>(group.product[i][r] * n + group.inverse[r]),
                 one});
        if (i == group.identity) frob_counit[i] = {Entry{0, one}};
    }

    std::string name = "k[" + std::to_string(n) + "-element group]";
    GroupAlgebra out{
        group,
        AlgebraData{space, std::move(mul), std::move(unit), name},
        CoalgebraData{space, LinearMap(space, square, std::move(grouplike_cols)),
                      LinearMap(space, k, std::move(like_counit)), name + " (grouplike)"},
        CoalgebraData{space, LinearMap(space, square, std::move(frob_cols)),
                      LinearMap(space, k, std::move(frob_counit)), name + " (frobenius)"}};
    if (space->grading()) {
        out.grouplike.comul_degree =
            std::vector<std::int64_t>(space->grading()->group.rank(), 0);
        out.frobenius.comul_degree =
            std::vector<std::int64_t>(space->grading()->group.rank(), 0);
    }
    return out;
}

SeparabilitySection group_separability_section(const GroupAlgebra& ga) {
    const FiniteGroup& group = ga.group;
    const std::size_t n = group.size();
    const FieldSpec& field = ga.algebra.space->field();
    std::uint64_t p = field.characteristic();
    if (p != 0 && n % p == 0)
        throw DivisionByZeroError("the group order " + std::to_string(n) +
                                  " is not invertible in characteristic " +
                                  std::to_string(p));
    Scalar weight = Scalar::from_integer(field, static_cast<long>(n)).inverse();
    std::vector<Column> cols(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t r = 0; r < n; ++r)
            cols[i].push_back(
                {static_cast<std::uint32_t>(group.product[i][r] * n + group.inverse[r]),
                 weight});
    return SeparabilitySection{
        LinearMap(ga.algebra.space, tensor_space(ga.algebra.space, ga.algebra.space),
                  std::move(cols))};
}

FrobeniusData group_special_frobenius(const GroupAlgebra& ga) {
    const std::size_t n = ga.group.size();
    const FieldSpec& field = ga.algebra.space->field();
    std::uint64_t p = field.characteristic();
    if (p != 0 && n % p == 0)
        throw DivisionByZeroError("the group order " + std::to_string(n) +
                                  " is not invertible in characteristic " +
                                  std::to_string(p));
    Scalar order = Scalar::from_integer(field, static_cast<long>(n));
    Scalar weight = order.inverse();

    std::vector<Column> comul_cols(n), counit_cols(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (const Entry& e : ga.frobenius.comul.column(i))
            comul_cols[i].push_back({e.row, e.value * weight});
        for (const Entry& e : ga.frobenius.counit.column(i))
            counit_cols[i].push_back({e.row, e.value * order});
    }
    CoalgebraData rescaled{
        ga.algebra.space,
        LinearMap(ga.frobenius.comul.domain(), ga.frobenius.comul.codomain(),
                  std::move(comul_cols)),
        LinearMap(ga.frobenius.counit.domain(), ga.frobenius.counit.codomain(),
                  std::move(counit_cols)),
        ga.frobenius.name + " /|G|", ga.frobenius.comul_degree};
    return FrobeniusData{ga.algebra, std::move(rescaled)};
}

// ---- truncated polynomial rings ----

TruncatedPolynomial truncated_polynomial(std::uint64_t n, const FieldSpec& field,
                                         const std::string& symbol) {
    if (n < 1) throw UnsupportedParametersError("truncation order must be >= 1");
    std::vector<std::string> labels;
    std::vector<std::vector<std::int64_t>> grades;
    for (std::uint64_t k = 0; k < n; ++k) {
        labels.push_back(power_label(symbol, k));
        grades.push_back({static_cast<std::int64_t>(k)});
    }
    SpacePtr space =
        Space::make(field, std::move(labels), Grading{GradingGroup{{0}}, std::move(grades)});
    SpacePtr square = tensor_space(space, space);
    SpacePtr k_space = Space::ground(field);
    Scalar one = Scalar::one(field);

    std::vector<Column> mul_cols(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
            if (i + j < n)
                mul_cols[i * n + j] = {Entry{static_cast<std::uint32_t>(i + j), one}};
    LinearMap mul(square, space, std::move(mul_cols));
    LinearMap unit(k_space, space, {Column{Entry{0, one}}});

    // counit on the top power; comultiplication over complementary powers,
    // homogeneous of degree n-1
    std::vector<Column> frob_comul(n), frob_counit(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; i + j < n; ++j)
            frob_comul[i].push_back(
                {static_cast<std::uint32_t>((i + j) * n + (n - 1 - j)), one});
        if (i == n - 1) frob_counit[i] = {Entry{0, one}};
    }

    // truncation of the polynomial bialgebra: x is primitive
    std::vector<Column> bi_comul(n), bi_counit(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j <= i; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), i, j);
            Scalar c = integer_scalar(field, binom);
            if (!c.is_zero())
                bi_comul[i].push_back({static_cast<std::uint32_t>(j * n + (i - j)), c});
        }
        if (i == 0) bi_counit[i] = {Entry{0, one}};
    }

    std::string name = "k[" + symbol + "]/(" + power_label(symbol, n) + ")";
    TruncatedPolynomial out{
        n,
        AlgebraData{space, std::move(mul), std::move(unit), name},
        CoalgebraData{space, LinearMap(space, square, std::move(frob_comul)),
                      LinearMap(space, k_space, std::move(frob_counit)),
                      name + " (frobenius)",
                      std::vector<std::int64_t>{static_cast<std::int64_t>(n - 1)}},
        CoalgebraData{space, LinearMap(space, square, std::move(bi_comul)),
                      LinearMap(space, k_space, std::move(bi_counit)),
                      name + " (binomial)", std::vector<std::int64_t>{0}}};
    return out;
}

// ---- quantum complete intersections ----

std::vector<std::vector<Scalar>> uniform_q_matrix(std::size_t n, const Scalar& q) {
    const FieldSpec& field = q.field();
    std::vector<std::vector<Scalar>> out(n, std::vector<Scalar>(n, Scalar::one(field)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            out[i][j] = (i < j) ? q.inverse() : q;
        }
    return out;
}

std::size_t QuantumCompleteIntersection::generator_index(std::size_t i) const {
    std::size_t stride = 1;
    for (std::size_t l = m.size(); l-- > i + 1;) stride *= m[l];
    return stride;
}

QuantumCompleteIntersection quantum_complete_intersection(
    const std::vector<std::uint64_t>& m, const std::vector<std::vector<Scalar>>& q,
    const FieldSpec& field) {
    const std::size_t n = m.size();
    if (n == 0) throw UnsupportedParametersError("need at least one generator");
    for (std::uint64_t mi : m)
        if (mi < 2) throw UnsupportedParametersError("every exponent bound must be >= 2");
    if (q.size() != n) throw InvalidQMatrixError("q must be an n x n matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i].size() != n) throw InvalidQMatrixError("q must be an n x n matrix");
        if (!q[i][i].is_one()) throw InvalidQMatrixError("diagonal q entries must be 1");
        for (std::size_t j = 0; j < n; ++j)
            if (!(q[i][j] * q[j][i]).is_one())
                throw InvalidQMatrixError("q entries must satisfy q_ij q_ji = 1");
    }

    QuantumCompleteIntersection out;
    out.m = m;

    TruncatedPolynomial first = truncated_polynomial(m[0], field, "x1");
    AlgebraData cur_alg = first.algebra;
    CoalgebraData cur_coalg = first.frobenius;
    out.frobenius_inherited = true;

    for (std::size_t l = 1; l < n; ++l) {
        TruncatedPolynomial factor =
            truncated_polynomial(m[l], field, "x" + std::to_string(l + 1));

        Bicharacter bichar;
        bichar.generator_values.assign(l, {Scalar::one(field)});
        for (std::size_t r = 0; r < l; ++r) bichar.generator_values[r][0] = q[l][r];

        TwistingMap twist = bicharacter_twist(cur_alg, factor.algebra, bichar);
        Report compat = check_coalgebra_compat(twist, cur_coalg, factor.frobenius);
        bool step_ok = compat.find("counit square (left factor)")->passed() &&
                       compat.find("counit square (right factor)")->passed() &&
                       compat.find("comultiplication hexagon")->passed();

        if (l == n - 1) {
            out.last_twist = twist;
            if (out.frobenius_inherited)
                out.last_left_frobenius = FrobeniusData{cur_alg, cur_coalg};
            out.last_right_frobenius = FrobeniusData{factor.algebra, factor.frobenius};
        }

        TwistedAlgebra product =
            build_twisted_algebra(twist, std::make_pair(cur_coalg, factor.frobenius));
        cur_alg = product.algebra;
        cur_coalg = *product.coalgebra;
        out.frobenius_inherited = out.frobenius_inherited && step_ok;
        out.step_reports.push_back(std::move(compat));
    }

    out.algebra = cur_alg;
    out.coalgebra = cur_coalg;

    // relations x_i^{m_i} = 0 and x_i x_j = q_ij x_j x_i hold in the product
    const std::size_t dim = out.algebra.space->dim();
    auto basis_mul = [&](std::size_t i, std::size_t j) {
        return Vec(out.algebra.space, out.algebra.mul.column(i * dim + j));
    };
    auto right_multiply_basis = [&](const Vec& v, std::size_t j) {
        Column col;
        for (const Entry& e : v.entries())
            col.push_back({static_cast<std::uint32_t>(e.row * dim + j), e.value});
        return out.algebra.mul.apply(
            Vec(tensor_space(out.algebra.space, out.algebra.space), std::move(col)));
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t xi = out.generator_index(i);
        Vec power = Vec::basis(out.algebra.space, xi);
        for (std::uint64_t e = 1; e < m[i]; ++e) power = right_multiply_basis(power, xi);
        if (!power.is_zero())
            throw InternalCoherenceError("generator power relation fails in the product");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            std::size_t xj = out.generator_index(j);
            if (!(basis_mul(xi, xj) == basis_mul(xj, xi).scaled(q[i][j])))
                throw InternalCoherenceError("commutation relation fails in the product");
        }
    }
    return out;
}

// ---- pointwise probes ----

std::pair<DiagramPath, DiagramPath> hexagon_paths(const PartialLinearMap& tau,
                                                  const CoalgebraData& ca,
                                                  const CoalgebraData& cb) {
    auto pid = [](const SpacePtr& s) { return PartialLinearMap::from_total(identity(s)); };
    const SpacePtr& A = ca.space;
    const SpacePtr& B = cb.space;
    if (!spaces_equal(tau.domain(), tensor_space(B, A)) ||
        !spaces_equal(tau.codomain(), tensor_space(A, B)))
        throw ShapeMismatchError("twist must map B(x)A -> A(x)B");

    DiagramPath lhs({tau, PartialLinearMap::from_total(tensor_map(ca.comul, cb.comul))});
    DiagramPath rhs({PartialLinearMap::from_total(tensor_map(cb.comul, ca.comul)),
                     tensor_map(pid(B), tensor_map(tau, pid(A))),
                     tensor_map(tau, tau),
                     tensor_map(pid(A), tensor_map(tau, pid(B)))});
    return {std::move(lhs), std::move(rhs)};
}

namespace {

PartialLinearMap seed_with_units(const SpacePtr& a_space, const SpacePtr& b_space) {
    const std::size_t na = a_space->dim(), nb = b_space->dim();
    SpacePtr dom = tensor_space(b_space, a_space);
    SpacePtr cod = tensor_space(a_space, b_space);
    Scalar one = Scalar::one(a_space->field());
    std::vector<std::optional<Column>> cols(dom->dim(), std::nullopt);
    for (std::uint32_t ib = 0; ib < nb; ++ib)
        cols[ib * na + 0] = Column{Entry{static_cast<std::uint32_t>(0 * nb + ib), one}};
    for (std::uint32_t ia = 0; ia < na; ++ia)
        cols[0 * na + ia] = Column{Entry{static_cast<std::uint32_t>(ia * nb + 0), one}};
    return PartialLinearMap(dom, cod, std::move(cols));
}

PointwiseScenario assemble_polynomial_probe(const std::string& description,
                                            const FieldSpec& field, std::uint64_t d,
                                            Column seed_column) {
    TruncatedPolynomial ax = truncated_polynomial(d, field, "x");
    TruncatedPolynomial by = truncated_polynomial(d, field, "y");
    PartialLinearMap tau = seed_with_units(ax.algebra.space, by.algebra.space)
                               .with_column(1 * d + 1, std::move(seed_column));
    auto [lhs, rhs] = hexagon_paths(tau, ax.bialgebra, by.bialgebra);
    Vec probe = Vec::basis(tau.domain(), 1 * d + 1); // y (x) x
    return PointwiseScenario{description,   ax.algebra, by.algebra, ax.bialgebra,
                             by.bialgebra,  tau,        std::move(lhs),
                             std::move(rhs), std::move(probe)};
}

}  // namespace

PointwiseScenario pointwise_counterexample(PointwiseKind kind, const FieldSpec& field,
                                           std::uint64_t d) {
    if (d < 3) throw UnsupportedParametersError("probes need truncation degree >= 3");
    Scalar one = Scalar::one(field);
    switch (kind) {
        case PointwiseKind::Jordan: {
            // tau(y (x) x) = x (x) y + x^2 (x) 1
            Column seed{Entry{static_cast<std::uint32_t>(1 * d + 1), one},
                        Entry{static_cast<std::uint32_t>(2 * d + 0), one}};
            return assemble_polynomial_probe(
                "deformation with relation xy - yx + x^2 = 0", field, d, std::move(seed));
        }
        case PointwiseKind::Weyl: {
            // tau(y (x) x) = x (x) y - 1 (x) 1
            Column seed{Entry{static_cast<std::uint32_t>(1 * d + 1), one},
                        Entry{0, -one}};
            return assemble_polynomial_probe(
                "deformation with relation xy - yx - 1 = 0", field, d, std::move(seed));
        }
        case PointwiseKind::QuantumEnvelopingBorel: {
            // finite quotient of the Borel at a primitive third root of unity
            const std::uint64_t ell = 3;
            Scalar qroot = root_of_unity(field, ell);
            Scalar denom = qroot - qroot.inverse();
            if (denom.is_zero())
                throw UnsupportedParametersError("q - q^-1 must be invertible");
            Scalar c = denom.inverse();

            TruncatedPolynomial af = truncated_polynomial(d, field, "F");

            // B: basis E^i K^j with K E = q^2 E K, E^ell = 0, K^ell = 1
            const std::size_t nb = ell * ell;
            std::vector<std::string> labels;
            for (std::uint64_t i = 0; i < ell; ++i)
                for (std::uint64_t j = 0; j < ell; ++j) {
                    if (i == 0 && j == 0) labels.push_back("1");
                    else if (i == 0) labels.push_back(power_label("K", j));
                    else if (j == 0) labels.push_back(power_label("E", i));
                    else labels.push_back(power_label("E", i) + "·" + power_label("K", j));
                }
            SpacePtr bs = Space::make(field, std::move(labels));
            SpacePtr bsq = tensor_space(bs, bs);
            SpacePtr kspace = Space::ground(field);
            auto bidx = [&](std::uint64_t i, std::uint64_t j) {
                return static_cast<std::uint32_t>(i * ell + j);
            };
            std::vector<Column> bmul(nb * nb);
            Scalar q2 = qroot * qroot;
            for (std::uint64_t i1 = 0; i1 < ell; ++i1)
                for (std::uint64_t j1 = 0; j1 < ell; ++j1)
                    for (std::uint64_t i2 = 0; i2 < ell; ++i2)
                        for (std::uint64_t j2 = 0; j2 < ell; ++j2) {
                            if (i1 + i2 >= ell) continue;
                            Scalar coeff = q2.pow(static_cast<long>(j1 * i2));
                            bmul[bidx(i1, j1) * nb + bidx(i2, j2)] = {
                                Entry{bidx(i1 + i2, (j1 + j2) % ell), coeff}};
                        }
            LinearMap mul_b(bsq, bs, std::move(bmul));
            LinearMap unit_b(kspace, bs, {Column{Entry{bidx(0, 0), one}}});
            AlgebraData balg{bs, mul_b, unit_b, "U_q-Borel quotient"};

            // Delta(E) = 1 (x) E + E (x) K, Delta(K) = K (x) K, extended
            // multiplicatively through the tensor-square algebra
            auto square_mul = [&](const Column& u, const Column& v) {
                std::map<std::uint32_t, Scalar> acc;
                for (const Entry& eu : u)
                    for (const Entry& ev : v) {
                        std::uint32_t u1 = eu.row / nb, u2 = eu.row % nb;
                        std::uint32_t v1 = ev.row / nb, v2 = ev.row % nb;
                        for (const Entry& p1 : mul_b.column(u1 * nb + v1))
                            for (const Entry& p2 : mul_b.column(u2 * nb + v2)) {
                                std::uint32_t row = p1.row * nb + p2.row;
                                Scalar add = eu.value * ev.value * p1.value * p2.value;
                                auto [it, ins] = acc.try_emplace(row, add);
                                if (!ins) it->second = it->second + add;
                            }
                    }
                Column out;
                for (auto& [row, val] : acc)
                    if (!val.is_zero()) out.push_back({row, val});
                return out;
            };
            Column delta_e{Entry{static_cast<std::uint32_t>(bidx(0, 0) * nb + bidx(1, 0)), one},
                           Entry{static_cast<std::uint32_t>(bidx(1, 0) * nb + bidx(0, 1)), one}};
            Column delta_k{Entry{static_cast<std::uint32_t>(bidx(0, 1) * nb + bidx(0, 1)), one}};
            std::vector<Column> bcomul(nb), bcounit(nb);
            for (std::uint64_t i = 0; i < ell; ++i)
                for (std::uint64_t j = 0; j < ell; ++j) {
                    Column acc{Entry{static_cast<std::uint32_t>(bidx(0, 0) * nb + bidx(0, 0)),
                                     one}};
                    for (std::uint64_t r = 0; r < i; ++r) acc = square_mul(acc, delta_e);
                    for (std::uint64_t r = 0; r < j; ++r) acc = square_mul(acc, delta_k);
                    bcomul[bidx(i, j)] = std::move(acc);
                    if (i == 0) bcounit[bidx(i, j)] = {Entry{0, one}};
                }
            CoalgebraData bco{bs, LinearMap(bs, bsq, std::move(bcomul)),
                              LinearMap(bs, kspace, std::move(bcounit)),
                              "U_q-Borel quotient"};

            // seed: tau(K (x) F) = q^-2 F (x) K, tau(K^2 (x) F) = q^2 F (x) K^2,
            //       tau(E (x) F) = F (x) E - c (1 (x) K - 1 (x) K^-1)
            const std::size_t na = d;
            PartialLinearMap tau = seed_with_units(af.algebra.space, bs);
            auto acol = [&](std::uint64_t ai, std::uint32_t bi, Scalar v) {
                return Entry{static_cast<std::uint32_t>(ai * nb + bi), v};
            };
            tau = tau.with_column(bidx(0, 1) * na + 1,
                                  Column{acol(1, bidx(0, 1), q2.inverse())});
            tau = tau.with_column(bidx(0, 2) * na + 1, Column{acol(1, bidx(0, 2), q2)});
            tau = tau.with_column(bidx(1, 0) * na + 1,
                                  Column{acol(1, bidx(1, 0), one), acol(0, bidx(0, 1), -c),
                                         acol(0, bidx(0, 2), c)});

            auto [lhs, rhs] = hexagon_paths(tau, af.bialgebra, bco);
            Vec probe = Vec::basis(tau.domain(), bidx(1, 0) * na + 1); // E (x) F
            return PointwiseScenario{
                "quantized enveloping Borel acting on its lowering generator",
                af.algebra, balg, af.bialgebra, bco, tau, std::move(lhs), std::move(rhs),
                std::move(probe)};
        }
    }
    throw UnsupportedParametersError("unknown probe kind");
}

PointwiseScenario pointwise_trivial(PointwiseKind kind, const FieldSpec& field,
                                    std::uint64_t d) {
    PointwiseScenario scenario = pointwise_counterexample(kind, field, d);
    LinearMap flip = swap_factors({scenario.b.space, scenario.a.space}, 0, 1);
    PartialLinearMap tau = PartialLinearMap::from_total(flip);
    auto [lhs, rhs] = hexagon_paths(tau, scenario.ca, scenario.cb);
    scenario.tau = std::move(tau);
    scenario.lhs = std::move(lhs);
    scenario.rhs = std::move(rhs);
    scenario.description += " (flip twist)";
    return scenario;
}

// ---- skew group twists ----

SkewGroupScenario skew_group_twist(const FiniteGroup& h, const FiniteGroup& g,
                                   const std::vector<std::vector<std::uint32_t>>& action,
                                   const FieldSpec& field) {
    FiniteGroup sd = FiniteGroup::semidirect(h, g, action); // validates the action
    GroupAlgebra kh = group_algebra(h, field);
    GroupAlgebra kg = group_algebra(g, field);
    const std::size_t nh = h.size(), ng = g.size();

    // tau : kG (x) kH -> kH (x) kG, g (x) h |-> phi(g)(h) (x) g
    SpacePtr dom = tensor_space(kg.algebra.space, kh.algebra.space);
    SpacePtr cod = tensor_space(kh.algebra.space, kg.algebra.space);
    Scalar one = Scalar::one(field);
    std::vector<Column> cols(dom->dim());
    for (std::uint32_t ig = 0; ig < ng; ++ig)
        for (std::uint32_t ih = 0; ih < nh; ++ih)
            cols[ig * nh + ih] = {
                Entry{static_cast<std::uint32_t>(action[ig][ih] * ng + ig), one}};
    TwistingMap twist(kh.algebra, kg.algebra, LinearMap(dom, cod, std::move(cols)));
    check_twisting(twist);
    if (!*twist.verified())
        throw InternalCoherenceError("group action failed to give a twisting map");

    // the semidirect-product structures, transported onto the product space
    SpacePtr product = cod;
    SpacePtr square = tensor_space(product, product);
    SpacePtr kspace = Space::ground(field);
    const std::size_t nsd = sd.size();
    std::vector<Column> sd_mul(nsd * nsd), sd_comul(nsd), sd_counit(nsd);
    for (std::uint32_t i = 0; i < nsd; ++i) {
        for (std::uint32_t j = 0; j < nsd; ++j)
            sd_mul[i * nsd + j] = {Entry{sd.product[i][j], one}};
        for (std::uint32_t r = 0; r < nsd; ++r)
            sd_comul[i].push_back(
                {static_cast<std::uint32_t>(sd.product[i][r] * nsd + sd.inverse[r]), one});
        if (i == sd.identity) sd_counit[i] = {Entry{0, one}};
    }
    AlgebraData sd_algebra{product, LinearMap(square, product, std::move(sd_mul)),
                           LinearMap(kspace, product, {Column{Entry{sd.identity, one}}}),
                           "k[semidirect product]"};
    CoalgebraData sd_frobenius{product, LinearMap(product, square, std::move(sd_comul)),
                               LinearMap(product, kspace, std::move(sd_counit)),
                               "k[semidirect product] (frobenius)"};

    TwistedAlgebra twisted = build_twisted_algebra(twist);
    if (!maps_equal(twisted.algebra.mul, sd_algebra.mul).equal ||
        !maps_equal(twisted.algebra.unit, sd_algebra.unit).equal)
        throw InternalCoherenceError(
            "twisted product does not realize the semidirect product algebra");

    return SkewGroupScenario{std::move(kh),     std::move(kg),          std::move(twist),
                             std::move(sd),     std::move(sd_algebra),  std::move(sd_frobenius)};
}

SkewGroupScenario c2_on_c3_by_inversion(const FieldSpec& field) {
    FiniteGroup c3 = FiniteGroup::cyclic(3, "s");
    FiniteGroup c2 = FiniteGroup::cyclic(2, "c");
    std::vector<std::vector<std::uint32_t>> inversion{{0, 1, 2}, {0, 2, 1}};
    return skew_group_twist(c3, c2, inversion, field);
}

// ---- the signed square of the order-2 group algebra ----

SignedSquareScenario c2_c2_symmetric(const FieldSpec& field) {
    GroupAlgebra factor = group_algebra(FiniteGroup::cyclic(2), field);
    Bicharacter bichar{{{Scalar::from_integer(field, -1)}}};
    TwistingMap twist = bicharacter_twist(factor.algebra, factor.algebra, bichar);
    return SignedSquareScenario{factor,
                                FrobeniusData{factor.algebra, factor.frobenius},
                                FrobeniusData{factor.algebra, factor.frobenius},
                                std::move(twist),
                                field.characteristic() == 2};
}

}  // namespace gallery
}  // namespace twistlab
