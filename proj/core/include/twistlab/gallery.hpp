#pragma once

#include "twistlab/twist.hpp"

namespace twistlab {
namespace gallery {

/// A finite group as an explicit multiplication table.  Products of cyclic
/// groups remember their exponent coordinates, which become the grading of
/// the group algebra.
struct FiniteGroup {
    std::vector<std::string> element_names;
    std::vector<std::vector<std::uint32_t>> product; // product[i][j] = index of g_i * g_j
    std::vector<std::uint32_t> inverse;
    std::uint32_t identity = 0;

    // set when the group is a product of cyclic factors
    std::optional<std::vector<std::uint64_t>> cyclic_moduli;
    std::optional<std::vector<std::vector<std::int64_t>>> exponents;

    std::size_t size() const { return element_names.size(); }
    bool is_abelian() const;
    void validate() const; // table is a group: associativity, unit, inverses

    static FiniteGroup cyclic(std::uint64_t n, const std::string& symbol = "g");
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    /// H x| G for an action of G on H by automorphisms;
    /// action[g][h] = index of the image of h under g.
    static FiniteGroup semidirect(const FiniteGroup& h, const FiniteGroup& g,
                                  const std::vector<std::vector<std::uint32_t>>& action);
    static FiniteGroup dihedral(std::uint64_t n);
};

/// Group algebra with both standard coalgebra structures attached: the
/// grouplike one (diagonal comultiplication, counit constantly one) and the
/// Frobenius one (counit supported on the identity, comultiplication
/// summing over complementary factorizations).
struct GroupAlgebra {
    FiniteGroup group;
    AlgebraData algebra;
    CoalgebraData grouplike;
    CoalgebraData frobenius;
};
GroupAlgebra group_algebra(const FiniteGroup& group, const FieldSpec& field);

/// The classical separability section a |-> (1/|G|) sum_r ar (x) r^-1;
/// refuses to exist when the characteristic divides the group order.
SeparabilitySection group_separability_section(const GroupAlgebra& ga);

/// Frobenius structure rescaled by 1/|G| so that it is special
/// (multiplication after comultiplication is the identity).
FrobeniusData group_special_frobenius(const GroupAlgebra& ga);

/// k[x]/(x^n), Z-graded by degree, with its Frobenius coalgebra (counit on
/// the top power, comultiplication homogeneous of degree n-1) and the
/// binomial bialgebra coalgebra (degree 0) truncated from the polynomial
/// ring.
struct TruncatedPolynomial {
    std::uint64_t n = 0;
    AlgebraData algebra;
    CoalgebraData frobenius;
    CoalgebraData bialgebra;
};
TruncatedPolynomial truncated_polynomial(std::uint64_t n, const FieldSpec& field,
                                         const std::string& symbol = "x");

/// The algebra on generators x_1..x_n with x_i^{m_i} = 0 and
/// x_i x_j = q_ij x_j x_i, realized as an iterated twist of truncated
/// polynomial rings along the bicharacters the q matrix dictates.  The
/// induced comultiplication candidate is always attached; whether it is a
/// genuine coalgebra (and hence the product a Frobenius algebra) is
/// recorded per twisting step.
struct QuantumCompleteIntersection {
    AlgebraData algebra;
    std::optional<CoalgebraData> coalgebra;
    bool frobenius_inherited = false;
    std::vector<Report> step_reports;

    // the final step's ingredients, for transfer/pairing checks (n >= 2);
    // the left Frobenius data is only meaningful when every earlier step
    // was compatible
    std::optional<TwistingMap> last_twist;
    std::optional<FrobeniusData> last_left_frobenius;
    std::optional<FrobeniusData> last_right_frobenius;

    std::vector<std::uint64_t> m;
    std::size_t generator_index(std::size_t i) const; // basis index of x_i
};
QuantumCompleteIntersection quantum_complete_intersection(
    const std::vector<std::uint64_t>& m, const std::vector<std::vector<Scalar>>& q,
    const FieldSpec& field);

/// Convenience q-matrix where every off-diagonal pair is (q, q^-1).
std::vector<std::vector<Scalar>> uniform_q_matrix(std::size_t n, const Scalar& q);

/// Generator-level probes of the three classical deformations whose twists
/// are incompatible with the polynomial comultiplications: the probe
/// carries a partially defined twist, the two comultiplication-hexagon
/// composites as paths, and the element to feed them.
enum class PointwiseKind { Jordan, Weyl, QuantumEnvelopingBorel };
struct PointwiseScenario {
    std::string description;
    AlgebraData a;
    AlgebraData b;
    CoalgebraData ca;
    CoalgebraData cb;
    PartialLinearMap tau;
    DiagramPath lhs;
    DiagramPath rhs;
    Vec probe;
};
PointwiseScenario pointwise_counterexample(PointwiseKind kind, const FieldSpec& field,
                                           std::uint64_t truncation = 4);

/// The same scenario with the seed replaced by the plain flip, for which
/// the two composites agree on every probe.
PointwiseScenario pointwise_trivial(PointwiseKind kind, const FieldSpec& field,
                                    std::uint64_t truncation = 4);

/// Hexagon composites as pointwise-evaluable paths for a (possibly
/// partial) twist.
std::pair<DiagramPath, DiagramPath> hexagon_paths(const PartialLinearMap& tau,
                                                  const CoalgebraData& ca,
                                                  const CoalgebraData& cb);

/// The twist g (x) h |-> phi(g)(h) (x) g for a group action, whose twisted
/// product is the semidirect-product group algebra (verified on the nose).
struct SkewGroupScenario {
    GroupAlgebra kh; // left factor (acted on)
    GroupAlgebra kg; // right factor (acting)
    TwistingMap twist;
    FiniteGroup semidirect;
    AlgebraData semidirect_algebra;      // on the product space, from the group table
    CoalgebraData semidirect_frobenius;  // on the product space, from the group table
};
SkewGroupScenario skew_group_twist(const FiniteGroup& h, const FiniteGroup& g,
                                   const std::vector<std::vector<std::uint32_t>>& action,
                                   const FieldSpec& field);
SkewGroupScenario c2_on_c3_by_inversion(const FieldSpec& field);

/// Two copies of the order-2 group algebra twisted by the bicharacter that
/// is -1 exactly on the pair of generators; symmetric Frobenius, with a
/// four-line pairing table.  Collapses to the trivial twist in
/// characteristic 2 (flagged, not asserted away).
struct SignedSquareScenario {
    GroupAlgebra factor;
    FrobeniusData fa;
    FrobeniusData fb;
    TwistingMap twist;
    bool collapses_in_char_2 = false;
};
SignedSquareScenario c2_c2_symmetric(const FieldSpec& field);

}  // namespace gallery
}  // namespace twistlab
