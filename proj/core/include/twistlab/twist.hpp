#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "twistlab/structures.hpp"

namespace twistlab {

/// A bijective map tau : B (x) A -> A (x) B together with the two algebras
/// it twists.  Whether tau actually satisfies the twisting axioms is
/// recorded by check_twisting, never assumed.  The inverse is computed on
/// first use and cached with single-assignment semantics.
class TwistingMap {
public:
    TwistingMap(AlgebraData a, AlgebraData b, LinearMap tau,
                std::optional<LinearMap> inverse = std::nullopt);

    const AlgebraData& algebra_a() const { return a_; }
    const AlgebraData& algebra_b() const { return b_; }
    const LinearMap& map() const { return tau_; }
    const LinearMap& inverse() const; // NotBijectiveError when singular

    /// Tri-state: unset until check_twisting has run.
    std::optional<bool> verified() const { return status_->ok; }

    friend Report check_twisting(const TwistingMap& t);

private:
    AlgebraData a_;
    AlgebraData b_;
    LinearMap tau_;

    struct InverseCache {
        std::once_flag once;
        std::optional<LinearMap> inverse;
    };
    struct Status {
        std::optional<bool> ok;
    };
    std::shared_ptr<InverseCache> cache_;
    std::shared_ptr<Status> status_;
};

/// A homomorphism from the tensor product of two grading groups into the
/// units of the field, given by its values on generator pairs and extended
/// multiplicatively.
struct Bicharacter {
    std::vector<std::vector<Scalar>> generator_values; // [rank of F][rank of G]
};

/// Values lambda(h, g) for a strongly graded twist of group algebras,
/// tau(h (x) g) = lambda(h, g) g (x) h.  Indexed by basis position.
struct GradedGroupTwistTable {
    std::vector<std::vector<Scalar>> values; // [dim of H][dim of G]
};

TwistingMap trivial_twist(const AlgebraData& a, const AlgebraData& b);

/// Scale each basis pair by the bicharacter evaluated on the grades; both
/// algebras must be graded.  The twisting axioms are verified before return.
TwistingMap bicharacter_twist(const AlgebraData& a, const AlgebraData& b,
                              const Bicharacter& t);

struct GradedGroupTwist {
    TwistingMap twist;
    Report axioms; // the full twisting-axiom report, failures included
};
GradedGroupTwist graded_group_twist(const AlgebraData& group_algebra_g,
                                    const AlgebraData& group_algebra_h,
                                    const GradedGroupTwistTable& lambda);

/// Verifies bijectivity, both unit squares, the multiplications hexagon and
/// the two one-sided multiplication squares; also asserts that the two
/// axiom systems (hexagon-based and one-sided) agree on this instance.
Report check_twisting(const TwistingMap& t);

/// How the bases of an algebra are generated: every basis element is a
/// monomial of known degree, and every monomial of degree >= 2 names its
/// leftmost-generator split u = g * rest (both factors basis elements).
struct MonomialStructure {
    std::uint32_t unit_index = 0;
    std::vector<std::uint32_t> degree;
    std::vector<std::optional<std::pair<std::uint32_t, std::uint32_t>>> split;
};

struct ExtensionProblem {
    AlgebraData a;
    AlgebraData b;
    MonomialStructure monomials_a;
    MonomialStructure monomials_b;
};

/// Extend a twist given on generator pairs (plus the forced unit rows and
/// columns) to the whole basis by recursion through the one-sided
/// multiplication squares, in degree order with the leftmost split.  The
/// result is audited against every adjacent factorization and against the
/// algebras' relations; a contradiction raises InconsistentExtensionError
/// naming the monomial and both images.
TwistingMap extend_twist_from_generators(const ExtensionProblem& problem,
                                         const PartialLinearMap& seed);

struct TwistedAlgebra {
    AlgebraData algebra;
    std::optional<CoalgebraData> coalgebra;
};

/// The deformed product on A (x) B: multiply through one application of tau
/// in the middle; unit componentwise.  The twist must have passed its
/// checks.  When coalgebras are supplied the candidate comultiplication
/// (through the inverse twist) and counit are attached without asserting
/// coassociativity.
TwistedAlgebra build_twisted_algebra(
    const TwistingMap& t,
    const std::optional<std::pair<CoalgebraData, CoalgebraData>>& coalgebras = std::nullopt);

CoalgebraData induced_coalgebra(const TwistingMap& t, const CoalgebraData& ca,
                                const CoalgebraData& cb);

/// Counit squares, the comultiplication hexagon, and the two split
/// comultiplication squares, plus the induced coalgebra's own axioms.
/// Internally asserts the equivalences tying these together.
Report check_coalgebra_compat(const TwistingMap& t, const CoalgebraData& ca,
                              const CoalgebraData& cb);

/// For bialgebra inputs: runs the full bialgebra check on the twisted
/// product, evaluates the two comultiplication/flip squares, reports
/// whether tau is the flip, and asserts the biconditional "the product is a
/// bialgebra iff tau is trivial" on this instance.
Report check_bialgebra_obstruction(const TwistingMap& t, const CoalgebraData& ca,
                                   const CoalgebraData& cb);

struct PointwiseVerdict {
    bool agree = false;
    Vec left;
    Vec right;
};

/// Evaluate two composite paths on one element; partial stages permitted,
/// so generator-level probes of infinite-dimensional situations work
/// without a globally defined twist.
PointwiseVerdict check_pointwise_counterexample(const DiagramPath& lhs,
                                                const DiagramPath& rhs, const Vec& element);

/// tau_{i,j} : B^i (x) A^j -> A^j (x) B^i by consecutive twist applications.
/// Both recursion orders are built and must agree; the multiplication
/// compatibility squares are verified as well.
LinearMap iterated_twist(const TwistingMap& t, unsigned i, unsigned j);

/// Theorem-level transfer checks.
Report check_frobenius_inheritance(const TwistingMap& t, const FrobeniusData& fa,
                                   const FrobeniusData& fb);

Pairing twisted_pairing(const TwistingMap& t, const FrobeniusData& fa,
                        const FrobeniusData& fb);
Copairing twisted_copairing(const TwistingMap& t, const FrobeniusData& fa,
                            const FrobeniusData& fb);

Report check_separability_transfer(const TwistingMap& t, const SeparabilitySection& ga,
                                   const SeparabilitySection& gb);

Report check_special_transfer(const TwistingMap& t, const FrobeniusData& fa,
                              const FrobeniusData& fb);

/// Computes the product's Nakayama automorphism from the induced pairing and
/// compares it against the two natural candidates (factorwise, and
/// conjugated through the twist).  Gathers evidence only; asserts nothing.
Report check_nakayama_candidates(const TwistingMap& t, const FrobeniusData& fa,
                                 const FrobeniusData& fb);

}  // namespace twistlab
