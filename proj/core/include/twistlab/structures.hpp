#pragma once

#include <optional>
#include <string>

#include "twistlab/report.hpp"

namespace twistlab {

/// Multiplication and unit on a shared space: mul : A (x) A -> A and
/// unit : k -> A.  Nothing is assumed; run check_algebra to verify.
struct AlgebraData {
    SpacePtr space;
    LinearMap mul;
    LinearMap unit;
    std::string name = "A";
};

/// Comultiplication and counit: comul : C -> C (x) C and counit : C -> k.
struct CoalgebraData {
    SpacePtr space;
    LinearMap comul;
    LinearMap counit;
    std::string name = "C";
    /// Degree of comul when it is homogeneous for the space's grading
    /// (kept for twist-compatibility diagnostics; never assumed).
    std::optional<std::vector<std::int64_t>> comul_degree;
};

/// An algebra and a coalgebra on the same space whose structure maps are
/// expected to satisfy the two Frobenius squares (checked, never assumed).
struct FrobeniusData {
    AlgebraData algebra;
    CoalgebraData coalgebra;
};

struct Pairing {
    LinearMap form; // A (x) A -> k
};

struct Copairing {
    LinearMap form; // k -> A (x) A
};

/// Candidate right inverse of the multiplication, as a bimodule map.
struct SeparabilitySection {
    LinearMap gamma; // A -> A (x) A
};

/// The unique automorphism intertwining an associative non-degenerate
/// pairing with its own swap.  `convention` records which side the
/// automorphism acts on, since both conventions appear in the literature.
struct NakayamaAuto {
    LinearMap theta;
    std::string convention; // "beta(x(x)y) = beta(y(x)theta(x))"
};

// ---- axiom checks (each diagram reported separately, with witnesses) ----

Report check_algebra(const AlgebraData& a);
Report check_coalgebra(const CoalgebraData& c);

/// Full bialgebra verification: algebra axioms, coalgebra axioms, and the
/// four compatibility diagrams between them.
Report check_bialgebra(const AlgebraData& a, const CoalgebraData& c);

/// Full Frobenius verification: algebra axioms, coalgebra axioms, and the
/// two compatibility squares.
Report check_frobenius(const FrobeniusData& f);

// ---- pairings ----

Pairing pairing_from_frobenius(const FrobeniusData& f);     // counit o mul
Copairing copairing_from_frobenius(const FrobeniusData& f); // comul o unit

struct NondegeneracyResult {
    bool nondegenerate = false;
    std::optional<Copairing> copairing; // snake partner when non-degenerate
};

/// Non-degeneracy via the Gram matrix; on success the returned copairing is
/// verified against the snake identity before being handed back.
NondegeneracyResult check_nondegenerate(const Pairing& beta);

MapComparison check_associative_pairing(const Pairing& beta, const AlgebraData& a);

/// Rebuild the full Frobenius structure from an associative non-degenerate
/// pairing.  Both mirror composites are computed for the comultiplication
/// and for the counit and must agree; the result passes check_frobenius.
FrobeniusData frobenius_from_pairing(const AlgebraData& a, const Pairing& beta);

MapComparison check_symmetric(const Pairing& beta);
MapComparison check_special(const FrobeniusData& f);

Report check_separable(const AlgebraData& a, const SeparabilitySection& gamma);

/// Solve the Gram system for the unique theta with
/// beta(x (x) y) = beta(y (x) theta(x)); theta = id iff beta is symmetric.
NakayamaAuto nakayama_from_pairing(const AlgebraData& a, const Pairing& beta);

}  // namespace twistlab
