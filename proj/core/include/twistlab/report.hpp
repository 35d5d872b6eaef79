#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistlab/linear_map.hpp"

namespace twistlab {

enum class CheckStatus { Pass, Fail, Error };

std::string to_string(CheckStatus status);

/// A failed equality check names one domain basis element on which the two
/// composites differ, together with both images.
struct FailureWitness {
    std::string basis_label;
    std::optional<Vec> left;
    std::optional<Vec> right;

    std::string to_string() const;
};

/// One verified diagram (or derived assertion) within a report.  `claim`
/// states the mathematical fact being tested so a failure is traceable.
struct DiagramCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::optional<FailureWitness> witness;
    std::string claim;

    bool passed() const { return status == CheckStatus::Pass; }
};

/// Structured result of a verification operation: one entry per diagram,
/// never a bare boolean, because diagnosis is the point.
struct Report {
    std::string subject;
    std::vector<DiagramCheck> checks;

    bool passed() const;
    const DiagramCheck* find(const std::string& name) const;

    void add(std::string name, CheckStatus status, std::string claim,
             std::optional<FailureWitness> witness = std::nullopt);
    /// Record a map comparison as a pass/fail check.
    void add_comparison(std::string name, const MapComparison& cmp, std::string claim);
    void merge(const Report& other, const std::string& prefix);

    std::string to_string() const;
};

/// Turn a MapComparison into an optional witness.
std::optional<FailureWitness> witness_of(const MapComparison& cmp);

}  // namespace twistlab
