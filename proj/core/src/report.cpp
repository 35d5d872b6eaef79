#include "twistlab/report.hpp"

#include <algorithm>
#include <sstream>

namespace twistlab {

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

std::string FailureWitness::to_string() const {
    std::ostringstream os;
    os << "at " << basis_label;
    if (left) os << ": " << left->to_string();
    if (right) os << " vs " << right->to_string();
    return os.str();
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const DiagramCheck& c) { return c.passed(); });
}

const DiagramCheck* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void Report::add(std::string name, CheckStatus status, std::string claim,
                 std::optional<FailureWitness> witness) {
    checks.push_back({std::move(name), status, std::move(witness), std::move(claim)});
}

void Report::add_comparison(std::string name, const MapComparison& cmp, std::string claim) {
    add(std::move(name), cmp.equal ? CheckStatus::Pass : CheckStatus::Fail,
        std::move(claim), witness_of(cmp));
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks)
        checks.push_back({prefix + c.name, c.status, c.witness, c.claim});
}

std::string Report::to_string() const {
    std::ostringstream os;
    os << subject << "\n";
    for (const auto& c : checks) {
        os << "  [" << twistlab::to_string(c.status) << "] " << c.name;
        if (c.witness) os << "  (" << c.witness->to_string() << ")";
        os << "\n";
    }
    return os.str();
}

std::optional<FailureWitness> witness_of(const MapComparison& cmp) {
    if (cmp.equal) return std::nullopt;
    return FailureWitness{cmp.witness_label, cmp.left, cmp.right};
}

}  // namespace twistlab
