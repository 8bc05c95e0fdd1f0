#pragma once

// Identity suites behind `cfnl verify`. Each check is either an identity
// (exact up to the stated tolerance; failure is an error) or a report
// (a measured value with no pass/fail contract).

#include "cfnl/charsums.hpp"
#include "cfnl/gf2n.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cfnl::cli {

enum class CheckKind { identity, report };

struct Check {
    std::string name;
    CheckKind kind = CheckKind::identity;
    bool passed = true;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;

    bool passed() const;
};

struct SuiteOptions {
    double tolerance_scale = 1.0;
    double etk_c = 1.0;
    int etk_h = 0;  // 0 selects floor(q^{1/4})
    std::uint32_t l = 0;
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
};

/// Field, tables and Gauss sums shared by every suite for one n.
struct SuiteContext {
    gf2n::FieldSpec field;
    std::shared_ptr<const gf2n::DlogTables> tables;
    std::unique_ptr<charsums::CharContext> chars;
    charsums::GaussTable gauss;
};

SuiteContext make_suite_context(const gf2n::FieldSpec& field,
                                std::shared_ptr<const gf2n::DlogTables> tables);

const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const SuiteContext& ctx, const SuiteOptions& opt);

}  // namespace cfnl::cli
