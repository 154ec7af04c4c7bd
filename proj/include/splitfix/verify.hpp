#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitfix/diagnostics.hpp"

namespace splitfix {

/// A property report with the verdict it is expected to reach. Refutation
/// checks (a map that is known not to be quasi-nonexpansive, say) expect FAIL.
struct VerifyItem {
  PropertyReport report;
  bool expect_pass = true;
  std::optional<double> value;  // an estimated quantity, when the check produces one

  bool as_expected() const { return report.passed == expect_pass; }
};

/// format_report(...) followed by " expected=PASS|FAIL" and " value=<%.17g>".
std::string format_item(const VerifyItem& item);

/// Averaging constants, fixed-point preservation, quasi-nonexpansive
/// embedding, convex combinations, the three quasi-nonexpansive
/// inequalities, the example1 constant and projection-engine agreement.
std::vector<VerifyItem> verify_lemmas();

/// Class checks for one gallery map. Throws Error on an unknown id.
std::vector<VerifyItem> verify_map(const std::string& id);

/// "lemmas", "map:<id>" or "all"; nullopt for anything else.
std::optional<std::vector<VerifyItem>> verify_scope(const std::string& scope);

}  // namespace splitfix
