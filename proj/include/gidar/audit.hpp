#pragma once

#include <string>
#include <vector>

namespace gidar {

/**
 * One published closed form checked against the derivation that replaces it
 * and an independent numerical oracle.
 */
struct AuditItem {
    std::string item;
    double stated;
    double derived;
    double oracle;
    double stated_rel_err;
    double derived_rel_err;
    std::string status;  ///< "agrees", "stated-differs" or "derived-fails"
};

inline constexpr double kAuditTolerance = 1e-4;

/// Every audited formula at fixed parameter values.
std::vector<AuditItem> run_audit();

/// Number of items whose derived value misses its oracle.
int audit_failures(const std::vector<AuditItem>& items);

}  // namespace gidar
