#pragma once

#include <string>

#include "json.hpp"

#include "bjaudit/audit.hpp"

namespace bjaudit {

using Json = nlohmann::ordered_json;

/// Serializes with every float printed to 17 significant digits; non-finite
/// floats become null.
std::string dump_json(const Json& j, int indent = 2);

/// null for non-finite values, the number otherwise.
Json finite_or_null(double x);

Json to_json(const ApproxParams& p);
Json to_json(const AuditReport& r);

}  // namespace bjaudit
