#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "isospin/channels.hpp"
#include "isospin/entropy.hpp"
#include "isospin/verify.hpp"

namespace isospin {

using Json = nlohmann::ordered_json;

/// Serialises with every floating-point number printed to 17 significant digits,
/// so identical values always produce identical bytes.
std::string dump_json(const Json& j, int indent = 2);

/// [[re, im], ...]
Json vector_to_json(std::span<const Complex> v);
/// Row-major [[re, im], ...].
Json matrix_to_json(const ComplexMatrix& m);

/// {"label", "dim", "kraus": [[[re, im], ...row-major...], ...]}
Json channel_to_json(const KrausChannel& ch);
/// Throws InvalidFormat on schema errors and NotTracePreserving for non-CPTP Kraus sets.
KrausChannel channel_from_json(const Json& j);

/// {"min_entropy_nats" | "min_entropy_bits", "argmin", "restarts", "converged", "seed"}
Json entropy_report_to_json(const EntropyReport& r, bool bits = false);

/// [{"name", "passed", "residual", "tolerance", "details"}, ...]
Json check_results_to_json(const std::vector<CheckResult>& results);

}  // namespace isospin
