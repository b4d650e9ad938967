#pragma once

#include <string>

#include <json.hpp>

namespace ptwell::cli {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON with every double written as %.17g so that output is
/// byte-identical between runs and round-trips exactly.  Non-finite numbers
/// become null.
std::string to_json_text(const Json& j);

/// %.17g
std::string format_double(double v);

}  // namespace ptwell::cli
