#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace szeta::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Serialises with every floating-point number printed as %.17g, so that
/// identical runs give byte-identical files. Non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

/// %.17g on its own, for CSV cells.
std::string format_number(double v);

/// Quotes a CSV cell when it contains a separator, quote or newline.
std::string csv_cell(const std::string& s);

/// Writes the whole content to a temporary file next to `path` and renames it
/// into place. An empty path or "-" sends the content to `console` instead.
void write_output(const std::string& path, const std::string& content, std::ostream& console);

}  // namespace szeta::cli
