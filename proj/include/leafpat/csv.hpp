// CSV output helpers with deterministic number formatting.
//
// All numeric output uses the shortest decimal representation that
// round-trips to the same double (std::to_chars), so repeated runs with the
// same inputs produce byte-identical files.

#pragma once

#include <string>
#include <vector>

namespace leafpat {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Join formatted fields with commas (no trailing newline).
std::string csv_row(const std::vector<std::string>& fields);

/// Write `text` to `path`, creating parent directories as needed.
/// Throws std::runtime_error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

} // namespace leafpat
