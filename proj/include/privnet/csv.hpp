#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace privnet::csv {

// Minimal RFC-4180 reader: comma-delimited, double-quote quoting with ""
// escapes, quoted fields may contain commas and newlines. CRLF and LF both
// accepted. Reads one record; returns nullopt at end of stream.
std::optional<std::vector<std::string>> read_record(std::istream& in);

// Quote a field only when it contains a comma, quote, or line break.
std::string escape_field(const std::string& field);

void write_record(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trip decimal form of a double (to_chars), so exported
// values parse back bit-identical.
std::string format_double(double value);

double parse_double(const std::string& text);

} // namespace privnet::csv
