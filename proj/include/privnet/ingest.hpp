#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "privnet/records.hpp"

namespace privnet {

enum class InputFormat { EmlDir, Mbox, Csv };

struct ParseOptions {
    bool scan_bodies = false; // run the counsel signature heuristic on bodies
};

struct ParseResult {
    std::vector<DocumentRecord> records;
    std::size_t skipped = 0;            // messages/rows without a parseable sender
    std::vector<std::string> warnings;  // capped; warning_count holds the true total
    std::size_t warning_count = 0;
    // Senders whose message body matched the signature heuristic
    // (only populated when ParseOptions::scan_bodies is set).
    std::unordered_set<EntityKey, EntityKeyHash> detected_counsel;
};

// CSV metadata format: header row `DocID,From,To,CC,BCC,Privileged`,
// To/CC/BCC semicolon-separated, Privileged 0/1/empty.
ParseResult parse_csv_metadata(std::istream& in, const std::string& source_name);

// One RFC-822-style message per file; files visited in lexicographic name
// order; doc_id is the file name.
ParseResult parse_eml_dir(const std::filesystem::path& dir, const ParseOptions& options = {});

// `From `-delimited mailbox; doc_id is "<source_name>:<ordinal>" (1-based).
ParseResult parse_mbox(std::istream& in, const std::string& source_name,
                       const ParseOptions& options = {});

// Dispatch on format. `input` is a directory for EmlDir, a file otherwise.
ParseResult parse_metadata(const std::filesystem::path& input, InputFormat format,
                           const ParseOptions& options = {});

// One identity per line, `#` comments, duplicates collapse.
CounselSet load_counsel_list(std::istream& in);
CounselSet load_counsel_list(const std::filesystem::path& path);

// Deliberately simple stand-in for signature-based counsel detection:
// keyword match over the last 15 non-empty lines of a message body.
// Off by default everywhere; enable via ParseOptions::scan_bodies.
bool detect_counsel_heuristic(std::string_view body_text);

} // namespace privnet
