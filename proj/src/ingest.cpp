#include "privnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "privnet/csv.hpp"
#include "privnet/errors.hpp"
#include "privnet/normalize.hpp"

namespace privnet {

namespace {

constexpr std::size_t kMaxStoredWarnings = 100;

void add_warning(ParseResult& result, std::string message) {
    ++result.warning_count;
    if (result.warnings.size() < kMaxStoredWarnings) {
        result.warnings.push_back(std::move(message));
    }
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Normalize every element of an address list, dropping unusable entries and
// duplicates (first occurrence wins).
std::vector<EntityKey> normalize_list(const std::vector<std::string>& raw_list,
                                      ParseResult& result, const std::string& doc_id) {
    std::vector<EntityKey> keys;
    keys.reserve(raw_list.size());
    for (const auto& raw : raw_list) {
        auto key = normalize_address(raw);
        if (!key) {
            add_warning(result, doc_id + ": dropped unparseable recipient '" + raw + "'");
            continue;
        }
        if (std::find(keys.begin(), keys.end(), *key) == keys.end()) {
            keys.push_back(std::move(*key));
        }
    }
    return keys;
}

std::vector<std::string> split_semicolons(const std::string& field) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= field.size()) {
        auto end = field.find(';', start);
        if (end == std::string::npos) end = field.size();
        auto token = trim_view(std::string_view(field).substr(start, end - start));
        if (!token.empty()) out.emplace_back(token);
        if (end == field.size()) break;
        start = end + 1;
    }
    return out;
}

struct HeaderBlock {
    std::string from;
    std::string to;
    std::string cc;
    std::string bcc;
    std::string privileged; // optional X-Privileged: 0/1
};

// RFC-822-style headers: "Name: value" with folded continuation lines.
// Only the fields we care about are kept.
HeaderBlock parse_headers(const std::vector<std::string>& lines) {
    HeaderBlock block;
    std::string* current = nullptr;
    for (const auto& line : lines) {
        if (!line.empty() && (line[0] == ' ' || line[0] == '\t')) {
            if (current) {
                current->push_back(' ');
                current->append(trim_view(line));
            }
            continue;
        }
        current = nullptr;
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string name = to_lower(trim_view(std::string_view(line).substr(0, colon)));
        std::string_view value = trim_view(std::string_view(line).substr(colon + 1));
        if (name == "from") current = &block.from;
        else if (name == "to") current = &block.to;
        else if (name == "cc") current = &block.cc;
        else if (name == "bcc") current = &block.bcc;
        else if (name == "x-privileged") current = &block.privileged;
        if (current) current->assign(value);
    }
    return block;
}

// Build one record from a parsed header block; returns false (and counts a
// skip) when the sender is missing or unusable.
bool finish_record(ParseResult& result, const HeaderBlock& headers, std::string doc_id,
                   std::unordered_set<std::string>& seen_ids) {
    if (!seen_ids.insert(doc_id).second) {
        throw Error(ErrorCode::Corpus, "duplicate doc_id '" + doc_id + "'");
    }
    auto sender = normalize_address(headers.from);
    if (!sender) {
        ++result.skipped;
        add_warning(result, doc_id + ": skipped, no parseable sender");
        return false;
    }
    DocumentRecord record;
    record.doc_id = std::move(doc_id);
    record.sender = std::move(*sender);
    record.recipients_to = normalize_list(split_address_list(headers.to), result, record.doc_id);
    record.recipients_cc = normalize_list(split_address_list(headers.cc), result, record.doc_id);
    record.recipients_bcc = normalize_list(split_address_list(headers.bcc), result, record.doc_id);
    auto priv = trim_view(headers.privileged);
    if (priv == "1") record.privileged = true;
    else if (priv == "0") record.privileged = false;
    result.records.push_back(std::move(record));
    return true;
}

void maybe_detect_counsel(ParseResult& result, const std::vector<std::string>& body_lines,
                          bool record_added) {
    if (!record_added || body_lines.empty()) return;
    std::string body;
    for (const auto& line : body_lines) {
        body += line;
        body += '\n';
    }
    if (detect_counsel_heuristic(body)) {
        result.detected_counsel.insert(result.records.back().sender);
    }
}

// Splits a message into header lines (up to the first blank line) and,
// when bodies are wanted, body lines.
void consume_message(ParseResult& result, const std::vector<std::string>& lines,
                     std::string doc_id, const ParseOptions& options,
                     std::unordered_set<std::string>& seen_ids) {
    std::vector<std::string> header_lines;
    std::vector<std::string> body_lines;
    bool in_body = false;
    for (const auto& line : lines) {
        if (!in_body && line.empty()) {
            in_body = true;
            continue;
        }
        if (in_body) {
            if (options.scan_bodies) body_lines.push_back(line);
        } else {
            header_lines.push_back(line);
        }
    }
    bool added = finish_record(result, parse_headers(header_lines), std::move(doc_id), seen_ids);
    if (options.scan_bodies) maybe_detect_counsel(result, body_lines, added);
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

} // namespace

ParseResult parse_csv_metadata(std::istream& in, const std::string& source_name) {
    ParseResult result;
    auto header = csv::read_record(in);
    if (!header) {
        throw Error(ErrorCode::Corpus, source_name + ": empty CSV, header row required");
    }
    const std::vector<std::string> expected = {"DocID", "From", "To", "CC", "BCC", "Privileged"};
    bool ok = header->size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        ok = to_lower((*header)[i]) == to_lower(expected[i]);
    }
    if (!ok) {
        throw Error(ErrorCode::Corpus,
                    source_name + ": CSV header must be DocID,From,To,CC,BCC,Privileged");
    }

    std::unordered_set<std::string> seen_ids;
    std::size_t row_number = 1;
    while (auto row = csv::read_record(in)) {
        ++row_number;
        if (row->size() == 1 && (*row)[0].empty()) continue; // trailing blank line
        if (row->size() != 6) {
            ++result.skipped;
            add_warning(result, source_name + " row " + std::to_string(row_number) +
                                    ": expected 6 fields, got " + std::to_string(row->size()));
            continue;
        }
        std::string doc_id((*row)[0]);
        if (doc_id.empty()) {
            ++result.skipped;
            add_warning(result,
                        source_name + " row " + std::to_string(row_number) + ": empty DocID");
            continue;
        }
        if (!seen_ids.insert(doc_id).second) {
            throw Error(ErrorCode::Corpus, "duplicate doc_id '" + doc_id + "'");
        }
        auto sender = normalize_address((*row)[1]);
        if (!sender) {
            ++result.skipped;
            add_warning(result, doc_id + ": skipped, no parseable sender");
            continue;
        }
        auto priv_trimmed = trim_view((*row)[5]);
        if (!priv_trimmed.empty() && priv_trimmed != "0" && priv_trimmed != "1") {
            ++result.skipped;
            add_warning(result, doc_id + ": skipped, Privileged must be 0, 1, or empty");
            continue;
        }
        DocumentRecord record;
        record.doc_id = std::move(doc_id);
        record.sender = std::move(*sender);
        record.recipients_to = normalize_list(split_semicolons((*row)[2]), result, record.doc_id);
        record.recipients_cc = normalize_list(split_semicolons((*row)[3]), result, record.doc_id);
        record.recipients_bcc = normalize_list(split_semicolons((*row)[4]), result, record.doc_id);
        if (priv_trimmed == "1") record.privileged = true;
        else if (priv_trimmed == "0") record.privileged = false;
        result.records.push_back(std::move(record));
    }
    return result;
}

ParseResult parse_eml_dir(const std::filesystem::path& dir, const ParseOptions& options) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::Input, "not a readable directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            throw Error(ErrorCode::Input, "cannot read " + file.string());
        }
        consume_message(result, read_lines(in), file.filename().string(), options, seen_ids);
    }
    return result;
}

ParseResult parse_mbox(std::istream& in, const std::string& source_name,
                       const ParseOptions& options) {
    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    std::vector<std::string> current;
    bool have_message = false;
    std::size_t ordinal = 0;

    auto flush = [&]() {
        if (!have_message) return;
        ++ordinal;
        consume_message(result, current, source_name + ":" + std::to_string(ordinal), options,
                        seen_ids);
        current.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("From ", 0) == 0) {
            flush();
            have_message = true;
            continue; // the mbox From_ line itself carries no header data we use
        }
        if (have_message) current.push_back(line);
    }
    flush();
    return result;
}

ParseResult parse_metadata(const std::filesystem::path& input, InputFormat format,
                           const ParseOptions& options) {
    if (format == InputFormat::EmlDir) {
        return parse_eml_dir(input, options);
    }
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Input, "cannot read " + input.string());
    }
    if (format == InputFormat::Mbox) {
        return parse_mbox(in, input.filename().string(), options);
    }
    return parse_csv_metadata(in, input.filename().string());
}

CounselSet load_counsel_list(std::istream& in) {
    CounselSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto trimmed = trim_view(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        if (auto key = normalize_address(trimmed)) {
            set.members.insert(std::move(*key));
        }
    }
    return set;
}

CounselSet load_counsel_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Input, "cannot read counsel list " + path.string());
    }
    return load_counsel_list(in);
}

bool detect_counsel_heuristic(std::string_view body_text) {
    static const std::vector<std::string> keywords = {
        "attorney", "esq", "general counsel", "legal department", "law department", "paralegal",
    };
    constexpr std::size_t kSignatureZoneLines = 15;

    // Collect the last 15 non-empty lines.
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= body_text.size()) {
        auto end = body_text.find('\n', pos);
        if (end == std::string_view::npos) end = body_text.size();
        auto line = trim_view(body_text.substr(pos, end - pos));
        if (!line.empty()) lines.push_back(line);
        if (end == body_text.size()) break;
        pos = end + 1;
    }
    std::size_t start = lines.size() > kSignatureZoneLines ? lines.size() - kSignatureZoneLines : 0;
    for (std::size_t i = start; i < lines.size(); ++i) {
        std::string lower = to_lower(lines[i]);
        for (const auto& keyword : keywords) {
            if (lower.find(keyword) != std::string::npos) return true;
        }
    }
    return false;
}

} // namespace privnet
