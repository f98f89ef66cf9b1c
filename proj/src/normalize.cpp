#include "privnet/normalize.hpp"

#include <cctype>

namespace privnet {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string_view strip_quotes(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s.remove_prefix(1);
        s.remove_suffix(1);
        s = trim(s);
    }
    return s;
}

// Lowercase ASCII letters, drop stray angle brackets, collapse whitespace
// runs to one space; other bytes (UTF-8 continuation etc.) pass through.
std::string canonicalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (c == '<' || c == '>') continue;
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

} // namespace

std::optional<EntityKey> normalize_address(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) return std::nullopt;

    // Angle-bracketed addr-spec wins over the display name.
    auto open = s.rfind('<');
    if (open != std::string_view::npos) {
        auto close = s.find('>', open + 1);
        std::string_view inner = (close == std::string_view::npos)
                                     ? s.substr(open + 1)
                                     : s.substr(open + 1, close - open - 1);
        inner = trim(strip_quotes(trim(inner)));
        if (inner.empty()) return std::nullopt;
        std::string key = canonicalize(inner);
        if (key.empty()) return std::nullopt;
        return EntityKey{std::move(key)};
    }

    s = trim(strip_quotes(s));
    if (s.empty()) return std::nullopt;

    if (s.find('@') != std::string_view::npos) {
        std::string key = canonicalize(s);
        if (key.empty()) return std::nullopt;
        return EntityKey{std::move(key)};
    }

    // Bare display name: keep it, whitespace-collapsed.
    std::string key = canonicalize(s);
    if (key.empty()) return std::nullopt;
    return EntityKey{std::move(key)};
}

std::vector<std::string> split_address_list(std::string_view header_value) {
    std::vector<std::string> out;
    std::string current;
    bool in_quotes = false;
    int angle_depth = 0;
    for (char c : header_value) {
        if (c == '"') in_quotes = !in_quotes;
        if (!in_quotes) {
            if (c == '<') ++angle_depth;
            if (c == '>' && angle_depth > 0) --angle_depth;
        }
        if (c == ',' && !in_quotes && angle_depth == 0) {
            if (!trim(current).empty()) out.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!trim(current).empty()) out.emplace_back(trim(current));
    return out;
}

} // namespace privnet
