#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privnet/records.hpp"

namespace privnet {

// Canonicalize one raw address or display name into an EntityKey.
//
// Rules: if an angle-bracketed addr-spec is present ("Name <addr>") the
// bracket content wins; otherwise an unbracketed token containing '@' is
// used as-is; otherwise the display name is kept with internal whitespace
// collapsed. Result is trimmed and ASCII-lowercased. Returns nullopt when
// nothing usable remains.
std::optional<EntityKey> normalize_address(std::string_view raw);

// Split a To/Cc/Bcc header value into individual address tokens.
// Commas inside double quotes or angle brackets do not split.
std::vector<std::string> split_address_list(std::string_view header_value);

} // namespace privnet
