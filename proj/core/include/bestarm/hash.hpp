#pragma once

#include <string>
#include <string_view>

namespace bestarm {

// Lowercase hex SHA-1 of the bytes.
std::string sha1_hex(std::string_view data);

// Git-style content hash: SHA-1 of "blob <size>\0" + data.
std::string git_blob_sha1(std::string_view data);

}  // namespace bestarm
