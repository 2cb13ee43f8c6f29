#pragma once

#include <string>
#include <string_view>

namespace aliasmine {

enum class HashAlgorithm { Sha1, Sha256 };

std::string sha1_hex(std::string_view data);
std::string sha256_hex(std::string_view data);
std::string content_hash(std::string_view data, HashAlgorithm algo);

}  // namespace aliasmine
