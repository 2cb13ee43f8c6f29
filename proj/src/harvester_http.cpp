#include <cstdint>
#include <memory>
#include <string>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
// Plain client; HTTPS hosts need a TLS-enabled build of httplib.
#endif
#include <httplib.h>
#include <json.hpp>

#include "aliasmine/harvester.hpp"

namespace aliasmine {

namespace {

using nlohmann::json;

std::string url_encode(const std::string& value) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : value) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

std::string decode_base64(const std::string& input) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::string out;
    int buffer = 0, bits = 0;
    for (char c : input) {
        int v = value_of(c);
        if (v < 0)
            continue;  // newlines and padding
        buffer = (buffer << 6) | v;
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += static_cast<char>((buffer >> bits) & 0xFF);
        }
    }
    return out;
}

class HttpBackend final : public SearchBackend {
public:
    explicit HttpBackend(const HttpBackendConfig& config)
        : config_(config), client_(config.host) {
        client_.set_connection_timeout(10);
        client_.set_read_timeout(30);
    }

    SearchPage search(const std::string& term, std::int64_t size_lo, std::int64_t size_hi,
                      SortOrder order, int page) override {
        if (page < 1 || page > cap_per_order() / page_size())
            throw BackendError{"page beyond result cap", false};

        std::string path = "/search/code?q=" + url_encode(build_query(term, size_lo, size_hi)) +
                           "&sort=indexed&order=" +
                           (order == SortOrder::Newest ? "desc" : "asc") +
                           "&per_page=" + std::to_string(page_size()) +
                           "&page=" + std::to_string(page);
        json body = get_json(path);

        SearchPage result;
        result.total_count = body.value("total_count", std::int64_t{0});
        for (const auto& item : body.value("items", json::array())) {
            HarvestedFile file;
            file.repo_full_name = item.at("repository").value("full_name", "");
            file.path = item.value("path", "");
            if (config_.fetch_contents && item.contains("url"))
                fetch_contents(item["url"].get<std::string>(), file);
            result.items.push_back(std::move(file));
        }
        return result;
    }

private:
    json get_json(const std::string& path) {
        httplib::Headers headers = {{"Accept", "application/vnd.github+json"},
                                    {"User-Agent", "aliasmine"}};
        if (!config_.token.empty())
            headers.emplace("Authorization", "token " + config_.token);
        auto res = client_.Get(path, headers);
        if (!res)
            throw BackendError{"connection failed", true};
        if (res->status == 403 || res->status == 429 || res->status >= 500)
            throw BackendError{"status " + std::to_string(res->status), true};
        if (res->status != 200)
            throw BackendError{"status " + std::to_string(res->status), false};
        json body = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
        if (body.is_discarded())
            throw BackendError{"malformed response body", true};
        return body;
    }

    void fetch_contents(const std::string& api_url, HarvestedFile& file) {
        // api_url is absolute; strip scheme+host, we stay on the same API host.
        std::string path = api_url;
        auto host_pos = path.find(config_.host);
        if (host_pos != std::string::npos)
            path = path.substr(host_pos + config_.host.size());
        json body = get_json(path);
        if (body.value("encoding", "") == "base64")
            file.contents = decode_base64(body.value("content", ""));
        file.size = body.value("size", std::int64_t{0});
    }

    HttpBackendConfig config_;
    httplib::Client client_;
};

}  // namespace

std::unique_ptr<SearchBackend> make_http_backend(const HttpBackendConfig& config) {
    return std::make_unique<HttpBackend>(config);
}

}  // namespace aliasmine
