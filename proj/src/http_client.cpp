#include "pbc/http.hpp"

#include "pbc/error.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace pbc::http {

Response get(const std::string& url, const std::map<std::string, std::string>& headers,
             int timeout_s) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("bad URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_s, 0);
    client.set_read_timeout(timeout_s, 0);
    client.set_follow_location(true);

    httplib::Headers hl;
    for (const auto& [k, v] : headers) hl.emplace(k, v);

    auto result = client.Get(path, hl);
    if (!result) {
        throw TransportError("request to " + origin + " failed: " +
                             httplib::to_string(result.error()));
    }
    return Response{result->status, result->body};
}

} // namespace pbc::http
