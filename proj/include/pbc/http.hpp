#pragma once

#include <map>
#include <string>

namespace pbc::http {

struct Response {
    int status = 0;
    std::string body;
};

// GET over http/https. Throws TransportError when the request cannot be
// made at all (DNS, connect, TLS); non-2xx statuses are returned.
Response get(const std::string& url, const std::map<std::string, std::string>& headers = {},
             int timeout_s = 10);

} // namespace pbc::http
