#include "pbc/nvd.hpp"

#include "pbc/error.hpp"
#include "pbc/http.hpp"
#include "pbc/log.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <thread>

using nlohmann::json;

namespace pbc::nvd {
namespace {

class LiveNvdSource : public NvdSource {
public:
    explicit LiveNvdSource(LiveOptions options) : options_(std::move(options)) {}

    std::pair<std::vector<NvdEntry>, std::string> fetch(const std::string& cursor) override {
        long start_index = cursor.empty() ? 0 : std::stol(cursor);
        std::string url = options_.endpoint + "?startIndex=" + std::to_string(start_index) +
                          "&resultsPerPage=" + std::to_string(options_.page_size);
        std::map<std::string, std::string> headers;
        if (!options_.api_key.empty()) headers["apiKey"] = options_.api_key;

        rate_limit();
        std::string body;
        int attempts = 0;
        while (true) {
            ++attempts;
            try {
                auto response = http::get(url, headers, 10);
                if (response.status == 200) {
                    body = std::move(response.body);
                    break;
                }
                if (attempts >= options_.max_attempts) {
                    throw TransportError("endpoint returned status " +
                                         std::to_string(response.status));
                }
            } catch (const TransportError&) {
                if (attempts >= options_.max_attempts) throw;
            }
            log::warn("nvd-retry", {{"attempt", std::to_string(attempts)}});
            std::this_thread::sleep_for(std::chrono::milliseconds(500) * attempts);
        }

        json page = json::parse(body, nullptr, false);
        if (page.is_discarded()) {
            log::warn("nvd-page-skipped", {{"start_index", std::to_string(start_index)}});
            return {{}, ""};
        }
        auto entries = parse_page(body);
        long total = page.value("totalResults", 0L);
        long next = start_index + page.value("resultsPerPage", options_.page_size);
        return {std::move(entries), next < total ? std::to_string(next) : ""};
    }

private:
    // Public endpoint etiquette: ~1 request / 1.2 s anonymously, ~1 / 0.12 s
    // with an API key.
    void rate_limit() {
        auto interval = options_.api_key.empty() ? std::chrono::milliseconds(1200)
                                                 : std::chrono::milliseconds(120);
        auto now = std::chrono::steady_clock::now();
        if (last_request_.time_since_epoch().count() != 0 && now - last_request_ < interval) {
            std::this_thread::sleep_for(interval - (now - last_request_));
        }
        last_request_ = std::chrono::steady_clock::now();
    }

    LiveOptions options_;
    std::chrono::steady_clock::time_point last_request_{};
};

} // namespace

std::unique_ptr<NvdSource> make_live_source(const LiveOptions& options) {
    return std::make_unique<LiveNvdSource>(options);
}

} // namespace pbc::nvd
