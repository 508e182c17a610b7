#include "wordassoc/http_backend.hpp"

#include <curl/curl.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <memory>
#include <mutex>

namespace wordassoc {

namespace {

std::once_flag curl_init_flag;

size_t write_callback(char* ptr, size_t size, size_t nmemb, void* userdata) {
    auto* out = static_cast<std::string*>(userdata);
    out->append(ptr, size * nmemb);
    return size * nmemb;
}

struct CurlDeleter {
    void operator()(CURL* c) const { curl_easy_cleanup(c); }
};
struct SlistDeleter {
    void operator()(curl_slist* s) const { curl_slist_free_all(s); }
};

} // namespace

std::optional<std::string> api_key_from_env() {
    for (const char* name : {kApiKeyEnv, kFallbackApiKeyEnv}) {
        const char* v = std::getenv(name);
        if (v && *v) return std::string(v);
    }
    return std::nullopt;
}

HttpChatBackend::HttpChatBackend(HttpBackendOptions options) : options_(std::move(options)) {
    if (options_.endpoint_url.empty()) throw ConfigError("endpoint URL is empty");
    if (options_.model.empty()) throw ConfigError("model name is empty");
    std::call_once(curl_init_flag, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

std::string HttpChatBackend::request_body(const std::string& prompt, double temperature) const {
    nlohmann::ordered_json body;
    body["model"] = options_.model;
    auto messages = nlohmann::ordered_json::array();
    if (!options_.system_message.empty())
        messages.push_back({{"role", "system"}, {"content", options_.system_message}});
    messages.push_back({{"role", "user"}, {"content", prompt}});
    body["messages"] = std::move(messages);
    body["temperature"] = temperature;
    body["max_tokens"] = options_.max_tokens;
    return body.dump();
}

std::string HttpChatBackend::extract_content(const std::string& body) {
    try {
        const auto j = nlohmann::json::parse(body);
        const auto& content = j.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw TransientBackendError("completion content is not a string");
        return content.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransientBackendError(std::string("malformed completion response: ") + e.what());
    }
}

std::string HttpChatBackend::complete(const CompletionRequest& request) {
    std::unique_ptr<CURL, CurlDeleter> curl(curl_easy_init());
    if (!curl) throw TransientBackendError("curl_easy_init failed");

    const std::string body = request_body(request.prompt, request.temperature);
    curl_slist* raw_headers = curl_slist_append(nullptr, "Content-Type: application/json");
    std::string auth;
    if (options_.api_key) {
        auth = "Authorization: Bearer " + *options_.api_key;
        raw_headers = curl_slist_append(raw_headers, auth.c_str());
    }
    std::unique_ptr<curl_slist, SlistDeleter> headers(raw_headers);

    std::string response;
    curl_easy_setopt(curl.get(), CURLOPT_URL, options_.endpoint_url.c_str());
    curl_easy_setopt(curl.get(), CURLOPT_HTTPHEADER, headers.get());
    curl_easy_setopt(curl.get(), CURLOPT_POSTFIELDS, body.c_str());
    curl_easy_setopt(curl.get(), CURLOPT_POSTFIELDSIZE, static_cast<long>(body.size()));
    curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, write_callback);
    curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &response);
    curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, static_cast<long>(options_.timeout.count()));
    curl_easy_setopt(curl.get(), CURLOPT_NOSIGNAL, 1L);

    const CURLcode rc = curl_easy_perform(curl.get());
    if (rc != CURLE_OK) throw TransientBackendError(std::string("HTTP request failed: ") + curl_easy_strerror(rc));

    long status = 0;
    curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
    if (status == 401 || status == 403)
        throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(status) + ")");
    if (status == 408 || status == 429 || status >= 500)
        throw TransientBackendError("HTTP " + std::to_string(status));
    if (status < 200 || status >= 300)
        throw Error("endpoint rejected request (HTTP " + std::to_string(status) + "): " + response.substr(0, 300));
    return extract_content(response);
}

std::string HttpChatBackend::describe() const { return "http:" + options_.endpoint_url; }

} // namespace wordassoc
