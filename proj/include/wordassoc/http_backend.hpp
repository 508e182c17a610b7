#pragma once

#include "wordassoc/generation.hpp"

#include <chrono>
#include <optional>
#include <string>

namespace wordassoc {

// Environment variables consulted for the endpoint API key, in order.
inline constexpr const char* kApiKeyEnv = "WORDASSOC_API_KEY";
inline constexpr const char* kFallbackApiKeyEnv = "OPENAI_API_KEY";

std::optional<std::string> api_key_from_env();

struct HttpBackendOptions {
    std::string endpoint_url;  // full chat-completions URL
    std::string model;
    std::optional<std::string> api_key;  // no Authorization header when absent
    std::string system_message;
    int max_tokens = 64;
    std::chrono::seconds timeout{60};
};

// OpenAI-compatible chat-completions client over libcurl. One request per
// call with only model, messages, temperature and max_tokens set.
class HttpChatBackend final : public CompletionBackend {
public:
    explicit HttpChatBackend(HttpBackendOptions options);

    // 401/403 -> AuthError; 408/429/5xx, transport errors and malformed bodies
    // -> TransientBackendError; other 4xx -> Error.
    std::string complete(const CompletionRequest& request) override;
    std::string describe() const override;

    // Request body for a prompt, exposed for tests.
    std::string request_body(const std::string& prompt, double temperature) const;

    // choices[0].message.content; throws TransientBackendError when absent.
    static std::string extract_content(const std::string& body);

private:
    HttpBackendOptions options_;
};

} // namespace wordassoc
