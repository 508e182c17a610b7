#pragma once

// Shared fixtures for the unit and acceptance tests.

#include "wordassoc/core_model.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace wordassoc::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "wa") {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// R1-only dataset: counts[i] participants answer responses[i] for the cue.
inline void add_r1_counts(std::vector<AssociationInstance>& out, const std::string& cue,
                          const std::vector<std::pair<std::string, int>>& counts) {
    std::uint32_t participant = 1;
    for (const auto& [response, n] : counts)
        for (int k = 0; k < n; ++k) out.push_back({cue, response, participant++, Rank::R1});
}

inline AssociationDataset human_dataset(std::vector<AssociationInstance> instances) {
    return AssociationDataset(std::string(kHumanLabel), std::nullopt, std::move(instances));
}

inline AssociationDataset model_dataset(const std::string& label, double temperature,
                                        std::vector<AssociationInstance> instances) {
    return AssociationDataset(label, temperature, std::move(instances));
}

} // namespace wordassoc::testing
