#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace selsym::store {

std::string sha256_hex(const std::string& data);

// Content-addressed JSON store. Keys hash (operation, canonical inputs, engine version); entries
// carry a payload hash and are evicted when either hash fails to verify.
class Cache {
public:
    Cache() = default;
    explicit Cache(std::filesystem::path dir);

    bool enabled() const { return !dir_.empty(); }
    static std::string key(const std::string& op, const nlohmann::json& inputs);

    std::optional<nlohmann::json> get(const std::string& op, const nlohmann::json& inputs);
    void put(const std::string& op, const nlohmann::json& inputs, const nlohmann::json& payload);

    std::filesystem::path path_for(const std::string& key) const;
    int hits() const { return hits_; }
    int misses() const { return misses_; }
    int evictions() const { return evictions_; }

private:
    std::filesystem::path dir_;
    int hits_ = 0, misses_ = 0, evictions_ = 0;
};

}  // namespace selsym::store
