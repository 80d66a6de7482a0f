#include "selsym/store/cache.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>
#include <unistd.h>

#include "selsym/errors.hpp"
#include "selsym/version.hpp"

namespace selsym::store {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) fail(ErrorKind::Internal, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::string Cache::key(const std::string& op, const nlohmann::json& inputs) {
    // nlohmann::json objects are key-sorted, so dump() is canonical
    nlohmann::json k = {{"op", op}, {"inputs", inputs}, {"engine", kEngineVersion}};
    return sha256_hex(k.dump());
}

fs::path Cache::path_for(const std::string& key) const { return dir_ / key.substr(0, 2) / (key + ".json"); }

std::optional<nlohmann::json> Cache::get(const std::string& op, const nlohmann::json& inputs) {
    if (!enabled()) return std::nullopt;
    std::string k = key(op, inputs);
    fs::path path = path_for(k);
    std::ifstream in(path);
    if (!in) {
        ++misses_;
        return std::nullopt;
    }
    try {
        auto entry = nlohmann::json::parse(in);
        bool ok = entry.at("key") == k && key(entry.at("op"), entry.at("inputs")) == k &&
                  entry.at("engine") == kEngineVersion && sha256_hex(entry.at("payload").dump()) == entry.at("payload_sha256");
        if (ok) {
            ++hits_;
            return entry.at("payload");
        }
    } catch (const nlohmann::json::exception&) {
    }
    in.close();
    std::error_code ec;
    fs::remove(path, ec);
    ++evictions_;
    ++misses_;
    return std::nullopt;
}

void Cache::put(const std::string& op, const nlohmann::json& inputs, const nlohmann::json& payload) {
    if (!enabled()) return;
    static std::atomic<int> counter{0};
    std::string k = key(op, inputs);
    fs::path path = path_for(k);
    fs::create_directories(path.parent_path());
    auto now = std::chrono::system_clock::now().time_since_epoch();
    nlohmann::json entry = {{"key", k},
                            {"op", op},
                            {"inputs", inputs},
                            {"engine", kEngineVersion},
                            {"created_at", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                            {"payload", payload},
                            {"payload_sha256", sha256_hex(payload.dump())}};
    std::ostringstream tmp_name;
    tmp_name << path.filename().string() << ".tmp." << ::getpid() << "." << counter++;
    fs::path tmp = path.parent_path() / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << entry.dump();
        if (!out) fail(ErrorKind::Io, "cannot write cache entry " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace selsym::store
