#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "selsym/selmer.hpp"
#include "selsym/stickelberger.hpp"
#include "selsym/store/cache.hpp"
#include "selsym/store/config.hpp"

namespace selsym::store {

enum ExitCode { kOk = 0, kConfigError = 2, kBudgetExceeded = 3, kInconsistent = 4, kIoError = 5 };
int exit_code_for(const std::exception& e);

// One CLI invocation: resolved curve, lazily built symbols, and the cache. Every command returns the
// bytes it writes to stdout; diagnostics (cache hits, timings) go to the log stream.
class Session {
public:
    Session(Config cfg, std::ostream& log);
    ~Session();

    const Config& config() const { return cfg_; }
    const Curve& curve() const { return curve_; }
    const SymbolSource& symbols();
    Cache& cache() { return cache_; }

    DeltaRecord delta_record(const std::vector<i64>& primes, int N);
    FittingRecord fitting(const std::vector<i64>& primes, const std::vector<int>& multi_index);
    MinimalityCertificate minimality(const std::vector<i64>& primes);
    Evidence evidence(const nlohmann::json& bundle);

    std::string classify();
    std::string delta(const std::vector<std::vector<i64>>& products);
    std::string search();
    std::string theta(const std::vector<i64>& primes, int order);
    std::string lambda(int max_layer, int precision);
    std::string smap(const std::vector<i64>& primes, const std::vector<PointQ>& points);
    std::string certify(const nlohmann::json& bundle, bool text);
    std::string stickelberger(i64 field_d, const std::vector<std::vector<i64>>& products, const AnalogueOptions& opts);
    std::string snf(const std::vector<std::vector<i64>>& matrix);

    bool budget_exceeded() const { return budget_exceeded_; }
    bool contradiction() const { return contradiction_; }

private:
    Config cfg_;
    std::ostream& log_;
    Curve curve_;
    Cache cache_;
    std::unique_ptr<SymbolSource> symbols_;
    bool budget_exceeded_ = false;
    bool contradiction_ = false;
};

std::vector<PointQ> parse_points(const std::vector<std::string>& specs);
std::vector<std::vector<i64>> parse_matrix(const std::string& spec);

}  // namespace selsym::store
