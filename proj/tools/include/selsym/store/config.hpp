#pragma once

#include <optional>
#include <string>

#include "selsym/curve.hpp"

namespace selsym::store {

struct Config {
    std::string curve = "11a1^13";
    i64 p = 3;
    int N = 1;
    i64 bound = 1000;
    int eps_bound = 3;
    i64 level_cap = 40000;
    double tol = 1e-6;
    std::string cache_dir;  // empty disables the cache
    bool assert_hypotheses = false;
    std::optional<int> root_number;
    std::optional<int> lambda_prime;
    unsigned threads = 0;
    double budget_seconds = 600;

    void validate() const;
};

// "11a1", "11a1^d", "563a1", "18097a1", or "[a1,a2,a3,a4,a6]/conductor".
Curve parse_curve(const std::string& spec);

}  // namespace selsym::store
