#include "selsym/store/config.hpp"

#include <regex>

#include "selsym/arith.hpp"
#include "selsym/errors.hpp"

namespace selsym::store {

void Config::validate() const {
    if (p < 3 || !is_prime(static_cast<u64>(p))) fail(ErrorKind::Config, "p must be an odd prime");
    if (N < 1) fail(ErrorKind::Config, "N must be at least 1");
    if (bound < 0) fail(ErrorKind::Config, "bound must be non-negative");
    if (eps_bound < 0) fail(ErrorKind::Config, "eps-bound must be non-negative");
    if (!(tol > 0)) fail(ErrorKind::Config, "tolerance must be positive");
    if (root_number && *root_number != 1 && *root_number != -1) fail(ErrorKind::Config, "root number must be +1 or -1");
    if (budget_seconds <= 0) fail(ErrorKind::Config, "budget must be positive");
}

Curve parse_curve(const std::string& spec) {
    static const std::regex twist(R"(11a1\^(-?\d+))");
    static const std::regex coeffs(R"(\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*/\s*(\d+))");
    std::smatch m;
    if (spec == "11a1") return curves::x0_11();
    if (spec == "563a1") return curves::c563a1();
    if (spec == "18097a1") return curves::c18097();
    if (std::regex_match(spec, m, twist)) {
        i64 d = std::stoll(m[1]);
        if (!is_fundamental_discriminant(d) || d == 1) fail(ErrorKind::Config, "twist needs a fundamental discriminant");
        return curves::x0_11_twist(d);
    }
    if (std::regex_match(spec, m, coeffs)) {
        Curve e = make_curve(std::stol(m[1]), std::stol(m[2]), std::stol(m[3]), std::stol(m[4]), std::stol(m[5]), spec,
                             std::stoll(m[6]));
        if (e.discriminant() == 0) fail(ErrorKind::Config, "singular curve");
        return e;
    }
    fail(ErrorKind::Config, "unknown curve '" + spec + "'");
}

}  // namespace selsym::store
