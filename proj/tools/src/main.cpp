#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "selsym/errors.hpp"
#include "selsym/store/serialize.hpp"
#include "selsym/store/session.hpp"

using namespace selsym;
using namespace selsym::store;

namespace {

std::vector<std::vector<i64>> products(const std::vector<std::string>& specs) {
    std::vector<std::vector<i64>> out;
    for (const auto& s : specs) out.push_back(parse_int_list(s == "1" ? "" : s, s.find('*') != std::string::npos ? '*' : ','));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selmer structure from modular symbols"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    std::optional<int> root_number, lambda_prime;
    app.add_option("--curve", cfg.curve, "11a1, 11a1^d, 563a1, 18097a1 or [a1,a2,a3,a4,a6]/conductor")->capture_default_str();
    app.add_option("--p", cfg.p, "odd prime")->capture_default_str();
    app.add_option("--N", cfg.N, "work modulo p^N")->capture_default_str();
    app.add_option("--bound", cfg.bound, "prime bound")->capture_default_str();
    app.add_option("--eps-bound", cfg.eps_bound, "maximal number of prime factors in a search")->capture_default_str();
    app.add_option("--level-cap", cfg.level_cap, "largest level for direct eigensymbols")->capture_default_str();
    app.add_option("--tol", cfg.tol, "numeric tolerance for period normalization")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "content-addressed cache directory");
    app.add_flag("--assert-hypotheses", cfg.assert_hypotheses, "assume Tamagawa, surjectivity and mu = 0");
    app.add_option("--root-number", root_number, "override the root number");
    app.add_option("--lambda", lambda_prime, "override the analytic lambda invariant");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.add_option("--budget", cfg.budget_seconds, "search budget in seconds")->capture_default_str();

    auto* classify = app.add_subcommand("classify", "classify primes up to --bound");
    std::vector<std::string> ms;
    auto* delta = app.add_subcommand("delta", "delta~_m ledger rows");
    delta->add_option("m", ms, "squarefree products, e.g. 7*127 or 7,127")->required();
    auto* search = app.add_subcommand("search", "search for a delta-minimal m");
    auto* theta = app.add_subcommand("theta", "S-expansion coefficients of theta~_Q(m)");
    std::string theta_m;
    int order = 2;
    theta->add_option("m", theta_m, "prime factors, e.g. 19 or 7*127")->required();
    theta->add_option("--order", order, "largest exponent per variable")->capture_default_str();
    auto* lambda = app.add_subcommand("lambda", "analytic lambda estimate");
    int max_layer = 3, precision = 4;
    lambda->add_option("--max-layer", max_layer)->capture_default_str();
    lambda->add_option("--precision", precision)->capture_default_str();
    auto* smap = app.add_subcommand("smap", "images of points in E(F_l)/p^N");
    std::string smap_m;
    std::vector<std::string> points;
    smap->add_option("m", smap_m, "P1 primes, e.g. 7*31")->required();
    smap->add_option("--point", points, "x,y with rational coordinates")->required();
    auto* certify = app.add_subcommand("certify", "structure certificate from an evidence bundle");
    std::string bundle_path;
    bool text = false;
    certify->add_option("bundle", bundle_path, "evidence bundle (JSON)")->required()->check(CLI::ExistingFile);
    certify->add_flag("--text", text, "plain text report");
    auto* stick = app.add_subcommand("stickelberger", "Stickelberger deltas or the class group analogue check");
    i64 field = 23;
    AnalogueOptions aopts;
    std::vector<std::string> stick_ms;
    stick->add_option("--field", field, "d for Q(sqrt(-d))")->capture_default_str();
    stick->add_option("m", stick_ms, "products; omit for the analogue check");
    stick->add_option("--scan-bound", aopts.prime_bound)->capture_default_str();
    auto* snf = app.add_subcommand("snf", "cokernel of a relation matrix over Z/p^N");
    std::string matrix;
    snf->add_option("matrix", matrix, "rows separated by ';', entries by ','")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }
    cfg.root_number = root_number;
    cfg.lambda_prime = lambda_prime;

    try {
        nlohmann::json bundle;
        if (*certify) {
            std::ifstream in(bundle_path);
            bundle = nlohmann::json::parse(in);
            if (bundle.contains("curve") && app.get_option("--curve")->count() == 0) cfg.curve = bundle["curve"];
        }
        Session s(cfg, std::cerr);
        std::string out;
        if (*classify) out = s.classify();
        else if (*delta) out = s.delta(products(ms));
        else if (*search) out = s.search();
        else if (*theta) out = s.theta(products({theta_m})[0], order);
        else if (*lambda) out = s.lambda(max_layer, precision);
        else if (*smap) out = s.smap(products({smap_m})[0], parse_points(points));
        else if (*certify) out = s.certify(bundle, text);
        else if (*stick) out = s.stickelberger(field, products(stick_ms), aopts);
        else if (*snf) out = s.snf(parse_matrix(matrix));
        std::cout << out;
        if (s.cache().enabled()) std::cerr << "cache: " << s.cache().hits() << " hit(s), " << s.cache().misses() << " miss(es)\n";
        if (s.budget_exceeded()) return kBudgetExceeded;
        if (s.contradiction()) return kInconsistent;
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
