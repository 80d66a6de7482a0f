#include "selsym/store/session.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "selsym/errors.hpp"
#include "selsym/store/serialize.hpp"

namespace selsym::store {

namespace {

i64 product(const std::vector<i64>& v) {
    i64 m = 1;
    for (i64 x : v) m *= x;
    return m;
}

std::vector<i64> sorted(std::vector<i64> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        switch (err->kind()) {
            case ErrorKind::Config:
            case ErrorKind::NotInPN:
            case ErrorKind::HypothesisFailed:
            case ErrorKind::BadReduction: return kConfigError;
            case ErrorKind::BudgetExceeded: return kBudgetExceeded;
            case ErrorKind::Io: return kIoError;
            default: return kInconsistent;
        }
    }
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kConfigError;
    if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kIoError;
    return kInconsistent;
}

Session::Session(Config cfg, std::ostream& log) : cfg_(std::move(cfg)), log_(log) {
    cfg_.validate();
    curve_ = parse_curve(cfg_.curve);
    if (!cfg_.cache_dir.empty()) cache_ = Cache(cfg_.cache_dir);
}

Session::~Session() = default;

const SymbolSource& Session::symbols() {
    if (symbols_) return *symbols_;
    SymbolOptions o;
    o.max_direct_level = cfg_.level_cap;
    o.eigen.tolerance = cfg_.tol;
    o.provider = [this](const Curve& c, Sign s, const EigenOptions& eo) {
        nlohmann::json in = {{"curve", curve_key(c)}, {"sign", static_cast<int>(s)}, {"max_hecke_primes", eo.max_hecke_primes},
                             {"scale_bound", eo.scale_bound}, {"tolerance", eo.tolerance}};
        if (auto hit = cache_.get("eigensymbol", in)) {
            log_ << "eigensymbol level " << *c.conductor << ": cache hit\n";
            return eigen_from_json(*hit);
        }
        auto t0 = std::chrono::steady_clock::now();
        auto data = compute_eigensymbol(c, s, eo);
        log_ << "eigensymbol level " << data.level << ": built in "
             << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        cache_.put("eigensymbol", in, to_json(data));
        return data;
    };
    symbols_ = make_symbol_source(curve_, o);
    return *symbols_;
}

DeltaRecord Session::delta_record(const std::vector<i64>& primes_in, int N) {
    auto primes = sorted(primes_in);
    nlohmann::json in = {{"curve", curve_key(curve_)}, {"p", cfg_.p}, {"N", N}, {"primes", primes}, {"twist", "restricted"}};
    if (auto hit = cache_.get("delta", in)) {
        log_ << "delta " << (primes.empty() ? "1" : join(primes, '*')) << ": cache hit\n";
        auto r = delta_from_json(*hit);
        r.curve = curve_.label;
        return r;
    }
    auto r = delta_direct(symbols(), primes, cfg_.p, N, cfg_.threads);
    r.curve = curve_.label;
    log_ << "delta " << (primes.empty() ? "1" : join(primes, '*')) << ": " << r.seconds << " s\n";
    cache_.put("delta", in, to_json(r));
    return r;
}

FittingRecord Session::fitting(const std::vector<i64>& primes, const std::vector<int>& idx) {
    nlohmann::json in = {{"curve", curve_key(curve_)}, {"p", cfg_.p}, {"primes", primes}, {"index", idx}, {"twist", "restricted"}};
    if (auto hit = cache_.get("fitting", in)) return fitting_from_json(*hit);
    auto r = fitting_record(symbols(), cfg_.p, primes, idx);
    cache_.put("fitting", in, to_json(r));
    return r;
}

MinimalityCertificate Session::minimality(const std::vector<i64>& primes_in) {
    auto primes = sorted(primes_in);
    MinimalityCertificate c;
    c.delta = delta_record(primes, cfg_.N);
    std::size_t r = primes.size();
    for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << r); ++mask) {
        std::vector<i64> sub;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) sub.push_back(primes[i]);
        c.divisors.push_back(delta_record(sub, cfg_.N));
    }
    if (r >= 1) c.admissible = is_admissible(cfg_.p, primes);
    return c;
}

std::string Session::classify() {
    std::string out = csv_header_classify();
    for (const auto& r : classify_range(curve_, cfg_.p, cfg_.N, cfg_.bound)) out += csv_row(r);
    return out;
}

std::string Session::delta(const std::vector<std::vector<i64>>& products) {
    std::string out = csv_header_delta();
    for (const auto& m : products) {
        auto r = delta_record(m, cfg_.N);
        out += csv_row(r, r.nonzero() && minimality(m).minimal());
    }
    return out;
}

std::string Session::search() {
    nlohmann::json in = {{"curve", curve_key(curve_)}, {"p", cfg_.p},  {"N", cfg_.N},
                         {"bound", cfg_.bound},        {"eps_bound", cfg_.eps_bound}, {"twist", "restricted"}};
    if (cfg_.root_number) in["root_number"] = *cfg_.root_number;
    nlohmann::json payload;
    if (auto hit = cache_.get("search", in)) {
        log_ << "search: cache hit\n";
        payload = *hit;
    } else {
        SearchOptions opts;
        opts.prime_bound = cfg_.bound;
        opts.eps_bound = cfg_.eps_bound;
        opts.budget_seconds = cfg_.budget_seconds;
        opts.root_number = cfg_.root_number;
        auto res = delta_minimal_search(curve_, symbols(), cfg_.p, cfg_.N, opts);
        payload["ledger"] = nlohmann::json::array();
        for (auto& r : res.ledger) {
            r.curve = curve_.label;
            payload["ledger"].push_back(to_json(r));
        }
        payload["minimal"] = nlohmann::json::array();
        for (const auto& c : res.minimal) payload["minimal"].push_back(c.delta.primes);
        payload["budget_exceeded"] = res.budget_exceeded;
        if (!res.budget_exceeded) cache_.put("search", in, payload);
    }
    budget_exceeded_ = payload["budget_exceeded"].get<bool>();
    std::vector<DeltaRecord> rows;
    for (const auto& j : payload["ledger"]) rows.push_back(delta_from_json(j));
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::pair(x.epsilon(), product(x.primes)) < std::pair(y.epsilon(), product(y.primes));
    });
    auto minimal = payload["minimal"].get<std::vector<std::vector<i64>>>();
    std::string out = csv_header_delta();
    for (const auto& r : rows) out += csv_row(r, std::find(minimal.begin(), minimal.end(), r.primes) != minimal.end());
    return out;
}

std::string Session::theta(const std::vector<i64>& primes, int order) {
    std::ostringstream os;
    os << "m,index,value,c,residue\n";
    std::vector<int> idx(primes.size(), 0);
    for (;;) {
        auto f = fitting(primes, idx);
        std::vector<i64> idx64(idx.begin(), idx.end());
        os << join(primes, '*') << ',' << '"' << join(idx64, ',') << '"' << ',' << f.value.get_str() << ',' << f.c << ','
           << (f.residue ? std::to_string(*f.residue) : "") << '\n';
        std::size_t k = 0;
        while (k < idx.size() && idx[k] == order) idx[k++] = 0;
        if (k == idx.size()) break;
        ++idx[k];
    }
    return os.str();
}

std::string Session::lambda(int max_layer, int precision) {
    nlohmann::json in = {{"curve", curve_key(curve_)}, {"p", cfg_.p}, {"max_layer", max_layer}, {"precision", precision}};
    nlohmann::json payload;
    if (auto hit = cache_.get("lambda", in)) {
        payload = *hit;
    } else {
        auto alpha = stabilize(cfg_.p, a_ell(curve_, cfg_.p), precision);
        payload = to_json(lambda_mu_estimate(symbols(), alpha, max_layer));
        cache_.put("lambda", in, payload);
    }
    return payload.dump(2) + "\n";
}

std::string Session::smap(const std::vector<i64>& primes, const std::vector<PointQ>& points) {
    return to_json(s_map(curve_, points, primes, cfg_.p, cfg_.N)).dump(2) + "\n";
}

Evidence Session::evidence(const nlohmann::json& b) {
    if (b.contains("curve") && parse_curve(b["curve"]).a != curve_.a) fail(ErrorKind::Config, "bundle curve differs from --curve");
    Evidence ev;
    ev.curve = curve_.label;
    ev.p = cfg_.p;
    ev.N = cfg_.N;
    i64 ap = a_ell(curve_, cfg_.p);
    ev.hypotheses.ordinary_non_anomalous = mod(ap, cfg_.p) != 0 && mod(ap, cfg_.p) != 1;
    auto flag = [&](const char* name) {
        if (b.contains("hypotheses") && b["hypotheses"].contains(name)) return b["hypotheses"][name].get<bool>();
        return cfg_.assert_hypotheses;
    };
    ev.hypotheses.tamagawa_prime_to_p = flag("tamagawa_prime_to_p");
    ev.hypotheses.surjective = flag("surjective");
    ev.hypotheses.mu_zero = flag("mu_zero");
    ev.hypotheses.asserted = true;

    if (b.contains("root_number"))
        ev.root_number = b["root_number"].get<int>();
    else if (cfg_.root_number)
        ev.root_number = cfg_.root_number;
    else if (curve_.is_twist() && curve_.twist_base->conductor == 11)
        ev.root_number = x0_11_twist_root_number(curve_.twist_d);

    if (b.contains("lambda_prime"))
        ev.lambda_prime = b["lambda_prime"].get<int>();
    else if (cfg_.lambda_prime)
        ev.lambda_prime = cfg_.lambda_prime;
    else if (b.contains("lambda")) {
        auto est = nlohmann::json::parse(lambda(b["lambda"].value("max_layer", 3), b["lambda"].value("precision", 4)));
        if (!est["lambda"].is_null()) ev.lambda_prime = est["lambda"].get<int>();
        ev.lambda_computed = est["stabilized"].get<bool>();
        if (est["mu_zero_witness"].get<bool>()) ev.hypotheses.mu_zero = true;
    }

    if (b.contains("l_ratio")) {
        if (b["l_ratio"].is_boolean()) {
            if (b["l_ratio"].get<bool>()) ev.l_ratio = symbols().at(0, 1);
        } else {
            mpq_class q(b["l_ratio"].get<std::string>());
            q.canonicalize();
            ev.l_ratio = q;
        }
    }
    ev.sha_order_from_main_conjecture = b.value("sha_order_from_main_conjecture", false);

    for (const auto& m : b.value("minimal", nlohmann::json::array())) {
        auto mc = minimality(m.get<std::vector<i64>>());
        ev.deltas.push_back(mc.delta);
        ev.deltas.insert(ev.deltas.end(), mc.divisors.begin(), mc.divisors.end());
        ev.minimal.push_back(std::move(mc));
    }
    for (const auto& d : b.value("deltas", nlohmann::json::array()))
        ev.deltas.push_back(delta_record(d.at("m").get<std::vector<i64>>(), d.value("N", cfg_.N)));
    for (const auto& f : b.value("fitting", nlohmann::json::array()))
        ev.fitting.push_back(fitting(f.at("m").get<std::vector<i64>>(), f.at("index").get<std::vector<int>>()));
    for (const auto& s : b.value("smaps", nlohmann::json::array())) {
        std::vector<std::string> specs;
        for (const auto& pt : s.at("points")) specs.push_back(pt.at(0).get<std::string>() + "," + pt.at(1).get<std::string>());
        ev.smaps.push_back(s_map(curve_, parse_points(specs), s.at("m").get<std::vector<i64>>(), cfg_.p, cfg_.N));
    }
    return ev;
}

std::string Session::certify(const nlohmann::json& bundle, bool text) {
    auto cert = selsym::certify(evidence(bundle));
    contradiction_ = cert.contradiction;
    return text ? cert.report() : to_json(cert).dump(2) + "\n";
}

std::string Session::stickelberger(i64 field_d, const std::vector<std::vector<i64>>& products, const AnalogueOptions& opts) {
    auto k = imaginary_quadratic(field_d);
    if (!products.empty()) {
        std::string out = csv_header_stickelberger();
        for (const auto& m : products) {
            nlohmann::json in = {{"disc", k.disc}, {"p", cfg_.p}, {"N", cfg_.N}, {"primes", m}};
            StickelbergerRecord r;
            if (auto hit = cache_.get("stickelberger", in)) {
                r = stickelberger_from_json(*hit);
            } else {
                r = stickelberger_delta(k, m, cfg_.p, cfg_.N);
                cache_.put("stickelberger", in, to_json(r));
            }
            out += csv_row(r);
        }
        return out;
    }
    nlohmann::json in = {{"disc", k.disc},          {"p", cfg_.p}, {"N", cfg_.N}, {"prime_bound", opts.prime_bound},
                         {"eps_bound", opts.eps_bound}, {"product_bound", opts.product_bound}};
    if (auto hit = cache_.get("analogue", in)) return hit->dump(2) + "\n";
    auto payload = to_json(analogue_check(k, cfg_.p, cfg_.N, opts));
    cache_.put("analogue", in, payload);
    return payload.dump(2) + "\n";
}

std::string Session::snf(const std::vector<std::vector<i64>>& matrix) {
    return to_json(smith_cokernel(matrix, cfg_.p, cfg_.N)).dump(2) + "\n";
}

std::vector<PointQ> parse_points(const std::vector<std::string>& specs) {
    std::vector<PointQ> out;
    for (const auto& s : specs) {
        auto comma = s.find(',');
        if (comma == std::string::npos) fail(ErrorKind::Config, "point must be 'x,y': " + s);
        PointQ pt;
        if (pt.x.set_str(s.substr(0, comma), 10) != 0 || pt.y.set_str(s.substr(comma + 1), 10) != 0)
            fail(ErrorKind::Config, "bad rational in point " + s);
        pt.x.canonicalize();
        pt.y.canonicalize();
        out.push_back(pt);
    }
    return out;
}

std::vector<std::vector<i64>> parse_matrix(const std::string& spec) {
    std::vector<std::vector<i64>> rows;
    std::stringstream ss(spec);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_int_list(row));
    for (const auto& r : rows)
        if (r.size() != rows.size()) fail(ErrorKind::Config, "matrix must be square");
    return rows;
}

}  // namespace selsym::store
