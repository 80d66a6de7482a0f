#include "selsym/store/serialize.hpp"

#include <sstream>

#include "selsym/errors.hpp"

namespace selsym::store {

namespace {

json opt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::string m_string(const std::vector<i64>& primes) { return primes.empty() ? "1" : join(primes, '*'); }

}  // namespace

std::string join(const std::vector<i64>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<i64> parse_int_list(const std::string& s, char sep) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            fail(ErrorKind::Config, "not an integer: '" + item + "'");
        }
    }
    return out;
}

json curve_key(const Curve& e) {
    json a = json::array();
    for (const auto& c : e.a) a.push_back(c.get_str());
    json j = {{"a", a}, {"conductor", e.conductor ? json(*e.conductor) : json(nullptr)}};
    if (e.is_twist()) j["twist"] = {{"base", curve_key(*e.twist_base)}, {"d", e.twist_d}};
    return j;
}

json to_json(const DeltaRecord& r) {
    return {{"curve", r.curve},      {"p", r.p},           {"N", r.N},          {"primes", r.primes},
            {"value", r.value.get_str()}, {"p_integral", r.p_integral}, {"residue", r.residue}, {"ord", opt(r.ord)}};
}

DeltaRecord delta_from_json(const json& j) {
    DeltaRecord r;
    r.curve = j.at("curve");
    r.p = j.at("p");
    r.N = j.at("N");
    r.primes = j.at("primes").get<std::vector<i64>>();
    r.value = mpq_class(j.at("value").get<std::string>());
    r.value.canonicalize();
    r.p_integral = j.at("p_integral");
    r.residue = j.at("residue");
    if (!j.at("ord").is_null()) r.ord = j.at("ord").get<int>();
    return r;
}

json to_json(const FittingRecord& r) {
    return {{"primes", r.primes},
            {"multi_index", r.multi_index},
            {"value", r.value.get_str()},
            {"c", r.c},
            {"residue", r.residue ? json(*r.residue) : json(nullptr)}};
}

FittingRecord fitting_from_json(const json& j) {
    FittingRecord r;
    r.primes = j.at("primes").get<std::vector<i64>>();
    r.multi_index = j.at("multi_index").get<std::vector<int>>();
    r.value = mpq_class(j.at("value").get<std::string>());
    r.value.canonicalize();
    r.c = j.at("c");
    if (!j.at("residue").is_null()) r.residue = j.at("residue").get<i64>();
    return r;
}

json to_json(const EigenSymbolData& d) {
    return {{"level", d.level},   {"sign", static_cast<int>(d.sign)}, {"numer", d.numer},
            {"denom", d.denom},   {"period", d.period},               {"residual", d.residual},
            {"hecke_primes", d.hecke_primes}};
}

EigenSymbolData eigen_from_json(const json& j) {
    EigenSymbolData d;
    d.level = j.at("level");
    d.sign = j.at("sign").get<int>() > 0 ? Sign::Plus : Sign::Minus;
    d.numer = j.at("numer").get<std::vector<i64>>();
    d.denom = j.at("denom");
    d.period = j.at("period");
    d.residual = j.at("residual");
    d.hecke_primes = j.at("hecke_primes").get<std::vector<i64>>();
    return d;
}

json to_json(const LambdaEstimate& l) {
    json layers = json::array();
    for (const auto& v : l.per_layer) layers.push_back(opt(v));
    return {{"lambda", opt(l.lambda)}, {"mu_zero_witness", l.mu_zero_witness}, {"stabilized", l.stabilized}, {"per_layer", layers}};
}

json to_json(const SMapMatrix& s) {
    json pts = json::array();
    for (const auto& pt : s.points) pts.push_back(json::array({pt.x.get_str(), pt.y.get_str()}));
    return {{"p", s.p}, {"N", s.N}, {"primes", s.primes}, {"points", pts}, {"entries", s.entries},
            {"group_orders", s.group_orders}, {"rank", s.rank}};
}

json to_json(const StructureCertificate& c) {
    json claims = json::array();
    for (const auto& cl : c.claims)
        claims.push_back({{"statement", cl.statement}, {"rule", cl.rule}, {"inputs", cl.inputs}, {"verdict", to_string(cl.verdict)}});
    return {{"curve", c.curve},
            {"p", c.p},
            {"N", c.N},
            {"assumptions", c.assumptions},
            {"claims", claims},
            {"dim_lower", opt(c.dim_lower)},
            {"dim_upper", opt(c.dim_upper)},
            {"dim", opt(c.dim())},
            {"rank_lower", opt(c.rank_lower)},
            {"rank_upper", opt(c.rank_upper)},
            {"main_conjecture", c.main_conjecture},
            {"sha", c.sha ? json(*c.sha) : json(nullptr)},
            {"contradiction", c.contradiction}};
}

json to_json(const StickelbergerRecord& r) {
    return {{"disc", r.disc},   {"primes", r.primes}, {"p", r.p}, {"N", r.N}, {"value", r.value.get_str()},
            {"residue", r.residue ? json(*r.residue) : json(nullptr)}};
}

StickelbergerRecord stickelberger_from_json(const json& j) {
    StickelbergerRecord r;
    r.disc = j.at("disc");
    r.primes = j.at("primes").get<std::vector<i64>>();
    r.p = j.at("p");
    r.N = j.at("N");
    r.value = mpq_class(j.at("value").get<std::string>());
    r.value.canonicalize();
    if (!j.at("residue").is_null()) r.residue = j.at("residue").get<i64>();
    return r;
}

json to_json(const AnalogueReport& r) {
    json minimal = json::array();
    for (const auto& m : r.minimal) {
        json row = to_json(m);
        row["epsilon"] = m.epsilon();
        row["match"] = m.epsilon() == r.dim;
        minimal.push_back(row);
    }
    return {{"field", r.field.name()},
            {"disc", r.field.disc},
            {"p", r.p},
            {"N", r.N},
            {"class_group", r.class_group.factors},
            {"class_number", r.class_group.class_number()},
            {"dim", r.dim},
            {"scanned_primes", r.scanned_primes},
            {"minimal", minimal},
            {"counterexample", r.counterexample}};
}

json to_json(const InvariantFactors& f) {
    return {{"p", f.p}, {"N", f.N}, {"exponents", f.exponents}, {"order_log", f.order_log()}, {"structure", f.describe()}};
}

std::string csv_header_delta() { return "curve,p,N,m,epsilon,value,residue,ord,minimal\n"; }

std::string csv_row(const DeltaRecord& r, bool minimal) {
    std::ostringstream os;
    os << '"' << r.curve << '"' << ',' << r.p << ',' << r.N << ',' << m_string(r.primes) << ',' << r.epsilon() << ','
       << r.value.get_str() << ',' << (r.p_integral ? std::to_string(r.residue) : "") << ','
       << (r.ord ? std::to_string(*r.ord) : "") << ',' << (minimal ? "yes" : "no") << '\n';
    return os.str();
}

std::string csv_header_classify() { return "ell,class,n_ell,count,group\n"; }

std::string csv_row(const PrimeClassRecord& r) {
    std::ostringstream os;
    os << r.ell << ',' << to_string(r.cls) << ',' << r.n_ell << ',' << r.count << ',';
    if (r.count) os << "Z/" << r.group.n1 << " x Z/" << r.group.n2;
    os << '\n';
    return os.str();
}

std::string csv_header_stickelberger() { return "disc,p,N,m,epsilon,value,residue\n"; }

std::string csv_row(const StickelbergerRecord& r) {
    std::ostringstream os;
    os << r.disc << ',' << r.p << ',' << r.N << ',' << m_string(r.primes) << ',' << r.epsilon() << ',' << r.value.get_str() << ','
       << (r.residue ? std::to_string(*r.residue) : "") << '\n';
    return os.str();
}

}  // namespace selsym::store
