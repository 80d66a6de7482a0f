#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "selsym/modsym.hpp"
#include "selsym/primes.hpp"
#include "selsym/selmer.hpp"
#include "selsym/stickelberger.hpp"
#include "selsym/theta.hpp"

namespace selsym::store {

using nlohmann::json;

json curve_key(const Curve& e);

json to_json(const DeltaRecord& r);
DeltaRecord delta_from_json(const json& j);
json to_json(const FittingRecord& r);
FittingRecord fitting_from_json(const json& j);
json to_json(const EigenSymbolData& d);
EigenSymbolData eigen_from_json(const json& j);
json to_json(const LambdaEstimate& l);
json to_json(const SMapMatrix& s);
json to_json(const StructureCertificate& c);
json to_json(const StickelbergerRecord& r);
StickelbergerRecord stickelberger_from_json(const json& j);
json to_json(const AnalogueReport& r);
json to_json(const InvariantFactors& f);

std::string join(const std::vector<i64>& v, char sep);
std::vector<i64> parse_int_list(const std::string& s, char sep = ',');

// CSV ledgers. Values are quoted only when they contain a separator.
std::string csv_header_delta();
std::string csv_row(const DeltaRecord& r, bool minimal = false);
std::string csv_header_classify();
std::string csv_row(const PrimeClassRecord& r);
std::string csv_header_stickelberger();
std::string csv_row(const StickelbergerRecord& r);

}  // namespace selsym::store
