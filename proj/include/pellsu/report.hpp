#pragma once

// JSON rendering of every result type, schema "pellsu/1". Certified reals
// become {decimal_midpoint, decimal_radius, bits}; big integers are strings.

#include <json.hpp>

#include <string>

#include "pellsu/cfrac.hpp"
#include "pellsu/numkernel.hpp"
#include "pellsu/oracle.hpp"
#include "pellsu/pell.hpp"
#include "pellsu/reduction.hpp"
#include "pellsu/sunit.hpp"
#include "pellsu/theorem1.hpp"
#include "pellsu/theorem2.hpp"

namespace pellsu::report {

inline constexpr const char* kSchema = "pellsu/1";
using Json = nlohmann::ordered_json;

// Significant digits of decimal_midpoint.
inline constexpr int kMidpointDigits = 20;

Json to_json(const CertifiedReal& x);
Json to_json(const BigInt& n);
Json to_json(const sunit::SUnitDecomposition& dec, const sunit::PrimeSet& primes);
Json to_json(const pell::PellContext& ctx);
Json to_json(const cfrac::CFExpansion& cf);
Json to_json(const cfrac::AofM& a);
Json to_json(const reduction::ReductionOutcome& r);
Json to_json(const theorem1::ConstantsLedger& ledger);
Json to_json(const theorem1::AuditRecord& audit);
Json to_json(const oracle::ScanResult& res, const sunit::PrimeSet& primes);
Json to_json(const theorem2::Report& rep);

// {"schema": "pellsu/1", "command": ..., ["generated_at": ...], "result": ...}
Json envelope(const std::string& command, Json result, bool timestamps);

}  // namespace pellsu::report
