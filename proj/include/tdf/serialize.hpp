#pragma once

#include <json.hpp>

#include "tdf/bounds.hpp"
#include "tdf/closure.hpp"
#include "tdf/construct.hpp"
#include "tdf/mighty.hpp"
#include "tdf/oracle.hpp"
#include "tdf/rigor.hpp"

namespace tdf::serialize {

using nlohmann::ordered_json;

/// {"dec": midpoint, "err": radius bound}
ordered_json enclosure(const rigor::Enclosure& e, int digits = 20);
ordered_json closure_result(const closure::ClosureResult& c, bool certified = true);
ordered_json bound(const mpz_class& value, const std::string& kind, ordered_json parameters, bool certified);
ordered_json mighty_certificate(const mighty::MightyCertificate& c);
ordered_json technical_sequence(const mighty::TechnicalSequence& t);
ordered_json field_construction(const construct::FieldConstruction& f);
ordered_json realization(const construct::Realization& r);
ordered_json verify_report(const oracle::VerifyReport& v);
ordered_json polynomial(const polyfield::PolyZ& f);

}  // namespace tdf::serialize
