#include "tdf/serialize.hpp"

namespace tdf::serialize {

ordered_json enclosure(const rigor::Enclosure& e, int digits) {
  auto [dec, err] = e.dec_err(digits);
  return {{"dec", dec}, {"err", err}};
}

ordered_json closure_result(const closure::ClosureResult& c, bool certified) {
  ordered_json iv = ordered_json::array();
  for (const auto& i : c.intervals) iv.push_back({{"lo", enclosure(i.lo)}, {"hi", enclosure(i.hi)}});
  return {{"count", c.count},
          {"certified", certified},
          {"intervals", iv},
          {"j0", c.j.j0},
          {"j_plus", c.j.j_plus},
          {"precision_bits", c.precision_used},
          {"truncation_norm", c.truncation_used},
          {"base_interval", {{"c", enclosure(c.c)}, {"d", enclosure(c.d)}}}};
}

ordered_json bound(const mpz_class& value, const std::string& kind, ordered_json parameters, bool certified) {
  return {{"bound", value.get_str()}, {"kind", kind}, {"parameters", std::move(parameters)}, {"certified", certified}};
}

ordered_json mighty_certificate(const mighty::MightyCertificate& c) {
  return {{"d", c.d},
          {"r", rigor::rational_to_string(c.r)},
          {"lhs", enclosure(c.lhs)},
          {"rhs", enclosure(c.rhs)},
          {"verdict", c.verdict},
          {"cutoff", c.cutoff},
          {"tail_log", enclosure(c.tail_log)},
          {"unresolved_primes", c.unresolved_primes},
          {"precision_bits", c.precision}};
}

ordered_json technical_sequence(const mighty::TechnicalSequence& t) {
  ordered_json conds = ordered_json::array();
  for (const auto& c : t.conditions)
    conds.push_back({{"condition", c.name},
                     {"i", c.i},
                     {"j", c.j},
                     {"lhs", enclosure(c.lhs)},
                     {"rhs", enclosure(c.rhs)},
                     {"holds", c.holds}});
  ordered_json sets = ordered_json::array();
  for (const auto& S : t.S) sets.push_back(S);
  return {{"r", rigor::rational_to_string(t.r)},
          {"s", t.s},
          {"M", t.M},
          {"p", t.p},
          {"S", sets},
          {"X", t.X},
          {"X_enumerated", t.X_enumerated},
          {"conditions", conds}};
}

ordered_json polynomial(const polyfield::PolyZ& f) {
  ordered_json c = ordered_json::array();
  for (const auto& a : f.coeffs()) c.push_back(a.get_str());
  return {{"text", f.to_string()}, {"coefficients_low_first", c}};
}

ordered_json field_construction(const construct::FieldConstruction& f) {
  ordered_json ev = ordered_json::array();
  for (const auto& e : f.evidence) {
    ordered_json deg = ordered_json::object();
    for (auto [d, c] : e.degrees) deg[std::to_string(d)] = c;
    ev.push_back({{"p", e.p},
                  {"role", e.role == 'S' ? "split" : "inert"},
                  {"factor_degrees", deg},
                  {"matches", e.matches},
                  {"disc_coprime", e.disc_coprime}});
  }
  return {{"s", f.s},
          {"S", f.S},
          {"T", f.T},
          {"q", f.q},
          {"polynomial", polynomial(f.f)},
          {"discriminant", f.disc.get_str()},
          {"eisenstein", f.eisenstein},
          {"evidence", ev}};
}

ordered_json realization(const construct::Realization& r) {
  ordered_json certs = ordered_json::array();
  for (const auto& c : r.certificates) certs.push_back(mighty_certificate(c));
  ordered_json gaps = ordered_json::array();
  for (const auto& g : r.gaps)
    gaps.push_back({{"i", g.i},
                    {"j", g.j},
                    {"top_j", enclosure(g.top_j)},
                    {"bottom_i", enclosure(g.bottom_i)},
                    {"disjoint", g.disjoint}});
  return {{"sequence", technical_sequence(r.sequence)},
          {"field", field_construction(r.field)},
          {"certificates", certs},
          {"gaps", gaps},
          {"lower_bound", r.lower_bound},
          {"certified", r.certified}};
}

ordered_json verify_report(const oracle::VerifyReport& v) {
  return {{"samples", v.samples},
          {"hits", v.hits},
          {"outside", v.outside},
          {"classes", v.classes},
          {"class_mismatch", v.class_mismatch},
          {"contained", v.contained},
          {"all_hit", v.all_hit},
          {"classes_match", v.classes_match},
          {"passed", v.passed()},
          {"witnesses", v.witnesses}};
}

}  // namespace tdf::serialize
