#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdf/bounds.hpp"
#include "tdf/characters.hpp"
#include "tdf/closure.hpp"
#include "tdf/construct.hpp"
#include "tdf/mighty.hpp"
#include "tdf/numberfield.hpp"
#include "tdf/oracle.hpp"
#include "tdf/primes.hpp"
#include "tdf/serialize.hpp"

using namespace tdf;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInput = 1, kAmbiguous = 2, kCapacity = 3, kCheckFailed = 4 };

struct Common {
  std::string field = "rational";
  std::string ramified;
  std::string chr = "principal:1";
  std::string r;
  int precision_max = rigor::kMaxPrecision;
  uint64_t horizon = 1'000'000;
  uint64_t truncation = 0;
  uint64_t max_truncation = 64'000'000;
  size_t max_intervals = 2'000'000;
  std::optional<uint64_t> tie_seed;
  std::string out;
  bool no_timestamp = false;
};

struct Args {
  std::string kind = "pi";
  uint64_t m = 1;
  std::string eps = "1";
  std::vector<uint64_t> d;
  int s = 0;
  int M = 0;
  std::vector<uint64_t> S, T;
  std::optional<uint64_t> q;
  size_t t_cap = 5000;
  uint64_t max_norm = 1000;
  std::optional<size_t> from, to;
  std::vector<uint64_t> moduli;
  std::string format;
  std::string csv;
  size_t limit = 1000;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

long parse_long(const std::string& s) {
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

numberfield::FieldSpec parse_field(const std::string& spec, const std::string& ramified) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw std::invalid_argument("empty field spec");
  const std::string& k = parts[0];
  if (k == "rational" || k == "Q") return numberfield::FieldSpec::rational();
  if (parts.size() != 2) throw std::invalid_argument("field spec needs the form kind:value, got " + spec);
  if (k == "quadratic") return numberfield::FieldSpec::quadratic(parse_long(parts[1]));
  if (k == "cyclotomic") return numberfield::FieldSpec::cyclotomic(static_cast<uint64_t>(parse_long(parts[1])));
  if (k == "poly") {
    std::vector<mpz_class> c;
    for (auto& t : split(parts[1], ',')) c.emplace_back(t);
    std::vector<numberfield::PrimeIdealClass> ram;
    for (auto& t : split(ramified, ',')) {
      auto f = split(t, ':');
      if (f.size() != 4) throw std::invalid_argument("ramified entries take the form p:e:f:g");
      ram.push_back({static_cast<uint64_t>(parse_long(f[0])), static_cast<int>(parse_long(f[1])),
                     static_cast<int>(parse_long(f[2])), static_cast<int>(parse_long(f[3]))});
    }
    return numberfield::FieldSpec::polynomial(polyfield::PolyZ(c), ram);
  }
  throw std::invalid_argument("unknown field kind " + k);
}

characters::DirichletCharacter parse_char(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "principal") {
    mpz_class m;
    if (m.set_str(parts[1], 10) != 0) throw std::invalid_argument("bad modulus " + parts[1]);
    return characters::principal_character(m);
  }
  if (parts.size() == 2 && parts[0] == "kronecker") return characters::kronecker_character(parse_long(parts[1]));
  if (parts.size() == 3 && parts[0] == "char") {
    auto all = characters::enumerate_characters(static_cast<uint64_t>(parse_long(parts[1])), false);
    long i = parse_long(parts[2]);
    if (i < 0 || static_cast<size_t>(i) >= all.size())
      throw std::invalid_argument("character index out of range; modulus has " + std::to_string(all.size()));
    return all[i];
  }
  throw std::invalid_argument("character spec must be principal:m, kronecker:D or char:m:k");
}

mpq_class parse_r(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("--r is required");
  return rigor::parse_rational(s);
}

closure::ClosureConfig closure_config(const Common& c) {
  closure::ClosureConfig cfg;
  cfg.horizon = c.horizon;
  cfg.truncation = c.truncation;
  cfg.max_truncation = c.max_truncation;
  cfg.max_intervals = c.max_intervals;
  cfg.precision.max = c.precision_max;
  cfg.tie_seed = c.tie_seed;
  return cfg;
}

std::string now_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const Common& c, const std::string& command, ordered_json body) {
  ordered_json doc;
  doc["command"] = command;
  if (!c.no_timestamp) doc["timestamp"] = now_utc();
  for (auto& [k, v] : body.items()) doc[k] = v;
  std::string text = doc.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
  }
}

ordered_json context(const numberfield::FieldSpec& K, const characters::DirichletCharacter& chi,
                     const mpq_class& r) {
  return {{"field", K.name()}, {"character", chi.label()}, {"r", rigor::rational_to_string(r)}};
}

// cached closure, keyed on the full configuration
std::optional<ordered_json> cache_lookup(const std::string& key) {
  const char* dir = std::getenv("TDF_CACHE_DIR");
  if (!dir) return std::nullopt;
  std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
  std::ifstream f(p);
  if (!f) return std::nullopt;
  try {
    return ordered_json::parse(f);
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store(const std::string& key, const ordered_json& j) {
  const char* dir = std::getenv("TDF_CACHE_DIR");
  if (!dir) return;
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / (key + ".json"));
  if (f) f << j.dump();
}

std::string cache_key(const Common& c, const std::string& rtext) {
  std::string raw = c.field + "|" + c.ramified + "|" + c.chr + "|" + rtext + "|" + std::to_string(c.horizon) + "|" +
                    std::to_string(c.truncation) + "|" + std::to_string(c.max_truncation) + "|" + std::to_string(c.max_intervals) + "|" +
                    std::to_string(c.precision_max) + "|" + (c.tie_seed ? std::to_string(*c.tie_seed) : "-");
  std::string key;
  for (char ch : raw) key.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  return key;
}

int cmd_closure(const Common& c, bool detailed) {
  auto K = parse_field(c.field, c.ramified);
  auto chi = parse_char(c.chr);
  auto r = parse_r(c.r);
  std::string key = cache_key(c, rigor::rational_to_string(r)) + (detailed ? "_d" : "");
  std::optional<ordered_json> body = cache_lookup(key);
  if (!body) {
    auto res = closure::compute_closure(K, chi, r, closure_config(c));
    ordered_json b = context(K, chi, r);
    ordered_json cr = serialize::closure_result(res);
    for (auto& [k, v] : cr.items()) b[k] = v;
    if (detailed) {
      b["j"] = {{"j0", res.j.j0},
                {"j_plus", res.j.j_plus},
                {"last_bad", res.j.last_bad},
                {"scanned_to", res.j.scanned_to},
                {"horizon_norm", res.j.horizon_norm},
                {"tail_criterion_holds", res.j.tail_criterion_holds},
                {"ratio_witness", res.j.ratio_witness},
                {"witness_pairs", res.j.witness_pairs}};
    }
    cache_store(key, b);
    body = b;
  }
  emit(c, detailed ? "closure" : "components", *body);
  return kOk;
}

int cmd_scan(const Common& c, const Args& a) {
  auto r = parse_r(c.r);
  auto cfg = closure_config(c);
  closure::ClosureEngine E(numberfield::FieldSpec::rational(), r, cfg);
  ordered_json rows = ordered_json::array();
  bool steps_ok = true;
  ordered_json body = {{"r", rigor::rational_to_string(r)}};
  if (!a.moduli.empty()) {
    for (uint64_t m : a.moduli) {
      auto res = E.compute_closure(characters::principal_character(m));
      rows.push_back({{"m", m}, {"algorithm_count", res.count}});
    }
    body["rows"] = rows;
    emit(c, "scan", body);
    return kOk;
  }
  auto fp = closure::formula_params(E);
  size_t from = a.from.value_or(fp.i0), to = a.to.value_or(fp.i0 + 5);
  if (from < fp.i0 && from <= to) throw std::invalid_argument("scan must start at i >= i0 = " + std::to_string(fp.i0));
  std::optional<uint64_t> prev;
  for (size_t i = from; i <= to; ++i) {
    mpz_class m = closure::m_i(fp.ell, i);
    uint64_t f = closure::formula_count(r, i, fp, cfg.precision);
    ordered_json row = {{"i", i}, {"m_i", m.get_str()}, {"formula_count", f}};
    auto res = E.compute_closure(characters::principal_character(m));
    row["algorithm_count"] = res.count;
    row["agree"] = res.count == f;
    if (res.count != f) steps_ok = false;
    if (prev) {
      long step = static_cast<long>(f) - static_cast<long>(*prev);
      row["step"] = step;
      if (step != 0 && step != 1) steps_ok = false;
    }
    prev = f;
    rows.push_back(row);
  }
  auto r0 = closure::check_r0(r, cfg.precision);
  body["j1"] = fp.j1;
  body["ell"] = fp.ell;
  body["i0"] = fp.i0;
  body["rows"] = rows;
  body["steps_ok"] = steps_ok;
  body["r0"] = {{"holds", r0.holds}, {"integral_bound_certifies", r0.integral_bound_certifies}};
  if (r0.holds && fp.j1 >= 1) {
    mpz_class full = 1;
    for (size_t k = 1; k <= fp.j1; ++k) full *= static_cast<unsigned long>(primes::nth_prime(k));
    mpz_class mj = fp.j1 >= fp.ell ? closure::m_i(fp.ell, fp.j1) : mpz_class(0);
    ordered_json w = ordered_json::object();
    w["count_1"] = {{"m", full.get_str()}, {"count", E.compute_closure(characters::principal_character(full)).count}};
    if (mj > 0)
      w["count_2"] = {{"m", mj.get_str()}, {"count", E.compute_closure(characters::principal_character(mj)).count}};
    body["witnesses"] = w;
  }
  emit(c, "scan", body);
  return steps_ok ? kOk : kCheckFailed;
}

int cmd_lower_bound(const Common& c, const Args& a) {
  auto r = parse_r(c.r);
  if (a.kind == "pi") {
    uint64_t e = bounds::lower_bound_pi_exponent(r, a.m);
    ordered_json par = {{"r", rigor::rational_to_string(r)}, {"m", a.m}, {"exponent", e}};
    emit(c, "lower-bound", serialize::bound(bounds::lower_bound_pi(r, a.m), "pi", par, true));
    return kOk;
  }
  if (a.kind == "partition") {
    auto K = parse_field(c.field, c.ramified);
    mpq_class eps = rigor::parse_rational(a.eps);
    bounds::HResult h;
    mpz_class b = bounds::partition_lower_bound(K, r, eps, &h);
    ordered_json par = {{"field", K.name()},   {"r", rigor::rational_to_string(r)},
                        {"eps", rigor::rational_to_string(eps)}, {"h", h.h},
                        {"h_formula", h.h_formula}, {"h_scan", h.h_scan},
                        {"eta", serialize::enclosure(h.eta)}};
    emit(c, "lower-bound", serialize::bound(b, "partition", par, h.certified));
    return kOk;
  }
  throw std::invalid_argument("--kind must be pi or partition");
}

int cmd_mighty(const Common& c, const Args& a) {
  auto r = parse_r(c.r);
  if (a.s) {
    if (a.M < 1) throw std::invalid_argument("--M must be at least 1");
    auto t = mighty::build_technical_sequence(r, a.s, a.M);
    emit(c, "mighty", {{"sequence", serialize::technical_sequence(t)}, {"certified", t.all_hold()}});
    return kOk;
  }
  if (a.d.empty()) throw std::invalid_argument("give --d norms or --s/--M for a sequence");
  auto K = parse_field(c.field, c.ramified);
  ordered_json certs = ordered_json::array();
  for (uint64_t d : a.d) certs.push_back(serialize::mighty_certificate(mighty::is_mighty(K, r, d)));
  emit(c, "mighty", {{"field", K.name()}, {"r", rigor::rational_to_string(r)}, {"certificates", certs}});
  return kOk;
}

int cmd_construct(const Common& c, const Args& a) {
  construct::ConstructConfig cc;
  cc.q = a.q;
  cc.t_cap = a.t_cap;
  auto fc = construct::construct_field(a.s, a.S, a.T, cc);
  bool ok = construct::verify(fc);
  ordered_json body = serialize::field_construction(fc);
  body["verified"] = ok;
  emit(c, "construct-field", body);
  return ok ? kOk : kCheckFailed;
}

int cmd_realize(const Common& c, const Args& a) {
  auto r = parse_r(c.r);
  construct::RealizeConfig rc;
  rc.construct.q = a.q;
  rc.construct.t_cap = a.t_cap;
  auto res = construct::realize_components(r, a.s, a.M, rc);
  emit(c, "realize", serialize::realization(res));
  return res.certified ? kOk : kAmbiguous;
}

int cmd_sample(const Common& c, const Args& a) {
  auto K = parse_field(c.field, c.ramified);
  auto chi = parse_char(c.chr);
  auto r = parse_r(c.r);
  auto s = oracle::sample_image(K, chi, r, a.max_norm);
  ordered_json body = context(K, chi, r);
  body["max_norm"] = a.max_norm;
  body["size"] = s.size();
  body["exact"] = s.exact;
  if (!s.complex) {
    double lo = s.samples.front().lo, hi = s.samples.front().hi;
    for (auto& x : s.samples) lo = std::min(lo, x.lo), hi = std::max(hi, x.hi);
    body["min"] = lo;
    body["max"] = hi;
  }
  if (s.size() <= a.limit) {
    ordered_json v = ordered_json::array();
    for (auto& x : s.samples) {
      ordered_json e = {{"n", x.n}, {"lo", x.lo}, {"hi", x.hi}};
      if (s.complex) e["im_lo"] = x.im_lo, e["im_hi"] = x.im_hi;
      v.push_back(e);
    }
    body["values"] = v;
  }
  if (!a.csv.empty()) {
    oracle::emit_figure(s, a.csv, oracle::FigureFormat::Csv);
    body["csv"] = a.csv;
  }
  emit(c, "sample", body);
  return kOk;
}

int cmd_figure(const Common& c, const Args& a) {
  auto K = parse_field(c.field, c.ramified);
  auto chi = parse_char(c.chr);
  auto r = parse_r(c.r);
  if (a.csv.empty()) throw std::invalid_argument("--path is required");
  std::string fmt = a.format;
  if (fmt.empty()) fmt = a.csv.size() >= 4 && a.csv.substr(a.csv.size() - 4) == ".svg" ? "svg" : "csv";
  if (fmt != "csv" && fmt != "svg") throw std::invalid_argument("--format must be csv or svg");
  auto s = oracle::sample_image(K, chi, r, a.max_norm);
  oracle::emit_figure(s, a.csv, fmt == "svg" ? oracle::FigureFormat::Svg : oracle::FigureFormat::Csv);
  ordered_json body = context(K, chi, r);
  body["points"] = s.size();
  body["path"] = a.csv;
  body["format"] = fmt;
  emit(c, "figure", body);
  return kOk;
}

int cmd_verify(const Common& c, const Args& a) {
  auto K = parse_field(c.field, c.ramified);
  auto chi = parse_char(c.chr);
  auto r = parse_r(c.r);
  auto res = closure::compute_closure(K, chi, r, closure_config(c));
  auto s = oracle::sample_image(K, chi, r, a.max_norm);
  auto rep = oracle::verify_against_closure(s, res);
  ordered_json body = context(K, chi, r);
  body["count"] = res.count;
  body["report"] = serialize::verify_report(rep);
  emit(c, "verify", body);
  return rep.passed() ? kOk : kCheckFailed;
}

// --config file.json: its keys become flags placed before the command line ones
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc), rest;
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) {
    rest.insert(rest.begin(), args[0]);
    return rest;
  }
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(f);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  std::vector<std::string> from_file;
  std::string command;
  for (auto& [k, v] : j.items()) {
    if (k == "command") {
      command = v.get<std::string>();
      continue;
    }
    std::string flag = "--";
    for (char ch : k) flag.push_back(ch == '_' ? '-' : ch);
    if (v.is_boolean()) {
      if (v.get<bool>()) from_file.push_back(flag);
    } else if (v.is_array()) {
      std::string joined;
      for (auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      from_file.push_back(flag + "=" + joined);
    } else {
      from_file.push_back(flag + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
    }
  }
  std::vector<std::string> out{args[0]};
  if (!rest.empty() && rest[0].rfind("-", 0) != 0) {
    out.push_back(rest[0]);
    rest.erase(rest.begin());
  } else if (!command.empty()) {
    out.push_back(command);
  }
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected components of divisor-function images over number fields"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common c;
  Args a;

  auto common = [&](CLI::App* s, bool field, bool chr, bool r) {
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    if (field) {
      s->add_option("--field", c.field, "rational | quadratic:D | cyclotomic:m | poly:c0,c1,...,1");
      s->add_option("--ramified", c.ramified, "declared splitting for poly fields, p:e:f:g,...");
    }
    if (chr) s->add_option("--char", c.chr, "principal:m | kronecker:D | char:m:k");
    if (r) s->add_option("--r", c.r, "real exponent r as a decimal or fraction")->required();
    s->add_option("--precision-max", c.precision_max, "largest working precision in bits");
    s->add_option("--horizon", c.horizon, "prime-ideal norm bound for the exact scan");
    s->add_option("--truncation", c.truncation, "Euler product truncation norm (0 = 4 x horizon)");
    s->add_option("--max-truncation", c.max_truncation, "escalation limit for the truncation norm");
    s->add_option("--max-intervals", c.max_intervals, "capacity limit for the interval union");
    s->add_option("--tie-seed", c.tie_seed, "permute equal-norm tie ranks");
    s->add_option("--out", c.out, "write JSON here instead of stdout");
    s->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp field");
  };

  auto* components = app.add_subcommand("components", "count connected components");
  common(components, true, true, true);
  auto* closure_cmd = app.add_subcommand("closure", "closure intervals with search details");
  common(closure_cmd, true, true, true);
  auto* scan = app.add_subcommand("scan", "closed formula against the algorithm over K = Q");
  common(scan, false, false, true);
  scan->add_option("--from", a.from, "first i (default i0)");
  scan->add_option("--to", a.to, "last i (default i0 + 5)");
  scan->add_option("--moduli", a.moduli, "principal moduli to count instead")->delimiter(',');
  auto* lower = app.add_subcommand("lower-bound", "certified lower bounds for the count");
  common(lower, true, false, true);
  lower->add_option("--kind", a.kind, "pi | partition");
  lower->add_option("--m", a.m, "character modulus for the pi bound");
  lower->add_option("--eps", a.eps, "epsilon for the partition bound");
  auto* mighty_cmd = app.add_subcommand("mighty", "mighty-norm certificates or the prime sequence");
  common(mighty_cmd, true, false, true);
  mighty_cmd->add_option("--d", a.d, "norms to test")->delimiter(',');
  mighty_cmd->add_option("--s", a.s, "degree, for the prime sequence");
  mighty_cmd->add_option("--M", a.M, "sequence length");
  auto* cf = app.add_subcommand("construct-field", "polynomial with prescribed splitting");
  common(cf, false, false, false);
  cf->add_option("--s", a.s, "degree")->required();
  cf->add_option("--S", a.S, "primes to split completely")->delimiter(',');
  cf->add_option("--T", a.T, "primes to stay inert")->delimiter(',');
  cf->add_option("--q", a.q, "Eisenstein prime");
  cf->add_option("--t-cap", a.t_cap, "largest accepted |T|");
  auto* realize = app.add_subcommand("realize", "field with at least M + 1 components");
  common(realize, false, false, true);
  realize->add_option("--s", a.s, "degree")->required();
  realize->add_option("--M", a.M, "number of mighty norms")->required();
  realize->add_option("--q", a.q, "Eisenstein prime");
  realize->add_option("--t-cap", a.t_cap, "largest accepted |T|");
  auto* sample = app.add_subcommand("sample", "evaluate sigma on all inputs up to a norm");
  common(sample, true, true, true);
  sample->add_option("--max-norm", a.max_norm, "largest input or ideal norm");
  sample->add_option("--csv", a.csv, "also write the samples as CSV");
  sample->add_option("--limit", a.limit, "list values only up to this many samples");
  auto* figure = app.add_subcommand("figure", "scatter data as CSV or SVG");
  common(figure, true, true, true);
  figure->add_option("--max-norm", a.max_norm, "largest input or ideal norm");
  figure->add_option("--path", a.csv, "output file")->required();
  figure->add_option("--format", a.format, "csv | svg (default from the extension)");
  auto* verify = app.add_subcommand("verify", "check samples against the computed closure");
  common(verify, true, true, true);
  verify->add_option("--max-norm", a.max_norm, "largest input or ideal norm");

  try {
    auto args = expand_config(argc, argv);
    std::vector<char*> ptrs;
    for (auto& s : args) ptrs.push_back(s.data());
    try {
      app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? kOk : kInput;
    }
    if (*components) return cmd_closure(c, false);
    if (*closure_cmd) return cmd_closure(c, true);
    if (*scan) return cmd_scan(c, a);
    if (*lower) return cmd_lower_bound(c, a);
    if (*mighty_cmd) return cmd_mighty(c, a);
    if (*cf) return cmd_construct(c, a);
    if (*realize) return cmd_realize(c, a);
    if (*sample) return cmd_sample(c, a);
    if (*figure) return cmd_figure(c, a);
    if (*verify) return cmd_verify(c, a);
    return kInput;
  } catch (const construct::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case construct::StageError::Kind::Input: return kInput;
      case construct::StageError::Kind::Ambiguity: return kAmbiguous;
      case construct::StageError::Kind::Capacity: return kCapacity;
      default: return kCheckFailed;
    }
  } catch (const rigor::AmbiguousComparison& e) {
    std::cerr << "ambiguous: " << e.what() << " at " << e.precision() << " bits\n";
    return kAmbiguous;
  } catch (const rigor::PrecisionOverflow& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kAmbiguous;
  } catch (const primes::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kCheckFailed;
  }
}
