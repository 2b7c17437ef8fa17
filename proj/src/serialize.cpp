#include "mfarc/serialize.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mfarc {

namespace fs = std::filesystem;

namespace {

std::string family_name(Family f) { return f == Family::f ? "f" : "g"; }

Family family_of(const std::string& s) {
  if (s == "f") return Family::f;
  if (s == "g") return Family::g;
  throw SerializeError("unknown family: " + s);
}

mpq_class rational_of(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw SerializeError("bad rational: " + s);
  q.canonicalize();
  return q;
}

// FNV-1a 64-bit, hex encoded
std::string checksum_of(const std::string& payload) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

json spec_to_json(const BasisSpec& s) {
  return json{{"level", s.level},
              {"k", s.k},
              {"n", s.n},
              {"family", family_name(s.family)}};
}

BasisSpec spec_from_json(const json& j) {
  BasisSpec s;
  s.level = j.at("level").get<int>();
  s.k = j.at("k").get<long>();
  s.n = j.at("n").get<long>();
  s.family = family_of(j.at("family").get<std::string>());
  return s;
}

}  // namespace

json series_to_json(const LaurentSeries& s) {
  json coeffs = json::array();
  for (long e = s.valuation(); e <= s.truncation(); ++e)
    coeffs.push_back(s.coeff(e).get_str());
  return json{{"valuation", s.valuation()},
              {"truncation", s.truncation()},
              {"coeffs", coeffs}};
}

LaurentSeries series_from_json(const json& j) {
  long v = j.at("valuation").get<long>();
  long t = j.at("truncation").get<long>();
  std::vector<mpq_class> c;
  for (const auto& s : j.at("coeffs")) c.push_back(rational_of(s));
  if (static_cast<long>(c.size()) != t - v + 1)
    throw SerializeError("coefficient count does not match the range");
  if (c.empty()) return LaurentSeries::zero(t);
  return LaurentSeries::from_coeffs(v, std::move(c));
}

json element_to_json(const BasisElement& e) {
  json faber = json::array();
  for (const auto& c : e.faber) faber.push_back(c.get_str());
  return json{{"schemaVersion", kSchemaVersion},
              {"spec", spec_to_json(e.spec)},
              {"weight", {{"ell", e.weight.ell}, {"kprime", e.weight.kprime}}},
              {"series", series_to_json(e.series)},
              {"faber", faber},
              {"gap", {{"lo", e.gap_lo}, {"hi", e.gap_hi}}}};
}

BasisElement element_from_json(const json& j) {
  if (j.at("schemaVersion").get<int>() != kSchemaVersion)
    throw SerializeError("unsupported schema version");
  BasisElement e;
  e.spec = spec_from_json(j.at("spec"));
  e.weight = WeightDecomposition::of(e.spec.level, e.spec.k);
  e.series = series_from_json(j.at("series"));
  for (const auto& s : j.at("faber")) e.faber.push_back(rational_of(s));
  e.gap_lo = j.at("gap").at("lo").get<long>();
  e.gap_hi = j.at("gap").at("hi").get<long>();
  return e;
}

json faber_to_json(const FaberPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(c.get_str());
  return json{{"schemaVersion", kSchemaVersion},
              {"level", p.level},
              {"kprime", p.kprime},
              {"family", family_name(p.family)},
              {"degree", p.degree()},
              {"coeffs", coeffs}};
}

json root_report_to_json(const RootReport& r) {
  json roots = json::array();
  for (const auto& ri : r.real_roots)
    roots.push_back(json{{"lo", ri.lo.get_str()},
                         {"hi", ri.hi.get_str()},
                         {"multiplicity", ri.multiplicity},
                         {"inArcImage", ri.in_arc_image}});
  return json{{"schemaVersion", kSchemaVersion},
              {"degree", r.degree},
              {"realRootsInArcImage", r.real_roots_in_arc_image},
              {"complexPairs", r.complex_pairs},
              {"ellipticTrivialZero", r.elliptic_trivial_zero},
              {"realRoots", roots}};
}

json certificate_to_json(const TailCertificate& c) {
  return json{{"schemaVersion", kSchemaVersion},
              {"series", c.series},
              {"N", c.N},
              {"t", c.t},
              {"bound", c.bound}};
}

json bound_to_json(const CertifiedBound& b) {
  return json{{"schemaVersion", kSchemaVersion},
              {"quantity", b.quantity},
              {"kind", b.kind},
              {"value", b.value},
              {"regime", b.regime}};
}

json arc_profile_to_json(const ArcProfile& p, bool include_samples) {
  json out{{"schemaVersion", kSchemaVersion},
           {"spec", spec_to_json(p.spec)},
           {"signChanges", p.sign_changes},
           {"guaranteedFloor", p.guaranteed_floor},
           {"valenceCount", p.valence_count},
           {"asymptoticReference", p.asymptotic_reference},
           {"countedThetaMin", p.counted_theta_min},
           {"countedThetaMax", p.counted_theta_max},
           {"precisionBits", p.precision_bits}};
  if (include_samples) {
    json samples = json::array();
    for (const auto& s : p.samples)
      samples.push_back(json{{"theta", s.theta},
                             {"value", s.value},
                             {"radius", s.radius},
                             {"predictor", s.predictor},
                             {"sign", s.sign},
                             {"counted", s.counted}});
    out["samples"] = std::move(samples);
  }
  return out;
}

std::string arc_profile_csv(const ArcProfile& p) {
  std::ostringstream out;
  out << "theta,value,radius,predictor\n";
  char row[160];
  for (const auto& s : p.samples) {
    std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g\n", s.theta,
                  s.value, s.radius, s.predictor);
    out << row;
  }
  return out.str();
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string Cache::default_dir() {
  if (const char* d = std::getenv("MFARC_CACHE_DIR")) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"))
    return std::string(x) + "/mfarc";
  if (const char* h = std::getenv("HOME"))
    return std::string(h) + "/.cache/mfarc";
  return ".mfarc-cache";
}

std::string Cache::entry_path(const BasisSpec& spec, long precision) const {
  std::ostringstream name;
  name << dir_ << "/level" << spec.level << "_k" << spec.k << "_n" << spec.n
       << "_" << family_name(spec.family) << "_p" << precision << ".json";
  return name.str();
}

std::optional<BasisElement> Cache::load(const BasisSpec& spec,
                                        long precision) const {
  std::ifstream in(entry_path(spec, precision));
  if (!in) return std::nullopt;
  json wrapper;
  try {
    in >> wrapper;
  } catch (const json::exception& e) {
    throw CacheCorrupt(std::string("unreadable cache entry: ") + e.what());
  }
  std::string payload = wrapper.at("payload").dump();
  if (wrapper.at("checksum").get<std::string>() != checksum_of(payload))
    throw CacheCorrupt("cache checksum mismatch");
  try {
    return element_from_json(wrapper.at("payload"));
  } catch (const std::exception& e) {
    throw CacheCorrupt(std::string("undecodable cache entry: ") + e.what());
  }
}

void Cache::store(const BasisElement& e, long precision) const {
  json payload = element_to_json(e);
  json wrapper{{"schemaVersion", kSchemaVersion},
               {"checksum", checksum_of(payload.dump())},
               {"payload", std::move(payload)}};
  std::string final_path = entry_path(e.spec, precision);
  std::string tmp_path = final_path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp_path);
    if (!out) throw SerializeError("cannot write cache file " + tmp_path);
    out << wrapper.dump(2) << "\n";
  }
  fs::rename(tmp_path, final_path);
}

BasisElement build_cached(const BasisSpec& spec, long precision,
                          const Cache& cache) {
  try {
    if (auto hit = cache.load(spec, precision)) return *hit;
  } catch (const CacheCorrupt&) {
    // fall through and rebuild over the damaged entry
  }
  BasisElement e = build(spec, precision);
  cache.store(e, precision);
  return e;
}

}  // namespace mfarc
