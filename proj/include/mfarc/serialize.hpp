#ifndef MFARC_SERIALIZE_HPP
#define MFARC_SERIALIZE_HPP

// JSON serialization for series, basis elements, root reports, arc profiles
// and certificates; CSV emitters for plot data; and the checksummed,
// atomically written coefficient cache.

#include <json.hpp>

#include <optional>
#include <string>

#include "mfarc/arczeros.hpp"
#include "mfarc/faber.hpp"
#include "mfarc/forms.hpp"
#include "mfarc/rigor.hpp"

namespace mfarc {

inline constexpr int kSchemaVersion = 1;

struct SerializeError : std::runtime_error {
  explicit SerializeError(const std::string& m) : std::runtime_error(m) {}
};
struct CacheCorrupt : SerializeError {
  using SerializeError::SerializeError;
};

using nlohmann::json;

// {valuation, truncation, coeffs: [decimal strings]}
json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const json& j);

json element_to_json(const BasisElement& e);
BasisElement element_from_json(const json& j);

json faber_to_json(const FaberPolynomial& p);
json root_report_to_json(const RootReport& r);

json certificate_to_json(const TailCertificate& c);
json bound_to_json(const CertifiedBound& b);

json arc_profile_to_json(const ArcProfile& p, bool include_samples = true);
// fixed columns: theta,value,radius,predictor
std::string arc_profile_csv(const ArcProfile& p);

// Coefficient cache keyed by (level, k, n, family, precision).  Files are
// written atomically (temp + rename) and carry a checksum verified on read.
class Cache {
 public:
  explicit Cache(std::string dir = default_dir());

  // resolves $MFARC_CACHE_DIR, then $XDG_CACHE_HOME/mfarc, then ~/.cache/mfarc
  static std::string default_dir();

  const std::string& dir() const { return dir_; }
  std::string entry_path(const BasisSpec& spec, long precision) const;

  // nullopt on miss; CacheCorrupt when the checksum or schema does not match
  std::optional<BasisElement> load(const BasisSpec& spec,
                                   long precision) const;
  void store(const BasisElement& e, long precision) const;

 private:
  std::string dir_;
};

// build with cache lookup; corrupt entries are rebuilt and overwritten
BasisElement build_cached(const BasisSpec& spec, long precision,
                          const Cache& cache);

}  // namespace mfarc

#endif
