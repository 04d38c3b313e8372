#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dmorse/morse.hpp"
#include "dmorse/offsets.hpp"

namespace dmorse {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

struct AnalysisSettings {
  Mode mode = Mode::Exact;
  Tolerance tol;
  std::size_t max_subset = 0;
};

/// "min", "critical", "regular_certificate" or "regular_noncritical_skipped".
std::string kind_name(PointKind kind);
PointKind kind_from_name(const std::string& name);

template <class T>
std::string exact_string(const T& x) {
  return to_exact_string(NumTraits<T>::to_rational(x));
}

template <class T>
Json exact_array(const Vec<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(exact_string(x));
  return out;
}

template <class T>
Json record_json(const CriticalPointRecord<T>& r);

template <class T>
Json verification_json(const OffsetVerificationReport<T>& report);

template <class T>
Json analysis_report(const PointCloud<T>& cloud, const std::vector<CriticalPointRecord<T>>& records,
                     const AnalysisSettings& settings, const OffsetVerificationReport<T>* verification = nullptr);

template <class T>
Json gradient_json(const GradientResult<T>& g);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace dmorse
