#include "dmorse/report.hpp"

#include <cmath>
#include <stdexcept>

namespace dmorse {

std::string kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::CriticalIndexZero:
      return "min";
    case PointKind::Critical:
      return "critical";
    case PointKind::RegularCertificate:
      return "regular_certificate";
    case PointKind::RegularNotDifferentialCritical:
      return "regular_noncritical_skipped";
  }
  throw std::logic_error("kind_name: unknown kind");
}

PointKind kind_from_name(const std::string& name) {
  if (name == "min") return PointKind::CriticalIndexZero;
  if (name == "critical") return PointKind::Critical;
  if (name == "regular_certificate") return PointKind::RegularCertificate;
  if (name == "regular_noncritical_skipped") return PointKind::RegularNotDifferentialCritical;
  throw std::invalid_argument("unknown record kind '" + name + "'");
}

template <class T>
Json record_json(const CriticalPointRecord<T>& r) {
  Json j;
  j["location"] = exact_array(r.location);
  j["squared_value"] = exact_string(r.squared_value);
  j["value"] = std::sqrt(NumTraits<T>::to_double(r.squared_value));
  j["projection_indices"] = r.projection.indices;
  j["kind"] = kind_name(r.classification.kind);
  switch (r.classification.kind) {
    case PointKind::CriticalIndexZero:
      j["index"] = 0;
      break;
    case PointKind::Critical:
      j["index"] = r.classification.index;
      j["margin"] = exact_string(r.classification.margin);
      break;
    case PointKind::RegularCertificate:
      j["certificate_v"] = exact_array(r.classification.certificate);
      break;
    case PointKind::RegularNotDifferentialCritical:
      j["gradient_unnormalized"] = exact_array(r.classification.gradient);
      break;
  }
  return j;
}

template <class T>
Json verification_json(const OffsetVerificationReport<T>& report) {
  Json j;
  j["critical_values"] = exact_array(report.critical_values);
  j["intervals"] = Json::array();
  for (const auto& iv : report.intervals) {
    Json e;
    e["lower"] = exact_string(iv.lower);
    e["upper"] = iv.upper ? Json(exact_string(*iv.upper)) : Json(nullptr);
    e["sample"] = exact_string(iv.sample);
    e["betti"] = iv.betti;
    j["intervals"].push_back(std::move(e));
  }
  j["crossings"] = Json::array();
  for (const auto& c : report.crossings) {
    Json e;
    e["squared_value"] = exact_string(c.squared_value);
    e["indices"] = c.indices;
    e["delta_betti"] = c.delta_betti;
    e["delta_euler"] = c.delta_euler;
    e["expected_euler"] = c.expected_euler;
    e["R2"] = c.handle_bookkeeping;
    e["R3"] = c.single_handle ? Json(*c.single_handle) : Json(nullptr);
    j["crossings"].push_back(std::move(e));
  }
  j["isotopy_checks"] = Json::array();
  for (const auto& c : report.isotopy_checks) {
    Json e;
    e["squared_value"] = exact_string(c.squared_value);
    e["samples"] = exact_array(c.samples);
    e["betti"] = c.betti;
    e["R1"] = c.pass;
    j["isotopy_checks"].push_back(std::move(e));
  }
  j["rules"] = {{"R1_isotopy", report.r1_isotopy},
                {"R2_handle_bookkeeping", report.r2_handle_bookkeeping},
                {"R3_single_handle", report.r3_single_handle},
                {"R4_terminal_contractible", report.r4_terminal_contractible}};
  j["all_pass"] = report.all_pass();
  return j;
}

template <class T>
Json analysis_report(const PointCloud<T>& cloud, const std::vector<CriticalPointRecord<T>>& records,
                     const AnalysisSettings& settings, const OffsetVerificationReport<T>* verification) {
  Json input;
  input["points"] = Json::array();
  for (const auto& p : cloud.points()) input["points"].push_back(exact_array(p));
  input["ambient"] = cloud.ambient();
  input["mode"] = settings.mode == Mode::Exact ? "exact" : "float";
  input["tolerance"] = {{"abs", settings.tol.abs}, {"rel", settings.tol.rel}};
  input["max_subset"] = settings.max_subset;

  Json j;
  j["input"] = std::move(input);
  j["records"] = Json::array();
  for (const auto& r : records) j["records"].push_back(record_json(r));
  if (verification) j["verification"] = verification_json(*verification);
  return j;
}

template <class T>
Json gradient_json(const GradientResult<T>& g) {
  Json j;
  j["pi_indices"] = g.projection.indices;
  j["squared_value"] = exact_string(g.projection.squared_value);
  j["sigma"] = exact_array(g.sigma);
  j["gradient_normalized_float"] = g.normalized();
  j["gradient_unnormalized_exact"] = exact_array(g.unnormalized);
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

#define DMORSE_INSTANTIATE(T)                                                                                 \
  template Json record_json(const CriticalPointRecord<T>&);                                                    \
  template Json verification_json(const OffsetVerificationReport<T>&);                                         \
  template Json analysis_report(const PointCloud<T>&, const std::vector<CriticalPointRecord<T>>&,               \
                                const AnalysisSettings&, const OffsetVerificationReport<T>*);                  \
  template Json gradient_json(const GradientResult<T>&);

DMORSE_INSTANTIATE(Rational)
DMORSE_INSTANTIATE(double)

#undef DMORSE_INSTANTIATE

}  // namespace dmorse
