#include "stringci/report.hpp"

namespace stringci {

std::string rational_string(const Rational& r) { return r.get_str(); }

Json to_json(const QSeries& s) {
  Json out = Json::array();
  for (const auto& c : s.coeffs()) out.push_back(rational_string(c));
  return out;
}

namespace {

Json matrix_json(const std::vector<std::vector<long>>& d) {
  Json rows = Json::array();
  for (const auto& r : d) rows.push_back(r);
  return rows;
}

}  // namespace

Json to_json(const CompleteIntersection& ci, const std::string& label) {
  Json j;
  if (!label.empty()) j["label"] = label;
  j["n"] = ci.n();
  j["D"] = matrix_json(ci.degrees());
  return j;
}

Json to_json(const StringCertificate& cert) {
  Json j;
  j["is_string"] = cert.is_string;
  j["decided"] = cert.decided();
  j["lefschetz_ok"] = cert.lefschetz_ok;
  j["matrix_criterion_ok"] = cert.matrix_criterion_ok;
  j["pushforward_p1_zero"] = cert.pushforward_p1_zero;
  j["w2_zero_mod2"] = cert.w2_zero_mod2;
  return j;
}

Json to_json(const GenusReport& report) {
  Json j;
  j["kind"] = to_string(report.kind);
  j["q_order"] = report.value.order();
  j["coefficients"] = to_json(report.value);
  return j;
}

Json to_json(const Candidate& c) {
  Json j;
  j["n"] = c.n;
  j["D"] = matrix_json(c.degrees);
  return j;
}

Json to_json(const SweepEntry& e) {
  Json j = to_json(e.candidate);
  j["complex_dim"] = e.complex_dim;
  j["witten"] = to_json(e.witten);
  j["vanishes"] = e.vanishes;
  j["millis"] = e.millis;
  return j;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["q_order"] = r.q_order;
  j["count"] = r.instances.size() + r.odd_dimension.size();
  std::size_t single = 0;
  for (const auto& e : r.instances) single += e.candidate.n.size() == 1;
  j["single_factor_count"] = single;
  j["failures"] = r.failures();
  j["instances"] = Json::array();
  for (const auto& e : r.instances) j["instances"].push_back(to_json(e));
  j["odd_dimension"] = Json::array();
  for (const auto& e : r.odd_dimension) j["odd_dimension"].push_back(to_json(e));
  j["total_millis"] = r.total_millis;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stringci
