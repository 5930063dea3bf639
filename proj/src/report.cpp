#include "report.hpp"

#include <sstream>

namespace mcf {

const char* method_name(McMethod m) {
  return m == McMethod::change_of_variables ? "change-of-variables"
                                            : "direct-polytope";
}

Json to_json(const MeasureEstimate& e) {
  return Json{{"value", e.value},
              {"stderr", e.std_error},
              {"samples", e.samples},
              {"seed", e.seed},
              {"method", method_name(e.method)}};
}

Json to_json(const SymmetryVerdict& v) {
  return Json{{"forward", to_json(v.forward)},
              {"reversed", to_json(v.reversed)},
              {"z", v.z},
              {"verdict", v.verdict()},
              {"warning", v.warning}};
}

Json to_json(const CommutationResult& c) {
  Json j{{"digit", c.digit.str()}, {"pass", c.pass}};
  if (c.residual > 0) j["residual"] = c.residual;
  return j;
}

Json to_json(const CellMappingStats& c) {
  return Json{{"digit", c.digit.str()},
              {"forward_in", c.forward_in},
              {"forward_total", c.forward_total},
              {"backward_in", c.backward_in},
              {"backward_total", c.backward_total},
              {"pass", c.pass}};
}

Json to_json(const DualityReport& r) {
  Json commutation = Json::array();
  for (const auto& c : r.commutation) commutation.push_back(to_json(c));
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return Json{{"system", r.system},
              {"n", r.n},
              {"digit_set", r.digit_note},
              {"commutation", commutation},
              {"cell_mapping", cells},
              {"pass", r.pass}};
}

Json catalogue_json() {
  Json rows = Json::array();
  for (const CatalogueRow& r : catalogue()) {
    rows.push_back(Json{{"name", r.name},
                        {"n", r.n_range},
                        {"digit_kind", r.digit_kind},
                        {"alphabet", r.alphabet},
                        {"domain", r.domain},
                        {"is_full", r.is_full},
                        {"known_intertwiner", r.has_known_intertwiner},
                        {"selfdual_digits", r.selfdual_digits}});
  }
  return Json{{"schema", kSchema}, {"systems", rows}};
}

Json system_info_json(const FibredSystem& s) {
  return Json{{"name", s.name()},
              {"n", s.n()},
              {"is_full", s.is_full()},
              {"alphabet", s.alphabet_note()},
              {"selfdual_digits", s.selfdual_note()},
              {"domain", s.domain().description()},
              {"dual_domain", s.dual_domain().description()},
              {"dual_partition", s.has_dual_partition()}};
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}
}  // namespace

std::string measures_csv(
    const std::vector<std::pair<std::string, MeasureEstimate>>& rows) {
  std::ostringstream os;
  os << "digits,value,stderr,samples,seed,method\r\n";
  os.precision(17);
  for (const auto& [digits, e] : rows) {
    os << csv_field(digits) << "," << e.value << "," << e.std_error << ","
       << e.samples << "," << e.seed << "," << method_name(e.method) << "\r\n";
  }
  return os.str();
}

}  // namespace mcf
