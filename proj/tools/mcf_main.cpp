// mcf: command-line front end over the shared-library C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "mcf/mcf.h"

namespace {

using Json = nlohmann::ordered_json;

struct SystemHandle {
  mcf_system* ptr = nullptr;
  ~SystemHandle() { mcf_system_close(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mcf_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int exit_code_for(mcf_status st) {
  switch (st) {
    case MCF_OK: return 0;
    case MCF_ERR_OUT_OF_DOMAIN: return 2;
    case MCF_ERR_BOUNDARY_POINT: return 3;
    case MCF_ERR_NON_FULL_SYSTEM: return 4;
    case MCF_ERR_EMPTY_CYLINDER: return 5;
    case MCF_ERR_DIVERGENT_INTEGRAL: return 6;
    default: return 1;
  }
}

[[noreturn]] void die(mcf_status st) {
  std::cerr << "error: " << mcf_status_name(st) << ": "
            << mcf_last_error_message() << "\n";
  std::exit(exit_code_for(st));
}

void check(mcf_status st) {
  if (st != MCF_OK) die(st);
}

struct GlobalOpts {
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;
  int workers = 1;
  bool antithetic = false;
  double z_crit = 5.0;
  std::string json_out;  // empty = no report file; "-" = stdout
  std::string csv_out;
};

mcf_mc_params mc_params(const GlobalOpts& g, int method) {
  mcf_mc_params p;
  mcf_mc_params_init(&p);
  p.seed = g.seed;
  p.samples = g.samples;
  p.workers = g.workers;
  p.antithetic = g.antithetic ? 1 : 0;
  p.z_crit = g.z_crit;
  p.method = method;
  return p;
}

class Report {
 public:
  Report(const std::string& command, const GlobalOpts& g) : start_(clock_::now()) {
    doc_["schema"] = "mcf-lab/1";
    doc_["version"] = mcf_version();
    doc_["command"] = command;
    doc_["args"] = Json::object();
    doc_["seed"] = g.seed;
    doc_["records"] = Json::array();
  }
  Json& args() { return doc_["args"]; }
  void add_record(Json r) { doc_["records"].push_back(std::move(r)); }
  void write(const GlobalOpts& g) {
    const double ms = std::chrono::duration<double, std::milli>(
                          clock_::now() - start_).count();
    doc_["timings"] = Json{{"total_ms", ms}};
    if (g.json_out.empty()) return;
    if (g.json_out == "-") {
      std::cout << doc_.dump(2) << "\n";
      return;
    }
    std::ofstream out(g.json_out);
    if (!out) {
      std::cerr << "error: cannot write " << g.json_out << "\n";
      std::exit(1);
    }
    out << doc_.dump(2) << "\n";
  }

 private:
  using clock_ = std::chrono::steady_clock;
  Json doc_;
  clock_::time_point start_;
};

void write_csv(const GlobalOpts& g, const std::vector<Json>& rows) {
  if (g.csv_out.empty()) return;
  std::ostringstream os;
  os << "digits,value,stderr,samples,seed,method\r\n";
  os.precision(17);
  for (const Json& r : rows) {
    std::string digits = r.value("digits", "");
    if (digits.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : digits) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
      digits = q + "\"";
    }
    os << digits << "," << r["estimate"]["value"].get<double>() << ","
       << r["estimate"]["stderr"].get<double>() << ","
       << r["estimate"]["samples"].get<std::uint64_t>() << ","
       << r["estimate"]["seed"].get<std::uint64_t>() << ","
       << r["estimate"]["method"].get<std::string>() << "\r\n";
  }
  std::ofstream out(g.csv_out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << g.csv_out << "\n";
    std::exit(1);
  }
  out << os.str();
}

SystemHandle open_system(const std::string& name, int n, bool dual) {
  SystemHandle h;
  check(dual ? mcf_system_open_dual(name.c_str(), n, &h.ptr)
             : mcf_system_open(name.c_str(), n, &h.ptr));
  return h;
}

Json estimate_json(const mcf_estimate& e) {
  return Json{{"value", e.value},
              {"stderr", e.std_error},
              {"samples", e.samples},
              {"seed", e.seed},
              {"method", e.method == 1 ? "direct-polytope" : "change-of-variables"}};
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      std::cerr << "error: bad coordinate '" << tok << "'\n";
      std::exit(1);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multidimensional continued fraction laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed")->envname("MCF_SEED");
  app.add_option("--samples", g.samples, "Monte Carlo sample count");
  app.add_option("--workers", g.workers, "parallel MC workers");
  app.add_option("--z-crit", g.z_crit, "violation threshold for symmetry z");
  app.add_flag("--antithetic", g.antithetic, "antithetic sampling");
  app.add_option("--json", g.json_out, "write the JSON report here ('-' = stdout)");
  app.add_option("--csv", g.csv_out, "write estimate records as CSV");

  std::string system_name = "gs", digits, point_text, svg_out = "figure.svg";
  int n = 2, steps = 10, digit_bound = 10, entry_bound = 1;
  int depth = 1, cap = 2, size_px = 480, max_m = 6;
  double frame = 4.0;
  bool as_json = false, dual = false, polar = false, markdown = false;
  bool criterion = false, no_labels = false;
  std::string method = "cov";

  auto add_system_opts = [&](CLI::App* cmd, bool with_dual = true) {
    cmd->add_option("--system", system_name, "algorithm name")->required();
    cmd->add_option("--n", n, "dimension");
    if (with_dual)
      cmd->add_flag("--dual-system", dual, "operate on the dual system");
  };

  auto* list = app.add_subcommand("list", "catalogue of registered algorithms");
  list->add_flag("--json-only", as_json, "print raw JSON only");

  auto* expand_cmd = app.add_subcommand("expand", "digit expansion of a point");
  add_system_opts(expand_cmd);
  expand_cmd->add_option("--x", point_text, "point, comma-separated")->required();
  expand_cmd->add_option("--steps", steps, "number of digits");

  auto* measure_cmd =
      app.add_subcommand("measure", "Monte Carlo cylinder measure");
  add_system_opts(measure_cmd);
  measure_cmd->add_option("--digits", digits, "digit string (empty = whole domain)");
  measure_cmd->add_option("--method", method, "cov | polytope");
  measure_cmd->add_flag("--polar", polar, "measure the reversed string");

  auto* symmetry_cmd =
      app.add_subcommand("symmetry", "forward vs reversed cylinder measure");
  add_system_opts(symmetry_cmd);
  symmetry_cmd->add_option("--digits", digits, "digit string")->required();

  auto* dual_check_cmd = app.add_subcommand(
      "dual-check", "verify the known intertwiner (commutation + cells)");
  add_system_opts(dual_check_cmd, false);
  dual_check_cmd->add_option("--digit-bound", digit_bound,
                             "probe bound for unbounded alphabets");
  dual_check_cmd->add_flag("--md", markdown, "markdown summary table");

  auto* dual_search_cmd =
      app.add_subcommand("dual-search", "enumerate candidate intertwiners");
  add_system_opts(dual_search_cmd, false);
  dual_search_cmd->add_option("--bound", entry_bound, "entry bound (1..3)");
  dual_search_cmd->add_option("--digit-bound", digit_bound, "probe digits");

  auto* telephone_cmd =
      app.add_subcommand("telephone", "involution counts of symmetric groups");
  telephone_cmd->add_option("--max", max_m, "largest group size");
  telephone_cmd->add_flag("--criterion", criterion,
                          "check the branch-matrix involution criterion");

  auto* figure_cmd = app.add_subcommand("figure", "SVG of the cell partition");
  add_system_opts(figure_cmd, false);
  figure_cmd->add_option("--depth", depth, "partition depth (1..3)");
  figure_cmd->add_option("--cap", cap, "digit cap for unbounded alphabets");
  figure_cmd->add_option("--frame", frame, "dual-domain clip frame");
  figure_cmd->add_option("--size", size_px, "image size in pixels");
  figure_cmd->add_flag("--dual", dual, "draw the dual partition");
  figure_cmd->add_flag("--no-labels", no_labels, "omit cell labels");
  figure_cmd->add_option("--svg-out", svg_out, "output file");

  CLI11_PARSE(app, argc, argv);

  // keep stdout clean for the machine report when it is routed there
  std::FILE* human = g.json_out == "-" ? stderr : stdout;

  if (list->parsed()) {
    OwnedString json;
    check(mcf_catalogue_json(&json.ptr));
    if (as_json) {
      std::cout << json.str() << "\n";
    } else {
      const Json j = Json::parse(json.str());
      std::fprintf(human, "%-10s %-6s %-12s %-26s %-5s %-12s %s\n", "name",
                   "n", "digits", "alphabet", "full", "intertwiner",
                   "self-dual digits");
      for (const auto& row : j["systems"]) {
        std::fprintf(human, "%-10s %-6s %-12s %-26s %-5s %-12s %s\n",
                     row["name"].get<std::string>().c_str(),
                     row["n"].get<std::string>().c_str(),
                     row["digit_kind"].get<std::string>().c_str(),
                     row["alphabet"].get<std::string>().c_str(),
                     row["is_full"].get<bool>() ? "yes" : "no",
                     row["known_intertwiner"].get<bool>() ? "known" : "none",
                     row["selfdual_digits"].get<std::string>().c_str());
      }
    }
    Report rep("list", g);
    rep.add_record(Json::parse(json.str()));
    rep.write(g);
    return 0;
  }

  if (expand_cmd->parsed()) {
    auto sys = open_system(system_name, n, dual);
    const auto x = parse_point(point_text);
    OwnedString json;
    check(mcf_expand_json(sys.ptr, x.data(), x.size(), steps, &json.ptr));
    const Json j = Json::parse(json.str());
    if (steps > 0 && j["digits"].empty() && j["hit_boundary"].get<bool>()) {
      std::cerr << "error: BoundaryPoint: the point lies on a cell boundary\n";
      return 3;
    }
    std::string line;
    for (const auto& d : j["digits"])
      line += (line.empty() ? "" : " ") + d.get<std::string>();
    std::fprintf(human, "%s\n", line.c_str());
    if (j["hit_boundary"].get<bool>())
      std::cerr << "note: expansion stopped on a cell boundary\n";
    Report rep("expand", g);
    rep.args() = Json{{"system", system_name}, {"n", n}, {"x", x},
                      {"steps", steps}, {"dual", dual}};
    rep.add_record(j);
    rep.write(g);
    return 0;
  }

  if (measure_cmd->parsed()) {
    auto sys = open_system(system_name, n, dual);
    const int mth = method == "polytope" ? 1 : 0;
    const mcf_mc_params p = mc_params(g, mth);
    mcf_estimate e;
    check(polar ? mcf_polar_measure(sys.ptr, digits.c_str(), &p, &e)
                : mcf_cylinder_measure(sys.ptr, digits.c_str(), &p, &e));
    std::fprintf(human, "%s[%s] = %.9g  (stderr %.3g, %llu samples, %s)\n",
                polar ? "polar " : "mu", digits.c_str(), e.value, e.std_error,
                static_cast<unsigned long long>(e.samples),
                mth ? "direct-polytope" : "change-of-variables");
    Report rep("measure", g);
    rep.args() = Json{{"system", system_name}, {"n", n}, {"digits", digits},
                      {"method", method}, {"polar", polar}, {"dual", dual}};
    const Json record{{"digits", digits}, {"estimate", estimate_json(e)}};
    rep.add_record(record);
    rep.write(g);
    write_csv(g, {record});
    return 0;
  }

  if (symmetry_cmd->parsed()) {
    auto sys = open_system(system_name, n, dual);
    const mcf_mc_params p = mc_params(g, 0);
    OwnedString json;
    check(mcf_symmetry_json(sys.ptr, digits.c_str(), &p, &json.ptr));
    const Json j = Json::parse(json.str());
    std::fprintf(human, "mu[%s]  = %.9g (stderr %.3g)\n",
                j["digits"].get<std::string>().c_str(),
                j["forward"]["value"].get<double>(),
                j["forward"]["stderr"].get<double>());
    std::fprintf(human, "mu[%s]  = %.9g (stderr %.3g)\n",
                j["reversed_digits"].get<std::string>().c_str(),
                j["reversed"]["value"].get<double>(),
                j["reversed"]["stderr"].get<double>());
    std::fprintf(human, "z = %.3f  verdict: %s%s\n", j["z"].get<double>(),
                j["verdict"].get<std::string>().c_str(),
                j["warning"].get<bool>() ? " (warning: 3 < z <= z_crit)" : "");
    Report rep("symmetry", g);
    rep.args() = Json{{"system", system_name}, {"n", n}, {"digits", digits},
                      {"dual", dual}};
    rep.add_record(j);
    rep.write(g);
    write_csv(g, {Json{{"digits", j["digits"]}, {"estimate", j["forward"]}},
                  Json{{"digits", j["reversed_digits"]},
                       {"estimate", j["reversed"]}}});
    return 0;
  }

  if (dual_check_cmd->parsed()) {
    auto sys = open_system(system_name, n, false);
    OwnedString json;
    check(mcf_dual_check_json(sys.ptr, digit_bound, g.samples, g.seed,
                              &json.ptr));
    const Json j = Json::parse(json.str());
    if (markdown) {
      std::fprintf(human, "| digit | commutation | cells forward | cells backward |\n"
                         "|---|---|---|---|\n");
      for (size_t i = 0; i < j["commutation"].size(); ++i) {
        const auto& c = j["commutation"][i];
        const auto& m = j["cell_mapping"][i];
        std::fprintf(human, "| %s | %s | %llu/%llu | %llu/%llu |\n",
                    c["digit"].get<std::string>().c_str(),
                    c["pass"].get<bool>() ? "exact" : "FAIL",
                    static_cast<unsigned long long>(m["forward_in"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["forward_total"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["backward_in"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["backward_total"].get<std::uint64_t>()));
      }
    } else {
      for (size_t i = 0; i < j["commutation"].size(); ++i) {
        const auto& c = j["commutation"][i];
        const auto& m = j["cell_mapping"][i];
        std::fprintf(human, "digit %-8s commutation %-5s cells %llu/%llu | %llu/%llu\n",
                    c["digit"].get<std::string>().c_str(),
                    c["pass"].get<bool>() ? "pass" : "FAIL",
                    static_cast<unsigned long long>(m["forward_in"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["forward_total"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["backward_in"].get<std::uint64_t>()),
                    static_cast<unsigned long long>(m["backward_total"].get<std::uint64_t>()));
      }
      std::fprintf(human, "overall: %s\n", j["pass"].get<bool>() ? "pass" : "FAIL");
    }
    Report rep("dual-check", g);
    rep.args() = Json{{"system", system_name}, {"n", n},
                      {"digit_bound", digit_bound}};
    rep.add_record(j);
    rep.write(g);
    return 0;
  }

  if (dual_search_cmd->parsed()) {
    auto sys = open_system(system_name, n, false);
    OwnedString json;
    check(mcf_dual_search_json(sys.ptr, entry_bound, digit_bound, g.samples,
                               g.seed, g.workers, &json.ptr));
    const Json j = Json::parse(json.str());
    std::fprintf(human, "%zu candidate(s)\n", j["candidates"].size());
    for (const auto& c : j["candidates"]) {
      std::fprintf(human, "  cell-fraction %g  %s\n",
                   c["cell_fraction"].get<double>(), c["matrix"].dump().c_str());
    }
    Report rep("dual-search", g);
    rep.args() = Json{{"system", system_name}, {"n", n},
                      {"entry_bound", entry_bound}, {"digit_bound", digit_bound}};
    rep.add_record(j);
    rep.write(g);
    return 0;
  }

  if (telephone_cmd->parsed()) {
    OwnedString json;
    check(mcf_telephone_json(max_m, criterion ? 1 : 0, &json.ptr));
    const Json j = Json::parse(json.str());
    std::string line;
    for (const auto& c : j["involution_counts"])
      line += (line.empty() ? "" : ",") + std::to_string(c.get<std::uint64_t>());
    std::fprintf(human, "%s\n", line.c_str());
    if (criterion)
      for (const auto& [m, ok] : j["branch_criterion"].items())
        std::fprintf(human, "criterion m=%s: %s\n", m.c_str(),
                    ok.get<bool>() ? "true" : "false");
    Report rep("telephone", g);
    rep.args() = Json{{"max", max_m}, {"criterion", criterion}};
    rep.add_record(j);
    rep.write(g);
    return 0;
  }

  if (figure_cmd->parsed()) {
    auto sys = open_system(system_name, n, false);
    mcf_figure_params fp;
    mcf_figure_params_init(&fp);
    fp.depth = depth;
    fp.digit_cap = cap;
    fp.frame = frame;
    fp.size_px = size_px;
    fp.dual = dual ? 1 : 0;
    fp.labels = no_labels ? 0 : 1;
    OwnedString svg;
    check(mcf_figure_svg(sys.ptr, &fp, &svg.ptr));
    std::ofstream out(svg_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << svg_out << "\n";
      return 1;
    }
    out << svg.str();
    std::fprintf(human, "wrote %s\n", svg_out.c_str());
    Report rep("figure", g);
    rep.args() = Json{{"system", system_name}, {"n", n}, {"depth", depth},
                      {"cap", cap}, {"dual", dual}, {"svg_out", svg_out}};
    rep.write(g);
    return 0;
  }

  return 0;
}
