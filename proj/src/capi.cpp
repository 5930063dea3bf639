#include "mcf/mcf.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "figure.hpp"
#include "report.hpp"

using namespace mcf;

struct mcf_system {
  SystemPtr ptr;
};

namespace {

thread_local std::string g_last_error;

mcf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::singular_point: return MCF_ERR_SINGULAR_POINT;
    case ErrorCode::dimension_mismatch: return MCF_ERR_DIMENSION_MISMATCH;
    case ErrorCode::not_unimodular: return MCF_ERR_NOT_UNIMODULAR;
    case ErrorCode::unknown_algorithm: return MCF_ERR_UNKNOWN_ALGORITHM;
    case ErrorCode::unsupported_dimension: return MCF_ERR_UNSUPPORTED_DIMENSION;
    case ErrorCode::out_of_domain: return MCF_ERR_OUT_OF_DOMAIN;
    case ErrorCode::boundary_point: return MCF_ERR_BOUNDARY_POINT;
    case ErrorCode::empty_cylinder: return MCF_ERR_EMPTY_CYLINDER;
    case ErrorCode::non_full_system: return MCF_ERR_NON_FULL_SYSTEM;
    case ErrorCode::divergent_integral: return MCF_ERR_DIVERGENT_INTEGRAL;
    case ErrorCode::no_known_intertwiner: return MCF_ERR_NO_KNOWN_INTERTWINER;
    case ErrorCode::search_space_exhausted: return MCF_ERR_SEARCH_SPACE_EXHAUSTED;
    case ErrorCode::bad_digit_string: return MCF_ERR_BAD_DIGIT_STRING;
    case ErrorCode::invalid_argument: return MCF_ERR_INVALID_ARGUMENT;
    case ErrorCode::io_error: return MCF_ERR_IO;
  }
  return MCF_ERR_INTERNAL;
}

template <typename Fn>
mcf_status guarded(Fn&& fn) {
  try {
    fn();
    return MCF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MCF_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void out_string(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) fail(ErrorCode::io_error, "allocation failed");
}

McParams to_params(const mcf_mc_params* p) {
  McParams out;
  if (!p) return out;
  out.seed = p->seed;
  out.samples = p->samples;
  out.workers = p->workers;
  out.method = p->method == 1 ? McMethod::direct_polytope
                              : McMethod::change_of_variables;
  out.antithetic = p->antithetic != 0;
  out.z_crit = p->z_crit;
  return out;
}

void to_estimate(const MeasureEstimate& e, mcf_estimate* out) {
  out->value = e.value;
  out->std_error = e.std_error;
  out->samples = e.samples;
  out->seed = e.seed;
  out->method = e.method == McMethod::direct_polytope ? 1 : 0;
}

DigitString parse_for(const FibredSystem& s, const char* digits) {
  if (!digits) return {};
  return parse_digit_string(digits, s.digit_kind(), s.matrix_dim());
}

const FibredSystem& deref(const mcf_system* s) {
  if (!s || !s->ptr)
    fail(ErrorCode::invalid_argument, "null system handle");
  return *s->ptr;
}

}  // namespace

extern "C" {

const char* mcf_version(void) { return kToolVersion; }

const char* mcf_status_name(mcf_status status) {
  switch (status) {
    case MCF_OK: return "Ok";
    case MCF_ERR_SINGULAR_POINT: return "SingularPoint";
    case MCF_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case MCF_ERR_NOT_UNIMODULAR: return "NotUnimodular";
    case MCF_ERR_UNKNOWN_ALGORITHM: return "UnknownAlgorithm";
    case MCF_ERR_UNSUPPORTED_DIMENSION: return "UnsupportedDimension";
    case MCF_ERR_OUT_OF_DOMAIN: return "OutOfDomain";
    case MCF_ERR_BOUNDARY_POINT: return "BoundaryPoint";
    case MCF_ERR_EMPTY_CYLINDER: return "EmptyCylinder";
    case MCF_ERR_NON_FULL_SYSTEM: return "NonFullSystem";
    case MCF_ERR_DIVERGENT_INTEGRAL: return "DivergentIntegral";
    case MCF_ERR_NO_KNOWN_INTERTWINER: return "NoKnownIntertwiner";
    case MCF_ERR_SEARCH_SPACE_EXHAUSTED: return "SearchSpaceExhausted";
    case MCF_ERR_BAD_DIGIT_STRING: return "BadDigitString";
    case MCF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case MCF_ERR_IO: return "IoError";
    case MCF_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* mcf_last_error_message(void) { return g_last_error.c_str(); }

void mcf_string_free(char* s) { delete[] s; }

void mcf_mc_params_init(mcf_mc_params* params) {
  params->seed = 42;
  params->samples = 1000000;
  params->workers = 1;
  params->method = 0;
  params->antithetic = 0;
  params->z_crit = 5.0;
}

void mcf_figure_params_init(mcf_figure_params* params) {
  params->depth = 1;
  params->digit_cap = 2;
  params->frame = 4.0;
  params->size_px = 480;
  params->dual = 0;
  params->labels = 1;
}

mcf_status mcf_system_open(const char* name, int32_t n, mcf_system** out) {
  return guarded([&] {
    if (!name || !out) fail(ErrorCode::invalid_argument, "null argument");
    *out = new mcf_system{make_system(name, n)};
  });
}

mcf_status mcf_system_open_dual(const char* name, int32_t n,
                                mcf_system** out) {
  return guarded([&] {
    if (!name || !out) fail(ErrorCode::invalid_argument, "null argument");
    *out = new mcf_system{dualize(make_system(name, n))};
  });
}

void mcf_system_close(mcf_system* s) { delete s; }

mcf_status mcf_catalogue_json(char** out_json) {
  return guarded([&] {
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    out_string(catalogue_json().dump(2), out_json);
  });
}

mcf_status mcf_system_info_json(const mcf_system* s, char** out_json) {
  return guarded([&] {
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    out_string(system_info_json(deref(s)).dump(2), out_json);
  });
}

mcf_status mcf_expand_json(const mcf_system* s, const double* x, size_t n,
                           int32_t steps, char** out_json) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!x || !out_json) fail(ErrorCode::invalid_argument, "null argument");
    if (static_cast<int>(n) != sys.n())
      fail(ErrorCode::dimension_mismatch, "point dimension mismatch");
    const ExpandResult r = expand(sys, Point(x, x + n), steps);
    Json digits = Json::array();
    for (const Digit& d : r.digits) digits.push_back(d.str());
    const Json j{{"digits", digits},
                 {"final", r.final_point},
                 {"hit_boundary", r.hit_boundary}};
    out_string(j.dump(2), out_json);
  });
}

mcf_status mcf_density(const mcf_system* s, const double* x, size_t n,
                       double* out) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!x || !out) fail(ErrorCode::invalid_argument, "null argument");
    if (static_cast<int>(n) != sys.n())
      fail(ErrorCode::dimension_mismatch, "point dimension mismatch");
    *out = density(sys, Point(x, x + n));
  });
}

mcf_status mcf_cylinder_measure(const mcf_system* s, const char* digits,
                                const mcf_mc_params* params,
                                mcf_estimate* out) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out) fail(ErrorCode::invalid_argument, "null argument");
    to_estimate(cylinder_measure(sys, parse_for(sys, digits), to_params(params)),
                out);
  });
}

mcf_status mcf_polar_measure(const mcf_system* s, const char* digits,
                             const mcf_mc_params* params, mcf_estimate* out) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out) fail(ErrorCode::invalid_argument, "null argument");
    to_estimate(polar_measure(sys, parse_for(sys, digits), to_params(params)),
                out);
  });
}

mcf_status mcf_symmetry_json(const mcf_system* s, const char* digits,
                             const mcf_mc_params* params, char** out_json) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    const DigitString ds = parse_for(sys, digits);
    Json j = to_json(symmetry_test(sys, ds, to_params(params)));
    j["digits"] = format_digit_string(ds);
    DigitString rev(ds.rbegin(), ds.rend());
    j["reversed_digits"] = format_digit_string(rev);
    if (sys.name() == "brun-mult")
      j["note"] = "comparison reverses the digit string; no closed-form "
                  "reference value is available for these cells";
    out_string(j.dump(2), out_json);
  });
}

mcf_status mcf_dual_check_json(const mcf_system* s, int32_t digit_bound,
                               uint64_t samples, uint64_t seed,
                               char** out_json) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    out_string(to_json(dual_check(sys, digit_bound, samples, seed)).dump(2),
               out_json);
  });
}

mcf_status mcf_dual_search_json(const mcf_system* s, int32_t entry_bound,
                                int32_t digit_bound, uint64_t sample_budget,
                                uint64_t seed, int32_t workers,
                                char** out_json) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    const auto found = search_intertwiner(sys, entry_bound, digit_bound,
                                          sample_budget, seed, workers);
    Json arr = Json::array();
    for (const auto& c : found) {
      Json rows = Json::array();
      for (int i = 0; i < c.matrix.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < c.matrix.dim(); ++j)
          row.push_back(static_cast<long long>(c.matrix.at(i, j).get_si()));
        rows.push_back(row);
      }
      arr.push_back(Json{{"matrix", rows}, {"cell_fraction", c.cell_fraction}});
    }
    const Json j{{"system", sys.name()},
                 {"n", sys.n()},
                 {"entry_bound", entry_bound},
                 {"digit_bound", digit_bound},
                 {"candidates", arr}};
    out_string(j.dump(2), out_json);
  });
}

mcf_status mcf_telephone_json(int32_t max_m, int32_t check_criterion,
                              char** out_json) {
  return guarded([&] {
    if (!out_json) fail(ErrorCode::invalid_argument, "null argument");
    Json counts = Json::array();
    for (int m = 1; m <= max_m; ++m)
      counts.push_back(static_cast<std::uint64_t>(involutions(m).size()));
    Json j{{"max_m", max_m}, {"involution_counts", counts}};
    if (check_criterion) {
      Json crit = Json::object();
      for (int m = 2; m <= std::min(max_m, 6); ++m)
        crit[std::to_string(m)] = involution_criterion_check(m);
      j["branch_criterion"] = crit;
    }
    out_string(j.dump(2), out_json);
  });
}

mcf_status mcf_figure_svg(const mcf_system* s, const mcf_figure_params* params,
                          char** out_svg) {
  return guarded([&] {
    const FibredSystem& sys = deref(s);
    if (!out_svg) fail(ErrorCode::invalid_argument, "null argument");
    FigureOptions opt;
    if (params) {
      opt.depth = params->depth;
      opt.digit_cap = params->digit_cap;
      opt.frame = params->frame;
      opt.size_px = params->size_px;
      opt.dual = params->dual != 0;
      opt.labels = params->labels != 0;
    }
    out_string(figure_svg(sys, opt), out_svg);
  });
}

}  // extern "C"
