// Copyright 2026 The semiquant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semiquant/semiquant.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "semiquant/error.hpp"
#include "semiquant/experiment.hpp"
#include "semiquant/faq.hpp"
#include "semiquant/lindblad.hpp"
#include "semiquant/models.hpp"
#include "semiquant/polynomial.hpp"

struct sq_polynomial {
  semiquant::Polynomial rep;
};

struct sq_faq_system {
  semiquant::FaqSystem rep;
};

struct sq_lindblad_model {
  semiquant::LindbladModel rep;
};

struct sq_density {
  semiquant::DensityMatrix rep;
};

namespace {

using semiquant::Complex;
using semiquant::ErrorKind;

thread_local std::string g_last_error;

sq_status set_error(sq_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

sq_status map_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument:
      return SQ_ERR_INVALID_ARGUMENT;
    case ErrorKind::dimension:
      return SQ_ERR_DIMENSION;
    case ErrorKind::parse:
      return SQ_ERR_PARSE;
    case ErrorKind::numerical:
      return SQ_ERR_NUMERICAL;
    case ErrorKind::config:
      return SQ_ERR_CONFIG;
    case ErrorKind::io:
      return SQ_ERR_IO;
  }
  return SQ_ERR_INTERNAL;
}

/// Runs body, translating exceptions into status codes.
template <class F>
sq_status guarded(F&& body, size_t* null_dim = nullptr) {
  try {
    g_last_error.clear();
    body();
    return SQ_OK;
  } catch (const semiquant::DegenerateStationaryState& e) {
    if (null_dim) *null_dim = e.null_dimension();
    return set_error(SQ_ERR_DEGENERATE, e.what());
  } catch (const semiquant::Error& e) {
    return set_error(map_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(SQ_ERR_INTERNAL, "unknown exception");
  }
}

sq_status copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) {
    if (!buf && cap == 0) return SQ_OK;
    return set_error(SQ_ERR_BUFFER_TOO_SMALL, "buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  return SQ_OK;
}

void require(bool cond, const char* what) {
  if (!cond) semiquant::fail(ErrorKind::invalid_argument, what);
}

semiquant::PhasePoint to_point(const sq_complex* coords, size_t n) {
  require(coords != nullptr || n == 0, "null coordinate array");
  std::vector<Complex> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = Complex(coords[k].re, coords[k].im);
  return semiquant::PhasePoint(std::move(v));
}

sq_complex to_c(Complex z) { return {z.real(), z.imag()}; }

}  // namespace

extern "C" {

const char* sq_version(void) { return "0.1.0"; }

const char* sq_last_error(void) { return g_last_error.c_str(); }

const char* sq_status_name(sq_status status) {
  switch (status) {
    case SQ_OK:
      return "ok";
    case SQ_ERR_CONFIG:
      return "config error";
    case SQ_ERR_NUMERICAL:
      return "numerical error";
    case SQ_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SQ_ERR_DIMENSION:
      return "dimension mismatch";
    case SQ_ERR_PARSE:
      return "parse error";
    case SQ_ERR_IO:
      return "i/o error";
    case SQ_ERR_DEGENERATE:
      return "degenerate stationary state";
    case SQ_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case SQ_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

sq_status sq_polynomial_parse(const char* text, size_t mode_count, sq_polynomial** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new sq_polynomial{semiquant::Polynomial::parse(text, mode_count)};
  });
}

void sq_polynomial_free(sq_polynomial* p) { delete p; }

sq_status sq_polynomial_mode_count(const sq_polynomial* p, size_t* out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->rep.mode_count();
  });
}

sq_status sq_polynomial_to_string(const sq_polynomial* p, char* buf, size_t cap, size_t* needed) {
  std::string s;
  const sq_status st = guarded([&] {
    require(p != nullptr, "null polynomial");
    s = p->rep.to_string();
  });
  return st != SQ_OK ? st : copy_string(s, buf, cap, needed);
}

sq_status sq_polynomial_evaluate(const sq_polynomial* p, const sq_complex* coords, size_t n, sq_complex* out) {
  return guarded([&] {
    require(p && out, "null argument");
    if (n != p->rep.mode_count()) semiquant::fail(ErrorKind::dimension, "point size does not match mode count");
    *out = to_c(p->rep.evaluate(to_point(coords, n)));
  });
}

sq_status sq_polynomial_poisson_bracket(const sq_polynomial* a, const sq_polynomial* b, sq_polynomial** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new sq_polynomial{semiquant::poisson_bracket(a->rep, b->rep)};
  });
}

sq_status sq_faq_create(const sq_polynomial* hamiltonian, const sq_polynomial* const* channels, size_t channel_count,
                        sq_faq_system** out) {
  return guarded([&] {
    require(hamiltonian && out, "null argument");
    require(channels != nullptr || channel_count == 0, "null channel array");
    std::vector<semiquant::Polynomial> ch;
    for (size_t j = 0; j < channel_count; ++j) {
      require(channels[j] != nullptr, "null channel");
      ch.push_back(channels[j]->rep);
    }
    *out = new sq_faq_system{semiquant::FaqSystem(hamiltonian->rep, std::move(ch))};
  });
}

void sq_faq_free(sq_faq_system* s) { delete s; }

sq_status sq_faq_drift(const sq_faq_system* s, const sq_complex* point, size_t n, sq_complex* out) {
  return guarded([&] {
    require(s && out, "null argument");
    const auto d = semiquant::drift(s->rep, to_point(point, n));
    for (size_t k = 0; k < d.size(); ++k) out[k] = to_c(d[k]);
  });
}

sq_status sq_faq_divergence(const sq_faq_system* s, const sq_complex* point, size_t n, double* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = semiquant::phase_divergence(s->rep, to_point(point, n));
  });
}

sq_status sq_model_oscillator(double omega0, double lambda, double u, size_t dim, sq_lindblad_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new sq_lindblad_model{semiquant::models::oscillator_lindblad({omega0, lambda, u}, dim)};
  });
}

sq_status sq_model_limit_cycle(double omega, double lambda, double mu, size_t dim, sq_lindblad_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new sq_lindblad_model{semiquant::models::limit_cycle_lindblad({omega, lambda, mu}, dim)};
  });
}

sq_status sq_model_rotator_spin(double omega1, double omega2, double lambda, unsigned twice_l,
                                sq_lindblad_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    semiquant::models::RotatorParams p;
    p.omega1 = omega1;
    p.omega2 = omega2;
    p.lambda = lambda;
    p.spin = semiquant::SpinRep::from_twice(twice_l);
    *out = new sq_lindblad_model{semiquant::models::rotator_spin_model(p)};
  });
}

void sq_model_free(sq_lindblad_model* m) { delete m; }

sq_status sq_model_dim(const sq_lindblad_model* m, size_t* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = m->rep.dim();
  });
}

sq_status sq_stationary(const sq_lindblad_model* m, double null_tol, sq_density** out, size_t* null_dim) {
  return guarded(
      [&] {
        require(m && out, "null argument");
        semiquant::StationaryOptions opts;
        if (null_tol > 0.0) opts.null_tol = null_tol;
        *out = new sq_density{semiquant::stationary(m->rep, opts)};
        if (null_dim) *null_dim = 1;
      },
      null_dim);
}

void sq_density_free(sq_density* d) { delete d; }

sq_status sq_density_dim(const sq_density* d, size_t* out) {
  return guarded([&] {
    require(d && out, "null argument");
    *out = d->rep.dim();
  });
}

sq_status sq_density_matrix(const sq_density* d, sq_complex* out, size_t cap) {
  return guarded([&] {
    require(d && out, "null argument");
    const auto& m = d->rep.matrix();
    const size_t n = d->rep.dim();
    if (cap < n * n) semiquant::fail(ErrorKind::dimension, "output array smaller than dim * dim");
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c)
        out[r * n + c] = to_c(m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
  });
}

sq_status sq_density_expectation(const sq_density* d, const sq_complex* op, size_t dim, sq_complex* out) {
  return guarded([&] {
    require(d && op && out, "null argument");
    if (dim != d->rep.dim()) semiquant::fail(ErrorKind::dimension, "operator dimension does not match the state");
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t r = 0; r < dim; ++r)
      for (size_t c = 0; c < dim; ++c)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(op[r * dim + c].re, op[r * dim + c].im);
    *out = to_c(semiquant::expectation(d->rep, semiquant::OperatorMatrix(a, d->rep.op().basis())));
  });
}

sq_status sq_stationary_residual(const sq_lindblad_model* m, const sq_density* d, double* out) {
  return guarded([&] {
    require(m && d && out, "null argument");
    *out = semiquant::stationary_residual(m->rep, d->rep);
  });
}

sq_status sq_kummer_phi(double a, double c, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = semiquant::models::kummer_phi(a, c, x);
  });
}

sq_status sq_generating_function(double nu, double u, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = semiquant::models::generating_function(nu, u);
  });
}

sq_status sq_mean_n(double nu, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = semiquant::models::mean_n(nu);
  });
}

sq_status sq_mandel_q(double nu, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = semiquant::models::mandel_q(nu);
  });
}

sq_status sq_ly2_analytic(double n_excitations, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = semiquant::models::ly2_analytic(n_excitations);
  });
}

sq_status sq_config_validate(const char* path, char* report, size_t cap, size_t* needed) {
  semiquant::ConfigReport r;
  const sq_status st = guarded([&] {
    require(path != nullptr, "null path");
    r = semiquant::validate_config_file(path);
  });
  if (st != SQ_OK) return st;
  std::string text;
  for (const auto& p : r.problems) text += p + "\n";
  const sq_status cs = copy_string(text, report, cap, needed);
  if (cs != SQ_OK) return cs;
  if (!r.ok) return set_error(SQ_ERR_CONFIG, r.problems.empty() ? "invalid config" : r.problems.front());
  return SQ_OK;
}

sq_status sq_config_schema(char* buf, size_t cap, size_t* needed) {
  std::string s;
  const sq_status st = guarded([&] { s = semiquant::experiment_schema_text(); });
  return st != SQ_OK ? st : copy_string(s, buf, cap, needed);
}

sq_status sq_run(const char* config_path, const sq_run_options* opts, char* run_dir, size_t cap, size_t* needed) {
  std::string dir;
  const sq_status st = guarded([&] {
    require(config_path != nullptr, "null config path");
    semiquant::RunOptions ro;
    if (opts) {
      if (opts->output_dir) ro.output_dir = std::filesystem::path(opts->output_dir);
      if (opts->has_seed) ro.seed = opts->seed;
      ro.jobs = opts->jobs == 0 ? 1 : opts->jobs;
    }
    dir = semiquant::run_experiment_file(config_path, ro).run_dir.string();
  });
  return st != SQ_OK ? st : copy_string(dir, run_dir, cap, needed);
}

}  // extern "C"
