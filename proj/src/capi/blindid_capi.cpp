// Copyright 2026 The blindid Authors.
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

#include "blindid/blindid.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "ambiguity/ambiguity.hpp"
#include "campaign/campaign.hpp"
#include "core/error.hpp"
#include "core/lifted.hpp"
#include "io/json_io.hpp"
#include "nullspace/nullspace.hpp"
#include "quotient/quotient.hpp"

struct bdid_signal {
  blindid::Signal value;
};

struct bdid_matrix {
  blindid::DenseMatrix value;
};

namespace {

using blindid::Error;
using blindid::ErrorCode;
namespace io = blindid::io;

thread_local std::string g_message;
thread_local std::string g_path;

bdid_status set_error(bdid_status status, std::string message, std::string path) {
  g_message = std::move(message);
  g_path = std::move(path);
  return status;
}

// Wraps a call body, translating exceptions to status codes.
template <class F>
bdid_status guard(F&& body) {
  try {
    body();
    return BDID_OK;
  } catch (const Error& e) {
    return set_error(static_cast<bdid_status>(e.code()), e.what(), e.path());
  } catch (const std::bad_alloc&) {
    return set_error(BDID_INTERNAL, "out of memory", "");
  } catch (const std::exception& e) {
    return set_error(BDID_INTERNAL, e.what(), "");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is null", name);
}

blindid::ToleranceProfile tolerance(const bdid_tolerance* t) {
  blindid::ToleranceProfile p;
  if (t != nullptr) {
    p.abs_tol = t->abs_tol;
    p.rel_tol = t->rel_tol;
  }
  p.validate();
  return p;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const io::Json& j, char** out) {
  require(out, "out");
  *out = copy_string(io::dump(j));
}

void emit(blindid::Signal s, bdid_signal** out) {
  require(out, "out");
  *out = new bdid_signal{std::move(s)};
}

void emit(blindid::DenseMatrix w, bdid_matrix** out) {
  require(out, "out");
  *out = new bdid_matrix{std::move(w)};
}

const blindid::Signal& sig(const bdid_signal* s, const char* name) {
  require(s, name);
  return s->value;
}

const blindid::DenseMatrix& mat(const bdid_matrix* w, const char* name) {
  require(w, name);
  return w->value;
}

}  // namespace

extern "C" {

const char* bdid_version(void) { return "0.1.0"; }

const char* bdid_status_name(bdid_status status) {
  switch (status) {
    case BDID_OK: return "ok";
    case BDID_INTERNAL: return "internal";
    default: break;
  }
  if (status >= BDID_INVALID_ARGUMENT && status <= BDID_IO) {
    return blindid::error_code_name(static_cast<ErrorCode>(status)).data();
  }
  return "unknown";
}

const char* bdid_last_error_message(void) { return g_message.c_str(); }
const char* bdid_last_error_path(void) { return g_path.c_str(); }

bdid_tolerance bdid_default_tolerance(void) {
  const blindid::ToleranceProfile p;
  return bdid_tolerance{p.abs_tol, p.rel_tol};
}

void bdid_string_free(char* s) { delete[] s; }

bdid_status bdid_signal_create(const double* entries, size_t len, bdid_signal** out) {
  return guard([&] {
    if (len > 0) require(entries, "entries");
    emit(blindid::Signal(std::vector<double>(entries, entries + len)), out);
  });
}

bdid_status bdid_signal_from_json(const char* json, bdid_signal** out) {
  return guard([&] {
    require(json, "json");
    emit(io::signal_from_json(io::parse(json)), out);
  });
}

void bdid_signal_free(bdid_signal* s) { delete s; }

size_t bdid_signal_length(const bdid_signal* s) { return s ? s->value.size() : 0; }

bdid_status bdid_signal_entries(const bdid_signal* s, double* out, size_t capacity) {
  return guard([&] {
    const auto& v = sig(s, "signal");
    require(out, "out");
    if (capacity < v.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "buffer holds " + std::to_string(capacity) +
                                                     " of " + std::to_string(v.size()) + " entries");
    }
    std::copy(v.values().begin(), v.values().end(), out);
  });
}

bdid_status bdid_signal_to_json(const bdid_signal* s, char** out) {
  return guard([&] { emit(io::to_json(sig(s, "signal")), out); });
}

bdid_status bdid_matrix_create(const double* row_major, size_t rows, size_t cols,
                               bdid_matrix** out) {
  return guard([&] {
    if (rows * cols > 0) require(row_major, "entries");
    emit(blindid::DenseMatrix(rows, cols,
                              std::vector<double>(row_major, row_major + rows * cols)),
         out);
  });
}

bdid_status bdid_matrix_from_json(const char* json, bdid_matrix** out) {
  return guard([&] {
    require(json, "json");
    emit(io::matrix_from_json(io::parse(json)), out);
  });
}

void bdid_matrix_free(bdid_matrix* w) { delete w; }
size_t bdid_matrix_rows(const bdid_matrix* w) { return w ? w->value.rows() : 0; }
size_t bdid_matrix_cols(const bdid_matrix* w) { return w ? w->value.cols() : 0; }

bdid_status bdid_matrix_entries(const bdid_matrix* w, double* out, size_t capacity) {
  return guard([&] {
    const auto& m = mat(w, "matrix");
    require(out, "out");
    if (capacity < m.data().size()) {
      throw Error(ErrorCode::kDimensionMismatch, "buffer too small for matrix entries");
    }
    std::copy(m.data().begin(), m.data().end(), out);
  });
}

bdid_status bdid_matrix_to_json(const bdid_matrix* w, char** out) {
  return guard([&] { emit(io::to_json(mat(w, "matrix")), out); });
}

bdid_status bdid_convolve(const bdid_signal* x, const bdid_signal* y, bdid_signal** out) {
  return guard([&] { emit(blindid::convolve(sig(x, "x"), sig(y, "y")), out); });
}

bdid_status bdid_lift_apply(const bdid_matrix* w, bdid_signal** out) {
  return guard([&] { emit(blindid::lift_apply(mat(w, "w")), out); });
}

bdid_status bdid_hankel_basis_element(size_t m, size_t n, size_t j, bdid_matrix** out) {
  return guard([&] { emit(blindid::LiftedConvOp(m, n).basis_element(j), out); });
}

bdid_status bdid_hankel_basis_json(size_t m, size_t n, char** out) {
  return guard([&] {
    io::Json arr = io::Json::array();
    for (const auto& s : blindid::hankel_basis(m, n)) arr.push_back(io::to_json(s));
    emit(arr, out);
  });
}

bdid_status bdid_antidiagonal_shift_json(const bdid_matrix* inner, char** out) {
  return guard([&] {
    const auto shifted = blindid::antidiagonal_shift(mat(inner, "inner"));
    io::Json j;
    j["top_right"] = io::to_json(shifted.top_right);
    j["bottom_left"] = io::to_json(shifted.bottom_left);
    emit(j, out);
  });
}

bdid_status bdid_outer(const bdid_signal* x, const bdid_signal* y, bdid_matrix** out) {
  return guard([&] { emit(blindid::outer(sig(x, "x"), sig(y, "y")), out); });
}

bdid_status bdid_rank_estimate(const bdid_matrix* w, const bdid_tolerance* tol, size_t* out) {
  return guard([&] {
    require(out, "out");
    *out = blindid::rank_estimate(mat(w, "w"), tolerance(tol));
  });
}

bdid_status bdid_n0_json(const bdid_signal* u, const bdid_signal* v, char** out) {
  return guard([&] {
    const auto& su = sig(u, "u");
    const auto& sv = sig(v, "v");
    emit(io::to_json(blindid::GeneratedElement{blindid::n0_element(su, sv),
                                               blindid::N0Certificate{su, sv}}),
         out);
  });
}

bdid_status bdid_n2_lift_json(const bdid_signal* u1, const bdid_signal* u2, const bdid_signal* v1,
                              const bdid_signal* v2, const bdid_tolerance* tol, char** out) {
  return guard([&] {
    const auto& a = sig(u1, "u1");
    const auto& b = sig(u2, "u2");
    const auto& c = sig(v1, "v1");
    const auto& d = sig(v2, "v2");
    const auto t = tolerance(tol);
    blindid::DenseMatrix y = blindid::n2_lift(a, b, c, d, t);
    const blindid::DenseMatrix inner = blindid::outer(a, c) + blindid::outer(b, d);
    blindid::NullspaceCertificate inner_cert = blindid::RawCertificate{};
    if (inner.rows() >= 2 && inner.cols() >= 2 && !inner.is_zero() &&
        blindid::is_in_rank2_nullspace(inner, t)) {
      try {
        inner_cert = blindid::classify(inner, t).certificate;
      } catch (const Error&) {
      }
    }
    blindid::N2Certificate cert{a, b, c, d,
                                std::make_shared<const blindid::NullspaceCertificate>(inner_cert)};
    emit(io::to_json(blindid::GeneratedElement{std::move(y), std::move(cert)}), out);
  });
}

bdid_status bdid_n2_generate_json(size_t m, size_t n, uint64_t seed, char** out) {
  return guard([&] { emit(io::to_json(blindid::n2_generate(m, n, seed)), out); });
}

bdid_status bdid_m2_json(const bdid_signal* u, double lambda, char** out) {
  return guard([&] {
    const auto& su = sig(u, "u");
    emit(io::to_json(blindid::GeneratedElement{blindid::m2_element(su, lambda),
                                               blindid::M2Certificate{su, lambda}}),
         out);
  });
}

bdid_status bdid_kernel_basis_json(size_t m, size_t n, char** out) {
  return guard([&] {
    const auto basis = blindid::kernel_basis(m, n);
    io::Json arr = io::Json::array();
    for (const auto& q : basis) arr.push_back(io::to_json(q));
    io::Json j;
    j["m"] = m;
    j["n"] = n;
    j["dimension"] = basis.size();
    j["basis"] = std::move(arr);
    emit(j, out);
  });
}

bdid_status bdid_is_in_rank2_nullspace(const bdid_matrix* w, const bdid_tolerance* tol,
                                       int* out) {
  return guard([&] {
    require(out, "out");
    *out = blindid::is_in_rank2_nullspace(mat(w, "w"), tolerance(tol)) ? 1 : 0;
  });
}

bdid_status bdid_classify_json(const bdid_matrix* w, const bdid_tolerance* tol, char** out) {
  return guard([&] { emit(io::to_json(blindid::classify(mat(w, "w"), tolerance(tol))), out); });
}

bdid_status bdid_certificate_reconstruct(const char* certificate_json, bdid_matrix** out) {
  return guard([&] {
    require(certificate_json, "certificate_json");
    emit(io::certificate_from_json(io::parse(certificate_json)).reconstruct(), out);
  });
}

bdid_status bdid_quotient_decompose_json(const bdid_signal* w, const bdid_tolerance* tol,
                                         char** out) {
  return guard([&] {
    emit(io::to_json(blindid::quotient_decompose(sig(w, "w"), tolerance(tol))), out);
  });
}

bdid_status bdid_quotient_reconstruct(const bdid_signal* w_star, double gamma,
                                      bdid_signal** out) {
  return guard([&] { emit(blindid::reconstruct(sig(w_star, "w_star"), gamma), out); });
}

bdid_status bdid_rotational_family_json(const bdid_signal* x1, const bdid_signal* x2,
                                        const bdid_signal* y1, const bdid_signal* y2,
                                        double theta, double phi, const bdid_tolerance* tol,
                                        char** out) {
  return guard([&] {
    emit(io::to_json(blindid::rotational_family(sig(x1, "x1"), sig(x2, "x2"), sig(y1, "y1"),
                                                sig(y2, "y2"), theta, phi, tolerance(tol))),
         out);
  });
}

bdid_status bdid_shift_ambiguity_json(const bdid_signal* x, const bdid_signal* y, char** out) {
  return guard([&] { emit(io::to_json(blindid::shift_ambiguity(sig(x, "x"), sig(y, "y"))), out); });
}

bdid_status bdid_attack_json(const bdid_signal* x, const bdid_signal* y, const bdid_tolerance* tol,
                             char** out) {
  return guard([&] {
    emit(io::to_json(blindid::attack(sig(x, "x"), sig(y, "y"), tolerance(tol))), out);
  });
}

bdid_status bdid_verify_pair_json(const char* pair_json, const bdid_tolerance* tol, char** out,
                                  int* certifies) {
  return guard([&] {
    require(pair_json, "pair_json");
    const auto report = blindid::verify_pair(io::pair_from_json(io::parse(pair_json)),
                                             tolerance(tol));
    emit(io::to_json(report), out);
    if (certifies) *certifies = report.certifies_unidentifiability ? 1 : 0;
  });
}

bdid_status bdid_trials_json(const bdid_trial_config* config, const bdid_tolerance* tol,
                             char** out, int* all_passed) {
  return guard([&] {
    require(config, "config");
    require(config->suite, "suite");
    blindid::TrialConfig c;
    c.suite = blindid::parse_suite(config->suite);
    c.seed = config->seed;
    c.count = config->count;
    c.m_max = config->m_max;
    c.n_max = config->n_max;
    c.threads = config->threads;
    c.timing = config->timing != 0;
    c.tol = tolerance(tol);
    const auto report = blindid::run_trials(c);
    emit(io::to_json(report), out);
    if (all_passed) *all_passed = report.successes == report.rows.size() ? 1 : 0;
  });
}

bdid_status bdid_reproduce_paper_json(const char* fixture_json, char** out, int* all_passed) {
  return guard([&] {
    blindid::PaperInputs inputs = blindid::default_paper_inputs();
    if (fixture_json != nullptr) {
      inputs = io::paper_inputs_from_json(io::parse(fixture_json), std::move(inputs));
    }
    const auto report = blindid::reproduce_paper(inputs);
    emit(io::to_json(report), out);
    if (all_passed) *all_passed = report.passed ? 1 : 0;
  });
}

}  // extern "C"
