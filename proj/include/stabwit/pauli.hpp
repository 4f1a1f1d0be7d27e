// Copyright 2026 The stabwit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabwit {

using Complex = std::complex<double>;

/// Deterministic primality check by trial division. Meant for local
/// dimensions (small numbers), not cryptographic sizes.
inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

/// Integer power with overflow detection.
inline long long pow_ll(long long base, int exp) {
  if (base <= 0 || exp < 0) throw std::invalid_argument("pow_ll: bad arguments");
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (1LL << 62) / base) throw std::overflow_error("pow_ll: overflow");
    r *= base;
  }
  return r;
}

/// exp(2*pi*i*e/d), the e-th power of the primitive d-th root of unity.
inline Complex omega_power(int d, long long e) {
  long long r = e % d;
  if (r < 0) r += d;
  const double angle = 2.0 * M_PI * static_cast<double>(r) / d;
  return Complex(std::cos(angle), std::sin(angle));
}

/// An N-qudit Weyl-Heisenberg operator
///
///     w^phase * prod_s X_s^{x[s]} Z_s^{z[s]},    w = exp(2*pi*i/d),
///
/// stored exactly as exponent vectors over Z_d with d prime. Per site the
/// X factor is written to the left of the Z factor; all products below
/// normalize to this order. The phase is a single exponent of w, which is
/// closed under multiplication for operators of this form.
struct PauliWord {
  int d = 2;
  int phase = 0;        // exponent of w, reduced to [0, d)
  std::vector<int> x;   // X exponents per site, reduced to [0, d)
  std::vector<int> z;   // Z exponents per site, reduced to [0, d)

  PauliWord() = default;

  PauliWord(int d_, int n_sites) : d(d_), phase(0), x(n_sites, 0), z(n_sites, 0) {
    if (!is_prime(d_)) throw std::invalid_argument("PauliWord: d must be prime");
    if (n_sites < 1) throw std::invalid_argument("PauliWord: need at least one site");
  }

  int n_sites() const { return static_cast<int>(x.size()); }

  /// True iff both exponent vectors are zero (the word is w^phase * I).
  bool is_phase_times_identity() const {
    for (int e : x)
      if (e != 0) return false;
    for (int e : z)
      if (e != 0) return false;
    return true;
  }

  /// True iff the word is exactly the identity (zero phase included).
  bool is_identity() const { return phase == 0 && is_phase_times_identity(); }

  static PauliWord identity(int d, int n_sites) { return PauliWord(d, n_sites); }

  /// X_site^e on an otherwise trivial word. Sites are 1-based.
  static PauliWord x_op(int d, int n_sites, int site, int e = 1) {
    PauliWord w(d, n_sites);
    w.set_x(site, e);
    return w;
  }

  /// Z_site^e on an otherwise trivial word. Sites are 1-based.
  static PauliWord z_op(int d, int n_sites, int site, int e = 1) {
    PauliWord w(d, n_sites);
    w.set_z(site, e);
    return w;
  }

  void set_x(int site, int e) {
    check_site(site);
    x[site - 1] = mod_d(e);
  }

  void set_z(int site, int e) {
    check_site(site);
    z[site - 1] = mod_d(e);
  }

  void add_phase(long long e) { phase = mod_d(phase + e); }

  int mod_d(long long v) const {
    long long r = v % d;
    if (r < 0) r += d;
    return static_cast<int>(r);
  }

  bool operator==(const PauliWord& other) const {
    return d == other.d && phase == other.phase && x == other.x && z == other.z;
  }

 private:
  void check_site(int site) const {
    if (site < 1 || site > n_sites()) {
      throw std::out_of_range("PauliWord: site index " + std::to_string(site) +
                              " outside [1, " + std::to_string(n_sites()) + "]");
    }
  }
};

inline void check_same_space(const PauliWord& a, const PauliWord& b, const char* op) {
  if (a.d != b.d || a.n_sites() != b.n_sites()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (d=" +
                                std::to_string(a.d) + ",N=" + std::to_string(a.n_sites()) +
                                ") vs (d=" + std::to_string(b.d) + ",N=" +
                                std::to_string(b.n_sites()) + ")");
  }
}

/// Exact product a*b. Moving the Z block of `a` past the X block of `b`
/// contributes w^{z_a . x_b}; exponents add mod d.
inline PauliWord multiply(const PauliWord& a, const PauliWord& b) {
  check_same_space(a, b, "multiply");
  PauliWord r(a.d, a.n_sites());
  long long cross = 0;
  for (int s = 0; s < a.n_sites(); ++s) {
    cross += static_cast<long long>(a.z[s]) * b.x[s];
    r.x[s] = r.mod_d(a.x[s] + b.x[s]);
    r.z[s] = r.mod_d(a.z[s] + b.z[s]);
  }
  r.phase = r.mod_d(static_cast<long long>(a.phase) + b.phase + cross);
  return r;
}

/// tau with  a*b = w^tau * b*a,  computed as (z_a . x_b - x_a . z_b) mod d.
/// Independent of the phases of either word.
inline int commutation_exponent(const PauliWord& a, const PauliWord& b) {
  check_same_space(a, b, "commutation_exponent");
  long long t = 0;
  for (int s = 0; s < a.n_sites(); ++s) {
    t += static_cast<long long>(a.z[s]) * b.x[s] - static_cast<long long>(a.x[s]) * b.z[s];
  }
  return a.mod_d(t);
}

/// Commutation exponent of the single-site factors at `site` (1-based).
inline int site_commutation_exponent(const PauliWord& a, const PauliWord& b, int site) {
  check_same_space(a, b, "site_commutation_exponent");
  const int s = site - 1;
  long long t = static_cast<long long>(a.z[s]) * b.x[s] -
                static_cast<long long>(a.x[s]) * b.z[s];
  return a.mod_d(t);
}

/// a^n by repeated multiplication; a^0 is the identity, a^d is phase-only.
inline PauliWord power(const PauliWord& a, int n) {
  if (n < 0) throw std::invalid_argument("power: exponent must be nonnegative");
  PauliWord r = PauliWord::identity(a.d, a.n_sites());
  for (int i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

/// Adjoint word: (w^a X^x Z^z)^dagger = w^{-a + x.z} X^{-x} Z^{-z}.
inline PauliWord dagger(const PauliWord& a) {
  PauliWord r(a.d, a.n_sites());
  long long xz = 0;
  for (int s = 0; s < a.n_sites(); ++s) {
    xz += static_cast<long long>(a.x[s]) * a.z[s];
    r.x[s] = r.mod_d(-a.x[s]);
    r.z[s] = r.mod_d(-a.z[s]);
  }
  r.phase = r.mod_d(-static_cast<long long>(a.phase) + xz);
  return r;
}

/// Textual form, e.g. "w^2 X1 Z1^2 Z3". Factors are site-indexed, exponents
/// follow '^' and are omitted when 1; the identity prints as "1".
inline std::string to_text(const PauliWord& w) {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const std::string& tok) {
    if (!first) out << ' ';
    out << tok;
    first = false;
  };
  if (w.phase != 0) emit(w.phase == 1 ? "w" : "w^" + std::to_string(w.phase));
  for (int s = 0; s < w.n_sites(); ++s) {
    for (auto [sym, e] : {std::pair{'X', w.x[s]}, std::pair{'Z', w.z[s]}}) {
      if (e == 0) continue;
      std::string tok(1, sym);
      tok += std::to_string(s + 1);
      if (e != 1) tok += "^" + std::to_string(e);
      emit(tok);
    }
  }
  if (first) return "1";
  return out.str();
}

/// Parse the textual form produced by to_text. Repeated factors accumulate;
/// exponents are reduced mod d.
inline PauliWord parse_pauli(const std::string& text, int d, int n_sites) {
  PauliWord w(d, n_sites);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    size_t caret = tok.find('^');
    long long exp = 1;
    std::string head = tok;
    if (caret != std::string::npos) {
      head = tok.substr(0, caret);
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_pauli: bad exponent in '" + tok + "'");
      }
    }
    if (head == "w") {
      w.add_phase(exp);
      continue;
    }
    if (head.size() < 2 || (head[0] != 'X' && head[0] != 'Z')) {
      throw std::invalid_argument("parse_pauli: unknown factor '" + tok + "'");
    }
    int site = 0;
    try {
      site = std::stoi(head.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_pauli: bad site index in '" + tok + "'");
    }
    if (site < 1 || site > n_sites) {
      throw std::invalid_argument("parse_pauli: site " + std::to_string(site) +
                                  " outside [1, " + std::to_string(n_sites) + "]");
    }
    if (head[0] == 'X') {
      w.set_x(site, w.mod_d(w.x[site - 1] + exp));
    } else {
      w.set_z(site, w.mod_d(w.z[site - 1] + exp));
    }
  }
  return w;
}

}  // namespace stabwit
