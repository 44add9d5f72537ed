// Copyright 2026 The aqclab Authors
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

#pragma once

// Small gate-model circuits over explicit 1- and 2-qubit unitaries.
//
// A gate acting on targets (t0, t1) uses the local basis index
// b(t0) + 2 b(t1), so t0 is the low bit, matching the global convention
// that qubit 0 is the least significant bit of a basis index.

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/QR>

#include "aqclab/core/common.hpp"
#include "aqclab/core/operator.hpp"
#include "aqclab/core/random.hpp"

namespace aqc {

struct Gate {
  std::string name;
  CMatrix unitary;
  std::vector<int> targets;

  int arity() const { return static_cast<int>(targets.size()); }
};

namespace gates {

inline CMatrix identity1() { return CMatrix::Identity(2, 2); }

inline CMatrix hadamard() {
  CMatrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline CMatrix phase_s() {
  CMatrix m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

inline CMatrix phase_t() {
  CMatrix m(2, 2);
  m << 1, 0, 0, std::polar(1.0, M_PI / 4);
  return m;
}

/// Control is the first target (local bit 0), the flipped qubit the second.
inline CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(2, 2) = 1;
  m(3, 1) = m(1, 3) = 1;
  return m;
}

inline CMatrix cz() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

inline CMatrix swap() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

/// Phase oracle flipping the sign of one basis element of the target register.
inline CMatrix mark(int arity, Index element) {
  const Index d = Index{1} << arity;
  if (element < 0 || element >= d) throw InvalidArgument("marked element out of range");
  CMatrix m = CMatrix::Identity(d, d);
  m(element, element) = -1;
  return m;
}

/// Inversion about the mean, 2|u><u| - I.
inline CMatrix diffusion(int arity) {
  const Index d = Index{1} << arity;
  return CMatrix::Constant(d, d, 2.0 / static_cast<double>(d)) - CMatrix::Identity(d, d);
}

}  // namespace gates

inline double unitarity_error(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

/// Applies a 1- or 2-qubit gate in place to an n-qubit amplitude vector.
inline void apply_gate(CVector& v, const Gate& g) {
  if (g.arity() == 1) {
    const Index bit = Index{1} << g.targets[0];
    const CMatrix& u = g.unitary;
    for (Index b = 0; b < v.size(); ++b) {
      if (b & bit) continue;
      const cplx a0 = v[b], a1 = v[b | bit];
      v[b] = u(0, 0) * a0 + u(0, 1) * a1;
      v[b | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return;
  }
  const Index b0 = Index{1} << g.targets[0], b1 = Index{1} << g.targets[1];
  const CMatrix& u = g.unitary;
  for (Index b = 0; b < v.size(); ++b) {
    if (b & (b0 | b1)) continue;
    const Index idx[4] = {b, b | b0, b | b1, b | b0 | b1};
    cplx in[4];
    for (int k = 0; k < 4; ++k) in[k] = v[idx[k]];
    for (int r = 0; r < 4; ++r) {
      cplx s = 0.0;
      for (int c = 0; c < 4; ++c) s += u(r, c) * in[c];
      v[idx[r]] = s;
    }
  }
}

class QuantumCircuit {
 public:
  QuantumCircuit() = default;
  explicit QuantumCircuit(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kDenseCutoffQubits) throw InvalidArgument("circuit needs 1 <= n <= 12 qubits");
  }

  int n_qubits() const { return n_; }
  /// Number of gates L.
  int length() const { return static_cast<int>(gates_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(int l) const { return gates_.at(static_cast<std::size_t>(l)); }

  QuantumCircuit& add(std::string name, CMatrix u, std::vector<int> targets) {
    if (targets.empty() || targets.size() > 2) throw InvalidArgument("gates act on one or two qubits");
    const Index d = Index{1} << targets.size();
    if (u.rows() != d || u.cols() != d)
      throw InvalidArgument("gate " + name + " must be " + std::to_string(d) + "x" + std::to_string(d));
    for (int t : targets)
      if (t < 0 || t >= n_) throw InvalidArgument("gate " + name + " target " + std::to_string(t) + " out of range");
    if (targets.size() == 2 && targets[0] == targets[1]) throw InvalidArgument("gate " + name + " repeats a target");
    const double err = unitarity_error(u);
    if (err > 1e-12) throw InvalidArgument("gate " + name + " is not unitary (error " + std::to_string(err) + ")");
    gates_.push_back({std::move(name), std::move(u), std::move(targets)});
    return *this;
  }

  QuantumCircuit& h(int q) { return add("H", gates::hadamard(), {q}); }
  QuantumCircuit& x(int q) { return add("X", gates::pauli_x(), {q}); }
  QuantumCircuit& z(int q) { return add("Z", gates::pauli_z(), {q}); }
  QuantumCircuit& id(int q) { return add("I", gates::identity1(), {q}); }
  QuantumCircuit& cnot(int control, int target) { return add("CNOT", gates::cnot(), {control, target}); }

  /// Applies gates [0, upto) to the input.
  CVector run(const CVector& input, int upto = -1) const {
    if (input.size() != (Index{1} << n_)) throw InvalidArgument("input dimension does not match the circuit");
    if (upto < 0) upto = length();
    CVector v = input;
    for (int l = 0; l < upto; ++l) apply_gate(v, gates_[static_cast<std::size_t>(l)]);
    return v;
  }

  /// Full 2^n x 2^n matrix of gate l.
  CMatrix gate_matrix(int l) const {
    const Index d = Index{1} << n_;
    CMatrix m(d, d);
    for (Index c = 0; c < d; ++c) {
      CVector e = CVector::Zero(d);
      e[c] = 1.0;
      apply_gate(e, gate(l));
      m.col(c) = e;
    }
    return m;
  }

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

/// Two-qubit Grover search for one marked element: H on both qubits, a phase
/// oracle, then inversion about the mean.
inline QuantumCircuit grover_circuit(Index marked = 2) {
  QuantumCircuit c(2);
  c.h(0).h(1);
  c.add("MARK", gates::mark(2, marked), {0, 1});
  c.add("DIFFUSE", gates::diffusion(2), {0, 1});
  return c;
}

/// Haar-random unitary via QR of a complex Gaussian matrix with phase fix.
inline CMatrix random_unitary(Index d, Rng& rng) {
  CMatrix z(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) z(i, j) = cplx(standard_normal(rng), standard_normal(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  // Re-orthonormalize to push the unitarity error well under 1e-12.
  Eigen::HouseholderQR<CMatrix> again(q);
  CMatrix q2 = again.householderQ();
  const CMatrix r2 = again.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) q2.col(j) *= r2(j, j) / std::abs(r2(j, j));
  return q2;
}

/// L random gates, each a Haar 1-qubit gate or (when n >= 2, with
/// probability one half) a Haar 2-qubit gate on random distinct targets.
inline QuantumCircuit random_circuit(int n, int L, Rng& rng) {
  QuantumCircuit c(n);
  for (int l = 0; l < L; ++l) {
    if (n >= 2 && bernoulli(rng, 0.5)) {
      const int a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      c.add("U", random_unitary(4, rng), {a, b});
    } else {
      const int a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
      c.add("U", random_unitary(2, rng), {a});
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   qubits 2
//   H 0
//   CNOT 0 1
//   MARK[2] 0 1
//   DIFFUSE 0 1
//   U 0 : 0 1 1 0                        (row-major, 4 entries)
//   U 0 1 : 1 0 0 0  0 1 0 0  0 0 0 1  0 0 1 0
//
// Complex entries: 0.5, -1e-3, 2i, -i, 0.5+0.5i, 1-2i.

class CircuitParseError : public InvalidArgument {
 public:
  CircuitParseError(int line, int column, const std::string& what)
      : InvalidArgument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == ':') {
      out.push_back({":", static_cast<int>(i + 1)});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ':' && line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start + 1)});
  }
  return out;
}

inline bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

inline bool parse_complex(std::string_view s, cplx& out) {
  if (s.empty()) return false;
  if (s.back() != 'i' && s.back() != 'j') {
    double re;
    if (!parse_real(s, re)) return false;
    out = re;
    return true;
  }
  std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  std::string_view imag = body;
  if (split != std::string_view::npos) {
    if (!parse_real(body.substr(0, split), re)) return false;
    imag = body.substr(split);
  }
  if (imag.empty() || imag == "+") im = 1.0;
  else if (imag == "-") im = -1.0;
  else if (!parse_real(imag, im)) return false;
  out = cplx(re, im);
  return true;
}

inline CMatrix named_gate(const std::string& base, const std::string& param, int arity, bool has_param, int line,
                          int column) {
  auto need = [&](int a) {
    if (arity != a)
      throw CircuitParseError(line, column, base + " takes " + std::to_string(a) + " target(s), got " +
                                                std::to_string(arity));
  };
  auto no_param = [&] {
    if (has_param) throw CircuitParseError(line, column, base + " takes no parameter");
  };
  if (base == "MARK") {
    if (!has_param) throw CircuitParseError(line, column, "MARK needs an element, e.g. MARK[2]");
    if (arity < 1 || arity > 2) throw CircuitParseError(line, column, "MARK takes one or two targets");
    int e = 0;
    const auto r = std::from_chars(param.data(), param.data() + param.size(), e);
    if (r.ec != std::errc{} || r.ptr != param.data() + param.size() || e < 0 || e >= (1 << arity))
      throw CircuitParseError(line, column, "MARK element out of range: " + param);
    return gates::mark(arity, e);
  }
  no_param();
  if (base == "DIFFUSE") {
    if (arity < 1 || arity > 2) throw CircuitParseError(line, column, "DIFFUSE takes one or two targets");
    return gates::diffusion(arity);
  }
  if (base == "CNOT" || base == "CX") return need(2), gates::cnot();
  if (base == "CZ") return need(2), gates::cz();
  if (base == "SWAP") return need(2), gates::swap();
  need(1);
  if (base == "I") return gates::identity1();
  if (base == "H") return gates::hadamard();
  if (base == "X") return gates::pauli_x();
  if (base == "Y") return gates::pauli_y();
  if (base == "Z") return gates::pauli_z();
  if (base == "S") return gates::phase_s();
  if (base == "T") return gates::phase_t();
  throw CircuitParseError(line, column, "unknown gate '" + base + "'");
}

}  // namespace detail

inline QuantumCircuit parse_circuit(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::optional<QuantumCircuit> circ;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    const auto& head = toks[0];
    if (!circ) {
      if (head.text != "qubits") throw CircuitParseError(line_no, head.column, "expected 'qubits N' first");
      if (toks.size() != 2) throw CircuitParseError(line_no, head.column, "expected 'qubits N'");
      int n = 0;
      const auto& t = toks[1].text;
      const auto r = std::from_chars(t.data(), t.data() + t.size(), n);
      if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || n < 1 || n > kDenseCutoffQubits)
        throw CircuitParseError(line_no, toks[1].column, "qubit count must be an integer in [1, 12]");
      circ.emplace(n);
      continue;
    }
    if (head.text == "qubits") throw CircuitParseError(line_no, head.column, "qubit count given twice");

    std::string base = head.text, param;
    bool has_param = false;
    if (const auto lb = base.find('['); lb != std::string::npos) {
      if (base.back() != ']') throw CircuitParseError(line_no, head.column, "unterminated '[' in gate name");
      param = base.substr(lb + 1, base.size() - lb - 2);
      base = base.substr(0, lb);
      has_param = true;
    }
    for (char& ch : base) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));

    std::vector<int> targets;
    std::size_t k = 1;
    for (; k < toks.size() && toks[k].text != ":"; ++k) {
      int q = 0;
      const auto& t = toks[k].text;
      const auto r = std::from_chars(t.data(), t.data() + t.size(), q);
      if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw CircuitParseError(line_no, toks[k].column, "expected a qubit index, got '" + t + "'");
      if (q < 0 || q >= circ->n_qubits())
        throw CircuitParseError(line_no, toks[k].column, "qubit " + t + " out of range");
      targets.push_back(q);
    }
    if (targets.empty()) throw CircuitParseError(line_no, head.column, "gate has no targets");
    if (targets.size() > 2) throw CircuitParseError(line_no, toks[3].column, "gates act on at most two qubits");
    if (targets.size() == 2 && targets[0] == targets[1])
      throw CircuitParseError(line_no, toks[2].column, "repeated target");

    CMatrix u;
    if (base == "U") {
      if (k == toks.size()) throw CircuitParseError(line_no, head.column, "explicit gate needs ': entries'");
      const Index d = Index{1} << targets.size();
      const std::size_t first = k + 1;
      if (toks.size() - first != static_cast<std::size_t>(d * d))
        throw CircuitParseError(line_no, toks[k].column,
                                "expected " + std::to_string(d * d) + " entries, got " +
                                    std::to_string(toks.size() - first));
      u.resize(d, d);
      for (Index e = 0; e < d * d; ++e) {
        const auto& t = toks[first + static_cast<std::size_t>(e)];
        cplx z;
        if (!detail::parse_complex(t.text, z))
          throw CircuitParseError(line_no, t.column, "bad complex number '" + t.text + "'");
        u(e / d, e % d) = z;
      }
    } else {
      if (k != toks.size()) throw CircuitParseError(line_no, toks[k].column, "named gates take no matrix");
      u = detail::named_gate(base, param, static_cast<int>(targets.size()), has_param, line_no, head.column);
    }
    const double err = unitarity_error(u);
    if (err > 1e-12)
      throw CircuitParseError(line_no, head.column, "gate is not unitary (error " + std::to_string(err) + ")");
    circ->add(head.text, std::move(u), std::move(targets));
  }
  if (!circ) throw CircuitParseError(line_no + 1, 1, "missing 'qubits N'");
  return *circ;
}

inline QuantumCircuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

inline QuantumCircuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open circuit file " + path);
  return parse_circuit(in);
}

}  // namespace aqc
