#pragma once

// Line-oriented circuit description:
//
//   # comment
//   QUBITS 3
//   H 1
//   R 2 pi/4
//   CNOT 1 3            control first
//   CPHASE 1 2 -pi/2    control, target, angle
//   TOFFOLI 1 2 3       controls first, target last
//   PHASESHIFT 1 0.5    passive message rotation, radians
//
// Angles are decimal radians or pi, -pi, pi/<k>, -pi/<k>. Mnemonics are
// case-insensitive. LF and CRLF line endings are accepted.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dlmq/errors.hpp"
#include "dlmq/gates.hpp"

namespace dlmq {

struct CircuitDescription {
  std::size_t num_qubits = 1;
  std::vector<GateSpec> gates;

  friend bool operator==(const CircuitDescription&,
                         const CircuitDescription&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::string upper(std::string_view s) {
  std::string u(s);
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses an angle token: decimal radians, pi, -pi, pi/<k> or -pi/<k>.
inline std::optional<double> parse_angle(std::string_view tok) {
  double sign = 1.0;
  std::string_view t = tok;
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
    sign = t.front() == '-' ? -1.0 : 1.0;
    t.remove_prefix(1);
  }
  const std::string u = detail::upper(t);
  if (u.rfind("PI", 0) == 0) {
    std::string_view rest = std::string_view(u).substr(2);
    if (rest.empty()) return sign * std::numbers::pi;
    if (rest.front() != '/') return std::nullopt;
    const auto k = detail::parse_index(rest.substr(1));
    if (!k || *k == 0) return std::nullopt;
    return sign * std::numbers::pi / static_cast<double>(*k);
  }
  return detail::parse_double(tok);
}

inline CircuitDescription parse_circuit(std::string_view text) {
  CircuitDescription c;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos <= text.size()) {
    // A final newline does not open another line.
    if (pos == text.size() && line_no > 0) break;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto toks = detail::split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const std::string head = detail::upper(toks[0]);
    if (head == "QUBITS") {
      if (have_header) throw ParseError(line_no, "duplicate QUBITS header");
      if (toks.size() != 2) throw ParseError(line_no, "QUBITS takes one count");
      const auto n = detail::parse_index(toks[1]);
      if (!n || *n < 1 || *n > kMaxQubits)
        throw ParseError(line_no, "qubit count must be an integer in [1, " +
                                      std::to_string(kMaxQubits) + "], got '" +
                                      std::string(toks[1]) + "'");
      c.num_qubits = *n;
      have_header = true;
    } else {
      if (!have_header)
        throw ParseError(line_no, "missing QUBITS header before first gate");
      const auto kind = gate_kind_from(head);
      if (!kind)
        throw ParseError(line_no, "unknown mnemonic '" + std::string(toks[0]) + "'");
      const std::size_t nq = arity(*kind);
      const std::size_t expected = 1 + nq + (takes_angle(*kind) ? 1 : 0);
      if (toks.size() != expected)
        throw ParseError(line_no, std::string(mnemonic(*kind)) + " expects " +
                                      std::to_string(nq) + " qubit(s)" +
                                      (takes_angle(*kind) ? " and an angle" : "") +
                                      ", got " + std::to_string(toks.size() - 1) +
                                      " argument(s)");
      GateSpec g{*kind, {}, std::nullopt};
      for (std::size_t i = 1; i <= nq; ++i) {
        const auto q = detail::parse_index(toks[i]);
        if (!q)
          throw ParseError(line_no, "bad qubit index '" + std::string(toks[i]) + "'");
        if (*q < 1 || *q > c.num_qubits)
          throw ParseError(line_no, "qubit " + std::to_string(*q) +
                                        " out of range [1, " +
                                        std::to_string(c.num_qubits) + "]");
        for (std::size_t prev : g.qubits)
          if (prev == *q)
            throw ParseError(line_no, "qubit " + std::to_string(*q) + " used twice");
        g.qubits.push_back(*q);
      }
      if (takes_angle(*kind)) {
        g.angle = parse_angle(toks.back());
        if (!g.angle)
          throw ParseError(line_no, "malformed angle '" + std::string(toks.back()) + "'");
      }
      c.gates.push_back(std::move(g));
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing QUBITS header");
  return c;
}

/// Canonical text form; parse_circuit(render_circuit(c)) == c.
inline std::string render_circuit(const CircuitDescription& c) {
  std::ostringstream out;
  out << "QUBITS " << c.num_qubits << '\n';
  for (const GateSpec& g : c.gates) {
    out << mnemonic(g.kind);
    for (std::size_t q : g.qubits) out << ' ' << q;
    if (g.angle) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", *g.angle);
      out << ' ' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dlmq
