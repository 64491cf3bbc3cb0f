#ifndef ALPHAFORM_IO_HPP
#define ALPHAFORM_IO_HPP

/// Serialization: graph JSON/text round-trip, polynomial and form rendering
/// in text, JSON and LaTeX.

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "forms.hpp"
#include "graph.hpp"

namespace af {

using nlohmann::json;

// --- graphs ---------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = g.vertex_count();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.tail, e.head});
  j["edges"] = std::move(edges);
  if (g.v_star() != g.vertex_count()) j["v_star"] = g.v_star();
  return j;
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph json needs 'vertices' and 'edges'");
  int n = j.at("vertices").get<int>();
  std::vector<EdgeDef> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json edge must be [tail, head]");
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  std::optional<int> vs;
  if (j.contains("v_star")) vs = j.at("v_star").get<int>();
  return Graph(n, std::move(edges), vs);
}

/// Plain text: first line "n m", then m lines "tail head".
inline std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const auto& e : g.edges()) os << e.tail << " " << e.head << "\n";
  return os.str();
}

inline Graph graph_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("graph text, line " + std::to_string(lineno) + ": " + msg);
  };
  int n = 0, m = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!(ls >> n >> m)) fail("expected 'n m'");
    break;
  }
  if (lineno == 0) throw std::invalid_argument("graph text, line 1: empty input");
  std::vector<EdgeDef> edges;
  while (static_cast<int>(edges.size()) < m) {
    if (!std::getline(is, line)) {
      ++lineno;
      fail("expected " + std::to_string(m) + " edge lines");
    }
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int t, h;
    if (!(ls >> t >> h)) fail("expected 'tail head'");
    edges.push_back({t, h});
  }
  return Graph(n, std::move(edges));
}

/// Accepts either format, dispatching on the first non-space byte.
inline Graph graph_from_string(const std::string& text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{')
    return graph_from_json(json::parse(text));
  return graph_from_text(text);
}

// --- polynomials ----------------------------------------------------------

/// JSON form: list of [[exponents], numerator, denominator] in canonical
/// (graded-lex descending) order.
inline json poly_to_json(const MPoly& p) {
  json out = json::array();
  std::vector<std::pair<Mono, Rational>> terms(p.terms().begin(), p.terms().end());
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    json mono = json::array();
    for (int e : it->first) mono.push_back(e);
    out.push_back({mono, boost::multiprecision::numerator(it->second).str(),
                   boost::multiprecision::denominator(it->second).str()});
  }
  return out;
}

inline std::string poly_to_latex(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Mono, Rational>> terms(p.terms().begin(), p.terms().end());
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Rational c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational ac = c < 0 ? Rational(-c) : c;
    bool has_vars = false;
    for (int e : it->first)
      if (e != 0) has_vars = true;
    auto num = boost::multiprecision::numerator(ac);
    auto den = boost::multiprecision::denominator(ac);
    if (den != 1) os << "\\tfrac{" << num.str() << "}{" << den.str() << "}";
    else if (num != 1 || !has_vars) os << num.str();
    for (size_t v = 0; v < it->first.size(); ++v) {
      int e = it->first[v];
      if (e == 0) continue;
      os << p.registry()->name(static_cast<int>(v));
      if (e != 1) os << "^{" << e << "}";
    }
  }
  return os.str();
}

// --- forms ----------------------------------------------------------------

inline std::string word_to_text(const Word& w, int da_limit) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += "^";
    Generator gen = Generator::decode(w[i], da_limit);
    out += (gen.is_da ? "da" : "dx") + std::to_string(gen.index);
  }
  return out;
}

inline std::string word_to_latex(const Word& w, int da_limit) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += " \\wedge ";
    Generator gen = Generator::decode(w[i], da_limit);
    out += (gen.is_da ? "da_{" : "dx_{") + std::to_string(gen.index) + "}";
  }
  return out;
}

inline std::string form_to_text(const DiffForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ") " << word_to_text(w, f.da_limit());
  }
  return os.str();
}

inline std::string form_to_latex(const DiffForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "\\left(" << poly_to_latex(c) << "\\right) " << word_to_latex(w, f.da_limit());
  }
  return os.str();
}

inline json form_to_json(const DiffForm& f) {
  json out = json::array();
  for (const auto& [w, c] : f.terms()) {
    json word = json::array();
    for (int g : w) word.push_back(g);
    out.push_back({{"word", word}, {"poly", poly_to_json(c)}});
  }
  return out;
}

inline std::string prefactor_to_latex(const ScalarPrefactor& p, bool with_pi) {
  auto half = [](int h) {
    if (h % 2 == 0) return std::to_string(h / 2);
    return std::to_string(h) + "/2";
  };
  std::ostringstream os;
  os << "\\left(" << p.coeff.str() << "\\right)";
  if (with_pi && p.pi_half != 0) os << " \\pi^{" << half(p.pi_half) << "}";
  if (p.psi_half != 0) os << " \\psi^{" << half(p.psi_half) << "}";
  for (size_t e = 0; e < p.a_half.size(); ++e)
    if (p.a_half[e] != 0) os << " a_{" << e + 1 << "}^{" << half(p.a_half[e]) << "}";
  return os.str();
}

inline json prefactor_to_json(const ScalarPrefactor& p) {
  json j;
  j["coeff_num"] = boost::multiprecision::numerator(p.coeff).str();
  j["coeff_den"] = boost::multiprecision::denominator(p.coeff).str();
  j["pi_half"] = p.pi_half;
  j["psi_half"] = p.psi_half;
  j["a_half"] = p.a_half;
  return j;
}

inline std::string alpha_to_text(const AlphaForm& a, bool with_pi = false) {
  if (a.is_zero()) {
    std::string out = "0";
    if (!a.note.empty()) out += " (" + a.note + ")";
    return out;
  }
  return a.prefactor.to_string(with_pi) + " * [ " + form_to_text(a.body) + " ]";
}

inline std::string alpha_to_latex(const AlphaForm& a, bool with_pi = false) {
  if (a.is_zero()) return "0";
  return prefactor_to_latex(a.prefactor, with_pi) + " \\left[ " + form_to_latex(a.body) +
         " \\right]";
}

inline json alpha_to_json(const AlphaForm& a, bool with_pi = false) {
  json j;
  j["prefactor"] = prefactor_to_json(a.prefactor);
  if (!with_pi) j["prefactor"].erase("pi_half");
  j["terms"] = form_to_json(a.body);
  j["pipeline"] = a.pipeline;
  j["v_star"] = a.v_star;
  j["loops"] = a.loops;
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

}  // namespace af

#endif
