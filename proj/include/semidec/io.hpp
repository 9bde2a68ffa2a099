#pragma once

// JSON and CSV exchange formats.
//
// Form payload:
//   {"degree": 1, "extents": [2, 2], "periodic": [true, true],
//    "components": {"1": [...], "2": [...]}}
// Each component array is row-major over the lattice with the first axis
// slowest. Only "components" is required when the lattice and degree are
// known from context.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "semidec/errors.hpp"
#include "semidec/form.hpp"
#include "semidec/maxwell.hpp"
#include "semidec/torus.hpp"

namespace semidec::io {

using json = nlohmann::json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// Member `key` of object `j`, or ParseError naming the JSON path.
inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key + ": missing");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback,
                        const std::string& path) {
  if (!j.contains(key)) return fallback;
  return number(j.at(key), path + "/" + key);
}

template <int Dim>
json lattice_to_json(const Lattice<Dim>& L) {
  return {{"extents", L.extents()}, {"periodic", L.periodic()}};
}

/// {"extents": [...], "periodic": true | [bools]}
inline std::vector<int> extents_from_json(const json& j, const std::string& path) {
  const json& e = require(j, "extents", path);
  if (!e.is_array() || e.empty()) throw ParseError(path + "/extents: expected a non-empty array");
  std::vector<int> out;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (!e[a].is_number_integer())
      throw ParseError(path + "/extents/" + std::to_string(a) + ": expected an integer");
    out.push_back(e[a].get<int>());
  }
  return out;
}

template <int Dim>
Lattice<Dim> lattice_from_json(const json& j, const std::string& path) {
  const std::vector<int> e = extents_from_json(j, path);
  if (e.size() != Dim)
    throw ValidationError(path + "/extents: expected " + std::to_string(Dim) + " entries");
  std::array<int, Dim> extents{};
  std::array<bool, Dim> periodic{};
  periodic.fill(true);
  for (int a = 0; a < Dim; ++a) extents[a] = e[a];
  if (j.contains("periodic")) {
    const json& p = j.at("periodic");
    if (p.is_boolean()) {
      periodic.fill(p.get<bool>());
    } else if (p.is_array() && p.size() == Dim) {
      for (int a = 0; a < Dim; ++a) {
        if (!p[a].is_boolean())
          throw ParseError(path + "/periodic/" + std::to_string(a) + ": expected a boolean");
        periodic[a] = p[a].get<bool>();
      }
    } else {
      throw ParseError(path + "/periodic: expected a boolean or " + std::to_string(Dim) +
                       " booleans");
    }
  }
  return Lattice<Dim>(extents, periodic);
}

template <int Dim>
json form_to_json(const DiscreteForm<Dim>& f) {
  json j = lattice_to_json(f.lattice());
  j["degree"] = f.degree();
  json comps = json::object();
  for (Signature s : f.signatures()) {
    auto c = f.component(s);
    comps[s.label()] = std::vector<double>(c.begin(), c.end());
  }
  j["components"] = std::move(comps);
  return j;
}

/// Read the components of a degree-r form on L. Missing components are zero.
template <int Dim>
DiscreteForm<Dim> form_from_json(const json& j, const Lattice<Dim>& L, int degree,
                                 const std::string& path) {
  if (j.contains("degree") && (!j["degree"].is_number_integer() || j["degree"].get<int>() != degree))
    throw ValidationError(path + "/degree: expected " + std::to_string(degree));
  if (j.contains("extents") && !(lattice_from_json<Dim>(j, path) == L))
    throw TopologyMismatch(path + ": lattice differs from the scenario lattice");
  DiscreteForm<Dim> f(L, degree);
  const json& comps = require(j, "components", path);
  if (!comps.is_object()) throw ParseError(path + "/components: expected an object");
  for (const auto& [label, values] : comps.items()) {
    const std::string where = path + "/components/" + label;
    Signature s;
    try {
      s = parse_signature<Dim>(label);
    } catch (const ValidationError&) {
      throw ValidationError(where + ": not a cell signature in dimension " + std::to_string(Dim));
    }
    if (s.degree() != degree)
      throw ValidationError(where + ": signature has degree " + std::to_string(s.degree()) +
                            ", expected " + std::to_string(degree));
    if (!values.is_array()) throw ParseError(where + ": expected an array");
    auto dst = f.component(s);
    if (values.size() != dst.size())
      throw ValidationError(where + ": expected " + std::to_string(dst.size()) + " values, got " +
                            std::to_string(values.size()));
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = number(values[i], where + "/" + std::to_string(i));
  }
  return f;
}

inline json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(filename + ": " + e.what());
  }
}

inline void write_text_file(const std::string& filename, const std::string& text) {
  std::ofstream out(filename);
  if (!out) throw ValidationError(filename + ": cannot write");
  out << text;
}

// ---------------------------------------------------------------------------
// Column labels

/// 1-based cell label, digits run together when every extent is below 10
/// ("21"), otherwise dot separated ("2.11").
template <int Dim>
std::string cell_label(const Lattice<Dim>& L, const std::type_identity_t<CellIndex<Dim>>& i) {
  bool compact = true;
  for (int e : L.extents()) compact = compact && e < 10;
  std::string out;
  for (int a = 0; a < Dim; ++a) {
    if (!compact && a > 0) out += '.';
    out += std::to_string(i[a] + 1);
  }
  return out;
}

/// "E1_21", "H_11", "B12_111".
template <int Dim>
std::string component_label(char field, Signature s, const Lattice<Dim>& L,
                            const std::type_identity_t<CellIndex<Dim>>& i) {
  std::string out(1, field);
  if (s.degree() > 0) out += s.label();
  return out + "_" + cell_label(L, i);
}

/// A named scalar column of a field snapshot.
struct Column {
  std::string label;
  char field;
  Signature signature;
  std::vector<int> cell;
};

/// True for the periodic 2x2 lattice, where the columns follow [EH].
inline bool is_torus(const Lattice<2>& L) { return L == torus::torus_lattice(); }
inline bool is_torus(const Lattice<3>&) { return false; }

/// E and H columns. Signatures ascend, cells run with the first axis
/// fastest; on the 2x2 torus the order is [EH].
template <int Dim>
std::vector<Column> field_columns(const Lattice<Dim>& L) {
  std::vector<Column> cols;
  if constexpr (Dim == 2) {
    if (is_torus(L)) {
      for (const auto& c : torus::eh_ordering()) {
        const Signature s = c.field == 'E' ? Signature::axes({c.component}) : Signature::point();
        cols.push_back({c.text(), c.field, s, {c.k - 1, c.s - 1}});
      }
      return cols;
    }
  }
  const std::size_t n = L.cell_count();
  auto cells_first_fastest = [&] {
    std::vector<CellIndex<Dim>> out;
    out.reserve(n);
    CellIndex<Dim> i{};
    for (std::size_t c = 0; c < n; ++c) {
      out.push_back(i);
      for (int a = 0; a < Dim; ++a) {
        if (++i[a] < L.extents()[a]) break;
        i[a] = 0;
      }
    }
    return out;
  }();
  for (auto [field, degree] : {std::pair{'E', FieldDegrees<Dim>::E}, std::pair{'H', FieldDegrees<Dim>::H}})
    for (Signature s : signatures_of_degree<Dim>(degree))
      for (const auto& i : cells_first_fastest)
        cols.push_back({component_label(field, s, L, i), field, s, std::vector<int>(i.begin(), i.end())});
  return cols;
}

template <int Dim>
double column_value(const Column& c, const FieldState<Dim>& s) {
  CellIndex<Dim> i{};
  for (int a = 0; a < Dim; ++a) i[a] = c.cell[a];
  return (c.field == 'E' ? s.E : s.H)(c.signature, i);
}

/// Wide CSV: t followed by one column per label.
template <int Dim>
void write_trajectory_csv(std::ostream& out, const std::vector<Column>& cols,
                          const std::vector<FieldState<Dim>>& states) {
  out << "t";
  for (const auto& c : cols) out << ',' << c.label;
  out << '\n';
  for (const auto& s : states) {
    out << format_double(s.t);
    for (const auto& c : cols) out << ',' << format_double(column_value(c, s));
    out << '\n';
  }
}

/// Long CSV (t, component, value), one row per scalar, for plotting tools.
template <int Dim>
void write_plot_csv(std::ostream& out, const std::vector<Column>& cols,
                    const std::vector<FieldState<Dim>>& states) {
  out << "t,component,value\n";
  for (const auto& s : states)
    for (const auto& c : cols)
      out << format_double(s.t) << ',' << c.label << ',' << format_double(column_value(c, s)) << '\n';
}

inline json matrix_to_json(const torus::IntMatrix& m) { return m; }

}  // namespace semidec::io
