#pragma once

// JSON forms of points, group elements and Cartan parameters, plus report
// headers. Doubles are written in shortest round-trip form, so
// parse(dump(v)) == v bit for bit.

#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/types.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#ifndef LTK_VERSION
#define LTK_VERSION "0.1.0"
#endif

namespace ltk {

using json = nlohmann::json;

inline constexpr const char* kVersion = LTK_VERSION;

class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error("field \"" + field + "\": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline const json& require_field(const json& j, const std::string& key) {
  if (!j.is_object()) throw ParseError(key, "input is not a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(key, "missing");
  return *it;
}

inline int read_positive_int(const json& j, const std::string& key, int min_value) {
  const json& v = require_field(j, key);
  if (!v.is_number_integer()) throw ParseError(key, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < min_value) throw ParseError(key, "must be >= " + std::to_string(min_value));
  return static_cast<int>(x);
}

inline RMatrix read_real_matrix(const json& j, const std::string& key, Eigen::Index rows,
                                Eigen::Index cols) {
  const json& v = require_field(j, key);
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows) {
    throw ParseError(key, "expected " + std::to_string(rows) + " rows");
  }
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(key, "row " + std::to_string(i) + " must have " + std::to_string(cols) +
                                " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) {
        throw ParseError(key, "entry (" + std::to_string(i) + "," + std::to_string(c) +
                                  ") is not a finite number");
      }
      const double x = e.get<double>();
      if (!std::isfinite(x)) {
        throw ParseError(key, "entry (" + std::to_string(i) + "," + std::to_string(c) +
                                  ") is not finite");
      }
      m(i, c) = x;
    }
  }
  return m;
}

inline json write_real_matrix(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline json to_json(const ConfigPoint& z) {
  return json{{"n", z.dim_n()},
              {"N", z.copies()},
              {"re", detail::write_real_matrix(z.re())},
              {"im", detail::write_real_matrix(z.im())}};
}

inline ConfigPoint config_point_from_json(const json& j) {
  const int n = detail::read_positive_int(j, "n", 1);
  const int copies = detail::read_positive_int(j, "N", 1);
  const RMatrix re = detail::read_real_matrix(j, "re", n + 1, copies);
  const RMatrix im = detail::read_real_matrix(j, "im", n + 1, copies);
  return ConfigPoint(re, im);
}

inline json to_json(const GroupElement& g) {
  return json{{"n", g.dim_n()},
              {"matrix_re", detail::write_real_matrix(g.matrix().real())},
              {"matrix_im", detail::write_real_matrix(g.matrix().imag())},
              {"classification", to_string(g.classification())},
              {"residual", g.residual()}};
}

inline GroupElement group_element_from_json(const json& j) {
  const int n = detail::read_positive_int(j, "n", 1);
  const RMatrix re = detail::read_real_matrix(j, "matrix_re", n + 1, n + 1);
  const RMatrix im = detail::read_real_matrix(j, "matrix_im", n + 1, n + 1);
  CMatrix m(n + 1, n + 1);
  m.real() = re;
  m.imag() = im;
  return validate_group(m);
}

inline json to_json(const CartanParams& p) {
  json j{{"variant", to_string(p.variant)}};
  if (p.circle) j["circle"] = json::array({p.circle->first, p.circle->second});
  json hyp = json::array();
  for (const auto& [c, d] : p.hyperbolas) hyp.push_back(json::array({c, d}));
  j["hyperbolas"] = std::move(hyp);
  return j;
}

inline CartanVariant cartan_variant_from_string(const std::string& s) {
  if (s == "H0") return CartanVariant::H0;
  if (s == "H1") return CartanVariant::H1;
  if (s == "H2") return CartanVariant::H2;
  throw ParseError("variant", "expected one of H0, H1, H2");
}

inline CartanParams cartan_params_from_json(const json& j) {
  const json& v = detail::require_field(j, "variant");
  if (!v.is_string()) throw ParseError("variant", "expected a string");
  CartanParams p;
  p.variant = cartan_variant_from_string(v.get<std::string>());
  auto read_pair = [](const json& e, const std::string& field) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(field, "expected a pair of numbers");
    }
    const double a = e[0].get<double>(), b = e[1].get<double>();
    if (!std::isfinite(a) || !std::isfinite(b)) throw ParseError(field, "not finite");
    return std::make_pair(a, b);
  };
  if (p.variant != CartanVariant::H2) p.circle = read_pair(detail::require_field(j, "circle"), "circle");
  const json& hyp = detail::require_field(j, "hyperbolas");
  if (!hyp.is_array()) throw ParseError("hyperbolas", "expected an array of pairs");
  for (const auto& e : hyp) p.hyperbolas.push_back(read_pair(e, "hyperbolas"));
  return p;
}

inline json tolerance_json(const Tolerance& tol) {
  return json{{"abs_tol", tol.abs_tol}, {"rel_tol", tol.rel_tol}};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Common report header. The timestamp is the only field that varies between
// identical runs.
inline json report_header(const std::string& command, std::uint64_t seed, const Tolerance& tol) {
  return json{{"command", command},
              {"version", kVersion},
              {"seed", seed},
              {"tolerance", tolerance_json(tol)},
              {"timestamp", utc_timestamp()}};
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, std::string("malformed JSON: ") + e.what());
  }
}

// "-" reads standard input.
inline json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("--in", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_json_text(text, path == "-" ? "<stdin>" : path);
}

inline void write_json_output(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace ltk
