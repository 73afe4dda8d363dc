#pragma once

// JSON (de)serialization for the CLI and golden-file tests.
//
// Formats:
//   ExteriorElement   {"n": 4, "terms": {"1,2,4": "3/2", "": "1"}}
//   AssociativeAlgebraDef
//                     {"dim": n, "product": [[i,j,k,"coef"],...],
//                      "unit": ["c1",...], "trace": ["t1",...]}
//   LieAlgebraDef     {"dim": n, "bracket": [[i,j,k,"coef"],...],
//                      "gram": [["a","b"],...]}
//   SkewMap           {"n":, "arity":, "entries": [[[i...], out, "coef"],...]}
//   BettiTable        {"step":, "dims":, "d_ranks":, "betti":}

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gla/cohomology.hpp"
#include "gla/exterior.hpp"
#include "gla/multimap.hpp"
#include "gla/quadratic.hpp"
#include "gla/scalar.hpp"

namespace gla {

using nlohmann::json;

inline std::string mask_key(Mask m) {
  std::string out;
  for (int g : mask_indices(m)) {
    if (!out.empty()) out += ',';
    out += std::to_string(g);
  }
  return out;
}

inline Mask parse_mask_key(const std::string& key, int n) {
  if (key.empty()) return 0;
  Mask m = 0;
  std::istringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    int g = std::stoi(part);
    if (g < 1 || g > n) throw std::invalid_argument("generator index out of range");
    Mask bit = Mask{1} << (g - 1);
    if (m & bit) throw std::invalid_argument("repeated generator index");
    m |= bit;
  }
  return m;
}

inline json to_json(const ExteriorElement& a) {
  json terms = json::object();
  for (const auto& [m, c] : a.terms()) terms[mask_key(m)] = c.str();
  return json{{"n", a.n()}, {"terms", terms}};
}

inline ExteriorElement exterior_from_json(const json& j) {
  ExteriorElement a(j.at("n").get<int>());
  for (const auto& [key, val] : j.at("terms").items())
    a.add(parse_mask_key(key, a.n()), Scalar::parse(val.get<std::string>()));
  return a;
}

inline json to_json(const SkewMap& f) {
  json entries = json::array();
  for (const auto& [u, vec] : f.table())
    for (const auto& [out, c] : vec) entries.push_back(json{u, out, c.str()});
  return json{{"n", f.n()}, {"arity", f.arity()}, {"entries", entries}};
}

inline SkewMap skew_from_json(const json& j) {
  SkewMap f(j.at("n").get<int>(), j.at("arity").get<int>());
  for (const auto& e : j.at("entries"))
    f.add(e.at(0).get<std::vector<int>>(), e.at(1).get<int>(),
          Scalar::parse(e.at(2).get<std::string>()));
  return f;
}

inline json to_json(const MultiMap& f) {
  json entries = json::array();
  for (const auto& [u, vec] : f.table())
    for (const auto& [out, c] : vec) entries.push_back(json{u, out, c.str()});
  return json{{"n", f.n()}, {"arity", f.arity()}, {"entries", entries}};
}

inline json to_json(const AssociativeAlgebraDef& alg) {
  json product = json::array();
  for (int i = 1; i <= alg.n(); ++i)
    for (int j = 1; j <= alg.n(); ++j)
      for (const auto& [k, c] : alg.mul_basis(i, j))
        product.push_back(json{i, j, k, c.str()});
  json out{{"dim", alg.n()}, {"product", product}};
  if (alg.has_unit()) {
    std::vector<std::string> unit(alg.n(), "0");
    for (const auto& [i, c] : alg.unit()) unit[i - 1] = c.str();
    out["unit"] = unit;
  }
  if (alg.has_trace()) {
    std::vector<std::string> tr;
    for (const auto& t : alg.trace_values()) tr.push_back(t.str());
    out["trace"] = tr;
  }
  return out;
}

inline AssociativeAlgebraDef assoc_from_json(const json& j) {
  int n = j.at("dim").get<int>();
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (const auto& e : j.at("product")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>(), k = e.at(2).get<int>();
    if (a < 1 || a > n || b < 1 || b > n)
      throw std::invalid_argument("product index out of range");
    sv_add(table[a - 1][b - 1], k, Scalar::parse(e.at(3).get<std::string>()));
  }
  std::optional<SparseVec> unit;
  if (j.contains("unit") && !j.at("unit").is_null()) {
    SparseVec u;
    auto v = j.at("unit").get<std::vector<std::string>>();
    for (int i = 0; i < n; ++i) sv_add(u, i + 1, Scalar::parse(v[i]));
    unit = std::move(u);
  }
  std::optional<std::vector<Scalar>> trace;
  if (j.contains("trace") && !j.at("trace").is_null()) {
    std::vector<Scalar> t;
    for (const auto& s : j.at("trace").get<std::vector<std::string>>())
      t.push_back(Scalar::parse(s));
    trace = std::move(t);
  }
  return AssociativeAlgebraDef(n, table, unit, trace);
}

inline json to_json(const QMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline QMatrix qmatrix_from_json(const json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = parse_rational(j.at(r).at(c).get<std::string>());
  }
  return m;
}

inline json to_json(const LieAlgebraDef& l) {
  json bracket = json::array();
  for (const auto& [u, vec] : l.bracket().table())
    for (const auto& [k, c] : vec) bracket.push_back(json{u[0], u[1], k, c.str()});
  json out{{"dim", l.n()}, {"bracket", bracket}};
  if (l.has_gram()) out["gram"] = to_json(l.gram().matrix());
  return out;
}

inline LieAlgebraDef lie_from_json(const json& j) {
  int n = j.at("dim").get<int>();
  SkewMap b(n, 2);
  for (const auto& e : j.at("bracket"))
    b.add({e.at(0).get<int>(), e.at(1).get<int>()}, e.at(2).get<int>(),
          Scalar::parse(e.at(3).get<std::string>()));
  std::optional<GramMatrix> gram;
  if (j.contains("gram") && !j.at("gram").is_null())
    gram = GramMatrix(qmatrix_from_json(j.at("gram")));
  return LieAlgebraDef(std::move(b), std::move(gram));
}

inline json to_json(const BettiTable& t) {
  return json{{"step", t.step},
              {"dims", t.dims},
              {"d_ranks", t.d_ranks},
              {"betti", t.betti}};
}

inline BettiTable betti_from_json(const json& j) {
  BettiTable t;
  t.step = j.at("step").get<int>();
  t.dims = j.at("dims").get<std::vector<int>>();
  t.d_ranks = j.at("d_ranks").get<std::vector<int>>();
  t.betti = j.at("betti").get<std::vector<int>>();
  return t;
}

}  // namespace gla
