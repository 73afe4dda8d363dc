// Command-line front end: verification suites, Betti tables, and evaluation
// of small bracket/product expressions over builtin or file-loaded algebras.
//
// Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage or
// parse error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "gla/cohomology.hpp"
#include "gla/json_io.hpp"
#include "gla/random.hpp"

using namespace gla;
using nlohmann::json;

namespace {

struct AlgebraSource {
  std::string name;
  LieAlgebraDef lie;
  std::optional<AssociativeAlgebraDef> assoc;
};

AlgebraSource resolve_algebra(const std::string& src) {
  if (src == "gl2") return {src, gl_lie(2), AssociativeAlgebraDef::gl(2)};
  if (src == "gl3") return {src, gl_lie(3), AssociativeAlgebraDef::gl(3)};
  if (src == "sl2") return {src, sl_lie(2), std::nullopt};
  if (src == "sl3") return {src, sl_lie(3), std::nullopt};
  if (src == "elem4") return {src, elementary4(), std::nullopt};
  if (src == "elem5") return {src, elementary5(), std::nullopt};
  if (src == "elem6") return {src, elementary6(), std::nullopt};
  if (src.rfind("abelian", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(src.substr(7));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad abelian dimension in '" + src + "'");
    }
    if (n < 1 || n > kMaxArity)
      throw std::invalid_argument("bad abelian dimension in '" + src + "'");
    return {src, abelian_lie(n), std::nullopt};
  }
  std::ifstream in(src);
  if (!in.good())
    throw std::invalid_argument("unknown algebra or unreadable file '" + src +
                                "'");
  return {src, lie_from_json(json::parse(in)), std::nullopt};
}

// ---------------------------------------------------------------- rendering

std::string mask_text(Mask m) {
  if (m == 0) return "1";
  auto idx = mask_indices(m);
  bool wide = idx.back() > 9;
  std::string s = wide ? "e(" : "e";
  for (size_t i = 0; i < idx.size(); ++i) {
    if (wide && i) s += ",";
    s += std::to_string(idx[i]);
  }
  if (wide) s += ")";
  return s;
}

std::string coef_text(const Scalar& c, const std::string& basis) {
  std::string s = c.str();
  if (basis.empty()) return s;
  if (s == "1") return basis;
  if (s == "-1") return "-" + basis;
  bool composite = s.find_first_of("+-", 1) != std::string::npos;
  if (composite) s = "(" + s + ")";
  return s + " " + basis;
}

std::string form_text(const ExteriorElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    std::string term = coef_text(c, m == 0 ? "" : mask_text(m));
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::string vec_text(const SparseVec& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) {
    std::string term = coef_text(c, "X" + std::to_string(i));
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

std::string table_text(const std::map<std::vector<int>, SparseVec>& table) {
  if (table.empty()) return "0";
  std::string out;
  for (const auto& [key, val] : table) {
    std::string k;
    for (size_t i = 0; i < key.size(); ++i)
      k += (i ? "," : "") + std::to_string(key[i]);
    if (!out.empty()) out += "\n";
    out += "(" + k + ") -> " + vec_text(val);
  }
  return out;
}

// ------------------------------------------------------------------- checks

struct Check {
  std::string id;
  std::string law;
  bool ok = true;
  json witness;
};

struct SuiteResult {
  std::string suite;
  json meta;
  std::vector<Check> checks;
};

json report_json(const SuiteResult& r, bool timings, long long ms) {
  bool all = true;
  for (const Check& c : r.checks) all = all && c.ok;
  json checks = json::array();
  for (const Check& c : r.checks) {
    json j{{"id", c.id}, {"law", c.law}, {"status", c.ok ? "pass" : "fail"}};
    if (!c.ok) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  json out{{"suite", r.suite},
           {"status", all ? "pass" : "fail"},
           {"checks", std::move(checks)}};
  for (const auto& [k, v] : r.meta.items()) out[k] = v;
  if (timings) out["duration_ms"] = ms;
  return out;
}

std::string report_text(const SuiteResult& r, bool timings, long long ms) {
  bool all = true;
  std::string out = "suite " + r.suite;
  for (const auto& [k, v] : r.meta.items())
    out += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  out += "\n";
  for (const Check& c : r.checks) {
    all = all && c.ok;
    out += std::string(c.ok ? "pass  " : "FAIL  ") + c.id + "  " + c.law + "\n";
    if (!c.ok) out += "      witness: " + c.witness.dump() + "\n";
  }
  out += std::string("status: ") + (all ? "pass" : "fail") + "\n";
  if (timings) out += "duration_ms: " + std::to_string(ms) + "\n";
  return out;
}

void finish(std::vector<Check>& checks) {
  std::sort(checks.begin(), checks.end(),
            [](const Check& a, const Check& b) { return a.id < b.id; });
}

// -------------------------------------------------- suite: standard-polynomials

SuiteResult run_standard_polynomials(const AlgebraSource& alg) {
  if (!alg.assoc)
    throw std::invalid_argument(
        "suite standard-polynomials needs a matrix algebra (gl2 or gl3)");
  const AssociativeAlgebraDef& a = *alg.assoc;
  const int cap = 5;  // largest resulting arity
  SuiteResult r{"standard-polynomials", {{"algebra", alg.name}}, {}};

  auto multi_witness = [](const json& inputs, const MultiMap& lhs,
                          const MultiMap& rhs) {
    return json{{"inputs", inputs}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
  };
  auto skew_witness = [](const json& inputs, const SkewMap& lhs,
                         const SkewMap& rhs) {
    return json{{"inputs", inputs}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
  };

  {
    Check c{"circ-concatenates", "m_j o m_k = m_(j+k)"};
    for (int j = 0; j <= cap && c.ok; ++j)
      for (int k = 0; j + k <= cap && c.ok; ++k) {
        MultiMap lhs =
            circ_product(a, standard_polynomial(a, j), standard_polynomial(a, k));
        MultiMap rhs = standard_polynomial(a, j + k);
        if (lhs != rhs) {
          c.ok = false;
          c.witness = multi_witness({{"j", j}, {"k", k}}, lhs, rhs);
        }
      }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"gerstenhaber-even-even", "[m_(2k), m_(2k')] = 0"};
    for (auto [j, k] : {std::pair{2, 2}, {2, 4}, {4, 2}}) {
      MultiMap lhs = gerstenhaber_bracket(standard_polynomial(a, j),
                                          standard_polynomial(a, k));
      if (!lhs.is_zero()) {
        c.ok = false;
        c.witness = multi_witness({{"j", j}, {"k", k}}, lhs, MultiMap(a.n(), j + k - 1));
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"gerstenhaber-even-odd", "[m_(2k), m_(2k'+1)] = (2k-1) m_(2k+2k')"};
    for (auto [j, k] : {std::pair{2, 1}, {2, 3}, {4, 1}}) {
      MultiMap lhs = gerstenhaber_bracket(standard_polynomial(a, j),
                                          standard_polynomial(a, k));
      MultiMap rhs = standard_polynomial(a, j + k - 1) * Scalar(j - 1);
      if (lhs != rhs) {
        c.ok = false;
        c.witness = multi_witness({{"j", j}, {"k", k}}, lhs, rhs);
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"gerstenhaber-odd-odd", "[m_(2k+1), m_(2k'+1)] = 2(k-k') m_(2k+2k'+1)"};
    for (auto [j, k] :
         {std::pair{1, 1}, {1, 3}, {3, 1}, {3, 3}, {1, 5}, {5, 1}}) {
      MultiMap lhs = gerstenhaber_bracket(standard_polynomial(a, j),
                                          standard_polynomial(a, k));
      MultiMap rhs = standard_polynomial(a, j + k - 1) * Scalar(j - k);
      if (lhs != rhs) {
        c.ok = false;
        c.witness = multi_witness({{"j", j}, {"k", k}}, lhs, rhs);
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"nr-even-even", "[A_(2k), A_(2k')]_a = 0"};
    for (auto [j, k] : {std::pair{2, 2}, {2, 4}, {4, 2}}) {
      SkewMap lhs = nr_bracket(standard_skew_polynomial(a, j),
                               standard_skew_polynomial(a, k));
      if (!lhs.is_zero()) {
        c.ok = false;
        c.witness = skew_witness({{"j", j}, {"k", k}}, lhs, SkewMap(a.n(), j + k - 1));
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"nr-even-odd", "[A_(2k), A_(2k'+1)]_a = (2k-1) A_(2k+2k')"};
    for (auto [j, k] : {std::pair{2, 1}, {2, 3}, {4, 1}}) {
      SkewMap lhs = nr_bracket(standard_skew_polynomial(a, j),
                               standard_skew_polynomial(a, k));
      SkewMap rhs = standard_skew_polynomial(a, j + k - 1) * Scalar(j - 1);
      if (lhs != rhs) {
        c.ok = false;
        c.witness = skew_witness({{"j", j}, {"k", k}}, lhs, rhs);
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"nr-odd-odd", "[A_(2k+1), A_(2k'+1)]_a = 2(k-k') A_(2k+2k'+1)"};
    for (auto [j, k] :
         {std::pair{1, 1}, {1, 3}, {3, 1}, {3, 3}, {1, 5}, {5, 1}}) {
      SkewMap lhs = nr_bracket(standard_skew_polynomial(a, j),
                               standard_skew_polynomial(a, k));
      SkewMap rhs = standard_skew_polynomial(a, j + k - 1) * Scalar(j - k);
      if (lhs != rhs) {
        c.ok = false;
        c.witness = skew_witness({{"j", j}, {"k", k}}, lhs, rhs);
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"times-additive", "A_j x A_k = A_(j+k)"};
    for (int j = 0; j <= cap && c.ok; ++j)
      for (int k = 0; j + k <= cap && c.ok; ++k) {
        SkewMap lhs = times_product(a, standard_skew_polynomial(a, j),
                                    standard_skew_polynomial(a, k));
        SkewMap rhs = standard_skew_polynomial(a, j + k);
        if (lhs != rhs) {
          c.ok = false;
          c.witness = skew_witness({{"j", j}, {"k", k}}, lhs, rhs);
        }
      }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"trace-even-vanishes", "tr A_(2k) = 0"};
    for (int k : {2, 4}) {
      ExteriorElement lift = trace_lift(a, standard_skew_polynomial(a, k));
      if (!lift.is_zero()) {
        c.ok = false;
        c.witness = json{{"inputs", {{"k", k}}}, {"lhs", to_json(lift)}};
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"trace-odd-contraction",
            "tr A_(2k+1)(Y_1..Y_(2k+1)) = (2k+1) tr(A_(2k)(Y_1..Y_2k) Y_(2k+1))"};
    int m = a.n() == 4 ? 2 : 3;
    std::vector<int> ks = m == 2 ? std::vector<int>{1} : std::vector<int>{1, 2};
    for (int k : ks) {
      SkewMap odd = standard_skew_polynomial(a, 2 * k + 1);
      SkewMap even = standard_skew_polynomial(a, 2 * k);
      SkewBasisEnum heads = enumerate_skew_basis(a.n(), 2 * k);
      for (const auto& [head, last_unused] : heads.items) {
        (void)last_unused;
        for (int y = 1; y <= a.n(); ++y) {
          std::vector<int> full = head;
          full.push_back(y);
          Scalar lhs = a.trace(odd.eval(full));
          SparseVec prod = a.mul(even.eval(head), SparseVec{{y, Scalar(1)}});
          Scalar rhs = a.trace(prod) * Scalar(2 * k + 1);
          if (lhs != rhs) {
            c.ok = false;
            c.witness = json{{"inputs", {{"head", head}, {"y", y}}},
                             {"lhs", lhs.str()},
                             {"rhs", rhs.str()}};
            break;
          }
        }
        if (!c.ok) break;
      }
      if (!c.ok) break;
    }
    r.checks.push_back(std::move(c));
  }

  finish(r.checks);
  return r;
}

// --------------------------------------------------------- suite: clifford

SuiteResult run_clifford(int n, std::uint64_t seed) {
  if (n < 1 || n > 10)
    throw std::invalid_argument("clifford suite expects --n between 1 and 10");
  SuiteResult r{"clifford", {{"n", n}, {"seed", seed}}, {}};
  const Mask top = (Mask{1} << n) - 1;

  auto mono = [n](Mask m) { return ExteriorElement::monomial(n, m); };

  {
    Check c{"star-associative", "(a * b) * c = a * (b * c)"};
    auto try_triple = [&](Mask x, Mask y, Mask z) {
      ExteriorElement lhs = clifford_star(clifford_star(mono(x), mono(y)), mono(z));
      ExteriorElement rhs = clifford_star(mono(x), clifford_star(mono(y), mono(z)));
      if (lhs != rhs) {
        c.ok = false;
        c.witness = json{{"inputs", {mask_text(x), mask_text(y), mask_text(z)}},
                         {"lhs", form_text(lhs)},
                         {"rhs", form_text(rhs)}};
      }
      return c.ok;
    };
    if (n <= 4) {
      for (Mask x = 0; x <= top && c.ok; ++x)
        for (Mask y = 0; y <= top && c.ok; ++y)
          for (Mask z = 0; z <= top && c.ok; ++z) try_triple(x, y, z);
    } else {
      RandomSource rnd(seed);
      for (int t = 0; t < 200 && c.ok; ++t)
        try_triple(static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))),
                   static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))),
                   static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))));
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"moyal-matches-star", "moyal(a, b) = a * b"};
    auto try_pair = [&](Mask x, Mask y) {
      ExteriorElement lhs = moyal_star(mono(x), mono(y));
      ExteriorElement rhs = clifford_star(mono(x), mono(y));
      if (lhs != rhs) {
        c.ok = false;
        c.witness = json{{"inputs", {mask_text(x), mask_text(y)}},
                         {"lhs", form_text(lhs)},
                         {"rhs", form_text(rhs)}};
      }
      return c.ok;
    };
    if (n <= 6) {
      for (Mask x = 0; x <= top && c.ok; ++x)
        for (Mask y = 0; y <= top && c.ok; ++y) try_pair(x, y);
    } else {
      RandomSource rnd(seed + 1);
      for (int t = 0; t < 400 && c.ok; ++t)
        try_pair(static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))),
                 static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))));
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"generator-square", "e_i * e_i = t"};
    for (int i = 1; i <= n; ++i) {
      ExteriorElement sq =
          clifford_star(ExteriorElement::generator(n, i), ExteriorElement::generator(n, i));
      if (sq != ExteriorElement::unit(n) * Scalar::t()) {
        c.ok = false;
        c.witness = json{{"inputs", {{"i", i}}}, {"lhs", form_text(sq)}};
        break;
      }
    }
    r.checks.push_back(std::move(c));
  }

  {
    Check c{"order-zero-wedge", "D_0(a, b) = a ^ b"};
    Check c2{"order-one-super", "2 D_1(a, b) = {a, b}"};
    GramMatrix id = GramMatrix::identity(n);
    auto try_pair = [&](Mask x, Mask y) {
      ExteriorElement d0 = dk_coefficient(0, mono(x), mono(y));
      if (d0 != wedge(mono(x), mono(y))) {
        c.ok = false;
        c.witness = json{{"inputs", {mask_text(x), mask_text(y)}},
                         {"lhs", form_text(d0)}};
      }
      ExteriorElement d1 = dk_coefficient(1, mono(x), mono(y)) * Scalar(2);
      if (d1 != super_poisson(mono(x), mono(y), id)) {
        c2.ok = false;
        c2.witness = json{{"inputs", {mask_text(x), mask_text(y)}},
                          {"lhs", form_text(d1)}};
      }
      return c.ok && c2.ok;
    };
    if (n <= 6) {
      for (Mask x = 0; x <= top; ++x) {
        for (Mask y = 0; y <= top; ++y)
          if (!try_pair(x, y)) break;
        if (!(c.ok && c2.ok)) break;
      }
    } else {
      RandomSource rnd(seed + 2);
      for (int t = 0; t < 400; ++t)
        if (!try_pair(static_cast<Mask>(rnd.uniform(0, static_cast<int>(top))),
                      static_cast<Mask>(rnd.uniform(0, static_cast<int>(top)))))
          break;
    }
    r.checks.push_back(std::move(c));
    r.checks.push_back(std::move(c2));
  }

  finish(r.checks);
  return r;
}

// ----------------------------------------------- suite: elementary-catalog

SuiteResult run_elementary_catalog() {
  SuiteResult r{"elementary-catalog", json::object(), {}};
  struct Named {
    std::string name;
    LieAlgebraDef l;
  };
  std::vector<Named> algebras;
  algebras.push_back({"sl2", sl2_algebra()});
  algebras.push_back({"elem4", elementary4()});
  algebras.push_back({"elem5", elementary5()});
  algebras.push_back({"elem6", elementary6()});

  for (const auto& [name, l] : algebras) {
    {
      Check c{name + "-jacobi", "[mu, mu]_a = 0"};
      SkewMap sq = nr_bracket(l.bracket(), l.bracket());
      if (!sq.is_zero()) {
        c.ok = false;
        c.witness = json{{"lhs", to_json(sq)}};
      }
      r.checks.push_back(std::move(c));
    }
    {
      Check c{name + "-invariance", "B([X,Y],Z) is alternating"};
      if (!is_cyclic(l.bracket(), l.gram())) c.ok = false;
      r.checks.push_back(std::move(c));
    }
    {
      Check c{name + "-derived-dim", "dim [g,g] = 3"};
      int d = static_cast<int>(l.derived_basis().size());
      if (d != 3) {
        c.ok = false;
        c.witness = json{{"dim", d}};
      }
      r.checks.push_back(std::move(c));
    }
    {
      Check c{name + "-decomposable", "I = B([.,.],.) is decomposable"};
      auto res = is_decomposable(threeform_from_bracket(l));
      if (!res.decomposable) {
        c.ok = false;
        c.witness = json{{"form", to_json(threeform_from_bracket(l))}};
      }
      r.checks.push_back(std::move(c));
    }
    {
      Check c{name + "-isotropic-center", "B vanishes on Z(g) x Z(g)"};
      auto center = l.center_basis();
      for (const auto& u : center) {
        for (const auto& v : center) {
          Rational s(0);
          for (int i = 0; i < l.n(); ++i)
            for (int j = 0; j < l.n(); ++j)
              s += u[i] * l.gram().matrix().at(i, j) * v[j];
          if (s != 0) c.ok = false;
        }
      }
      r.checks.push_back(std::move(c));
    }
    {
      Check c{name + "-elementary", "algebra passes the elementary criteria"};
      if (!is_elementary(l)) c.ok = false;
      r.checks.push_back(std::move(c));
    }
  }

  {
    Check c{"reduce-gl2", "gl(2) splits as sl(2) + a nondegenerate central line"};
    CentralReduction red = reduce_center(gl_lie(2));
    bool ok = red.reduced.n() == 3 && is_elementary(red.reduced) &&
              is_semisimple(red.reduced) && red.central_basis.size() == 1 &&
              red.central_gram.n() == 1 &&
              red.central_gram.matrix().at(0, 0) != 0;
    if (!ok) {
      c.ok = false;
      c.witness = json{{"reduced", to_json(red.reduced)}};
    }
    r.checks.push_back(std::move(c));
  }

  finish(r.checks);
  return r;
}

// --------------------------------------------------------------- cohomology

BettiTable run_cohomology(const AlgebraSource& alg, const std::string& complex,
                          std::optional<int> max_degree,
                          std::optional<int> max_arity) {
  const LieAlgebraDef& l = alg.lie;
  if (complex == "trivial") return trivial_cohomology(l);
  if (complex == "adjoint")
    return adjoint_cohomology(l, max_arity.value_or(l.n() - 1));
  if (complex == "cyclic")
    return cyclic_cohomology(l, max_arity.value_or(l.n() - 1));
  if (complex.rfind("twoK:", 0) == 0) {
    std::string form = complex.substr(5);
    SkewMap f(l.n(), 2);
    if (form == "bracket") {
      f = l.bracket();
    } else if (form.size() > 1 && form[0] == 'A') {
      if (!alg.assoc)
        throw std::invalid_argument(
            "form '" + form + "' needs a matrix algebra (gl2 or gl3)");
      int k = std::stoi(form.substr(1));
      f = standard_skew_polynomial(*alg.assoc, k);
    } else {
      throw std::invalid_argument("unknown structure map '" + form + "'");
    }
    return twok_complex(f, max_degree.value_or(l.n()));
  }
  throw std::invalid_argument("unknown complex '" + complex + "'");
}

std::string betti_text(const BettiTable& t) {
  auto row = [](const std::string& label, const std::vector<int>& v) {
    std::string s = label;
    for (int x : v) s += " " + std::to_string(x);
    return s + "\n";
  };
  return "step " + std::to_string(t.step) + "\n" + row("dims", t.dims) +
         row("d_ranks", t.d_ranks) + row("betti", t.betti);
}

// --------------------------------------------------------------------- eval

using Value = std::variant<SkewMap, MultiMap, ExteriorElement>;

MultiMap promote(const SkewMap& f) {
  MultiMap out(f.n(), f.arity());
  for (const auto& [key, val] : f.table()) {
    std::vector<int> p = key;
    do {
      int inv = 0;
      for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
          if (p[i] > p[j]) ++inv;
      out.add(p, val, Scalar(inv % 2 ? -1 : 1));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

struct EvalContext {
  std::optional<AlgebraSource> alg;
  std::optional<int> n_override;

  int n() const {
    if (n_override) return *n_override;
    if (alg) return alg->lie.n();
    throw std::invalid_argument("expression needs --n or --algebra");
  }
  const AssociativeAlgebraDef& assoc() const {
    if (alg && alg->assoc) return *alg->assoc;
    throw std::invalid_argument(
        "expression needs a matrix algebra (--algebra gl2 or gl3)");
  }
  GramMatrix gram() const {
    if (alg) return alg->lie.gram();
    return GramMatrix::identity(n());
  }
};

class ExprParser {
 public:
  ExprParser(const std::string& text, const EvalContext& ctx)
      : s_(text), ctx_(ctx) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  const std::string& s_;
  const EvalContext& ctx_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  static SkewMap as_skew(Value v) {
    if (auto* f = std::get_if<SkewMap>(&v)) return *f;
    throw std::invalid_argument("expected a skew multilinear map");
  }
  static MultiMap as_multi(Value v) {
    if (auto* f = std::get_if<MultiMap>(&v)) return *f;
    if (auto* f = std::get_if<SkewMap>(&v)) return promote(*f);
    throw std::invalid_argument("expected a multilinear map");
  }
  static ExteriorElement as_form(Value v) {
    if (auto* f = std::get_if<ExteriorElement>(&v)) return *f;
    throw std::invalid_argument("expected an exterior algebra element");
  }

  Value atom(const std::string& name) {
    if (name.size() < 2) fail("unknown atom '" + name + "'");
    char head = name[0];
    std::string rest = name.substr(1);
    for (char ch : rest)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        fail("unknown atom '" + name + "'");
    if (head == 'A') return standard_skew_polynomial(ctx_.assoc(), std::stoi(rest));
    if (head == 'm') return standard_polynomial(ctx_.assoc(), std::stoi(rest));
    if (head == 'a')
      return trace_lift(ctx_.assoc(),
                        standard_skew_polynomial(ctx_.assoc(), std::stoi(rest)));
    if (head == 'e') {
      int n = ctx_.n();
      ExteriorElement out = ExteriorElement::unit(n);
      for (char ch : rest) {
        int g = ch - '0';
        if (g < 1 || g > n) fail("generator index out of range in '" + name + "'");
        out = wedge(out, ExteriorElement::generator(n, g));
      }
      if (out.is_zero()) fail("repeated generator in '" + name + "'");
      return out;
    }
    fail("unknown atom '" + name + "'");
  }

  Value expr() {
    std::string name = ident();
    if (!eat('(')) return atom(name);
    std::vector<Value> args;
    if (!eat(')')) {
      args.push_back(expr());
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) fail("expected ')'");
    }
    return call(name, std::move(args));
  }

  Value call(const std::string& fn, std::vector<Value> args) {
    auto want = [&](size_t k) {
      if (args.size() != k)
        throw std::invalid_argument(fn + " expects " + std::to_string(k) +
                                    " arguments");
    };
    if (fn == "nr") {
      want(2);
      return nr_bracket(as_skew(args[0]), as_skew(args[1]));
    }
    if (fn == "gerst") {
      want(2);
      return gerstenhaber_bracket(as_multi(args[0]), as_multi(args[1]));
    }
    if (fn == "poisson") {
      want(2);
      return super_poisson(as_form(args[0]), as_form(args[1]), ctx_.gram());
    }
    if (fn == "star") {
      want(2);
      return clifford_star(as_form(args[0]), as_form(args[1]));
    }
    if (fn == "moyal") {
      want(2);
      return moyal_star(as_form(args[0]), as_form(args[1]));
    }
    if (fn == "wedge") {
      want(2);
      return wedge(as_form(args[0]), as_form(args[1]));
    }
    if (fn == "times") {
      want(2);
      return times_product(ctx_.assoc(), as_skew(args[0]), as_skew(args[1]));
    }
    if (fn == "circ") {
      want(2);
      return circ_product(ctx_.assoc(), as_multi(args[0]), as_multi(args[1]));
    }
    if (fn == "tr") {
      want(1);
      return trace_lift(ctx_.assoc(), as_skew(args[0]));
    }
    if (fn == "skew") {
      want(1);
      return skew_symmetrize(as_multi(args[0]));
    }
    if (fn == "iota") {
      want(2);
      ExteriorElement x = as_form(args[0]);
      SparseVec v;
      for (const auto& [m, c] : x.terms()) {
        auto idx = mask_indices(m);
        if (idx.size() != 1)
          throw std::invalid_argument("iota expects a degree-1 first argument");
        v[idx[0]] = c;
      }
      return iota_contract(v, as_skew(args[1]));
    }
    throw std::invalid_argument("unknown function '" + fn + "'");
  }
};

json value_json(const Value& v) {
  return std::visit([](const auto& x) { return to_json(x); }, v);
}

std::string value_kind(const Value& v) {
  if (std::holds_alternative<SkewMap>(v)) return "skew-map";
  if (std::holds_alternative<MultiMap>(v)) return "multi-map";
  return "form";
}

std::string value_text(const Value& v) {
  if (auto* f = std::get_if<ExteriorElement>(&v)) return form_text(*f);
  if (auto* f = std::get_if<SkewMap>(&v)) return table_text(f->table());
  return table_text(std::get<MultiMap>(v).table());
}

// --------------------------------------------------------------------- main

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(out_path);
    if (!f.good())
      throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << payload;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for graded Lie algebra computations"};
  app.require_subcommand(1);

  std::string algebra, format = "json", out_path;
  std::uint64_t seed = 0;
  int clifford_n = 4;
  std::optional<int> max_degree, max_arity, eval_n;
  bool timings = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", out_path);
    cmd->add_flag("--timings", timings);
    cmd->add_option("--seed", seed);
  };

  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  std::string suite;
  verify->add_option("suite", suite, "standard-polynomials | clifford | elementary-catalog")
      ->required();
  verify->add_option("--algebra", algebra, "builtin name or JSON file");
  verify->add_option("--n", clifford_n, "Grassmann dimension for clifford");
  add_common(verify);

  CLI::App* coh = app.add_subcommand("cohomology", "compute a Betti table");
  std::string coh_algebra, complex;
  coh->add_option("algebra", coh_algebra, "builtin name or JSON file")->required();
  coh->add_option("complex", complex, "trivial | adjoint | cyclic | twoK:<form>")
      ->required();
  coh->add_option("--max-degree", max_degree);
  coh->add_option("--max-arity", max_arity);
  add_common(coh);

  CLI::App* ev = app.add_subcommand("eval", "evaluate a product/bracket expression");
  std::string expression;
  ev->add_option("expression", expression)->required();
  ev->add_option("--algebra", algebra, "builtin name or JSON file");
  ev->add_option("--n", eval_n, "Grassmann dimension for algebra-free input");
  add_common(ev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteResult r = [&] {
        if (suite == "standard-polynomials")
          return run_standard_polynomials(
              resolve_algebra(algebra.empty() ? "gl2" : algebra));
        if (suite == "clifford") return run_clifford(clifford_n, seed);
        if (suite == "elementary-catalog") return run_elementary_catalog();
        throw std::invalid_argument("unknown suite '" + suite + "'");
      }();
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      bool all = true;
      for (const Check& c : r.checks) all = all && c.ok;
      if (format == "json")
        emit(report_json(r, timings, ms).dump(2) + "\n", out_path);
      else
        emit(report_text(r, timings, ms), out_path);
      return all ? 0 : 1;
    }

    if (app.got_subcommand(coh)) {
      BettiTable t =
          run_cohomology(resolve_algebra(coh_algebra), complex, max_degree, max_arity);
      if (format == "json")
        emit(to_json(t).dump(2) + "\n", out_path);
      else
        emit(betti_text(t), out_path);
      return 0;
    }

    EvalContext ctx;
    if (!algebra.empty()) ctx.alg = resolve_algebra(algebra);
    ctx.n_override = eval_n;
    Value v = ExprParser(expression, ctx).parse();
    if (format == "json") {
      json j{{"expression", expression},
             {"kind", value_kind(v)},
             {"value", value_json(v)}};
      emit(j.dump(2) + "\n", out_path);
    } else {
      emit(value_text(v) + "\n", out_path);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
