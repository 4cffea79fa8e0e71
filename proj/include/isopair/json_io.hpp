#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "isopair/bunch.hpp"
#include "isopair/isorep.hpp"
#include "isopair/pair.hpp"
#include "isopair/representation.hpp"

namespace isopair {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  try {
    return json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& context) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + context);
}

/// Scalar entries appear as integers, [num,den] pairs, "a/b" strings or doubles.
template <class S>
S scalar_from_json(const json& v) {
  if (v.is_number_integer())
    return scalar_traits<S>::from_fraction(v.get<std::int64_t>(), 1);
  if (v.is_array() && v.size() == 2)
    return scalar_traits<S>::from_fraction(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
  if (v.is_string()) {
    if constexpr (scalar_traits<S>::is_exact)
      return parse_rational(v.get<std::string>());
    else
      return to_double(parse_rational(v.get<std::string>()));
  }
  if (v.is_number_float()) {
    if constexpr (scalar_traits<S>::is_exact)
      throw ConfigError("float entry not representable on the exact backend; use num/den");
    else
      return v.get<double>();
  }
  throw ConfigError("unsupported scalar encoding: " + v.dump());
}

// ---------------------------------------------------------------------------
// Isotopic pair: {"n1":..,"n2":..,"m1":[[iso,i,j,out,num,den],...],"m2":[...]}
// Omitted entries are zero; each listed entry also sets its antisymmetric twin.
// ---------------------------------------------------------------------------

template <class S>
IsotopicPair<S> pair_from_json(const json& j) {
  reject_unknown_keys(j, {"n1", "n2", "m1", "m2"}, "pair document");
  if (!j.contains("n1") || !j.contains("n2")) throw ConfigError("pair document needs n1 and n2");
  IsotopicPair<S> pair(j["n1"].get<std::size_t>(), j["n2"].get<std::size_t>());
  auto read_entries = [&](const json& arr, Tensor4<S>& tensor, std::size_t iso_n, std::size_t arg_n) {
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 6)
        throw ConfigError("structure entry must be [iso,i,j,out,num,den]");
      std::size_t a = e[0].get<std::size_t>(), i = e[1].get<std::size_t>(),
                  jj = e[2].get<std::size_t>(), k = e[3].get<std::size_t>();
      if (a >= iso_n || i >= arg_n || jj >= arg_n || k >= arg_n)
        throw ConfigError("structure entry index out of range: " + e.dump());
      S v = scalar_traits<S>::from_fraction(e[4].get<std::int64_t>(), e[5].get<std::int64_t>());
      tensor(a, i, jj, k) = v;
      tensor(a, jj, i, k) = -v;
    }
  };
  if (j.contains("m1")) read_entries(j["m1"], pair.m1, pair.n2, pair.n1);
  if (j.contains("m2")) read_entries(j["m2"], pair.m2, pair.n1, pair.n2);
  return pair;
}

template <class S>
json pair_to_json(const IsotopicPair<S>& pair) {
  json j;
  j["n1"] = pair.n1;
  j["n2"] = pair.n2;
  auto dump_entries = [](const Tensor4<S>& t, std::size_t iso_n, std::size_t arg_n) {
    json arr = json::array();
    for (std::size_t a = 0; a < iso_n; ++a)
      for (std::size_t i = 0; i < arg_n; ++i)
        for (std::size_t jj = i + 1; jj < arg_n; ++jj)
          for (std::size_t k = 0; k < arg_n; ++k) {
            const S& v = t(a, i, jj, k);
            if (scalar_traits<S>::is_zero(v, 0.0)) continue;
            if constexpr (scalar_traits<S>::is_exact) {
              arr.push_back({a, i, jj, k,
                             boost::multiprecision::numerator(v).template convert_to<std::int64_t>(),
                             boost::multiprecision::denominator(v).template convert_to<std::int64_t>()});
            } else {
              arr.push_back({a, i, jj, k, v, 1});
            }
          }
    return arr;
  };
  j["m1"] = dump_entries(pair.m1, pair.n2, pair.n1);
  j["m2"] = dump_entries(pair.m2, pair.n1, pair.n2);
  return j;
}

// ---------------------------------------------------------------------------
// Representation: {"dim_w":..,"d1":..,"d2":..,"t1":[matrix,...],"t2":[...]}
// with matrices row-major as arrays of arrays.
// ---------------------------------------------------------------------------

template <class S>
Mat<S> matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ConfigError("matrix must be an array of rows");
  std::size_t r = rows.size(), c = rows[0].size();
  Mat<S> m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ConfigError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar_from_json<S>(rows[i][j]);
  }
  return m;
}

template <class S>
json matrix_to_json(const Mat<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_double(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
PairRepresentation<S> representation_from_json(const json& j) {
  reject_unknown_keys(j, {"dim_w", "d1", "d2", "t1", "t2"}, "representation document");
  PairRepresentation<S> rep;
  rep.dim_w = j.at("dim_w").get<std::size_t>();
  if (j.contains("d1") != j.contains("d2"))
    throw ConfigError("representation grading needs both d1 and d2");
  if (j.contains("d1"))
    rep.grading = std::make_pair(j["d1"].get<std::size_t>(), j["d2"].get<std::size_t>());
  for (const auto& m : j.at("t1")) rep.t1.push_back(matrix_from_json<S>(m));
  for (const auto& m : j.at("t2")) rep.t2.push_back(matrix_from_json<S>(m));
  for (const auto& m : rep.t1)
    if (m.rows() != rep.dim_w || m.cols() != rep.dim_w)
      throw ConfigError("representation matrix does not match dim_w");
  for (const auto& m : rep.t2)
    if (m.rows() != rep.dim_w || m.cols() != rep.dim_w)
      throw ConfigError("representation matrix does not match dim_w");
  return rep;
}

template <class S>
json representation_to_json(const PairRepresentation<S>& rep) {
  json j;
  j["dim_w"] = rep.dim_w;
  if (rep.grading) {
    j["d1"] = rep.grading->first;
    j["d2"] = rep.grading->second;
  }
  json t1 = json::array(), t2 = json::array();
  for (const auto& m : rep.t1) t1.push_back(matrix_to_json(m));
  for (const auto& m : rep.t2) t2.push_back(matrix_to_json(m));
  j["t1"] = std::move(t1);
  j["t2"] = std::move(t2);
  return j;
}

// ---------------------------------------------------------------------------
// Lie algebra: {"dim":n,"c":[[i,j,k,num,den],...]}; bunch adds the module data.
// ---------------------------------------------------------------------------

template <class S>
LieAlgebra<S> lie_algebra_from_json(const json& j) {
  reject_unknown_keys(j, {"dim", "c"}, "Lie algebra document");
  LieAlgebra<S> g(j.at("dim").get<std::size_t>());
  if (j.contains("c"))
    for (const auto& e : j["c"]) {
      if (!e.is_array() || e.size() != 5) throw ConfigError("bracket entry must be [i,j,k,num,den]");
      std::size_t i = e[0].get<std::size_t>(), jj = e[1].get<std::size_t>(),
                  k = e[2].get<std::size_t>();
      if (i >= g.n || jj >= g.n || k >= g.n)
        throw ConfigError("bracket entry index out of range: " + e.dump());
      S v = scalar_traits<S>::from_fraction(e[3].get<std::int64_t>(), e[4].get<std::int64_t>());
      g.c(i, jj, k) = v;
      g.c(jj, i, k) = -v;
    }
  return g;
}

template <class S>
LieBunch<S> bunch_from_json(const json& j) {
  reject_unknown_keys(j, {"g", "dim_v", "action", "brackets"}, "bunch document");
  LieBunch<S> bunch(lie_algebra_from_json<S>(j.at("g")), j.at("dim_v").get<std::size_t>());
  if (j.contains("action"))
    for (const auto& e : j["action"]) {
      if (!e.is_array() || e.size() != 5) throw ConfigError("action entry must be [a,i,j,num,den]");
      std::size_t a = e[0].get<std::size_t>(), i = e[1].get<std::size_t>(), jj = e[2].get<std::size_t>();
      if (a >= bunch.g.n || i >= bunch.dim_v || jj >= bunch.dim_v)
        throw ConfigError("action entry index out of range");
      // action of e_a maps e_j with coefficient on e_i: rows are outputs
      bunch.action[a](i, jj) =
          scalar_traits<S>::from_fraction(e[3].get<std::int64_t>(), e[4].get<std::int64_t>());
    }
  if (j.contains("brackets"))
    for (const auto& e : j["brackets"]) {
      if (!e.is_array() || e.size() != 6)
        throw ConfigError("bunch bracket entry must be [a,i,j,k,num,den]");
      std::size_t a = e[0].get<std::size_t>(), i = e[1].get<std::size_t>(),
                  jj = e[2].get<std::size_t>(), k = e[3].get<std::size_t>();
      if (a >= bunch.g.n || i >= bunch.dim_v || jj >= bunch.dim_v || k >= bunch.dim_v)
        throw ConfigError("bunch bracket entry index out of range");
      S v = scalar_traits<S>::from_fraction(e[4].get<std::int64_t>(), e[5].get<std::int64_t>());
      bunch.brackets(a, i, jj, k) = v;
      bunch.brackets(a, jj, i, k) = -v;
    }
  return bunch;
}

template <class S>
Isorep<S> isorep_from_json(const json& j) {
  reject_unknown_keys(j, {"q", "t", "d1", "d2"}, "isorepresentation document");
  Isorep<S> iso;
  iso.q = matrix_from_json<S>(j.at("q"));
  for (const auto& m : j.at("t")) iso.t.push_back(matrix_from_json<S>(m));
  if (j.contains("d1") && j.contains("d2"))
    iso.grading = std::make_pair(j["d1"].get<std::size_t>(), j["d2"].get<std::size_t>());
  return iso;
}

}  // namespace isopair
