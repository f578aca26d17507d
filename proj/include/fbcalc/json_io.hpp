#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fbcalc/errors.hpp"
#include "fbcalc/jordan.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/operator.hpp"

namespace fbcalc {

using nlohmann::json;

namespace detail {

inline double finiteNumber(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' is not finite");
  return x;
}

inline double finiteNumberOr(const json& j, const char* key, double fallback) {
  return j.contains(key) ? finiteNumber(j, key) : fallback;
}

inline cplx complexPair(const json& j, const char* re, const char* im, cplx fallback = 0.0) {
  return {finiteNumberOr(j, re, fallback.real()), finiteNumberOr(j, im, fallback.imag())};
}

template <class F>
auto guardJson(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

// ---- measures ---------------------------------------------------------------------
//
// {"atoms": [{"re", "im", "w_re", "w_im"}],
//  "contours": [{"center_re", "center_im", "radius", "pole_re", "pole_im",
//                "order", "coef_re", "coef_im", "nodes"}],
//  "symmetric": bool, "label": string}

inline json toJson(const CompactMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({{"re", a.location.real()}, {"im", a.location.imag()}, {"w_re", a.weight.real()},
                     {"w_im", a.weight.imag()}});
  json contours = json::array();
  for (const auto& c : mu.contours())
    contours.push_back({{"center_re", c.center.real()},
                        {"center_im", c.center.imag()},
                        {"radius", c.radius},
                        {"pole_re", c.pole.real()},
                        {"pole_im", c.pole.imag()},
                        {"order", c.order},
                        {"coef_re", c.coef.real()},
                        {"coef_im", c.coef.imag()},
                        {"nodes", c.nodes}});
  return {{"atoms", atoms}, {"contours", contours}, {"symmetric", mu.symmetric()}, {"label", mu.label()}};
}

inline CompactMeasure measureFromJson(const json& j) {
  return detail::guardJson([&] {
    if (!j.is_object()) fail(ErrorKind::InvalidArgument, "measure must be a JSON object");
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms"))
        atoms.push_back({detail::complexPair(a, "re", "im"), detail::complexPair(a, "w_re", "w_im", 1.0)});
    std::vector<ContourComponent> contours;
    if (j.contains("contours")) {
      for (const auto& c : j.at("contours")) {
        ContourComponent k;
        k.center = detail::complexPair(c, "center_re", "center_im");
        k.radius = detail::finiteNumber(c, "radius");
        if (!(k.radius > 0.0)) fail(ErrorKind::InvalidArgument, "contour radius must be > 0");
        k.pole = detail::complexPair(c, "pole_re", "pole_im", k.center);
        k.order = c.value("order", 1);
        k.coef = detail::complexPair(c, "coef_re", "coef_im", 1.0);
        k.nodes = c.value("nodes", kDefaultContourNodes);
        contours.push_back(k);
      }
    }
    CompactMeasure mu(std::move(atoms), std::move(contours), false, j.value("label", std::string{}));
    bool symmetric = j.value("symmetric", false);
    if (symmetric && !isStructurallySymmetric(mu))
      fail(ErrorKind::InvalidArgument, "measure is declared symmetric but is not conjugation invariant");
    return CompactMeasure(mu.atoms(), mu.contours(), symmetric, mu.label());
  });
}

// ---- models -------------------------------------------------------------------------
//
// {"variant": "diagonal", "grid": [...], "phase": p}
// {"variant": "diagonal", "log_grid": {"lo", "hi", "count"}, "phase": p}
// {"variant": "jordan", "n", "c", "lambda0"}
// {"variant": "matrix", "rows": [[[re, im] or re, ...], ...], "sector_half_angle": a}
// "type" is accepted in place of "variant".

inline json toJson(const SemigroupModel& model) {
  if (const auto* d = std::get_if<DiagonalMultiplication>(&model.variant()))
    return {{"variant", "diagonal"}, {"grid", d->grid}, {"phase", d->phase}};
  if (const auto* jd = std::get_if<JordanSurrogate>(&model.variant()))
    return {{"variant", "jordan"}, {"n", jd->n}, {"c", jd->c}, {"lambda0", jd->lambda0}};
  const auto& g = std::get<GeneralMatrix>(model.variant()).generator;
  json rows = json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < g.cols(); ++k) row.push_back({g(i, k).real(), g(i, k).imag()});
    rows.push_back(row);
  }
  return {{"variant", "matrix"}, {"rows", rows}, {"sector_half_angle", model.sectorHalfAngle()}};
}

inline SemigroupModel modelFromJson(const json& j) {
  return detail::guardJson([&] {
    const auto type = (j.contains("variant") ? j.at("variant") : j.at("type")).get<std::string>();
    if (type == "diagonal") {
      std::vector<double> grid;
      if (j.contains("log_grid")) {
        const auto& lg = j.at("log_grid");
        grid = logGrid(detail::finiteNumber(lg, "lo"), detail::finiteNumber(lg, "hi"), lg.at("count").get<int>());
      } else {
        for (const auto& x : j.at("grid")) {
          if (!x.is_number() || !std::isfinite(x.get<double>()))
            fail(ErrorKind::InvalidArgument, "grid entries must be finite numbers");
          grid.push_back(x.get<double>());
        }
      }
      return SemigroupModel::diagonal(std::move(grid), detail::finiteNumberOr(j, "phase", 0.0));
    }
    if (type == "jordan")
      return SemigroupModel::jordan(j.at("n").get<int>(), detail::finiteNumber(j, "c"),
                                    detail::finiteNumberOr(j, "lambda0", 0.0));
    if (type == "matrix") {
      const auto& rows = j.at("rows");
      const auto n = static_cast<Eigen::Index>(rows.size());
      Matrix g(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != n) fail(ErrorKind::InvalidArgument, "matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto& e = rows[i][k];
          const double re = e.is_array() ? e.at(0).get<double>() : e.get<double>();
          const double im = e.is_array() ? e.at(1).get<double>() : 0.0;
          g(i, k) = cplx(re, im);
        }
      }
      return SemigroupModel::matrix(std::move(g), detail::finiteNumberOr(j, "sector_half_angle", kPi / 2));
    }
    fail(ErrorKind::InvalidArgument, "unknown model type '" + type + "'");
  });
}

// ---- certificates ---------------------------------------------------------------------

inline json complexToJson(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complexFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::InvalidArgument, "complex numbers are [re, im] pairs");
  const double re = j.at(0).get<double>();
  const double im = j.at(1).get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) fail(ErrorKind::InvalidArgument, "complex value is not finite");
  return {re, im};
}

inline json toJson(const JordanCertificate& c) {
  json gamma = json::array();
  for (const auto z : c.gamma1.vertices()) gamma.push_back(complexToJson(z));
  return {{"b", c.b},         {"f_b", c.f_b},         {"sign", c.sign},
          {"m", c.m},         {"delta", c.delta},     {"psi", c.psi},
          {"epsilon", c.epsilon}, {"a0", complexToJson(c.a0)}, {"a1", complexToJson(c.a1)},
          {"a2", complexToJson(c.a2)}, {"a3", complexToJson(c.a3)}, {"gamma1", gamma},
          {"sample_density", c.sample_density}, {"margin_i", c.margin_i}, {"margin_ii", c.margin_ii}};
}

inline JordanCertificate certificateFromJson(const json& j) {
  return detail::guardJson([&] {
    JordanCertificate c;
    c.b = detail::finiteNumber(j, "b");
    c.f_b = detail::finiteNumberOr(j, "f_b", 0.0);
    c.sign = j.value("sign", 1);
    c.m = j.at("m").get<int>();
    c.delta = detail::finiteNumber(j, "delta");
    c.psi = detail::finiteNumberOr(j, "psi", 0.0);
    c.epsilon = detail::finiteNumberOr(j, "epsilon", 0.0);
    c.a0 = complexFromJson(j.at("a0"));
    c.a1 = complexFromJson(j.at("a1"));
    c.a2 = complexFromJson(j.at("a2"));
    c.a3 = complexFromJson(j.at("a3"));
    std::vector<cplx> g;
    for (const auto& z : j.at("gamma1")) g.push_back(complexFromJson(z));
    c.gamma1 = Polyline(std::move(g));
    c.sample_density = j.value("sample_density", 0);
    c.margin_i = detail::finiteNumberOr(j, "margin_i", 0.0);
    c.margin_ii = detail::finiteNumberOr(j, "margin_ii", 0.0);
    return c;
  });
}

// ---- files ------------------------------------------------------------------------------

inline json readJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
  return detail::guardJson([&] {
    json j;
    in >> j;
    return j;
  });
}

inline void writeJsonFile(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace fbcalc
