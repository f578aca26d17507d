#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fbcalc/fbcalc.hpp"

namespace {

using fbcalc::cplx;
using fbcalc::ErrorKind;

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kNumeric = 3 };

cplx parseComplex(const std::string& text) {
  std::stringstream ss(text);
  std::string re;
  std::string im;
  std::getline(ss, re, ',');
  std::getline(ss, im);
  try {
    std::size_t used = 0;
    const double r = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(re);
    double i = 0.0;
    if (!im.empty()) {
      i = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(im);
    }
    if (!std::isfinite(r) || !std::isfinite(i)) throw std::invalid_argument(text);
    return {r, i};
  } catch (const std::exception&) {
    fbcalc::fail(ErrorKind::InvalidArgument, "cannot parse complex number '" + text + "' (expected RE,IM)");
  }
}

fbcalc::CompactMeasure loadMeasure(const std::string& path) {
  return fbcalc::measureFromJson(fbcalc::readJsonFile(path));
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int exitFor(const fbcalc::Error& e) {
  switch (e.kind()) {
    case ErrorKind::NumericFailure:
    case ErrorKind::SingularResolvent:
    case ErrorKind::ConstructionFailure:
      return kNumeric;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Borel functional calculus toolkit"};
  app.require_subcommand(1);

  std::string measure_path;
  std::string model_path;
  std::string z_text;
  std::string u_text;
  double theta = 0.0;
  double alpha = 0.0;

  auto* eval = app.add_subcommand("fb-eval", "evaluate the transform at a point");
  eval->add_option("--measure", measure_path, "measure JSON")->required();
  eval->add_option("--z", z_text, "point as RE,IM")->required();

  auto* ray = app.add_subcommand("ray-max", "maximum of |F| along a ray");
  ray->add_option("--measure", measure_path, "measure JSON")->required();
  ray->add_option("--theta", theta, "ray angle in radians")->required();

  auto* sector = app.add_subcommand("sector-sup", "supremum of |F| over a sector");
  sector->add_option("--measure", measure_path, "measure JSON")->required();
  sector->add_option("--alpha", alpha, "sector half-angle in radians")->required();

  auto* calc = app.add_subcommand("calculus", "functional calculus F(-uA) on a model");
  calc->add_option("--measure", measure_path, "measure JSON")->required();
  calc->add_option("--model", model_path, "model JSON")->required();
  calc->add_option("--u", u_text, "scale as RE,IM")->required();

  std::string verify_cert;
  std::string cert_out;
  int density = 1000;
  auto* jordan = app.add_subcommand("jordan", "construct or re-verify a Jordan-curve certificate");
  jordan->add_option("--measure", measure_path, "measure JSON")->required();
  jordan->add_option("--verify", verify_cert, "certificate JSON to re-verify");
  jordan->add_option("--out", cert_out, "write the constructed certificate here");
  jordan->add_option("--density", density, "verification sample density")->check(CLI::PositiveNumber);

  std::string scenario;
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  bool runtime = false;
  auto* verify = app.add_subcommand("verify", "run a verification scenario and write its report");
  verify->add_option("scenario", scenario, "scenario name or 'all'")->required();
  verify->add_option("--config", config_path, "scenario configuration JSON");
  verify->add_option("--out", out_path, "report path")->required();
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--runtime", runtime, "record wall-clock runtime in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) {
      const auto mu = loadMeasure(measure_path);
      const cplx z = parseComplex(z_text);
      const cplx f = fbcalc::evalFB(mu, z);
      print({{"z", fbcalc::complexToJson(z)}, {"F", fbcalc::complexToJson(f)}, {"abs", std::abs(f)}});
      return kOk;
    }
    if (*ray) {
      const auto r = fbcalc::rayMax(loadMeasure(measure_path), theta);
      print({{"theta", theta}, {"r_star", r.r_star}, {"value", r.value}, {"location", fbcalc::complexToJson(r.location)}});
      return kOk;
    }
    if (*sector) {
      const auto s = fbcalc::sectorSupDetailed(loadMeasure(measure_path), alpha);
      print({{"alpha", alpha}, {"value", s.value}, {"theta_star", s.theta_star}});
      return kOk;
    }
    if (*calc) {
      const auto mu = loadMeasure(measure_path);
      const auto model = fbcalc::modelFromJson(fbcalc::readJsonFile(model_path));
      const auto res = fbcalc::functionalCalculus(model, mu, parseComplex(u_text));
      print({{"u", fbcalc::complexToJson(res.u)},
             {"dimension", res.matrix.size()},
             {"norm", fbcalc::opNorm(res.matrix)},
             {"spectral_radius", fbcalc::specRadius(res.matrix)},
             {"quad_error", res.quad_error}});
      return kOk;
    }
    if (*jordan) {
      const auto mu = loadMeasure(measure_path);
      if (!verify_cert.empty()) {
        const auto cert = fbcalc::certificateFromJson(fbcalc::readJsonFile(verify_cert));
        const auto check = fbcalc::verifyCertificate(mu, cert, density);
        print({{"ok", check.ok},
               {"margin_i", check.margin_i},
               {"margin_ii", check.margin_ii},
               {"simple", check.simple},
               {"failures", check.failures}});
        return check.ok ? kOk : kChecksFailed;
      }
      fbcalc::JordanOptions opts;
      opts.density = density;
      const auto cert = fbcalc::constructCertificate(mu, opts);
      const auto j = fbcalc::toJson(cert);
      if (!cert_out.empty()) fbcalc::writeJsonFile(j, cert_out);
      print(j);
      return kOk;
    }
    if (*verify) {
      const nlohmann::json config = config_path.empty() ? nlohmann::json::object() : fbcalc::readJsonFile(config_path);
      const auto report = fbcalc::runScenario(scenario, config, runtime);
      fbcalc::emitReport(report, format == "csv" ? fbcalc::ReportFormat::Csv : fbcalc::ReportFormat::Json, out_path);
      std::size_t pass = 0;
      std::size_t failed = 0;
      std::size_t errors = 0;
      for (const auto& c : report.checks) {
        if (c.verdict == fbcalc::Verdict::Pass) ++pass;
        if (c.verdict == fbcalc::Verdict::Fail) ++failed;
        if (c.verdict == fbcalc::Verdict::Error) ++errors;
      }
      std::fprintf(stderr, "%s: %zu pass, %zu fail, %zu error, %zu checks -> %s\n", scenario.c_str(), pass, failed,
                   errors, report.checks.size(), out_path.c_str());
      if (errors > 0) return kNumeric;
      return failed > 0 ? kChecksFailed : kOk;
    }
  } catch (const fbcalc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exitFor(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
