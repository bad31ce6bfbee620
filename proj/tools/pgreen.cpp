// pgreen: command-line front end over the C interface.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgreen/pgreen.h"

using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUnsupported = 2, kInputError = 3, kNumerical = 4, kInternal = 5 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int report_error(int status) {
  Json e{{"error", pg_last_error_code()}, {"message", pg_last_error()}, {"status", status}};
  std::cerr << e.dump() << '\n';
  return status;
}

int report_input(const std::string& message) {
  Json e{{"error", "invalid-input"}, {"message", message}, {"status", kInputError}};
  std::cerr << e.dump() << '\n';
  return kInputError;
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  pg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

Json parse_document(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

Json unit_domain(const std::string& kind, int n) {
  Json center = Json::array();
  for (int i = 0; i < n; ++i) center.push_back({0.0, 0.0});
  if (kind == "ball") return {{"kind", "ball"}, {"params", {{"center", center}, {"radius", 1.0}}}};
  return {{"kind", "polydisc"}, {"params", {{"center", center}, {"radii", std::vector<double>(n, 1.0)}}}};
}

// A file path, inline JSON, or one of disc, bidisc, polydisc:N, ball:N.
Json load_domain(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_document(spec, "domain");
  static const std::regex shorthand(R"((disc|bidisc|polydisc|ball)(?::(\d+))?)");
  std::smatch m;
  if (std::regex_match(spec, m, shorthand)) {
    const std::string kind = m[1];
    int n = m[2].matched ? std::stoi(m[2]) : (kind == "bidisc" ? 2 : 1);
    if ((kind == "disc" || kind == "bidisc") && m[2].matched)
      throw InputError("'" + kind + "' takes no dimension");
    if (n < 1) throw InputError("domain dimension must be at least 1");
    return unit_domain(kind == "ball" ? "ball" : "polydisc", n);
  }
  return parse_document(read_file(spec), "domain file '" + spec + "'");
}

Json load_disc(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return parse_document(spec, "disc");
  return parse_document(read_file(spec), "disc file '" + spec + "'");
}

// Complex literal: 0.5, -0.3i, 0.5+0.1i, 1e-3-2e-4i, i, -i.
Json parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  static const std::string num = R"(((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
  static const std::regex real_only("^([+-]?)" + num + "$");
  static const std::regex imag_only("^([+-]?)" + num + "?i$");
  static const std::regex both("^([+-]?)" + num + "([+-])" + num + "?i$");
  std::smatch m;
  auto value = [](const std::ssub_match& sign, const std::ssub_match& digits) {
    const double v = digits.matched ? std::stod(digits.str()) : 1.0;
    return sign.str() == "-" ? -v : v;
  };
  if (std::regex_match(s, m, real_only)) return {value(m[1], m[2]), 0.0};
  if (std::regex_match(s, m, imag_only)) return {0.0, value(m[1], m[2])};
  if (std::regex_match(s, m, both)) return {value(m[1], m[2]), value(m[3], m[4])};
  throw InputError("cannot parse complex number '" + s + "'");
}

// Comma-separated complex coordinates.
Json parse_point(const std::string& text) {
  Json p = Json::array();
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) p.push_back(parse_complex(part));
  if (p.empty()) throw InputError("empty point '" + text + "'");
  return p;
}

struct Common {
  std::vector<std::string> domains;
  std::vector<std::string> poles;
  std::vector<std::string> bases;
  std::vector<std::string> discs;
  std::optional<double> level;
  std::optional<int> degree;
  std::optional<int> restarts;
  std::optional<unsigned long long> seed;
  std::optional<double> tolerance;
  int preimages = 1;
  std::string config_path;
  std::string pairs_path;
  std::string certificate;
  std::string out;
};

Json config_object(const Common& c) {
  if (c.config_path.empty()) return Json::object();
  Json j = parse_document(read_file(c.config_path), "config file '" + c.config_path + "'");
  if (!j.is_object()) throw InputError("config file must hold a JSON object");
  return j;
}

// Optimizer settings from --config (its "optimizer" object) and the flags.
Json optimizer_config(const Common& c) {
  Json all = config_object(c);
  Json opt = Json::object();
  for (const auto& [key, value] : all.items()) {
    if (key == "optimizer") opt = value;
    else if (key != "pipeline") throw InputError("config: unknown key '" + key + "'");
  }
  if (c.degree) opt["degree"] = *c.degree;
  if (c.restarts) opt["restarts"] = *c.restarts;
  if (c.seed) opt["rng_seed"] = *c.seed;
  if (c.tolerance) opt["tolerance"] = *c.tolerance;
  return opt;
}

Json pipeline_config(const Common& c) {
  Json all = config_object(c);
  Json pipe = Json::object();
  for (const auto& [key, value] : all.items()) {
    if (key == "pipeline") pipe = value;
    else if (key != "optimizer") throw InputError("config: unknown key '" + key + "'");
  }
  if (c.tolerance) pipe["quadrature"]["tolerance"] = *c.tolerance;
  return pipe;
}

void require_count(const std::vector<std::string>& v, size_t n, const char* flag) {
  if (v.size() != n)
    throw InputError(std::string(flag) + " must be given " + std::to_string(n) + " time(s)");
}

int cmd_eval(const Common& c) {
  require_count(c.domains, 1, "--domain");
  require_count(c.poles, 1, "--pole");
  require_count(c.bases, 1, "--base");
  const Json q{{"domain", load_domain(c.domains[0])}, {"pole", parse_point(c.poles[0])}, {"eval", parse_point(c.bases[0])}};
  char* out = nullptr;
  const pg_status s = pg_green_eval(q.dump().c_str(), &out);
  if (s != PG_OK) return report_error(s);
  write_output(take(out), c.out);
  return kOk;
}

int cmd_upper(const Common& c) {
  require_count(c.domains, 1, "--domain");
  require_count(c.poles, 1, "--pole");
  require_count(c.bases, 1, "--base");
  const Json q{{"domain", load_domain(c.domains[0])}, {"pole", parse_point(c.poles[0])}, {"eval", parse_point(c.bases[0])}};
  char* out = nullptr;
  const pg_status s = pg_upper_bound(q.dump().c_str(), c.preimages, optimizer_config(c).dump().c_str(), &out);
  if (s != PG_OK) return report_error(s);
  write_output(take(out), c.out);
  return kOk;
}

int cmd_construct(const Common& c) {
  require_count(c.domains, 2, "--domain");
  require_count(c.poles, 2, "--pole");
  require_count(c.bases, 2, "--base");
  require_count(c.discs, 2, "--disc");
  if (!c.level) throw InputError("--level is required");
  const Json d1 = load_domain(c.domains[0]), d2 = load_domain(c.domains[1]);
  const Json a1 = parse_point(c.poles[0]), b1 = parse_point(c.poles[1]);
  const Json a2 = parse_point(c.bases[0]), b2 = parse_point(c.bases[1]);
  const Json problem{{"domain1", d1},  {"domain2", d2},  {"pole1", a1},
                     {"pole2", b1},    {"base1", a2},    {"base2", b2},
                     {"level", *c.level}, {"disc1", load_disc(c.discs[0])}, {"disc2", load_disc(c.discs[1])}};
  pg_certificate* cert = nullptr;
  const pg_status s = pg_certificate_construct(problem.dump().c_str(), pipeline_config(c).dump().c_str(), &cert);
  if (s == PG_UNSUPPORTED) {
    const std::string reason = pg_last_error();
    Json pole = a1, base = a2;
    for (const auto& z : b1) pole.push_back(z);
    for (const auto& z : b2) base.push_back(z);
    const Json q{{"domain", {{"kind", "product"}, {"params", {{"factors", {d1, d2}}}}}},
                 {"pole", pole},
                 {"eval", base}};
    char* out = nullptr;
    const pg_status f = pg_upper_bound(q.dump().c_str(), c.preimages, optimizer_config(c).dump().c_str(), &out);
    if (f != PG_OK) return report_error(f);
    Json result{{"unsupported", reason}, {"fallback", parse_document(take(out), "fallback result")}};
    write_output(result.dump(2), c.out);
    Json e{{"error", "unsupported-covering"}, {"message", reason}, {"status", kUnsupported}};
    std::cerr << e.dump() << '\n';
    return kUnsupported;
  }
  if (s != PG_OK) return report_error(s);
  char* out = nullptr;
  const pg_status w = pg_certificate_to_json(cert, &out);
  pg_certificate_free(cert);
  if (w != PG_OK) return report_error(w);
  write_output(take(out), c.out);
  return kOk;
}

int cmd_verify(const Common& c) {
  pg_certificate* cert = nullptr;
  const pg_status s = pg_certificate_from_json(read_file(c.certificate).c_str(), &cert);
  if (s != PG_OK) return report_error(s);
  char* report = nullptr;
  const pg_status v = pg_certificate_verify(cert, &report);
  pg_certificate_free(cert);
  if (v != PG_OK && v != PG_VERIFY_FAILED) return report_error(v);
  write_output(take(report), c.out);
  if (v == PG_VERIFY_FAILED) {
    report_error(v);
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_gap(const Common& c) {
  require_count(c.domains, 2, "--domain");
  if (c.pairs_path.empty()) throw InputError("--pairs is required");
  Json pairs = parse_document(read_file(c.pairs_path), "pairs file '" + c.pairs_path + "'");
  const Json request{{"domain1", load_domain(c.domains[0])},
                     {"domain2", load_domain(c.domains[1])},
                     {"pairs", pairs},
                     {"k", c.preimages},
                     {"config", optimizer_config(c)}};
  char* out = nullptr;
  const pg_status s = pg_gap_report(request.dump().c_str(), &out);
  if (s != PG_OK) return report_error(s);
  write_output(take(out), c.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pluricomplex Green functions through analytic discs, with product-disc certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pg_version()));
  Common c;

  auto add_points = [&](CLI::App* s, bool two) {
    const std::string n = two ? " (once per factor)" : "";
    s->add_option("--domain", c.domains, "domain file, inline JSON, or disc | bidisc | polydisc:N | ball:N" + n)->required();
    s->add_option("--pole", c.poles, "pole, comma-separated complex coordinates such as 0.5,0.1-0.2i" + n)->required();
    s->add_option("--base", c.bases, "evaluation point (disc center)" + n)->required();
  };
  auto add_search = [&](CLI::App* s) {
    s->add_option("--preimages", c.preimages, "designated preimages k")->check(CLI::PositiveNumber);
    s->add_option("--degree", c.degree, "disc degree d >= k");
    s->add_option("--restarts", c.restarts, "optimizer restarts");
    s->add_option("--seed", c.seed, "optimizer seed");
    s->add_option("--config", c.config_path, "JSON file with 'optimizer' and 'pipeline' objects");
  };

  auto* eval = app.add_subcommand("eval", "closed-form Green value");
  add_points(eval, false);
  eval->add_option("--out", c.out, "output file (stdout if absent)");

  auto* upper = app.add_subcommand("upper", "disc upper bound by derivative-free search");
  add_points(upper, false);
  add_search(upper);
  upper->add_option("--tolerance", c.tolerance, "simplex convergence tolerance");
  upper->add_option("--out", c.out, "output file");

  auto* construct = app.add_subcommand("construct", "product-disc certificate for D1 x D2");
  add_points(construct, true);
  construct->add_option("--disc", c.discs, "disc file per factor, phi(0) = base")->required();
  construct->add_option("--level", c.level, "level N to beat")->required();
  add_search(construct);
  construct->add_option("--tolerance", c.tolerance, "Jensen quadrature tolerance");
  construct->add_option("--out", c.out, "certificate file");

  auto* verify = app.add_subcommand("verify", "re-check a certificate file from scratch");
  verify->add_option("certificate", c.certificate, "certificate file")->required();
  verify->add_option("--out", c.out, "residual report file");

  auto* gap = app.add_subcommand("gap", "upper bounds against the projection lower bound on D1 x D2");
  gap->add_option("--domain", c.domains, "factor domain (twice)")->required();
  gap->add_option("--pairs", c.pairs_path, "JSON file [{pole, eval}, ...]")->required();
  add_search(gap);
  gap->add_option("--out", c.out, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*eval) return cmd_eval(c);
    if (*upper) return cmd_upper(c);
    if (*construct) return cmd_construct(c);
    if (*verify) return cmd_verify(c);
    if (*gap) return cmd_gap(c);
  } catch (const InputError& e) {
    return report_input(e.what());
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}, {"status", kInternal}}.dump() << '\n';
    return kInternal;
  }
  return kInternal;
}
