#include "stringci/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "stringci/errors.hpp"
#include "stringci/oracle.hpp"
#include "stringci/report.hpp"
#include "stringci/search.hpp"

namespace stringci::cli {

// ------------------------------------------------------------------ parsing

namespace {

std::vector<int> int_vector(const Json& j, const char* field) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) throw InvalidInstanceError(std::string(field) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInstanceError(std::string(field) + " must contain integers only");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<long>> int_matrix(const Json& j) {
  if (!j.is_array()) throw InvalidInstanceError("D must be an array of rows");
  std::vector<std::vector<long>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InvalidInstanceError("every row of D must be an array of integers");
    std::vector<long> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw InvalidInstanceError("D must contain integers only");
      r.push_back(v.get<long>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInstanceError("malformed " + what + ": " + e.what());
  }
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  const Json j = parse_json(text, "instance file");
  if (!j.is_object() || !j.contains("n")) throw InvalidInstanceError("instance must be an object with field n");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "D" && key != "label") throw InvalidInstanceError("unknown instance field '" + key + "'");
  }
  std::vector<std::vector<long>> d;
  if (j.contains("D")) d = int_matrix(j["D"]);
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InvalidInstanceError("label must be a string");
    label = j["label"].get<std::string>();
  }
  return Instance{CompleteIntersection(int_vector(j["n"], "n"), std::move(d)), label};
}

Instance parse_inline(const std::string& text) {
  std::optional<std::vector<int>> n;
  std::vector<std::vector<long>> d;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidInstanceError("inline instance parts look like key=value, got '" + part + "'");
    std::string key = part.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    const Json value = parse_json(part.substr(eq + 1), "inline value for " + key);
    if (key == "n") {
      n = int_vector(value, "n");
    } else if (key == "D") {
      d = int_matrix(value);
    } else {
      throw InvalidInstanceError("unknown inline key '" + key + "'");
    }
  }
  if (!n) throw InvalidInstanceError("inline instance needs n=...");
  return Instance{CompleteIntersection(*n, std::move(d)), ""};
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstanceError("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::complex<double> parse_complex(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (t.empty()) throw InvalidInstanceError("empty complex number");
  const char* begin = t.c_str();
  char* end = nullptr;
  const double first = std::strtod(begin, &end);
  if (end == begin) throw InvalidInstanceError("bad complex number '" + text + "'");
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i' && end[1] == '\0') return {0.0, first};
  if (*end == '+' || *end == '-') {
    const char* rest = end;
    const double second = std::strtod(rest, &end);
    if (end != rest && *end == 'i' && end[1] == '\0') return {first, second};
  }
  throw InvalidInstanceError("bad complex number '" + text + "'");
}

int default_threads() {
  if (const char* env = std::getenv("STRINGCI_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ------------------------------------------------------------------ commands

namespace {

enum class Format { human, json, csv };

struct Common {
  std::string file;
  std::string inline_text;
  std::string format = "human";

  Format parsed_format() const {
    if (format == "human") return Format::human;
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    throw InvalidInstanceError("unknown format '" + format + "'");
  }

  Instance instance() const {
    if (!file.empty() && !inline_text.empty()) throw InvalidInstanceError("give either a file or --inline, not both");
    if (!inline_text.empty()) return parse_inline(inline_text);
    if (file.empty()) throw InvalidInstanceError("an instance file or --inline is required");
    return load_instance_file(file);
  }
};

void add_instance_options(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "Instance file (JSON with fields n, D, label)");
  cmd->add_option("--inline", c.inline_text, "Instance as 'n=[...];D=[[...],...]'");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void print_certificate_human(std::ostream& out, const StringCertificate& cert) {
  out << "string: " << yes_no(cert.is_string);
  if (!cert.decided()) out << " (undecided: m_q + 2 <= n_q fails, criterion reported only)";
  out << "\n";
  out << "  lefschetz_ok:        " << yes_no(cert.lefschetz_ok) << "\n";
  out << "  matrix_criterion_ok: " << yes_no(cert.matrix_criterion_ok) << "\n";
  out << "  pushforward_p1_zero: " << yes_no(cert.pushforward_p1_zero) << "\n";
  out << "  w2_zero_mod2:        " << yes_no(cert.w2_zero_mod2) << "\n";
}

void print_series_human(std::ostream& out, const QSeries& s) {
  for (int k = 0; k <= s.order(); ++k) out << "  q^" << std::left << std::setw(4) << 2 * k << s[k].get_str() << "\n";
  out << std::right;
}

// ---- genus

struct GenusOptions {
  Common common;
  int q_order = 8;
  int y_order = -1;
  std::vector<std::string> kinds;
};

int cmd_genus(const GenusOptions& o, std::ostream& out) {
  const Format fmt = o.common.parsed_format();
  const Instance inst = o.common.instance();
  const CompleteIntersection& ci = inst.ci;
  const int degree = std::accumulate(ci.n().begin(), ci.n().end(), 0);
  const int y_order = o.y_order < 0 ? degree : o.y_order;
  if (o.q_order < 0) throw InvalidInstanceError("--q-order must be >= 0");
  std::vector<std::string> kinds = o.kinds;
  if (kinds.empty()) kinds = {"witten", "ahat", "lgenus", "ahat_twisted", "lgenus_twisted", "euler"};

  std::vector<GenusReport> reports;
  std::optional<Integer> euler;
  for (const auto& k : kinds) {
    if (k == "witten") reports.push_back(genus(ci, witten_series(y_order, o.q_order)));
    else if (k == "ahat") reports.push_back(genus(ci, ahat_series(y_order)));
    else if (k == "lgenus") reports.push_back(genus(ci, lgenus_series(y_order)));
    else if (k == "ahat_twisted") reports.push_back(twisted_genus(ci, ahat_series(y_order)));
    else if (k == "lgenus_twisted") reports.push_back(twisted_genus(ci, lgenus_series(y_order)));
    else if (k == "euler") euler = euler_characteristic(ci);
  }
  const StringCertificate cert = is_string(ci);

  if (fmt == Format::json) {
    Json j;
    j["instance"] = to_json(ci, inst.label);
    j["complex_dim"] = ci.complex_dim();
    j["real_dim"] = ci.real_dim();
    j["string"] = to_json(cert);
    j["genera"] = Json::array();
    for (const auto& r : reports) j["genera"].push_back(to_json(r));
    if (euler) j["euler"] = euler->get_str();
    out << dump(j);
  } else if (fmt == Format::csv) {
    out << "kind,q_power,value\n";
    for (const auto& r : reports) {
      for (int k = 0; k <= r.value.order(); ++k) out << to_string(r.kind) << "," << 2 * k << "," << r.value[k].get_str() << "\n";
    }
    if (euler) out << "euler,0," << euler->get_str() << "\n";
  } else {
    out << "instance: " << ci.to_string();
    if (!inst.label.empty()) out << "  [" << inst.label << "]";
    out << "\ncomplex dimension: " << ci.complex_dim() << " (real " << ci.real_dim() << ")\n";
    print_certificate_human(out, cert);
    for (const auto& r : reports) {
      if (r.kind == GenusKind::witten) {
        out << "witten: " << r.value.to_string() << "\n";
        out << "witten genus (coefficients of q^{2n}):\n";
        print_series_human(out, r.value);
      } else {
        out << to_string(r.kind) << ": " << r.value[0].get_str() << "\n";
      }
    }
    if (euler) out << "euler: " << euler->get_str() << "\n";
  }
  return kOk;
}

// ---- check-string

int cmd_check_string(const Common& o, std::ostream& out) {
  const Format fmt = o.parsed_format();
  const Instance inst = o.instance();
  const StringCertificate cert = is_string(inst.ci);
  if (fmt == Format::json) {
    Json j;
    j["instance"] = to_json(inst.ci, inst.label);
    j["string"] = to_json(cert);
    out << dump(j);
  } else if (fmt == Format::csv) {
    out << "is_string,decided,lefschetz_ok,matrix_criterion_ok,pushforward_p1_zero,w2_zero_mod2\n"
        << yes_no(cert.is_string) << "," << yes_no(cert.decided()) << "," << yes_no(cert.lefschetz_ok) << ","
        << yes_no(cert.matrix_criterion_ok) << "," << yes_no(cert.pushforward_p1_zero) << ","
        << yes_no(cert.w2_zero_mod2) << "\n";
  } else {
    out << "instance: " << inst.ci.to_string() << "\n";
    print_certificate_human(out, cert);
  }
  if (!cert.decided()) return kPreconditionError;
  return cert.is_string ? kOk : kFalse;
}

// ---- search / verify

struct SearchOptions {
  int s = 1;
  int t_max = 1;
  std::vector<int> n;
  int n_max = 0;
  bool allow_odd_dim = false;
  int q_order = 8;
  int threads = 0;
  std::string format = "human";

  SearchBounds bounds() const {
    SearchBounds b;
    b.s = s;
    b.t_max = t_max;
    b.n = n;
    b.n_max = n_max;
    b.allow_odd_dim = allow_odd_dim;
    if (!n.empty() && n_max > 0) throw InvalidInstanceError("give either --n or --n-max, not both");
    try {
      b.validate();
    } catch (const PreconditionError& e) {
      throw InvalidInstanceError(std::string("invalid bounds: ") + e.what());
    }
    return b;
  }
};

void add_search_options(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--s", o.s, "Number of projective factors");
  cmd->add_option("--t-max", o.t_max, "Maximum number of divisors");
  cmd->add_option("--n", o.n, "Fixed ambient dimensions (comma separated)")->delimiter(',');
  cmd->add_option("--n-max", o.n_max, "Try every n with 1 <= n_q <= n_max");
  cmd->add_flag("--allow-odd-dim", o.allow_odd_dim, "Include odd complex dimension");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
}

std::string matrix_string(const Candidate& c) { return CompleteIntersection(c.n, c.degrees).to_string(); }

int cmd_search(const SearchOptions& o, std::ostream& out) {
  const SearchBounds b = o.bounds();
  if (o.format == "json") {
    Json j;
    j["matrices"] = Json::array();
    enumerate_string_matrices(b, [&](const Candidate& c) { j["matrices"].push_back(to_json(c)); });
    j["count"] = j["matrices"].size();
    out << dump(j);
  } else if (o.format == "csv") {
    out << "n,D\n";
    enumerate_string_matrices(b, [&](const Candidate& c) {
      const Json j = to_json(c);
      out << "\"" << j["n"].dump() << "\",\"" << j["D"].dump() << "\"\n";
    });
  } else {
    std::size_t count = 0;
    enumerate_string_matrices(b, [&](const Candidate& c) {
      out << matrix_string(c) << "\n";
      ++count;
    });
    out << count << " matrices\n";
  }
  return kOk;
}

void print_sweep_section(std::ostream& out, const std::string& title, const std::vector<const SweepEntry*>& entries) {
  out << title << ": " << entries.size() << " instances\n";
  for (const SweepEntry* e : entries) {
    out << "  " << matrix_string(e->candidate) << "  dim_C=" << e->complex_dim << "  witten "
        << (e->vanishes ? "= 0" : "!= 0: " + e->witten.to_string()) << "  (" << std::fixed << std::setprecision(2)
        << e->millis << " ms)\n";
    out.unsetf(std::ios::floatfield);
  }
}

int cmd_verify(const SearchOptions& o, std::ostream& out) {
  const SearchBounds b = o.bounds();
  if (o.q_order < 0) throw InvalidInstanceError("--q-order must be >= 0");
  const SweepReport r = verify_theorem(b, o.q_order, o.threads > 0 ? o.threads : default_threads());
  if (o.format == "json") {
    out << dump(to_json(r));
  } else if (o.format == "csv") {
    out << "section,n,D,complex_dim,vanishes,millis\n";
    auto rows = [&](const std::vector<SweepEntry>& v, const char* section) {
      for (const auto& e : v) {
        const Json j = to_json(e.candidate);
        out << section << ",\"" << j["n"].dump() << "\",\"" << j["D"].dump() << "\"," << e.complex_dim << ","
            << yes_no(e.vanishes) << "," << e.millis << "\n";
      }
    };
    rows(r.instances, "instances");
    rows(r.odd_dimension, "odd_dimension");
  } else {
    std::vector<const SweepEntry*> single, multi, odd;
    for (const auto& e : r.instances) (e.candidate.n.size() == 1 ? single : multi).push_back(&e);
    for (const auto& e : r.odd_dimension) odd.push_back(&e);
    out << "Witten genus through q^" << 2 * r.q_order << "\n";
    print_sweep_section(out, "single projective factor", single);
    print_sweep_section(out, "products of projective spaces", multi);
    if (b.allow_odd_dim) print_sweep_section(out, "odd complex dimension", odd);
    out << r.instances.size() + r.odd_dimension.size() << " instances, " << r.failures() << " failures, "
        << std::fixed << std::setprecision(1) << r.total_millis << " ms\n";
    out.unsetf(std::ios::floatfield);
  }
  return r.failures() == 0 ? kOk : kFalse;
}

// ---- oracle

struct OracleOptions {
  Common common;
  std::string kind = "witten";
  std::string q_text = "0.1";
  double tolerance = 1e-6;
  int samples = 64;
  int q_order = 8;
  std::vector<double> radii;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  const Format fmt = o.common.parsed_format();
  const Instance inst = o.common.instance();
  const CompleteIntersection& ci = inst.ci;
  const std::complex<double> q = parse_complex(o.q_text);
  if (!(o.tolerance > 0.0)) throw InvalidInstanceError("--tolerance must be positive");
  const int degree = std::accumulate(ci.n().begin(), ci.n().end(), 0);

  oracle::NumericGenus kind = oracle::NumericGenus::witten;
  QSeries exact(0);
  if (o.kind == "witten") {
    exact = genus(ci, witten_series(degree, o.q_order)).value;
  } else if (o.kind == "ahat") {
    kind = oracle::NumericGenus::ahat;
    exact = genus(ci, ahat_series(degree)).value;
  } else if (o.kind == "lgenus") {
    kind = oracle::NumericGenus::lgenus;
    exact = genus(ci, lgenus_series(degree)).value;
  } else {
    throw InvalidInstanceError("oracle supports witten, ahat, lgenus");
  }
  const std::complex<double> exact_value = exact.evaluate(q);

  oracle::ContourSpec contour;
  contour.q = q;
  contour.samples = o.samples;
  if (!o.radii.empty()) contour.radii = o.radii.size() == 1 ? std::vector<double>(ci.s(), o.radii[0]) : o.radii;
  const oracle::ResidueResult res = oracle::residue_genus(ci, kind, contour);

  const bool absolute = exact.is_zero();
  const double err = absolute ? std::abs(res.refined) : std::abs(res.refined - exact_value) / std::abs(exact_value);
  const bool ok = err <= o.tolerance;

  if (fmt == Format::json) {
    Json j;
    j["instance"] = to_json(ci, inst.label);
    j["kind"] = o.kind;
    j["q"] = {q.real(), q.imag()};
    j["exact"] = to_json(exact);
    j["exact_at_q"] = {exact_value.real(), exact_value.imag()};
    j["numeric"] = {res.refined.real(), res.refined.imag()};
    j["error_kind"] = absolute ? "absolute" : "relative";
    j["error"] = err;
    j["tolerance"] = o.tolerance;
    j["agree"] = ok;
    out << dump(j);
  } else if (fmt == Format::csv) {
    out << "kind,exact_re,exact_im,numeric_re,numeric_im,error,agree\n"
        << std::setprecision(17) << o.kind << "," << exact_value.real() << "," << exact_value.imag() << ","
        << res.refined.real() << "," << res.refined.imag() << "," << err << "," << yes_no(ok) << "\n";
  } else {
    out << std::setprecision(15);
    out << "instance: " << ci.to_string() << "\n";
    out << "genus: " << o.kind << " at q = " << q << "\n";
    out << "exact:   " << exact.to_string() << "\n";
    out << "exact at q:  " << exact_value << "\n";
    out << "residue:     " << res.refined << "\n";
    out << (absolute ? "absolute" : "relative") << " error: " << err << " (tolerance " << o.tolerance << ") -> "
        << (ok ? "agree" : "DISAGREE") << "\n";
  }
  return ok ? kOk : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genera and string conditions of complete intersections in products of projective spaces"};
  app.name("stringci");
  app.require_subcommand(1);

  GenusOptions genus_opts;
  auto* genus_cmd = app.add_subcommand("genus", "Witten, Ahat, L, twisted genera and Euler number");
  add_instance_options(genus_cmd, genus_opts.common);
  genus_cmd->add_option("--q-order", genus_opts.q_order, "Keep q^0 .. q^{2K}");
  genus_cmd->add_option("--y-order", genus_opts.y_order, "Characteristic series order (default: sum of n_q)");
  genus_cmd->add_option("--genus", genus_opts.kinds, "Genus to compute (repeatable)")
      ->check(CLI::IsMember({"witten", "ahat", "lgenus", "ahat_twisted", "lgenus_twisted", "euler"}));

  Common check_opts;
  auto* check_cmd = app.add_subcommand("check-string", "Decide whether the instance is string");
  add_instance_options(check_cmd, check_opts);

  SearchOptions search_opts;
  auto* search_cmd = app.add_subcommand("search", "Enumerate degree matrices with D^T D = diag(n_q + 1)");
  add_search_options(search_cmd, search_opts);

  SearchOptions verify_opts;
  verify_opts.q_order = 8;
  auto* verify_cmd = app.add_subcommand("verify", "Evaluate the Witten genus on every enumerated instance");
  add_search_options(verify_cmd, verify_opts);
  verify_cmd->add_option("--q-order", verify_opts.q_order, "Keep q^0 .. q^{2K}");
  verify_cmd->add_option("--threads", verify_opts.threads, "Worker threads (default: STRINGCI_THREADS or all cores)");

  OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the exact genus with a numeric residue");
  add_instance_options(oracle_cmd, oracle_opts.common);
  oracle_cmd->add_option("--genus", oracle_opts.kind, "witten, ahat or lgenus")
      ->check(CLI::IsMember({"witten", "ahat", "lgenus"}));
  oracle_cmd->add_option("--oracle-q", oracle_opts.q_text, "q value, e.g. 0.1 or 0.1+0.05i");
  oracle_cmd->add_option("--tolerance", oracle_opts.tolerance, "Relative (absolute when exact = 0) tolerance");
  oracle_cmd->add_option("--samples", oracle_opts.samples, "Samples per circle (power of two)");
  oracle_cmd->add_option("--radius", oracle_opts.radii, "Circle radius in the Chern-root variable (one or per factor)");
  oracle_cmd->add_option("--q-order", oracle_opts.q_order, "Exact-path q truncation");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*genus_cmd) return cmd_genus(genus_opts, out);
    if (*check_cmd) return cmd_check_string(check_opts, out);
    if (*search_cmd) return cmd_search(search_opts, out);
    if (*verify_cmd) return cmd_verify(verify_opts, out);
    if (*oracle_cmd) return cmd_oracle(oracle_opts, out);
  } catch (const InvalidInstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const Error& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPreconditionError;
  }
  return kInputError;
}

}  // namespace stringci::cli
