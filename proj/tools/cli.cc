// Copyright 2026 The Sumfold Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sumfold/bounds.h"
#include "sumfold/certificate.h"
#include "sumfold/errors.h"
#include "sumfold/families.h"
#include "sumfold/set_io.h"
#include "sumfold/setops.h"

namespace sumfold::cli {

namespace {

// Desk-scale guardrails for certify.
constexpr std::size_t kMaxCertifyN = 512;
constexpr double kMaxPredictedKA = 1e7;

// Raised when an exact check fails; carries the failed step.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string out;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::string split = "dp";
  bool force = false;
};

struct FamilyFlags {
  std::string spec;
  std::string family;
  int n = 8;
  int n1 = 3;
  int n2 = 3;
  std::string start = "1";
  std::string step = "1";
  std::string ratio = "2";
  std::string ratio2 = "3";
  std::string source = "range";
  int range_max = 200;
  std::vector<std::string> parts;

  void Register(CLI::App* app) {
    app->add_option("--spec", spec,
                    "Full family spec, e.g. gp:n=8,ratio=2 or "
                    "union(gp:n=4|ap:n=3,start=100)");
    app->add_option("--family", family, "ap, gp, gp2d, random or union");
    app->add_option("--n", n, "Number of elements (ap, gp, random)");
    app->add_option("--n1", n1, "First grid side (gp2d)");
    app->add_option("--n2", n2, "Second grid side (gp2d)");
    app->add_option("--start", start, "First element (rational)");
    app->add_option("--step", step, "Common difference (ap)");
    app->add_option("--ratio", ratio, "Common ratio (gp, gp2d)");
    app->add_option("--ratio2", ratio2, "Second ratio (gp2d)");
    app->add_option("--source", source, "random source: range or gp");
    app->add_option("--range-max", range_max, "Population size (random)");
    app->add_option("--part", parts, "Union part spec (give twice)");
  }

  FamilySpec Build(const GlobalFlags& global) const {
    FamilySpec s;
    if (!spec.empty()) {
      s = FamilySpec::Parse(spec);
    } else {
      if (family.empty()) throw UsageError("either --family or --spec is required");
      if (family == "union") {
        if (parts.size() != 2) throw UsageError("union needs exactly two --part specs");
        s.kind = FamilyKind::kUnion;
        s.left = std::make_shared<const FamilySpec>(FamilySpec::Parse(parts[0]));
        s.right = std::make_shared<const FamilySpec>(FamilySpec::Parse(parts[1]));
      } else {
        s = FamilySpec::Parse(family);
        s.n = n;
        s.n1 = n1;
        s.n2 = n2;
        s.start = ParseFlagRational("--start", start);
        s.step = ParseFlagRational("--step", step);
        s.ratio = ParseFlagRational("--ratio", ratio);
        s.ratio2 = ParseFlagRational("--ratio2", ratio2);
        s.range_max = range_max;
        if (source == "range") {
          s.source = RandomSource::kIntegerRange;
        } else if (source == "gp") {
          s.source = RandomSource::kGeometric;
        } else {
          throw UsageError("--source must be 'range' or 'gp'");
        }
      }
    }
    if (global.seed) s.seed = *global.seed;
    return s;
  }

  static Rational ParseFlagRational(const char* flag, const std::string& text) {
    try {
      return Rational::Parse(text);
    } catch (const std::exception& e) {
      throw UsageError(std::string(flag) + ": " + e.what());
    }
  }
};

// Writes to --out when given, otherwise to `out`.
void Emit(const GlobalFlags& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
  if (!f) throw UsageError("failed writing " + g.out);
}

std::string Decimal(double v, int places) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

std::string Scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Rational FromCount(std::uint64_t v) {
  return Rational(mpz_class(static_cast<unsigned long>(v)));
}

// Predicted |kA|: the number of k-multisets, and for sets of integers (after
// clearing denominators) also the span k (max - min) / g + 1.
double PredictKfoldSize(const FiniteSet& a, int k) {
  double multisets = 1;
  for (int i = 0; i < k; ++i) {
    multisets *= static_cast<double>(a.size() + i) / (i + 1);
  }
  mpz_class l = 1;
  for (const Rational& r : a) {
    mpz_class d = r.Denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class lo = mpq_class(a.min().ToMpq() * l).get_num();
  mpz_class g = 0;
  for (const Rational& r : a) {
    mpz_class v = mpq_class(r.ToMpq() * l).get_num() - lo;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) return 1;
  mpz_class hi = mpq_class(a.max().ToMpq() * l).get_num();
  double span = mpz_class((hi - lo) / g).get_d() * k + 1;
  return std::min(multisets, span);
}

// --- gen ---------------------------------------------------------------

int CmdGen(const GlobalFlags& g, const FamilyFlags& f, std::ostream& out) {
  FiniteSet a = Generate(f.Build(g));
  Emit(g, out, SetToJson(a));
  return kExitOk;
}

// --- compute -----------------------------------------------------------

int CmdCompute(const GlobalFlags& g, const std::string& path, int k,
               std::ostream& out) {
  if (k < 1) throw UsageError("--k must be >= 1");
  FiniteSet a = ReadSetFile(path);
  std::size_t aa = ProductSet(a, a).size();
  std::size_t quotient = QuotientSet(a, a).size();
  std::size_t ka = KFoldSum(a, k).size();
  std::size_t kprod = KFoldProduct(a, k).size();
  Rational m = FromCount(aa) / FromCount(a.size());
  Rational ruzsa = FromCount(aa) * FromCount(aa) / FromCount(a.size());
  bool ruzsa_ok = FromCount(quotient) <= ruzsa;

  std::string ks = std::to_string(k);
  if (g.json) {
    nlohmann::ordered_json j;
    j["n"] = a.size();
    j["k"] = k;
    j["product_set_size"] = aa;
    j["quotient_size"] = quotient;
    j["kA_size"] = ka;
    j["kfold_product_size"] = kprod;
    j["M"] = RationalJson(m);
    j["ruzsa_bound"] = RationalJson(ruzsa);
    j["ruzsa_ok"] = ruzsa_ok;
    Emit(g, out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "|A| = " << a.size() << "\n"
      << "|AA| = " << aa << "\n"
      << "|A/A| = " << quotient << "\n"
      << "|" << ks << "A| = " << ka << "\n"
      << "|A^(" << ks << ")| = " << kprod << "\n"
      << "M = " << m << "\n"
      << "ruzsa: |A/A| = " << quotient << " <= |AA|^2/|A| = " << ruzsa << " : "
      << (ruzsa_ok ? "ok" : "FAILED") << "\n";
    Emit(g, out, s.str());
  }
  if (!ruzsa_ok) throw CheckFailed("ruzsa check failed");
  return kExitOk;
}

// --- certify -----------------------------------------------------------

std::string Summary(const Certificate& c) {
  std::ostringstream s;
  auto flag = [](bool b) { return b ? "ok" : "FAILED"; };
  s << "n = " << c.n << ", k = " << c.k << " (split " << c.k1 << "+" << c.k2
    << "), M = " << c.m << "\n"
    << "|A/A| = " << c.quotient_size << ", threshold = " << c.threshold
    << ", popular slopes m = " << c.popular_count
    << ", popular mass = " << c.popular_mass << "\n"
    << "blocks: " << c.blocks.size() << ", sum of sizes = " << c.sum_of_blocks
    << ", |kA| = " << c.ka_size << "\n"
    << "disjoint: " << flag(c.disjoint_ok)
    << ", product formula: " << flag(c.product_formula_ok)
    << ", containment: " << flag(c.containment_ok)
    << ", chain |kA|^2 >= sum: " << flag(c.chain_ok) << "\n";
  if (c.disjoint_witness) {
    s << "collision at " << c.disjoint_witness->point << " between blocks "
      << c.disjoint_witness->first_block + 1 << " and "
      << c.disjoint_witness->second_block + 1 << "\n";
  }
  s << "constants: psi = " << c.bound_constants.psi
    << ", D = " << c.bound_constants.d
    << ", log2 C = " << c.bound_constants.log2_c << " (tree "
    << c.bound_constants.split.ToString() << ")\n"
    << "bound ~ " << Scientific(c.theorem_bound->Approx()) << " ["
    << ComparisonModeName(c.comparison.mode) << "]: |kA| >= bound "
    << flag(c.theorem_holds) << "\n";
  return s.str();
}

int CmdCertify(const GlobalFlags& g, const std::string& path, int k,
               const std::string& m_text, std::ostream& out) {
  if (k < 2) throw UsageError("certify needs --k >= 2");
  FiniteSet a = ReadSetFile(path);
  if (!g.force) {
    if (a.size() > kMaxCertifyN) {
      throw UsageError("set has " + std::to_string(a.size()) +
                       " elements (> 512); pass --force to certify anyway");
    }
    if (PredictKfoldSize(a, k) > kMaxPredictedKA) {
      throw UsageError("predicted |kA| exceeds 10^7; pass --force to certify anyway");
    }
  }
  CertifyOptions options;
  if (!m_text.empty()) {
    options.m_override = FamilyFlags::ParseFlagRational("--m", m_text);
  }
  Certificate cert = Certify(a, k, SplitStrategy::Parse(g.split), options);
  std::string json = CertificateToJson(cert).dump(2) + "\n";
  if (!g.out.empty()) {
    Emit(g, out, json);
    out << Summary(cert);
  } else if (g.json) {
    out << json;
  } else {
    out << Summary(cert);
  }
  if (!cert.AllChecksPass()) {
    std::string failed;
    if (!cert.disjoint_ok) failed += " disjoint";
    if (!cert.product_formula_ok) failed += " product_formula";
    if (!cert.containment_ok) failed += " containment";
    if (!cert.chain_ok) failed += " chain";
    if (!cert.theorem_holds) failed += " theorem_bound";
    throw CheckFailed("certificate checks failed:" + failed);
  }
  return kExitOk;
}

// --- bounds ------------------------------------------------------------

std::pair<int, int> ParseKRange(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad k range '" + text + "' (expected a..b or a)");
  }
}

int CmdBounds(const GlobalFlags& g, const std::string& range, std::ostream& out) {
  auto [lo, hi] = ParseKRange(range);
  if (lo < 1 || hi < lo) {
    throw UsageError("empty k range '" + range + "'");
  }
  if (hi > 1 << 16) throw UsageError("k range too large (max 65536)");
  SplitStrategy strategy = SplitStrategy::Parse(g.split);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream s;
  if (!g.json) {
    s << "strategy: " << strategy.Name() << "\n"
      << std::left << std::setw(6) << "k" << std::setw(10) << "split"
      << std::setw(12) << "psi" << std::setw(14) << "D" << std::setw(14)
      << "log2C" << std::setw(12) << "log4(2k)" << std::setw(8) << "psi>="
      << "log4(k)*\n";
  }
  for (int k = lo; k <= hi; ++k) {
    BoundConstants c = Constants(k, strategy);
    FloorExponent floor = FloorExponentFor(k);
    bool dominates = AtLeastLog4TwoK(c.psi, k);
    std::string root =
        c.split.is_leaf()
            ? "-"
            : std::to_string(c.split.left().k()) + "+" +
                  std::to_string(c.split.right().k());
    std::string log4_2k = Log4String(2 * static_cast<std::uint64_t>(k));
    std::string log4_k = Log4String(static_cast<std::uint64_t>(k));
    if (g.json) {
      nlohmann::ordered_json r;
      r["k"] = k;
      r["split"] = c.split.ToString();
      r["psi"] = RationalJson(c.psi);
      r["d"] = RationalJson(c.d);
      r["log2_c"] = RationalJson(c.log2_c);
      r["log4_2k"] = log4_2k;
      r["psi_at_least_log4_2k"] = dominates;
      r["floor_z"] = floor.z;
      r["floor_exponent"] = RationalJson(floor.value);
      r["floor_certified"] = floor.dominates_log4_2k;
      r["log4_k_context"] = log4_k;
      rows.push_back(std::move(r));
    } else {
      s << std::left << std::setw(6) << k << std::setw(10) << root
        << std::setw(12) << c.psi.ToString() << std::setw(14)
        << c.d.ToString() << std::setw(14) << c.log2_c.ToString()
        << std::setw(12) << log4_2k << std::setw(8) << (dominates ? "yes" : "NO")
        << log4_k << "\n";
    }
    if (!dominates || !floor.dominates_log4_2k) {
      if (g.json) Emit(g, out, rows.dump(2) + "\n");
      else Emit(g, out, s.str());
      throw CheckFailed("psi below log4(2k) at k = " + std::to_string(k));
    }
  }
  if (g.json) {
    Emit(g, out, rows.dump(2) + "\n");
  } else {
    s << "* log4(k): comparison exponent from the earlier multi-fold sum "
         "bound; context only.\n";
    Emit(g, out, s.str());
  }
  return kExitOk;
}

// --- exponent ----------------------------------------------------------

std::vector<int> ParseNRange(const std::string& text) {
  std::vector<int> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto [lo, hi] = ParseKRange(item);
    if (lo < 1 || hi < lo) throw UsageError("bad n range '" + item + "'");
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.empty()) throw UsageError("empty n range");
  return ns;
}

int CmdExponent(const GlobalFlags& g, const FamilyFlags& f, int k,
                const std::string& n_range, bool full, std::ostream& out) {
  if (k < 2) throw UsageError("exponent needs --k >= 2");
  FamilySpec base = f.Build(g);
  if (base.kind == FamilyKind::kUnion) {
    throw UsageError("exponent sweeps need a single-parameter family");
  }
  SplitStrategy strategy = SplitStrategy::Parse(g.split);
  BoundConstants constants = Constants(k, strategy);
  std::string log4_2k = Log4String(2 * static_cast<std::uint64_t>(k));

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream s;
  s << "family: " << base.ToString() << ", k = " << k
    << ", strategy: " << strategy.Name() << "\n"
    << std::left << std::setw(6) << "n" << std::setw(7) << "|A|"
    << std::setw(9) << "|AA|" << std::setw(12) << "M" << std::setw(10)
    << "|kA|" << std::setw(10) << "emp.exp" << std::setw(8) << "psi"
    << std::setw(10) << "log4(2k)" << std::setw(14) << "bound~"
    << "holds\n";
  bool all_hold = true;
  for (int n : ParseNRange(n_range)) {
    FamilySpec spec = base;
    spec.n = n;
    spec.n1 = n;
    spec.n2 = n;
    FiniteSet a = Generate(spec);
    std::size_t aa = ProductSet(a, a).size();
    Rational m = FromCount(aa) / FromCount(a.size());
    std::uint64_t ka = KFoldSum(a, k).size();
    TheoremBound bound(constants, a.size(), m);
    BoundComparison cmp = bound.IsAtMost(ka);
    bool holds = cmp.holds;
    std::optional<Certificate> cert;
    if (full) {
      cert = Certify(a, k, strategy);
      holds = holds && cert->AllChecksPass() && cert->ka_size == ka;
    }
    all_hold = all_hold && holds;
    double emp = a.size() > 1 ? std::log(static_cast<double>(ka)) /
                                    std::log(static_cast<double>(a.size()))
                              : std::nan("");
    if (g.json) {
      nlohmann::ordered_json r;
      r["n"] = n;
      r["size"] = a.size();
      r["product_set_size"] = aa;
      r["M"] = RationalJson(m);
      r["kA_size"] = ka;
      r["empirical_exponent"] = a.size() > 1 ? Decimal(emp, 4) : "n/a";
      r["psi"] = RationalJson(constants.psi);
      r["log4_2k"] = log4_2k;
      r["bound_approx"] = Scientific(bound.Approx());
      r["comparison_mode"] = std::string(ComparisonModeName(cmp.mode));
      if (cert) {
        r["m"] = cert->popular_count;
        r["sum_of_blocks"] = cert->sum_of_blocks;
        r["certificate_ok"] = cert->AllChecksPass();
      }
      r["holds"] = holds;
      rows.push_back(std::move(r));
    } else {
      s << std::left << std::setw(6) << n << std::setw(7) << a.size()
        << std::setw(9) << aa << std::setw(12) << m.ToString() << std::setw(10)
        << ka << std::setw(10) << (a.size() > 1 ? Decimal(emp, 4) : "n/a")
        << std::setw(8) << constants.psi.ToString() << std::setw(10) << log4_2k
        << std::setw(14) << Scientific(bound.Approx())
        << (holds ? "yes" : "NO") << "\n";
    }
  }
  if (g.json) {
    nlohmann::ordered_json doc;
    doc["family"] = base.ToString();
    doc["k"] = k;
    doc["strategy"] = strategy.Name();
    doc["full"] = full;
    doc["rows"] = std::move(rows);
    Emit(g, out, doc.dump(2) + "\n");
  } else {
    Emit(g, out, s.str());
  }
  if (!all_hold) throw CheckFailed("bound failed on at least one row");
  return kExitOk;
}

}  // namespace

int ReportError(std::exception_ptr error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const InternalInconsistency& e) {
    err << "sumfold: internal inconsistency in step '" << e.step()
        << "': " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const CheckFailed& e) {
    err << "sumfold: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "sumfold: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "sumfold: " << e.what() << "\n";
    return kExitUsage;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact k-fold sum-set and product-set laboratory", "sumfold"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--out", g.out, "Write the primary output to this file");
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.add_option("--seed", g.seed, "Seed for random families");
  app.add_option("--split", g.split,
                 "Split strategy: balanced, pow2, dp or explicit:<tree>")
      ->capture_default_str();
  app.add_flag("--force", g.force, "Lift the certify size guardrails");

  FamilyFlags gen_family;
  CLI::App* gen = app.add_subcommand("gen", "Generate a structured set file");
  gen_family.Register(gen);

  std::string compute_path;
  int compute_k = 2;
  CLI::App* compute =
      app.add_subcommand("compute", "Cardinalities of AA, A/A, kA, A^(k)");
  compute->add_option("set-file", compute_path, "JSON set file")->required();
  compute->add_option("--k", compute_k, "Number of summands")->capture_default_str();

  std::string certify_path;
  int certify_k = 2;
  std::string certify_m;
  CLI::App* certify =
      app.add_subcommand("certify", "Run and check the block construction");
  certify->add_option("set-file", certify_path, "JSON set file")->required();
  certify->add_option("--k", certify_k, "Number of summands (>= 2)")
      ->capture_default_str();
  certify->add_option("--m", certify_m, "Override M with any value >= |AA|/|A|");

  std::string bounds_range = "1..8";
  CLI::App* bounds = app.add_subcommand("bounds", "Table of exact constants");
  bounds->add_option("--k-range", bounds_range, "Range a..b of k")
      ->capture_default_str();

  FamilyFlags exp_family;
  int exp_k = 2;
  std::string exp_range = "4,8,16,32";
  bool exp_full = false;
  CLI::App* exponent =
      app.add_subcommand("exponent", "Empirical exponents over a family sweep");
  exp_family.Register(exponent);
  exponent->add_option("--k", exp_k, "Number of summands (>= 2)")
      ->capture_default_str();
  exponent->add_option("--n-range", exp_range, "List of n, e.g. 4,8,16 or 4..32")
      ->capture_default_str();
  exponent->add_flag("--full", exp_full, "Also run the full certificate per row");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("sumfold");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sumfold: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return CmdGen(g, gen_family, out);
    if (compute->parsed()) return CmdCompute(g, compute_path, compute_k, out);
    if (certify->parsed()) {
      return CmdCertify(g, certify_path, certify_k, certify_m, out);
    }
    if (bounds->parsed()) return CmdBounds(g, bounds_range, out);
    if (exponent->parsed()) {
      return CmdExponent(g, exp_family, exp_k, exp_range, exp_full, out);
    }
  } catch (...) {
    return ReportError(std::current_exception(), err);
  }
  return kExitUsage;
}

}  // namespace sumfold::cli
