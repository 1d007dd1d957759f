#include "wfc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "wfc/acceptance.hpp"
#include "wfc/arcs.hpp"
#include "wfc/errors.hpp"
#include "wfc/expsums.hpp"
#include "wfc/integral.hpp"
#include "wfc/local.hpp"
#include "wfc/parallel.hpp"
#include "wfc/powersets.hpp"
#include "wfc/report.hpp"
#include "wfc/represent.hpp"
#include "wfc/singular.hpp"

namespace wfc::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string out;
  std::string format = "csv";
  std::string config;
  std::string cache_dir = "wfc-cache";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::uint64_t max_n = 10'000'000;
};

// Problem parameters shared by many subcommands; only the ones a subcommand
// registers are parsed.
struct Params {
  unsigned k = 2, l = 2, t = 8, s = 1, r = 0, xi = 5, h = 1, H = 0;
  std::uint64_t n = 1000, p = 3, q = 5, Q = 0, limit = 100'000, samples = 200;
  std::uint64_t lo = 0, hi = 0, n_max = 1000, from = 0, to = 0, Y = 16, X = 100;
  std::uint64_t prime_cutoff = kDefaultPrimeCutoff, power_cutoff = kDefaultPowerCutoff;
  std::int64_t a = 1;
  double eta = kDefaultEta, alpha = 0.0, M = 0.0, Qreal = 0.0;
  std::string kind = "standard", summation = "full", lemma = "M", grid, preset;
  std::string only;
  bool unweighted = false, strict = false, trend = false;
};

using Action = std::function<Table()>;

std::string cell_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw PreconditionError("grid: '" + item + "' is not a positive integer");
    }
  }
  require(!out.empty(), "grid must list at least one Y");
  return out;
}

SeriesKind series_kind(const std::string& name) {
  if (name == "standard") return SeriesKind::standard;
  if (name == "prime" || name == "prime_variant") return SeriesKind::prime_variant;
  throw PreconditionError("kind must be 'standard' or 'prime'");
}

LocalLemma lemma_kind(const std::string& name) {
  if (name == "M") return LocalLemma::M_at_gamma;
  if (name == "Mstar" || name == "M*") return LocalLemma::Mstar_at_nu;
  throw PreconditionError("lemma must be 'M' or 'Mstar'");
}

Dissection dissection_of(const std::string& name) {
  if (name == "M") return Dissection::M;
  if (name == "N") return Dissection::N;
  if (name == "P") return Dissection::P;
  if (name == "N_iota") return Dissection::N_iota;
  throw PreconditionError("preset must be one of M, N, P, N_iota");
}

std::string class_name(ArcClass c) {
  switch (c) {
    case ArcClass::major: return "major";
    case ArcClass::minor: return "minor";
    case ArcClass::mM: return "mM";
    case ArcClass::outside_mM: return "outside_mM";
  }
  return "?";
}

Cell big_cell(const BigCount& c) {
  if (c <= std::numeric_limits<std::int64_t>::max()) return c.convert_to<std::int64_t>();
  return c.str();
}

fs::path cache_root(const RunConfig& cfg) {
  if (const char* env = std::getenv("WFC_CACHE_DIR"); env && *env) return env;
  return cfg.cache_dir;
}

// key=value lines appended as --key=value unless the flag is already given.
std::vector<std::string> with_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given |= a == flag || a.rfind(flag + "=", 0) == 0;
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

class Cli {
 public:
  Cli() : app_("wfc: numerical toolkit for Waring's problem over sums of l-th powers") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--out", cfg_.out, "Write the report here instead of stdout");
    app_.add_option("--format", cfg_.format, "csv or json (JSON lines)")
        ->check(CLI::IsMember({"csv", "json"}));
    app_.add_option("--seed", cfg_.seed, "Seed for sampling subcommands");
    app_.add_option("--threads", cfg_.threads, "Worker thread cap (0 = all cores)");
    app_.add_option("--config", cfg_.config, "key=value file; flags take precedence");
    app_.add_option("--cache-dir", cfg_.cache_dir, "Power-sum table cache directory");
    app_.add_option("--max-n", cfg_.max_n, "Refuse n-like parameters above this");
    build();
  }

  int run(std::vector<std::string> args) {
    try {
      args = with_config(std::move(args));
    } catch (const PreconditionError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
    } catch (const CLI::ParseError& e) {
      return app_.exit(e) == 0 ? 0 : 1;
    }
    try {
      set_thread_count(cfg_.threads);
      const Format format = parse_format(cfg_.format);
      const CLI::App* leaf = &app_;
      while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
      const auto it = actions_.find(leaf);
      if (it == actions_.end()) throw PreconditionError("no action for this subcommand");
      const Table table = it->second();
      const std::string text = emit_report(table, format);
      if (cfg_.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(cfg_.out, std::ios::binary);
        if (!out) throw ResourceError("cannot write '" + cfg_.out + "'");
        out << text;
      }
      return exit_code_;
    } catch (const PreconditionError& e) {
      std::cerr << "precondition violated: " << e.what() << "\n";
      return 2;
    } catch (const ResourceError& e) {
      std::cerr << "resource budget exceeded: " << e.what() << "\n";
      return 3;
    }
  }

 private:
  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help,
                 Action action) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    actions_[sub] = std::move(action);
    return sub;
  }

  CLI::App* group(const std::string& name, const std::string& help) {
    auto* sub = app_.add_subcommand(name, help);
    sub->require_subcommand(1);
    sub->fallthrough();
    return sub;
  }

  void check_n(std::uint64_t n, const char* what) const {
    if (n > cfg_.max_n)
      throw ResourceError(std::string(what) + " = " + std::to_string(n) + " exceeds --max-n " +
                          std::to_string(cfg_.max_n));
  }

  ProblemParams problem() const {
    ProblemParams pp;
    pp.k = p_.k;
    pp.l = p_.l;
    pp.t = p_.t;
    pp.s = p_.s;
    pp.r_extra = p_.r;
    pp.xi = p_.xi;
    pp.n = p_.n;
    pp.validate();
    check_n(pp.n, "n");
    return pp;
  }

  void kl(CLI::App* c) {
    c->add_option("--k", p_.k, "Outer power k");
    c->add_option("--l", p_.l, "Inner power l");
  }

  void build();
  void build_basic();
  void build_series();
  void build_integral();
  void build_arcs();
  void build_count();
  void build_report();

  CLI::App app_;
  RunConfig cfg_;
  Params p_;
  std::map<const CLI::App*, Action> actions_;
  int exit_code_ = 0;
};

void Cli::build() {
  build_basic();
  build_series();
  build_integral();
  build_arcs();
  build_count();
  build_report();
}

void Cli::build_basic() {
  auto* sieve = leaf(&app_, "sieve", "Build (or load) the rho_t table and summarise it", [this] {
    require(p_.l >= 1 && p_.t >= 1, "need l, t >= 1");
    check_n(p_.limit, "limit");
    const fs::path path = cache_root(cfg_) / "tables" /
                          ("l" + std::to_string(p_.l) + "_t" + std::to_string(p_.t) + "_N" +
                           std::to_string(p_.limit) + ".bin");
    PowerSumTable table;
    bool loaded = false;
    if (fs::exists(path)) {
      try {
        table = read_table(path);
        loaded = table.l == p_.l && table.t == p_.t && table.limit == p_.limit;
      } catch (const std::exception&) {
        loaded = false;  // corrupt entry; rebuild
      }
    }
    if (!loaded) {
      table = rep_count_table(p_.l, p_.t, p_.limit);
      fs::create_directories(path.parent_path());
      write_table(path, table);
    }
    std::uint64_t max_rho = 0, total = 0;
    for (auto v : table.rho) {
      max_rho = std::max(max_rho, v);
      total += v;
    }
    Table out({"l", "t", "N", "distinct", "max_rho", "total"});
    out.add({std::int64_t(p_.l), std::int64_t(p_.t), std::int64_t(p_.limit),
             std::int64_t(distinct_count(table, p_.limit)), count_cell(max_rho),
             count_cell(total)});
    return out;
  });
  sieve->add_option("--l", p_.l, "Inner power l")->required();
  sieve->add_option("--t", p_.t, "Number of l-th powers")->required();
  sieve->add_option("--limit", p_.limit, "Table length N")->required();

  auto* density = leaf(&app_, "density", "Empirical size of S_r(Y) on a Y grid", [this] {
    const auto grid = p_.grid.empty() ? default_density_grid() : parse_grid(p_.grid);
    Table out({"r", "l", "Y", "R", "size", "exponent", "pair_exponent", "reference"});
    for (const auto& row : density_report(p_.r, p_.l, p_.eta, grid))
      out.add({std::int64_t(p_.r), std::int64_t(p_.l), std::int64_t(row.Y), std::int64_t(row.R),
               std::int64_t(row.size), row.exponent,
               row.pair_exponent ? Cell(*row.pair_exponent) : Cell(std::string()),
               row.reference});
    return out;
  });
  p_.r = 2;
  density->add_option("--r", p_.r, "Number of l-th powers in S_r")->required();
  density->add_option("--l", p_.l, "Inner power l")->required();
  density->add_option("--eta", p_.eta, "Smoothness exponent");
  density->add_option("--grid", p_.grid, "Comma-separated Y values");

  auto* expsum = leaf(&app_, "expsum", "S(q,a), S_k(q,a), W(q,a) and w_k(q)", [this] {
    require(p_.q >= 1, "q must be positive");
    const std::uint64_t ua = static_cast<std::uint64_t>(((p_.a % std::int64_t(p_.q)) +
                                                         std::int64_t(p_.q)) % std::int64_t(p_.q));
    require(std::gcd(ua, p_.q) == 1, "gcd(a, q) must be 1");
    const Complex S = s_form(p_.q, p_.a, p_.k, p_.l, p_.t);
    const Complex Sk = s_k(p_.q, p_.a, p_.k);
    const Complex W = w_q(p_.q, p_.a, p_.k);
    Table out({"q", "a", "k", "l", "t", "S_re", "S_im", "S_abs", "Sk_re", "Sk_im", "W_re",
               "W_im", "w_k"});
    out.add({std::int64_t(p_.q), p_.a, std::int64_t(p_.k), std::int64_t(p_.l),
             std::int64_t(p_.t), S.real(), S.imag(), std::abs(S), Sk.real(), Sk.imag(),
             W.real(), W.imag(), w_k_weight(p_.q, p_.k)});
    return out;
  });
  expsum->add_option("--q", p_.q, "Modulus")->required();
  expsum->add_option("--a", p_.a, "Numerator, coprime to q")->required();
  kl(expsum);
  expsum->add_option("--t", p_.t, "Number of variables");

  auto* local = leaf(&app_, "local", "Local counts M_n(p^gamma) or M*_n(p^nu)", [this] {
    const LocalLemma which = lemma_kind(p_.lemma);
    const SolubilityReport rep = verify_local_solubility(p_.p, p_.k, p_.l, p_.t, p_.s, which);
    Table out({"p", "lemma", "level", "modulus", "n", "count", "positive"});
    for (std::uint64_t n = 0; n < rep.modulus; ++n)
      out.add({std::int64_t(p_.p), p_.lemma, std::int64_t(rep.level), std::int64_t(rep.modulus),
               std::int64_t(n), big_cell(rep.counts[n]), rep.counts[n] > 0});
    return out;
  });
  local->add_option("--p", p_.p, "Prime")->required();
  kl(local);
  local->add_option("--t", p_.t, "Number of variables in T");
  local->add_option("--s", p_.s, "Number of form blocks");
  local->add_option("--lemma", p_.lemma, "M or Mstar");
}

void Cli::build_series() {
  auto* series = group("series", "Singular series diagnostics");
  auto common = [this](CLI::App* c) {
    kl(c);
    c->add_option("--t", p_.t, "Number of variables in T");
    c->add_option("--s", p_.s, "Number of form blocks");
  };

  auto* trunc = leaf(series, "trunc", "Truncated S(n) or S'(n)", [this] {
    check_n(p_.n, "n");
    const SeriesParams sp{p_.k, p_.l, p_.t, p_.s};
    const SeriesKind kind = series_kind(p_.kind);
    const Summation sum = p_.summation == "prime" ? Summation::prime : Summation::full;
    require(p_.summation == "prime" || p_.summation == "full", "summation must be full or prime");
    const std::uint64_t Q = p_.Q ? p_.Q : kDefaultSeriesQ;
    const auto tr = truncated_series(p_.n, Q, sum, kind, sp, p_.prime_cutoff, p_.power_cutoff);
    Table out({"n", "kind", "summation", "Q", "prime_cutoff", "power_cutoff", "value_re",
               "value_im", "tail_estimate"});
    out.add({std::int64_t(p_.n), p_.kind, p_.summation, std::int64_t(tr.Q_cutoff),
             std::int64_t(tr.prime_cutoff), std::int64_t(tr.h_cutoff), tr.value.real(),
             tr.value.imag(), tr.tail_estimate});
    return out;
  });
  trunc->add_option("--n", p_.n, "Integer n")->required();
  trunc->add_option("--Q", p_.Q, "Cutoff on q (full summation)");
  trunc->add_option("--kind", p_.kind, "standard or prime");
  trunc->add_option("--summation", p_.summation, "full or prime");
  trunc->add_option("--prime-cutoff", p_.prime_cutoff, "Largest prime in the Euler product");
  trunc->add_option("--power-cutoff", p_.power_cutoff, "Largest p^h in each local factor");
  common(trunc);

  auto* snm = leaf(series, "snm", "sum_{j<=h} S_n(p^j) against M_n(p^h)", [this] {
    const SeriesParams sp{p_.k, p_.l, p_.t, p_.s};
    const auto rows = snm_identity_all(p_.p, p_.h, sp);
    const SnmCheck& row = rows[p_.n % rows.size()];
    Table out({"p", "h", "n", "left", "right", "residual"});
    out.add({std::int64_t(p_.p), std::int64_t(p_.h), std::int64_t(p_.n), row.left, row.right,
             row.residual});
    return out;
  });
  snm->add_option("--p", p_.p, "Prime")->required();
  snm->set_help_flag("--help", "Print this help message and exit");  // frees "h"
  snm->add_option("--h", p_.h, "Exponent h")->required();
  snm->add_option("--n", p_.n, "Residue n")->required();
  common(snm);

  auto* pos = leaf(series, "positivity", "Minimum of the truncated series on [lo, hi]", [this] {
    require(p_.lo <= p_.hi, "need lo <= hi");
    check_n(p_.hi, "hi");
    const SeriesParams sp{p_.k, p_.l, p_.t, p_.s};
    const auto rep = positivity_sweep(p_.lo, p_.hi, series_kind(p_.kind), sp,
                                      p_.Q ? p_.Q : kDefaultSeriesQ);
    Table out({"lo", "hi", "min_value", "argmin", "flagged", "hypotheses_ok",
               "obstructing_prime", "obstructed_residue", "hypothesis_failures"});
    out.add({std::int64_t(p_.lo), std::int64_t(p_.hi), rep.min_value, std::int64_t(rep.argmin),
             rep.flagged, rep.hypotheses_ok,
             rep.obstructing_prime ? Cell(std::int64_t(*rep.obstructing_prime)) : Cell(std::string()),
             rep.obstructed_residue ? Cell(std::int64_t(*rep.obstructed_residue)) : Cell(std::string()),
             cell_list(rep.hypothesis_failures)});
    return out;
  });
  pos->add_option("--lo", p_.lo, "First n")->required();
  pos->add_option("--hi", p_.hi, "Last n")->required();
  pos->add_option("--Q", p_.Q, "Cutoff on q");
  pos->add_option("--kind", p_.kind, "standard or prime");
  common(pos);
}

void Cli::build_integral() {
  auto* integral = group("integral", "Singular integrals and the weight sums u, v, w");

  auto* jprime = leaf(integral, "jprime", "J'_s(n) exactly and its Gamma main term", [this] {
    check_n(p_.n, "n");
    const double exact = j_prime_exact(p_.n, p_.s, p_.xi, p_.k, p_.l);
    const MainTerm m = j_prime_main_term(p_.n, p_.s, p_.xi, p_.k, p_.l);
    const double rel = std::abs(exact - m.main) / m.main;
    Table out({"n", "s", "xi", "k", "l", "exact", "main", "B", "relative_deviation",
               "deviation_over_B"});
    out.add({std::int64_t(p_.n), std::int64_t(p_.s), std::int64_t(p_.xi), std::int64_t(p_.k),
             std::int64_t(p_.l), exact, m.main, m.B, rel, rel / m.B});
    return out;
  });
  jprime->add_option("--n", p_.n, "Integer n")->required();
  jprime->add_option("--s", p_.s, "Number of u factors")->required();
  jprime->add_option("--xi", p_.xi, "Exponent parameter xi");
  kl(jprime);

  auto* jn = leaf(integral, "jn", "J(n) with two v, two w and s u weights", [this] {
    check_n(p_.n, "n");
    const auto J = j_singular_exact(p_.n, p_.s, p_.k, p_.l, p_.t);
    Table out({"n", "s", "k", "l", "t", "value", "envelope", "ratio"});
    out.add({std::int64_t(p_.n), std::int64_t(p_.s), std::int64_t(p_.k), std::int64_t(p_.l),
             std::int64_t(p_.t), J.value, J.envelope, J.ratio});
    return out;
  });
  jn->add_option("--n", p_.n, "Integer n")->required();
  jn->add_option("--s", p_.s, "Number of u factors");
  jn->add_option("--t", p_.t, "Number of variables in T");
  kl(jn);

  auto* udecay = leaf(integral, "udecay", "Sampled decay ratio of u(beta)", [this] {
    check_n(p_.n, "n");
    const auto d = u_decay_check(p_.n, p_.t, p_.k, p_.l, p_.samples, cfg_.seed);
    Table out({"seed", "n", "t", "k", "l", "samples", "max_ratio", "argmax_beta", "gamma_kl"});
    out.add({std::int64_t(cfg_.seed), std::int64_t(p_.n), std::int64_t(p_.t),
             std::int64_t(p_.k), std::int64_t(p_.l), std::int64_t(d.samples), d.max_ratio,
             d.argmax_beta, gamma_kl(p_.t, p_.k, p_.l)});
    return out;
  });
  udecay->add_option("--n", p_.n, "Integer n")->required();
  udecay->add_option("--t", p_.t, "Number of variables in T");
  udecay->add_option("--samples", p_.samples, "Number of random beta");
  kl(udecay);
}

void Cli::build_arcs() {
  auto* arcs = group("arcs", "Arc dissections and generating-function diagnostics");
  auto form = [this](CLI::App* c) {
    c->add_option("--n", p_.n, "Integer n")->required();
    kl(c);
    c->add_option("--t", p_.t, "Number of variables in T");
    c->add_option("--samples", p_.samples, "Number of sampled alpha");
  };

  auto* residual = leaf(arcs, "residual", "Major-arc residual |f - U| normalised", [this] {
    const ProblemParams pp = problem();
    const double Q = p_.Qreal > 0 ? p_.Qreal : std::ceil(std::sqrt(pp.P()));
    const auto r = major_residual_sweep(pp, Q, p_.samples, cfg_.seed);
    Table out({"seed", "n", "Q", "samples", "max_ratio", "argmax_alpha", "a", "q"});
    out.add({std::int64_t(cfg_.seed), std::int64_t(pp.n), Q, std::int64_t(r.samples),
             r.max_ratio, r.argmax_alpha.turns(), r.a, std::int64_t(r.q)});
    return out;
  });
  form(residual);
  residual->add_option("--Q", p_.Qreal, "Major-arc parameter (default ceil(sqrt P))");

  auto* weyl = leaf(arcs, "weyl", "Ratio of |f| to the Weyl envelope", [this] {
    const ProblemParams pp = problem();
    const auto r = weyl_bound_sweep(pp, p_.samples, cfg_.seed);
    Table out({"seed", "n", "samples", "max_ratio", "argmax_alpha", "a", "q"});
    out.add({std::int64_t(cfg_.seed), std::int64_t(pp.n), std::int64_t(r.samples), r.max_ratio,
             r.argmax_alpha.turns(), r.a, std::int64_t(r.q)});
    return out;
  });
  form(weyl);

  auto* classify = leaf(arcs, "classify", "Arc membership of one alpha", [this] {
    require(p_.alpha >= 0.0 && p_.alpha < 1.0, "alpha must lie in [0, 1)");
    check_n(p_.n, "n");
    const Phase alpha = Phase::from_turns(p_.alpha);
    ArcPoint pt;
    std::string dissection;
    if (p_.M > 0.0) {
      pt = classify_mM(alpha, p_.n, p_.k, p_.M);
      dissection = "mM(" + format_double(p_.M) + ")";
    } else {
      double Q = p_.Qreal;
      if (!p_.preset.empty()) {
        ProblemParams pp;
        pp.k = p_.k;
        pp.l = p_.l;
        pp.n = p_.n;
        Q = dissection_Q(dissection_of(p_.preset), pp);
      }
      require(Q >= 1.0, "give --Q >= 1, --preset or --M");
      pt = classify_major(alpha, p_.n, Q);
      dissection = "M(" + format_double(Q) + ")";
    }
    Table out({"alpha", "n", "dissection", "a", "q", "beta", "class"});
    out.add({p_.alpha, std::int64_t(p_.n), dissection, pt.a, std::int64_t(pt.q), pt.beta,
             class_name(pt.cls)});
    return out;
  });
  classify->add_option("--alpha", p_.alpha, "Point of [0, 1)")->required();
  classify->add_option("--n", p_.n, "Integer n")->required();
  classify->add_option("--Q", p_.Qreal, "Major-arc parameter");
  classify->add_option("--preset", p_.preset, "M, N, P or N_iota");
  classify->add_option("--M", p_.M, "Test membership of m_M instead");
  kl(classify);

  auto* vmv = leaf(arcs, "vmv", "Vinogradov mean value J_{s,r}^{(k)}(Y) over S_r(Y)", [this] {
    const auto v = vinogradov_mean_value(p_.s, p_.k, p_.r, p_.l, p_.Y, p_.eta);
    Table out({"s", "k", "r", "l", "Y", "set_size", "count", "diagonal", "envelope", "ratio"});
    out.add({std::int64_t(p_.s), std::int64_t(p_.k), std::int64_t(p_.r), std::int64_t(p_.l),
             std::int64_t(p_.Y), std::int64_t(v.set_size), count_cell(v.count),
             count_cell(v.diagonal), v.envelope, v.ratio});
    return out;
  });
  vmv->add_option("--s", p_.s, "Half the number of variables")->required();
  vmv->add_option("--r", p_.r, "Number of l-th powers in S_r")->required();
  vmv->add_option("--Y", p_.Y, "Range Y")->required();
  vmv->add_option("--eta", p_.eta, "Smoothness exponent");
  kl(vmv);
}

void Cli::build_count() {
  auto* count = group("count", "Exact ordered representation counts");
  auto range = [this](const CountVector& cv, std::uint64_t n_max) {
    const std::uint64_t to = p_.to ? std::min(p_.to, n_max) : n_max;
    Table out({"n", "count"});
    for (std::uint64_t n = p_.from; n <= to; ++n)
      out.add({std::int64_t(n), count_cell(cv.counts[n])});
    return out;
  };

  auto* conje = leaf(count, "conje", "n = sum T_t(x_i)^k + sum y_j^k", [this, range] {
    check_n(p_.n_max, "n-max");
    return range(count_conje(p_.n_max, p_.k, p_.l, p_.t, p_.s, p_.r), p_.n_max);
  });
  conje->add_option("--n-max", p_.n_max, "Largest n")->required();
  conje->add_option("--t", p_.t, "Number of variables in T");
  conje->add_option("--s", p_.s, "Number of form blocks");
  conje->add_option("--r", p_.r, "Number of plain k-th powers");
  conje->add_option("--from", p_.from, "First n printed");
  conje->add_option("--to", p_.to, "Last n printed");
  kl(conje);

  auto* thm = leaf(count, "thm13", "n = sum x_i^k with x_i in T_xi", [this, range] {
    check_n(p_.n_max, "n-max");
    return range(count_theorem13(p_.n_max, p_.k, p_.l, p_.xi, p_.s, !p_.unweighted), p_.n_max);
  });
  thm->add_option("--n-max", p_.n_max, "Largest n")->required();
  thm->add_option("--xi", p_.xi, "Number of l-th powers in T_xi");
  thm->add_option("--s", p_.s, "Number of summands");
  thm->add_flag("--unweighted", p_.unweighted, "Count T_xi as a set");
  thm->add_option("--from", p_.from, "First n printed");
  thm->add_option("--to", p_.to, "Last n printed");
  kl(thm);

  auto* main = leaf(count, "main-term", "Weighted count against C n^{s xi/kl - 1} S'(n)", [this] {
    check_n(p_.n, "n");
    const std::uint64_t Q = p_.Q ? p_.Q : kDefaultSeriesQ;
    if (p_.trend) {
      const auto tr = main_term_trend(p_.n, p_.k, p_.l, p_.xi, p_.s, Q);
      Table out({"lo", "hi", "count_mean", "main_mean", "ratio", "flagged"});
      for (const auto& w : {tr.first, tr.second})
        out.add({std::int64_t(w.lo), std::int64_t(w.hi), w.count_mean, w.main_mean, w.ratio,
                 std::int64_t(w.flagged)});
      return out;
    }
    const auto pt = main_term_ratio(p_.n, p_.k, p_.l, p_.xi, p_.s, Q);
    Table out({"n", "count", "series", "main", "ratio", "flagged"});
    out.add({std::int64_t(pt.n), pt.count, pt.series, pt.main,
             pt.ratio ? Cell(*pt.ratio) : Cell(std::string()), !pt.ratio.has_value()});
    return out;
  });
  main->add_option("--n", p_.n, "Integer n (window start with --trend)")->required();
  main->add_option("--xi", p_.xi, "Number of l-th powers in T_xi");
  main->add_option("--s", p_.s, "Number of summands");
  main->add_option("--Q", p_.Q, "Series cutoff");
  main->add_flag("--trend", p_.trend, "Window averages over [n, 2n] and [2n, 4n]");
  kl(main);

  auto* qm = leaf(count, "qm", "Q(m) over (S_1 x S_2)^H and its support claim", [this] {
    const ProblemParams pp = problem();
    const auto t = q_m_table(pp, p_.H ? std::optional<unsigned>(p_.H) : std::nullopt);
    Table out({"n", "H", "support_max", "support_bound", "half_n", "support_claim", "mass_ok"});
    out.add({std::int64_t(pp.n), std::int64_t(p_.H ? p_.H : pp.k * (pp.k + 1)),
             std::int64_t(t.support_max), std::int64_t(t.support_bound),
             std::int64_t(pp.n / 2), t.support_claim, t.mass_ok});
    return out;
  });
  qm->add_option("--n", p_.n, "Integer n")->required();
  qm->add_option("--t", p_.t, "Number of variables in T");
  qm->add_option("--H", p_.H, "Number of pair blocks (default k(k+1))");
  kl(qm);

  auto* k2 = leaf(count, "k2", "Diagonal and off-diagonal solution counts for k = 2", [this] {
    check_n(p_.X, "X");
    const auto v = k2_mean_value(p_.t, p_.X, p_.l);
    Table out({"t", "l", "X", "Y", "set_size", "x_count", "diagonal", "offdiagonal"});
    out.add({std::int64_t(p_.t), std::int64_t(p_.l), std::int64_t(p_.X), std::int64_t(v.Y),
             std::int64_t(v.set_size), std::int64_t(v.x_count), count_cell(v.diagonal),
             count_cell(v.offdiagonal)});
    return out;
  });
  k2->add_option("--t", p_.t, "Number of l-th powers in S_t")->required();
  k2->add_option("--X", p_.X, "Range X")->required();
  k2->add_option("--l", p_.l, "Inner power l");
}

void Cli::build_report() {
  auto* report = leaf(&app_, "report", "Run acceptance criteria 1-10", [this] {
    std::vector<int> ids;
    if (p_.only.empty()) {
      for (int id = 1; id <= acceptance::kCriterionCount; ++id) ids.push_back(id);
    } else {
      for (auto id : parse_grid(p_.only)) ids.push_back(static_cast<int>(id));
    }
    Table out({"id", "name", "passed", "known_shortfall", "seconds", "detail"});
    for (int id : ids) {
      const auto r = acceptance::run_criterion(id);
      out.add({std::int64_t(r.id), r.name, r.passed, acceptance::known_shortfall(r.id),
               r.seconds, r.detail});
      if (!r.passed && p_.strict) exit_code_ = 1;
    }
    return out;
  });
  report->add_option("--only", p_.only, "Comma-separated criterion ids");
  report->add_flag("--strict", p_.strict, "Exit 1 if any criterion fails");
}

}  // namespace

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Cli cli;
  return cli.run(std::move(args));
}

}  // namespace wfc::cli
