#include "squeeze/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "descriptor_util.hpp"
#include "squeeze/catalog.hpp"
#include "squeeze/convexity.hpp"
#include "squeeze/embeddings.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/greedy.hpp"
#include "squeeze/lorentz.hpp"
#include "squeeze/norm_oracle.hpp"
#include "squeeze/seqreg.hpp"

namespace squeeze::cli {

namespace {

using nlohmann::json;

struct Config {
  std::size_t budget = greedy::kDefaultBudget;
  std::uint64_t seed = 0;
  std::string out_path;
  int precision = 17;
  std::uint64_t hash = 0;
};

/// Destination for one command: the --out file when given, else the stream.
class Sink {
 public:
  Sink(const Config& config, std::ostream& fallback) : config_(config), fallback_(fallback) {}

  std::ostream& stream() {
    if (config_.out_path.empty()) return fallback_;
    if (!file_.is_open()) {
      file_.open(config_.out_path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::invalid_argument("cannot open output path '" + config_.out_path + "'");
    }
    return file_;
  }

 private:
  const Config& config_;
  std::ostream& fallback_;
  std::ofstream file_;
};

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string table_header(const Config& c) {
  return "# config_hash=" + hex(c.hash) + " seed=" + std::to_string(c.seed) + " budget=" +
         std::to_string(c.budget) + "\n";
}

json config_json(const Config& c) {
  return {{"config_hash", hex(c.hash)}, {"seed", c.seed}, {"budget", c.budget}};
}

void write_json(std::ostream& os, json j, const Config& c) {
  j["config"] = config_json(c);
  os << j.dump(2) << '\n';
}

void write_table(std::ostream& os, const Config& c, const std::string& column,
                 std::span<const double> values) {
  os << table_header(c) << "m," << column << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i + 1) << ',' << format_double(values[i], c.precision) << '\n';
  }
}

std::vector<double> parse_vector(const std::string& text, const char* what) {
  const json j = json::parse(text);
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected a JSON array");
  return j.get<std::vector<double>>();
}

std::vector<convexity::Vector> parse_family(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_array() || j.empty()) throw std::invalid_argument("--family: expected a nonempty array of vectors");
  return j.get<std::vector<convexity::Vector>>();
}

double parse_index(const std::string& text) { return detail::parse_double(text); }

std::size_t default_budget() {
  if (const char* env = std::getenv(kBudgetEnv)) return detail::parse_size(env);
  return greedy::kDefaultBudget;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::uint64_t config_hash(std::span<const std::string> args) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].starts_with("--out=")) continue;
    mix(args[i]);
  }
  return h;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Config config;
  config.hash = config_hash(args);
  std::function<void()> action;

  CLI::App app{"Lorentz norms, greedy constants and embedding checks", "squeeze"};
  app.fallthrough();
  app.require_subcommand(1);
  std::optional<std::size_t> budget_opt;
  app.add_option("--budget", budget_opt, "Norm-evaluation budget for exact modes")->envname(kBudgetEnv);
  app.add_option("--seed", config.seed, "Seed for every sampled quantity");
  app.add_option("--out", config.out_path, "Write the result to this path");
  app.add_option("--precision", config.precision, "Significant digits for plain and CSV output")
      ->check(CLI::Range(1, 17));

  Sink sink(config, out);

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "Evaluate a norm on a vector");
  std::string norm_spec, norm_desc, norm_vector;
  norm_cmd->add_option("--spec", norm_spec, "Lorentz spec as JSON");
  norm_cmd->add_option("--norm", norm_desc, "Norm descriptor such as l2:3");
  norm_cmd->add_option("--vector", norm_vector, "JSON array")->required();
  norm_cmd->callback([&] {
    action = [&] {
      const auto v = parse_vector(norm_vector, "--vector");
      double value = 0.0;
      if (!norm_spec.empty()) {
        value = lorentz::lorentz_norm(v, lorentz::spec_from_json(json::parse(norm_spec)));
      } else {
        require(!norm_desc.empty(), "norm: give --spec or --norm");
        value = parse_norm(norm_desc)(v);
      }
      sink.stream() << format_double(value, config.precision) << '\n';
    };
  });

  // seqreg
  auto* seq_cmd = app.add_subcommand("seqreg", "Regularity of positive sequences (finite horizon)");
  seq_cmd->require_subcommand(1);
  seq_cmd->fallthrough();
  std::string seq_desc = "unit";
  std::size_t seq_n = seqreg::kDefaultHorizon;
  std::size_t seq_bmax = 64;
  seq_cmd->add_option("--seq", seq_desc, "Sequence descriptor");
  seq_cmd->add_option("--N", seq_n, "Horizon")->check(CLI::PositiveNumber);
  seq_cmd->add_option("--bmax", seq_bmax, "Largest witness searched")->check(CLI::Range(2, 1 << 30));
  auto horizon_note = [&] { return "# finite-horizon N=" + std::to_string(seq_n) + "\n"; };
  auto witness_line = [&](std::optional<std::size_t> b) {
    std::ostream& os = sink.stream();
    os << "b=" << (b ? std::to_string(*b) : std::string("none")) << '\n' << horizon_note();
  };
  seq_cmd->add_subcommand("doubling", "sup s_m / s_ceil(m/2)")->callback([&] {
    action = [&] {
      const auto s = seqreg::make_sequence(seq_desc, seq_n);
      sink.stream() << "doubling=" << format_double(seqreg::doubling_ratio(s), config.precision) << '\n'
                    << horizon_note();
    };
  });
  seq_cmd->add_subcommand("urp", "Smallest upper-regularity witness")->callback([&] {
    action = [&] { witness_line(seqreg::urp_witness(seqreg::make_sequence(seq_desc, seq_n), seq_bmax)); };
  });
  seq_cmd->add_subcommand("lrp", "Smallest lower-regularity witness")->callback([&] {
    action = [&] { witness_line(seqreg::lrp_witness(seqreg::make_sequence(seq_desc, seq_n), seq_bmax)); };
  });
  seq_cmd->add_subcommand("dual", "The sequence n / t_n")->callback([&] {
    action = [&] {
      const auto d = seqreg::dual_sequence(seqreg::make_sequence(seq_desc, seq_n));
      std::ostream& os = sink.stream();
      os << table_header(config) << "n,dual\n";
      for (std::size_t n = 1; n <= d.size(); ++n) os << n << ',' << format_double(d(n), config.precision) << '\n';
    };
  });
  seq_cmd->add_subcommand("ei", "Essentially increasing ratio")->callback([&] {
    action = [&] {
      const auto s = seqreg::make_sequence(seq_desc, seq_n);
      sink.stream() << "ei=" << format_double(seqreg::essentially_increasing_ratio(s), config.precision) << '\n'
                    << horizon_note();
    };
  });

  // convexity
  auto* cvx_cmd = app.add_subcommand("convexity", "Modulus of convexity and the q-triangle law");
  cvx_cmd->require_subcommand(0, 1);
  cvx_cmd->fallthrough();
  std::string ambient = "l2:16";
  double eps = 0.5;
  convexity::QPolicy policy;
  std::string cvx_f, cvx_g, family;
  double cvx_C = 1.0;
  std::size_t remark_m = 16;
  double remark_q = 1.1;
  cvx_cmd->add_option("--ambient", ambient, "Norm descriptor");
  cvx_cmd->add_option("--eps", eps, "Separation in [0, 2]");
  cvx_cmd->add_option("--fraction", policy.fraction, "Position of q inside (1, log_lambda 2)");
  cvx_cmd->add_option("--f", cvx_f, "JSON vector");
  cvx_cmd->add_option("--g", cvx_g, "JSON vector");
  cvx_cmd->add_option("--family", family, "JSON array of vectors");
  cvx_cmd->add_option("--C", cvx_C, "Condition constant")->check(CLI::PositiveNumber);
  cvx_cmd->add_option("--m", remark_m, "Remark basis length")->check(CLI::PositiveNumber);
  cvx_cmd->add_option("--q", remark_q, "Exponent for the remark ratio")->check(CLI::PositiveNumber);

  auto constants_json = [](const convexity::ConvexityConstants& c) {
    return json{{"eps", c.eps}, {"delta", c.delta}, {"lambda", c.lambda},
                {"q", c.q},     {"eta", c.eta},     {"K", c.K}};
  };
  auto constants_action = [&] {
    const auto norm = parse_norm(ambient);
    write_json(sink.stream(), constants_json(convexity::constants_for(norm, eps, config.budget, config.seed, policy)),
               config);
  };
  cvx_cmd->callback([&] {
    if (!action) action = constants_action;
  });
  cvx_cmd->add_subcommand("constants", "lambda, q, eta and K at eps")->callback([&] { action = constants_action; });
  cvx_cmd->add_subcommand("modulus", "Estimate of the modulus of convexity")->callback([&] {
    action = [&] {
      const auto m = convexity::modulus_estimate(parse_norm(ambient), eps, config.budget, config.seed);
      write_json(sink.stream(),
                 {{"eps", m.eps}, {"estimate", m.estimate}, {"evaluations", m.evaluations}, {"f", m.f}, {"g", m.g}},
                 config);
    };
  });
  cvx_cmd->add_subcommand("qlaw", "Check the q-triangle law on a pair")->callback([&] {
    action = [&] {
      const auto norm = parse_norm(ambient);
      const auto c = convexity::constants_for(norm, eps, config.budget, config.seed, policy);
      const auto f = parse_vector(cvx_f, "--f");
      const auto g = parse_vector(cvx_g, "--g");
      const auto v = convexity::verify_qlaw(f, g, norm, c);
      const char* names[] = {"holds", "violated", "not_applicable"};
      write_json(sink.stream(),
                 {{"constants", constants_json(c)},
                  {"verdict", names[static_cast<int>(v.verdict)]},
                  {"lhs", v.lhs},
                  {"rhs", v.rhs}},
                 config);
    };
  });
  cvx_cmd->add_subcommand("split", "Balanced split point of a family")->callback([&] {
    action = [&] {
      const auto fs = parse_family(family);
      const auto s = convexity::split_point(fs, parse_norm(ambient));
      write_json(sink.stream(), {{"k", s.k}, {"a_k", s.a_k}, {"bound", s.bound}}, config);
    };
  });
  cvx_cmd->add_subcommand("sumbound", "Summation bound with K = 2 / eta")->callback([&] {
    action = [&] {
      const auto fs = parse_family(family);
      const auto norm = parse_norm(ambient);
      const auto c = convexity::constants_for(norm, 1.0 / (1.0 + cvx_C), config.budget, config.seed, policy);
      convexity::SumBoundOptions opts;
      opts.seed = config.seed;
      const auto r = convexity::summation_bound_check(fs, norm, cvx_C, c, opts);
      write_json(sink.stream(),
                 {{"constants", constants_json(c)},
                  {"condition_holds", r.condition_holds},
                  {"exhaustive", r.exhaustive},
                  {"triples_checked", r.triples_checked},
                  {"worst_condition_ratio", r.worst_condition_ratio},
                  {"ratio", r.ratio},
                  {"K", r.K},
                  {"q", r.q},
                  {"bound_holds", r.bound_holds}},
                 config);
    };
  });
  cvx_cmd->add_subcommand("remark", "Norms of tail sums in the remark basis")->callback([&] {
    action = [&] {
      const auto table = convexity::remark_norm_table(remark_m);
      std::ostream& os = sink.stream();
      os << table_header(config) << "j,s,norm,closed_form,ratio\n";
      for (std::size_t j = 1; j <= remark_m; ++j) {
        const double s = static_cast<double>(remark_m - j + 1);
        const double closed = std::sqrt(s * s + s);
        os << j << ',' << (remark_m - j + 1) << ',' << format_double(table[j - 1], config.precision) << ','
           << format_double(closed, config.precision) << ','
           << format_double(convexity::remark_ratio(s, remark_q), config.precision) << '\n';
      }
    };
  });

  // greedy
  auto* gr_cmd = app.add_subcommand("greedy", "Greedy algorithm and basis constants");
  gr_cmd->require_subcommand(1);
  gr_cmd->fallthrough();
  std::string basis_desc = "canonical:2:8";
  std::string gr_vector;
  std::optional<std::size_t> gr_m;
  std::size_t gr_samples = 256;
  std::string gr_mode = "auto";
  gr_cmd->add_option("--basis", basis_desc, "Basis descriptor");
  gr_cmd->add_option("--vector", gr_vector, "JSON vector in ambient coordinates");
  gr_cmd->add_option("--m", gr_m, "Largest m")->check(CLI::PositiveNumber);
  gr_cmd->add_option("--samples", gr_samples, "Samples per estimate")->check(CLI::PositiveNumber);
  gr_cmd->add_option("--mode", gr_mode, "Enumeration mode")->check(CLI::IsMember({"auto", "exact", "sampled"}));

  auto enumeration = [&](const Basis& b, std::size_t k_max) {
    if (gr_mode == "auto") return greedy::auto_options(b.size(), k_max, config.budget, gr_samples, config.seed);
    greedy::EnumerationOptions o;
    o.mode = gr_mode == "exact" ? greedy::Mode::exact : greedy::Mode::sampled;
    o.samples = gr_samples;
    o.budget = config.budget;
    o.seed = config.seed;
    return o;
  };
  auto m_for = [&](const Basis& b) {
    const std::size_t m = gr_m.value_or(b.size());
    require(m <= b.size(), "--m exceeds the basis length");
    return m;
  };
  auto table_command = [&](const char* name, const char* help, const char* column,
                           std::function<std::vector<double>(const Basis&, std::size_t)> compute) {
    gr_cmd->add_subcommand(name, help)->callback([&, column, compute] {
      action = [&, column, compute] {
        const auto b = catalog::make_basis(basis_desc);
        const auto values = compute(b, m_for(b));
        write_table(sink.stream(), config, column, values);
      };
    });
  };

  gr_cmd->add_subcommand("coeffs", "Coefficient transform of --vector")->callback([&] {
    action = [&] {
      const auto b = catalog::make_basis(basis_desc);
      write_json(sink.stream(), {{"coefficients", greedy::coefficient_transform(parse_vector(gr_vector, "--vector"), b)}},
                 config);
    };
  });
  gr_cmd->add_subcommand("tga", "Greedy approximant G_m of --vector")->callback([&] {
    action = [&] {
      const auto b = catalog::make_basis(basis_desc);
      const auto f = parse_vector(gr_vector, "--vector");
      const auto coeffs = greedy::coefficient_transform(f, b);
      const std::size_t m = m_for(b);
      const auto g = greedy::greedy_approximant(coeffs, b, m);
      const auto order = greedy::greedy_ordering(coeffs);
      write_json(sink.stream(),
                 {{"m", m},
                  {"support", std::vector<std::size_t>(order.begin(), order.begin() + static_cast<long>(m))},
                  {"approximant", std::vector<double>(g.data(), g.data() + g.size())}},
                 config);
    };
  });
  gr_cmd->add_subcommand("qg", "Quasi-greedy constant estimate")->callback([&] {
    action = [&] {
      const auto b = catalog::make_basis(basis_desc);
      const auto q = greedy::quasi_greedy_constant(b, gr_samples, config.seed);
      write_json(sink.stream(), {{"value", q.value}, {"m", q.m}, {"witness", q.witness}}, config);
    };
  });
  table_command("phiu", "Upper super-democracy function", "phi_u", [&](const Basis& b, std::size_t m) {
    return greedy::phi_upper(b, m, enumeration(b, m));
  });
  table_command("phil", "Lower super-democracy function", "phi_l", [&](const Basis& b, std::size_t m) {
    return greedy::phi_lower(b, m, enumeration(b, b.size()));
  });
  table_command("km", "Conditionality constants", "k_m", [&](const Basis& b, std::size_t m) {
    return greedy::conditionality_table(b, m, enumeration(b, m));
  });
  table_command("lm", "Lebesgue constant lower bounds", "L_m", [&](const Basis& b, std::size_t m) {
    return greedy::lebesgue_table(b, m, gr_samples, config.seed);
  });
  table_command("bidem", "Bidemocracy ratios", "bidemocracy", [&](const Basis& b, std::size_t m) {
    return greedy::bidemocracy_table(b, m, enumeration(b, m));
  });

  // squeeze
  auto* sq_cmd = app.add_subcommand("squeeze", "Lorentz embedding report for a basis");
  std::string sq_basis = "canonical:2:8", sq_q = "2", sq_r = "inf";
  embeddings::SqueezeOptions sq_opts;
  sq_cmd->add_option("--basis", sq_basis, "Basis descriptor");
  sq_cmd->add_option("--q", sq_q, "Lower index, > 1");
  sq_cmd->add_option("--r", sq_r, "Upper index, >= q, may be inf");
  sq_cmd->add_option("--samples", sq_opts.embedding.samples, "Coefficient samples")->check(CLI::PositiveNumber);
  sq_cmd->add_option("--lebesgue-samples", sq_opts.lebesgue_samples, "Samples per m")->check(CLI::PositiveNumber);
  sq_cmd->add_option("--lebesgue-m", sq_opts.lebesgue_m_max, "Largest m in the table")->check(CLI::PositiveNumber);
  sq_cmd->callback([&] {
    action = [&] {
      const auto b = catalog::make_basis(sq_basis);
      sq_opts.embedding.seed = config.seed;
      sq_opts.embedding.budget = config.budget;
      const auto report = embeddings::squeeze_report(b, parse_index(sq_q), parse_index(sq_r), sq_opts);
      write_json(sink.stream(), embeddings::to_json(report), config);
      if (!config.out_path.empty()) {
        const std::string csv_path = config.out_path + ".lebesgue.csv";
        std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
        if (!csv) throw std::invalid_argument("cannot open output path '" + csv_path + "'");
        csv << table_header(config) << "m,lebesgue_lower,reference,fitted,delta_gap\n";
        for (const auto& row : report.lebesgue) {
          csv << row.m << ',' << format_double(row.lebesgue, config.precision) << ','
              << format_double(row.reference, config.precision) << ','
              << format_double(row.fitted, config.precision) << ','
              << format_double(row.delta_gap, config.precision) << '\n';
        }
      }
    };
  });

  // catalog
  auto* cat_cmd = app.add_subcommand("catalog", "Built-in bases");
  cat_cmd->require_subcommand(1);
  cat_cmd->add_subcommand("list", "List basis templates")->callback([&] {
    action = [&] {
      std::ostream& os = sink.stream();
      for (const auto& [name, description] : catalog::catalog_list()) os << name << '\t' << description << '\n';
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    config.budget = budget_opt.value_or(default_budget());
    if (!action) throw std::invalid_argument("no command selected");
    action();
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const HorizonExhausted& e) {
    err << "horizon exhausted: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const json::exception& e) {
    err << "malformed JSON: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::logic_error& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace squeeze::cli
