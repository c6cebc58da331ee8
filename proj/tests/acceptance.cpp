// Acceptance suite: one line per criterion, "PASS" or "FAIL", with the
// measured quantities and the wall time. `acceptance --only N` runs one.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "squeeze/catalog.hpp"
#include "squeeze/convexity.hpp"
#include "squeeze/embeddings.hpp"
#include "squeeze/greedy.hpp"
#include "squeeze/lorentz.hpp"
#include "squeeze/sampling.hpp"
#include "squeeze/seqreg.hpp"

using namespace squeeze;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;
  std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

greedy::EnumerationOptions exact_options() {
  greedy::EnumerationOptions o;
  o.mode = greedy::Mode::exact;
  return o;
}

// 1. Closed form of the remark basis and growth of the ratio.
Outcome remark_closed_form() {
  std::size_t pairs = 0, bad = 0;
  double worst = 0.0;
  for (std::size_t m = 1; m <= 2048; ++m) {
    const auto table = convexity::remark_norm_table(m);
    for (std::size_t j = 1; j <= m; ++j) {
      const double s = static_cast<double>(m - j + 1);
      const double e = rel_err(table[j - 1], std::sqrt(s * s + s));
      worst = std::max(worst, e);
      ++pairs;
      if (!(e <= 1e-10)) ++bad;
    }
  }
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + gen() % 2048;
    const std::size_t j = 1 + gen() % m;
    const auto v = convexity::remark_counterexample(j, m, 1.1);
    const double e = rel_err(v.norm_value, v.closed_form);
    worst = std::max(worst, e);
    if (!(e <= 1e-10)) ++bad;
  }
  const double growth = convexity::remark_ratio(1e4, 1.1) / convexity::remark_ratio(10.0, 1.1);
  Outcome o;
  o.pass = bad == 0 && growth >= 10.0;
  o.detail = std::to_string(pairs) + " (j,m) pairs, worst rel err " + fmt(worst, 3) + ", " + std::to_string(bad) +
             " mismatches; ratio growth s=10 -> 1e4 at q=1.1 is " + fmt(growth, 5) + "x (required >= 10x)";
  return o;
}

// 2. Split point guarantee on random families.
Outcome split_point_guarantee() {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(0.001, 5.0);
  std::size_t violations = 0, scan_failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double p = t % 2 == 0 ? 2.0 : 4.0;
    const auto norm = NormOracle::lp(p, 32);
    std::vector<convexity::Vector> fs(1 + gen() % 20, convexity::Vector(32));
    for (auto& f : fs) {
      const double s = scale(gen);
      for (auto& v : f) v = s * g(gen);
    }
    const auto sp = convexity::split_point(fs, norm);
    double bound = 0.0;
    for (const auto& f : fs) bound = std::max(bound, norm(f));
    if (!(sp.a_k <= bound)) ++violations;
    worst = std::max(worst, sp.a_k / bound);
    const auto ref = [p](const oracle::Vec& x) { return static_cast<double>(oracle::lp(x, p)); };
    double ref_bound = 0.0;
    for (const auto& f : fs) ref_bound = std::max(ref_bound, ref(f));
    if (!(oracle::best_split_gap(fs, ref) <= ref_bound)) ++scan_failures;
  }
  Outcome o;
  o.pass = violations == 0 && scan_failures == 0;
  o.detail = "10000 families: " + std::to_string(violations) + " returned splits with A_k > max||f_n||, " +
             std::to_string(scan_failures) + " scan failures, max A_k/max||f_n|| = " + fmt(worst, 4);
  return o;
}

// 3. q-triangle law in Hilbert space.
Outcome qlaw_hilbert() {
  const auto l2 = NormOracle::lp(2.0, 16);
  const double closed = convexity::hilbert_modulus(0.5);
  const auto est = convexity::modulus_estimate(l2, 0.5, 400'000, 3);
  const double gap = std::abs(est.estimate - closed);
  const auto c = convexity::qlaw_constants(closed, {}, 0.5);

  std::mt19937_64 gen(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  std::size_t applicable = 0, failures = 0, tries = 0;
  std::vector<double> f(16), h(16);
  while (applicable < 100'000 && tries < 1'000'000) {
    ++tries;
    for (auto& v : f) v = g(gen);
    for (auto& v : h) v = g(gen);
    const double scale = l2(f) / l2(h) * (1.0 - c.eta * shrink(gen));
    for (auto& v : h) v *= scale;
    const auto verdict = convexity::verify_qlaw(f, h, l2, c);
    if (verdict.verdict == convexity::Verdict::not_applicable) continue;
    ++applicable;
    std::vector<double> sum(16);
    for (std::size_t i = 0; i < 16; ++i) sum[i] = f[i] + h[i];
    const long double lhs = std::pow(oracle::lp(sum, 2.0), static_cast<long double>(c.q));
    const long double rhs = std::pow(oracle::lp(f, 2.0), static_cast<long double>(c.q)) +
                            std::pow(oracle::lp(h, 2.0), static_cast<long double>(c.q));
    if (verdict.verdict != convexity::Verdict::holds || !(lhs <= rhs * (1.0L + 1e-10L))) ++failures;
  }
  Outcome o;
  o.pass = gap <= 1e-4 && applicable == 100'000 && failures == 0;
  o.detail = "modulus estimate " + fmt(est.estimate, 10) + " vs closed form " + fmt(closed, 10) + " (gap " +
             fmt(gap, 3) + "); lambda=" + fmt(c.lambda) + " q=" + fmt(c.q) + " eta=" + fmt(c.eta) + "; " +
             std::to_string(applicable) + " applicable pairs, " + std::to_string(failures) + " failures";
  return o;
}

// 4. Summation bound on dyadic families of the remark basis.
Outcome summation_bound_remark() {
  const auto b = catalog::remark(16);
  const double C = greedy::quasi_greedy_constant(b, 512, 4).value;
  const auto c = convexity::constants_for(b.ambient(), 1.0 / (1.0 + C), 400'000, 4);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  std::size_t condition = 0, failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    std::vector<double> a = i % 2 == 0 ? sweep_sample(i, 16, 4) : std::vector<double>(16);
    if (i % 2 == 1) {
      for (auto& v : a) v = g(gen);
    }
    const auto levels = embeddings::dyadic_decomposition(a);
    const auto fs = embeddings::level_vectors(b, a, levels);
    const auto r = convexity::summation_bound_check(fs, b.ambient(), C, c);
    if (!r.condition_holds) continue;
    ++condition;
    oracle::Vec total(b.dim(), 0.0);
    long double acc = 0.0L;
    for (const auto& f : fs) {
      for (std::size_t d = 0; d < total.size(); ++d) total[d] += f[d];
      acc += std::pow(oracle::lp(f, 2.0), static_cast<long double>(c.q));
    }
    const long double rhs = c.K * std::pow(acc, 1.0L / c.q);
    const long double lhs = oracle::lp(total, 2.0);
    worst = std::max(worst, static_cast<double>(lhs / rhs));
    if (!r.bound_holds || !(lhs <= rhs * (1.0L + 1e-10L))) ++failures;
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = "C=" + fmt(C) + " eps=" + fmt(1.0 / (1.0 + C)) + " delta=" + fmt(c.delta) + " q=" + fmt(c.q) +
             " K=" + fmt(c.K) + "; condition held on " + std::to_string(condition) + "/1000 families, " +
             std::to_string(failures) + " bound failures, max ||sum||/(K (sum ||f_k||^q)^{1/q}) = " + fmt(worst, 4);
  return o;
}

// 5. Gap between Lorentz scales.
Outcome delta_formula() {
  const auto unit = seqreg::make_weight("unit", 8);
  const oracle::Vec wv(unit.weights().begin(), unit.weights().end());
  double worst = 0.0;
  for (std::size_t m = 1; m <= 8; ++m) {
    const double inf_formula = lorentz::delta_m(unit, 1.0, kInf, m);
    const double two_formula = lorentz::delta_m(unit, 1.0, 2.0, m);
    worst = std::max(worst, rel_err(oracle::delta_numeric(wv, m, 1.0, kInf, 50 + m), inf_formula));
    worst = std::max(worst, rel_err(oracle::lp_vertex_max(wv, m), inf_formula));
    worst = std::max(worst, rel_err(oracle::delta_numeric(wv, m, 1.0, 2.0, 80 + m), two_formula));
  }
  const double h4 = lorentz::delta_m(unit, 1.0, kInf, 4);
  Outcome o;
  o.pass = worst <= 1e-4 && h4 == 25.0 / 12.0 && lorentz::embedding_gap_H(unit, 4) == 25.0 / 12.0;
  o.detail = "m<=8, r in {2, inf}: worst rel err vs numerical maximization " + fmt(worst, 3) +
             "; delta_4(q=1, r=inf) = " + fmt(h4, 17) + (h4 == 25.0 / 12.0 ? " == 25/12" : " != 25/12");
  return o;
}

// 6. H_m against log m.
Outcome harmonic_vs_log() {
  const std::size_t N = 1'000'000;
  const auto table = lorentz::embedding_gap_table(seqreg::make_weight("unit", N));
  double lo = kInf, hi = 0.0, hi_from3 = 0.0;
  std::size_t arg_hi = 0, outside = 0;
  for (std::size_t m = 2; m <= N; ++m) {
    const double r = table[m - 1] / std::log(static_cast<double>(m));
    lo = std::min(lo, r);
    if (r > hi) {
      hi = r;
      arg_hi = m;
    }
    if (m >= 3) hi_from3 = std::max(hi_from3, r);
    if (r < 1.0 || r > 1.7) ++outside;
  }
  double oracle_err = 0.0;
  for (std::size_t m : {2u, 3u, 1000u, 1000000u}) {
    oracle_err = std::max(oracle_err, rel_err(table[m - 1], static_cast<double>(oracle::harmonic(m))));
  }
  Outcome o;
  o.pass = outside == 0 && oracle_err <= 1e-14;
  o.detail = "H_m/log m over 2..1e6 spans [" + fmt(lo, 5) + ", " + fmt(hi, 5) + "] (max at m=" +
             std::to_string(arg_hi) + "), " + std::to_string(outside) + " values outside [1.0, 1.7]; over 3..1e6 max " +
             fmt(hi_from3, 5) + "; table vs long double harmonic " + fmt(oracle_err, 3);
  return o;
}

// 7. Lorentz norm invariances.
Outcome lorentz_properties() {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t violations = 0, checks = 0;
  for (const char* desc : {"unit", "power:0.5", "geometric:0.9"}) {
    const auto w = seqreg::make_weight(desc, 64);
    for (double q : {0.5, 1.0, 2.0, kInf}) {
      for (int t = 0; t < 10000; ++t) {
        std::vector<double> f(1 + gen() % 64);
        for (auto& v : f) v = unif(gen) < 0.15 ? 0.0 : g(gen) * std::exp(3.0 * g(gen));
        const double nf = lorentz::lorentz_norm(f, w, q);

        auto perm = f;
        std::shuffle(perm.begin(), perm.end(), gen);
        for (auto& v : perm) v = (gen() & 1) ? -v : v;
        if (!(std::abs(lorentz::lorentz_norm(perm, w, q) - nf) <= 1e-12 * nf)) ++violations;

        const double c = (unif(gen) - 0.5) * 20.0;
        auto scaled = f;
        for (auto& v : scaled) v *= c;
        if (!(std::abs(lorentz::lorentz_norm(scaled, w, q) - std::abs(c) * nf) <= 1e-12 * std::abs(c) * nf)) {
          ++violations;
        }

        auto smaller = f;
        for (auto& v : smaller) v *= unif(gen);
        if (!(lorentz::lorentz_norm(smaller, w, q) <= nf * (1.0 + 1e-12))) ++violations;
        checks += 3;
      }
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = std::to_string(checks) + " checks over 3 weights x 4 indices x 10000 vectors, " +
             std::to_string(violations) + " violations at 1e-12";
  return o;
}

// 8. Regularity algebra.
Outcome regularity_algebra() {
  std::mt19937_64 gen(8);
  std::lognormal_distribution<double> value(0.0, 2.0);
  std::size_t involution_failures = 0, equivalence_failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> v(1 + gen() % 100);
    for (auto& x : v) x = value(gen);
    const seqreg::PositiveSequence tau(v);
    if (!(seqreg::dual_sequence(seqreg::dual_sequence(tau)) == tau)) ++involution_failures;
  }
  std::uniform_real_distribution<double> expo(0.0, 1.6);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 8 + gen() % 120;
    const double a = expo(gen);
    std::vector<std::int64_t> ti(n);
    for (std::size_t i = 1; i <= n; ++i) {
      ti[i - 1] = 1 + static_cast<std::int64_t>(std::floor(64.0 * std::pow(double(i), a))) +
                  static_cast<std::int64_t>(gen() % 4);
    }
    const seqreg::PositiveSequence tau(std::vector<double>(ti.begin(), ti.end()));
    const auto dual = seqreg::dual_sequence(tau);
    for (std::size_t b = 2; b <= 16; ++b) {
      const bool exact = oracle::urp_exact(ti, b);
      if (seqreg::urp_holds(tau, b) != exact || seqreg::lrp_holds(dual, b) != exact ||
          oracle::dual_lrp_exact(ti, b) != exact) {
        ++equivalence_failures;
      }
    }
  }
  const auto root = seqreg::make_sequence("power:0.5", 64);
  const auto uw = seqreg::urp_witness(root, 64);
  const auto lw = seqreg::lrp_witness(root, 64);
  Outcome o;
  o.pass = involution_failures == 0 && equivalence_failures == 0 && uw == std::optional<std::size_t>(4) &&
           lw == std::optional<std::size_t>(4);
  o.detail = "involution failures " + std::to_string(involution_failures) + "/1000, URP vs dual LRP mismatches " +
             std::to_string(equivalence_failures) + "/15000, urp_witness=" + (uw ? std::to_string(*uw) : "none") +
             " lrp_witness=" + (lw ? std::to_string(*lw) : "none");
  return o;
}

// 9. Dual weight.
Outcome dual_weight() {
  std::size_t first_failures = 0;
  for (const char* desc : {"unit", "power:0.5", "power:0.3", "[2,1,1,3]"}) {
    const auto w = seqreg::make_weight(desc, 64);
    for (double q : {1.5, 2.0, 3.0, 7.0}) {
      const double qd = q / (q - 1.0);
      if (lorentz::allen_dual_weight(w, q).weight(1) != std::pow(w.primitive(1), -qd)) ++first_failures;
    }
  }
  const auto root = seqreg::make_weight("power:0.5", 4096);
  const auto u = lorentz::allen_dual_weight(root, 2.0);
  double lo = kInf, hi = 0.0;
  for (std::size_t n = 2; n <= 4096; ++n) {
    const double t = static_cast<double>(n) / root.primitive(n);
    const double ratio = u.weight(n) / (t * t / static_cast<double>(n));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  Outcome o;
  o.pass = first_failures == 0 && lo >= 0.4 && hi <= 2.5;
  o.detail = "u_1 mismatches " + std::to_string(first_failures) + "/16; u_n/(t_n^2/n) for s_n=sqrt n, q=2 spans [" +
             fmt(lo, 6) + ", " + fmt(hi, 6) + "]";
  return o;
}

// 10. Greedy constants on the catalog.
Outcome greedy_catalog() {
  const auto l2 = catalog::canonical(2.0, 10);
  const double qg = greedy::quasi_greedy_constant(l2, 512, 10).value;
  const auto phi = greedy::phi_upper(l2, 10, exact_options());
  const auto km = greedy::conditionality_table(l2, 10, exact_options());
  double l2_err = std::abs(qg - 1.0);
  for (std::size_t m = 1; m <= 10; ++m) {
    l2_err = std::max(l2_err, std::abs(phi[m - 1] - std::sqrt(double(m))));
    l2_err = std::max(l2_err, std::abs(km[m - 1] - 1.0));
  }

  const auto r = catalog::remark(12);
  const auto rphi = greedy::phi_upper(r, 12, exact_options());
  const auto brute = oracle::phi_upper_bruteforce(r.vectors(), [&](const oracle::Vec& x) { return r.ambient()(x); });
  double remark_err = 0.0;
  for (std::size_t m = 1; m <= 12; ++m) {
    const double closed = std::sqrt(double(m * m + m));
    remark_err = std::max(remark_err, rel_err(rphi[m - 1], closed));
    remark_err = std::max(remark_err, rel_err(brute[m - 1], closed));
  }
  const double k1 = greedy::conditionality_constant(r, 1, exact_options());
  double svd = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    svd = std::max(svd, oracle::largest_singular_value(r.vector(n) * r.dual(n).transpose()));
  }
  Outcome o;
  o.pass = l2_err <= 1e-9 && remark_err <= 1e-12 && std::abs(k1 - svd) <= 1e-8 && std::abs(k1 - std::sqrt(2.0)) <= 1e-8;
  o.detail = "ell_2: qg=" + fmt(qg, 12) + ", max deviation of qg/k_m/phi_u " + fmt(l2_err, 3) +
             "; remark: phi_u vs sqrt(m^2+m) for m<=12 (exact + brute force) rel err " + fmt(remark_err, 3) +
             ", k_1=" + fmt(k1, 15) + " svd=" + fmt(svd, 15);
  return o;
}

// 11. Dyadic decomposition.
Outcome dyadic_levels() {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> expo(-40, 40);
  std::size_t partition_failures = 0;
  for (int t = 0; t < 100'000; ++t) {
    std::vector<double> a(1 + gen() % 64);
    const int mode = t % 3;
    for (auto& v : a) {
      if (gen() % 6 == 0) {
        v = 0.0;
      } else if (mode == 0) {
        v = g(gen);
      } else if (mode == 1) {
        v = std::ldexp((gen() & 1) ? 1.0 : -1.0, expo(gen) / 4);
      } else {
        v = std::ldexp(g(gen), expo(gen));
      }
    }
    double top = 0.0;
    for (double v : a) top = std::max(top, std::abs(v));
    std::vector<int> seen(a.size(), 0);
    bool ok = true;
    for (const auto& level : embeddings::dyadic_decomposition(a)) {
      const double lower = std::ldexp(top, -level.k);
      const double upper = std::ldexp(top, -level.k + 1);
      for (std::size_t n : level.indices) {
        ++seen[n];
        const double x = std::abs(a[n]);
        if (!(x > lower && x <= upper)) ok = false;
      }
    }
    for (std::size_t n = 0; n < a.size(); ++n) {
      if (seen[n] != (a[n] != 0.0 ? 1 : 0)) ok = false;
    }
    if (!ok) ++partition_failures;
  }

  std::size_t runs = 0, bound_failures = 0;
  for (const char* desc : {"canonical:2:10", "canonical:1:10", "canonical:inf:10", "canonical:4:10", "remark:10",
                           "difference:10", "difference:10:1.5"}) {
    const auto b = catalog::make_basis(desc);
    const auto phi = greedy::phi_upper(b, b.size(), exact_options());
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto a = sweep_sample(i, b.size(), 11);
      const auto levels = embeddings::dyadic_decomposition(a);
      ++runs;
      for (const auto& lb : embeddings::level_norm_bound(b, a, levels, phi)) {
        if (!lb.holds) {
          ++bound_failures;
          break;
        }
      }
    }
  }
  Outcome o;
  o.pass = partition_failures == 0 && bound_failures == 0;
  o.detail = "partition failures " + std::to_string(partition_failures) + "/100000; level-norm bound failed in " +
             std::to_string(bound_failures) + "/" + std::to_string(runs) + " runs over 7 catalog bases";
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  out += "\n<status " + std::to_string(status) + ">";
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// 12. CLI determinism.
Outcome cli_determinism() {
  const std::string exe = SQUEEZE_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / "squeeze_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands{
      "norm --spec '{\"q\":2,\"weight\":\"power:0.5\"}' --vector '[3,-1,0.25,7]'",
      "seqreg urp --seq power:0.5 --N 64 --bmax 8",
      "seqreg dual --seq power:0.3 --N 50",
      "convexity --ambient l2:16 --eps 0.5",
      "convexity modulus --ambient l4:6 --eps 0.8 --seed 9 --budget 50000",
      "convexity remark --m 30 --q 1.1",
      "greedy qg --basis remark:8 --samples 300 --seed 4",
      "greedy phiu --basis difference:9",
      "greedy phil --basis remark:7 --mode sampled --samples 40 --seed 2",
      "greedy km --basis difference:6:3",
      "greedy lm --basis remark:8 --samples 30 --seed 1",
      "greedy bidem --basis canonical:1.5:6",
      "squeeze --basis remark:8 --q 2 --r inf --samples 64 --seed 12",
  };
  std::size_t mismatches = 0, failures = 0;
  for (const auto& cmd : commands) {
    const std::string a = capture(exe + " " + cmd + " 2>&1");
    const std::string b = capture(exe + " " + cmd + " 2>&1");
    const std::string c = capture("SQUEEZE_THREADS=3 " + exe + " " + cmd + " 2>&1");
    if (a != b || a != c) ++mismatches;
    if (a.find("<status 0>") == std::string::npos) ++failures;
  }
  const auto path = (dir / "report.json").string();
  const std::string cmd = exe + " squeeze --basis difference:8 --q 1.5 --r 3 --samples 64 --out " + path;
  std::string first, first_csv;
  for (int rep = 0; rep < 2; ++rep) {
    capture(cmd);
    const std::string json = read_file(path);
    const std::string csv = read_file(path + ".lebesgue.csv");
    if (rep == 0) {
      first = json;
      first_csv = csv;
    } else if (json != first || csv != first_csv || json.empty() || csv.empty()) {
      ++mismatches;
    }
  }
  std::filesystem::remove_all(dir);
  Outcome o;
  o.pass = mismatches == 0 && failures == 0;
  o.detail = std::to_string(commands.size() + 1) + " configurations run repeatedly (also with 3 workers): " +
             std::to_string(mismatches) + " byte mismatches, " + std::to_string(failures) + " nonzero exits";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "remark basis closed form and ratio growth", 10.0, remark_closed_form},
      {2, "split point guarantee", 60.0, split_point_guarantee},
      {3, "q-triangle law in Hilbert space", 60.0, qlaw_hilbert},
      {4, "summation bound on dyadic families", 120.0, summation_bound_remark},
      {5, "gap between Lorentz scales", 60.0, delta_formula},
      {6, "H_m against log m", 5.0, harmonic_vs_log},
      {7, "Lorentz norm invariances", 60.0, lorentz_properties},
      {8, "regularity algebra", 10.0, regularity_algebra},
      {9, "dual weight", 5.0, dual_weight},
      {10, "greedy constants on the catalog", 120.0, greedy_catalog},
      {11, "dyadic decomposition", 60.0, dyadic_levels},
      {12, "CLI determinism", 600.0, cli_determinism},
  };

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " | " << o.detail
              << " | " << fmt(seconds, 3) << " s (limit " << fmt(c.time_limit) << " s)" << (in_time ? "" : " TIMEOUT")
              << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion with id " << only << "\n";
    return 2;
  }
  if (only == 0) std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
