#include "skewinfo/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewinfo/bound_chains.hpp"
#include "skewinfo/error.hpp"
#include "skewinfo/io.hpp"
#include "skewinfo/worked_example.hpp"

namespace skewinfo::cli {

namespace fs = std::filesystem;
using io::format_number;

namespace {

// Flat "key = value" report, keys kept in insertion order.
class KeyValueReport {
public:
    void set(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
    void set(const std::string& key, double value) { set(key, format_number(value)); }
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }

    std::string str() const {
        std::ostringstream out;
        for (const auto& [k, v] : lines_) out << k << " = " << v << '\n';
        return out.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

std::string join_permutation(const Permutation& perm) {
    std::string s;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(perm[i] + 1);
    }
    return s;
}

std::vector<int> parse_dims(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            const int d = std::stoi(part, &used);
            if (used != part.size() || d < 1) throw std::invalid_argument(part);
            dims.push_back(d);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad dimension \"" + part + "\" in --dims");
        }
    }
    if (dims.empty()) throw Error(ErrorKind::ParseError, "--dims is empty");
    return dims;
}

void require_tol(double tol, bool allow_zero) {
    if (tol < 0.0 || (!allow_zero && tol == 0.0) || std::isnan(tol))
        throw Error(ErrorKind::ParseError, "tolerance must be " +
                                               std::string(allow_zero ? ">= 0" : "> 0"));
}

struct PermSettings {
    std::string strategy = "auto";
    std::size_t budget = 0;  // 0: default for the strategy
    int p = 2;
    int q = 1;
};

PermutationStrategy resolve_strategy(const PermSettings& s, Eigen::Index d) {
    if (s.strategy == "exhaustive") return PermutationStrategy::Exhaustive;
    if (s.strategy == "sampled") return PermutationStrategy::Sampled;
    if (s.strategy == "auto") return default_strategy(d);
    throw Error(ErrorKind::ParseError, "--perm must be exhaustive or sampled");
}

std::size_t resolve_budget(const PermSettings& s, PermutationStrategy strategy) {
    if (s.budget > 0) return s.budget;
    return strategy == PermutationStrategy::Exhaustive ? kDefaultPermutationBudget
                                                       : kDefaultSampleBudget;
}

fs::path csv_sibling(const fs::path& report) {
    fs::path csv = report;
    csv.replace_extension(".csv");
    if (csv == report) csv += ".csv";
    return csv;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsConfig {
    std::string state, channel1, channel2, out;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::string reading = "lagrange";
    std::string t_grid = "1";
    PermSettings perm;
};

int cmd_bounds(const BoundsConfig& cfg, std::ostream& out) {
    require_tol(cfg.tol, false);
    const SReading reading = s_reading_from_string(cfg.reading);
    const auto t_values = example::GridAxis::parse(cfg.t_grid);
    t_values.validate_unit_interval("t");

    const DensityMatrix rho = io::read_state(cfg.state, cfg.tol);
    const KrausChannel n1 = io::read_channel(cfg.channel1, cfg.tol);
    const KrausChannel n2 = io::read_channel(cfg.channel2, cfg.tol);
    if (n1.dim() != rho.dim() || n2.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "state and channels must share a dimension");

    const ChainInput in = prepare_chain_input(rho, n1, n2);
    const BoundChain chain = bound_chain(in, reading);
    const auto d = static_cast<int>(rho.dim());

    KeyValueReport r;
    r.set("command", "bounds");
    r.set("dim", static_cast<std::size_t>(d));
    r.set("n_kraus_1", n1.size());
    r.set("n_kraus_2", n2.size());
    r.set("convention_1", std::string(to_string(n1.convention())));
    r.set("convention_2", std::string(to_string(n2.convention())));
    r.set("s_reading", std::string(to_string(reading)));
    r.set("skew_channel_1", chain.skew1);
    r.set("skew_channel_2", chain.skew2);
    r.set("product", chain.product);
    r.set("sum", chain.sum);
    r.set("lemma1", chain.lemma1);
    for (std::size_t m = 0; m < chain.i_values.size(); ++m)
        r.set("I" + std::to_string(m + 1), chain.i_values[m]);
    for (const auto& v : chain.s_values)
        r.set("S" + std::to_string(v.index.p) + "_" + std::to_string(v.index.q), v.value);
    const auto sums = sum_chain(chain);
    for (std::size_t m = 0; m < chain.i_values.size(); ++m)
        r.set("sum_bound.2sqrt_I" + std::to_string(m + 1), sums[m]);

    std::optional<PermutedBound> best;
    if (d >= 2) {
        const int p = std::min(cfg.perm.p, d);
        const int q = std::min(cfg.perm.q, p - 1);
        const auto strategy = resolve_strategy(cfg.perm, rho.dim());
        best = optimize_permutations(in, p, q, strategy, resolve_budget(cfg.perm, strategy),
                                     RandomSeed{cfg.seed}, reading);
        r.set("perm.p", static_cast<std::size_t>(p));
        r.set("perm.q", static_cast<std::size_t>(q));
        r.set("perm.strategy", strategy == PermutationStrategy::Exhaustive ? "exhaustive" : "sampled");
        r.set("perm.evaluated", best->evaluated);
        r.set("perm.sigma", join_permutation(best->sigma));
        r.set("perm.tau", join_permutation(best->tau));
        r.set("perm.identity_value", chain.s_value(p, q));
        r.set("perm.value", best->value);
        for (double t : t_values.values()) {
            const MixedBound mb = mixed_bound(chain, *best, t);
            r.set("mixed.t" + format_number(t) + ".product_bound", mb.product_bound);
            r.set("mixed.t" + format_number(t) + ".sum_bound", mb.sum_bound);
        }
    }

    VerifyOptions vopt;
    vopt.tol = 1e-10;
    vopt.seed = RandomSeed{cfg.seed};
    const ChainVerdict verdict = verify_chain(rho, n1, n2, vopt);
    r.set("verdict.tol", verdict.tol);
    r.set("verdict.checks", verdict.checks.size());
    r.set("verdict.hard_failures", verdict.hard_failures());
    for (const auto& c : verdict.checks) {
        r.set("verdict." + c.name, std::string(c.passed ? "pass" : "FAIL") +
                                       (c.hard ? "" : " (soft)") + " lhs=" + format_number(c.lhs) +
                                       " rhs=" + format_number(c.rhs) +
                                       " dev=" + format_number(c.deviation));
    }
    io::write_file_atomic(cfg.out, r.str());

    // One CSV row with the headline values.
    std::ostringstream csv;
    std::ostringstream header;
    header << "product,sum";
    csv << format_number(chain.product) << ',' << format_number(chain.sum);
    for (std::size_t m = 0; m < chain.i_values.size(); ++m) {
        header << ",I" << m + 1;
        csv << ',' << format_number(chain.i_values[m]);
    }
    for (const auto& v : chain.s_values) {
        header << ",S" << v.index.p << v.index.q;
        csv << ',' << format_number(v.value);
    }
    header << ",lemma1,perm_opt,mixed_product,mixed_sum";
    csv << ',' << format_number(chain.lemma1);
    if (best) {
        const double t = t_values.values().back();
        const MixedBound mb = mixed_bound(chain, *best, t);
        csv << ',' << format_number(best->value) << ',' << format_number(mb.product_bound) << ','
            << format_number(mb.sum_bound);
    } else {
        csv << ",nan,nan,nan";
    }
    io::write_file_atomic(csv_sibling(cfg.out), header.str() + "\n" + csv.str() + "\n");

    out << "product " << format_number(chain.product) << "  lemma1 " << format_number(chain.lemma1)
        << "  hard check failures " << verdict.hard_failures() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Random instances shared by verify and random-suite

struct Instance {
    int dim;
    std::size_t index;
    Eigen::Index rank;
    DensityMatrix rho;
    KrausChannel n1;
    KrausChannel n2;
};

template <class Visit>
void for_each_instance(const std::vector<int>& dims, std::size_t per_dim, std::uint64_t seed,
                       Visit&& visit) {
    Rng rng(RandomSeed{seed});
    for (int d : dims) {
        const auto max_kraus = std::min<std::uint64_t>(4, static_cast<std::uint64_t>(d) * d);
        for (std::size_t i = 0; i < per_dim; ++i) {
            const auto rank = static_cast<Eigen::Index>(1 + rng.below(static_cast<std::uint64_t>(d)));
            const auto k1 = static_cast<Eigen::Index>(1 + rng.below(max_kraus));
            const auto k2 = static_cast<Eigen::Index>(1 + rng.below(max_kraus));
            DensityMatrix rho = random_density(d, rank, rng);
            KrausChannel n1 = random_channel(d, k1, Convention::ColumnSum, rng);
            KrausChannel n2 = random_channel(d, k2, Convention::ColumnSum, rng);
            const std::uint64_t sub_seed = rng.next_u64();
            visit(Instance{d, i, rank, std::move(rho), std::move(n1), std::move(n2)}, sub_seed);
        }
    }
}

struct CheckStats {
    bool hard = true;
    std::size_t evaluated = 0;
    std::size_t failures = 0;
    double worst_deviation = -std::numeric_limits<double>::infinity();
};

// Strips the dimension-specific part of a check name so statistics aggregate
// across dimensions: anchors at the lattice end are reported under a common key.
std::string stats_key(const ChainCheck& c) { return c.name; }

struct VerifyConfig {
    std::string dims = "2,3,4";
    long long instances = 200;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    long long trials = 2;
    std::string out = "verdict.txt";
};

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
    require_tol(cfg.tol, false);
    if (cfg.instances < 1) throw Error(ErrorKind::ParseError, "--instances must be >= 1");
    if (cfg.trials < 0) throw Error(ErrorKind::ParseError, "--trials must be >= 0");
    const auto dims = parse_dims(cfg.dims);

    std::map<std::string, CheckStats> stats;
    std::size_t instances = 0, hard_failures = 0, soft_failures = 0;
    std::size_t invariance_failures = 0;
    double invariance_max = 0.0;

    for_each_instance(dims, static_cast<std::size_t>(cfg.instances), cfg.seed,
                      [&](const Instance& inst, std::uint64_t sub_seed) {
                          VerifyOptions vopt;
                          vopt.tol = cfg.tol;
                          vopt.seed = RandomSeed{sub_seed};
                          const ChainVerdict v = verify_chain(inst.rho, inst.n1, inst.n2, vopt);
                          for (const auto& c : v.checks) {
                              auto& s = stats[stats_key(c)];
                              s.hard = c.hard;
                              ++s.evaluated;
                              if (!c.passed) {
                                  ++s.failures;
                                  ++(c.hard ? hard_failures : soft_failures);
                              }
                              s.worst_deviation = std::max(s.worst_deviation, c.deviation);
                          }
                          if (cfg.trials > 0) {
                              const auto rep = kraus_invariance_check(
                                  inst.rho, inst.n1, inst.n2, static_cast<std::size_t>(cfg.trials),
                                  RandomSeed{sub_seed ^ 0x9e3779b97f4a7c15ULL}, cfg.tol);
                              invariance_max = std::max(invariance_max, rep.max_deviation());
                              if (!rep.passed()) ++invariance_failures;
                          }
                          ++instances;
                      });

    KeyValueReport r;
    r.set("command", "verify");
    r.set("dims", cfg.dims);
    r.set("instances_per_dim", static_cast<std::size_t>(cfg.instances));
    r.set("instances", instances);
    r.set("seed", std::to_string(cfg.seed));
    r.set("tol", cfg.tol);
    r.set("channel_convention", "column_sum");
    r.set("mixing_trials_per_instance", static_cast<std::size_t>(cfg.trials));
    r.set("hard_failures", hard_failures + invariance_failures);
    r.set("soft_failures", soft_failures);
    r.set("invariance.failures", invariance_failures);
    r.set("invariance.max_deviation", invariance_max);

    // Per-reading anchor statistics.
    std::vector<std::string> endpoint_readings;
    for (SReading reading : kAllReadings) {
        const std::string prefix = "schain." + std::string(to_string(reading)) + ".anchor_";
        double endpoint_dev = 0.0;
        std::size_t endpoint_fail = 0, anchor_fail = 0;
        double anchor_dev = 0.0;
        for (const auto& [name, s] : stats) {
            if (name.rfind(prefix, 0) != 0) continue;
            if (name == prefix + "Sd_eq_lemma1") {
                endpoint_dev = std::max(endpoint_dev, s.worst_deviation);
                endpoint_fail += s.failures;
            } else {
                anchor_dev = std::max(anchor_dev, s.worst_deviation);
                anchor_fail += s.failures;
            }
        }
        const std::string key = "anchor." + std::string(to_string(reading));
        r.set(key + ".endpoint_max_deviation", endpoint_dev);
        r.set(key + ".endpoint_failures", endpoint_fail);
        r.set(key + ".intermediate_max_deviation", anchor_dev);
        r.set(key + ".intermediate_failures", anchor_fail);
        if (endpoint_fail == 0) endpoint_readings.emplace_back(to_string(reading));
    }
    std::string readings;
    for (const auto& s : endpoint_readings) readings += (readings.empty() ? "" : ",") + s;
    r.set("anchor.readings_satisfying_endpoint", readings.empty() ? "none" : readings);

    for (const auto& [name, s] : stats) {
        r.set("check." + name, std::string(s.hard ? "hard" : "soft") +
                                   " evaluated=" + std::to_string(s.evaluated) +
                                   " failures=" + std::to_string(s.failures) +
                                   " worst_deviation=" + format_number(s.worst_deviation));
    }
    const bool ok = hard_failures == 0 && invariance_failures == 0;
    r.set("result", ok ? "pass" : "fail");
    io::write_file_atomic(cfg.out, r.str());

    out << "verify: " << instances << " instances, " << hard_failures + invariance_failures
        << " hard failures, " << soft_failures << " soft failures -> " << (ok ? "pass" : "fail")
        << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// random-suite

struct RandomSuiteConfig {
    std::string dims = "2,3,4";
    long long instances = 50;
    std::uint64_t seed = 42;
    std::string out = "random_suite.csv";
};

int cmd_random_suite(const RandomSuiteConfig& cfg, std::ostream& out) {
    if (cfg.instances < 1) throw Error(ErrorKind::ParseError, "--instances must be >= 1");
    const auto dims = parse_dims(cfg.dims);
    const int dmax = *std::max_element(dims.begin(), dims.end());

    std::ostringstream csv;
    csv << "dim,instance,rank,n_kraus_1,n_kraus_2,product,sum,lemma1";
    for (int m = 1; m <= dmax; ++m) csv << ",I" << m;
    for (SReading reading : kAllReadings) csv << ",S21_" << to_string(reading) << ",Sdd1_" << to_string(reading);
    csv << '\n';

    std::size_t rows = 0;
    for_each_instance(dims, static_cast<std::size_t>(cfg.instances), cfg.seed,
                      [&](const Instance& inst, std::uint64_t) {
                          const ChainInput in = prepare_chain_input(inst.rho, inst.n1, inst.n2);
                          const BoundChain chain = bound_chain(in, SReading::Lagrange);
                          csv << inst.dim << ',' << inst.index << ',' << inst.rank << ','
                              << inst.n1.size() << ',' << inst.n2.size() << ','
                              << format_number(chain.product) << ',' << format_number(chain.sum)
                              << ',' << format_number(chain.lemma1);
                          for (int m = 0; m < dmax; ++m) {
                              csv << ',';
                              if (m < inst.dim) csv << format_number(chain.i_values[static_cast<std::size_t>(m)]);
                          }
                          for (SReading reading : kAllReadings) {
                              const auto s = s_chain(in, reading);
                              csv << ',';
                              if (!s.empty()) csv << format_number(s.front().value);
                              csv << ',';
                              if (!s.empty()) csv << format_number(s.back().value);
                          }
                          csv << '\n';
                          ++rows;
                      });
    io::write_file_atomic(cfg.out, csv.str());
    out << "random-suite: wrote " << rows << " rows to " << cfg.out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// example

struct ExampleConfig {
    std::string out = ".";
    std::optional<std::string> theta, p, q, t;
    std::string reading = "lagrange";
    std::uint64_t seed = 0;
    PermSettings perm;
};

int cmd_example(const ExampleConfig& cfg, std::ostream& out) {
    const SReading reading = s_reading_from_string(cfg.reading);
    auto apply = [&](example::SweepSpec spec) {
        if (cfg.theta) spec.theta = example::GridAxis::parse(*cfg.theta);
        if (cfg.p) spec.p = example::GridAxis::parse(*cfg.p);
        if (cfg.q) spec.q = example::GridAxis::parse(*cfg.q);
        if (cfg.t) spec.t = example::GridAxis::parse(*cfg.t);
        spec.theta.validate_unit_interval("theta");
        spec.p.validate_unit_interval("p");
        spec.q.validate_unit_interval("q");
        spec.t.validate_unit_interval("t");
        spec.reading = reading;
        spec.perm_target = {cfg.perm.p, cfg.perm.q};
        if (!(1 <= cfg.perm.q && cfg.perm.q < cfg.perm.p && cfg.perm.p <= 4))
            throw Error(ErrorKind::ParseError, "--perm-p/--perm-q must satisfy 1 <= q < p <= 4");
        spec.strategy = resolve_strategy(cfg.perm, 4);
        spec.budget = resolve_budget(cfg.perm, spec.strategy);
        spec.seed = RandomSeed{cfg.seed};
        return spec;
    };
    // Validate every grid before any output is produced.
    const auto surface_spec = apply(example::figure_spec(1));
    const auto curve_spec = apply(example::figure_spec(3));

    fs::create_directories(cfg.out);
    const auto surface = example::sweep(surface_spec);
    const auto curve = example::sweep(curve_spec);
    const std::string surface_csv = example::sweep_csv(surface);
    io::write_file_atomic(fs::path(cfg.out) / "figure1.csv", surface_csv);
    io::write_file_atomic(fs::path(cfg.out) / "figure2.csv", surface_csv);
    io::write_file_atomic(fs::path(cfg.out) / "figure3.csv", example::sweep_csv(curve));
    io::write_file_atomic(fs::path(cfg.out) / "figure4.csv", surface_csv);

    // One comparison row per (θ, p, q): the printed forms do not depend on t.
    std::vector<example::SweepRow> compare;
    for (const auto* table : {&surface, &curve})
        for (const auto& row : table->rows)
            if (row.params.t == table->spec.t.values().front()) compare.push_back(row);
    const auto report = example::discrepancy_report(compare);
    io::write_file_atomic(fs::path(cfg.out) / "discrepancy_report.csv",
                          example::discrepancy_csv(report));
    io::write_file_atomic(fs::path(cfg.out) / "discrepancy_summary.csv",
                          example::discrepancy_summary_csv(report));

    const auto h1 = example::check_hard_invariants(surface);
    const auto h3 = example::check_hard_invariants(curve);
    KeyValueReport r;
    r.set("command", "example");
    r.set("s_reading", std::string(to_string(reading)));
    r.set("surface.rows", h1.rows);
    r.set("surface.violations", h1.violations);
    r.set("surface.max_dev_eq20", h1.max_dev_eq20);
    r.set("surface.max_dev_eq22", h1.max_dev_eq22);
    r.set("surface.max_order_violation", h1.max_order_violation);
    r.set("surface.verify_failures", h1.verify_failures);
    r.set("curve.rows", h3.rows);
    r.set("curve.violations", h3.violations);
    r.set("curve.max_dev_eq20", h3.max_dev_eq20);
    r.set("curve.max_dev_eq22", h3.max_dev_eq22);
    r.set("curve.max_order_violation", h3.max_order_violation);
    r.set("curve.verify_failures", h3.verify_failures);
    for (const auto& s : report.summaries) {
        r.set("discrepancy." + s.formula + ".max_abs_dev", s.max_abs_dev);
        r.set("discrepancy." + s.formula + ".fitted_ratio", s.fitted_ratio);
        r.set("discrepancy." + s.formula + ".agrees", s.agrees);
        r.set("discrepancy." + s.formula + ".multiplicative", s.multiplicative);
    }
    const bool ok = h1.ok() && h3.ok();
    r.set("result", ok ? "pass" : "fail");
    io::write_file_atomic(fs::path(cfg.out) / "example_verdict.txt", r.str());

    out << "example: " << surface.rows.size() << " surface rows, " << curve.rows.size()
        << " curve rows -> " << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// invariance

struct InvarianceConfig {
    std::string state, channel1, channel2, out = "invariance.txt";
    long long trials = 20;
    std::uint64_t seed = 0;
    double tol = 1e-10;
};

int cmd_invariance(const InvarianceConfig& cfg, std::ostream& out) {
    require_tol(cfg.tol, true);
    if (cfg.trials < 1) throw Error(ErrorKind::ParseError, "--trials must be >= 1");
    const DensityMatrix rho = io::read_state(cfg.state);
    const KrausChannel n1 = io::read_channel(cfg.channel1);
    const KrausChannel n2 = io::read_channel(cfg.channel2);
    if (n1.dim() != rho.dim() || n2.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "state and channels must share a dimension");

    const auto rep = kraus_invariance_check(rho, n1, n2, static_cast<std::size_t>(cfg.trials),
                                            RandomSeed{cfg.seed}, cfg.tol);
    KeyValueReport r;
    r.set("command", "invariance");
    r.set("trials", rep.trials);
    r.set("seed", std::to_string(cfg.seed));
    r.set("tol", cfg.tol);
    r.set("max_dev.product", rep.max_dev_product);
    r.set("max_dev.sum", rep.max_dev_sum);
    r.set("max_dev.I", rep.max_dev_i);
    r.set("max_dev.S", rep.max_dev_s);
    r.set("max_dev.lemma1", rep.max_dev_lemma1);
    r.set("max_deviation", rep.max_deviation());
    r.set("result", rep.passed() ? "pass" : "fail");
    io::write_file_atomic(cfg.out, r.str());
    out << "invariance: max deviation " << format_number(rep.max_deviation()) << " -> "
        << (rep.passed() ? "pass" : "fail") << '\n';
    return rep.passed() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// export-example

struct ExportConfig {
    double theta = 1.0, p = 0.5, q = 0.5;
    std::string out = ".";
};

int cmd_export_example(const ExportConfig& cfg, std::ostream& out) {
    const DensityMatrix rho = example::rho_theta(cfg.theta);
    const auto [n1, n2] = example::example_channels(cfg.p, cfg.q);
    fs::create_directories(cfg.out);
    io::write_file_atomic(fs::path(cfg.out) / "state.json", io::state_to_json(rho.rho()).dump(2) + "\n");
    io::write_file_atomic(fs::path(cfg.out) / "channel1.json", io::channel_to_json(n1).dump(2) + "\n");
    io::write_file_atomic(fs::path(cfg.out) / "channel2.json", io::channel_to_json(n2).dump(2) + "\n");
    out << "wrote state.json, channel1.json, channel2.json to " << cfg.out << '\n';
    return kExitOk;
}

int exit_code_for(const Error& e) {
    return e.kind() == ErrorKind::ConvergenceFailure ? kExitNumerical : kExitBadInput;
}

void add_perm_options(CLI::App* cmd, PermSettings& perm) {
    cmd->add_option("--perm", perm.strategy, "Permutation search: exhaustive or sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    cmd->add_option("--budget", perm.budget, "Permutation budget (pairs)");
    cmd->add_option("--perm-p", perm.p, "Lattice row p of the optimized entry");
    cmd->add_option("--perm-q", perm.q, "Lattice column q of the optimized entry");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Skew-information uncertainty bounds for pairs of quantum channels"};
    app.require_subcommand(1);

    BoundsConfig bounds;
    auto* c_bounds = app.add_subcommand("bounds", "Compute every bound for one state and two channels");
    c_bounds->add_option("--state", bounds.state)->required();
    c_bounds->add_option("--channel1", bounds.channel1)->required();
    c_bounds->add_option("--channel2", bounds.channel2)->required();
    c_bounds->add_option("--out", bounds.out, "Report path; a CSV row is written next to it")->required();
    c_bounds->add_option("--tol", bounds.tol, "Validation tolerance");
    c_bounds->add_option("--seed", bounds.seed);
    c_bounds->add_option("--s-reading", bounds.reading)
        ->check(CLI::IsMember({"as-printed", "product", "lagrange"}));
    c_bounds->add_option("--t", bounds.t_grid, "Mixing weights, start:stop:count");
    add_perm_options(c_bounds, bounds.perm);

    VerifyConfig verify;
    auto* c_verify = app.add_subcommand("verify", "Randomized certification of every chain inequality");
    c_verify->add_option("--dims", verify.dims, "Comma-separated dimensions");
    c_verify->add_option("--instances", verify.instances, "Instances per dimension");
    c_verify->add_option("--seed", verify.seed);
    c_verify->add_option("--tol", verify.tol);
    c_verify->add_option("--trials", verify.trials, "Kraus mixings per instance");
    c_verify->add_option("--out", verify.out, "Verdict file");

    ExampleConfig example_cfg;
    auto* c_example = app.add_subcommand("example", "Regenerate the worked-example figure data");
    c_example->add_option("--out", example_cfg.out, "Output directory");
    c_example->add_option("--theta", example_cfg.theta, "Grid start:stop:count");
    c_example->add_option("--p", example_cfg.p, "Grid start:stop:count");
    c_example->add_option("--q", example_cfg.q, "Grid start:stop:count");
    c_example->add_option("--t", example_cfg.t, "Grid start:stop:count");
    c_example->add_option("--s-reading", example_cfg.reading)
        ->check(CLI::IsMember({"as-printed", "product", "lagrange"}));
    c_example->add_option("--seed", example_cfg.seed);
    add_perm_options(c_example, example_cfg.perm);

    InvarianceConfig inv;
    auto* c_inv = app.add_subcommand("invariance", "Check independence of the Kraus representation");
    c_inv->add_option("--state", inv.state)->required();
    c_inv->add_option("--channel1", inv.channel1)->required();
    c_inv->add_option("--channel2", inv.channel2)->required();
    c_inv->add_option("--trials", inv.trials);
    c_inv->add_option("--seed", inv.seed);
    c_inv->add_option("--tol", inv.tol);
    c_inv->add_option("--out", inv.out);

    RandomSuiteConfig suite;
    auto* c_suite = app.add_subcommand("random-suite", "Tabulate chains over random instances");
    c_suite->add_option("--dims", suite.dims);
    c_suite->add_option("--instances", suite.instances);
    c_suite->add_option("--seed", suite.seed);
    c_suite->add_option("--out", suite.out);

    ExportConfig exp;
    auto* c_export = app.add_subcommand("export-example", "Write the example state and channels as JSON");
    c_export->add_option("--theta", exp.theta);
    c_export->add_option("--p", exp.p);
    c_export->add_option("--q", exp.q);
    c_export->add_option("--out", exp.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (c_bounds->parsed()) return cmd_bounds(bounds, out);
        if (c_verify->parsed()) return cmd_verify(verify, out);
        if (c_example->parsed()) return cmd_example(example_cfg, out);
        if (c_inv->parsed()) return cmd_invariance(inv, out);
        if (c_suite->parsed()) return cmd_random_suite(suite, out);
        if (c_export->parsed()) return cmd_export_example(exp, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitBadInput;
}

}  // namespace skewinfo::cli
