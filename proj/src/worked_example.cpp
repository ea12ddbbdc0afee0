#include "skewinfo/worked_example.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewinfo/error.hpp"
#include "skewinfo/io.hpp"

namespace skewinfo::example {

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw Error(ErrorKind::OutOfRange, std::string(name) + " = " + std::to_string(x) +
                                               " outside [0, 1]", x);
}

}  // namespace

DensityMatrix rho_theta(double theta) {
    require_unit(theta, "theta");
    const double off = 2.0 * theta - 1.0;
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int b = 0; b < 4; b += 2) {
        rho(b, b) = rho(b + 1, b + 1) = 1.0;
        rho(b, b + 1) = rho(b + 1, b) = off;
    }
    return validate_density(0.25 * rho);
}

std::pair<KrausChannel, KrausChannel> example_channels(double p, double q) {
    require_unit(p, "p");
    require_unit(q, "q");
    const double sp = std::sqrt(p), sp1 = std::sqrt(1.0 - p);
    const double sq = std::sqrt(q), sq1 = std::sqrt(1.0 - q);

    ComplexMatrix e1 = ComplexMatrix::Zero(4, 4), e2 = ComplexMatrix::Zero(4, 4);
    e1.diagonal() << 1.0, sp1, 1.0, sp1;
    e2.diagonal() << 0.0, sp, 0.0, sp;

    ComplexMatrix f1 = ComplexMatrix::Zero(4, 4), f2 = ComplexMatrix::Zero(4, 4);
    f1.diagonal() << sq1, 1.0, sq1, 1.0;
    f2(0, 1) = sq;
    f2(2, 3) = sq;

    return {validate_channel({e1, e2}, Convention::RowSum, 1e-12),
            validate_channel({f1, f2}, Convention::RowSum, 1e-12)};
}

ClosedForms closed_forms(const ExampleParams& x) {
    const double th = x.theta, p = x.p, q = x.q;
    const double root_th = std::sqrt(std::max(0.0, th * (1.0 - th)));
    const double a4 = std::pow(std::sqrt(1.0 - th) - std::sqrt(th), 4);
    const double b = 1.0 - 2.0 * root_th;
    const double sp1 = std::sqrt(1.0 - p), sq1 = std::sqrt(1.0 - q);

    ClosedForms f;
    f.eq20 = 0.25 * a4 * (1.0 - sp1) * (1.0 - sq1);
    f.eq21 = (2.0 * root_th - 1.0) * (sp1 + sq1 - 2.0);
    f.eq22 = 0.125 * a4 * (1.0 - sp1) * (1.0 - sq1) * (1.0 - sq1);
    f.eq23 = b * b * (sp1 - 1.0) * (q + 8.0 * sq1 - 8.0) / 32.0;
    f.eq24 = (4.0 * th * th - 4.0 * th + 4.0 * root_th - 1.0) *
             (p * (q + 2.0 * sq1 - 2.0) - 8.0 * (sp1 - 1.0) * (2.0 * q + 9.0 * sq1 - 9.0)) / 256.0;
    f.eq25 = 3.0 * q / 256.0 * a4 * (sp1 - 1.0) * (sp1 - 1.0) +
             b * b * (sp1 - 1.0) * (sp1 - 1.0) * (sq1 - 1.0) * (sq1 - 1.0) / 16.0 +
             p / 16.0 * b * b * (sq1 - 1.0) * (sq1 - 1.0) +
             q / 16.0 * b * b * (sp1 - 1.0) * (sp1 - 1.0) +
             q * std::sqrt(p) / 256.0 * b * b * (4.0 * sp1 + 3.0 * std::sqrt(p) - 4.0);
    return f;
}

// ---------------------------------------------------------------------------
// Grids

namespace {

double parse_double(const std::string& s, const std::string& spec) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty())
        throw Error(ErrorKind::ParseError, "bad number \"" + s + "\" in grid \"" + spec + "\"");
    return v;
}

}  // namespace

GridAxis GridAxis::parse(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() == 1) return point(parse_double(parts[0], spec));
    if (parts.size() != 3)
        throw Error(ErrorKind::ParseError, "grid \"" + spec + "\" must be start:stop:count");
    GridAxis g;
    g.start = parse_double(parts[0], spec);
    g.stop = parse_double(parts[1], spec);
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count == 0)
        throw Error(ErrorKind::ParseError, "grid \"" + spec + "\" needs a positive integer count");
    g.count = count;
    if (count == 1 && g.start != g.stop)
        throw Error(ErrorKind::ParseError, "single-point grid \"" + spec + "\" needs start == stop");
    if (count > 1 && !(g.stop > g.start))
        throw Error(ErrorKind::ParseError, "grid \"" + spec + "\" needs stop > start");
    return g;
}

std::vector<double> GridAxis::values() const {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
    out.back() = stop;
    return out;
}

void GridAxis::validate_unit_interval(const char* name) const {
    require_unit(start, name);
    require_unit(stop, name);
}

SweepSpec figure_spec(int figure) {
    SweepSpec spec;
    if (figure == 3) {
        spec.theta = {0.0, 1.0, 101};
        spec.p = GridAxis::point(0.5);
        spec.q = GridAxis::point(0.5);
    } else if (figure < 1 || figure > 4) {
        throw Error(ErrorKind::OutOfRange, "figures are numbered 1 to 4");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Sweep

SweepTable sweep(const SweepSpec& spec) {
    spec.theta.validate_unit_interval("theta");
    spec.p.validate_unit_interval("p");
    spec.q.validate_unit_interval("q");
    spec.t.validate_unit_interval("t");

    SweepTable table{spec, {}};
    const auto thetas = spec.theta.values();
    const auto ps = spec.p.values();
    const auto qs = spec.q.values();
    const auto ts = spec.t.values();
    table.rows.reserve(thetas.size() * ps.size() * qs.size() * ts.size());

    VerifyOptions verify;
    verify.tol = 1e-9;
    verify.t_values = ts;
    verify.seed = spec.seed;

    for (double theta : thetas) {
        const DensityMatrix rho = rho_theta(theta);
        for (double p : ps) {
            for (double q : qs) {
                const auto [n1, n2] = example_channels(p, q);
                const ChainInput in = prepare_chain_input(rho, n1, n2);
                const BoundChain chain = bound_chain(in, spec.reading);
                const BoundChain anchored =
                    spec.reading == SReading::Lagrange ? chain : bound_chain(in, SReading::Lagrange);
                const PermutedBound best =
                    optimize_permutations(in, spec.perm_target.p, spec.perm_target.q,
                                          spec.strategy, spec.budget, spec.seed, spec.reading);
                const std::size_t failures =
                    spec.verify_rows ? verify_chain(rho, n1, n2, verify).hard_failures() : 0;

                for (double t : ts) {
                    SweepRow row;
                    row.params = {theta, p, q, t};
                    row.product = chain.product;
                    row.sum = chain.sum;
                    std::copy_n(chain.i_values.begin(), 4, row.i_values.begin());
                    row.s21 = chain.s_value(2, 1);
                    row.s31 = chain.s_value(3, 1);
                    row.s32 = chain.s_value(3, 2);
                    row.lemma1 = chain.lemma1;
                    row.perm_opt = best.value;
                    const MixedBound mixed = mixed_bound(chain, best, t);
                    row.mixed_product = mixed.product_bound;
                    row.mixed_sum = mixed.sum_bound;
                    row.printed = closed_forms(row.params);
                    row.anchored_s = {anchored.s_value(2, 1), anchored.s_value(3, 1),
                                      anchored.s_value(3, 2)};
                    row.verify_hard_failures = failures;
                    table.rows.push_back(row);
                }
            }
        }
    }
    return table;
}

const std::vector<std::string>& sweep_header() {
    static const std::vector<std::string> header{
        "theta", "p",    "q",    "t",    "product", "sum",      "I1",
        "I2",    "I3",   "I4",   "S21",  "S31",     "S32",      "lemma1",
        "perm_opt", "mixed_product", "mixed_sum", "eq20", "eq21", "eq22", "eq23",
        "eq24",  "eq25"};
    return header;
}

namespace {

void join_row(std::ostringstream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << io::format_number(v);
        first = false;
    }
    out << '\n';
}

}  // namespace

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    const auto& header = sweep_header();
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : table.rows) {
        join_row(out, {r.params.theta, r.params.p, r.params.q, r.params.t, r.product, r.sum,
                       r.i_values[0], r.i_values[1], r.i_values[2], r.i_values[3], r.s21, r.s31,
                       r.s32, r.lemma1, r.perm_opt, r.mixed_product, r.mixed_sum, r.printed.eq20,
                       r.printed.eq21, r.printed.eq22, r.printed.eq23, r.printed.eq24,
                       r.printed.eq25});
    }
    return out.str();
}

HardInvariants check_hard_invariants(const SweepTable& table, double tol) {
    HardInvariants h;
    for (const auto& r : table.rows) {
        ++h.rows;
        const double d20 = std::abs(r.product - r.printed.eq20);
        const double d22 = std::abs(r.lemma1 - r.printed.eq22);
        h.max_dev_eq20 = std::max(h.max_dev_eq20, d20);
        h.max_dev_eq22 = std::max(h.max_dev_eq22, d22);
        const std::array<double, 5> chain{r.product, r.anchored_s[0], r.anchored_s[1],
                                          r.anchored_s[2], r.lemma1};
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            worst = std::max(worst, chain[k + 1] - chain[k]);
        h.max_order_violation = std::max(h.max_order_violation, worst);
        h.verify_failures += r.verify_hard_failures;
        if (d20 > tol || d22 > tol || worst > tol || r.verify_hard_failures > 0) ++h.violations;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Discrepancy report

namespace {

struct FormulaColumn {
    const char* formula;
    const char* numeric_quantity;
    double (*numeric)(const SweepRow&);
    double (*printed)(const SweepRow&);
};

constexpr double kAgreementTol = 1e-9;
constexpr double kVanishing = 1e-14;

const std::array<FormulaColumn, 6> kColumns{{
    {"eq20", "product", [](const SweepRow& r) { return r.product; },
     [](const SweepRow& r) { return r.printed.eq20; }},
    {"eq21", "sum", [](const SweepRow& r) { return r.sum; },
     [](const SweepRow& r) { return r.printed.eq21; }},
    {"eq22", "lemma1", [](const SweepRow& r) { return r.lemma1; },
     [](const SweepRow& r) { return r.printed.eq22; }},
    {"eq23", "I2", [](const SweepRow& r) { return r.i_values[1]; },
     [](const SweepRow& r) { return r.printed.eq23; }},
    {"eq24", "S31", [](const SweepRow& r) { return r.anchored_s[1]; },
     [](const SweepRow& r) { return r.printed.eq24; }},
    {"eq25", "I3", [](const SweepRow& r) { return r.i_values[2]; },
     [](const SweepRow& r) { return r.printed.eq25; }},
}};

}  // namespace

DiscrepancyReport discrepancy_report(const std::vector<SweepRow>& rows) {
    DiscrepancyReport report;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& col : kColumns) {
        DiscrepancySummary s;
        s.formula = col.formula;
        s.numeric_quantity = col.numeric_quantity;
        CompensatedSum np, nn;
        for (const auto& r : rows) {
            DiscrepancyRow d;
            d.formula = col.formula;
            d.numeric_quantity = col.numeric_quantity;
            d.params = r.params;
            d.numeric = col.numeric(r);
            d.printed = col.printed(r);
            d.abs_dev = std::abs(d.numeric - d.printed);
            const bool vanishing = std::abs(d.numeric) <= kVanishing;
            d.rel_dev = vanishing ? (d.abs_dev <= kVanishing ? 0.0 : nan) : d.abs_dev / std::abs(d.numeric);
            d.ratio = vanishing ? nan : d.printed / d.numeric;
            np.add(d.numeric * d.printed);
            nn.add(d.numeric * d.numeric);
            s.max_abs_dev = std::max(s.max_abs_dev, d.abs_dev);
            if (!std::isnan(d.rel_dev)) s.max_rel_dev = std::max(s.max_rel_dev, d.rel_dev);
            ++s.points;
            report.rows.push_back(std::move(d));
        }
        s.fitted_ratio = nn.value() > 0.0 ? np.value() / nn.value() : nan;
        if (!std::isnan(s.fitted_ratio)) {
            for (const auto& r : rows)
                s.max_fit_residual = std::max(s.max_fit_residual,
                                              std::abs(col.printed(r) - s.fitted_ratio * col.numeric(r)));
        } else {
            s.max_fit_residual = nan;
        }
        s.agrees = s.max_abs_dev <= kAgreementTol;
        s.multiplicative = !std::isnan(s.fitted_ratio) && s.max_fit_residual <= kAgreementTol;
        report.summaries.push_back(std::move(s));
    }
    return report;
}

DiscrepancyReport discrepancy_report(const std::vector<ExampleParams>& grid) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const auto& x : grid) {
        SweepSpec spec;
        spec.theta = GridAxis::point(x.theta);
        spec.p = GridAxis::point(x.p);
        spec.q = GridAxis::point(x.q);
        spec.t = GridAxis::point(x.t);
        spec.verify_rows = false;
        auto table = sweep(spec);
        rows.push_back(table.rows.front());
    }
    return discrepancy_report(rows);
}

std::string discrepancy_csv(const DiscrepancyReport& report) {
    std::ostringstream out;
    out << "formula,numeric_quantity,theta,p,q,numeric,printed,abs_dev,rel_dev,ratio\n";
    for (const auto& r : report.rows) {
        out << r.formula << ',' << r.numeric_quantity << ',';
        join_row(out, {r.params.theta, r.params.p, r.params.q, r.numeric, r.printed, r.abs_dev,
                       r.rel_dev, r.ratio});
    }
    return out.str();
}

std::string discrepancy_summary_csv(const DiscrepancyReport& report) {
    std::ostringstream out;
    out << "formula,numeric_quantity,points,max_abs_dev,max_rel_dev,fitted_ratio,"
           "max_fit_residual,agrees,multiplicative\n";
    for (const auto& s : report.summaries) {
        out << s.formula << ',' << s.numeric_quantity << ',' << s.points << ','
            << io::format_number(s.max_abs_dev) << ',' << io::format_number(s.max_rel_dev) << ','
            << io::format_number(s.fitted_ratio) << ',' << io::format_number(s.max_fit_residual)
            << ',' << (s.agrees ? "true" : "false") << ',' << (s.multiplicative ? "true" : "false")
            << '\n';
    }
    return out.str();
}

}  // namespace skewinfo::example
