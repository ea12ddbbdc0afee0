#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skewinfo/bound_chains.hpp"
#include "skewinfo/quantum_objects.hpp"

// The two-qubit example family: the state ρ(θ), the channel pair with
// parameters (p, q), the printed closed forms, and the grid sweeps that
// regenerate the figure data.
namespace skewinfo::example {

struct ExampleParams {
    double theta = 1.0;
    double p = 0.5;
    double q = 0.5;
    double t = 1.0;
};

/// ¼ [[1, 2θ−1], [2θ−1, 1]] ⊕ the same block. OutOfRange unless θ ∈ [0, 1].
DensityMatrix rho_theta(double theta);

/// N₁ = {E₁, E₂}, N₂ = {F₁, F₂}; both satisfy Σ K K† = I for p, q ∈ [0, 1].
std::pair<KrausChannel, KrausChannel> example_channels(double p, double q);

/// Literal evaluation of the six printed closed-form expressions.
struct ClosedForms {
    double eq20 = 0.0;  // product
    double eq21 = 0.0;  // sum
    double eq22 = 0.0;  // lemma1
    double eq23 = 0.0;  // S21 = I2
    double eq24 = 0.0;  // S31
    double eq25 = 0.0;  // S32 = I3
};

ClosedForms closed_forms(const ExampleParams& params);

/// Inclusive grid "start:stop:count"; count = 1 means the single point start.
struct GridAxis {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    static GridAxis point(double x) { return {x, x, 1}; }
    static GridAxis parse(const std::string& spec);  // ParseError / OutOfRange
    std::vector<double> values() const;
    void validate_unit_interval(const char* name) const;  // OutOfRange
};

struct SweepSpec {
    GridAxis theta = GridAxis::point(1.0);
    GridAxis p{0.0, 1.0, 51};
    GridAxis q{0.0, 1.0, 51};
    GridAxis t = GridAxis::point(1.0);
    SReading reading = SReading::Lagrange;
    LatticeIndex perm_target{2, 1};
    PermutationStrategy strategy = PermutationStrategy::Exhaustive;
    std::size_t budget = kDefaultPermutationBudget;
    RandomSeed seed{0};
    bool verify_rows = true;
};

/// The four figure grids: (p, q) surfaces at θ = 1 for figures 1, 2 and 4
/// and a θ curve at p = q = ½ for figure 3.
SweepSpec figure_spec(int figure);

struct SweepRow {
    ExampleParams params;
    double product = 0.0;
    double sum = 0.0;
    std::array<double, 4> i_values{};
    double s21 = 0.0, s31 = 0.0, s32 = 0.0;  // selected reading
    double lemma1 = 0.0;
    double perm_opt = 0.0;
    double mixed_product = 0.0;
    double mixed_sum = 0.0;
    ClosedForms printed;
    std::array<double, 3> anchored_s{};  // S21, S31, S32 under the Lagrange reading
    std::size_t verify_hard_failures = 0;
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // lexicographic in (θ, p, q, t)
};

SweepTable sweep(const SweepSpec& spec);

/// Fixed column list of the CSV form.
const std::vector<std::string>& sweep_header();
std::string sweep_csv(const SweepTable& table);

struct HardInvariants {
    std::size_t rows = 0;
    std::size_t violations = 0;
    double max_dev_eq20 = 0.0;
    double max_dev_eq22 = 0.0;
    double max_order_violation = 0.0;  // largest positive (next − previous) in the chain
    std::size_t verify_failures = 0;
    bool ok() const { return violations == 0; }
};

/// |product − eq20| ≤ tol, |lemma1 − eq22| ≤ tol, and
/// product ≥ S21 ≥ S31 ≥ S32 ≥ lemma1 (Lagrange values) within tol per row.
HardInvariants check_hard_invariants(const SweepTable& table, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Printed-vs-numeric comparison

struct DiscrepancyRow {
    std::string formula;  // "eq20" .. "eq25"
    std::string numeric_quantity;
    ExampleParams params;
    double numeric = 0.0;
    double printed = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double ratio = 0.0;  // printed / numeric; NaN where numeric vanishes
};

struct DiscrepancySummary {
    std::string formula;
    std::string numeric_quantity;
    std::size_t points = 0;
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;
    double fitted_ratio = 0.0;  // least-squares c in printed ≈ c·numeric
    double max_fit_residual = 0.0;
    bool agrees = false;          // max_abs_dev ≤ 1e-9
    bool multiplicative = false;  // residual of the constant-ratio fit ≤ 1e-9
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRow> rows;
    std::vector<DiscrepancySummary> summaries;
};

DiscrepancyReport discrepancy_report(const std::vector<SweepRow>& rows);
DiscrepancyReport discrepancy_report(const std::vector<ExampleParams>& grid);

std::string discrepancy_csv(const DiscrepancyReport& report);
std::string discrepancy_summary_csv(const DiscrepancyReport& report);

}  // namespace skewinfo::example
