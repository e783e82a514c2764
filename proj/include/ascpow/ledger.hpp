#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ascpow/exponent_set.hpp"
#include "ascpow/lambda_table.hpp"
#include "ascpow/partition.hpp"
#include "ascpow/rational.hpp"

namespace ascpow {

enum class Stage {
    MinorArcs,
    ReplaceF2,
    ReplaceF4,
    PruneKappa,
    ReplaceF6,
    PruneLogA,
    PruneLogQuarter,
};

const std::vector<Stage>& all_stages();
std::string stage_name(Stage s);
std::optional<Stage> stage_from_name(const std::string& name);

// Circle-method parameters. theta defaults to kappa/7 unless overridden.
struct MethodParams {
    double tau = 0.3935;
    double kappa = 0.25;
    std::optional<double> theta_override;
    double gamma = 0.05; // smoothness exponent, free; does not enter stage margins
    int s = 133;
    double log_prune_exponent = 1.0; // A in Y = log^A n
    std::map<Stage, double> delta;
    double epsilon_slack = 0.0;

    double theta() const { return theta_override ? *theta_override : kappa / 7.0; }
    double delta_for(Stage st) const;
    void validate() const;
};

// Paper-replication defaults: tau = 0.3935, kappa = 1/4, s = 133 and the
// stage deltas 0.0007 / 0.0007 / 0.0007 / 0.001 / 0.01 / 0.00001.
MethodParams paper_params();

// phi exponents feeding one stage.
struct StageInputs {
    std::optional<double> phi1;
    std::optional<double> phi2;
    std::optional<double> phi3;
    std::optional<double> phi_mix;
};

using StagePhiMap = std::map<Stage, StageInputs>;

// The stated phi values for each stage's blocks (the published run).
StagePhiMap paper_stage_phis();

// The published run's block choices per stage (2s = 266). Feed these to
// resolve_stage_phis with a full lambda table to recompute the phis instead
// of injecting the stated values.
std::map<Stage, PartitionShape> paper_partitions();

struct StageCondition {
    std::string name;
    double achieved = 0.0;
    double required = 0.0;
    double margin = 0.0; // required - achieved - epsilon_slack
    bool pass = false;
};

struct StageReport {
    Stage stage = Stage::MinorArcs;
    std::string name;
    std::map<std::string, double> inputs;
    double achieved = 0.0; // principal condition
    double required = 0.0;
    double margin = 0.0; // min over conditions
    bool pass = false;
    std::vector<StageCondition> conditions;
    std::string note; // set when a failing threshold stage would pass at smaller delta
};

struct OmegaEta {
    double omega = 0.0;   // sum 1/k - epsilon
    double eta = 0.0;     // 3 + sum_{k >= 8} 1/k
    double rho_exp = 0.0; // (omega - 2) / 4
    BigRational omega_exact; // epsilon = 0
    BigRational eta_exact;
};

// K must be {2, 4, ..., 2s}. Exact rational sums, epsilon applied afterwards.
OmegaEta omega_eta(const ExponentSet& K, double epsilon);

// Margin for one stage. Missing phi blocks raise PreconditionError naming them.
StageReport stage_margin(Stage stage, const MethodParams& params, const StageInputs& inputs);

// Every stage in order. Stages that cannot be evaluated are collected and the
// aggregate raised after all evaluable stages ran; evaluation continues past
// failing (margin < 0) stages.
std::vector<StageReport> full_ledger(const MethodParams& params, const StagePhiMap& phis);

// Computes the per-stage phi inputs from partition shapes and a lambda table
// (the route used with user-supplied full tables). For PruneLogA the phi_mix
// exponent is obtained from the weighted 6th/8th-power split of blocks 2 and 3.
StagePhiMap resolve_stage_phis(const std::map<Stage, PartitionShape>& partitions,
                               const LambdaTable& table, WeightMode mode);

bool overall_pass(const std::vector<StageReport>& reports);

} // namespace ascpow
