#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beacon/attack_finality.hpp"
#include "beacon/attack_reorg.hpp"
#include "beacon/montecarlo.hpp"
#include "beacon/rewards.hpp"
#include "beacon/trace_json.hpp"
#include "svg_plot.hpp"

using nlohmann::json;
namespace bc = beacon;

namespace {

struct RunConfig {
    double stake = 0.3;
    std::int64_t slots_per_epoch = 32;
    std::int64_t committee_size = 128;
    std::int64_t trials = 100000;
    std::uint64_t seed = bc::kDefaultSeed;
    double usd_per_eth = 500.0;
    std::string tie_break = "min_id";
    std::string format = "csv";
    std::string out;
    std::string plot;
    bool strict_leak = false;
    int jobs = 1;

    bc::SimConfig sim_config() const {
        bc::SimConfig cfg;
        cfg.slots_per_epoch = slots_per_epoch;
        cfg.committee_size = committee_size;
        cfg.stake_fraction = stake;
        cfg.seed = seed;
        cfg.tie_break = bc::tie_break_from_string(tie_break);
        cfg.validate();
        return cfg;
    }

    bc::RewardParams reward_params() const {
        bc::RewardParams params;
        params.total_validators = slots_per_epoch * committee_size;
        params.usd_per_eth = usd_per_eth;
        params.validate();
        return params;
    }

    json to_json() const {
        return json{{"stake_fraction", stake},
                    {"slots_per_epoch", slots_per_epoch},
                    {"committee_size", committee_size},
                    {"trials", trials},
                    {"seed", seed},
                    {"usd_per_eth", usd_per_eth},
                    {"tie_break", tie_break},
                    {"strict_leak", strict_leak},
                    {"jobs", jobs}};
    }
};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string fmt_prob(double v) { return fmt("%.10g", v); }
std::string fmt_usd(double v) { return fmt("%.6f", v); }

void write_output(const RunConfig& rc, const std::string& text) {
    if (rc.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file " + rc.out);
    f << text;
}

constexpr const char* kCurveHeader = "n,probability,std_error,trials,seed,cost_gwei,cost_usd\n";

int cmd_rewards(const RunConfig& rc) {
    const auto params = rc.reward_params();
    const auto rho = bc::base_reward(params);
    const auto iota1 = bc::inclusion_reward(params, 1);
    const auto nu = bc::max_attestation_value(params);
    const auto leak_coeff =
        bc::Gwei(bc::Rational(bc::BigInt(params.max_effective_balance),
                              bc::BigInt(params.inactivity_penalty_quotient)));

    const std::vector<std::pair<std::string, bc::Gwei>> rows = {
        {"base_reward_rho", rho},
        {"inclusion_reward_iota_1", iota1},
        {"max_attestation_value_nu", nu},
        {"inactivity_leak_coefficient", leak_coeff},
    };

    if (rc.format == "json") {
        json j{{"command", "rewards"}, {"config", rc.to_json()}, {"rows", json::array()}};
        for (const auto& [name, amount] : rows)
            j["rows"].push_back(json{{"quantity", name},
                                     {"gwei", amount.to_double()},
                                     {"gwei_rendered", amount.rendered()},
                                     {"usd", bc::to_usd(amount, params)}});
        write_output(rc, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    csv << "quantity,gwei,gwei_rendered,usd\n";
    for (const auto& [name, amount] : rows)
        csv << name << "," << fmt("%.6f", amount.to_double()) << "," << amount.rendered() << ","
            << fmt_usd(bc::to_usd(amount, params)) << "\n";
    write_output(rc, csv.str());
    return 0;
}

int cmd_reorg_prob(const RunConfig& rc, std::int64_t n_min, std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min) throw bc::ConfigError("need 1 <= n-min <= n-max");
    const auto cfg = rc.sim_config();
    const auto params = rc.reward_params();

    std::vector<std::int64_t> lengths;
    for (std::int64_t n = n_min; n <= n_max; ++n) lengths.push_back(n);
    const auto rows = bc::reorg_curve(cfg, params, lengths, rc.trials, rc.seed, rc.jobs);

    if (rc.format == "json") {
        json j{{"command", "reorg-prob"}, {"config", rc.to_json()}, {"rows", json::array()}};
        for (const auto& row : rows) {
            json r{{"n", row.n},
                   {"probability", row.probability.point},
                   {"std_error", row.probability.std_error},
                   {"trials", row.probability.trials},
                   {"seed", row.probability.seed}};
            if (row.cost.has_value()) {
                r["cost_gwei"] = row.cost.mean_cost.to_double();
                r["cost_usd"] = bc::to_usd(row.cost.mean_cost, params);
            } else {
                r["cost_gwei"] = nullptr;
                r["cost_usd"] = nullptr;
            }
            j["rows"].push_back(std::move(r));
        }
        write_output(rc, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << kCurveHeader;
        for (const auto& row : rows) {
            csv << row.n << "," << fmt_prob(row.probability.point) << ","
                << fmt_prob(row.probability.std_error) << "," << row.probability.trials << ","
                << row.probability.seed << ",";
            if (row.cost.has_value())
                csv << row.cost.mean_cost.rendered() << ","
                    << fmt_usd(bc::to_usd(row.cost.mean_cost, params));
            else
                csv << "na,na";
            csv << "\n";
        }
        write_output(rc, csv.str());
    }

    if (!rc.plot.empty()) {
        bc::plot::Series prob{"reorg probability", "#2a6fb0", {}};
        bc::plot::Series cost{"mean cost (Gwei)", "#b05a2a", {}};
        for (const auto& row : rows) {
            prob.points.push_back({double(row.n), row.probability.point});
            if (row.cost.has_value())
                cost.points.push_back({double(row.n), row.cost.mean_cost.to_double()});
        }
        bc::plot::write_svg_plot(rc.plot, "Probability and cost of a length-n reorg",
                                 "reorg length n", "probability", "cost (Gwei; USD = Gwei/1e9 x " +
                                 fmt("%.0f", rc.usd_per_eth) + ")",
                                 {prob}, {cost}, {});
    }
    return 0;
}

int cmd_finality_prob(const RunConfig& rc, std::int64_t n_min, std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min) throw bc::ConfigError("need 1 <= n-min <= n-max");
    const auto params = rc.reward_params();
    const double p_justify = 1.0 - bc::denial_probability(rc.stake);

    struct Row {
        std::int64_t n;
        double probability;
        bc::Gwei cost;
    };
    std::vector<Row> rows;
    for (std::int64_t n = n_min; n <= n_max; ++n)
        rows.push_back({n, bc::delay_probability(n, p_justify),
                        bc::delay_cost(n, params, rc.stake, rc.strict_leak)});

    if (rc.format == "json") {
        json j{{"command", "finality-prob"},
               {"config", rc.to_json()},
               {"p_justify", p_justify},
               {"rows", json::array()}};
        for (const auto& row : rows)
            j["rows"].push_back(json{{"n", row.n},
                                     {"probability", row.probability},
                                     {"std_error", 0.0},
                                     {"trials", 0},
                                     {"seed", rc.seed},
                                     {"cost_gwei", row.cost.to_double()},
                                     {"cost_usd", bc::to_usd(row.cost, params)}});
        write_output(rc, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << kCurveHeader;
        for (const auto& row : rows)
            csv << row.n << "," << fmt_prob(row.probability) << ",0,0," << rc.seed << ","
                << row.cost.rendered() << "," << fmt_usd(bc::to_usd(row.cost, params)) << "\n";
        write_output(rc, csv.str());
    }

    if (!rc.plot.empty()) {
        bc::plot::Series prob{"delay probability", "#2a6fb0", {}};
        bc::plot::Series cost{"cost C(n) (Gwei)", "#b05a2a", {}};
        for (const auto& row : rows) {
            prob.points.push_back({double(row.n), row.probability});
            cost.points.push_back({double(row.n), row.cost.to_double()});
        }
        bc::plot::write_svg_plot(
            rc.plot, "Probability and cost of an n-epoch finality delay", "delay length n",
            "probability",
            "cost (Gwei; USD = Gwei/1e9 x " + fmt("%.0f", rc.usd_per_eth) + ")", {prob}, {cost},
            {{"hourly", 1.0 / 9.375}, {"daily", 1.0 / 225.0}, {"yearly", 1.0 / 82125.0}});
    }
    return 0;
}

void emit_trace(const RunConfig& rc, const bc::Trace& trace, const std::string& summary) {
    write_output(rc, bc::trace_to_json(trace).dump(2) + "\n");
    std::cerr << bc::render_event_log(trace) << summary;
}

int cmd_simulate_reorg(const RunConfig& rc, bool toy, bool honest, std::int64_t n,
                       std::int64_t start, std::int64_t m, std::int64_t epochs) {
    const auto cfg = rc.sim_config();
    const auto params = rc.reward_params();
    const auto schedule =
        toy ? bc::figure_toy_schedule()
            : bc::build_schedule(cfg.total_validators(), cfg.slots_per_epoch, cfg.committee_size,
                                 cfg.stake_fraction, cfg.seed);

    if (honest) {
        bc::Simulation sim(schedule, 0, cfg.tie_break);
        for (bc::Epoch e = 0; e < epochs; ++e) sim.run_honest_epoch(e);
        emit_trace(rc, sim.finish(epochs - 1), "honest baseline run\n");
        return 0;
    }

    bc::ReorgWindow window;
    if (toy && start == 0 && m == 0) {
        window = bc::figure_toy_window();
    } else if (start > 0 && m > 0) {
        window = bc::ReorgWindow{start, m, n};
    } else {
        const auto found = bc::epoch_reorg_feasible(schedule, n, 1);
        if (!found)
            throw bc::PreconditionError("feasible window exists",
                                        "no feasible length-" + std::to_string(n) +
                                            " window in this epoch's schedule; try another seed");
        window = *found;
    }

    const auto result = bc::execute_reorg(schedule, window, cfg.tie_break);
    const auto cost = bc::reorg_cost(schedule, window, params);

    std::ostringstream summary;
    summary << "window: start " << window.start_slot << ", m " << window.m << ", n " << window.n
            << "\nfork blocks:";
    for (auto b : result.fork_blocks) summary << " " << b;
    summary << "\norphaned:";
    for (auto b : result.orphaned) summary << " " << b;
    summary << "\nweights at the fork: " << result.fork_weight << " vs " << result.orphan_weight
            << "\ncost: " << cost.rendered() << " Gwei (" << fmt_usd(bc::to_usd(cost, params))
            << " USD)\n";
    emit_trace(rc, result.trace, summary.str());
    return 0;
}

int cmd_simulate_finality(const RunConfig& rc, bool honest, std::int64_t target_epoch,
                          std::int64_t continue_epochs) {
    const auto cfg = rc.sim_config();
    const auto schedule =
        bc::build_schedule(cfg.total_validators(), cfg.slots_per_epoch, cfg.committee_size,
                           cfg.stake_fraction, cfg.seed);

    if (honest) {
        bc::Simulation sim(schedule, target_epoch, cfg.tie_break);
        for (bc::Epoch e = 0; e <= target_epoch + continue_epochs; ++e) sim.run_honest_epoch(e);
        emit_trace(rc, sim.finish(target_epoch + continue_epochs), "honest counterfactual run\n");
        return 0;
    }

    auto result = bc::execute_finality_delay(schedule, target_epoch, continue_epochs,
                                             cfg.tie_break);
    std::ostringstream summary;
    summary << "waste threshold: withheld " << result.threshold.withheld << ", base "
            << result.threshold.honest_incorrect_base << ", with own "
            << result.threshold.honest_incorrect_with_own << ", slots "
            << result.threshold.slots_needed << "\nrelease at end of slot " << result.release_slot
            << "\nwasted honest attestations: " << result.wasted << "\nlink votes: (borrowed "
            << result.borrowed_target << ") " << result.borrowed_link_votes << ", (own "
            << result.own_ebb << ") " << result.own_link_votes << ", threshold "
            << bc::supermajority_threshold(schedule.total_validators) << "\ntarget epoch "
            << target_epoch << (result.target_epoch_justified ? " JUSTIFIED" : " not justified")
            << "\n";
    emit_trace(rc, result.trace, summary.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beacon-chain consensus simulator: fork choice, finality, attack strategies"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig rc;
    app.add_option("--stake", rc.stake, "Attacker stake fraction")->check(CLI::Range(0.0, 1.0));
    app.add_option("--slots-per-epoch", rc.slots_per_epoch, "Slots per epoch")
        ->check(CLI::PositiveNumber);
    app.add_option("--committee-size", rc.committee_size, "Validators per committee")
        ->check(CLI::PositiveNumber);
    app.add_option("--trials", rc.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--seed", rc.seed, "Master RNG seed");
    app.add_option("--usd-per-eth", rc.usd_per_eth, "ETH price used for USD columns")
        ->check(CLI::PositiveNumber);
    app.add_option("--tie-break", rc.tie_break, "Fork-choice tie break: min_id or max_id")
        ->check(CLI::IsMember({"min_id", "max_id"}));
    app.add_option("--format", rc.format, "Table output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", rc.out, "Write primary output to this file instead of stdout");
    app.add_option("--plot", rc.plot, "Also write an SVG plot to this path");
    app.add_flag("--strict-leak", rc.strict_leak,
                 "Scale the inactivity-leak term per attacker validator");
    app.add_option("--jobs", rc.jobs, "Worker threads for Monte Carlo trials")
        ->check(CLI::PositiveNumber);

    auto* rewards = app.add_subcommand("rewards", "Print the reward/penalty constants");

    std::int64_t reorg_n_min = 1, reorg_n_max = 8;
    auto* reorg_prob =
        app.add_subcommand("reorg-prob", "Monte Carlo reorg probability and cost curve");
    reorg_prob->add_option("--n-min", reorg_n_min, "Smallest reorg length");
    reorg_prob->add_option("--n-max", reorg_n_max, "Largest reorg length");

    std::int64_t delay_n_min = 1, delay_n_max = 10;
    auto* finality_prob =
        app.add_subcommand("finality-prob", "Exact finality-delay probability and cost curve");
    finality_prob->add_option("--n-min", delay_n_min, "Smallest delay length (epochs)");
    finality_prob->add_option("--n-max", delay_n_max, "Largest delay length (epochs)");

    bool toy = false, reorg_honest = false;
    std::int64_t sim_n = 1, sim_start = 0, sim_m = 0, honest_epochs = 3;
    auto* simulate_reorg =
        app.add_subcommand("simulate-reorg", "Run the private-fork reorg strategy end to end");
    simulate_reorg->add_flag("--toy", toy, "Figure-scale 16-validator walkthrough");
    simulate_reorg->add_flag("--honest", reorg_honest, "Honest baseline run instead of the attack");
    simulate_reorg->add_option("--n", sim_n, "Reorg length")->check(CLI::PositiveNumber);
    simulate_reorg->add_option("--start", sim_start, "Window start slot (0 = first feasible)");
    simulate_reorg->add_option("--m", sim_m, "Private fork length (0 = first feasible)");
    simulate_reorg->add_option("--epochs", honest_epochs, "Epochs for the honest baseline")
        ->check(CLI::PositiveNumber);

    bool finality_honest = false;
    std::int64_t target_epoch = 1, continue_epochs = 2;
    auto* simulate_finality = app.add_subcommand(
        "simulate-finality", "Run the EBB-withholding finality-delay strategy end to end");
    simulate_finality->add_flag("--honest", finality_honest,
                                "Honest counterfactual on the same schedule");
    simulate_finality->add_option("--target-epoch", target_epoch, "Epoch whose justification is denied")
        ->check(CLI::PositiveNumber);
    simulate_finality->add_option("--continue-epochs", continue_epochs,
                                  "Honest epochs appended after the attack");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rewards->parsed()) return cmd_rewards(rc);
        if (reorg_prob->parsed()) return cmd_reorg_prob(rc, reorg_n_min, reorg_n_max);
        if (finality_prob->parsed()) return cmd_finality_prob(rc, delay_n_min, delay_n_max);
        if (simulate_reorg->parsed())
            return cmd_simulate_reorg(rc, toy, reorg_honest, sim_n, sim_start, sim_m,
                                      honest_epochs);
        if (simulate_finality->parsed())
            return cmd_simulate_finality(rc, finality_honest, target_epoch, continue_epochs);
    } catch (const bc::PreconditionError& e) {
        std::cerr << "error: precondition failed: " << e.precondition << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
