#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpbandit/analysis.hpp"
#include "fpbandit/io.hpp"
#include "fpbandit/kernels.hpp"
#include "fpbandit/lowerbound.hpp"
#include "fpbandit/model.hpp"
#include "fpbandit/policies.hpp"
#include "fpbandit/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalidInstance = 3;
constexpr int kExitUnknownPolicy = 4;
constexpr int kExitDegenerateLowerBound = 5;

struct Options {
    std::string config_path;
    std::string instance_path;
    std::optional<std::string> true_ref;
    std::vector<std::string> policies;
    std::optional<std::uint64_t> horizon;
    std::optional<std::uint64_t> runs;
    std::optional<std::uint64_t> seed;
    std::optional<double> resolution;
    std::string out;
    bool quiet = false;
};

// Merges --config file values underneath any explicit flags.
void apply_config(Options& opt) {
    if (opt.config_path.empty()) return;
    const nlohmann::json cfg = fpbandit::load_json_file(opt.config_path);
    const auto dir = std::filesystem::path(opt.config_path).parent_path();
    if (opt.instance_path.empty() && cfg.contains("instance")) {
        std::filesystem::path p = cfg.at("instance").get<std::string>();
        if (p.is_relative()) p = dir / p;
        opt.instance_path = p.string();
    }
    if (!opt.true_ref && cfg.contains("true_parameter")) {
        const nlohmann::json& tp = cfg.at("true_parameter");
        opt.true_ref = tp.is_string() ? tp.get<std::string>() : tp.dump();
    }
    if (opt.policies.empty() && cfg.contains("policies"))
        opt.policies = cfg.at("policies").get<std::vector<std::string>>();
    if (!opt.horizon && cfg.contains("horizon"))
        opt.horizon = cfg.at("horizon").get<std::uint64_t>();
    if (!opt.runs && cfg.contains("runs"))
        opt.runs = cfg.at("runs").get<std::uint64_t>();
    if (!opt.seed && cfg.contains("seed"))
        opt.seed = cfg.at("seed").get<std::uint64_t>();
    if (!opt.resolution && cfg.contains("resolution"))
        opt.resolution = cfg.at("resolution").get<double>();
    if (opt.out.empty() && cfg.contains("out"))
        opt.out = cfg.at("out").get<std::string>();
}

// --true accepts a parameter name, an index, or a JSON mean vector.
nlohmann::json true_ref_json(const std::string& text) {
    if (!text.empty() && (text.front() == '[' || text.front() == '{'))
        return fpbandit::parse_json(text);
    char* end = nullptr;
    const unsigned long long idx = std::strtoull(text.c_str(), &end, 10);
    if (end && *end == '\0' && !text.empty())
        return nlohmann::json(static_cast<std::uint64_t>(idx));
    return nlohmann::json(text);
}

fpbandit::Environment load_environment(const Options& opt) {
    if (opt.instance_path.empty())
        throw std::invalid_argument("no instance file given");
    const nlohmann::json j = fpbandit::load_json_file(opt.instance_path);
    fpbandit::LoadedInstance inst = fpbandit::instance_from_json(j);
    std::optional<std::size_t> true_idx = inst.true_parameter;
    if (opt.true_ref)
        true_idx = fpbandit::resolve_parameter(inst.params,
                                               true_ref_json(*opt.true_ref));
    if (!true_idx)
        throw std::invalid_argument(
            "no true parameter: set \"true_parameter\" in the instance or "
            "pass --true");
    return fpbandit::Environment(std::move(inst.params), *true_idx,
                                 opt.seed.value_or(0));
}

std::string format_set(const std::vector<std::size_t>& v) {
    std::ostringstream ss;
    ss << '{';
    for (std::size_t i = 0; i < v.size(); ++i)
        ss << (i ? ", " : "") << v[i];
    ss << '}';
    return ss.str();
}

void print_analysis(const fpbandit::Environment& env,
                    const fpbandit::StructuralReport& rep,
                    const fpbandit::ConstantsReport& cons) {
    const fpbandit::ParameterSet& params = env.params();
    std::cout << "arms: " << params.arm_count() << "   |Theta|: "
              << params.size() << "\n";
    std::cout << "true parameter: "
              << params.parameter(rep.true_parameter).name
              << "   a*(true): " << rep.true_best_arm << "\n";
    std::cout << "regime: "
              << (rep.regime == fpbandit::Regime::BoundedRegret
                      ? "bounded"
                      : "logarithmic")
              << "\n";
    std::cout << "candidate arms A: " << format_set(rep.candidate_arms)
              << "\n";
    std::cout << "confusion parameters B ("
              << rep.confusion_parameters.size() << "): {";
    for (std::size_t i = 0; i < rep.confusion_parameters.size(); ++i) {
        if (i == 8) {
            std::cout << ", ...";
            break;
        }
        std::cout << (i ? ", " : "")
                  << params.parameter(rep.confusion_parameters[i]).name;
    }
    std::cout << "}\n";
    std::cout << "confusion arms C: " << format_set(rep.confusion_arms)
              << "\n";
    std::cout << "arm   gap       separation\n";
    for (std::size_t i = 0; i < rep.candidate_arms.size(); ++i) {
        const std::size_t arm = rep.candidate_arms[i];
        std::cout << arm << "     " << rep.gaps[i] << "       ";
        bool printed = false;
        for (std::size_t c = 0; c < rep.confusion_arms.size(); ++c)
            if (rep.confusion_arms[c] == arm) {
                std::cout << rep.separations[c];
                printed = true;
            }
        if (!printed) std::cout << "-";
        std::cout << "\n";
    }
    if (!rep.non_unique_best.empty())
        std::cout << "note: " << rep.non_unique_best.size()
                  << " parameter(s) have a non-unique best arm (ties broken "
                     "by minimum index)\n";
    std::cout << "D1: " << cons.D1 << "   D2: " << cons.D2
              << "   log coefficient: " << cons.log_coefficient << "\n";
}

int cmd_analyze(const Options& opt, bool constants_only) {
    const fpbandit::Environment env = load_environment(opt);
    const fpbandit::StructuralReport rep =
        fpbandit::analyze(env.params(), env.true_parameter());
    const fpbandit::ConstantsReport cons =
        fpbandit::constants(rep, env.params());

    nlohmann::json j;
    j["structural"] = fpbandit::to_json(rep, env.params());
    j["constants"] = fpbandit::to_json(cons, env.params());
    if (opt.horizon) {
        j["regret_upper_bound"] = fpbandit::regret_upper_bound(
            cons, static_cast<double>(*opt.horizon));
        j["horizon"] = *opt.horizon;
    }

    if (!opt.quiet) {
        print_analysis(env, rep, cons);
        if (constants_only && opt.horizon)
            std::cout << "regret upper bound at T=" << *opt.horizon << ": "
                      << j["regret_upper_bound"].get<double>() << "\n";
    }
    if (!opt.out.empty())
        fpbandit::write_text_file(opt.out, j.dump(2) + "\n");
    else if (opt.quiet)
        std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    std::vector<std::string> policies = opt.policies;
    if (policies.empty()) policies = {"fp-ucb"};
    for (const std::string& p : policies)
        if (fpbandit::policy_id(p) < 0) {
            std::cerr << "unknown policy '" << p << "'; valid policies:";
            for (std::string_view n : fpbandit::kPolicyNames)
                std::cerr << " " << n;
            std::cerr << "\n";
            return kExitUnknownPolicy;
        }

    const fpbandit::Environment env = load_environment(opt);
    const std::uint64_t T = opt.horizon.value_or(100000);
    const std::uint64_t R = opt.runs.value_or(10);
    const std::uint64_t seed = opt.seed.value_or(env.rng_seed());

    const fpbandit::BatchResult result =
        fpbandit::run_batch(env, policies, T, R, seed);

    const std::string prefix = opt.out.empty() ? "fpbandit_sim" : opt.out;
    std::ostringstream csv;
    fpbandit::write_csv(csv, result);
    fpbandit::write_text_file(prefix + ".csv", csv.str());
    fpbandit::write_text_file(prefix + ".summary.json",
                              fpbandit::summary_json(result).dump(2) + "\n");

    if (!opt.quiet) {
        std::cout << "T=" << T << " runs=" << R << " seed=" << seed
                  << " kernel=" << fpbandit::kernels::active_kernel_name()
                  << "\n";
        for (std::size_t p = 0; p < result.policies.size(); ++p)
            std::cout << result.policies[p]
                      << ": final regret " << result.final_mean[p] << " +- "
                      << result.final_std[p] << "\n";
        std::cout << "wrote " << prefix << ".csv and " << prefix
                  << ".summary.json\n";
    }
    return kExitOk;
}

int cmd_lowerbound(const Options& opt) {
    const fpbandit::Environment env = load_environment(opt);
    const fpbandit::StructuralReport rep =
        fpbandit::analyze(env.params(), env.true_parameter());
    const fpbandit::ConstantsReport cons =
        fpbandit::constants(rep, env.params());
    const fpbandit::LowerBoundResult lb = fpbandit::lower_bound(
        env.params(), rep, opt.resolution.value_or(1e-4));

    const nlohmann::json j =
        fpbandit::to_json(lb, env.params(), cons.log_coefficient);
    if (!opt.quiet) {
        std::cout << "lower-bound value: " << lb.value << "\n";
        if (lb.vacuous)
            std::cout << "warning: no suboptimal candidate arms; the bound "
                         "is vacuous\n";
        if (!lb.allocation.empty()) {
            std::cout << "allocation:";
            for (std::size_t i = 0; i < lb.allocation.size(); ++i)
                std::cout << " h[" << lb.exploration_arms[i]
                          << "]=" << lb.allocation[i];
            std::cout << "\n";
        }
        std::cout << "achievable log coefficient: " << cons.log_coefficient
                  << "\n";
    }
    if (!opt.out.empty())
        fpbandit::write_text_file(opt.out, j.dump(2) + "\n");
    else if (opt.quiet)
        std::cout << j.dump(2) << "\n";

    if (lb.degenerate) {
        std::cerr << "degenerate instance: some confusion parameter is "
                     "indistinguishable on every exploration arm\n";
        return kExitDegenerateLowerBound;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FP-UCB toolkit for finitely parameterized bandits"};
    app.require_subcommand(1);

    Options opt;
    std::string algos;
    app.add_option("--config", opt.config_path,
                   "JSON experiment config; flags override its values");
    app.add_option("--seed", opt.seed, "base seed (64-bit)");
    app.add_option("--out", opt.out, "output path (prefix for simulate)");
    app.add_flag("--quiet", opt.quiet, "suppress human-readable output");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", opt.instance_path, "instance JSON file");
        sub->add_option("--true", opt.true_ref,
                        "true parameter: name, index, or mean vector");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "structural sets, gaps and regret-bound constants");
    add_common(analyze);
    analyze->add_option("-T,--horizon", opt.horizon,
                        "report the regret upper bound at this horizon");

    CLI::App* constants = app.add_subcommand(
        "constants", "regret-bound constants and the regret upper bound");
    add_common(constants);
    constants->add_option("-T,--horizon", opt.horizon,
                          "horizon for the regret upper bound")
        ->default_val(std::uint64_t{100000});

    CLI::App* simulate =
        app.add_subcommand("simulate", "seeded Monte-Carlo regret curves");
    add_common(simulate);
    simulate->add_option("--algos", algos,
                         "comma-separated policies (fp-ucb,ucb1,thompson)");
    simulate->add_option("-T,--horizon", opt.horizon, "time horizon");
    simulate->add_option("-R,--runs", opt.runs, "number of runs");

    CLI::App* lowerbound = app.add_subcommand(
        "lowerbound", "asymptotic lower-bound constant and allocation");
    add_common(lowerbound);
    lowerbound->add_option("--resolution", opt.resolution,
                           "bisection tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!algos.empty()) {
            std::stringstream ss(algos);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) opt.policies.push_back(item);
        }
        apply_config(opt);

        if (app.got_subcommand(analyze)) return cmd_analyze(opt, false);
        if (app.got_subcommand(constants)) return cmd_analyze(opt, true);
        if (app.got_subcommand(simulate)) return cmd_simulate(opt);
        if (app.got_subcommand(lowerbound)) return cmd_lowerbound(opt);
        return kExitOk;
    } catch (const fpbandit::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kExitInvalidInstance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
