#include "fpbandit/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fpbandit {

namespace {

using nlohmann::json;

// nlohmann reports a byte offset; convert to 1-based line/column.
std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::vector<double> double_vector(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<double> v;
    for (const json& e : j) {
        if (!e.is_number())
            throw std::invalid_argument(std::string(what) +
                                        " must contain numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

DiscreteDistribution distribution_from_json(const json& j) {
    DiscreteDistribution d;
    d.support = double_vector(j.at("support"), "support");
    d.probs = double_vector(j.at("probs"), "probs");
    return d;
}

json finite_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

} // namespace

nlohmann::json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::ostringstream msg;
        msg << "JSON parse error at line " << line << ", column " << col
            << ": " << e.what();
        throw ParseError(msg.str(), line, col);
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

LoadedInstance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("instance must be a JSON object");

    RewardFamily family = RewardFamily::Bernoulli;
    if (j.contains("reward_family")) {
        const std::string f = j.at("reward_family").get<std::string>();
        if (f == "bernoulli")
            family = RewardFamily::Bernoulli;
        else if (f == "discrete")
            family = RewardFamily::DiscreteBounded;
        else
            throw std::invalid_argument("unknown reward_family '" + f + "'");
    }

    const double tie_epsilon = j.value("tie_epsilon", 0.0);
    std::optional<std::size_t> declared_arms;
    if (j.contains("arms")) declared_arms = j.at("arms").get<std::size_t>();

    if (!j.contains("parameters"))
        throw std::invalid_argument("instance is missing \"parameters\"");
    const json& pj = j.at("parameters");
    const std::string type = pj.at("type").get<std::string>();

    std::optional<ParameterSet> params;
    if (type == "explicit") {
        std::vector<Parameter> list;
        for (const json& e : pj.at("list")) {
            Parameter p;
            p.name = e.at("name").get<std::string>();
            if (e.contains("distributions")) {
                for (const json& dj : e.at("distributions"))
                    p.distributions.push_back(distribution_from_json(dj));
            }
            if (e.contains("means"))
                p.means = double_vector(e.at("means"), "means");
            else
                for (const DiscreteDistribution& d : p.distributions)
                    p.means.push_back(d.mean());
            list.push_back(std::move(p));
        }
        if (list.empty())
            throw std::invalid_argument("explicit parameter list is empty");
        const std::size_t arms =
            declared_arms.value_or(list.front().means.size());
        params = make_explicit_set(arms, std::move(list), family, tie_epsilon);
    } else if (type == "permutations") {
        const std::vector<double> base =
            double_vector(pj.at("base"), "permutation base");
        if (declared_arms && *declared_arms != base.size())
            throw std::invalid_argument(
                "\"arms\" disagrees with the permutation base length");
        params = make_permutation_set(base, tie_epsilon);
    } else if (type == "product") {
        const std::vector<double> values =
            double_vector(pj.at("values"), "product values");
        std::size_t arms = 0;
        if (pj.contains("arms"))
            arms = pj.at("arms").get<std::size_t>();
        else if (declared_arms)
            arms = *declared_arms;
        else
            throw std::invalid_argument("product generator needs \"arms\"");
        if (declared_arms && *declared_arms != arms)
            throw std::invalid_argument(
                "top-level \"arms\" disagrees with the generator");
        params = make_product_set(values, arms, tie_epsilon);
    } else {
        throw std::invalid_argument("unknown parameter generator '" + type +
                                    "'");
    }

    LoadedInstance inst{std::move(*params), std::nullopt};
    if (j.contains("true_parameter"))
        inst.true_parameter =
            resolve_parameter(inst.params, j.at("true_parameter"));
    return inst;
}

std::size_t resolve_parameter(const ParameterSet& params,
                              const nlohmann::json& ref) {
    if (ref.is_string()) {
        const std::string name = ref.get<std::string>();
        if (auto idx = params.index_of(name)) return *idx;
        throw std::invalid_argument("no parameter named '" + name + "'");
    }
    if (ref.is_array()) {
        const std::vector<double> means = double_vector(ref, "true_parameter");
        if (auto idx = params.find_by_means(means)) return *idx;
        throw std::invalid_argument(
            "no parameter matches the given mean vector");
    }
    if (ref.is_number_integer()) {
        const long long v = ref.get<long long>();
        if (v >= 0 && static_cast<std::size_t>(v) < params.size())
            return static_cast<std::size_t>(v);
        throw std::invalid_argument("parameter index out of range");
    }
    throw std::invalid_argument(
        "true_parameter must be a name, an index, or a mean vector");
}

nlohmann::json to_json(const StructuralReport& r, const ParameterSet& params) {
    json j;
    j["true_parameter"] = params.parameter(r.true_parameter).name;
    j["true_best_arm"] = r.true_best_arm;
    j["candidate_arms"] = r.candidate_arms;
    json best = json::object();
    for (std::size_t th = 0; th < r.best_arm_per_parameter.size(); ++th)
        best[params.parameter(th).name] = r.best_arm_per_parameter[th];
    j["best_arm_per_parameter"] = std::move(best);
    json b = json::array();
    for (std::size_t th : r.confusion_parameters)
        b.push_back(params.parameter(th).name);
    j["confusion_parameters"] = std::move(b);
    j["confusion_arms"] = r.confusion_arms;
    json gaps = json::object();
    for (std::size_t i = 0; i < r.candidate_arms.size(); ++i)
        gaps[std::to_string(r.candidate_arms[i])] = r.gaps[i];
    j["gaps"] = std::move(gaps);
    json seps = json::object();
    for (std::size_t i = 0; i < r.confusion_arms.size(); ++i)
        seps[std::to_string(r.confusion_arms[i])] = r.separations[i];
    j["separations"] = std::move(seps);
    json alpha = json::object();
    for (std::size_t th = 0; th < r.alpha1.size(); ++th)
        alpha[params.parameter(th).name] = r.alpha1[th];
    j["alpha1"] = std::move(alpha);
    json nu = json::array();
    for (std::size_t th : r.non_unique_best)
        nu.push_back(params.parameter(th).name);
    j["non_unique_best"] = std::move(nu);
    j["regime"] =
        r.regime == Regime::BoundedRegret ? "bounded" : "logarithmic";
    return j;
}

nlohmann::json to_json(const ConstantsReport& c, const ParameterSet& params) {
    json j;
    j["regime"] =
        c.regime == Regime::BoundedRegret ? "bounded" : "logarithmic";
    json pairs = json::array();
    for (const PairConstants& pc : c.pairs) {
        json e;
        e["arm"] = pc.arm;
        e["parameter"] = params.parameter(pc.param).name;
        e["alpha1"] = pc.alpha;
        e["k_threshold"] = pc.k_thresh;
        e["E"] = pc.E;
        pairs.push_back(std::move(e));
    }
    j["pairs"] = std::move(pairs);
    json ci = json::object();
    for (std::size_t i = 0; i < c.c_arms.size(); ++i)
        ci[std::to_string(c.c_arms[i])] = c.c_values[i];
    j["C_i"] = std::move(ci);
    j["D1"] = c.D1;
    j["D2"] = c.D2;
    j["log_coefficient"] = c.log_coefficient;
    return j;
}

nlohmann::json to_json(const LowerBoundResult& lb, const ParameterSet& params,
                       double achievable_log_coefficient) {
    json j;
    j["value"] = finite_or_string(lb.value);
    j["degenerate"] = lb.degenerate;
    j["vacuous"] = lb.vacuous;
    j["resolution"] = lb.resolution;
    j["exploration_arms"] = lb.exploration_arms;
    j["allocation"] = lb.allocation;
    json kl = json::object();
    for (std::size_t ui = 0; ui < lb.exploration_arms.size(); ++ui) {
        json row = json::object();
        for (std::size_t bi = 0; bi < lb.confusion_parameters.size(); ++bi)
            row[params.parameter(lb.confusion_parameters[bi]).name] =
                finite_or_string(lb.kl_table[ui][bi]);
        kl[std::to_string(lb.exploration_arms[ui])] = std::move(row);
    }
    j["kl_table"] = std::move(kl);
    j["achievable_log_coefficient"] = achievable_log_coefficient;
    if (achievable_log_coefficient > 0.0 && std::isfinite(lb.value))
        j["value_over_achievable_log_coefficient"] =
            lb.value / achievable_log_coefficient;
    else
        j["value_over_achievable_log_coefficient"] = nullptr;
    return j;
}

nlohmann::json summary_json(const BatchResult& r) {
    json j;
    j["horizon"] = r.horizon;
    j["runs"] = r.runs;
    j["base_seed"] = r.base_seed;
    json per = json::object();
    for (std::size_t p = 0; p < r.policies.size(); ++p) {
        json e;
        e["final_mean_regret"] = r.final_mean[p];
        e["final_std_regret"] = r.final_std[p];
        e["mean_pull_counts"] = r.mean_pull_counts[p];
        e["mean_episode_count"] = r.mean_episode_count[p];
        e["wall_seconds"] = r.wall_seconds[p];
        if (r.horizon >= 2)
            e["final_scaled_regret"] =
                r.final_mean[p] / std::log(static_cast<double>(r.horizon));
        per[r.policies[p]] = std::move(e);
    }
    j["policies"] = std::move(per);
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

} // namespace fpbandit
