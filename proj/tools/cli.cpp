#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>

#include "gwi/closed_form.hpp"
#include "gwi/decision.hpp"
#include "gwi/diffusion.hpp"
#include "gwi/entropy.hpp"
#include "gwi/oracle.hpp"
#include "gwi/recursion.hpp"

namespace gwi::cli {

using json = nlohmann::ordered_json;

namespace {

struct Preset {
    ParamSet p;
    int omega0;
};

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> m{
        {"ni-small", {{0.5, 0.25, 0, 0}, 1}},
        {"sp1-example", {{4, 2, 4, 2}, 1}},
        {"a2-example", {{1.8, 0.9, 2.8, 0.7}, 1}},
        {"a3-example", {{1.8, 0.9, 2.9, 0.7}, 1}},
        {"a4-example", {{1.8, 0.9, 1.1, 3.0}, 1}},
        {"a5-example", {{1.8, 0.9, 1.2, 3.0}, 1}},
        {"a5-degenerate", {{1.0 / 3, 2.0 / 3, 2, 1}, 3}},
        {"a7-sp2", {{0.8, 0.6, 2, 2}, 1}},
        {"a7-sp3a", {{0.8, 0.6, 2, 1.9}, 1}},
        {"a7-sp3b", {{0.8, 0.6, 2, 1.1}, 1}},
        {"a7-sp3c", {{1, 1.5, 2, 1.8}, 1}},
    };
    return m;
}

struct Options {
    std::string preset;
    double beta_A = NAN, beta_H = NAN, alpha_A = NAN, alpha_H = NAN;
    double lambda = 0.5;
    int omega0 = 1;
    int n = 1;
    std::string pair;

    double eta = 0, kappa_A = NAN, kappa_H = NAN, sigma = 1, x0_tilde = 1, t = 1;
    long long m = 0, x0_count = 0;

    double loss_A = 1, loss_H = 1, prior_H = 0.5, level = 0.05;
    bool lambda_grid = false;

    std::string format = "json";
    unsigned long long seed = 1;
    double tail_budget = 1e-9;
    long long reps = 100000;

    std::string quantity = "hellinger", axis;
    double from = NAN, to = NAN;
    int steps = 0;
    std::string values;
};

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json lin(double log_v) { return (std::isfinite(log_v) && log_v >= -700) ? json(std::exp(log_v)) : json(nullptr); }
json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }
json opt_lin(const std::optional<double>& v) { return v ? lin(*v) : json(nullptr); }
json opt_bool(const std::optional<bool>& v) { return v ? json(*v) : json("unknown"); }

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// --- option registration ---

void add_params(CLI::App* s, Options& o, bool order = true) {
    s->add_option("--preset", o.preset, "named parameter tuple")
        ->check(CLI::IsMember([] {
            std::vector<std::string> k;
            for (const auto& [name, _] : presets()) k.push_back(name);
            return k;
        }()));
    s->add_option("--beta-a", o.beta_A);
    s->add_option("--beta-h", o.beta_H);
    s->add_option("--alpha-a", o.alpha_A);
    s->add_option("--alpha-h", o.alpha_H);
    if (order) s->add_option("--lambda", o.lambda);
}

void add_horizon(CLI::App* s, Options& o) {
    s->add_option("--omega0", o.omega0);
    s->add_option("--n", o.n);
}

void add_sde(CLI::App* s, Options& o) {
    s->add_option("--eta", o.eta);
    s->add_option("--kappa-a", o.kappa_A)->required();
    s->add_option("--kappa-h", o.kappa_H)->required();
    s->add_option("--sigma", o.sigma);
    s->add_option("--x0-tilde", o.x0_tilde);
    s->add_option("--t", o.t);
    s->add_option("--m", o.m);
    s->add_option("--x0-count", o.x0_count);
}

void add_decision(CLI::App* s, Options& o) {
    s->add_option("--loss-a", o.loss_A);
    s->add_option("--loss-h", o.loss_H);
    s->add_option("--prior-h", o.prior_H);
    s->add_option("--level", o.level);
}

void add_common(CLI::App* s, Options& o) {
    s->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
}

ParamSet resolve_params(const CLI::App* s, Options& o) {
    ParamSet p{o.beta_A, o.beta_H, o.alpha_A, o.alpha_H};
    if (!o.preset.empty()) {
        const auto& pr = presets().at(o.preset);
        if (!s->count("--beta-a")) p.beta_A = pr.p.beta_A;
        if (!s->count("--beta-h")) p.beta_H = pr.p.beta_H;
        if (!s->count("--alpha-a")) p.alpha_A = pr.p.alpha_A;
        if (!s->count("--alpha-h")) p.alpha_H = pr.p.alpha_H;
        if (s->get_option_no_throw("--omega0") && !s->count("--omega0")) o.omega0 = pr.omega0;
    }
    if (std::isnan(p.beta_A) || std::isnan(p.beta_H) || std::isnan(p.alpha_A) || std::isnan(p.alpha_H))
        throw Error(ErrorCode::ParseError, "all of --beta-a --beta-h --alpha-a --alpha-h (or --preset) are required");
    validate(p);
    return p;
}

SDEParams resolve_sde(const Options& o) { return {o.eta, o.kappa_A, o.kappa_H, o.sigma, o.x0_tilde}; }

DecisionConfig resolve_cfg(const Options& o) {
    DecisionConfig c{o.loss_A, o.loss_H, o.prior_H, o.level};
    validate(c);
    return c;
}

json params_json(const ParamSet& p) {
    return {{"beta_A", p.beta_A}, {"beta_H", p.beta_H}, {"alpha_A", p.alpha_A}, {"alpha_H", p.alpha_H}};
}

json sde_json(const SDEParams& s) {
    return {{"eta", s.eta}, {"kappa_A", s.kappa_A}, {"kappa_H", s.kappa_H}, {"sigma", s.sigma}, {"x0_tilde", s.x0_tilde}};
}

json request_json(const CLI::App* s) {
    json args = json::object();
    for (const CLI::Option* opt : s->get_options()) {
        if (opt->count() == 0 || opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (opt->get_items_expected_max() == 0) {
            args[name] = true;
        } else {
            args[name] = opt->results().front();
        }
    }
    return {{"command", s->get_name()}, {"args", args}};
}

// --- single computations, shared between the commands and the sweep ---

json hellinger_values(const ParamSet& p, double lambda, int omega0, int n) {
    auto rep = hellinger_report(p, lambda, omega0, n);
    json j;
    j["case"] = to_string(rep.tag);
    j["method"] = rep.method;
    j["log_lower"] = num(rep.log_lower);
    j["log_upper"] = num(rep.log_upper);
    j["log_exact"] = opt_num(rep.log_exact);
    j["lower"] = lin(rep.log_lower);
    j["upper"] = lin(rep.log_upper);
    j["exact"] = opt_lin(rep.log_exact);
    json cf = {{"log_lower", nullptr}, {"log_upper", nullptr}};
    if (n > 0) {
        try {
            cf["log_lower"] = num(closed_form_log_lower(p, lambda, omega0, n));
        } catch (const Error&) {
        }
        try {
            cf["log_upper"] = num(closed_form_log_upper(p, lambda, omega0, n));
        } catch (const Error&) {
        }
    }
    j["closed_form"] = cf;
    j["notes"] = rep.notes;
    return j;
}

json entropy_values(const ParamSet& p, int omega0, int n) {
    auto r = entropy_report(p, omega0, n);
    json j;
    j["case"] = to_string(r.tag);
    j["exact"] = opt_num(r.exact);
    j["lower"] = opt_num(r.lower);
    j["upper"] = opt_num(r.upper);
    j["simplified_lower"] = opt_num(r.simplified_lower);
    json c;
    c["tangent_at_ystar"] = opt_num(r.components.tan_at_ystar);
    c["best_tangent"] = num(r.components.best_tan);
    c["best_secant"] = num(r.components.best_sec);
    c["horizontal"] = num(r.components.horizontal);
    c["tangent_infinity"] = num(r.components.tan_infinity);
    c["secant_zero"] = num(r.components.sec_zero);
    j["components"] = c;
    j["y_best"] = num(r.y_best);
    j["k_best"] = r.k_best;
    j["z_star"] = r.z_star;
    j["ystar_derivative"] = opt_num(r.ystar_derivative);
    j["degenerate"] = r.degenerate;
    j["notes"] = r.notes;
    return j;
}

json diffusion_values(const SDEParams& s, double lambda, double t, long long m, long long x0_count) {
    json j;
    auto ls = limit_scalars(s, lambda);
    j["kappa_lambda"] = ls.kappa_lambda;
    j["Lambda_lambda"] = ls.Lambda_lambda;
    auto lim = limit_log_bounds(s, lambda, t);
    j["limit"] = {{"log_lower", num(lim.log_lower)},
                  {"log_upper", num(lim.log_upper)},
                  {"lower", lin(lim.log_lower)},
                  {"upper", lin(lim.log_upper)}};
    j["limit_entropy"] = num(limit_entropy(s, t));
    if (m > 0) {
        long long x0 = x0_count > 0 ? x0_count : std::max(1LL, std::llround(double(m) * s.x0_tilde));
        auto ap = approx_params(s, m);
        auto pre = prelimit_log_bounds(s, lambda, t, m, x0);
        j["prelimit"] = {{"m", m},
                         {"x0_count", x0},
                         {"n", diffusion_horizon(s, t, m)},
                         {"params", params_json(ap)},
                         {"case", to_string(classify(ap, lambda))},
                         {"log_lower", num(pre.log_lower)},
                         {"log_upper", num(pre.log_upper)}};
    } else {
        j["prelimit"] = nullptr;
    }
    return j;
}

json bayes_values(const ParamSet& p, double lambda, int omega0, int n, const DecisionConfig& cfg, bool grid) {
    auto b = bayes_risk_bounds(p, lambda, omega0, n, cfg);
    json j = {{"case", to_string(classify(p, lambda))},
              {"lower", num(b.lower)},
              {"upper", num(b.upper)},
              {"log_H_lower", num(b.log_H_lower)},
              {"log_H_upper", num(b.log_H_upper)},
              {"method", b.method}};
    if (grid) {
        auto g = bayes_risk_upper_grid(p, omega0, n, cfg);
        j["grid"] = {{"lambda", g.lambda}, {"upper", num(g.upper)}, {"method", g.method}};
    }
    return j;
}

json np_values(const ParamSet& p, double lambda, int omega0, int n, const DecisionConfig& cfg) {
    auto b = np_type2_bound(p, lambda, omega0, n, cfg);
    return {{"case", to_string(classify(p, 1 - lambda))},
            {"bound", num(b.bound)},
            {"log_H", num(b.log_H)},
            {"method", b.method}};
}

std::vector<double> sweep_grid(const Options& o) {
    std::vector<double> g;
    if (!o.values.empty()) {
        std::stringstream ss(o.values);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                g.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad grid value '" + tok + "'");
            }
        }
    } else {
        if (std::isnan(o.from) || std::isnan(o.to) || o.steps < 1)
            throw Error(ErrorCode::ParseError, "sweep needs --values or --from/--to/--steps");
        for (int i = 0; i < o.steps; ++i)
            g.push_back(o.steps == 1 ? o.from : o.from + (o.to - o.from) * i / (o.steps - 1));
    }
    if (g.empty()) throw Error(ErrorCode::ParseError, "empty sweep grid");
    return g;
}

// flattens nested objects into dotted column names
void flatten(const json& j, const std::string& prefix, json& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            flatten(*it, key, out);
        } else if (!it->is_array()) {
            out[key] = *it;
        }
    }
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Hellinger integrals, divergences and decision bounds for Poisson GWI", "gwi"};
    app.require_subcommand(1);
    Options o;

    auto* c_classify = app.add_subcommand("classify", "case classification");
    add_params(c_classify, o);

    auto* c_hell = app.add_subcommand("hellinger", "Hellinger integral exact value or bounds");
    add_params(c_hell, o);
    add_horizon(c_hell, o);
    c_hell->add_option("--pair", o.pair, "also report a single coefficient pair")
        ->check(CLI::IsMember({"exact", "lower", "upper", "asymptote", "horizontal"}));

    auto* c_div = app.add_subcommand("divergence", "power and Renyi divergence bounds");
    add_params(c_div, o);
    add_horizon(c_div, o);

    auto* c_ent = app.add_subcommand("entropy", "relative entropy exact value or bounds");
    add_params(c_ent, o, false);
    add_horizon(c_ent, o);

    auto* c_diff = app.add_subcommand("diffusion", "diffusion-limit bounds");
    add_sde(c_diff, o);
    c_diff->add_option("--lambda", o.lambda);

    auto* c_bayes = app.add_subcommand("bayes", "Bayes risk bounds");
    add_params(c_bayes, o);
    add_horizon(c_bayes, o);
    add_decision(c_bayes, o);
    c_bayes->add_flag("--lambda-grid", o.lambda_grid, "also minimize the upper bound over a lambda grid");

    auto* c_np = app.add_subcommand("nptest", "Neyman-Pearson type II error bound");
    add_params(c_np, o);
    add_horizon(c_np, o);
    add_decision(c_np, o);

    auto* c_verify = app.add_subcommand("verify", "compare against the enumeration oracle");
    add_params(c_verify, o);
    add_horizon(c_verify, o);
    c_verify->add_option("--tail-budget", o.tail_budget);

    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo Hellinger estimate");
    add_params(c_sim, o);
    add_horizon(c_sim, o);
    c_sim->add_option("--reps", o.reps);
    c_sim->add_option("--seed", o.seed);

    auto* c_sweep = app.add_subcommand("sweep", "grid evaluation");
    add_params(c_sweep, o);
    add_horizon(c_sweep, o);
    add_decision(c_sweep, o);
    c_sweep->add_option("--eta", o.eta);
    c_sweep->add_option("--kappa-a", o.kappa_A);
    c_sweep->add_option("--kappa-h", o.kappa_H);
    c_sweep->add_option("--sigma", o.sigma);
    c_sweep->add_option("--x0-tilde", o.x0_tilde);
    c_sweep->add_option("--t", o.t);
    c_sweep->add_option("--m", o.m);
    c_sweep->add_option("--x0-count", o.x0_count);
    c_sweep->add_option("--quantity", o.quantity)
        ->check(CLI::IsMember({"hellinger", "entropy", "diffusion", "bayes", "nptest"}));
    c_sweep->add_option("--axis", o.axis)->required()->check(CLI::IsMember({"lambda", "n", "t", "m"}));
    c_sweep->add_option("--from", o.from);
    c_sweep->add_option("--to", o.to);
    c_sweep->add_option("--steps", o.steps);
    c_sweep->add_option("--values", o.values, "comma-separated grid");

    for (auto* s : app.get_subcommands({})) add_common(s, o);
    o.format = "";

    CliResult res;
    auto fail = [&](ErrorCode code, const std::string& msg) {
        json e = {{"error", {{"code", int(code)}, {"name", error_name(code)}, {"message", msg}}}};
        res.exit_code = int(code);
        res.out = e.dump(2) + "\n";
        res.err = msg + "\n";
        return res;
    };

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        return fail(ErrorCode::ParseError, e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string cmd = sub->get_name();
    bool is_sweep = cmd == "sweep";
    if (o.format.empty()) o.format = is_sweep ? "csv" : "json";
    if (o.format == "csv" && !is_sweep) return fail(ErrorCode::InvalidArgument, "csv output is only available for sweep");

    json out;
    out["command"] = cmd;
    out["request"] = request_json(sub);
    try {
        if (cmd == "classify") {
            ParamSet p = resolve_params(sub, o);
            auto c = classify_detail(p, o.lambda);
            auto v = distinguishability(p);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}};
            out["case"] = to_string(c.tag);
            out["x_star"] = c.x_star ? num(*c.x_star) : json(nullptr);
            out["phi_prime_zero"] = num(c.phi_prime_zero);
            out["near_tie"] = c.near_tie;
            out["distinguishability"] = {{"contiguous_A_to_H", opt_bool(v.contiguous_A_to_H)},
                                         {"contiguous_H_to_A", opt_bool(v.contiguous_H_to_A)},
                                         {"entirely_separated", opt_bool(v.entirely_separated)}};
        } else if (cmd == "hellinger") {
            ParamSet p = resolve_params(sub, o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n}};
            json v = hellinger_values(p, o.lambda, o.omega0, o.n);
            out.update(v);
            if (!o.pair.empty()) {
                auto cp = select_coeffs(p, o.lambda, role_from_string(o.pair));
                double lb = pair_log_bound(cp, o.omega0, o.n);
                out["pair"] = {{"role", to_string(cp.role)}, {"p", cp.p},          {"q", cp.q},
                               {"method", cp.method},        {"log_bound", num(lb)}};
            }
        } else if (cmd == "divergence") {
            ParamSet p = resolve_params(sub, o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n}};
            auto rep = hellinger_report(p, o.lambda, o.omega0, o.n);
            double lo = rep.log_exact ? *rep.log_exact : rep.log_lower;
            double up = rep.log_exact ? *rep.log_exact : rep.log_upper;
            auto from_up = divergence_from_log_hellinger(std::min(up, 0.0), o.lambda);
            auto from_lo = divergence_from_log_hellinger(std::min(lo, 0.0), o.lambda);
            out["case"] = to_string(rep.tag);
            out["method"] = rep.log_exact ? "exact" : rep.method;
            out["power_divergence"] = {{"lower", num(from_up.power_div)}, {"upper", num(from_lo.power_div)}};
            out["renyi_divergence"] = {{"lower", num(from_up.renyi_div)}, {"upper", num(from_lo.renyi_div)}};
            auto v = distinguishability(p);
            out["distinguishability"] = {{"contiguous_A_to_H", opt_bool(v.contiguous_A_to_H)},
                                         {"contiguous_H_to_A", opt_bool(v.contiguous_H_to_A)},
                                         {"entirely_separated", opt_bool(v.entirely_separated)}};
        } else if (cmd == "entropy") {
            ParamSet p = resolve_params(sub, o);
            out["inputs"] = {{"params", params_json(p)}, {"omega0", o.omega0}, {"n", o.n}};
            out.update(entropy_values(p, o.omega0, o.n));
        } else if (cmd == "diffusion") {
            SDEParams s = resolve_sde(o);
            out["inputs"] = {{"sde", sde_json(s)}, {"lambda", o.lambda}, {"t", o.t}};
            out.update(diffusion_values(s, o.lambda, o.t, o.m, o.x0_count));
        } else if (cmd == "bayes") {
            ParamSet p = resolve_params(sub, o);
            auto cfg = resolve_cfg(o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n},
                             {"loss_A", cfg.loss_A}, {"loss_H", cfg.loss_H}, {"prior_H", cfg.prior_H}};
            out.update(bayes_values(p, o.lambda, o.omega0, o.n, cfg, o.lambda_grid));
        } else if (cmd == "nptest") {
            ParamSet p = resolve_params(sub, o);
            auto cfg = resolve_cfg(o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n},
                             {"level", cfg.level}};
            out.update(np_values(p, o.lambda, o.omega0, o.n, cfg));
        } else if (cmd == "verify") {
            ParamSet p = resolve_params(sub, o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n},
                             {"tail_budget", o.tail_budget}};
            auto rep = hellinger_report(p, o.lambda, o.omega0, o.n);
            TruncationPolicy pol;
            pol.tail_budget = o.tail_budget;
            auto e = enum_log_hellinger(p, o.lambda, o.omega0, o.n, pol);
            out["case"] = to_string(rep.tag);
            out["enum"] = {{"log_value", num(e.log_value)}, {"value", e.value}, {"error_bound", e.error_bound},
                           {"max_state", e.max_state_used}};
            // H lies in [e.value, e.value + error_bound]; allow rounding at the last digits
            double slack = 1e-12 * std::max(1.0, e.value);
            bool ok;
            if (rep.log_exact) {
                double ex = std::exp(*rep.log_exact);
                out["log_exact"] = num(*rep.log_exact);
                out["abs_diff"] = std::fabs(ex - e.value);
                ok = ex >= e.value - slack && ex <= e.value + e.error_bound + slack;
            } else {
                double lo = std::exp(rep.log_lower), up = std::exp(rep.log_upper);
                out["log_lower"] = num(rep.log_lower);
                out["log_upper"] = num(rep.log_upper);
                out["method"] = rep.method;
                ok = lo <= e.value + e.error_bound + slack && e.value <= up + slack;
            }
            out["status"] = ok ? "PASS" : "FAIL";
            if (!ok) res.exit_code = 1;
        } else if (cmd == "simulate") {
            ParamSet p = resolve_params(sub, o);
            out["inputs"] = {{"params", params_json(p)}, {"lambda", o.lambda}, {"omega0", o.omega0}, {"n", o.n},
                             {"reps", o.reps}, {"seed", o.seed}};
            auto r = mc_log_hellinger(p, o.lambda, o.omega0, o.n, o.reps, o.seed);
            out["case"] = to_string(classify(p, o.lambda));
            out["estimate"] = num(r.estimate);
            out["log_estimate"] = num(r.log_estimate);
            out["std_error"] = num(r.std_error);
            out["rng"] = r.rng;
        } else if (cmd == "sweep") {
            auto grid = sweep_grid(o);
            static const std::map<std::string, std::vector<std::string>> allowed{
                {"hellinger", {"lambda", "n"}},
                {"entropy", {"n"}},
                {"diffusion", {"lambda", "t", "m"}},
                {"bayes", {"lambda", "n"}},
                {"nptest", {"lambda", "n"}}};
            const auto& ax = allowed.at(o.quantity);
            if (std::find(ax.begin(), ax.end(), o.axis) == ax.end())
                throw Error(ErrorCode::CaseMismatch, "axis '" + o.axis + "' does not apply to " + o.quantity);

            std::function<json(double)> eval;
            auto as_int = [](double v) { return static_cast<long long>(std::llround(v)); };
            if (o.quantity == "diffusion") {
                if (std::isnan(o.kappa_A) || std::isnan(o.kappa_H))
                    throw Error(ErrorCode::ParseError, "--kappa-a and --kappa-h are required");
                SDEParams s = resolve_sde(o);
                eval = [&, s](double v) {
                    double lam = o.axis == "lambda" ? v : o.lambda, t = o.axis == "t" ? v : o.t;
                    long long m = o.axis == "m" ? as_int(v) : o.m;
                    return diffusion_values(s, lam, t, m, o.x0_count);
                };
            } else {
                ParamSet p = resolve_params(sub, o);
                auto cfg = o.quantity == "bayes" || o.quantity == "nptest" ? resolve_cfg(o) : DecisionConfig{};
                eval = [&, p, cfg](double v) {
                    double lam = o.axis == "lambda" ? v : o.lambda;
                    int n = o.axis == "n" ? int(as_int(v)) : o.n;
                    if (o.quantity == "hellinger") return hellinger_values(p, lam, o.omega0, n);
                    if (o.quantity == "entropy") return entropy_values(p, o.omega0, n);
                    if (o.quantity == "bayes") return bayes_values(p, lam, o.omega0, n, cfg, false);
                    return np_values(p, lam, o.omega0, n, cfg);
                };
            }
            json rows = json::array();
            for (double v : grid) {
                json row;
                row[o.axis] = (o.axis == "n" || o.axis == "m") ? json(as_int(v)) : json(v);
                flatten(eval(v), "", row);
                rows.push_back(row);
            }
            if (o.format == "csv") {
                std::string text;
                bool first = true;
                for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
                    text += (first ? "" : ",") + it.key();
                    first = false;
                }
                text += "\n";
                for (const auto& row : rows) {
                    first = true;
                    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
                        text += (first ? "" : ",") + csv_cell(row.value(it.key(), json(nullptr)));
                        first = false;
                    }
                    text += "\n";
                }
                res.out = text;
                return res;
            }
            out["quantity"] = o.quantity;
            out["axis"] = o.axis;
            out["rows"] = rows;
        }
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail(ErrorCode::InvalidArgument, e.what());
    }
    res.out = out.dump(2) + "\n";
    return res;
}

std::vector<std::string> request_to_args(const std::string& report_json) {
    json j = json::parse(report_json);
    const json& r = j.at("request");
    std::vector<std::string> a{r.at("command").get<std::string>()};
    for (auto it = r.at("args").begin(); it != r.at("args").end(); ++it) {
        a.push_back("--" + it.key());
        if (!it->is_boolean()) a.push_back(it->get<std::string>());
    }
    return a;
}

}  // namespace gwi::cli
