#include "cli.hpp"

#include "tailbound/bound_kind.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/distributions.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/optimize.hpp"
#include "tailbound/oracle.hpp"
#include "tailbound/pairing.hpp"
#include "tailbound/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace tailbound::cli {

namespace {

using nlohmann::ordered_json;

/// Bad command line that CLI11 cannot detect on its own.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilyOptions {
    std::string family;
    double mu = 0.0;
    double sigma = 1.0;
    double k = 2.0;
    double lambda = 1.0;
    double alpha = 2.1;
    double beta = 1.3;
};

struct RangeOptions {
    double x_from = 1.0;
    double x_to = 10.0;
    int n = 200;
};

struct OutputOptions {
    std::string format;  // empty until parsed; each command has its own default
    std::string out_path;
};

struct EvalOptions {
    std::string pair = "auto";
    std::string upper;
    std::string lower;
};

struct OptimizeOptions {
    std::string param = "a";
    std::optional<double> x;
    std::string a = "inf";
    double a_max = 64.0;
    double b_max = 64.0;
};

struct Config {
    FamilyOptions family;
    RangeOptions range;
    OutputOptions output;
    EvalOptions eval;
    std::vector<std::string> kinds;
    OptimizeOptions optimize;
    bool all = false;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
    cmd->add_option("--family", f.family, "gaussian | chi2 | chi2-nc | gaussian-squared | beta-prime");
    cmd->add_option("--mu", f.mu, "mean (gaussian, gaussian-squared)")->capture_default_str();
    cmd->add_option("--sigma", f.sigma, "scale (gaussian, gaussian-squared)")->capture_default_str();
    cmd->add_option("--k", f.k, "degrees of freedom (chi2, chi2-nc)")->capture_default_str();
    cmd->add_option("--lambda", f.lambda, "noncentrality (chi2-nc)")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "shape alpha (beta-prime)")->capture_default_str();
    cmd->add_option("--beta", f.beta, "shape beta (beta-prime)")->capture_default_str();
}

void add_range_options(CLI::App* cmd, RangeOptions& r) {
    cmd->add_option("--x-from", r.x_from, "first grid point")->capture_default_str();
    cmd->add_option("--x-to", r.x_to, "last grid point")->capture_default_str();
    cmd->add_option("--n", r.n, "number of grid points")->capture_default_str();
}

void add_output_options(CLI::App* cmd, OutputOptions& o, const std::string& default_format) {
    cmd->add_option("--format", o.format, "output format (default " + default_format + ")")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out_path, "output file (default standard output)");
}

CatalogEntry build_entry(const FamilyOptions& f) {
    if (f.family.empty()) throw UsageError("--family is required");
    const auto family = parse_family(f.family);
    if (!family) throw UsageError("unknown family '" + f.family + "'");
    switch (*family) {
        case Family::gaussian: return CatalogEntry::gaussian(f.mu, f.sigma);
        case Family::chi_square_central: return CatalogEntry::chi_square_central(f.k);
        case Family::chi_square_noncentral: return CatalogEntry::chi_square_noncentral(f.k, f.lambda);
        case Family::gaussian_squared: return CatalogEntry::gaussian_squared(f.sigma, f.mu);
        case Family::beta_prime: return CatalogEntry::beta_prime(f.alpha, f.beta);
    }
    throw UsageError("unknown family '" + f.family + "'");
}

DistributionModel build_model(const FamilyOptions& f) {
    try {
        return make_catalog_distribution(build_entry(f));
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> grid_points(const RangeOptions& r) {
    if (!std::isfinite(r.x_from) || !std::isfinite(r.x_to) || !(r.x_from < r.x_to))
        throw UsageError("empty range: --x-from must be < --x-to");
    if (r.n < 1) throw UsageError("--n must be >= 1");
    return GridSpec{r.x_from, r.x_to, r.n}.points();
}

BoundKind parse_kind(const std::string& text) {
    try {
        return parse_bound_kind(text);
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
}

void require_applicable(const DistributionModel& model, const BoundKind& kind) {
    bound_anchor(model, kind);  // throws PreconditionError naming the unmet precondition
}

ordered_json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

std::string csv_text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- eval

struct SideEval {
    double value = std::nan("");
    bool valid = false;
    std::vector<bool> flags;
};

SideEval eval_side(const DistributionModel& model, double x, const std::optional<BoundKind>& kind) {
    SideEval out;
    if (!kind) return out;
    const auto ids = condition_ids(*kind);
    out.flags.assign(ids.size(), false);
    try {
        const ConditionReport rep = evaluate_conditions(model, x, *kind);
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (const ConditionEntry* e = rep.find(ids[i])) out.flags[i] = e->satisfied;
    } catch (const Error&) {
    }
    try {
        const BoundValue v = evaluate_bound(model, x, *kind);
        out.value = v.value;
        out.valid = v.valid;
    } catch (const Error&) {
    }
    return out;
}

std::string cmd_eval(const Config& cfg, std::ostream& err, int& status) {
    const DistributionModel model = build_model(cfg.family);
    const std::vector<double> xs = grid_points(cfg.range);

    std::optional<BoundKind> upper;
    std::optional<BoundKind> lower;
    const bool explicit_pair = !cfg.eval.upper.empty() || !cfg.eval.lower.empty();
    if (explicit_pair) {
        if (!cfg.eval.upper.empty()) upper = parse_kind(cfg.eval.upper);
        if (!cfg.eval.lower.empty()) lower = parse_kind(cfg.eval.lower);
        if (upper && !upper->is_upper()) throw UsageError("--upper needs an upper kind, got " + upper->label());
        if (lower && lower->is_upper()) throw UsageError("--lower needs a lower kind, got " + lower->label());
        if (upper) require_applicable(model, *upper);
        if (lower) require_applicable(model, *lower);
    } else {
        if (cfg.eval.pair != "auto") throw UsageError("--pair accepts only 'auto'");
        const PairingReport rep = select_pair(model, cfg.range.x_from, cfg.range.x_to);
        upper = rep.upper;
        lower = rep.lower;
        err << "pair: " << rep.upper.label() << " + " << rep.lower.label() << " (" << rep.cascade_step << ")\n";
    }

    std::vector<std::string> cond_cols;
    if (upper)
        for (const auto& id : condition_ids(*upper)) cond_cols.push_back(id);
    if (lower)
        for (const auto& id : condition_ids(*lower)) cond_cols.push_back(id);

    bool any_valid = false;
    std::ostringstream csv;
    ordered_json rows = ordered_json::array();
    csv << join_csv({"x", "upper", "upper_valid", "lower", "lower_valid", "true_tail", "rate_r"});
    for (const auto& c : cond_cols) csv << ',' << c;
    csv << '\n';

    for (double x : xs) {
        const SideEval up = eval_side(model, x, upper);
        const SideEval low = eval_side(model, x, lower);
        double tail = std::nan("");
        try {
            tail = true_tail(model, x).value;
        } catch (const Error&) {
        }
        double rate = std::nan("");
        if (up.valid && low.valid && low.value > 0.0) rate = up.value / low.value - 1.0;
        any_valid = any_valid || up.valid || low.valid;

        std::vector<bool> flags = up.flags;
        flags.insert(flags.end(), low.flags.begin(), low.flags.end());

        if (cfg.output.format == "csv") {
            std::vector<std::string> cells = {format_double(x),    format_double(up.value), csv_bool(up.valid),
                                              format_double(low.value), csv_bool(low.valid), format_double(tail),
                                              format_double(rate)};
            for (bool f : flags) cells.push_back(csv_bool(f));
            csv << join_csv(cells) << '\n';
        } else {
            ordered_json row;
            row["x"] = json_number(x);
            row["upper"] = json_number(up.value);
            row["upper_valid"] = up.valid;
            row["lower"] = json_number(low.value);
            row["lower_valid"] = low.valid;
            row["true_tail"] = json_number(tail);
            row["rate_r"] = json_number(rate);
            ordered_json conds;
            for (std::size_t i = 0; i < cond_cols.size(); ++i) conds[cond_cols[i]] = static_cast<bool>(flags[i]);
            row["conditions"] = conds;
            rows.push_back(row);
        }
    }

    if (!any_valid) {
        err << "no bound is valid anywhere on [" << format_double(cfg.range.x_from) << ", "
            << format_double(cfg.range.x_to) << "]\n";
        status = kExitInfeasible;
    }
    if (cfg.output.format == "csv") return csv.str();
    ordered_json doc;
    doc["model"] = model.name();
    doc["upper"] = upper ? ordered_json(upper->label()) : ordered_json(nullptr);
    doc["lower"] = lower ? ordered_json(lower->label()) : ordered_json(nullptr);
    doc["condition_ids"] = cond_cols;
    doc["rows"] = rows;
    return dump(doc);
}

// ---------------------------------------------------------------- conditions

std::string cmd_conditions(const Config& cfg) {
    const DistributionModel model = build_model(cfg.family);
    const std::vector<double> xs = grid_points(cfg.range);
    if (cfg.kinds.empty()) throw UsageError("--kind is required (repeatable)");

    std::vector<BoundKind> kinds;
    std::set<std::string> seen;
    for (const auto& text : cfg.kinds) {
        const BoundKind kind = parse_kind(text);
        if (!seen.insert(std::string(kind.id())).second)
            throw UsageError("kind id '" + std::string(kind.id()) + "' given more than once");
        require_applicable(model, kind);
        kinds.push_back(kind);
    }

    std::vector<std::string> header = {"x"};
    for (const auto& kind : kinds) {
        for (const auto& id : condition_ids(kind)) {
            header.push_back(id);
            header.push_back(id + ".ok");
        }
        header.push_back(std::string(kind.id()) + ".all");
    }

    std::ostringstream csv;
    csv << join_csv(header) << '\n';
    ordered_json rows = ordered_json::array();
    for (double x : xs) {
        std::vector<std::string> cells = {format_double(x)};
        ordered_json row;
        row["x"] = json_number(x);
        for (const auto& kind : kinds) {
            const auto ids = condition_ids(kind);
            std::optional<ConditionReport> rep;
            try {
                rep = evaluate_conditions(model, x, kind);
            } catch (const DomainError&) {
            }
            for (const auto& id : ids) {
                const ConditionEntry* e = rep ? rep->find(id) : nullptr;
                const double lhs = e ? e->lhs_value : std::nan("");
                const bool ok = e && e->satisfied;
                cells.push_back(format_double(lhs));
                cells.push_back(csv_bool(ok));
                row[id] = json_number(lhs);
                row[id + ".ok"] = ok;
            }
            const bool all = rep && rep->all_satisfied;
            cells.push_back(csv_bool(all));
            row[std::string(kind.id()) + ".all"] = all;
        }
        csv << join_csv(cells) << '\n';
        rows.push_back(row);
    }
    if (cfg.output.format == "csv") return csv.str();

    ordered_json doc;
    doc["model"] = model.name();
    ordered_json labels = ordered_json::array();
    for (const auto& kind : kinds) labels.push_back(kind.label());
    doc["kinds"] = labels;
    doc["rows"] = rows;
    return dump(doc);
}

// ---------------------------------------------------------------- optimize

double parse_a(const std::string& text) {
    char* end = nullptr;
    const double a = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(a > 0.0)) throw UsageError("--a must be a positive number or inf");
    return a;
}

ordered_json optimized_record(double x, const OptimizedParam& p) {
    ordered_json rec;
    rec["x"] = json_number(x);
    rec["param"] = p.name;
    rec[p.name] = json_number(p.value);
    rec["achieved_by"] = std::string(achieved_by_name(p.achieved_by));
    rec["residual"] = json_number(p.residual);
    rec["non_binding"] = p.non_binding;
    rec["diagnostic"] = p.diagnostic;
    rec["suggested_x"] = p.suggested_x ? json_number(*p.suggested_x) : ordered_json(nullptr);
    return rec;
}

std::string cmd_optimize(const Config& cfg, std::ostream& err, int& status) {
    const DistributionModel model = build_model(cfg.family);
    const OptimizeOptions& o = cfg.optimize;
    if (o.param != "a" && o.param != "b") throw UsageError("--param must be a or b");
    const std::vector<double> xs = o.x ? std::vector<double>{*o.x} : grid_points(cfg.range);
    const double a = parse_a(o.a);

    std::vector<std::pair<double, OptimizedParam>> results;
    for (double x : xs) {
        OptimizedParam p;
        if (o.param == "a") {
            p = optimize_a(model, x, o.a_max);
        } else if (!model.support().lower_finite()) {
            p = optimize_b_real_line(model, x, o.b_max);
        } else {
            p = optimize_b_semibounded(model, x, a, o.b_max);
        }
        results.emplace_back(x, p);
    }

    const bool all_fallback = std::all_of(results.begin(), results.end(), [](const auto& r) {
        return r.second.achieved_by == AchievedBy::fallback_none;
    });
    if (all_fallback) {
        err << "optimizer found no feasible value: " << results.front().second.diagnostic << "\n";
        status = kExitInfeasible;
    }

    if (cfg.output.format == "csv") {
        std::ostringstream csv;
        csv << "x,param,value,achieved_by,residual,non_binding\n";
        for (const auto& [x, p] : results)
            csv << join_csv({format_double(x), p.name, format_double(p.value),
                             std::string(achieved_by_name(p.achieved_by)), format_double(p.residual),
                             csv_bool(p.non_binding)})
                << '\n';
        return csv.str();
    }
    if (o.x) {
        ordered_json rec = optimized_record(results.front().first, results.front().second);
        rec["model"] = model.name();
        return dump(rec);
    }
    ordered_json doc;
    doc["model"] = model.name();
    doc["records"] = ordered_json::array();
    for (const auto& [x, p] : results) doc["records"].push_back(optimized_record(x, p));
    return dump(doc);
}

// ---------------------------------------------------------------- validate

std::string cmd_validate(const Config& cfg, int& status) {
    std::vector<DistributionModel> models;
    if (cfg.all) {
        if (!cfg.family.family.empty()) throw UsageError("--all and --family are mutually exclusive");
        for (const auto& entry : catalog_scenarios()) models.push_back(make_catalog_distribution(entry));
    } else {
        models.push_back(build_model(cfg.family));
    }

    bool all_pass = true;
    ordered_json reports = ordered_json::array();
    std::ostringstream csv;
    csv << "model,diagnostic,verdict,detail\n";
    for (const auto& model : models) {
        const auto diags = run_validation_suite(model);
        const bool pass = suite_passes(diags);
        all_pass = all_pass && pass;
        ordered_json rep;
        rep["model"] = model.name();
        rep["pass"] = pass;
        rep["diagnostics"] = ordered_json::array();
        for (const auto& d : diags) {
            ordered_json jd;
            jd["name"] = d.name;
            jd["verdict"] = std::string(verdict_name(d.verdict));
            jd["detail"] = d.detail;
            ordered_json xs = ordered_json::array();
            ordered_json vs = ordered_json::array();
            for (double x : d.x_samples) xs.push_back(json_number(x));
            for (double v : d.values) vs.push_back(json_number(v));
            jd["x"] = xs;
            jd["values"] = vs;
            rep["diagnostics"].push_back(jd);
            csv << join_csv({csv_text(model.name()), csv_text(d.name), std::string(verdict_name(d.verdict)),
                             csv_text(d.detail)})
                << '\n';
        }
        reports.push_back(rep);
    }
    if (!all_pass) status = kExitValidation;
    if (cfg.output.format == "csv") return csv.str();
    ordered_json doc;
    doc["pass"] = all_pass;
    doc["reports"] = reports;
    return dump(doc);
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open --out path '" + cfg.output.out_path + "'");
    file << text;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Right-tail probability bounds: evaluate, check conditions, optimize, validate"};
    app.name("tailbound");
    app.require_subcommand(1);

    CLI::App* eval = app.add_subcommand("eval", "evaluate an upper/lower bound pair on a grid");
    add_family_options(eval, cfg.family);
    add_range_options(eval, cfg.range);
    add_output_options(eval, cfg.output, "csv");
    eval->add_option("--pair", cfg.eval.pair, "pair selection (auto)")->capture_default_str();
    eval->add_option("--upper", cfg.eval.upper, "upper kind, e.g. cor2 or thm2:a=2");
    eval->add_option("--lower", cfg.eval.lower, "lower kind, e.g. cor4:b=0.8");

    CLI::App* conditions = app.add_subcommand("conditions", "condition values and flags on a grid");
    add_family_options(conditions, cfg.family);
    add_range_options(conditions, cfg.range);
    add_output_options(conditions, cfg.output, "csv");
    conditions->add_option("--kind", cfg.kinds, "bound kind (repeatable)");

    CLI::App* optimize = app.add_subcommand("optimize", "optimize the a or b parameter");
    add_family_options(optimize, cfg.family);
    add_range_options(optimize, cfg.range);
    add_output_options(optimize, cfg.output, "json");
    optimize->add_option("--param", cfg.optimize.param, "a or b")->capture_default_str();
    optimize->add_option("--x", cfg.optimize.x, "single evaluation point (otherwise the grid)");
    optimize->add_option("--a", cfg.optimize.a, "a used when optimizing b on a semi-bounded support")
        ->capture_default_str();
    optimize->add_option("--a-max", cfg.optimize.a_max, "scan maximum for a")->capture_default_str();
    optimize->add_option("--b-max", cfg.optimize.b_max, "scan maximum for b")->capture_default_str();

    CLI::App* validate = app.add_subcommand("validate", "run the validation suite");
    add_family_options(validate, cfg.family);
    add_output_options(validate, cfg.output, "json");
    validate->add_flag("--all", cfg.all, "every catalog scenario");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    int status = kExitOk;
    try {
        std::string text;
        if (cfg.output.format.empty()) cfg.output.format = eval->parsed() || conditions->parsed() ? "csv" : "json";
        if (eval->parsed()) text = cmd_eval(cfg, err, status);
        else if (conditions->parsed()) text = cmd_conditions(cfg);
        else if (optimize->parsed()) text = cmd_optimize(cfg, err, status);
        else text = cmd_validate(cfg, status);
        emit(cfg, text, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return status;
}

}  // namespace tailbound::cli
