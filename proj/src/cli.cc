// Copyright 2026 The NLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nla/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "nla/coherent.h"
#include "nla/epr.h"
#include "nla/errors.h"
#include "nla/optimizer.h"
#include "nla/parallel.h"
#include "nla/validation.h"

namespace nla::cli {

using nlohmann::ordered_json;

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

namespace {

class FlagError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, int, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Common {
    std::string format = "csv";
    std::string out_file;
    int jobs = 1;
    bool timestamp = false;
};

std::string csv_cell(const Cell &c) {
    if (const double *d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    if (const int *i = std::get_if<int>(&c)) {
        return std::to_string(*i);
    }
    const std::string &s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return q + "\"";
}

ordered_json json_cell(const Cell &c) {
    if (const double *d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            return format_number(*d);
        }
        // Round through the CSV rendering so both formats carry the same
        // digits.
        return std::strtod(format_number(*d).c_str(), nullptr);
    }
    if (const int *i = std::get_if<int>(&c)) {
        return *i;
    }
    return std::get<std::string>(c);
}

ordered_json make_manifest(const std::string &command, const ordered_json &params,
                           const ordered_json &tolerances, const Common &common) {
    ordered_json m;
    m["tool"] = "nla";
    m["version"] = kVersion;
    m["schema_version"] = kSchemaVersion;
    m["command"] = command;
    m["parameters"] = params;
    m["tolerances"] = tolerances;
    if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        m["timestamp"] = std::string(epoch);
    } else if (common.timestamp) {
        m["timestamp"] = static_cast<long long>(std::time(nullptr));
    }
    return m;
}

std::string render(const Table &table, const ordered_json &manifest, const std::string &format) {
    std::ostringstream os;
    if (format == "json") {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["manifest"] = manifest;
        doc["columns"] = table.columns;
        ordered_json rows = ordered_json::array();
        for (const auto &row : table.rows) {
            ordered_json r;
            for (size_t i = 0; i < row.size(); ++i) {
                r[table.columns[i]] = json_cell(row[i]);
            }
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        os << doc.dump(2) << '\n';
        return os.str();
    }
    os << "# manifest " << manifest.dump() << '\n';
    for (size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_cell(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

void emit(const std::string &text, const Common &common, std::ostream &out) {
    if (common.out_file.empty()) {
        out << text;
        return;
    }
    std::ofstream f(common.out_file, std::ios::binary);
    if (!f) {
        throw FlagError("cannot open --out file " + common.out_file);
    }
    f << text;
}

std::vector<double> linear_or_log_grid(double lo, double hi, int steps, bool log_spacing) {
    if (steps < 1) {
        throw FlagError("grid needs at least one step");
    }
    if (hi < lo) {
        throw FlagError("grid maximum below minimum");
    }
    if (log_spacing && !(lo > 0.0)) {
        throw FlagError("--log needs a positive minimum");
    }
    std::vector<double> grid(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double u = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        grid[static_cast<size_t>(i)] =
            log_spacing ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)))
                        : lo + u * (hi - lo);
    }
    grid.back() = steps == 1 ? lo : hi;
    return grid;
}

// "1..4" or "1,2,5".
std::vector<int> parse_int_list(const std::string &spec) {
    std::vector<int> out;
    try {
        auto dots = spec.find("..");
        if (dots != std::string::npos) {
            int a = std::stoi(spec.substr(0, dots));
            int b = std::stoi(spec.substr(dots + 2));
            if (b < a) {
                throw FlagError("empty range " + spec);
            }
            for (int i = a; i <= b; ++i) {
                out.push_back(i);
            }
            return out;
        }
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw FlagError("bad integer '" + item + "'");
            }
        }
    } catch (const std::logic_error &) {
        throw FlagError("cannot parse integer list '" + spec + "'");
    }
    if (out.empty()) {
        throw FlagError("empty integer list");
    }
    return out;
}

// "0.1,0.01" or "start:stop:count".
std::vector<double> parse_real_list(const std::string &spec) {
    std::vector<double> out;
    try {
        if (std::count(spec.begin(), spec.end(), ':') == 2) {
            auto c1 = spec.find(':');
            auto c2 = spec.find(':', c1 + 1);
            return linear_or_log_grid(std::stod(spec.substr(0, c1)),
                                      std::stod(spec.substr(c1 + 1, c2 - c1 - 1)),
                                      std::stoi(spec.substr(c2 + 1)), false);
        }
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw FlagError("bad number '" + item + "'");
            }
        }
    } catch (const std::logic_error &) {
        throw FlagError("cannot parse number list '" + spec + "'");
    }
    if (out.empty()) {
        throw FlagError("empty number list");
    }
    return out;
}

int default_jobs() {
    if (const char *env = std::getenv("NLA_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::logic_error &) {
        }
    }
    return 1;
}

void add_common(CLI::App *sub, Common &common, bool csv_json = true) {
    if (csv_json) {
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    sub->add_option("--out", common.out_file, "Write output to FILE instead of stdout");
    sub->add_option("--jobs", common.jobs, "Concurrent sweep points (default: NLA_JOBS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timestamp", common.timestamp, "Record wall-clock time in the manifest");
}

struct CoherentFlags {
    double alpha = -1.0;
    double g_min = 1.0;
    double g_max = 4.0;
    int g_steps = 100;
    bool log = false;
    std::string n_list;
    std::optional<double> f_min;
};

std::string cmd_coherent(const CoherentFlags &f, const Common &common) {
    if (f.alpha < 0.0) {
        throw FlagError("--alpha must be >= 0");
    }
    if (!f.n_list.empty() && f.f_min) {
        throw FlagError("--n and --fmin are mutually exclusive");
    }
    if (f.g_min < 1.0) {
        throw FlagError("--g-min must be >= 1");
    }
    auto grid = linear_or_log_grid(f.g_min, f.g_max, f.g_steps, f.log);
    Table table{{"g", "N", "P", "F"}, {}};
    ordered_json params{{"alpha", f.alpha}, {"g_min", f.g_min}, {"g_max", f.g_max},
                        {"g_steps", f.g_steps}, {"log", f.log}};
    if (!f.n_list.empty()) {
        auto cutoffs = parse_int_list(f.n_list);
        for (int n : cutoffs) {
            if (n < 0) {
                throw FlagError("--n entries must be >= 0");
            }
        }
        params["n"] = cutoffs;
        std::vector<CoherentResult> res(cutoffs.size() * grid.size());
        parallel_for(res.size(), common.jobs, [&](size_t i) {
            res[i] = evaluate_coherent(f.alpha, AmplifierSpec(grid[i % grid.size()],
                                                              cutoffs[i / grid.size()]));
        });
        for (const auto &r : res) {
            table.rows.push_back({r.g, r.n_used, r.p_success, r.fidelity});
        }
    } else {
        double fmin = f.f_min.value_or(0.99);
        if (!(fmin > 0.0 && fmin < 1.0)) {
            throw FlagError("--fmin must lie in (0, 1)");
        }
        params["fmin"] = fmin;
        for (const auto &r : sweep_coherent(f.alpha, grid, fmin, common.jobs)) {
            table.rows.push_back({r.g, r.n_used, r.p_success, r.fidelity});
        }
    }
    return render(table, make_manifest("coherent", params, ordered_json::object(), common),
                  common.format);
}

struct EprFlags {
    double chi_prime = -1.0;
    double eta = -1.0;
    std::optional<double> g;
    double g_min = 1.0;
    double g_max = 4.0;
    int g_steps = 100;
    bool log = false;
    std::string n_list = "1";
    bool baselines = false;
    std::string no_amp_baseline = "target";
};

std::string cmd_epr(const EprFlags &f, const Common &common) {
    if (!(f.chi_prime > 0.0 && f.chi_prime < 1.0)) {
        throw FlagError("--chi-prime must lie in (0, 1)");
    }
    if (!(f.eta >= 0.0 && f.eta <= 1.0)) {
        throw FlagError("--eta must lie in [0, 1]");
    }
    std::vector<double> grid;
    if (f.g) {
        if (*f.g < 1.0) {
            throw FlagError("--g must be >= 1");
        }
        grid = {*f.g};
    } else {
        if (f.g_min < 1.0) {
            throw FlagError("--g-min must be >= 1");
        }
        grid = linear_or_log_grid(f.g_min, f.g_max, f.g_steps, f.log);
    }
    auto cutoffs = parse_int_list(f.n_list);
    for (int n : cutoffs) {
        if (n < 0) {
            throw FlagError("--n entries must be >= 0");
        }
    }
    Table table{{"g", "N", "chi_in", "P", "F_lower", "epsilon"}, {}};
    if (f.baselines) {
        table.columns.push_back("eps_no_amp");
        table.columns.push_back("eps_inf_squeezing");
    }
    std::vector<EprResult> res(cutoffs.size() * grid.size(), EprResult{});
    parallel_for(res.size(), common.jobs, [&](size_t i) {
        res[i] = evaluate_epr_for_target(f.chi_prime, f.eta,
                                         AmplifierSpec(grid[i % grid.size()], cutoffs[i / grid.size()]));
    });
    for (size_t i = 0; i < res.size(); ++i) {
        const auto &r = res[i];
        std::vector<Cell> row{grid[i % grid.size()], cutoffs[i / grid.size()], r.chi_in,
                              r.p_success, r.fidelity_lower_bound, r.epsilon_epr};
        if (f.baselines) {
            double chi0 = f.no_amp_baseline == "input" ? r.chi_in : f.chi_prime;
            row.push_back(epr_criterion(chi0, f.eta));
            row.push_back((1.0 - f.eta) * (1.0 - f.eta));
        }
        table.rows.push_back(std::move(row));
    }
    ordered_json params{{"chi_prime", f.chi_prime}, {"eta", f.eta}, {"n", cutoffs},
                        {"with_baselines", f.baselines}};
    if (f.g) {
        params["g"] = *f.g;
    } else {
        params["g_min"] = f.g_min;
        params["g_max"] = f.g_max;
        params["g_steps"] = f.g_steps;
        params["log"] = f.log;
    }
    if (f.baselines) {
        params["no_amp_baseline"] = f.no_amp_baseline;
    }
    ordered_json tols{{"series_cutoff", "chi'^(2n) < 1e-15 (1 - chi'^2)"}};
    return render(table, make_manifest("epr", params, tols, common), common.format);
}

struct OptimizeFlags {
    double chi_prime = -1.0;
    double f_min = 0.99;
    std::string p_list = "0.1,0.01,0.001";
    std::string eta_grid = "0.05:1:20";
};

std::string cmd_optimize(const OptimizeFlags &f, const Common &common) {
    if (!(f.chi_prime > 0.0 && f.chi_prime < 1.0)) {
        throw FlagError("--chi-prime must lie in (0, 1)");
    }
    if (!(f.f_min > 0.0 && f.f_min < 1.0)) {
        throw FlagError("--fmin must lie in (0, 1)");
    }
    auto p_mins = parse_real_list(f.p_list);
    for (double p : p_mins) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw FlagError("--pmin entries must lie in (0, 1]");
        }
    }
    auto etas = parse_real_list(f.eta_grid);
    for (size_t i = 0; i < etas.size(); ++i) {
        if (!(etas[i] > 0.0 && etas[i] <= 1.0) || (i > 0 && etas[i] < etas[i - 1])) {
            throw FlagError("--eta-grid must be ascending within (0, 1]");
        }
    }
    Table table{{"p_min", "eta", "N", "g", "chi_in", "epsilon", "F", "P", "binding",
                 "eps_no_amp", "eps_inf_squeezing", "error"},
                {}};
    for (double p_min : p_mins) {
        for (const auto &pt : sweep_eta(f.f_min, p_min, f.chi_prime, etas, common.jobs)) {
            if (pt.result) {
                const auto &r = *pt.result;
                table.rows.push_back({p_min, pt.eta, r.n_star, r.g_star, r.chi_in, r.epsilon,
                                      r.fidelity, r.probability, to_string(r.binding),
                                      pt.eps_no_amplification, pt.eps_infinite_squeezing,
                                      std::string()});
            } else {
                double nan = std::nan("");
                table.rows.push_back({p_min, pt.eta, 0, nan, nan, nan, nan, nan, std::string("NONE"),
                                      pt.eps_no_amplification, pt.eps_infinite_squeezing, pt.error});
            }
        }
    }
    ordered_json params{{"chi_prime", f.chi_prime}, {"fmin", f.f_min}, {"pmin", p_mins},
                        {"eta_grid", etas}};
    ordered_json tols{{"gain_tolerance", kGainTolerance}, {"gain_cap", kGainCap}};
    return render(table, make_manifest("optimize", params, tols, common), common.format);
}

struct ValidateFlags {
    std::string grid = "small";
    std::optional<double> tol;
    std::string format = "text";
};

int cmd_validate(const ValidateFlags &f, const Common &common, std::ostream &out) {
    auto results = run_validation(f.grid == "full" ? ValidationGrid::kFull : ValidationGrid::kSmall,
                                  f.tol, common.jobs);
    bool ok = true;
    std::ostringstream os;
    if (f.format == "json") {
        ordered_json params{{"grid", f.grid}};
        if (f.tol) {
            params["tol"] = *f.tol;
        }
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["manifest"] = make_manifest("validate", params, ordered_json::object(), common);
        ordered_json checks = ordered_json::array();
        for (const auto &r : results) {
            ok = ok && r.passed;
            checks.push_back({{"name", r.name},
                              {"cases", r.cases},
                              {"max_error", r.max_error},
                              {"tolerance", r.tolerance},
                              {"passed", r.passed}});
        }
        doc["checks"] = checks;
        doc["passed"] = ok;
        os << doc.dump(2) << '\n';
    } else {
        for (const auto &r : results) {
            ok = ok && r.passed;
            char line[256];
            std::snprintf(line, sizeof line, "%-4s %-32s cases=%-4d max_err=%-12.3e tol=%.1e\n",
                          r.passed ? "PASS" : "FAIL", r.name.c_str(), r.cases, r.max_error,
                          r.tolerance);
            os << line;
        }
        os << (ok ? "validation passed\n" : "validation FAILED\n");
    }
    emit(os.str(), common, out);
    return ok ? kOk : kValidationFailed;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Measurement-based noiseless linear amplifier: sweeps, optimization and validation", "nla"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common common;
    common.jobs = default_jobs();

    CoherentFlags cf;
    auto *coh = app.add_subcommand("coherent", "Success probability and fidelity for coherent inputs");
    coh->add_option("--alpha", cf.alpha, "Coherent amplitude |alpha|")->required();
    coh->add_option("--g-min", cf.g_min, "Smallest gain");
    coh->add_option("--g-max", cf.g_max, "Largest gain");
    coh->add_option("--g-steps", cf.g_steps, "Number of gain points");
    coh->add_flag("--log", cf.log, "Logarithmic gain spacing");
    coh->add_option("--n", cf.n_list, "Fixed cutoffs, e.g. 1..4 or 1,3");
    coh->add_option("--fmin", cf.f_min, "Choose the smallest cutoff with fidelity >= FMIN (default 0.99)");
    add_common(coh, common);

    EprFlags ef;
    auto *epr = app.add_subcommand("epr", "Lossy EPR inputs at fixed target output squeezing");
    epr->add_option("--chi-prime", ef.chi_prime, "Target output squeezing chi'")->required();
    epr->add_option("--eta", ef.eta, "Channel transmission")->required();
    epr->add_option("--g", ef.g, "Single gain value");
    epr->add_option("--g-min", ef.g_min, "Smallest gain");
    epr->add_option("--g-max", ef.g_max, "Largest gain");
    epr->add_option("--g-steps", ef.g_steps, "Number of gain points");
    epr->add_flag("--log", ef.log, "Logarithmic gain spacing");
    epr->add_option("--n", ef.n_list, "Cutoffs, e.g. 1,2,3 or 1..5");
    epr->add_flag("--with-baselines", ef.baselines, "Add unamplified and infinite-squeezing baselines");
    epr->add_option("--no-amp-baseline", ef.no_amp_baseline,
                    "Squeezing for the unamplified baseline: target (chi') or input (chi_in)")
        ->check(CLI::IsMember({"target", "input"}));
    add_common(epr, common);

    OptimizeFlags of;
    auto *opt = app.add_subcommand("optimize", "Minimize the EPR criterion under fidelity/probability floors");
    opt->add_option("--chi-prime", of.chi_prime, "Target output squeezing chi'")->required();
    opt->add_option("--fmin", of.f_min, "Minimum fidelity lower bound");
    opt->add_option("--pmin", of.p_list, "Minimum success probabilities, comma separated");
    opt->add_option("--eta-grid", of.eta_grid, "Transmissions: list or start:stop:count");
    add_common(opt, common);

    ValidateFlags vf;
    auto *val = app.add_subcommand("validate", "Check closed forms against the brute-force oracle");
    val->add_option("--grid", vf.grid, "Parameter grid")->check(CLI::IsMember({"small", "full"}));
    val->add_option("--tol", vf.tol, "Override every tolerance")->check(CLI::PositiveNumber);
    val->add_option("--format", vf.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    add_common(val, common, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kInvalidFlags;
    }

    try {
        std::string text;
        if (*coh) {
            text = cmd_coherent(cf, common);
        } else if (*epr) {
            text = cmd_epr(ef, common);
        } else if (*opt) {
            text = cmd_optimize(of, common);
        } else {
            return cmd_validate(vf, common, out);
        }
        emit(text, common, out);
        return kOk;
    } catch (const FlagError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidFlags;
    } catch (const std::exception &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace nla::cli
