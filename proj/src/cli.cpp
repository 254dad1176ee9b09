#include "equical/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "equical/calibration.hpp"
#include "equical/equipoise.hpp"
#include "equical/gs_design.hpp"
#include "equical/numerics.hpp"
#include "equical/odds.hpp"
#include "equical/prop_design.hpp"
#include "equical/sim_oracle.hpp"
#include "equical/tables.hpp"

namespace equical {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Display style: large odds as integers, small ones with decimals.
std::string show_odds(double v) {
    std::ostringstream os;
    if (!std::isfinite(v)) return "inf";
    if (v >= 20.0)
        os << std::fixed << std::setprecision(0) << v;
    else if (v >= 1.0)
        os << std::fixed << std::setprecision(1) << v;
    else
        os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

std::string show_percentile(double p) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << 100.0 * p << '%';
    return os.str();
}

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const std::string& key : allowed)
            if (it.key() == key) known = true;
        if (!known)
            throw SpecError("unknown key '" + it.key() + "' in " + where);
    }
}

double get_probability(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw SpecError("missing key '" + key + "' in " + where);
    double v = obj.at(key).get<double>();
    if (!(v > 0.0 && v < 1.0))
        throw SpecError("'" + key + "' in " + where + " must lie in (0,1)");
    return v;
}

double get_positive(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw SpecError("missing key '" + key + "' in " + where);
    double v = obj.at(key).get<double>();
    if (!(v > 0.0)) throw SpecError("'" + key + "' in " + where + " must be positive");
    return v;
}

EquipoiseModel model_from_name(const std::string& name) {
    if (name == "bp11") return bp11();
    if (name == "bp0505") return bp0505();
    if (name == "bp12") return bp12();
    throw SpecError("unknown equipoise model '" + name + "' (use bp11, bp0505, bp12)");
}

struct GsSpecParsed {
    GroupSequentialDesign design;
    double accrual_months;  // used only by simulation
};

GsSpecParsed parse_gs(const json& obj, const std::string& where) {
    require_keys(obj,
                 {"fwer", "hr_alt", "soc_median_months", "info_fractions", "power",
                  "n_total", "event_fractions", "accrual_months"},
                 where);
    double fwer = get_probability(obj, "fwer", where);
    double hr_alt = get_positive(obj, "hr_alt", where);
    double soc_median = get_positive(obj, "soc_median_months", where);
    if (!obj.contains("info_fractions"))
        throw SpecError("missing key 'info_fractions' in " + where);
    std::vector<double> fractions = obj.at("info_fractions").get<std::vector<double>>();

    std::int64_t n_total = obj.value("n_total", std::int64_t{0});
    double accrual = obj.value("accrual_months", 24.0);
    if (!(accrual > 0.0)) throw SpecError(where + ": accrual_months must be positive");

    if (obj.contains("event_fractions")) {
        if (!obj.contains("n_total"))
            throw SpecError(where + ": event_fractions requires n_total");
        std::vector<double> efr = obj.at("event_fractions").get<std::vector<double>>();
        if (efr.size() != fractions.size())
            throw SpecError(where + ": one event fraction per analysis required");
        std::vector<std::int64_t> events;
        for (double f : efr) {
            if (!(f > 0.0 && f <= 1.0))
                throw SpecError(where + ": event fractions must lie in (0,1]");
            events.push_back(std::llround(f * static_cast<double>(n_total)));
        }
        double power_target = obj.contains("power")
                                  ? get_probability(obj, "power", where)
                                  : std::nan("");
        return {design_from_events(fwer, hr_alt, soc_median, n_total, fractions,
                                   events, power_target),
                accrual};
    }
    double power = get_probability(obj, "power", where);
    return {design_from_power(fwer, hr_alt, soc_median, fractions, power, n_total),
            accrual};
}

TwoProportionDesign parse_two_prop(const json& obj, const std::string& where) {
    require_keys(obj, {"p_soc", "p_inv", "alpha", "power", "n_per_arm"}, where);
    double p_soc = get_probability(obj, "p_soc", where);
    double p_inv = get_probability(obj, "p_inv", where);
    double alpha = get_probability(obj, "alpha", where);
    if (obj.contains("n_per_arm")) {
        auto n = obj.at("n_per_arm").get<std::int64_t>();
        if (n < 2) throw SpecError(where + ": n_per_arm must be at least 2");
        return {p_soc, p_inv, alpha, power_two_props(p_soc, p_inv, alpha, n), n,
                critical_difference(p_soc, p_inv, alpha, n)};
    }
    double power = get_probability(obj, "power", where);
    return design_two_props(p_soc, p_inv, alpha, power);
}

struct CdpSpecParsed {
    TwoProportionDesign phase2;
    // Nominal phase 2 operating characteristics; the odds algebra uses the
    // requested power, not the integer-n achieved one.
    OperatingCharacteristics phase2_oc;
    GsSpecParsed phase3;
    JointEquipoiseModel equipoise;
    double prior_odds;
};

CdpSpecParsed parse_cdp(const json& obj) {
    require_keys(obj, {"phase2", "phase3", "prior_odds", "equipoise"}, "cdp spec");
    if (!obj.contains("phase2") || !obj.contains("phase3"))
        throw SpecError("cdp spec needs 'phase2' and 'phase3'");
    TwoProportionDesign phase2 = parse_two_prop(obj.at("phase2"), "phase2");
    OperatingCharacteristics phase2_oc{phase2.alpha_one_sided, phase2.power};
    if (obj.at("phase2").contains("power"))
        phase2_oc.power = get_probability(obj.at("phase2"), "power", "phase2");
    CdpSpecParsed parsed{phase2,
                         phase2_oc,
                         parse_gs(obj.at("phase3"), "phase3"),
                         {bp11(), bp11()},
                         obj.value("prior_odds", 1.0)};
    if (!(parsed.prior_odds > 0.0)) throw SpecError("prior_odds must be positive");
    if (obj.contains("equipoise")) {
        const json& eq = obj.at("equipoise");
        require_keys(eq, {"phase2", "phase3"}, "equipoise");
        auto read_model = [](const json& arr, const std::string& where) {
            std::vector<double> ab = arr.get<std::vector<double>>();
            if (ab.size() != 2 || !(ab[0] > 0.0) || !(ab[1] > 0.0))
                throw SpecError(where + ": equipoise model needs two positive shapes");
            return EquipoiseModel{ab[0], ab[1]};
        };
        if (eq.contains("phase2"))
            parsed.equipoise.phase2 = read_model(eq.at("phase2"), "equipoise.phase2");
        if (eq.contains("phase3"))
            parsed.equipoise.phase3 = read_model(eq.at("phase3"), "equipoise.phase3");
    }
    return parsed;
}

void report_gs(const GroupSequentialDesign& design, std::ostream& out) {
    out << "group-sequential design: FWER " << show_percentile(design.fwer)
        << " (two-sided), HR alt " << design.hr_alt << ", SOC median "
        << design.soc_median_months << " months";
    if (design.n_total > 0) out << ", N " << design.n_total;
    out << '\n';
    for (std::size_t k = 0; k < design.analyses.size(); ++k) {
        const GSAnalysis& a = design.analyses[k];
        std::ostringstream zs;
        zs << std::fixed << std::setprecision(3) << a.z_boundary;
        std::ostringstream cvs;
        cvs << std::fixed << std::setprecision(2) << a.hr_critical;
        out << "  analysis " << (k + 1) << ": info " << a.info_fraction << ", events "
            << a.events << ", z " << zs.str() << ", HR CV " << cvs.str() << '\n';
    }
    out << "realized cumulative power: " << show_percentile(cumulative_power(design))
        << " (target " << show_percentile(design.power_target) << ")\n";

    AnalysisLikelihoodRatios lr = analysis_likelihood_ratios(design);
    EquipoiseModel reference = bp11();
    out << "post-study odds under 1:1 prior odds:\n";
    for (std::size_t k = 0; k < lr.positive.size(); ++k) {
        out << "  positive at analysis " << (k + 1) << ": r10 = "
            << show_odds(lr.positive[k]) << "  [BP(1,1) percentile "
            << show_percentile(odds_cdf(reference, lr.positive[k])) << "]\n";
    }
    out << "  negative: r01 = " << show_odds(lr.negative) << "  [BP(1,1) percentile "
        << show_percentile(odds_cdf(reference, lr.negative)) << "]\n";
}

void report_two_prop(const TwoProportionDesign& design, std::ostream& out) {
    out << "two-proportion design: PFS9 " << show_percentile(design.p_soc) << " vs "
        << show_percentile(design.p_inv) << ", one-sided alpha "
        << show_percentile(design.alpha_one_sided) << '\n';
    out << "  n per arm " << design.n_per_arm << " (total " << 2 * design.n_per_arm
        << "), achieved power " << show_percentile(design.power) << '\n';
    std::ostringstream cvs;
    cvs << std::fixed << std::setprecision(3) << design.critical_difference;
    out << "  critical difference " << cvs.str() << '\n';

    OperatingCharacteristics oc{design.alpha_one_sided, design.power};
    if (!oc.informative()) out << "warning: outcome is anti-informative\n";
    EquipoiseModel reference = bp11();
    PostStudyOdds pos = post_odds_positive(oc);
    PostStudyOdds neg = post_odds_negative(oc);
    out << "post-study odds under 1:1 prior odds:\n";
    out << "  positive: r10 = " << show_odds(pos.value) << "  [BP(1,1) percentile "
        << show_percentile(odds_cdf(reference, pos.value)) << "]\n";
    out << "  negative: r01 = " << show_odds(neg.value) << "  [BP(1,1) percentile "
        << show_percentile(odds_cdf(reference, neg.value)) << "]\n";
}

void report_cdp(const CdpSpecParsed& spec, std::ostream& out) {
    report_two_prop(spec.phase2, out);
    out << '\n';
    report_gs(spec.phase3.design, out);
    out << '\n';

    AnalysisLikelihoodRatios lr3 = analysis_likelihood_ratios(spec.phase3.design);
    CdpOddsReport odds =
        cdp_odds(spec.phase2_oc, lr3.positive, lr3.negative, spec.prior_odds);

    auto joint_pct = [&spec](double v) {
        return show_percentile(product_cdf(spec.equipoise, v));
    };
    out << "CDP post-study odds (prior " << spec.prior_odds << ":1):\n";
    for (std::size_t k = 0; k < odds.r10_pp.size(); ++k)
        out << "  r10(+2,+3) analysis " << (k + 1) << ": "
            << show_odds(odds.r10_pp[k].value) << "  [joint percentile "
            << joint_pct(odds.r10_pp[k].value) << "]\n";
    out << "  r01(+2,-3): " << show_odds(odds.r01_pn.value) << "  [joint percentile "
        << joint_pct(odds.r01_pn.value) << "]\n";
    for (std::size_t k = 0; k < odds.r10_np.size(); ++k)
        out << "  r10(-2,+3) analysis " << (k + 1) << ": "
            << show_odds(odds.r10_np[k].value) << "  [joint percentile "
            << joint_pct(odds.r10_np[k].value) << "]\n";
    out << "  r01(-2,-3): " << show_odds(odds.r01_nn.value) << "  [joint percentile "
        << joint_pct(odds.r01_nn.value) << "]\n";
}

void append_gs_simulation(const GroupSequentialDesign& design, double accrual_months,
                          std::int64_t replicates, std::uint64_t seed,
                          std::ostream& out) {
    if (design.n_total <= 0)
        throw SpecError("simulation requires n_total in the design spec");
    AccrualModel acc{accrual_months, 42.0};
    out << "\nsimulation (" << replicates << " replicates, seed " << seed << "):\n";
    for (double hr : {1.0, design.hr_alt}) {
        SimulationReport rep = simulate_gs_tte(design, hr, acc, replicates, seed);
        out << "  true HR " << hr << ":\n";
        for (std::size_t i = 0; i < rep.names.size(); ++i)
            out << "    " << rep.names[i] << " = " << rep.estimates[i] << " (se "
                << rep.standard_errors[i] << ")\n";
    }
}

void append_two_prop_simulation(const TwoProportionDesign& design,
                                std::int64_t replicates, std::uint64_t seed,
                                std::ostream& out) {
    out << "\nsimulation (" << replicates << " replicates, seed " << seed << "):\n";
    SimulationReport null_rep =
        simulate_two_prop(design, design.p_soc, design.p_soc, replicates, seed);
    SimulationReport alt_rep =
        simulate_two_prop(design, design.p_soc, design.p_inv, replicates, seed);
    out << "  rejection under null: " << null_rep.estimates[0] << " (se "
        << null_rep.standard_errors[0] << ")\n";
    out << "  rejection under alternative: " << alt_rep.estimates[0] << " (se "
        << alt_rep.standard_errors[0] << ")\n";
}

int cmd_reproduce(const std::string& target, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
    std::string csv;
    if (target == "table1")
        csv = table1_csv();
    else if (target == "table2")
        csv = table2_csv();
    else if (target == "table3")
        csv = table3_csv();
    else if (target == "table4")
        csv = table4_csv();
    else if (target == "figure1")
        csv = figure1_csv();
    else {
        err << "error: unknown reproduce target '" << target
            << "' (expected table1..table4 or figure1)\n";
        return kExitUsage;
    }

    std::string path = out_path.empty() ? target + ".csv" : out_path;
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kExitIo;
    }
    file << csv;
    file.close();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return kExitIo;
    }
    out << "wrote " << path << '\n';
    return kExitOk;
}

int cmd_eval(const std::string& spec_path, std::int64_t simulate, std::uint64_t seed,
             std::ostream& out, std::ostream& err) {
    std::ifstream file(spec_path);
    if (!file) {
        err << "error: cannot read spec file '" << spec_path << "'\n";
        return kExitIo;
    }
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        err << "error: " << spec_path << ": " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (doc.value("schema", "") != std::string("equical/1"))
            throw SpecError("spec must declare \"schema\": \"equical/1\"");
        std::string type = doc.value("type", "");
        json body = doc;
        body.erase("schema");
        body.erase("type");

        if (type == "gs") {
            GsSpecParsed gs = parse_gs(body, "gs spec");
            report_gs(gs.design, out);
            if (simulate > 0)
                append_gs_simulation(gs.design, gs.accrual_months, simulate, seed, out);
        } else if (type == "two_prop") {
            TwoProportionDesign design = parse_two_prop(body, "two_prop spec");
            report_two_prop(design, out);
            if (simulate > 0) append_two_prop_simulation(design, simulate, seed, out);
        } else if (type == "cdp") {
            CdpSpecParsed spec = parse_cdp(body);
            report_cdp(spec, out);
            if (simulate > 0) {
                append_two_prop_simulation(spec.phase2, simulate, seed, out);
                append_gs_simulation(spec.phase3.design, spec.phase3.accrual_months,
                                     simulate, seed, out);
            }
        } else {
            throw SpecError("'type' must be one of gs, two_prop, cdp");
        }
    } catch (const SpecError& e) {
        err << "error: " << spec_path << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: " << spec_path << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << spec_path << ": " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_calibrate(const std::string& model_name, double percentile,
                  std::optional<double> alpha, std::optional<double> power,
                  const std::string& direction, std::ostream& out, std::ostream& err) {
    if (alpha.has_value() == power.has_value()) {
        err << "error: supply exactly one of --alpha or --power\n";
        return kExitUsage;
    }
    if (!(percentile > 0.0 && percentile < 1.0)) {
        err << "error: percentile must lie in (0,1)\n";
        return kExitUsage;
    }

    EquipoiseModel model = model_from_name(model_name);
    Direction dir = direction == "neg" ? Direction::negative : Direction::positive;
    CalibrationTarget target{model, percentile, dir};
    double threshold = odds_quantile(model, percentile);

    out << "model " << model_name << "  percentile " << show_percentile(percentile)
        << "  direction " << (dir == Direction::negative ? "-" : "+") << '\n';
    out << "odds threshold: " << show_odds(threshold) << '\n';

    if (alpha) {
        if (!(*alpha > 0.0 && *alpha < 1.0)) {
            err << "error: alpha must lie in (0,1)\n";
            return kExitUsage;
        }
        PowerRequirement req = dir == Direction::negative
                                   ? required_negative_power(*alpha, target)
                                   : required_power(*alpha, target);
        if (req.feasible()) {
            out << "required power at alpha " << *alpha << ": "
                << show_percentile(*req.power) << '\n';
        } else {
            out << "INFEASIBLE: no power in (0,1] reaches the threshold at alpha "
                << *alpha << "; max alpha " << show_percentile(req.limiting_alpha)
                << '\n';
        }
    } else {
        if (!(*power > 0.0 && *power <= 1.0)) {
            err << "error: power must lie in (0,1]\n";
            return kExitUsage;
        }
        out << "max alpha at power cap " << *power << ": "
            << show_percentile(max_alpha(target, *power)) << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"equipoise calibration of clinical trial designs"};
    app.require_subcommand(1);

    std::string target, out_path;
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "regenerate a reference table as CSV");
    reproduce->add_option("target", target, "table1..table4 or figure1")->required();
    reproduce->add_option("-o,--out", out_path, "output path (default <target>.csv)");

    std::string spec_path;
    std::int64_t simulate = 0;
    std::uint64_t seed = 20260810;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a JSON design spec");
    eval->add_option("--spec", spec_path, "design spec file")->required();
    eval->add_option("--simulate", simulate, "append Monte Carlo replicates");
    eval->add_option("--seed", seed, "simulation seed");

    std::string model_name = "bp11", direction = "pos";
    double percentile = 0.95;
    std::optional<double> alpha, power;
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "solve power or alpha for a percentile target");
    calibrate->add_option("--model", model_name, "bp11, bp0505 or bp12");
    calibrate->add_option("--percentile", percentile, "equipoise percentile")->required();
    calibrate->add_option("--alpha", alpha, "false positive rate");
    calibrate->add_option("--power", power, "power cap");
    calibrate->add_option("--direction", direction, "pos or neg");

    std::vector<const char*> argv;
    argv.push_back("equical");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (reproduce->parsed()) return cmd_reproduce(target, out_path, out, err);
        if (eval->parsed()) return cmd_eval(spec_path, simulate, seed, out, err);
        if (calibrate->parsed())
            return cmd_calibrate(model_name, percentile, alpha, power, direction, out, err);
    } catch (const NonConvergenceError& e) {
        err << "error: numerical non-convergence: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace equical
