#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gidar/ar.hpp"
#include "gidar/audit.hpp"
#include "gidar/errors.hpp"
#include "gidar/estimate.hpp"
#include "gidar/gid.hpp"
#include "gidar/innovation.hpp"
#include "gidar/io.hpp"

namespace gidar::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FamilyArgs {
    std::string family;
    std::optional<double> lambda, beta, alpha, delta, gamma;
    std::vector<std::string> params;
    std::string exponent;
};

void add_family_options(CLI::App* sub, FamilyArgs& f, bool required) {
    auto* fam = sub->add_option("--family", f.family, "gts, gg, gig or mix")
                    ->check(CLI::IsMember({"gts", "gg", "gig", "mix"}));
    if (required) fam->required();
    sub->add_option("--lambda", f.lambda, "tempered-stable tempering");
    sub->add_option("--beta", f.beta, "tempered-stable index, or gamma rate");
    sub->add_option("--alpha", f.alpha, "gamma shape");
    sub->add_option("--delta", f.delta, "inverse-Gaussian delta");
    sub->add_option("--gamma", f.gamma, "inverse-Gaussian gamma");
    sub->add_option("--params", f.params, "name=value pairs, comma separated")->delimiter(',');
    sub->add_option("--exponent", f.exponent, "exponent as JSON text or a path to a JSON file");
}

double param(const FamilyArgs& f, const std::map<std::string, double>& kv, const std::string& name,
             const std::optional<double>& flag) {
    if (flag) return *flag;
    if (const auto it = kv.find(name); it != kv.end()) return it->second;
    throw UsageError("--family " + f.family + " needs --" + name);
}

LaplaceExponent exponent_from_args(const FamilyArgs& f) {
    if (!f.exponent.empty()) {
        std::string text = f.exponent;
        if (text.find('{') == std::string::npos) {
            std::ifstream in(text);
            if (!in) throw UsageError("cannot open exponent file " + text);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        io::Json j;
        try {
            j = io::Json::parse(text);
        } catch (const std::exception& e) {
            throw UsageError(std::string("--exponent: ") + e.what());
        }
        return io::exponent_from_json(j);
    }
    std::map<std::string, double> kv;
    for (const auto& p : f.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--params entries look like name=value, got " + p);
        try {
            kv[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--params: bad number in " + p);
        }
    }
    if (f.family == "gts") return LaplaceExponent::tempered_stable(param(f, kv, "lambda", f.lambda), param(f, kv, "beta", f.beta));
    if (f.family == "gg") return LaplaceExponent::gamma(param(f, kv, "alpha", f.alpha), param(f, kv, "beta", f.beta));
    if (f.family == "gig") {
        return LaplaceExponent::inverse_gaussian(param(f, kv, "delta", f.delta), param(f, kv, "gamma", f.gamma));
    }
    if (f.family == "mix") throw UsageError("--family mix needs --exponent");
    throw UsageError("--family or --exponent is required");
}

Family family_from_name(const std::string& name) {
    if (name == "gts") return Family::TemperedStable;
    if (name == "gg") return Family::Gamma;
    if (name == "gig") return Family::InverseGaussian;
    throw UsageError("estimation needs --family gts, gg or gig");
}

std::uint64_t default_seed() {
    const char* env = std::getenv("GIDAR_SEED");
    if (!env || !*env) return 1;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("GIDAR_SEED must be a nonnegative integer, got ") + env);
    }
}

std::vector<double> parse_grid(const std::string& spec, bool log_spacing) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("--grid expects a:b:n");
    double a = 0, b = 0;
    long n = 0;
    try {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--grid: cannot parse " + spec);
    }
    if (n < 1 || !(a > 0.0) || !(b >= a)) throw UsageError("--grid needs 0 < a <= b and n >= 1");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double w = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        xs[static_cast<std::size_t>(i)] = log_spacing ? a * std::pow(b / a, w) : a + (b - a) * w;
    }
    return xs;
}

// Writes to --out when given, else to `fallback`.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path);
    write(os);
    if (!os) throw Error("write failed for " + path);
}

InnovationLaw innovation_from_args(const std::string& kind, double theta, const LaplaceExponent& g) {
    if (kind == "geometric") return InnovationLaw::geometric_scale(theta, g);
    return InnovationLaw::ratio(theta, g);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geometric infinitely divisible laws and AR(1) models"};
    app.require_subcommand(1);
    std::string active = "gidar";

    try {
        const std::uint64_t seed_default = default_seed();

        // sample
        FamilyArgs sf;
        std::size_t s_n = 1000;
        std::uint64_t s_seed = seed_default;
        std::optional<double> s_theta;
        std::string s_kind = "geometric", s_out;
        bool s_override = false;
        auto* sample = app.add_subcommand("sample", "draw from a gid law or an innovation law");
        add_family_options(sample, sf, false);
        sample->add_option("--n", s_n, "number of draws")->check(CLI::PositiveNumber);
        sample->add_option("--seed", s_seed, "seed (default $GIDAR_SEED or 1)");
        sample->add_option("--theta", s_theta, "sample innovations with this theta instead of the marginal");
        sample->add_option("--innovation", s_kind, "geometric or ratio")
            ->check(CLI::IsMember({"geometric", "ratio"}));
        sample->add_flag("--override-validity", s_override, "moment-matched surrogate for invalid ratio laws");
        sample->add_option("--out", s_out, "output CSV (default stdout)");

        // pdf
        FamilyArgs pf;
        double p_theta = 1.0;
        std::string p_grid = "0.01:10:200", p_method = "auto", p_out;
        bool p_log = false;
        auto* pdf = app.add_subcommand("pdf", "density of the geometric-scale innovation law on a grid");
        add_family_options(pdf, pf, false);
        pdf->add_option("--theta", p_theta, "scale theta in (0, 1]; 1 gives the marginal");
        pdf->add_option("--grid", p_grid, "a:b:n");
        pdf->add_flag("--log-grid", p_log, "geometric spacing");
        pdf->add_option("--method", p_method, "auto, formula or numeric")
            ->check(CLI::IsMember({"auto", "formula", "numeric"}));
        pdf->add_option("--out", p_out, "output CSV (default stdout)");

        // simulate
        FamilyArgs mf;
        std::string m_model = "rc1", m_out;
        double m_theta = 0.3;
        std::vector<double> m_thetas;
        std::size_t m_n = 1000, m_burn = 1000;
        std::uint64_t m_seed = seed_default;
        bool m_override = false, m_serial = false;
        auto* simulate = app.add_subcommand("simulate", "simulate an AR series with gid marginals");
        add_family_options(simulate, mf, false);
        simulate->add_option("--model", m_model, "rc1, rck or linear")
            ->check(CLI::IsMember({"rc1", "rck", "linear"}));
        simulate->add_option("--theta", m_theta, "theta");
        simulate->add_option("--thetas", m_thetas, "rck lag probabilities, comma separated")->delimiter(',');
        simulate->add_option("--n", m_n, "series length")->check(CLI::PositiveNumber);
        simulate->add_option("--burn-in", m_burn, "discarded leading steps");
        simulate->add_option("--seed", m_seed, "seed (default $GIDAR_SEED or 1)");
        simulate->add_flag("--override-validity", m_override, "moment-matched surrogate for invalid ratio laws");
        simulate->add_flag("--serial", m_serial, "draw innovations serially");
        simulate->add_option("--out", m_out, "output CSV (default stdout)");

        // estimate
        std::string e_in, e_family, e_out;
        bool e_intercept = false;
        auto* estimate_cmd = app.add_subcommand("estimate", "CLS and moment estimates for the linear model");
        estimate_cmd->add_option("--in", e_in, "series CSV")->required();
        estimate_cmd->add_option("--family", e_family, "gts, gg or gig")->required()
            ->check(CLI::IsMember({"gts", "gg", "gig"}));
        estimate_cmd->add_flag("--with-intercept", e_intercept, "least-squares slope with intercept");
        estimate_cmd->add_option("--out", e_out, "output JSON (default stdout)");

        // study
        std::string st_config, st_out, st_summary;
        std::optional<std::size_t> st_reps;
        std::optional<std::uint64_t> st_seed;
        bool st_serial = false, st_override = false, st_intercept = false;
        auto* study = app.add_subcommand("study", "repeated simulate-and-estimate study");
        study->add_option("--config", st_config, "study JSON")->required();
        study->add_option("--replicates", st_reps, "override the replicate count");
        study->add_option("--seed", st_seed, "override the seed");
        study->add_flag("--override-validity", st_override, "moment-matched surrogate for invalid ratio laws");
        study->add_flag("--with-intercept", st_intercept, "least-squares slope with intercept");
        study->add_flag("--serial", st_serial, "run replicates serially");
        study->add_option("--out", st_out, "per-replicate CSV (default stdout)");
        study->add_option("--summary", st_summary, "summary JSON");

        // audit
        std::string a_out;
        auto* audit = app.add_subcommand("audit", "published formulas against derivations and oracles");
        audit->add_option("--out", a_out, "output CSV (default stdout)");

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out << app.help();
                return 0;
            }
            err << "usage error: " << e.what() << "\n";
            return 2;
        }

        if (sample->parsed()) {
            active = "sample";
            const auto g = exponent_from_args(sf);
            const numerics::RngStream stream(s_seed, 0);
            std::vector<double> xs;
            if (s_theta) {
                xs = innovation_from_args(s_kind, *s_theta, g).sample(s_n, stream, s_override);
            } else {
                xs = GidDistribution(g).sample(s_n, stream);
            }
            emit(s_out, out, [&](std::ostream& os) {
                io::write_csv_row(os, {"y"});
                for (double x : xs) io::write_csv_row(os, {io::format_double(x)});
            });
        } else if (pdf->parsed()) {
            active = "pdf";
            const auto g = exponent_from_args(pf);
            const auto law = InnovationLaw::geometric_scale(p_theta, g);
            const auto xs = parse_grid(p_grid, p_log);
            const bool has_formula = g.family() == Family::TemperedStable || g.family() == Family::Gamma ||
                                     g.family() == Family::InverseGaussian;
            if (p_method == "formula" && !has_formula) throw UsageError("--method formula needs gts, gg or gig");
            const bool formula = p_method == "formula" || (p_method == "auto" && has_formula);
            emit(p_out, out, [&](std::ostream& os) {
                io::write_csv_row(os, {"x", "pdf"});
                for (double x : xs) {
                    const double f = formula ? law.pdf_formula(x) : law.pdf_numeric(x);
                    io::write_csv_row(os, {io::format_double(x), io::format_double(f)});
                }
            });
        } else if (simulate->parsed()) {
            active = "simulate";
            const auto g = exponent_from_args(mf);
            ArSpec spec{RandomCoeff1{m_theta}, g};
            if (m_model == "rck") {
                if (m_thetas.empty()) throw UsageError("--model rck needs --thetas");
                spec.kind = RandomCoeffK{m_theta, m_thetas};
            } else if (m_model == "linear") {
                spec.kind = Linear1{m_theta};
            }
            if (!m_thetas.empty() && m_model != "rck") throw UsageError("--thetas only applies to --model rck");
            const ArSimulator sim(spec.kind, g, m_burn, m_override);
            if (sim.uses_surrogate()) {
                err << "warning: innovation transform is not a distribution; using the moment-matched surrogate\n";
            }
            const auto ys = sim.simulate(m_n, numerics::RngStream(m_seed, 0), !m_serial);
            emit(m_out, out, [&](std::ostream& os) {
                io::write_csv_row(os, {"t", "y"});
                for (std::size_t t = 0; t < ys.size(); ++t) io::write_csv_row(os, {std::to_string(t + 1), io::format_double(ys[t])});
            });
        } else if (estimate_cmd->parsed()) {
            active = "estimate";
            const auto series = io::read_series_file(e_in);
            const auto res = estimate(series, family_from_name(e_family), e_intercept);
            emit(e_out, out, [&](std::ostream& os) { os << io::to_json(res).dump(2) << "\n"; });
        } else if (study->parsed()) {
            active = "study";
            std::ifstream in(st_config);
            if (!in) throw UsageError("cannot open " + st_config);
            io::Json j;
            try {
                j = io::Json::parse(in);
            } catch (const std::exception& e) {
                throw UsageError(st_config + ": " + e.what());
            }
            StudyConfig cfg;
            try {
                cfg = io::study_config_from_json(j);
            } catch (const DomainError& e) {
                throw UsageError(st_config + ": " + e.what());
            }
            if (st_reps) cfg.replicates = *st_reps;
            if (st_seed) cfg.seed = *st_seed;
            if (st_override) cfg.allow_invalid = true;
            if (st_intercept) cfg.with_intercept = true;
            const auto rep = run_study(cfg, st_serial ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel);
            emit(st_out, out, [&](std::ostream& os) {
                io::write_csv_row(os, {"replicate", "theta_hat", "param1_hat", "param2_hat", "converged"});
                for (const auto& r : rep.replicates) {
                    io::write_csv_row(os, {std::to_string(r.replicate), io::format_double(r.theta_hat),
                                           io::format_double(r.param1_hat), io::format_double(r.param2_hat),
                                           r.converged ? "true" : "false"});
                }
            });
            io::Json summary = {{"config", io::study_config_to_json(cfg)},
                                {"failures", rep.failures},
                                {"surrogate_innovations", rep.surrogate_innovations}};
            for (const auto* s : {&rep.theta, &rep.param1, &rep.param2}) {
                summary["parameters"].push_back({{"name", s->name}, {"mean", s->mean}, {"sd", s->sd}, {"q1", s->q1},
                                                 {"median", s->median}, {"q3", s->q3}, {"count", s->count}});
            }
            if (!st_summary.empty()) {
                emit(st_summary, out, [&](std::ostream& os) { os << summary.dump(2) << "\n"; });
            }
            if (!st_out.empty()) {
                for (const auto* s : {&rep.theta, &rep.param1, &rep.param2}) {
                    out << s->name << ": mean " << s->mean << ", sd " << s->sd << "\n";
                }
                out << "failures: " << rep.failures << "\n";
            }
        } else if (audit->parsed()) {
            active = "audit";
            const auto items = run_audit();
            emit(a_out, out, [&](std::ostream& os) {
                io::write_csv_row(os, {"item", "stated", "derived", "oracle", "stated_rel_err", "derived_rel_err", "status"});
                for (const auto& it : items) {
                    io::write_csv_row(os, {it.item, io::format_double(it.stated), io::format_double(it.derived),
                                           io::format_double(it.oracle), io::format_double(it.stated_rel_err),
                                           io::format_double(it.derived_rel_err), it.status});
                }
            });
            if (audit_failures(items) > 0) {
                err << "error: audit: " << audit_failures(items) << " derived formula(s) miss their oracle\n";
                return 1;
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << active << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << active << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gidar::cli
