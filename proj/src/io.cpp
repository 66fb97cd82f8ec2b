#include "gidar/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <variant>

#include "gidar/errors.hpp"

namespace gidar::io {

namespace {

bool needs_quotes(const std::string& f) {
    return f.find_first_of(",\"\r\n") != std::string::npos;
}

void require_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw DomainError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw DomainError(where + ": unknown key \"" + key + "\"");
    }
}

double number(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw DomainError(where + ": missing \"" + key + "\"");
    if (!j.at(key).is_number()) throw DomainError(where + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

template <class T>
T count_or(const Json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw DomainError("study config: \"" + key + "\" must be an integer");
    }
    if (v.is_number_integer() && v.get<long long>() < 0) {
        throw DomainError("study config: \"" + key + "\" must be nonnegative");
    }
    return v.get<T>();
}

bool flag_or(const Json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw DomainError("study config: \"" + key + "\" must be true or false");
    return j.at(key).get<bool>();
}

}  // namespace

void write_csv_row(std::ostream& os, const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        const std::string& f = row[i];
        if (!needs_quotes(f)) {
            os << f;
            continue;
        }
        os << '"';
        for (char c : f) {
            if (c == '"') os << '"';
            os << c;
        }
        os << '"';
    }
    os << '\n';
}

void write_csv(std::ostream& os, const CsvRow& header, const std::vector<CsvRow>& rows) {
    write_csv_row(os, header);
    for (const auto& r : rows) write_csv_row(os, r);
}

std::vector<CsvRow> read_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false, any = false;
    char c;
    const auto end_row = [&] {
        row.push_back(field);
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };
    while (is.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (is.peek() == '"') {
                    is.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': quoted = true; any = true; break;
            case ',': row.push_back(field); field.clear(); any = true; break;
            case '\r': break;
            case '\n': end_row(); break;
            default: field += c; any = true;
        }
    }
    if (quoted) throw DomainError("read_csv: unterminated quoted field");
    if (any || !field.empty()) end_row();
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> read_series(std::istream& is) {
    const auto rows = read_csv(is);
    if (rows.size() < 2) throw DomainError("read_series: need a header and at least one row");
    const CsvRow& header = rows.front();
    std::size_t col = header.size() - 1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "y") col = i;
    }
    std::vector<double> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() == 1 && rows[r][0].empty()) continue;
        if (col >= rows[r].size()) throw DomainError("read_series: row " + std::to_string(r + 1) + " is short");
        const std::string& f = rows[r][col];
        double v = 0.0;
        const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
        if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
            throw DomainError("read_series: row " + std::to_string(r + 1) + ": \"" + f + "\" is not a number");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> read_series_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    return read_series(in);
}

LaplaceExponent exponent_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
        throw DomainError("exponent: expected an object with a string \"family\"");
    }
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "tempered_stable" || fam == "gts") {
        require_keys(j, {"family", "lambda", "beta"}, "tempered_stable");
        return LaplaceExponent::tempered_stable(number(j, "lambda", fam), number(j, "beta", fam));
    }
    if (fam == "gamma" || fam == "gg") {
        require_keys(j, {"family", "alpha", "beta"}, "gamma");
        return LaplaceExponent::gamma(number(j, "alpha", fam), number(j, "beta", fam));
    }
    if (fam == "inverse_gaussian" || fam == "gig") {
        require_keys(j, {"family", "delta", "gamma"}, "inverse_gaussian");
        return LaplaceExponent::inverse_gaussian(number(j, "delta", fam), number(j, "gamma", fam));
    }
    if (fam == "mixture" || fam == "mix") {
        require_keys(j, {"family", "c", "g1", "g2"}, "mixture");
        if (!j.contains("g1") || !j.contains("g2")) throw DomainError("mixture: needs \"g1\" and \"g2\"");
        return LaplaceExponent::mixture(number(j, "c", fam), exponent_from_json(j.at("g1")),
                                        exponent_from_json(j.at("g2")));
    }
    if (fam == "scaled") {
        require_keys(j, {"family", "theta", "inner"}, "scaled");
        if (!j.contains("inner")) throw DomainError("scaled: needs \"inner\"");
        return LaplaceExponent::scaled(number(j, "theta", fam), exponent_from_json(j.at("inner")));
    }
    throw DomainError("exponent: unknown family \"" + fam + "\"");
}

Json exponent_to_json(const LaplaceExponent& g) {
    struct Visitor {
        Json operator()(const TemperedStable& p) const {
            return {{"family", "tempered_stable"}, {"lambda", p.lambda}, {"beta", p.beta}};
        }
        Json operator()(const GammaExponent& p) const {
            return {{"family", "gamma"}, {"alpha", p.alpha}, {"beta", p.beta_rate}};
        }
        Json operator()(const InverseGaussian& p) const {
            return {{"family", "inverse_gaussian"}, {"delta", p.delta}, {"gamma", p.gamma}};
        }
        Json operator()(const Mixture& p) const {
            return {{"family", "mixture"}, {"c", p.c}, {"g1", exponent_to_json(*p.g1)}, {"g2", exponent_to_json(*p.g2)}};
        }
        Json operator()(const Scaled& p) const {
            return {{"family", "scaled"}, {"theta", p.theta}, {"inner", exponent_to_json(*p.inner)}};
        }
    };
    return std::visit(Visitor{}, g.node());
}

StudyConfig study_config_from_json(const Json& j) {
    require_keys(j,
                 {"exponent", "theta", "replicates", "length", "burn_in", "seed", "with_intercept",
                  "override_validity"},
                 "study config");
    if (!j.contains("exponent")) throw DomainError("study config: missing \"exponent\"");
    StudyConfig c;
    c.base = exponent_from_json(j.at("exponent"));
    if (j.contains("theta")) c.theta = number(j, "theta", "study config");
    c.replicates = count_or<std::size_t>(j, "replicates", c.replicates);
    c.length = count_or<std::size_t>(j, "length", c.length);
    c.burn_in = count_or<std::size_t>(j, "burn_in", c.burn_in);
    c.seed = count_or<std::uint64_t>(j, "seed", c.seed);
    c.with_intercept = flag_or(j, "with_intercept", c.with_intercept);
    c.allow_invalid = flag_or(j, "override_validity", c.allow_invalid);
    if (c.replicates == 0) throw DomainError("study config: \"replicates\" must be at least 1");
    if (c.length < 3) throw DomainError("study config: \"length\" must be at least 3");
    if (!(c.theta >= 0.0 && c.theta < 1.0)) throw DomainError("study config: \"theta\" must lie in [0, 1)");
    return c;
}

Json study_config_to_json(const StudyConfig& c) {
    return {{"exponent", exponent_to_json(c.base)}, {"theta", c.theta},       {"replicates", c.replicates},
            {"length", c.length},                   {"burn_in", c.burn_in},   {"seed", c.seed},
            {"with_intercept", c.with_intercept},   {"override_validity", c.allow_invalid}};
}

Json to_json(const EstimationResult& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.family_params) params[k] = v;
    return {{"theta_hat", r.theta_hat},
            {"family_params", params},
            {"m1_hat", r.m1_hat},
            {"m2_hat", r.m2_hat},
            {"solver", {{"iterations", r.solver.iterations}, {"residual", r.solver.residual}, {"converged", r.solver.converged}}},
            {"in_domain", r.in_domain},
            {"diagnostic", r.diagnostic},
            {"n", r.n}};
}

}  // namespace gidar::io
