#include "decentral/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "decentral/digest.hpp"
#include "decentral/format.hpp"

namespace decentral {

void Provenance::add_input(const std::string& label, const std::filesystem::path& path) {
    inputs.emplace_back(label, sha256_file(path));
}

void Provenance::add_flag(std::string name, std::string value) {
    flags.emplace_back(std::move(name), std::move(value));
}

void Provenance::write(std::ostream& out, std::string_view prefix) const {
    out << prefix << "provenance\n";
    for (const auto& [label, digest] : inputs) out << prefix << "input " << label << " sha256=" << digest << '\n';
    for (const auto& [name, value] : flags) out << prefix << "flag " << name << '=' << value << '\n';
    out << prefix << "seed " << seed << '\n';
}

void TextTable::write_markdown(std::ostream& out) const {
    auto row_out = [&](const std::vector<std::string>& cells) {
        out << '|';
        for (std::size_t i = 0; i < header.size(); ++i) out << ' ' << (i < cells.size() ? cells[i] : "") << " |";
        out << '\n';
    };
    row_out(header);
    out << '|';
    for (std::size_t i = 0; i < header.size(); ++i) out << (i == 0 ? " :--- |" : " ---: |");
    out << '\n';
    for (const auto& r : rows) row_out(r);
}

std::string format_estimate(const Coefficient& c) {
    return format_fixed(c.estimate, 3) + stars(c.p_value);
}

std::string format_std_error(const Coefficient& c) {
    return "(" + format_fixed(c.std_error, 3) + ")";
}

TextTable regression_table(const std::vector<std::string>& column_labels, const std::vector<RegressionResult>& models) {
    TextTable t;
    t.header.push_back("");
    for (const auto& l : column_labels) t.header.push_back(l);

    std::vector<std::string> names;
    for (const auto& m : models) {
        for (const auto& c : m.coefficients) {
            if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
        }
    }
    // Intercepts go to the bottom of the coefficient block.
    std::stable_partition(names.begin(), names.end(),
                          [](const std::string& n) { return n != "Intercept" && n != "const"; });
    for (const auto& name : names) {
        std::vector<std::string> est{name};
        std::vector<std::string> se{""};
        for (const auto& m : models) {
            const Coefficient* c = m.find(name);
            est.push_back(c ? format_estimate(*c) : "");
            se.push_back(c ? format_std_error(*c) : "");
        }
        t.rows.push_back(std::move(est));
        t.rows.push_back(std::move(se));
    }
    auto stat_row = [&](const std::string& label, auto&& fn) {
        std::vector<std::string> row{label};
        for (const auto& m : models) row.push_back(fn(m));
        t.rows.push_back(std::move(row));
    };
    stat_row("Observations", [](const RegressionResult& m) { return std::to_string(m.n_observations); });
    stat_row("R2", [](const RegressionResult& m) { return format_fixed(m.r_squared, 3); });
    stat_row("Adjusted R2", [](const RegressionResult& m) { return format_fixed(m.adj_r_squared, 3); });
    stat_row("Residual Std. Error", [](const RegressionResult& m) {
        return format_fixed(m.residual_std_error, 3) + " (df = " + std::to_string(m.df_residual) + ")";
    });
    stat_row("F Statistic", [](const RegressionResult& m) {
        if (std::isnan(m.f_statistic)) return std::string("");
        const std::size_t df1 = m.coefficients.size() - 1;
        return format_fixed(m.f_statistic, 3) + stars(m.f_p_value) + " (df = " + std::to_string(df1) + "; " +
               std::to_string(m.df_residual) + ")";
    });
    return t;
}

void write_coefficients_csv(std::ostream& out, const std::vector<std::string>& model_labels,
                            const std::vector<RegressionResult>& models) {
    out << "model,name,estimate,std_error,t_statistic,p_value,stars,n_observations,dropped_rows\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
        for (const auto& c : models[i].coefficients) {
            out << csv::escape(model_labels[i]) << ',' << csv::escape(c.name) << ',' << format_double(c.estimate) << ','
                << format_double(c.std_error) << ',' << format_double(c.t_statistic) << ',' << format_double(c.p_value)
                << ',' << stars(c.p_value) << ',' << models[i].n_observations << ',' << models[i].dropped_rows << '\n';
        }
    }
}

std::string regression_json(const std::vector<std::string>& model_labels, const std::vector<RegressionResult>& models,
                            const Provenance& provenance) {
    using nlohmann::ordered_json;
    ordered_json doc;
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < models.size(); ++i) {
        const RegressionResult& m = models[i];
        ordered_json model;
        model["label"] = model_labels[i];
        model["response"] = m.response_name;
        model["covariance"] = m.covariance_kind == CovarianceKind::NeweyWest ? "newey-west" : "classical";
        model["hac_lag"] = m.hac_lag;
        ordered_json coefs = ordered_json::array();
        for (const auto& c : m.coefficients) {
            coefs.push_back({{"name", c.name},
                             {"estimate", c.estimate},
                             {"std_error", c.std_error},
                             {"t_statistic", c.t_statistic},
                             {"p_value", c.p_value},
                             {"stars", stars(c.p_value)}});
        }
        model["coefficients"] = std::move(coefs);
        model["n_observations"] = m.n_observations;
        model["dropped_rows"] = m.dropped_rows;
        model["df_residual"] = m.df_residual;
        model["r_squared"] = m.r_squared;
        model["adj_r_squared"] = m.adj_r_squared;
        model["residual_std_error"] = m.residual_std_error;
        model["f_statistic"] = m.f_statistic;
        model["f_p_value"] = m.f_p_value;
        list.push_back(std::move(model));
    }
    doc["models"] = std::move(list);
    ordered_json prov;
    ordered_json inputs = ordered_json::object();
    for (const auto& [label, digest] : provenance.inputs) inputs[label] = digest;
    ordered_json flags = ordered_json::object();
    for (const auto& [name, value] : provenance.flags) flags[name] = value;
    prov["inputs"] = std::move(inputs);
    prov["flags"] = std::move(flags);
    prov["seed"] = provenance.seed;
    doc["provenance"] = std::move(prov);
    return doc.dump(2) + "\n";
}

}  // namespace decentral
