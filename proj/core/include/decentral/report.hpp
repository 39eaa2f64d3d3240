#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "decentral/econometrics.hpp"

namespace decentral {

/// Input digests and flag values appended to every emitted table.
struct Provenance {
    std::vector<std::pair<std::string, std::string>> inputs;  // label, sha256
    std::vector<std::pair<std::string, std::string>> flags;
    std::uint64_t seed = 0;

    void add_input(const std::string& label, const std::filesystem::path& path);
    void add_flag(std::string name, std::string value);

    /// One line per entry, each starting with `prefix`.
    void write(std::ostream& out, std::string_view prefix) const;
};

/// Plain grid rendered as a GitHub-flavoured markdown table.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_markdown(std::ostream& out) const;
};

/// Estimate with stars at the 0.1 / 0.05 / 0.01 levels, three decimals.
std::string format_estimate(const Coefficient& c);
/// Standard error in parentheses, three decimals.
std::string format_std_error(const Coefficient& c);

/// Side-by-side regression table: one column per model, coefficient rows in
/// order of first appearance (estimate line, then standard-error line),
/// followed by Observations, R2, Adjusted R2, Residual Std. Error and F
/// Statistic rows.
TextTable regression_table(const std::vector<std::string>& column_labels, const std::vector<RegressionResult>& models);

/// Long-format coefficient CSV: model,name,estimate,std_error,t_statistic,p_value,stars,n_observations,dropped_rows.
void write_coefficients_csv(std::ostream& out, const std::vector<std::string>& model_labels,
                            const std::vector<RegressionResult>& models);

/// JSON document with every model's coefficients and fit statistics.
std::string regression_json(const std::vector<std::string>& model_labels, const std::vector<RegressionResult>& models,
                            const Provenance& provenance);

}  // namespace decentral
