#pragma once

#include "cochromatic/log_real.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cochromatic {

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string & text);
std::string to_string(ReportFormat format);

struct ExperimentConfig {
    std::vector<std::uint64_t> n_list;
    double eps = 0.1;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1;            // 0 leaves the sampling block empty
    std::optional<int> t_override;        // replaces alpha - 1 in the threshold stage
    ReportFormat format = ReportFormat::json;
    std::string output_path;              // empty: standard output
    int zeta_exact_limit = 14;
    int chi_exact_limit = 30;
    std::uint64_t sampling_limit = 300;   // largest n whose samples get an exact alpha(G)
    unsigned threads = 0;                 // 0: hardware concurrency
    bool stamp = false;                   // record a timestamp (breaks byte identity across runs)

    /// Throws PreconditionError naming the violated field.
    void validate() const;
};

/// Parses flat "key = value" lines ('#' starts a comment) into `config`,
/// overwriting only the keys present.
void apply_config_text(ExperimentConfig & config, const std::string & text);
void apply_config_file(ExperimentConfig & config, const std::string & path);

/// Number far outside double range: sign and log10 magnitude, plus a readable form.
struct BigNumber {
    int sign = 0;
    double log10 = 0.0;     // meaningless when sign == 0
    std::string sci;

    static BigNumber from(const LogReal & value);
    friend bool operator==(const BigNumber &, const BigNumber &) = default;
};

struct SampleRecord {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    std::string graph_hash;
    int alpha = 0;                  // independence number
    std::uint64_t x_alpha = 0;      // independent sets of size alpha
    int greedy_zeta = 0;
    std::optional<int> chi;
    std::optional<int> zeta;
    std::optional<int> chi_minus_zeta;

    friend bool operator==(const SampleRecord &, const SampleRecord &) = default;
};

struct SamplingBlock {
    std::vector<SampleRecord> samples;
    double mean_alpha = 0.0;
    double mean_x_alpha = 0.0;
    double mean_greedy_zeta = 0.0;
    std::optional<double> mean_chi_minus_zeta;
    std::optional<bool> zeta_le_chi_all;

    friend bool operator==(const SamplingBlock &, const SamplingBlock &) = default;
};

struct ThresholdBlock {
    int t = 0;
    std::uint64_t k_threshold = 0;
    std::string method;
    std::optional<double> L0_at;
    std::optional<double> L0_below;
    std::optional<double> log_E_at;
    std::optional<double> log_E_below;
    bool monotone_in_bracket = true;

    friend bool operator==(const ThresholdBlock &, const ThresholdBlock &) = default;
};

struct KStarBlock {
    std::int64_t k_star = 0;
    std::int64_t k_1 = 0;
    std::int64_t k_2 = 0;
    std::int64_t gap = 0;
    bool k_star_feasible = false;
    bool display_holds = false;
    bool gap_bound_holds = false;
    std::optional<double> crossover_log10_n;

    friend bool operator==(const KStarBlock &, const KStarBlock &) = default;
};

struct NRecord {
    std::uint64_t n = 0;
    double alpha0 = 0.0;
    int alpha = 0;
    BigNumber mu_alpha;
    BigNumber mu_alpha_minus_1;
    double mu_exponent = 0.0;
    bool window_holds = false;
    bool window_lower = false;
    bool window_upper = false;
    std::optional<ThresholdBlock> threshold;
    std::optional<KStarBlock> kstar;
    std::optional<SamplingBlock> sampling;
    std::vector<std::string> notes;

    friend bool operator==(const NRecord &, const NRecord &) = default;
};

struct RunReport {
    int schema_version = 1;
    std::uint64_t seed = 0;
    std::string git_describe;
    std::optional<std::string> timestamp;
    double eps = 0.0;
    std::uint64_t samples = 0;
    std::vector<NRecord> records;

    friend bool operator==(const RunReport &, const RunReport &) = default;
};

RunReport run_experiment(const ExperimentConfig & config);

/// Deterministic serialisation. CSV has one row per sample and one summary row per n.
std::string emit_report(const RunReport & report, ReportFormat format);
RunReport parse_report_json(const std::string & text);

/// Writes `bytes` to `path`, or to `fallback` when the path is empty.
void write_output(const std::string & bytes, const std::string & path, std::ostream & fallback);

std::string git_describe();

} // namespace cochromatic
