#include "cochromatic/experiment.hpp"

#include "cochromatic/errors.hpp"
#include "cochromatic/exact_solver.hpp"
#include "cochromatic/moments.hpp"
#include "cochromatic/profile_opt.hpp"
#include "cochromatic/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#ifndef COCHROMATIC_GIT_DESCRIBE
#define COCHROMATIC_GIT_DESCRIBE "unknown"
#endif

namespace cochromatic {

using nlohmann::json;

std::string git_describe()
{
    return COCHROMATIC_GIT_DESCRIBE;
}

ReportFormat parse_format(const std::string & text)
{
    if (text == "json")
        return ReportFormat::json;
    if (text == "csv")
        return ReportFormat::csv;
    throw PreconditionError("format must be json or csv, got '" + text + "'");
}

std::string to_string(ReportFormat format)
{
    return format == ReportFormat::json ? "json" : "csv";
}

void ExperimentConfig::validate() const
{
    require(! n_list.empty(), "config: n_list must be non-empty");
    for (auto n : n_list)
        require(n >= 3, "config: every n in n_list must be >= 3");
    require(eps > 0.0 && eps < 0.45, "config: eps must lie in (0, 0.45)");
    if (t_override)
        require(*t_override >= 2, "config: t_override must be >= 2");
    require(zeta_exact_limit >= 0 && zeta_exact_limit <= 20, "config: zeta_exact_limit must lie in [0, 20]");
    require(chi_exact_limit >= 0 && chi_exact_limit <= 64, "config: chi_exact_limit must lie in [0, 64]");
}

namespace {
    std::string trim(const std::string & s)
    {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos)
            return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::uint64_t parse_u64(const std::string & key, const std::string & v)
    {
        std::size_t used = 0;
        unsigned long long x = 0;
        try {
            x = std::stoull(v, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == v.size() && ! v.empty() && v[0] != '-', "config: " + key + " expects a non-negative integer");
        return x;
    }

    double parse_double(const std::string & key, const std::string & v)
    {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(v, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == v.size() && ! v.empty(), "config: " + key + " expects a number");
        return x;
    }

    bool parse_bool(const std::string & key, const std::string & v)
    {
        if (v == "true" || v == "1" || v == "yes")
            return true;
        if (v == "false" || v == "0" || v == "no")
            return false;
        throw PreconditionError("config: " + key + " expects true or false");
    }
}

void apply_config_text(ExperimentConfig & config, const std::string & text)
{
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        require(eq != std::string::npos, "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n_list") {
            config.n_list.clear();
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ','))
                config.n_list.push_back(parse_u64(key, trim(item)));
        } else if (key == "eps") {
            config.eps = parse_double(key, value);
        } else if (key == "seed") {
            config.seed = parse_u64(key, value);
        } else if (key == "samples") {
            config.samples = parse_u64(key, value);
        } else if (key == "t_override") {
            if (value.empty() || value == "none")
                config.t_override.reset();
            else
                config.t_override = static_cast<int>(parse_u64(key, value));
        } else if (key == "format") {
            config.format = parse_format(value);
        } else if (key == "out" || key == "output") {
            config.output_path = value;
        } else if (key == "zeta_exact_limit") {
            config.zeta_exact_limit = static_cast<int>(parse_u64(key, value));
        } else if (key == "chi_exact_limit") {
            config.chi_exact_limit = static_cast<int>(parse_u64(key, value));
        } else if (key == "sampling_limit") {
            config.sampling_limit = parse_u64(key, value);
        } else if (key == "threads") {
            config.threads = static_cast<unsigned>(parse_u64(key, value));
        } else if (key == "stamp") {
            config.stamp = parse_bool(key, value);
        } else {
            throw PreconditionError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
}

void apply_config_file(ExperimentConfig & config, const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(config, buffer.str());
}

BigNumber BigNumber::from(const LogReal & value)
{
    BigNumber b;
    b.sign = value.sign();
    b.log10 = value.is_zero() ? 0.0 : value.log10_magnitude();
    b.sci = value.to_scientific(6);
    return b;
}

namespace {
    template <typename F>
    auto staged(std::uint64_t n, const char * stage, F && f) -> decltype(f())
    {
        const std::string where = "n=" + std::to_string(n) + ", stage=" + stage + ": ";
        try {
            return f();
        } catch (const ConvergenceError & e) {
            throw ConvergenceError(where + e.what(), e.bracket_lo(), e.bracket_hi());
        } catch (const PreconditionError & e) {
            throw PreconditionError(where + e.what());
        }
    }

    SampleRecord run_sample(std::uint64_t n, std::uint64_t index, const ExperimentConfig & config)
    {
        SampleRecord s;
        s.index = index;
        s.seed = derive_seed(config.seed, n, index);
        const Graph g = sample_gnp_half(static_cast<int>(n), s.seed);
        s.graph_hash = graph_hash(g);
        s.alpha = independence_number(g);
        s.x_alpha = count_independent_sets(g, s.alpha);
        s.greedy_zeta = greedy_cocolouring(g).count();
        if (n <= static_cast<std::uint64_t>(config.chi_exact_limit))
            s.chi = chromatic_number(g);
        if (n <= static_cast<std::uint64_t>(config.zeta_exact_limit))
            s.zeta = cochromatic_number(g);
        if (s.chi && s.zeta)
            s.chi_minus_zeta = *s.chi - *s.zeta;
        return s;
    }

    SamplingBlock run_sampling(std::uint64_t n, const ExperimentConfig & config)
    {
        SamplingBlock block;
        block.samples.resize(config.samples);
        unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.samples));
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto work = [&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= config.samples || failed.load())
                    return;
                try {
                    block.samples[i] = run_sample(n, i, config);
                } catch (...) {
                    if (! failed.exchange(true))
                        failure = std::current_exception();
                    return;
                }
            }
        };
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
            for (auto & t : pool)
                t.join();
        }
        if (failure)
            std::rethrow_exception(failure);

        // Ordered reduction by sample index.
        double sum_alpha = 0, sum_x = 0, sum_greedy = 0, sum_diff = 0;
        std::uint64_t diffs = 0;
        bool le_all = true;
        for (const auto & s : block.samples) {
            sum_alpha += s.alpha;
            sum_x += static_cast<double>(s.x_alpha);
            sum_greedy += s.greedy_zeta;
            if (s.chi_minus_zeta) {
                sum_diff += *s.chi_minus_zeta;
                ++diffs;
                le_all = le_all && *s.chi_minus_zeta >= 0;
            }
        }
        const double count = static_cast<double>(block.samples.size());
        block.mean_alpha = sum_alpha / count;
        block.mean_x_alpha = sum_x / count;
        block.mean_greedy_zeta = sum_greedy / count;
        if (diffs > 0) {
            block.mean_chi_minus_zeta = sum_diff / static_cast<double>(diffs);
            block.zeta_le_chi_all = le_all;
        }
        return block;
    }

    std::optional<double> as_double(const std::optional<BigFloat> & v)
    {
        if (! v)
            return std::nullopt;
        return v->convert_to<double>();
    }

    NRecord run_n(std::uint64_t n, const ExperimentConfig & config)
    {
        NRecord r;
        r.n = n;
        const AlphaData data = staged(n, "moments", [&] { return alpha_data(n); });
        r.alpha0 = data.alpha0.convert_to<double>();
        r.alpha = data.alpha;
        r.mu_alpha = BigNumber::from(data.mu_alpha);
        r.mu_alpha_minus_1 = BigNumber::from(data.mu_alpha_minus_1);
        r.mu_exponent = data.exponent.convert_to<double>();
        const WindowCheck w = staged(n, "window", [&] { return window_condition(n, config.eps); });
        r.window_holds = w.holds;
        r.window_lower = w.lower_holds;
        r.window_upper = w.upper_holds;
        if (! w.holds)
            r.notes.push_back("window condition fails at this n");

        const int t = config.t_override.value_or(data.alpha - 1);
        if (t >= 2) {
            ThresholdResult th = staged(n, "threshold", [&] { return first_moment_threshold(n, t); });
            ThresholdBlock tb;
            tb.t = t;
            tb.k_threshold = th.k_threshold;
            tb.method = to_string(th.method);
            tb.L0_at = as_double(th.L0_at);
            tb.L0_below = as_double(th.L0_below);
            tb.log_E_at = as_double(th.log_E_at);
            tb.log_E_below = as_double(th.log_E_below);
            tb.monotone_in_bracket = th.monotone_in_bracket;
            r.threshold = tb;
        } else {
            r.notes.push_back("size bound below 2: threshold skipped");
        }
        if (data.alpha - 1 >= 2) {
            KStarResult ks = staged(n, "kstar", [&] { return kstar_and_gap(n, config.eps); });
            KStarBlock kb;
            kb.k_star = ks.k_star;
            kb.k_1 = ks.k_1;
            kb.k_2 = ks.k_2;
            kb.gap = ks.gap;
            kb.k_star_feasible = ks.k_star_feasible;
            kb.display_holds = ks.display_holds;
            kb.gap_bound_holds = ks.gap_bound_holds;
            kb.crossover_log10_n = ks.crossover_log10_n;
            r.kstar = kb;
            if (! ks.k_star_feasible)
                r.notes.push_back("k* admits no (alpha-1)-bounded profile at this n");
        }
        if (config.samples > 0) {
            if (n <= config.sampling_limit)
                r.sampling = staged(n, "sampling", [&] { return run_sampling(n, config); });
            else
                r.notes.push_back("n above sampling_limit: sampling skipped");
        }
        return r;
    }

    std::string timestamp_now()
    {
        std::time_t t;
        if (const char * epoch = std::getenv("SOURCE_DATE_EPOCH"))
            t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
        else
            t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::ostringstream out;
        out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
        return out.str();
    }
}

RunReport run_experiment(const ExperimentConfig & config)
{
    config.validate();
    RunReport report;
    report.seed = config.seed;
    report.git_describe = git_describe();
    if (config.stamp)
        report.timestamp = timestamp_now();
    report.eps = config.eps;
    report.samples = config.samples;
    for (auto n : config.n_list)
        report.records.push_back(run_n(n, config));
    return report;
}

namespace {
    template <typename T>
    json opt(const std::optional<T> & v)
    {
        return v ? json(*v) : json(nullptr);
    }

    template <typename T>
    std::optional<T> get_opt(const json & j, const char * key)
    {
        const auto & v = j.at(key);
        if (v.is_null())
            return std::nullopt;
        return v.get<T>();
    }

    json big_json(const BigNumber & b)
    {
        return json{{"sign", b.sign}, {"log10", b.log10}, {"sci", b.sci}};
    }

    BigNumber big_from(const json & j)
    {
        BigNumber b;
        b.sign = j.at("sign").get<int>();
        b.log10 = j.at("log10").get<double>();
        b.sci = j.at("sci").get<std::string>();
        return b;
    }

    json sample_json(const SampleRecord & s)
    {
        return json{{"index", s.index},     {"seed", s.seed},   {"graph_hash", s.graph_hash},
                    {"alpha", s.alpha},     {"x_alpha", s.x_alpha}, {"greedy_zeta", s.greedy_zeta},
                    {"chi", opt(s.chi)},    {"zeta", opt(s.zeta)}, {"chi_minus_zeta", opt(s.chi_minus_zeta)}};
    }

    SampleRecord sample_from(const json & j)
    {
        SampleRecord s;
        s.index = j.at("index").get<std::uint64_t>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.graph_hash = j.at("graph_hash").get<std::string>();
        s.alpha = j.at("alpha").get<int>();
        s.x_alpha = j.at("x_alpha").get<std::uint64_t>();
        s.greedy_zeta = j.at("greedy_zeta").get<int>();
        s.chi = get_opt<int>(j, "chi");
        s.zeta = get_opt<int>(j, "zeta");
        s.chi_minus_zeta = get_opt<int>(j, "chi_minus_zeta");
        return s;
    }

    json record_json(const NRecord & r)
    {
        json j;
        j["n"] = r.n;
        j["alpha0"] = r.alpha0;
        j["alpha"] = r.alpha;
        j["mu_alpha"] = big_json(r.mu_alpha);
        j["mu_alpha_minus_1"] = big_json(r.mu_alpha_minus_1);
        j["mu_exponent"] = r.mu_exponent;
        j["window"] = json{{"holds", r.window_holds}, {"lower", r.window_lower}, {"upper", r.window_upper}};
        if (r.threshold) {
            const auto & t = *r.threshold;
            j["threshold"] = json{{"t", t.t},
                                  {"k_threshold", t.k_threshold},
                                  {"method", t.method},
                                  {"L0_at", opt(t.L0_at)},
                                  {"L0_below", opt(t.L0_below)},
                                  {"log_E_at", opt(t.log_E_at)},
                                  {"log_E_below", opt(t.log_E_below)},
                                  {"monotone_in_bracket", t.monotone_in_bracket}};
        } else {
            j["threshold"] = nullptr;
        }
        if (r.kstar) {
            const auto & k = *r.kstar;
            j["kstar"] = json{{"k_star", k.k_star},
                              {"k_1", k.k_1},
                              {"k_2", k.k_2},
                              {"gap", k.gap},
                              {"k_star_feasible", k.k_star_feasible},
                              {"display_holds", k.display_holds},
                              {"gap_bound_holds", k.gap_bound_holds},
                              {"crossover_log10_n", opt(k.crossover_log10_n)}};
        } else {
            j["kstar"] = nullptr;
        }
        if (r.sampling) {
            const auto & s = *r.sampling;
            json samples = json::array();
            for (const auto & x : s.samples)
                samples.push_back(sample_json(x));
            j["sampling"] = json{{"samples", samples},
                                 {"mean_alpha", s.mean_alpha},
                                 {"mean_x_alpha", s.mean_x_alpha},
                                 {"mean_greedy_zeta", s.mean_greedy_zeta},
                                 {"mean_chi_minus_zeta", opt(s.mean_chi_minus_zeta)},
                                 {"zeta_le_chi_all", opt(s.zeta_le_chi_all)}};
        } else {
            j["sampling"] = nullptr;
        }
        j["notes"] = r.notes;
        return j;
    }

    NRecord record_from(const json & j)
    {
        NRecord r;
        r.n = j.at("n").get<std::uint64_t>();
        r.alpha0 = j.at("alpha0").get<double>();
        r.alpha = j.at("alpha").get<int>();
        r.mu_alpha = big_from(j.at("mu_alpha"));
        r.mu_alpha_minus_1 = big_from(j.at("mu_alpha_minus_1"));
        r.mu_exponent = j.at("mu_exponent").get<double>();
        r.window_holds = j.at("window").at("holds").get<bool>();
        r.window_lower = j.at("window").at("lower").get<bool>();
        r.window_upper = j.at("window").at("upper").get<bool>();
        if (const auto & t = j.at("threshold"); ! t.is_null()) {
            ThresholdBlock b;
            b.t = t.at("t").get<int>();
            b.k_threshold = t.at("k_threshold").get<std::uint64_t>();
            b.method = t.at("method").get<std::string>();
            b.L0_at = get_opt<double>(t, "L0_at");
            b.L0_below = get_opt<double>(t, "L0_below");
            b.log_E_at = get_opt<double>(t, "log_E_at");
            b.log_E_below = get_opt<double>(t, "log_E_below");
            b.monotone_in_bracket = t.at("monotone_in_bracket").get<bool>();
            r.threshold = b;
        }
        if (const auto & k = j.at("kstar"); ! k.is_null()) {
            KStarBlock b;
            b.k_star = k.at("k_star").get<std::int64_t>();
            b.k_1 = k.at("k_1").get<std::int64_t>();
            b.k_2 = k.at("k_2").get<std::int64_t>();
            b.gap = k.at("gap").get<std::int64_t>();
            b.k_star_feasible = k.at("k_star_feasible").get<bool>();
            b.display_holds = k.at("display_holds").get<bool>();
            b.gap_bound_holds = k.at("gap_bound_holds").get<bool>();
            b.crossover_log10_n = get_opt<double>(k, "crossover_log10_n");
            r.kstar = b;
        }
        if (const auto & s = j.at("sampling"); ! s.is_null()) {
            SamplingBlock b;
            for (const auto & x : s.at("samples"))
                b.samples.push_back(sample_from(x));
            b.mean_alpha = s.at("mean_alpha").get<double>();
            b.mean_x_alpha = s.at("mean_x_alpha").get<double>();
            b.mean_greedy_zeta = s.at("mean_greedy_zeta").get<double>();
            b.mean_chi_minus_zeta = get_opt<double>(s, "mean_chi_minus_zeta");
            b.zeta_le_chi_all = get_opt<bool>(s, "zeta_le_chi_all");
            r.sampling = b;
        }
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    }

    std::string csv_cell(const std::optional<int> & v)
    {
        return v ? std::to_string(*v) : "";
    }

    std::string csv_double(double v)
    {
        std::ostringstream out;
        out << std::setprecision(17) << v;
        return out.str();
    }

    const char * csv_header =
        "kind,n,sample,seed,graph_hash,alpha,x_alpha,greedy_zeta,chi,zeta,chi_minus_zeta,"
        "alpha0,alpha_floor,mu_alpha_log10,window_holds,k_threshold,k_star,k_1,k_2,gap";

    std::string emit_csv(const RunReport & report)
    {
        std::ostringstream out;
        out << "# schema_version=" << report.schema_version << " seed=" << report.seed
            << " git=" << report.git_describe << " timestamp=" << report.timestamp.value_or("null") << '\n';
        out << "# kind=sample rows carry per-graph values; kind=summary rows carry means over samples and per-n quantities\n";
        out << csv_header << '\n';
        for (const auto & r : report.records) {
            if (r.sampling)
                for (const auto & s : r.sampling->samples)
                    out << "sample," << r.n << ',' << s.index << ',' << s.seed << ',' << s.graph_hash << ','
                        << s.alpha << ',' << s.x_alpha << ',' << s.greedy_zeta << ',' << csv_cell(s.chi) << ','
                        << csv_cell(s.zeta) << ',' << csv_cell(s.chi_minus_zeta) << ",,,,,,,,,\n";
            out << "summary," << r.n << ",,,,";
            if (r.sampling)
                out << csv_double(r.sampling->mean_alpha) << ',' << csv_double(r.sampling->mean_x_alpha) << ','
                    << csv_double(r.sampling->mean_greedy_zeta) << ",,,"
                    << (r.sampling->mean_chi_minus_zeta ? csv_double(*r.sampling->mean_chi_minus_zeta) : "");
            else
                out << ",,,,,";
            out << ',' << csv_double(r.alpha0) << ',' << r.alpha << ',' << csv_double(r.mu_alpha.log10) << ','
                << (r.window_holds ? "true" : "false") << ',';
            out << (r.threshold ? std::to_string(r.threshold->k_threshold) : "") << ',';
            if (r.kstar)
                out << r.kstar->k_star << ',' << r.kstar->k_1 << ',' << r.kstar->k_2 << ',' << r.kstar->gap;
            else
                out << ",,,";
            out << '\n';
        }
        return out.str();
    }
}

std::string emit_report(const RunReport & report, ReportFormat format)
{
    if (format == ReportFormat::csv)
        return emit_csv(report);
    json j;
    j["schema"] = "cochromatic-run-report";
    j["schema_version"] = report.schema_version;
    j["provenance"] = json{{"seed", report.seed}, {"git_describe", report.git_describe}, {"timestamp", opt(report.timestamp)}};
    j["config"] = json{{"eps", report.eps}, {"samples", report.samples}};
    json records = json::array();
    for (const auto & r : report.records)
        records.push_back(record_json(r));
    j["records"] = records;
    return j.dump(2) + "\n";
}

RunReport parse_report_json(const std::string & text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception & e) {
        throw PreconditionError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        RunReport r;
        r.schema_version = j.at("schema_version").get<int>();
        require(r.schema_version == 1, "unsupported report schema version");
        const auto & p = j.at("provenance");
        r.seed = p.at("seed").get<std::uint64_t>();
        r.git_describe = p.at("git_describe").get<std::string>();
        r.timestamp = get_opt<std::string>(p, "timestamp");
        r.eps = j.at("config").at("eps").get<double>();
        r.samples = j.at("config").at("samples").get<std::uint64_t>();
        for (const auto & x : j.at("records"))
            r.records.push_back(record_from(x));
        return r;
    } catch (const json::exception & e) {
        throw PreconditionError(std::string("report is missing fields: ") + e.what());
    }
}

void write_output(const std::string & bytes, const std::string & path, std::ostream & fallback)
{
    if (path.empty()) {
        fallback << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << bytes;
    out.flush();
    if (! out)
        throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace cochromatic
