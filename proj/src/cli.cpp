#include "cochromatic/cli.hpp"

#include "cochromatic/errors.hpp"
#include "cochromatic/exact_solver.hpp"
#include "cochromatic/experiment.hpp"
#include "cochromatic/graph_io.hpp"
#include "cochromatic/moments.hpp"
#include "cochromatic/profile_opt.hpp"
#include "cochromatic/rng.hpp"
#include "cochromatic/structure_events.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cochromatic {

using nlohmann::json;

namespace {
    struct Globals {
        std::uint64_t seed = 1;
        std::string format = "json";
        std::string out;
        unsigned precision = 256;
    };

    json big(const LogReal & v)
    {
        BigNumber b = BigNumber::from(v);
        return json{{"sign", b.sign}, {"log10", b.log10}, {"sci", b.sci}};
    }

    double d(const BigFloat & v) { return v.convert_to<double>(); }

    json opt_d(const std::optional<BigFloat> & v)
    {
        return v ? json(d(*v)) : json(nullptr);
    }

    json partition_json(const OrderedPartition & pi)
    {
        json parts = json::array();
        for (const auto & p : pi.parts())
            parts.push_back(p.members());
        return parts;
    }

    // "0,1,2|3,4,5" -> parts
    OrderedPartition parse_partition(int n, const std::string & text)
    {
        std::vector<std::vector<int>> parts;
        std::stringstream ss(text);
        std::string chunk;
        while (std::getline(ss, chunk, '|')) {
            std::vector<int> part;
            std::stringstream cs(chunk);
            std::string item;
            while (std::getline(cs, item, ','))
                if (! item.empty()) {
                    try {
                        part.push_back(std::stoi(item));
                    } catch (const std::exception &) {
                        throw PreconditionError("partition entries must be integers: '" + item + "'");
                    }
                }
            parts.push_back(part);
        }
        return OrderedPartition::from_lists(n, parts);
    }

    ThresholdMethod parse_method(const std::string & m)
    {
        if (m == "auto")
            return ThresholdMethod::automatic;
        if (m == "exact")
            return ThresholdMethod::exact_dp;
        if (m == "l0")
            return ThresholdMethod::l0_bisection;
        if (m == "l0-raw")
            return ThresholdMethod::l0_raw;
        throw PreconditionError("--method must be auto, exact, l0 or l0-raw");
    }

    json threshold_json(const ThresholdResult & r)
    {
        return json{{"n", r.n},
                    {"t", r.t},
                    {"k_threshold", r.k_threshold},
                    {"method", to_string(r.method)},
                    {"L0_at", opt_d(r.L0_at)},
                    {"L0_below", opt_d(r.L0_below)},
                    {"log_E_at", opt_d(r.log_E_at)},
                    {"log_E_below", opt_d(r.log_E_below)},
                    {"k_raw", r.k_raw ? json(*r.k_raw) : json(nullptr)},
                    {"saddle_log_E_at", opt_d(r.saddle_log_E_at)},
                    {"saddle_log_E_below", opt_d(r.saddle_log_E_below)},
                    {"monotone_in_bracket", r.monotone_in_bracket}};
    }

    class Emitter {
    public:
        Emitter(const Globals & g, std::ostream & fallback) : g_(g), fallback_(fallback) {}

        void json_out(const json & j) const { write_output(j.dump(2) + "\n", g_.out, fallback_); }
        void text_out(const std::string & s) const { write_output(s, g_.out, fallback_); }
        bool csv() const { return g_.format == "csv"; }

    private:
        const Globals & g_;
        std::ostream & fallback_;
    };
}

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Chromatic versus cochromatic number of G(n, 1/2): moments, thresholds, exact solvers."};
    app.fallthrough();  // global flags may follow the subcommand
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", g.out, "Output path (default: standard output)");
    app.add_option("--precision", g.precision, "Working precision in bits")->check(CLI::Range(64u, 1u << 20))->capture_default_str();

    Emitter emit(g, out);
    std::function<void()> action;

    // moments
    auto * moments = app.add_subcommand("moments", "alpha_0, mu_alpha and the window condition at one n");
    std::uint64_t m_n = 0;
    double m_eps = 0.1;
    moments->add_option("--n", m_n, "Number of vertices")->required();
    moments->add_option("--eps", m_eps, "Window slack")->capture_default_str();
    moments->callback([&] {
        action = [&] {
            AlphaData a = alpha_data(m_n);
            WindowCheck w = window_condition(m_n, m_eps);
            emit.json_out(json{{"n", m_n},
                               {"alpha0", d(a.alpha0)},
                               {"alpha", a.alpha},
                               {"log_mu_alpha", d(a.mu_alpha.log_magnitude())},
                               {"exponent", d(a.exponent)},
                               {"window_holds", w.holds},
                               {"mu_alpha", big(a.mu_alpha)},
                               {"mu_alpha_minus_1", big(a.mu_alpha_minus_1)},
                               {"eps", m_eps},
                               {"window", {{"holds", w.holds}, {"lower", w.lower_holds}, {"upper", w.upper_holds}}}});
        };
    });

    // fraction
    auto * fraction = app.add_subcommand("fraction", "Share of n' <= n where the window condition holds");
    std::uint64_t f_n = 0;
    double f_eps = 0.001;
    fraction->add_option("--n", f_n, "Upper end n_max")->required();
    fraction->add_option("--eps", f_eps, "Window slack")->capture_default_str();
    fraction->callback([&] {
        action = [&] {
            FractionResult r = fraction_applicable(f_n, f_eps);
            if (emit.csv()) {
                // One row per n'; the count must agree with the bisection result.
                std::ostringstream rows;
                rows << "n,exponent,holds\n";
                std::uint64_t applicable = 0;
                for (std::uint64_t n = 3; n <= f_n; ++n) {
                    WindowCheck w = window_condition(n, f_eps);
                    applicable += w.holds;
                    rows << n << ',' << d(w.data.exponent) << ',' << (w.holds ? "true" : "false") << '\n';
                }
                if (applicable != r.applicable)
                    throw ConvergenceError("row scan and bisection disagree on the applicable count",
                                           static_cast<double>(applicable), static_cast<double>(r.applicable));
                rows << "summary,applicable=" << r.applicable << ",total=" << r.total << ",fraction=" << r.fraction << '\n';
                emit.text_out(rows.str());
                return;
            }
            auto [lo, hi] = fraction_limit_constants();
            emit.json_out(json{{"n_max", r.n_max},
                               {"eps", f_eps},
                               {"applicable", r.applicable},
                               {"total", r.total},
                               {"fraction", r.fraction},
                               {"limit_low", d(lo)},
                               {"limit_high", d(hi)}});
        };
    });

    // threshold
    auto * threshold = app.add_subcommand("threshold", "First-moment threshold k_t(n)");
    std::uint64_t t_n = 0;
    std::optional<int> t_t;
    std::string t_method = "auto";
    threshold->add_option("--n", t_n, "Number of vertices")->required();
    threshold->add_option("--t", t_t, "Class size bound (default alpha - 1)");
    threshold->add_option("--method", t_method, "auto, exact, l0 or l0-raw")->capture_default_str();
    threshold->callback([&] {
        action = [&] {
            const int t = t_t.value_or(alpha_data(t_n).alpha - 1);
            emit.json_out(threshold_json(first_moment_threshold(t_n, t, parse_method(t_method))));
        };
    });

    // profile
    auto * profile = app.add_subcommand("profile", "Near-optimal integer profile (the k* profile by default)");
    std::uint64_t p_n = 0;
    double p_eps = 0.1;
    std::optional<std::uint64_t> p_k;
    std::optional<int> p_t;
    profile->add_option("--n", p_n, "Number of vertices")->required();
    profile->add_option("--eps", p_eps, "Slack defining k*")->capture_default_str();
    profile->add_option("--k", p_k, "Explicit class count instead of k*");
    profile->add_option("--t", p_t, "Class size bound (default alpha - 1)");
    profile->callback([&] {
        action = [&] {
            const int t = p_t.value_or(alpha_data(p_n).alpha - 1);
            std::uint64_t k = 0;
            if (p_k) {
                k = *p_k;
            } else {
                KStarResult ks = kstar_and_gap(p_n, p_eps);
                require(ks.k_star_feasible, "k* = " + std::to_string(ks.k_star) + " admits no " + std::to_string(t) +
                                                "-bounded profile at n = " + std::to_string(p_n) + "; pass --k");
                k = static_cast<std::uint64_t>(ks.k_star);
            }
            ProfileSolution sol = optimal_profile(p_n, k, t);
            if (emit.csv()) {
                std::ostringstream s;
                s << "u,k_u\n";
                for (int u = 1; u <= sol.profile.bound(); ++u)
                    if (sol.profile.count(u))
                        s << u << ',' << sol.profile.count(u) << '\n';
                emit.text_out(s.str());
                return;
            }
            json counts = json::object();
            for (int u = 1; u <= sol.profile.bound(); ++u)
                if (sol.profile.count(u))
                    counts[std::to_string(u)] = sol.profile.count(u);
            emit.json_out(json{{"n", p_n},
                               {"k", k},
                               {"t", t},
                               {"profile", sol.profile.to_string()},
                               {"k_u", counts},
                               {"objective", d(sol.objective)},
                               {"L0_relaxed", d(sol.relaxed.value)},
                               {"multiplier_a", d(sol.relaxed.a)},
                               {"multiplier_b", d(sol.relaxed.b)},
                               {"repair_moves", sol.repair_moves}});
        };
    });

    // sample
    auto * sample = app.add_subcommand("sample", "Sample G(n, 1/2) or G(n, m) graphs and report alpha and greedy zeta");
    int s_n = 0;
    std::uint64_t s_count = 1;
    std::string s_model = "half";
    std::optional<std::int64_t> s_m;
    std::string s_graph_out;
    sample->add_option("--n", s_n, "Number of vertices")->required()->check(CLI::Range(1, 1 << 20));
    sample->add_option("--samples", s_count, "Number of graphs")->capture_default_str();
    sample->add_option("--model", s_model, "half or gnm")->check(CLI::IsMember({"half", "gnm"}))->capture_default_str();
    sample->add_option("--m", s_m, "Edge count for gnm (default floor(N/2))");
    sample->add_option("--graph-out", s_graph_out, "Write the first sampled graph as DIMACS");
    sample->callback([&] {
        action = [&] {
            json rows = json::array();
            std::ostringstream csv;
            csv << "index,seed,graph_hash,edges,alpha,x_alpha,greedy_zeta\n";
            for (std::uint64_t i = 0; i < s_count; ++i) {
                const std::uint64_t seed = derive_seed(g.seed, static_cast<std::uint64_t>(s_n), i);
                Graph graph = s_model == "half" ? sample_gnp_half(s_n, seed)
                                                : sample_gnm(s_m ? GnmParams::make(s_n, *s_m) : GnmParams::make(s_n), seed);
                if (i == 0 && ! s_graph_out.empty()) {
                    std::ofstream f(s_graph_out);
                    if (! f)
                        throw std::runtime_error("cannot open --graph-out path");
                    write_dimacs(f, graph);
                }
                const int a = independence_number(graph);
                const std::uint64_t x = count_independent_sets(graph, a);
                const int gz = greedy_cocolouring(graph).count();
                rows.push_back(json{{"index", i}, {"seed", seed}, {"graph_hash", graph_hash(graph)},
                                    {"edges", graph.edge_count()}, {"alpha", a}, {"x_alpha", x}, {"greedy_zeta", gz}});
                csv << i << ',' << seed << ',' << graph_hash(graph) << ',' << graph.edge_count() << ',' << a << ','
                    << x << ',' << gz << '\n';
            }
            if (emit.csv())
                emit.text_out(csv.str());
            else
                emit.json_out(json{{"n", s_n}, {"model", s_model}, {"samples", rows}});
        };
    });

    // solve
    auto * solve = app.add_subcommand("solve", "Exact chromatic, t-bounded chromatic and cochromatic numbers");
    std::string v_graph;
    std::optional<int> v_n;
    std::optional<int> v_t;
    solve->add_option("--graph", v_graph, "DIMACS or JSON graph file");
    solve->add_option("--n", v_n, "Sample G(n, 1/2) with --seed instead of reading a file");
    solve->add_option("--t", v_t, "Also compute the t-bounded chromatic number");
    solve->callback([&] {
        action = [&] {
            require(v_graph.empty() != ! v_n.has_value(), "solve needs exactly one of --graph or --n");
            Graph graph = v_graph.empty() ? sample_gnp_half(*v_n, derive_seed(g.seed, static_cast<std::uint64_t>(*v_n), 0))
                                          : load_graph(v_graph);
            json j{{"n", graph.size()}, {"edges", graph.edge_count()}, {"graph_hash", graph_hash(graph)}};
            j["alpha"] = independence_number(graph);
            j["omega"] = clique_number(graph);
            if (graph.size() >= 1)
                j["chi"] = chromatic_number(graph);
            j["zeta"] = cochromatic_number(graph);
            j["greedy_zeta"] = greedy_cocolouring(graph).count();
            if (v_t)
                j["chi_t"] = t_bounded_chromatic(graph, *v_t);
            if (graph.size() >= 1) {
                const int a = j["alpha"].get<int>();
                j["x_alpha"] = count_independent_sets(graph, a);
                if (a >= 2)
                    j["chi_alpha_minus_1"] = t_bounded_chromatic(graph, a - 1);
            }
            emit.json_out(j);
        };
    });

    // verify-prop
    auto * verify = app.add_subcommand("verify-prop", "Exhaustive cocolouring/colouring identities at tiny n");
    int q_n = 0;
    std::string q_profile;
    std::string q_mode = "prop42";
    int q_u_star = 2;
    std::optional<int> q_alpha;
    verify->add_option("--n", q_n, "Number of vertices")->required();
    verify->add_option("--profile", q_profile, "Profile as u:count,...")->required();
    verify->add_option("--mode", q_mode, "prop42 or secondmoment")->check(CLI::IsMember({"prop42", "secondmoment"}))->capture_default_str();
    verify->add_option("--u-star", q_u_star, "Smallest set size the events look at")->capture_default_str();
    verify->add_option("--alpha", q_alpha, "Independence bound used by the events (default largest part + 1)");
    verify->callback([&] {
        action = [&] {
            Profile prof = Profile::parse(q_profile);
            if (q_mode == "prop42") {
                Prop42Report r = prop42_oracle(q_n, prof);
                json by_ell = json::array();
                for (const auto & [ell, t] : r.by_ell)
                    by_ell.push_back(json{{"ell", ell}, {"pairs", t.pairs}, {"violations", t.violations}, {"tight", t.tight}});
                emit.json_out(json{{"n", r.n},
                                   {"profile", r.profile.to_string()},
                                   {"k", r.k},
                                   {"graphs", r.graphs},
                                   {"colouring_graphs", r.colouring_graphs.str()},
                                   {"cocolouring_graphs", r.cocolouring_graphs.str()},
                                   {"ratio", (BigInt(1) << r.k).str()},
                                   {"equality_holds", r.equality_holds},
                                   {"pair_scope", r.pair_scope},
                                   {"by_ell", by_ell},
                                   {"inequality_holds", r.inequality_holds}});
                return;
            }
            const int alpha = q_alpha.value_or(prof.bound() + 1);
            SecondMomentReport r = second_moment_ratio_tiny(q_n, prof, q_u_star, alpha);
            emit.json_out(json{{"n", r.n},
                               {"profile", r.profile.to_string()},
                               {"u_star", r.u_star},
                               {"alpha", r.alpha},
                               {"graphs", r.graphs},
                               {"partitions", r.partitions},
                               {"mean_X", r.mean_X},
                               {"mean_Xco", r.mean_Xco},
                               {"mean_Z", r.mean_Z},
                               {"second_Z", r.second_Z},
                               {"mean_Zco", r.mean_Zco},
                               {"second_Zco", r.second_Zco},
                               {"ratio_Z", r.ratio_Z},
                               {"ratio_Zco", r.ratio_Zco},
                               {"pz_bound", r.pz_bound},
                               {"empirical_P", r.empirical_P},
                               {"sum_all_pairs", r.sum_all_pairs},
                               {"sum_relevant_pairs", r.sum_relevant_pairs},
                               {"pz_below_empirical", r.pz_below_empirical},
                               {"relevant_sum_below_all", r.relevant_sum_below_all},
                               {"second_moment_below_relevant_sum", r.second_moment_below_relevant_sum},
                               {"cocolouring_mean_within_2k", r.cocolouring_mean_within_2k},
                               {"irrelevant_positive_pairs", r.irrelevant_positive_pairs}});
        };
    });

    // classify-pairs
    auto * classify = app.add_subcommand("classify-pairs", "Overlap bands and relevance of partition pairs");
    int c_n = 0;
    std::string c_profile;
    double c_c0 = 0.1;
    std::optional<int> c_alpha;
    int c_u_star = 1;
    std::uint64_t c_pairs = 10;
    std::string c_pi, c_pi_prime;
    classify->add_option("--n", c_n, "Number of vertices")->required();
    classify->add_option("--profile", c_profile, "Profile as u:count,... (random pairs)");
    classify->add_option("--pi", c_pi, "Explicit partition, parts separated by '|', e.g. 0,1,2|3,4,5");
    classify->add_option("--pi-prime", c_pi_prime, "Second explicit partition");
    classify->add_option("--c0", c_c0, "Band constant c0")->capture_default_str();
    classify->add_option("--alpha", c_alpha, "Independence bound for relevance (default largest part + 1)");
    classify->add_option("--u-star", c_u_star, "Smallest part size relevance looks at")->capture_default_str();
    classify->add_option("--pairs", c_pairs, "Number of random pairs")->capture_default_str();
    classify->callback([&] {
        action = [&] {
            std::vector<std::pair<OrderedPartition, OrderedPartition>> pairs;
            if (! c_pi.empty() || ! c_pi_prime.empty()) {
                require(! c_pi.empty() && ! c_pi_prime.empty(), "--pi and --pi-prime go together");
                pairs.emplace_back(parse_partition(c_n, c_pi), parse_partition(c_n, c_pi_prime));
            } else {
                require(! c_profile.empty(), "classify-pairs needs --profile or --pi/--pi-prime");
                Profile prof = Profile::parse(c_profile);
                for (std::uint64_t i = 0; i < c_pairs; ++i)
                    pairs.emplace_back(random_partition(c_n, prof, derive_seed(g.seed, 2 * i, 0)),
                                       random_partition(c_n, prof, derive_seed(g.seed, 2 * i + 1, 0)));
            }
            json rows = json::array();
            for (const auto & [a, b] : pairs) {
                const int alpha = c_alpha.value_or(a.profile().bound() + 1);
                PairClassification pc = classify_pair(a, b, static_cast<std::uint64_t>(c_n), c_c0);
                rows.push_back(json{{"pi", partition_json(a)},
                                    {"pi_prime", partition_json(b)},
                                    {"ell_u", pc.ell_u},
                                    {"ell", pc.ell},
                                    {"lambda", pc.lambda},
                                    {"band", to_string(pc.band)},
                                    {"relevant", is_relevant_pair(a, b, alpha, c_u_star)}});
            }
            emit.json_out(json{{"n", c_n}, {"c0", c_c0}, {"pairs", rows}});
        };
    });

    // experiment
    auto * experiment = app.add_subcommand("experiment", "Run the full per-n pipeline and emit a report");
    std::string e_config;
    std::vector<std::uint64_t> e_n_list;
    std::optional<double> e_eps;
    std::optional<std::uint64_t> e_samples;
    std::optional<int> e_t;
    std::optional<std::uint64_t> e_sampling_limit;
    std::optional<unsigned> e_threads;
    bool e_stamp = false;
    experiment->add_option("--config", e_config, "Flat key = value config file");
    experiment->add_option("--n-list", e_n_list, "Vertex counts")->delimiter(',');
    experiment->add_option("--eps", e_eps, "Window slack");
    experiment->add_option("--samples", e_samples, "Samples per n");
    experiment->add_option("--t-override", e_t, "Class size bound for the threshold stage");
    experiment->add_option("--sampling-limit", e_sampling_limit, "Largest n that is sampled");
    experiment->add_option("--threads", e_threads, "Worker threads for sampling");
    experiment->add_flag("--stamp", e_stamp, "Record a timestamp in the report");
    experiment->callback([&] {
        action = [&] {
            ExperimentConfig config;
            if (! e_config.empty())
                apply_config_file(config, e_config);
            if (! e_n_list.empty())
                config.n_list = e_n_list;
            if (e_eps)
                config.eps = *e_eps;
            if (e_samples)
                config.samples = *e_samples;
            if (e_t)
                config.t_override = *e_t;
            if (e_sampling_limit)
                config.sampling_limit = *e_sampling_limit;
            if (e_threads)
                config.threads = *e_threads;
            if (e_stamp)
                config.stamp = true;
            if (app.get_option("--seed")->count() > 0 || e_config.empty())
                config.seed = g.seed;
            if (app.get_option("--format")->count() > 0)
                config.format = parse_format(g.format);
            if (app.get_option("--out")->count() > 0)
                config.output_path = g.out;
            RunReport report = run_experiment(config);
            write_output(emit_report(report, config.format), config.output_path, out);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError & e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        set_precision_bits(g.precision);
        if (action)
            action();
        return 0;
    } catch (const PreconditionError & e) {
        err << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError & e) {
        err << "no convergence: " << e.what() << " (bracket [" << e.bracket_lo() << ", " << e.bracket_hi() << "])\n";
        return 3;
    } catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace cochromatic
