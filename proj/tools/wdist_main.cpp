#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wdist/json_io.hpp"
#include "wdist/version.hpp"

namespace {

using nlohmann::json;
using namespace wdist;

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing: " + path);
}

ArtifactMeta make_meta(std::map<std::string, std::string> config) {
    ArtifactMeta meta;
    meta.tool_version = kVersion;
    meta.timestamp = iso_timestamp_utc();
    meta.config = std::move(config);
    return meta;
}

const char* source_name(BoundSource s) {
    switch (s) {
        case BoundSource::OneCopyThreshold: return "one_copy_threshold";
        case BoundSource::TwoCopyQuarter: return "two_copy_quarter";
        case BoundSource::GeneralTilde: return "general_tilde";
        case BoundSource::AsymptoticEstimate: return "asymptotic_estimate";
    }
    return "unknown";
}

double antisymmetric_weight(const ProjectorSet& ps, const Matrix& x) {
    return (ps.a * x).trace().real();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct the symmetric/antisymmetric state family, depolarize it, and "
                 "certify distillability properties"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value config file ([subcommand] sections); flags take precedence");

    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::string format = "json";
    app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
    app.add_option("--tol", tol, "search gradient stopping threshold")->capture_default_str();
    app.add_option("--format", format, "stdout format for tabular output")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto global_config = [&](const char* command) {
        return std::map<std::string, std::string>{{"command", command},
                                                  {"seed", std::to_string(seed)},
                                                  {"tol", num17(tol)},
                                                  {"format", format},
                                                  {"tool_version", kVersion}};
    };

    // state ------------------------------------------------------------
    auto* st = app.add_subcommand("state", "construct a family state from one parameter");
    st->fallthrough();
    int st_d = 3;
    double st_alpha = 0.0, st_beta = 0.0, st_lambda = 0.0;
    std::string st_out;
    bool st_matrices = false;
    st->add_option("--d", st_d, "local dimension")->required();
    auto* st_oa = st->add_option("--alpha", st_alpha, "symmetric/antisymmetric mixing ratio");
    auto* st_ob = st->add_option("--beta", st_beta, "partial-transpose coordinate");
    auto* st_ol = st->add_option("--lambda", st_lambda, "antisymmetric weight");
    st->add_option("--out", st_out, "write a JSON artifact to this path");
    st->add_flag("--include-matrices", st_matrices, "embed rho and rho^{T_A} in the artifact");
    st->callback([&] {
        const int given =
            int(st_oa->count() > 0) + int(st_ob->count() > 0) + int(st_ol->count() > 0);
        if (given != 1)
            throw std::invalid_argument("state: give exactly one of --alpha, --beta, --lambda");
        StandardState s{};
        if (st_oa->count()) {
            s = state_from_alpha(st_d, st_alpha);
        } else if (st_ob->count()) {
            s = state_from_beta(st_d, st_beta);
        } else {
            if (st_lambda < 0.0 || st_lambda >= 1.0)
                throw std::invalid_argument("state: lambda must lie in [0, 1)");
            s = state_from_alpha(
                st_d, st_lambda * (st_d + 1.0) / ((1.0 - st_lambda) * (st_d - 1.0)));
        }
        auto cfg = global_config("state");
        cfg["d"] = std::to_string(st_d);
        cfg["include_matrices"] = st_matrices ? "true" : "false";
        if (st_oa->count()) cfg["alpha"] = num17(st_alpha);
        if (st_ob->count()) cfg["beta"] = num17(st_beta);
        if (st_ol->count()) cfg["lambda"] = num17(st_lambda);
        std::cout << state_to_json(s) << "\n";
        if (!st_out.empty()) write_file(st_out, state_artifact(s, make_meta(cfg), st_matrices));
    });

    // thresholds ---------------------------------------------------------
    auto* th = app.add_subcommand("thresholds", "bound and threshold table per copy count");
    th->fallthrough();
    int th_d = 3, th_nmax = 3;
    std::string th_out;
    th->add_option("--d", th_d, "local dimension (>= 3)")->required();
    th->add_option("--n-max", th_nmax, "largest copy count")->capture_default_str();
    th->add_option("--out", th_out, "also write the table as CSV to this path");
    th->callback([&] {
        if (th_d < 3) throw std::invalid_argument("thresholds: requires d >= 3");
        if (th_nmax < 1) throw std::invalid_argument("thresholds: n-max must be >= 1");
        const double one_thr = th_d / 2.0 - 1.0;
        const double lam_thr = lambda_of_alpha(th_d, beta_to_alpha(th_d, one_thr));

        json rows = json::array();
        std::ostringstream csv;
        csv << "n,certified_bound,source,tilde_beta,four_pow_minus_n,asymptotic_estimate,"
               "asymptotic_certified,one_distill_threshold,lambda_threshold\n";
        for (int n = 1; n <= th_nmax; ++n) {
            const BoundEntry e = certified_undistillable_bound(th_d, n);
            const AsymptoticBound ab = asymptotic_bound(n);
            json row;
            row["n"] = n;
            row["certified_bound"] = e.certified_beta_bound;
            row["source"] = source_name(e.source);
            row["tilde_beta"] = e.tilde_beta;
            row["one_distill_threshold"] = one_thr;
            row["lambda_threshold"] = lam_thr;
            csv << n << ',' << num17(e.certified_beta_bound) << ',' << source_name(e.source)
                << ',' << num17(e.tilde_beta) << ',';
            if (th_d == 3) {
                row["four_pow_minus_n"] = std::pow(4.0, -n);
                row["asymptotic_estimate"] = ab.beta_estimate;
                row["asymptotic_certified"] = ab.certified;
                csv << num17(std::pow(4.0, -n)) << ',' << num17(ab.beta_estimate) << ','
                    << (ab.certified ? "true" : "false") << ',';
            } else {
                row["four_pow_minus_n"] = nullptr;
                row["asymptotic_estimate"] = nullptr;
                row["asymptotic_certified"] = nullptr;
                csv << ",,,";
            }
            csv << num17(one_thr) << ',' << num17(lam_thr) << '\n';
            rows.push_back(std::move(row));
        }
        auto cfg = global_config("thresholds");
        cfg["d"] = std::to_string(th_d);
        cfg["n_max"] = std::to_string(th_nmax);
        if (format == "csv") {
            std::cout << csv.str();
        } else {
            json j;
            j["meta"] = json::parse(meta_to_json(make_meta(cfg)));
            j["rows"] = std::move(rows);
            std::cout << j.dump(2) << "\n";
        }
        if (!th_out.empty()) {
            write_file(th_out, csv.str());
            write_file(th_out + ".meta.json", meta_to_json(make_meta(cfg)));
        }
    });

    // search ------------------------------------------------------------
    auto* se = app.add_subcommand("search",
                                  "witness search plus certificate at fixed beta and copies");
    se->fallthrough();
    int se_d = 3, se_copies = 1, se_restarts = 100, se_iters = 300;
    double se_beta = 0.0;
    bool se_sym = false;
    std::string se_out;
    se->add_option("--d", se_d, "local dimension")->required();
    se->add_option("--beta", se_beta, "family parameter")->required();
    se->add_option("--copies", se_copies, "tensor copies (1..3)")->capture_default_str();
    se->add_option("--restarts", se_restarts, "search restarts")->capture_default_str();
    se->add_option("--max-iters", se_iters, "descent iteration cap")->capture_default_str();
    se->add_flag("--symmetry-mode", se_sym, "seed from symmetric Alice vectors (copies=2)");
    se->add_option("--out", se_out, "write the certificate JSON to this path");

    auto search_config = [&](int restarts, int iters, bool sym) {
        SearchConfig cfg;
        cfg.restarts = restarts;
        cfg.max_iters = iters;
        cfg.tol = tol;
        cfg.seed = seed;
        cfg.symmetry_mode = sym;
        return cfg;
    };

    se->callback([&] {
        if (se_copies < 1 || se_copies > 3)
            throw std::invalid_argument("search: copies must be 1, 2, or 3");
        const SearchConfig cfg = search_config(se_restarts, se_iters, se_sym);
        const WitnessResult wr = witness_search(se_d, se_beta, se_copies, cfg);
        const Certificate cert = certify(se_d, se_beta, se_copies, cfg);

        auto cmap = global_config("search");
        cmap["d"] = std::to_string(se_d);
        cmap["beta"] = num17(se_beta);
        cmap["copies"] = std::to_string(se_copies);
        cmap["restarts"] = std::to_string(se_restarts);
        cmap["max_iters"] = std::to_string(se_iters);
        cmap["symmetry_mode"] = se_sym ? "true" : "false";

        json j = json::parse(certificate_to_json(cert, make_meta(cmap)));
        json sr;
        sr["copies"] = se_copies;
        sr["lambda_min"] = wr.lambda_min;
        sr["normalized_lambda"] = wr.normalized_lambda;
        sr["restarts_used"] = wr.restarts_used;
        sr["converged"] = wr.converged;
        sr["degenerate_minimum"] = wr.degenerate_minimum;
        if (std::isfinite(wr.stationarity))
            sr["stationarity"] = wr.stationarity;
        else
            sr["stationarity"] = nullptr;
        j["search_result"] = std::move(sr);
        const std::string text = j.dump(2);
        std::cout << text << "\n";
        if (!se_out.empty()) write_file(se_out, text);
    });

    // certify -----------------------------------------------------------
    auto* ce = app.add_subcommand("certify", "region, certified bounds, and search evidence");
    ce->fallthrough();
    int ce_d = 3, ce_nmax = 3, ce_restarts = 100, ce_iters = 300;
    double ce_beta = 0.0;
    bool ce_sym = false;
    std::string ce_out;
    ce->add_option("--d", ce_d, "local dimension")->required();
    ce->add_option("--beta", ce_beta, "family parameter")->required();
    ce->add_option("--n-max", ce_nmax, "largest copy count to certify")->capture_default_str();
    ce->add_option("--restarts", ce_restarts, "search restarts")->capture_default_str();
    ce->add_option("--max-iters", ce_iters, "descent iteration cap")->capture_default_str();
    ce->add_flag("--symmetry-mode", ce_sym, "seed from symmetric Alice vectors (copies=2)");
    ce->add_option("--out", ce_out, "write the certificate JSON to this path");
    ce->callback([&] {
        const SearchConfig cfg = search_config(ce_restarts, ce_iters, ce_sym);
        const Certificate cert = certify(ce_d, ce_beta, ce_nmax, cfg);
        auto cmap = global_config("certify");
        cmap["d"] = std::to_string(ce_d);
        cmap["beta"] = num17(ce_beta);
        cmap["n_max"] = std::to_string(ce_nmax);
        cmap["restarts"] = std::to_string(ce_restarts);
        cmap["max_iters"] = std::to_string(ce_iters);
        cmap["symmetry_mode"] = ce_sym ? "true" : "false";
        const std::string text = certificate_to_json(cert, make_meta(cmap));
        std::cout << text << "\n";
        if (!ce_out.empty()) write_file(ce_out, text);
    });

    // sweep ---------------------------------------------------------------
    auto* sw = app.add_subcommand("sweep", "beta grid with regions, bounds, and search evidence");
    sw->fallthrough();
    int sw_d = 3, sw_steps = 51, sw_copies = 1, sw_restarts = 100, sw_iters = 300;
    double sw_min = 0.0, sw_max = 0.0;
    std::string sw_out;
    sw->add_option("--d", sw_d, "local dimension")->required();
    sw->add_option("--beta-min", sw_min, "grid start")->required();
    sw->add_option("--beta-max", sw_max, "grid end")->required();
    sw->add_option("--steps", sw_steps, "grid points (>= 2)")->capture_default_str();
    sw->add_option("--copies", sw_copies, "tensor copies for the search column")
        ->capture_default_str();
    sw->add_option("--restarts", sw_restarts, "search restarts per grid point")
        ->capture_default_str();
    sw->add_option("--max-iters", sw_iters, "descent iteration cap")->capture_default_str();
    sw->add_option("--out", sw_out, "write the CSV to this path (plus .meta.json sidecar)");
    sw->callback([&] {
        if (sw_copies < 1 || sw_copies > 3)
            throw std::invalid_argument("sweep: copies must be 1, 2, or 3");
        const SearchConfig cfg = search_config(sw_restarts, sw_iters, false);
        const auto rows = run_sweep(sw_d, sw_min, sw_max, sw_steps, sw_copies, cfg);
        const std::string csv = sweep_to_csv(rows);

        auto cmap = global_config("sweep");
        cmap["d"] = std::to_string(sw_d);
        cmap["beta_min"] = num17(sw_min);
        cmap["beta_max"] = num17(sw_max);
        cmap["steps"] = std::to_string(sw_steps);
        cmap["copies"] = std::to_string(sw_copies);
        cmap["restarts"] = std::to_string(sw_restarts);
        cmap["max_iters"] = std::to_string(sw_iters);

        if (!sw_out.empty()) {
            write_file(sw_out, csv);
            write_file(sw_out + ".meta.json", meta_to_json(make_meta(cmap)));
        }
        if (format == "csv" && sw_out.empty()) {
            std::cout << csv;
        } else {
            json summary;
            summary["rows"] = rows.size();
            summary["beta_min"] = sw_min;
            summary["beta_max"] = sw_max;
            summary["copies"] = sw_copies;
            summary["out"] = sw_out;
            std::cout << summary.dump(2) << "\n";
        }
    });

    // twirl-check ---------------------------------------------------------
    auto* tc = app.add_subcommand(
        "twirl-check", "protocol and Monte-Carlo twirl against the exact projector formula");
    tc->fallthrough();
    int tc_d = 3, tc_trials = 20, tc_mc_states = 3;
    long tc_mc = 20000;
    std::string tc_out;
    tc->add_option("--d", tc_d, "local dimension (2..5)")->required();
    tc->add_option("--trials", tc_trials, "random input states")->capture_default_str();
    tc->add_option("--mc-samples", tc_mc, "Haar samples per Monte-Carlo state (0 skips)")
        ->capture_default_str();
    tc->add_option("--mc-states", tc_mc_states, "states for the Monte-Carlo comparison")
        ->capture_default_str();
    tc->add_option("--out", tc_out, "write the report JSON to this path");
    tc->callback([&] {
        if (tc_d < 2 || tc_d > 5) throw std::invalid_argument("twirl-check: d must be in 2..5");
        if (tc_trials < 1) throw std::invalid_argument("twirl-check: trials must be >= 1");
        const MixingProtocol proto = build_depolarizing_protocol(tc_d);
        const ProjectorSet ps = projector_set(tc_d);
        SeededRng rng(seed, 0);

        double max_gap = 0.0, max_drift = 0.0, max_trace_drift = 0.0;
        for (int t = 0; t < tc_trials; ++t) {
            const Matrix rho = random_density(tc_d * tc_d, rng);
            const double lam0 = antisymmetric_weight(ps, rho);
            const Matrix out = apply_protocol(proto, rho, [&](int, const Matrix& x) {
                max_drift = std::max(max_drift, std::abs(antisymmetric_weight(ps, x) - lam0));
                max_trace_drift = std::max(max_trace_drift, std::abs(x.trace().real() - 1.0));
            });
            max_gap = std::max(max_gap, frobenius_distance(out, depolarize(rho, tc_d)));
        }

        double mc_gap = 0.0;
        const int mc_states = tc_mc > 0 ? std::min(tc_mc_states, tc_trials) : 0;
        for (int t = 0; t < mc_states; ++t) {
            const Matrix rho = random_density(tc_d * tc_d, rng);
            const Matrix mc = haar_twirl_mc(rho, tc_d, tc_mc, rng);
            mc_gap = std::max(mc_gap, frobenius_distance(mc, depolarize(rho, tc_d)));
        }

        auto cmap = global_config("twirl-check");
        cmap["d"] = std::to_string(tc_d);
        cmap["trials"] = std::to_string(tc_trials);
        cmap["mc_samples"] = std::to_string(tc_mc);
        cmap["mc_states"] = std::to_string(tc_mc_states);

        json j;
        j["meta"] = json::parse(meta_to_json(make_meta(cmap)));
        j["d"] = tc_d;
        j["trials"] = tc_trials;
        j["event_count"] = proto.events.size();
        j["protocol_max_gap"] = max_gap;
        j["weight_drift_max"] = max_drift;
        j["trace_drift_max"] = max_trace_drift;
        j["mc_states"] = mc_states;
        j["mc_samples"] = tc_mc;
        j["mc_max_gap"] = mc_gap;
        const std::string text = j.dump(2);
        std::cout << text << "\n";
        if (!tc_out.empty()) write_file(tc_out, text);
    });

    // relations-check -------------------------------------------------------
    auto* rc = app.add_subcommand(
        "relations-check", "sampled structural relations and floor inequality (d=3)");
    rc->fallthrough();
    int rc_nmax = 3;
    long rc_samples = 10000;
    double rc_beta = 0.25;
    bool rc_skip_floor = false;
    std::string rc_out;
    rc->add_option("--n-max", rc_nmax, "largest copy count (1..3)")->capture_default_str();
    rc->add_option("--samples", rc_samples, "random vectors per relation")->capture_default_str();
    rc->add_option("--beta", rc_beta, "beta for the floor inequality")->capture_default_str();
    rc->add_flag("--skip-floor", rc_skip_floor, "only check the structural relations");
    rc->add_option("--out", rc_out, "write the report JSON to this path");
    rc->callback([&] {
        if (rc_nmax < 1 || rc_nmax > 3)
            throw std::invalid_argument("relations-check: n-max must be in 1..3");
        if (rc_samples < 1) throw std::invalid_argument("relations-check: samples must be >= 1");

        bool all_ok = true;
        json rel = json::array();
        for (int n = 1; n <= rc_nmax; ++n) {
            for (int k = 0; k <= n; ++k) {
                SeededRng rng(seed, static_cast<std::uint64_t>(16 * n + k));
                const RelationsReport rep = structural_relations_check(n, k, rc_samples, rng);
                all_ok = all_ok && rep.ok;
                rel.push_back({{"n", rep.n},
                               {"k", rep.k},
                               {"samples", rep.samples},
                               {"max_p_partial", rep.max_p_partial},
                               {"max_qp", rep.max_qp},
                               {"min_q", rep.min_q},
                               {"bound_p", rep.bound_p},
                               {"bound_q", rep.bound_q},
                               {"ok", rep.ok}});
            }
        }
        json floor = json::array();
        if (!rc_skip_floor) {
            for (int n = 1; n <= rc_nmax; ++n) {
                SeededRng rng(seed, static_cast<std::uint64_t>(1000 + n));
                const FloorCheckReport rep = floor_inequality_check(n, rc_beta, rc_samples, rng);
                const bool ok = rep.worst_margin >= -1e-9;
                all_ok = all_ok && ok;
                floor.push_back({{"n", rep.n},
                                 {"beta", rep.beta},
                                 {"beta_n_used", rep.beta_n_used},
                                 {"samples", rep.samples},
                                 {"min_value", rep.min_value},
                                 {"floor_value", rep.floor_value},
                                 {"worst_margin", rep.worst_margin},
                                 {"ok", ok}});
            }
        }

        auto cmap = global_config("relations-check");
        cmap["n_max"] = std::to_string(rc_nmax);
        cmap["samples"] = std::to_string(rc_samples);
        cmap["beta"] = num17(rc_beta);
        cmap["skip_floor"] = rc_skip_floor ? "true" : "false";

        json j;
        j["meta"] = json::parse(meta_to_json(make_meta(cmap)));
        j["relations"] = std::move(rel);
        j["floor"] = std::move(floor);
        j["all_ok"] = all_ok;
        const std::string text = j.dump(2);
        std::cout << text << "\n";
        if (!rc_out.empty()) write_file(rc_out, text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
