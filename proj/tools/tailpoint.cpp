// Command-line front end: analytic reports, sample-based estimates, the
// Monte Carlo study, parameter sweeps, and the family scatter table.
// Exit codes: 0 success, 2 input error, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tailpoint/tailpoint.hpp"

namespace tp = tailpoint;
using nlohmann::json;

namespace {

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const char* method_name(tp::PointMethod m) {
    return m == tp::PointMethod::closed_form ? "closed_form" : "numeric";
}

json side_json(const tp::SidePoints& sp) {
    json j;
    j["pinf"] = opt_json(sp.pinf);
    j["pmconv"] = opt_json(sp.pmconv);
    j["pmcurv"] = opt_json(sp.pmcurv);
    j["cdf_at"] = {{"pinf", opt_json(sp.cdf_pinf)},
                   {"pmconv", opt_json(sp.cdf_pmconv)},
                   {"pmcurv", opt_json(sp.cdf_pmcurv)}};
    j["method"] = {{"pinf", sp.pinf ? json(method_name(sp.method_pinf)) : json(nullptr)},
                   {"pmconv", sp.pmconv ? json(method_name(sp.method_pmconv)) : json(nullptr)},
                   {"pmcurv", sp.pmcurv ? json(method_name(sp.method_pmcurv)) : json(nullptr)}};
    return j;
}

json report_json(const tp::DelimitingReport& rep) {
    json j;
    j["family"] = tp::family_name(rep.spec.family);
    json params = json::object();
    const auto& info = tp::detail::param_info(rep.spec.family);
    for (std::size_t i = 0; i < info.size(); ++i) params[info[i].name] = rep.spec.params[i];
    j["params"] = params;
    j["mode"] = rep.mode;
    j["left"] = side_json(rep.left);
    j["right"] = side_json(rep.right);
    j["modal_region_inf"] =
        rep.modal_region_inf ? json{rep.modal_region_inf->first, rep.modal_region_inf->second}
                             : json(nullptr);
    j["modal_region_conv"] =
        rep.modal_region_conv ? json{rep.modal_region_conv->first, rep.modal_region_conv->second}
                              : json(nullptr);
    j["tie_flag"] = rep.tie_flag;
    return j;
}

void csv_field(std::ostream& os, const std::optional<double>& v) {
    if (v) os << tp::detail::format_double(*v);
}

std::string report_csv(const tp::DelimitingReport& rep) {
    std::ostringstream os;
    os << "family,params,mode,pinf_l,pmconv_l,pmcurv_l,pinf_r,pmconv_r,pmcurv_r,"
          "cdf_pinf_l,cdf_pmconv_l,cdf_pmcurv_l,cdf_pinf_r,cdf_pmconv_r,cdf_pmcurv_r\n";
    os << tp::family_name(rep.spec.family) << ",\"" << tp::to_string(rep.spec) << "\","
       << tp::detail::format_double(rep.mode) << ',';
    csv_field(os, rep.left.pinf);
    os << ',';
    csv_field(os, rep.left.pmconv);
    os << ',';
    csv_field(os, rep.left.pmcurv);
    os << ',';
    csv_field(os, rep.right.pinf);
    os << ',';
    csv_field(os, rep.right.pmconv);
    os << ',';
    csv_field(os, rep.right.pmcurv);
    os << ',';
    csv_field(os, rep.left.cdf_pinf);
    os << ',';
    csv_field(os, rep.left.cdf_pmconv);
    os << ',';
    csv_field(os, rep.left.cdf_pmcurv);
    os << ',';
    csv_field(os, rep.right.cdf_pinf);
    os << ',';
    csv_field(os, rep.right.cdf_pmconv);
    os << ',';
    csv_field(os, rep.right.cdf_pmcurv);
    os << '\n';
    return os.str();
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        tp::write_text_file(out_path, content);
        std::cerr << "wrote " << out_path << "\n";
    }
}

std::vector<tp::SvgSeries> sweep_svg_series(const tp::SweepTable& table) {
    std::vector<tp::SvgSeries> series;
    if (table.key_names.size() == 1) {
        tp::SvgSeries a{"cdf_pinf_r", {}}, b{"cdf_pmconv_r", {}}, c{"cdf_pmcurv_r", {}};
        for (const tp::SweepRow& row : table.rows) {
            if (row.cdf_pinf_r) a.points.emplace_back(row.key[0], *row.cdf_pinf_r);
            if (row.cdf_pmconv_r) b.points.emplace_back(row.key[0], *row.cdf_pmconv_r);
            if (row.cdf_pmcurv_r) c.points.emplace_back(row.key[0], *row.cdf_pmcurv_r);
        }
        series = {a, b, c};
    } else {
        // one curve of cdf_pinf_r over s per nu value, labeling every fifth
        std::vector<double> nus;
        for (const tp::SweepRow& row : table.rows)
            if (nus.empty() || nus.back() != row.key[0]) nus.push_back(row.key[0]);
        for (std::size_t i = 0; i < nus.size(); ++i) {
            tp::SvgSeries s;
            if (i % 5 == 0) s.label = "nu=" + tp::detail::format_double(nus[i]);
            for (const tp::SweepRow& row : table.rows)
                if (row.key[0] == nus[i] && row.cdf_pinf_r)
                    s.points.emplace_back(row.key[1], *row.cdf_pinf_r);
            series.push_back(std::move(s));
        }
    }
    return series;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"delimiting points between the bulk and the tails of a distribution"};
    app.require_subcommand(1);

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "closed-form/numeric delimiting report");
    std::string an_dist, an_format = "json", an_out;
    cmd_analyze->add_option("--dist", an_dist, "distribution, e.g. gaussian(mu=0,sigma=1)")
        ->required();
    cmd_analyze->add_option("--format", an_format)->check(CLI::IsMember({"json", "csv"}));
    cmd_analyze->add_option("--out", an_out, "write to file instead of stdout");

    // estimate
    auto* cmd_est = app.add_subcommand("estimate", "sample-based delimiting point estimates");
    std::string es_data, es_side = "both", es_format = "json", es_out;
    std::optional<double> es_h1, es_h2, es_mode;
    cmd_est->add_option("--data", es_data, "text/CSV file, one value per line")->required();
    cmd_est->add_option("--side", es_side)->check(CLI::IsMember({"left", "right", "both"}));
    cmd_est->add_option("--h1", es_h1, "bandwidth for the first-derivative estimator");
    cmd_est->add_option("--h2", es_h2, "bandwidth for the second-derivative estimator");
    cmd_est->add_option("--mode", es_mode, "mode location (estimated from data when absent)");
    cmd_est->add_option("--format", es_format)->check(CLI::IsMember({"json", "csv"}));
    cmd_est->add_option("--out", es_out);

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo MSE study on Student-t data");
    std::string si_target = "pinf", si_out;
    std::vector<double> si_nu{1.0, 5.0, 100.0};
    std::vector<int> si_n{100, 500, 2000};
    int si_reps = 1000;
    std::uint64_t si_seed = 1;
    cmd_sim->add_option("--target", si_target)->check(CLI::IsMember({"pinf", "pmconv"}));
    cmd_sim->add_option("--nu", si_nu, "degrees of freedom")->delimiter(',');
    cmd_sim->add_option("--n", si_n, "sample sizes")->delimiter(',');
    cmd_sim->add_option("--reps", si_reps, "replications per cell");
    cmd_sim->add_option("--seed", si_seed, "base seed");
    cmd_sim->add_option("--out", si_out);

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "delimiting points along a parameter grid");
    std::string sw_preset, sw_family, sw_param, sw_svg, sw_out;
    double sw_from = 0, sw_to = 0;
    int sw_steps = 40;
    bool sw_log = false;
    cmd_sweep->add_option("--preset", sw_preset,
                          "lognormal-sigma | studentt-nu | gaussian-sigma | exponential-lambda | "
                          "skewt-grid");
    cmd_sweep->add_option("--family", sw_family);
    cmd_sweep->add_option("--param", sw_param);
    auto* sw_from_opt = cmd_sweep->add_option("--from", sw_from);
    auto* sw_to_opt = cmd_sweep->add_option("--to", sw_to);
    cmd_sweep->add_option("--steps", sw_steps);
    cmd_sweep->add_flag("--log", sw_log, "geometric grid");
    cmd_sweep->add_option("--svg", sw_svg, "also write an SVG chart");
    cmd_sweep->add_option("--out", sw_out);

    // scatter
    auto* cmd_scatter = app.add_subcommand("scatter", "cdf levels across the family catalog");
    std::string sc_svg, sc_out;
    cmd_scatter->add_option("--svg", sc_svg, "also write an SVG chart");
    cmd_scatter->add_option("--out", sc_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_analyze)) {
            tp::DistributionSpec spec = tp::parse_spec(an_dist);
            tp::DelimitingReport rep = tp::report(spec);
            emit(an_format == "json" ? report_json(rep).dump(2) : report_csv(rep), an_out);
        } else if (app.got_subcommand(cmd_est)) {
            std::vector<double> data = tp::read_data_file(es_data);
            if (data.size() < 10)
                throw std::invalid_argument("estimate: need at least 10 data points, got " +
                                            std::to_string(data.size()));
            double mode = es_mode ? *es_mode : tp::estimate_mode(data);
            double mean = 0;
            for (double v : data) mean += v;
            mean /= static_cast<double>(data.size());
            double ss = 0;
            for (double v : data) ss += (v - mean) * (v - mean);
            double sd = std::sqrt(ss / (static_cast<double>(data.size()) - 1.0));
            if (!(sd > 0.0) && (!es_h1 || !es_h2))
                throw std::invalid_argument("estimate: sample is degenerate, pass --h1/--h2");
            double h1 = es_h1 ? *es_h1
                              : tp::amise_bandwidth(1, data.size(),
                                                    tp::normal_reference_roughness(3, sd));
            double h2 = es_h2 ? *es_h2
                              : tp::amise_bandwidth(2, data.size(),
                                                    tp::normal_reference_roughness(4, sd));
            if (!(h1 > 0.0) || !(h2 > 0.0))
                throw std::invalid_argument("estimate: bandwidths must be > 0");
            std::string bw_prov = es_h1 && es_h2 ? "manual"
                                 : !es_h1 && !es_h2 ? "amise-normal-reference"
                                                    : "mixed";
            json j;
            j["n"] = data.size();
            j["mode"] = {{"value", mode}, {"provenance", es_mode ? "manual" : "estimated"}};
            j["bandwidths"] = {{"h1", h1}, {"h2", h2}, {"provenance", bw_prov}};
            std::ostringstream csv;
            csv << "side,pinf_n,pmconv_n,mode,h1,h2,mode_provenance,bandwidth_provenance\n";
            for (tp::Side side : {tp::Side::left, tp::Side::right}) {
                bool want = es_side == "both" || (side == tp::Side::left ? es_side == "left"
                                                                         : es_side == "right");
                if (!want) continue;
                tp::SamplePoints pts = tp::sample_delimiting_points(data, mode, side, {h1, h2});
                const char* name = side == tp::Side::left ? "left" : "right";
                j[name] = {{"pinf_n", pts.pinf_n}, {"pmconv_n", pts.pmconv_n}};
                csv << name << ',' << tp::detail::format_double(pts.pinf_n) << ','
                    << tp::detail::format_double(pts.pmconv_n) << ','
                    << tp::detail::format_double(mode) << ',' << tp::detail::format_double(h1)
                    << ',' << tp::detail::format_double(h2) << ','
                    << (es_mode ? "manual" : "estimated") << ',' << bw_prov << '\n';
            }
            emit(es_format == "json" ? j.dump(2) : csv.str(), es_out);
        } else if (app.got_subcommand(cmd_sim)) {
            tp::MseStudyConfig cfg;
            cfg.target = si_target == "pinf" ? tp::StudyTarget::pinf : tp::StudyTarget::pmconv;
            cfg.nu_values = si_nu;
            cfg.n_values = si_n;
            cfg.replications = si_reps;
            cfg.base_seed = si_seed;
            tp::MseStudy study = tp::run_mse_study(cfg);
            emit(tp::mse_to_csv(study), si_out);
        } else if (app.got_subcommand(cmd_sweep)) {
            tp::SweepTable table;
            if (!sw_preset.empty()) {
                table = tp::run_sweep_preset(sw_preset);
            } else {
                if (sw_family.empty() || sw_param.empty() || !*sw_from_opt || !*sw_to_opt)
                    throw std::invalid_argument(
                        "sweep: pass --preset, or --family/--param/--from/--to");
                table = tp::run_sweep_custom(tp::parse_spec(sw_family).family, sw_param, sw_from,
                                             sw_to, sw_steps, sw_log);
            }
            for (const tp::SweepRow& row : table.rows)
                if (row.failed) {
                    std::cerr << "sweep row (";
                    for (std::size_t i = 0; i < row.key.size(); ++i)
                        std::cerr << (i ? "," : "") << tp::detail::format_double(row.key[i]);
                    std::cerr << ") failed: " << row.error << "\n";
                }
            if (!sw_svg.empty()) {
                std::string x_label = table.key_names.size() == 1 ? "parameter value" : "s";
                tp::write_text_file(
                    sw_svg, tp::svg_chart(sweep_svg_series(table), "delimiting point cdf levels",
                                          x_label, "cdf level"));
                std::cerr << "wrote " << sw_svg << "\n";
            }
            emit(tp::sweep_to_csv(table), sw_out);
        } else if (app.got_subcommand(cmd_scatter)) {
            std::vector<tp::ScatterRow> rows = tp::scatter_families();
            if (!sc_svg.empty()) {
                std::vector<tp::SvgSeries> series;
                for (const tp::ScatterRow& row : rows) {
                    if (!row.cdf_pmconv_r || !row.cdf_pmcurv_r) continue;
                    series.push_back(
                        {tp::to_string(row.spec), {{*row.cdf_pmconv_r, *row.cdf_pmcurv_r}}});
                }
                tp::write_text_file(sc_svg, tp::svg_chart(series, "family catalog", "cdf_pmconv_r",
                                                          "cdf_pmcurv_r", true));
                std::cerr << "wrote " << sc_svg << "\n";
            }
            emit(tp::scatter_to_csv(rows), sc_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
