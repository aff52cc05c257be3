#include "hcoint/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcoint/report.hpp"
#include "hcoint/simulate.hpp"
#include "hcoint/yield_demo.hpp"

namespace hcoint {

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::Schema:
        case ErrorCode::IndexOutOfRange:
        case ErrorCode::SeriesTooShort:
            return kExitIo;
        case ErrorCode::NoUnitRoot:
        case ErrorCode::NoUnitEigenvalue:
            return kExitFail;
        default:
            return kExitNumeric;
    }
}

namespace {

struct Common {
    std::optional<double> rel_tol;
    std::optional<double> radius;
    unsigned jobs = 1;
    bool pretty = false;
    std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--rel-tol", c.rel_tol, "Relative rank tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", c.radius, "Laurent contour radius")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", c.jobs, "Threads for contour evaluation")->check(CLI::Range(1u, 256u));
}

AnalyzeOptions analyze_options(const Common& c) {
    AnalyzeOptions o;
    o.radius = c.radius;
    o.jobs = c.jobs;
    return o;
}

void apply_overrides(ModelSpec& spec, const Common& c) {
    if (c.rel_tol) {
        spec.policy.rel_tol = *c.rel_tol;
        spec.policy.validate();
    }
}

/// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Schema, "cannot write '" + path + "'");
    f << text;
    if (!f) throw Error(ErrorCode::Schema, "write to '" + path + "' failed");
}

std::string relations_path(const std::string& out) {
    const std::string stem = out.ends_with(".csv") ? out.substr(0, out.size() - 4) : out;
    return stem + "_relations.csv";
}

std::string report_text(const AnalysisReport& r, bool pretty) {
    std::ostringstream os;
    if (pretty) print_pretty(os, r);
    else os << to_json(r).dump(2) << '\n';
    return os.str();
}

int cmd_analyze(const std::string& model_path, const Common& c, std::optional<Index> count, std::ostream& out) {
    ModelSpec spec = load_model(model_path);
    apply_overrides(spec, c);
    AnalyzeOptions opt = analyze_options(c);
    opt.laurent_count = count;
    const Analysis a = run_analysis(spec, opt);
    emit(c.out_path, out, report_text(make_report(a, spec), c.pretty));
    return a.verdict.pass ? kExitPass : kExitFail;
}

std::string relations_csv(const SamplePath& path, const Decomposition& dec, Index t_max) {
    std::vector<ScalarSeries> cols;
    std::string header = "t";
    for (Index h = 0; h <= dec.order(); ++h) {
        const RelationTemplate rel = relations(dec, h);
        const Matrix basis = canonical_basis(rel.space);
        for (Index i = 0; i < basis.cols(); ++i) {
            header += ",h" + std::to_string(h) + "_" + std::to_string(i + 1);
            cols.push_back(v_characteristic(path, basis.col(i), &rel));
        }
    }
    std::string text = header + '\n';
    for (Index t = 1; t <= t_max; ++t) {
        text += std::to_string(t);
        for (const auto& c : cols) text += ',' + format_double(c.values(t - c.t_min));
        text += '\n';
    }
    return text;
}

int cmd_simulate(const std::string& model_path, const Common& c, Index horizon, std::uint64_t seed,
                 const std::string& method, bool with_relations, Index tail_terms, std::ostream& out,
                 std::ostream& err) {
    if (with_relations && c.out_path.empty())
        throw Error(ErrorCode::InvalidArgument, "--relations needs --out");
    ModelSpec spec = load_model(model_path);
    apply_overrides(spec, c);
    const bool need_analysis = with_relations || method == "common-trends";
    std::optional<Analysis> a;
    Index d = 1;
    if (need_analysis) {
        a = run_analysis(spec, analyze_options(c));
        if (!a->verdict.pass) {
            err << "model is not of finite type: " << to_string(a->verdict.reason) << '\n';
            return kExitFail;
        }
        d = a->dec->order();
    }
    const Index t_min = std::min({Index{1} - spec.model.order(), Index{2} - d, Index{0}});
    auto shocks = std::make_shared<const ShockSequence>(
        gaussian_noise(spec.model.dim(), spec.model.noise_cov(), t_min, horizon, seed));

    SamplePath path;
    if (method == "common-trends") {
        TailOptions tail;
        tail.terms = tail_terms;
        tail.nodes = std::max<Index>(2048, 4 * tail_terms);
        tail.radius = default_tail_radius(a->diagnostics);
        tail.jobs = c.jobs;
        path = simulate_common_trends(common_trends(*a->pencil, *a->series, *a->dec, tail), shocks);
    } else {
        path = simulate_ar(spec.model, shocks);
    }
    std::ostringstream csv;
    write_path_csv(csv, path.path);
    emit(c.out_path, out, csv.str());
    if (with_relations) emit(relations_path(c.out_path), out, relations_csv(path, *a->dec, horizon));
    return kExitPass;
}

int cmd_yield_demo(Index grid, const Common& c, Index horizon, std::uint64_t seed, std::ostream& out) {
    ModelSpec spec = yield_demo_model(grid);
    apply_overrides(spec, c);
    const Analysis a = run_analysis(spec, analyze_options(c));
    const AnalysisReport report = make_report(a, spec);
    if (!a.verdict.pass) {
        emit(c.out_path, out, report_text(report, c.pretty));
        return kExitFail;
    }
    const YieldCharacteristics yc = yield_characteristics(grid);
    auto shocks = std::make_shared<const ShockSequence>(
        gaussian_noise(grid, spec.model.noise_cov(), 0, horizon, seed));
    const SamplePath path = simulate_ar(spec.model, shocks);

    nlohmann::ordered_json chars = nlohmann::ordered_json::array();
    std::ostringstream table;
    table << "characteristic  analytic  empirical  slope\n";
    const std::pair<const char*, const Vector*> named[] = {
        {"level", &yc.level}, {"slope", &yc.slope}, {"curvature", &yc.curvature}};
    for (const auto& [name, v] : named) {
        nlohmann::ordered_json proj = nlohmann::ordered_json::array();
        for (const auto& st : a.dec->steps()) proj.push_back((projector(st.tau) * *v).norm());
        const ScalarSeries s = v_characteristic(path, *v);
        const Vector tail = s.values.tail(horizon);
        const GrowthEstimate g = growth_diagnostic(std::span<const double>(tail.data(), static_cast<std::size_t>(tail.size())));
        const Index order = analytic_order(*a.series, *v);
        chars.push_back({{"name", name},
                         {"vector", std::vector<double>(v->begin(), v->end())},
                         {"analytic_order", order},
                         {"tau_projection", proj},
                         {"empirical", {{"slope", g.slope}, {"order", g.order}}}});
        char line[96];
        std::snprintf(line, sizeof line, "%-15s I(%lld)      I(%lld)       %.3f\n", name, static_cast<long long>(order),
                      static_cast<long long>(g.order), g.slope);
        table << line;
    }
    std::string text;
    if (c.pretty) {
        std::ostringstream os;
        os << "yield curve on " << grid << " cells, T = " << horizon << ", seed " << seed << '\n';
        print_pretty(os, report);
        os << table.str();
        text = os.str();
    } else {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["grid"] = grid;
        j["T"] = horizon;
        j["seed"] = seed;
        j["characteristics"] = chars;
        j["report"] = to_json(report);
        text = j.dump(2) + '\n';
    }
    emit(c.out_path, out, text);
    return kExitPass;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integration order, cointegrating relations and common trends of unit-root AR models", "hcoint"};
    app.require_subcommand(1);

    Common ca, cs, cy;
    std::string analyze_model, simulate_model;
    std::optional<Index> count;
    Index sim_t = 1000, demo_t = 4096, grid = 8, tail_terms = 512;
    std::uint64_t sim_seed = 1, demo_seed = 1;
    std::string method = "ar";
    bool with_relations = false;

    auto* analyze = app.add_subcommand("analyze", "Analyze a model file and print a report");
    analyze->add_option("model", analyze_model, "Model JSON")->required();
    analyze->add_flag("--pretty", ca.pretty, "Human-readable output");
    analyze->add_option("--out", ca.out_path, "Write the report here instead of stdout");
    analyze->add_option("--count", count, "Highest Laurent coefficient index (default d + 4)")->check(CLI::NonNegativeNumber);
    add_common(analyze, ca);

    auto* simulate = app.add_subcommand("simulate", "Simulate a sample path to CSV");
    simulate->add_option("model", simulate_model, "Model JSON")->required();
    simulate->add_option("--T", sim_t, "Number of periods")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--out", cs.out_path, "Path CSV (stdout when omitted)");
    simulate->add_flag("--relations", with_relations, "Also write <out>_relations.csv");
    simulate->add_option("--method", method, "ar or common-trends")->check(CLI::IsMember({"ar", "common-trends"}));
    simulate->add_option("--tail-terms", tail_terms, "Lag weights kept in the common-trends tail")->check(CLI::PositiveNumber);
    add_common(simulate, cs);

    auto* demo = app.add_subcommand("yield-demo", "Level/slope/curvature orders on a demo yield-curve model");
    demo->add_option("--grid", grid, "Number of maturity cells (>= 4)");
    demo->add_option("--T", demo_t, "Periods for the empirical check")->check(CLI::Range(256, 100000000));
    demo->add_option("--seed", demo_seed, "RNG seed");
    demo->add_flag("--pretty", cy.pretty, "Human-readable output");
    demo->add_option("--out", cy.out_path, "Write output here instead of stdout");
    add_common(demo, cy);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitPass : kExitIo;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_model, ca, count, out);
        if (*simulate)
            return cmd_simulate(simulate_model, cs, sim_t, sim_seed, method, with_relations, tail_terms, out, err);
        return cmd_yield_demo(grid, cy, demo_t, demo_seed, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace hcoint
