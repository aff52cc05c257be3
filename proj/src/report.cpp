#include "hcoint/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "hcoint/error.hpp"

namespace hcoint {

using ojson = nlohmann::ordered_json;

Analysis run_analysis(const ModelSpec& spec, const AnalyzeOptions& options) {
    Analysis a;
    a.policy = spec.policy;
    a.diagnostics = root_diagnostics(spec.model, spec.policy, spec.roots);
    a.verdict = assert_finite_type(a.diagnostics);
    if (!a.verdict.pass) return a;

    a.pencil = taylor_at_one(spec.model);
    a.dec = decompose(*a.pencil, spec.policy);
    LaurentOptions lo;
    lo.count = options.laurent_count;
    lo.radius = options.radius.value_or(default_laurent_radius(a.diagnostics));
    lo.jobs = options.jobs;
    a.series = laurent_coeffs(*a.pencil, a.dec->order(), lo);
    a.equivalences = verify_pole_equivalences(*a.dec, *a.series, spec.policy);
    a.chain = chain_identity_residuals(*a.dec, *a.series);
    a.bss = bss_condition_check(*a.pencil, spec.policy);
    if (spec.model.order() == 1) a.jordan_d = jordan_oracle_ar1(spec.model.coeff(1), spec.policy);
    return a;
}

AnalysisReport make_report(const Analysis& a, const ModelSpec& spec) {
    AnalysisReport r;
    r.pass = a.verdict.pass;
    r.reason = std::string(to_string(a.verdict.reason));
    r.detail = a.verdict.detail;
    r.rel_tol = a.policy.rel_tol;
    r.abs_floor = a.policy.abs_floor;

    const RootDiagnostics& dg = a.diagnostics;
    r.p = spec.model.dim();
    r.k = spec.model.order();
    r.eigenvalues = dg.eigenvalues;
    r.unit_cluster_size = dg.unit_cluster_size;
    r.cluster_center_error = dg.cluster_center_error;
    r.max_other_modulus = dg.max_other_modulus;
    if (std::isfinite(dg.root_distance)) r.root_distance = dg.root_distance;
    r.dim_ker_a0 = dg.dim_ker_a0;
    r.dim_coker_a0 = dg.dim_coker_a0;
    r.a0_vanishes = dg.a0_vanishes;
    if (!a.dec) return r;

    const Decomposition& dec = *a.dec;
    r.d = dec.order();
    r.dims = dec.dims();
    for (const auto& st : dec.steps()) {
        r.tau_bases.push_back(canonical_basis(st.tau));
        r.zeta_bases.push_back(canonical_basis(st.zeta));
    }
    r.attractor = canonical_basis(dec.attractor());
    r.coint_space = canonical_basis(dec.coint_space());
    for (Index h = 0; h <= dec.order(); ++h) {
        const RelationTemplate t = relations(dec, h);
        RelationReport rel{h, r.tau_bases[static_cast<std::size_t>(h)], t.poly_coeffs, {}};
        for (Index i = 0; i < rel.basis.cols(); ++i) rel.rows.push_back(t.for_direction(rel.basis.col(i)));
        r.relations.push_back(std::move(rel));
    }
    r.pole_equivalences = a.equivalences.checks;
    r.chain_identities = a.chain;
    r.bss = std::string(to_string(a.bss.outcome));
    r.jordan_d = a.jordan_d;

    const LaurentSeries& s = *a.series;
    r.laurent_radius = s.radius;
    r.laurent_nodes = s.nodes;
    r.laurent_residual = s.residual;
    r.laurent_max_imag = s.max_imag;
    r.laurent_pointwise = identity_residuals(*a.pencil, s).max_pointwise();
    r.laurent_coeffs = s.coeffs;
    return r;
}

namespace {

ojson columns_to_json(const Matrix& m) {
    ojson out = ojson::array();
    for (Index j = 0; j < m.cols(); ++j) out.push_back(std::vector<double>(m.col(j).begin(), m.col(j).end()));
    return out;
}

Matrix columns_from_json(const nlohmann::json& j, Index p) {
    Matrix m(p, static_cast<Index>(j.size()));
    for (Index c = 0; c < m.cols(); ++c) {
        const auto col = j.at(static_cast<std::size_t>(c)).get<std::vector<double>>();
        if (static_cast<Index>(col.size()) != p) throw Error(ErrorCode::Schema, "report: basis vector has wrong length");
        m.col(c) = Eigen::Map<const Vector>(col.data(), p);
    }
    return m;
}

ojson vector_to_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

Vector vector_from_json(const nlohmann::json& j) {
    const auto x = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(x.data(), static_cast<Index>(x.size()));
}

}  // namespace

ojson to_json(const AnalysisReport& r) {
    ojson j;
    j["schema"] = r.schema;
    j["verdict"] = {{"pass", r.pass}, {"reason", r.reason}, {"detail", r.detail}};
    j["policy"] = {{"rel_tol", r.rel_tol}, {"abs_floor", r.abs_floor}};

    ojson eig = ojson::array();
    for (const auto& z : r.eigenvalues) eig.push_back({z.real(), z.imag()});
    j["diagnostics"] = {{"p", r.p},
                        {"k", r.k},
                        {"eigenvalues", eig},
                        {"unit_cluster_size", r.unit_cluster_size},
                        {"cluster_center_error", r.cluster_center_error},
                        {"max_other_modulus", r.max_other_modulus},
                        {"root_distance", r.root_distance ? ojson(*r.root_distance) : ojson(nullptr)},
                        {"dim_ker_a0", r.dim_ker_a0},
                        {"dim_coker_a0", r.dim_coker_a0},
                        {"a0_vanishes", r.a0_vanishes}};
    if (!r.d) return j;

    j["d"] = *r.d;
    j["dims"] = r.dims;
    ojson tau = ojson::array(), zeta = ojson::array();
    for (const auto& b : r.tau_bases) tau.push_back(columns_to_json(b));
    for (const auto& b : r.zeta_bases) zeta.push_back(columns_to_json(b));
    j["bases"] = {{"tau", tau},
                  {"zeta", zeta},
                  {"attractor", columns_to_json(r.attractor)},
                  {"cointegrating", columns_to_json(r.coint_space)}};

    ojson rels = ojson::array();
    for (const auto& rel : r.relations) {
        ojson coeffs = ojson::array(), rows = ojson::array();
        for (const auto& c : rel.coefficients) coeffs.push_back(matrix_to_json(c));
        for (const auto& per_dir : rel.rows) {
            ojson dir = ojson::array();
            for (const auto& row : per_dir) dir.push_back(vector_to_json(row));
            rows.push_back(std::move(dir));
        }
        rels.push_back({{"h", rel.h}, {"basis", columns_to_json(rel.basis)}, {"coefficients", coeffs}, {"rows", rows}});
    }
    j["relations"] = rels;

    ojson eq = ojson::array(), chain = ojson::array();
    for (const auto& c : r.pole_equivalences)
        eq.push_back({{"name", c.name}, {"holds", c.holds}, {"residual", c.residual}});
    for (const auto& c : r.chain_identities)
        chain.push_back({{"h", c.h}, {"n", c.n}, {"left", c.left}, {"right", c.right}});
    j["checks"] = {{"pole_equivalences", eq},
                   {"chain_identities", chain},
                   {"bss", r.bss},
                   {"jordan_d", r.jordan_d ? ojson(*r.jordan_d) : ojson(nullptr)}};

    ojson lc = ojson::array();
    for (const auto& c : r.laurent_coeffs) lc.push_back(matrix_to_json(c));
    j["laurent"] = {{"radius", r.laurent_radius},
                    {"nodes", r.laurent_nodes},
                    {"residual", r.laurent_residual},
                    {"max_imag", r.laurent_max_imag},
                    {"pointwise", r.laurent_pointwise},
                    {"coefficients", lc}};
    return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
    try {
        AnalysisReport r;
        r.schema = j.at("schema").get<int>();
        if (r.schema != 1) throw Error(ErrorCode::Schema, "report: unsupported schema version");
        const auto& v = j.at("verdict");
        r.pass = v.at("pass").get<bool>();
        r.reason = v.at("reason").get<std::string>();
        r.detail = v.at("detail").get<std::string>();
        r.rel_tol = j.at("policy").at("rel_tol").get<double>();
        r.abs_floor = j.at("policy").at("abs_floor").get<double>();

        const auto& dg = j.at("diagnostics");
        r.p = dg.at("p").get<Index>();
        r.k = dg.at("k").get<Index>();
        for (const auto& z : dg.at("eigenvalues")) r.eigenvalues.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        r.unit_cluster_size = dg.at("unit_cluster_size").get<Index>();
        r.cluster_center_error = dg.at("cluster_center_error").get<double>();
        r.max_other_modulus = dg.at("max_other_modulus").get<double>();
        if (!dg.at("root_distance").is_null()) r.root_distance = dg.at("root_distance").get<double>();
        r.dim_ker_a0 = dg.at("dim_ker_a0").get<Index>();
        r.dim_coker_a0 = dg.at("dim_coker_a0").get<Index>();
        r.a0_vanishes = dg.at("a0_vanishes").get<bool>();
        if (!j.contains("d")) return r;

        r.d = j.at("d").get<Index>();
        r.dims = j.at("dims").get<std::vector<Index>>();
        const auto& bases = j.at("bases");
        for (const auto& b : bases.at("tau")) r.tau_bases.push_back(columns_from_json(b, r.p));
        for (const auto& b : bases.at("zeta")) r.zeta_bases.push_back(columns_from_json(b, r.p));
        r.attractor = columns_from_json(bases.at("attractor"), r.p);
        r.coint_space = columns_from_json(bases.at("cointegrating"), r.p);

        for (const auto& rj : j.at("relations")) {
            RelationReport rel;
            rel.h = rj.at("h").get<Index>();
            rel.basis = columns_from_json(rj.at("basis"), r.p);
            for (const auto& c : rj.at("coefficients")) rel.coefficients.push_back(matrix_from_json(c, r.p, r.p));
            for (const auto& dir : rj.at("rows")) {
                std::vector<Vector> rows;
                for (const auto& row : dir) rows.push_back(vector_from_json(row));
                rel.rows.push_back(std::move(rows));
            }
            r.relations.push_back(std::move(rel));
        }

        const auto& checks = j.at("checks");
        for (const auto& c : checks.at("pole_equivalences"))
            r.pole_equivalences.push_back(
                {c.at("name").get<std::string>(), c.at("holds").get<bool>(), c.at("residual").get<double>()});
        for (const auto& c : checks.at("chain_identities"))
            r.chain_identities.push_back({c.at("h").get<Index>(), c.at("n").get<Index>(), c.at("left").get<double>(),
                                          c.at("right").get<double>()});
        r.bss = checks.at("bss").get<std::string>();
        if (!checks.at("jordan_d").is_null()) r.jordan_d = checks.at("jordan_d").get<Index>();

        const auto& lj = j.at("laurent");
        r.laurent_radius = lj.at("radius").get<double>();
        r.laurent_nodes = lj.at("nodes").get<Index>();
        r.laurent_residual = lj.at("residual").get<double>();
        r.laurent_max_imag = lj.at("max_imag").get<double>();
        r.laurent_pointwise = lj.at("pointwise").get<double>();
        for (const auto& c : lj.at("coefficients")) r.laurent_coeffs.push_back(matrix_from_json(c, r.p, r.p));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("report: ") + e.what());
    }
}

void print_pretty(std::ostream& os, const AnalysisReport& r) {
    const auto flags = os.flags();
    os << "model: p = " << r.p << ", k = " << r.k << '\n';
    os << "verdict: " << (r.pass ? "PASS" : "FAIL");
    if (!r.pass) os << " (" << r.reason << ")";
    os << '\n';
    if (!r.detail.empty()) os << "  " << r.detail << '\n';
    os << "unit cluster size: " << r.unit_cluster_size << ", dim Ker A_0: " << r.dim_ker_a0
       << ", largest other modulus: " << std::setprecision(6) << r.max_other_modulus << '\n';
    if (!r.d) {
        os.flags(flags);
        return;
    }
    os << "integration order d = " << *r.d << '\n';
    os << "dim tau_h:";
    for (auto n : r.dims) os << ' ' << n;
    os << '\n';

    auto print_vec = [&](const Vector& v) {
        os << '(';
        for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << std::setprecision(6) << (std::abs(v(i)) < 1e-12 ? 0.0 : v(i));
        os << ')';
    };
    for (const auto& rel : r.relations) {
        os << "tau_" << rel.h << ":\n";
        for (Index i = 0; i < rel.basis.cols(); ++i) {
            os << "  v = ";
            print_vec(rel.basis.col(i));
            const auto& rows = rel.rows[static_cast<std::size_t>(i)];
            for (std::size_t n = 0; n < rows.size(); ++n) {
                os << "\n      + Delta^" << n + 1 << " ";
                print_vec(rows[n]);
            }
            os << "   ~ I(" << rel.h << ")\n";
        }
    }
    os << "checks:\n";
    for (const auto& c : r.pole_equivalences)
        os << "  " << std::left << std::setw(22) << c.name << (c.holds ? "holds " : "FAILS ") << std::scientific
           << std::setprecision(2) << c.residual << std::defaultfloat << '\n';
    double chain = 0.0;
    for (const auto& c : r.chain_identities) chain = std::max({chain, c.left, c.right});
    os << "  chain identities max residual " << std::scientific << std::setprecision(2) << chain << std::defaultfloat
       << '\n';
    os << "  direct-sum (pole 1) condition: " << r.bss << '\n';
    if (r.jordan_d) os << "  Jordan oracle d = " << *r.jordan_d << '\n';
    os << "laurent: radius " << r.laurent_radius << ", nodes " << r.laurent_nodes << ", residual " << std::scientific
       << std::setprecision(2) << r.laurent_residual << ", pointwise " << r.laurent_pointwise << '\n';
    os.flags(flags);
}

}  // namespace hcoint
