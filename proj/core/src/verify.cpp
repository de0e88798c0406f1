#include "chebproj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "chebproj/bspline_basis.hpp"
#include "chebproj/extremal.hpp"
#include "chebproj/partition.hpp"
#include "chebproj/projection.hpp"
#include "chebproj/quadrature.hpp"

namespace chebproj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> grid_samples(const std::vector<double>& bp, int per) {
    std::vector<double> xs;
    xs.push_back(bp.front());
    for (std::size_t j = 0; j + 1 < bp.size(); ++j)
        for (int q = 1; q <= per; ++q)
            xs.push_back(bp[j] + (bp[j + 1] - bp[j]) * q / double(per + 1));
    xs.push_back(bp.back());
    return xs;
}

double spline_integral(const BSplineBasis& basis, int i) {
    const std::vector<double>& bp = basis.partition().breakpoints();
    const int rule = std::max(2 * basis.order() + 2, 16);
    double s = 0.0;
    for (int ell = basis.support_begin(i); ell <= basis.support_end(i); ++ell)
        s += gauss_integrate([&](double x) { return basis.m_spline(i, x); },
                             bp[std::size_t(ell)], bp[std::size_t(ell) + 1], rule);
    return s;
}

struct CellRun {
    const ExperimentConfig& cfg;
    std::string cell;
    std::vector<VerifyCheck>& out;

    void push(const std::string& name, const std::string& status, double value, double tol,
              std::string detail = "") {
        out.push_back({cell, name, status, value, tol, std::move(detail)});
    }
    void quantitative(const std::string& name, double value, double tol,
                      std::string detail = "") {
        push(name, value <= tol ? "pass" : "fail", value, tol, std::move(detail));
    }
};

void check_cell(const ExperimentConfig& cfg, int k, MeshFamily family, int n,
                bool self_test, std::vector<VerifyCheck>& out) {
    const std::string cell = "k=" + std::to_string(k) +
                             " family=" + mesh_family_name(family) + " n=" + std::to_string(n);
    CellRun run{cfg, cell, out};

    const std::uint64_t sd = derive_seed(cfg.seed, std::uint64_t(int(family)),
                                         std::uint64_t(n), std::uint64_t(k));
    std::vector<double> bp;
    try {
        bp = generate_breakpoints(cfg.make_mesh_spec(family, n, sd));
    } catch (const std::exception& e) {
        run.push("construct", "fail", 0.0, 0.0, e.what());
        return;
    }

    try {
        const WeightSystem w = cfg.make_weights(k);
        Partition part(bp, k);
        BSplineBasis basis(part, w);
        Projector proj(basis);
        const EctSystem& sys = basis.system();
        run.push("construct", "pass", 0.0, 0.0);

        const std::vector<double> xs = grid_samples(bp, 6);

        {
            double worst = 0.0;
            for (int i = 0; i < basis.count(); ++i)
                worst = std::max(worst, std::abs(spline_integral(basis, i) - 1.0));
            run.quantitative("integral_one", worst, 1e-9);
        }

        {
            double sup_u = 0.0, worst = 0.0;
            for (double x : xs) sup_u = std::max(sup_u, std::abs(sys.u_jet(1, x, 0)[0]));
            for (double x : xs) {
                double s = 0.0;
                for (int i = 0; i < basis.count(); ++i) s += basis.n_spline(i, x);
                worst = std::max(worst, std::abs(s - sys.u_jet(1, x, 0)[0]));
            }
            run.quantitative("partition_of_unity", worst / sup_u, 1e-8);
        }

        if (self_test) {
            // corrupt one renormalization constant and demand the unity
            // check notices: a test of the test
            double sup_u = 0.0, worst = 0.0;
            for (double x : xs) sup_u = std::max(sup_u, std::abs(sys.u_jet(1, x, 0)[0]));
            for (double x : xs) {
                double s = basis.alpha(0) * 2.0 * basis.m_spline(0, x);
                for (int i = 1; i < basis.count(); ++i) s += basis.n_spline(i, x);
                worst = std::max(worst, std::abs(s - sys.u_jet(1, x, 0)[0]));
            }
            const bool caught = worst / sup_u > 1e-8;
            run.push("self_test_corrupted_alpha", caught ? "pass" : "fail", worst / sup_u,
                     1e-8, "corruption must violate the unity check");
        }

        double gap = 0.0;
        for (std::size_t j = 0; j + 1 < bp.size(); ++j) gap = std::max(gap, bp[j + 1] - bp[j]);
        if (gap <= 1.0) {
            double worst = 0.0;
            for (int i = 0; i < basis.count(); ++i) {
                const int lo = std::max(0, i - k - 1);
                const int hi = std::min(basis.count() - 1, i + k + 1);
                for (int j = lo; j <= hi; ++j) {
                    const double v =
                        basis.dual_apply(i, [&](double x) { return basis.n_spline(j, x); });
                    worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
                }
            }
            run.quantitative("duality", worst, 1e-6);
        } else {
            run.push("duality", "skip", gap, 1.0, "mesh norm exceeds one");
        }

        {
            double vmax = 0.0;
            for (int i = 0; i < basis.count(); ++i)
                for (int j = 0; j < basis.count(); ++j)
                    vmax = std::max(vmax, std::abs(proj.inverse_entry(i, j)));
            const double floor = 1e-12 * vmax;
            int violations = 0;
            for (int i = 0; i < basis.count(); ++i)
                for (int j = 0; j < basis.count(); ++j) {
                    const double v = proj.inverse_entry(i, j);
                    if (std::abs(v) <= floor) continue;
                    const double want = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                    if (!(want * v > 0.0)) ++violations;
                }
            run.quantitative("gram_checkerboard", double(violations), 0.0);
        }

        {
            std::mt19937_64 rng(derive_seed(sd, 0x45584143ull, 0, 0));
            std::uniform_real_distribution<double> coef(-1.0, 1.0);
            double worst = 0.0;
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<double> c(std::size_t(basis.count()));
                for (double& v : c) v = coef(rng);
                auto f = [&](double x) {
                    double s = 0.0;
                    for (int i = 0; i < basis.count(); ++i)
                        s += c[std::size_t(i)] * basis.m_spline(i, x);
                    return s;
                };
                const std::vector<double> got = proj.project(f);
                double scale = 0.0, diff = 0.0;
                for (int i = 0; i < basis.count(); ++i) {
                    scale = std::max(scale, std::abs(c[std::size_t(i)]));
                    diff = std::max(diff, std::abs(got[std::size_t(i)] - c[std::size_t(i)]));
                }
                worst = std::max(worst, diff / scale);
            }
            run.quantitative("projection_exactness", worst, 1e-8);
        }

        {
            const NormReport nr = proj.report();
            const bool fit_ok =
                nr.decay_fit_ok && (k == 1 ? nr.decay_q == 0.0 : nr.decay_q < 1.0);
            run.push("decay_fit", fit_ok ? "pass" : "fail", nr.decay_q, 1.0);
            const bool bounds = nr.norm >= 1.0 - 1e-9 && nr.at_a <= nr.norm + 1e-9 &&
                                nr.at_b <= nr.norm + 1e-9;
            run.push("lebesgue_bounds", bounds ? "pass" : "fail", nr.norm, 0.0);
        }

        if (k >= 2) {
            SigmaSystem ssys(w, part);
            SigmaSpline sig(ssys);

            double sup = 0.0;
            for (double x : xs) sup = std::max(sup, std::abs(sig.sigma(x)));
            double at_knots = 0.0;
            for (std::size_t j = 1; j + 1 < bp.size(); ++j)
                at_knots = std::max(at_knots, std::abs(sig.sigma(bp[j])));
            run.quantitative("sigma_interior_zeros", at_knots / sup, 1e-9);

            const double ref = sig.conserved_reference();
            double dev = 0.0;
            for (double x : xs) dev = std::max(dev, std::abs(sig.conserved(x) - ref));
            run.quantitative("h_conserved", dev / std::abs(ref), 1e-6);

            const std::vector<double> prods = sig.phi_products(basis);
            int violations = 0;
            double mn = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < prods.size(); ++j) {
                const double want = (j % 2 == 0) ? 1.0 : -1.0;
                if (!(want * prods[j] > 0.0)) ++violations;
                mn = std::min(mn, std::abs(prods[j]));
            }
            run.quantitative("phi_alternation", double(violations), 0.0,
                             "min product " + format_float(mn));
        } else {
            run.push("sigma_interior_zeros", "skip", 0.0, 0.0,
                     "order one has no extremizer diagnostics");
            run.push("h_conserved", "skip", 0.0, 0.0,
                     "order one has no extremizer diagnostics");
            run.push("phi_alternation", "skip", 0.0, 0.0,
                     "order one has no extremizer diagnostics");
        }
    } catch (const std::exception& e) {
        run.push("cell_error", "fail", 0.0, 0.0, e.what());
    }
}

}  // namespace

VerifyReport run_verify_checks(const ExperimentConfig& cfg) {
    VerifyReport report;
    bool self_test_pending = cfg.verify_self_test;
    for (int k : cfg.orders)
        for (MeshFamily family : cfg.families) {
            std::set<int> sizes;
            for (int n : cfg.ladder) sizes.insert(std::min(n, cfg.verify_max_n));
            for (int n : sizes) {
                check_cell(cfg, k, family, n, self_test_pending, report.checks);
                self_test_pending = false;
            }
        }
    for (const VerifyCheck& c : report.checks)
        if (c.status == "fail") report.ok = false;
    return report;
}

int run_verify_suite(const ExperimentConfig& cfg, std::ostream& log) {
    log << "seed: " << cfg.seed << "\n";
    const VerifyReport report = run_verify_checks(cfg);

    int pass = 0, fail = 0, skip = 0;
    for (const VerifyCheck& c : report.checks) {
        if (c.status == "pass") ++pass;
        else if (c.status == "fail") ++fail;
        else ++skip;
        log << "[" << c.status << "] " << c.cell << " :: " << c.name;
        if (c.tol > 0.0 || c.value != 0.0)
            log << " (value " << format_float(c.value) << ", tol " << format_float(c.tol)
                << ")";
        if (!c.detail.empty()) log << " - " << c.detail;
        log << "\n";
    }

    ordered_json j;
    j["schema"] = kSummarySchema;
    j["command"] = "verify";
    j["seed"] = cfg.seed;
    ordered_json fams = ordered_json::array();
    for (MeshFamily f : cfg.families) fams.push_back(mesh_family_name(f));
    j["grid"] = {{"k", cfg.orders},
                 {"families", fams},
                 {"ladder", cfg.ladder},
                 {"max_n", cfg.verify_max_n},
                 {"preset", cfg.weight_preset},
                 {"self_test", cfg.verify_self_test}};
    ordered_json checks = ordered_json::array();
    for (const VerifyCheck& c : report.checks)
        checks.push_back({{"cell", c.cell},
                          {"name", c.name},
                          {"status", c.status},
                          {"value", c.value},
                          {"tol", c.tol},
                          {"detail", c.detail}});
    j["checks"] = checks;
    j["counts"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}};
    j["ok"] = report.ok;

    std::filesystem::path dir(cfg.resolved_out_dir());
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / (cfg.prefix + "-verify.json");
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << j.dump(2) << "\n";
    }
    log << "verify: " << pass << " passed, " << fail << " failed, " << skip
        << " skipped; wrote " << path.string() << "\n";
    return report.ok ? 0 : 1;
}

}  // namespace chebproj
