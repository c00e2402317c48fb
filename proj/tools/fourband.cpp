#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <Eigen/LU>

#include "fourband/asymptotics.hpp"
#include "fourband/discriminants.hpp"
#include "fourband/io.hpp"
#include "fourband/monodromy.hpp"
#include "fourband/reference.hpp"
#include "fourband/spectrum.hpp"
#include "fourband/zeros.hpp"

namespace {

using namespace fourband;
using C = std::complex<double>;

struct RunConfig {
    std::string coeffs_path;
    std::string preset = "zero";
    double scale = 1.0;
    int n_max = 2;
    double lambda_max = std::pow(2.0 * M_PI * 1.5, 4);
    std::vector<double> eps_list{0.05, 0.1, 0.2};
    double tol_ode = 1e-12;
    double tol_root = 1e-11;
    std::string out_path;
    std::string format = "json";
    unsigned seed = 20240817;
};

CoefficientSet resolve_coefficients(const RunConfig& cfg) {
    CoefficientSet c = cfg.coeffs_path.empty()
                           ? preset_coefficients(cfg.preset)
                           : load_coefficients_file(cfg.coeffs_path);
    if (cfg.scale != 1.0) c = c.scaled(cfg.scale);
    return c;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw InputError("cannot open output path: " + cfg.out_path);
    out << text << "\n";
}

int cmd_spectrum(const RunConfig& cfg) {
    const CoefficientSet c = resolve_coefficients(cfg);
    const SpectrumReport rep = assemble(c, cfg.lambda_max, cfg.tol_root);
    emit(cfg, spectrum_report_to_json(rep));
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    const CoefficientSet c = resolve_coefficients(cfg);
    std::ostringstream os;
    os << "lambda,T1,T2,rho,Dplus,Dminus,ReDelta1,ImDelta1,ReDelta2,ImDelta2";
    if (cfg.lambda_max < 0.0) {  // empty window: header only
        emit(cfg, os.str());
        return 0;
    }
    const double s_hi = std::pow(cfg.lambda_max, 0.25);
    for (double s = -s_hi; s <= s_hi + 1e-12; s += M_PI / 40.0) {
        const double lam = s * std::abs(s) * s * s;
        const SpectralPoint pt{C(lam, 0.0)};
        if (pt.x > kOverflowClampX)
            throw PreconditionError("trace grid exceeds the overflow clamp");
        const DiscriminantBundle b = bundle(c, pt);
        os << "\n"
           << format_double(lam) << "," << format_double(b.T1.real()) << ","
           << format_double(b.T2.real()) << "," << format_double(b.rho.real())
           << "," << format_double(b.Dplus.real()) << ","
           << format_double(b.Dminus.real()) << ","
           << format_double(b.Delta1.real()) << ","
           << format_double(b.Delta1.imag()) << ","
           << format_double(b.Delta2.real()) << ","
           << format_double(b.Delta2.imag());
    }
    emit(cfg, os.str());
    return 0;
}

std::string zeros_to_csv(const std::vector<LocatedZero>& zs) {
    std::ostringstream os;
    os << "lambda_re,lambda_im,which,multiplicity,label_n,label_sign";
    for (const auto& z : zs) {
        os << "\n"
           << format_double(z.lambda.real()) << ","
           << format_double(z.lambda.imag()) << "," << to_string(z.which)
           << "," << z.multiplicity << ",";
        if (z.label)
            os << z.label->n << "," << (z.label->sign > 0 ? "+" : "-");
        else
            os << ",";
    }
    return os.str();
}

int cmd_eigs(const RunConfig& cfg) {
    const CoefficientSet c = resolve_coefficients(cfg);
    ZeroTables t;
    auto lp = enumerate_zeros(TargetFunction::Dplus, c, cfg.n_max, cfg.tol_root);
    auto lm = enumerate_zeros(TargetFunction::Dminus, c, cfg.n_max, cfg.tol_root);
    t.periodic = std::move(lp.zeros);
    t.antiperiodic = std::move(lm.zeros);
    t.unlabeled = std::move(lp.unlabeled);
    t.unlabeled.insert(t.unlabeled.end(), lm.unlabeled.begin(),
                       lm.unlabeled.end());
    if (cfg.format == "csv") {
        std::vector<LocatedZero> all = t.periodic;
        all.insert(all.end(), t.antiperiodic.begin(), t.antiperiodic.end());
        emit(cfg, zeros_to_csv(all));
    } else {
        emit(cfg, zero_tables_to_json(t));
    }
    return 0;
}

int cmd_resonances(const RunConfig& cfg) {
    const CoefficientSet c = resolve_coefficients(cfg);
    auto lr = enumerate_zeros(TargetFunction::rho, c, cfg.n_max, cfg.tol_root);
    if (cfg.format == "csv") {
        emit(cfg, zeros_to_csv(lr.zeros));
    } else {
        ZeroTables t;
        t.resonances = std::move(lr.zeros);
        t.unlabeled = std::move(lr.unlabeled);
        emit(cfg, zero_tables_to_json(t));
    }
    return 0;
}

// ---------------------------------------------------------------- verify

struct SuiteResult {
    std::string name;
    double max_residual = 0.0;
    bool pass = true;
    std::string detail;
};

CoefficientSet random_coefficients(std::mt19937& rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    std::uniform_int_distribution<int> modes(1, 3);
    FourierSeries p, q;
    const int kp = modes(rng), kq = modes(rng);
    for (int k = 0; k < kp; ++k) {
        p.cos_coeffs.push_back(u(rng));
        p.sin_coeffs.push_back(u(rng));
    }
    q.constant = u(rng);
    for (int k = 0; k < kq; ++k) {
        q.cos_coeffs.push_back(u(rng));
        q.sin_coeffs.push_back(u(rng));
    }
    return CoefficientSet(p, q);
}

std::vector<C> lambda_samples(std::mt19937& rng, int count) {
    std::uniform_real_distribution<double> mag(0.5, 4.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    std::vector<C> out;
    for (int i = 0; i < count; ++i) {
        const double m = std::pow(10.0, mag(rng));
        if (i % 2 == 0)
            out.push_back(C((i % 4 == 0 ? 1.0 : -1.0) * m, 0.0));
        else
            out.push_back(std::polar(m, ph(rng)));
    }
    return out;
}

double det_residual(const Eigen::Matrix4cd& M) {
    double scale = 1.0;
    for (int k = 0; k < 4; ++k) scale *= M.row(k).norm();
    return std::abs(M.determinant() - 1.0) / std::max(1.0, scale);
}

SuiteResult suite_det(const std::vector<CoefficientSet>& sets,
                      const std::vector<C>& lams, double tol_ode) {
    SuiteResult r{"det-M", 0.0, true,
                  "det M = 1 (relative to the Hadamard row bound)"};
    for (const auto& c : sets)
        for (const C lam : lams) {
            const auto mr = integrate_monodromy(c, SpectralPoint(lam), false,
                                                tol_ode);
            r.max_residual = std::max(r.max_residual, det_residual(mr.M));
        }
    r.pass = r.max_residual <= 1e-9;
    return r;
}

double bundle_identity_residual(const DiscriminantBundle& b) {
    const double scale = std::max(1.0, std::abs(b.T2));
    double res = 0.0;
    auto upd = [&](C lhs, C rhs) {
        res = std::max(res, std::abs(lhs - rhs) / scale);
    };
    upd(b.T, 4.0 * b.T1 * b.T1 - b.T2);
    upd(b.rho, (b.T2 + 1.0) / 2.0 - b.T1 * b.T1);
    upd(b.Dplus, (b.T - 4.0 * b.T1 + 1.0) / 2.0);
    upd(b.Dminus, (b.T + 4.0 * b.T1 + 1.0) / 2.0);
    upd(b.Dplus - b.Dminus, -4.0 * b.T1);
    upd(b.Dplus, (b.T1 - 1.0) * (b.T1 - 1.0) - b.rho);
    upd(b.Dminus, (b.T1 + 1.0) * (b.T1 + 1.0) - b.rho);
    upd(b.Delta1 * b.Delta1 + b.Delta2 * b.Delta2, 1.0 + b.T2);
    upd(b.Delta1 * b.Delta2, (b.T - 1.0) / 2.0);
    return res;
}

SuiteResult suite_identities(const std::vector<CoefficientSet>& sets,
                             const std::vector<C>& lams) {
    SuiteResult r{"identities", 0.0, true,
                  "T = 4 T1^2 - T2; rho = (T2+1)/2 - T1^2; "
                  "D+- = (T -+ 4 T1 + 1)/2; D+ - D- = -4 T1; "
                  "D+- = (T1 -+ 1)^2 - rho; Delta identities"};
    for (const auto& c : sets)
        for (const C lam : lams) {
            const auto b = bundle(c, SpectralPoint(lam));
            r.max_residual =
                std::max(r.max_residual, bundle_identity_residual(b));
        }
    r.pass = r.max_residual <= 1e-9;
    return r;
}

SuiteResult suite_char_poly(const std::vector<CoefficientSet>& sets,
                            const std::vector<C>& lams) {
    SuiteResult r{"char-poly", 0.0, true,
                  "det(M - tau I) = tau^4 - 4 T1 tau^3 + 2 T tau^2 "
                  "- 4 T1 tau + 1"};
    for (const auto& c : sets)
        for (const C lam : lams)
            r.max_residual = std::max(r.max_residual,
                                      char_poly_check(c, SpectralPoint(lam)));
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult suite_multipliers(const std::vector<CoefficientSet>& sets,
                              const std::vector<C>& lams) {
    SuiteResult r{"multipliers", 0.0, true, "tau pairs satisfy tau * tau' = 1"};
    for (const auto& c : sets)
        for (const C lam : lams) {
            const auto b = bundle(c, SpectralPoint(lam));
            const auto m = multipliers(b);
            r.max_residual =
                std::max({r.max_residual, std::abs(m[0] * m[1] - 1.0),
                          std::abs(m[2] * m[3] - 1.0)});
        }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

SuiteResult suite_bounds(const std::vector<CoefficientSet>& sets,
                         const std::vector<C>& lams) {
    SuiteResult r{"bounds", 0.0, true,
                  "|T_nu - T_nu^0| <= (nu kappa / 2 |z|_1) e^{x nu + kappa}; "
                  "|rho - rho^0| <= (3 kappa / |z|_1) e^{2x + kappa}; "
                  "|T - T^0| <= (9 kappa / |z|) e^{x + |y|} on L3; "
                  "|D+- - D+-^0| <= (7 kappa / |z|) e^{x + |y|} on L4"};
    // residual reported as violation amount / bound; pass needs <= 1
    for (const auto& c : sets) {
        const double kappa = c.kappa();
        for (const C lam : lams) {
            const SpectralPoint pt{lam};
            const auto b = bundle(c, pt);
            const auto b0 = free_discriminants(pt);
            const double ek = std::exp(pt.x + kappa);
            for (int nu = 1; nu <= 2; ++nu) {
                const C tn = nu == 1 ? b.T1 : b.T2;
                const C tn0 = nu == 1 ? b0.T1 : b0.T2;
                const double bound = nu * kappa / (2.0 * pt.z1) *
                                     std::exp(pt.x * nu + kappa);
                r.max_residual =
                    std::max(r.max_residual, std::abs(tn - tn0) / bound);
            }
            const double rho_bound =
                3.0 * kappa / pt.z1 * std::exp(2.0 * pt.x + kappa);
            r.max_residual =
                std::max(r.max_residual, std::abs(b.rho - b0.rho) / rho_bound);
            const double az = std::abs(pt.z);
            const double exy = std::exp(pt.x + std::abs(pt.y));
            const double lr_scale = std::max(1.0, std::pow(kappa, 4));
            if (std::abs(lam) > std::pow(3.0, 4) * lr_scale)
                r.max_residual = std::max(
                    r.max_residual,
                    std::abs(b.T - b0.T) / (9.0 * kappa / az * exy));
            if (std::abs(lam) > std::pow(4.0, 4) * lr_scale) {
                r.max_residual = std::max(
                    r.max_residual,
                    std::abs(b.Dplus - b0.Dplus) / (7.0 * kappa / az * exy));
                r.max_residual = std::max(
                    r.max_residual,
                    std::abs(b.Dminus - b0.Dminus) / (7.0 * kappa / az * exy));
            }
            (void)ek;
        }
    }
    r.pass = r.max_residual <= 1.0;
    return r;
}

SuiteResult suite_pairing(const RunConfig& cfg) {
    SuiteResult r{"conjugate-pairing", 0.0, true,
                  "zero sets closed under conjugation for real coefficients"};
    const CoefficientSet c = resolve_coefficients(cfg);
    const auto lr = enumerate_zeros(TargetFunction::rho, c, 2, cfg.tol_root);
    std::vector<LocatedZero> all = lr.zeros;
    all.insert(all.end(), lr.unlabeled.begin(), lr.unlabeled.end());
    for (const auto& z : all) {
        if (z.lambda.imag() == 0.0) continue;
        double best = 1e300;
        for (const auto& w : all)
            best = std::min(best,
                            std::abs(w.lambda - std::conj(z.lambda)) /
                                std::max(1.0, std::abs(z.lambda)));
        r.max_residual = std::max(r.max_residual, best);
    }
    r.pass = r.max_residual <= 1e-8;
    return r;
}

int cmd_verify(const RunConfig& cfg) {
    std::mt19937 rng(cfg.seed);
    std::vector<CoefficientSet> sets{resolve_coefficients(cfg)};
    for (int i = 0; i < 6; ++i) sets.push_back(random_coefficients(rng, 0.5));
    const std::vector<C> lams = lambda_samples(rng, 10);

    std::vector<SuiteResult> results;
    results.push_back(suite_det(sets, lams, cfg.tol_ode));
    results.push_back(suite_identities(sets, lams));
    results.push_back(suite_char_poly(sets, lams));
    results.push_back(suite_multipliers(sets, lams));
    results.push_back(suite_bounds(sets, lams));
    results.push_back(suite_pairing(cfg));

    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                  << "  max residual " << format_double(r.max_residual)
                  << "\n";
        if (!r.pass) {
            std::cout << "  violated: " << r.detail << "\n";
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_perturb(const RunConfig& cfg) {
    const CoefficientSet base = resolve_coefficients(cfg);
    std::ostringstream os;
    os << "eps,r0,l0,gap,r0_pred,l0_pred,gap_pred,error";
    std::vector<double> eps_ok, gap_ok;
    for (double eps : cfg.eps_list) {
        os << "\n" << format_double(eps) << ",";
        try {
            if (eps == 0.0) {
                os << "0,0,0,0,0,0,";
                continue;
            }
            const auto pred = perturbation_predictions(base, eps);
            const CoefficientSet c = base.scaled(eps);
            const LocatedZero r0 = refine_zero(TargetFunction::rho,
                                               C(pred.r0_pred, 0.0), c,
                                               cfg.tol_root);
            const LocatedZero l0 = refine_zero(TargetFunction::Dplus,
                                               C(pred.l0_pred, 0.0), c,
                                               cfg.tol_root);
            const double gap = l0.lambda.real() - r0.lambda.real();
            os << format_double(r0.lambda.real()) << ","
               << format_double(l0.lambda.real()) << "," << format_double(gap)
               << "," << format_double(pred.r0_pred) << ","
               << format_double(pred.l0_pred) << ","
               << format_double(pred.gap_pred) << ",";
            if (gap > 0.0) {
                eps_ok.push_back(eps);
                gap_ok.push_back(gap);
            }
        } catch (const Error& e) {
            os << ",,,,,," << e.what();
        }
    }
    if (eps_ok.size() >= 2)
        os << "\nfitted_gap_slope," << format_double(loglog_slope(eps_ok, gap_ok));
    emit(cfg, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral analysis of the periodic fourth-order operator "
                 "d^4/dt^4 + (d/dt) p (d/dt) + q"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--coeffs", cfg.coeffs_path,
                   "coefficient JSON file (overrides --preset)");
    app.add_option("--preset", cfg.preset, "named preset: zero | cos1");
    app.add_option("--scale", cfg.scale, "multiply both coefficients");
    app.add_option("--n-max", cfg.n_max, "table depth N");
    app.add_option("--lambda-max", cfg.lambda_max, "upper end of the window");
    app.add_option("--eps", cfg.eps_list, "epsilon sweep for perturb");
    app.add_option("--tol-ode", cfg.tol_ode, "integrator local tolerance");
    app.add_option("--tol-root", cfg.tol_root, "root refinement tolerance");
    app.add_option("--out", cfg.out_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", cfg.seed, "seed for the randomized suites");

    auto* sc_spectrum = app.add_subcommand("spectrum", "labeled bands report");
    auto* sc_trace = app.add_subcommand("trace", "discriminant samples (CSV)");
    auto* sc_eigs = app.add_subcommand("eigs", "periodic/antiperiodic table");
    auto* sc_res = app.add_subcommand("resonances", "resonance table");
    auto* sc_verify = app.add_subcommand("verify", "identity/bound suites");
    auto* sc_perturb = app.add_subcommand("perturb", "small-coupling sweep");
    // shared options are declared on the parent; let them match after the
    // subcommand name as well
    for (CLI::App* sc :
         {sc_spectrum, sc_trace, sc_eigs, sc_res, sc_verify, sc_perturb})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
        if (sc_spectrum->parsed()) return cmd_spectrum(cfg);
        if (sc_trace->parsed()) return cmd_trace(cfg);
        if (sc_eigs->parsed()) return cmd_eigs(cfg);
        if (sc_res->parsed()) return cmd_resonances(cfg);
        if (sc_verify->parsed()) return cmd_verify(cfg);
        if (sc_perturb->parsed()) return cmd_perturb(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
