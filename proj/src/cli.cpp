#include "petzlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "petzlab/bathsim.hpp"
#include "petzlab/bounds.hpp"
#include "petzlab/config.hpp"
#include "petzlab/random.hpp"

namespace petzlab::cli {

namespace {

std::string fmt15(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct BuiltModel {
    Lindbladian lb;
    DensityMatrix reference;               // state the residual checks test against
    std::optional<DensityMatrix> initial;  // scan starting state, when the config has one
    double rate_scale;                     // sets the default time grid
};

BuiltModel build_model(const Config& cfg) {
    const std::string model = cfg.get_string("model");
    if (model == "qubit_family") {
        const QubitFamilyParams params{cfg.get_double("q"), cfg.get_double("p0"),
                                       cfg.get_double("a_rate")};
        Lindbladian lb = qubit_family_generator(params);
        DensityMatrix reference = *lb.declared_fixed_point();
        return BuiltModel{std::move(lb), std::move(reference), qubit_family_initial(params),
                          params.a};
    }
    if (model == "davies") {
        const HermitianOperator h_s(cfg.get_matrix("h_s_energy"));
        const double beta = cfg.get_double_or("beta_inv_energy", 1.0);
        const double gamma0 = cfg.get_double_or("gamma0_rate", 1.0);
        const int d = h_s.dim();

        std::vector<HermitianOperator> coupling;
        if (!cfg.has("coupling")) {
            coupling.emplace_back(
                (Matrix::Ones(d, d) - Matrix::Identity(d, d)).eval());
        } else if (cfg.get_string("coupling") != "none") {
            coupling.emplace_back(cfg.get_matrix("coupling"));
        }

        std::optional<DensityMatrix> initial;
        if (cfg.has("rho0")) initial = DensityMatrix(cfg.get_matrix("rho0"));

        DaviesModel model_spec = make_davies(h_s, beta, std::move(coupling), gamma0);
        if (cfg.has("rate_flat")) {
            // Face-value rate table: deliberately breaks detailed balance so
            // verify has something honest to flag.
            const double flat = cfg.get_double("rate_flat");
            model_spec.rate_function = [flat](double) { return flat; };
            Lindbladian lb = davies_unchecked(model_spec);
            return BuiltModel{std::move(lb), gibbs(h_s, beta), std::move(initial), gamma0};
        }
        Lindbladian lb = davies_generator(model_spec);
        DensityMatrix reference = *lb.declared_fixed_point();
        return BuiltModel{std::move(lb), std::move(reference), std::move(initial), gamma0};
    }
    throw ConfigError("key 'model': expected qubit_family or davies, got '" + model + "'");
}

int report_errors(const char* what, std::ostream& err, int code) {
    err << what << '\n';
    return code;
}

}  // namespace

int cmd_scan(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const Config cfg = Config::from_file(config_path);
        BuiltModel built = build_model(cfg);
        if (!built.initial)
            throw ConfigError("missing key 'rho0' (scan needs a starting state)");
        const std::vector<double> k_list = cfg.get_list_or("k", {2.0});
        const std::vector<double> grid = cfg.has("t_grid_time")
                                             ? cfg.get_list("t_grid_time")
                                             : default_scan_grid(built.rate_scale);
        cfg.reject_unused();

        const BoundScanResult scan = theorem1_scan(built.lb, *built.initial, grid, k_list);

        out << "t,lhs";
        for (double k : k_list) out << ",rhs_k" << fmt15(k);
        out << ",d_to_fixed\n";
        for (size_t i = 0; i < grid.size(); ++i) {
            out << fmt15(scan.t_grid[i]) << ',' << fmt15(scan.lhs[i]);
            for (size_t j = 0; j < k_list.size(); ++j) out << ',' << fmt15(scan.rhs[j][i]);
            out << ',' << fmt15(scan.d_to_fixed[i]) << '\n';
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        return report_errors(("config error: " + std::string(e.what())).c_str(), err,
                             exit_config_error);
    } catch (const std::exception& e) {
        return report_errors(("error: " + std::string(e.what())).c_str(), err,
                             exit_construction_error);
    }
}

int cmd_verify(const std::string& config_path, std::uint64_t seed, std::ostream& report,
               std::ostream& err) {
    try {
        const Config cfg = Config::from_file(config_path);
        const BuiltModel built = build_model(cfg);
        const double t_check = cfg.get_double_or("t_check_time", 1.0);
        cfg.reject_unused();

        const Lindbladian& lb = built.lb;
        const DensityMatrix& ref = built.reference;
        bool all_pass = true;
        const auto line = [&](const char* name, double tol, auto&& compute) {
            double residual;
            try {
                residual = compute();
            } catch (const std::exception&) {
                residual = std::numeric_limits<double>::infinity();
            }
            const bool ok = residual < tol;
            all_pass = all_pass && ok;
            report << "CHECK " << name << " residual=" << fmt15(residual)
                   << " tol=" << fmt15(tol) << (ok ? " PASS" : " FAIL") << '\n';
        };

        line("qdb", 1e-8, [&] { return check_qdb(lb, ref); });
        line("ttsfp", 1e-8,
             [&] { return check_ttsfp(lb, ref, {0.5, 1.0, std::numbers::pi}); });
        line("self_recovery", 1e-8, [&] { return verify_self_recovery(lb, ref, t_check); });
        line("cptp", 1e-10, [&] {
            const CptpReport rep = is_cptp(evolve(lb, t_check, true), 1e-10);
            return std::max(rep.cp_residual, rep.tp_residual);
        });
        line("spohn", 1e-9, [&] {
            SplitMix64 rng(seed);
            double worst = 0.0;
            for (int trial = 0; trial < 10; ++trial) {
                const SpohnReport rep = spohn_rate(lb, random_density(lb.dim(), rng));
                worst = std::max(worst, -rep.rate);
            }
            return worst;
        });

        return all_pass ? exit_ok : exit_check_failed;
    } catch (const ConfigError& e) {
        return report_errors(("config error: " + std::string(e.what())).c_str(), err,
                             exit_config_error);
    } catch (const std::exception& e) {
        return report_errors(("error: " + std::string(e.what())).c_str(), err,
                             exit_construction_error);
    }
}

int cmd_bathsim(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const Config cfg = Config::from_file(config_path);
        const int levels = static_cast<int>(cfg.get_int("bath_levels"));
        const double omega = cfg.get_double("bath_omega_energy");
        const double beta = cfg.get_double_or("beta_inv_energy", 1.0);
        const std::vector<double> lambdas = cfg.get_list("lambda_energy");
        const std::vector<double> alphas = cfg.get_list_or("alpha", {1.0});
        const double t_tilde = cfg.get_double("t_tilde_time");

        Matrix h_s_mat = Matrix::Zero(2, 2);
        h_s_mat(1, 1) = 1.0;
        if (cfg.has("h_s_energy")) h_s_mat = cfg.get_matrix("h_s_energy");
        const HermitianOperator h_s(h_s_mat);

        const HermitianOperator ladder = harmonic_bath(levels, omega);
        const HermitianOperator interaction =
            cfg.has("interaction") ? HermitianOperator(cfg.get_matrix("interaction"))
                                   : ladder_interaction(h_s.dim(), levels);
        cfg.reject_unused();

        bool all_pass = true;
        out << "lambda,alpha,lhs,rhs,pass\n";
        for (double lambda : lambdas) {
            const BathModel bath = make_bath(levels, ladder, beta, interaction, lambda);
            for (double alpha : alphas) {
                const CorrelationReport rep =
                    correlation_bound_check(h_s, bath, alpha, t_tilde);
                all_pass = all_pass && rep.pass;
                out << fmt15(lambda) << ',' << fmt15(alpha) << ',' << fmt15(rep.lhs) << ','
                    << fmt15(rep.rhs) << ',' << (rep.pass ? '1' : '0') << '\n';
            }
        }
        return all_pass ? exit_ok : exit_check_failed;
    } catch (const ConfigError& e) {
        return report_errors(("config error: " + std::string(e.what())).c_str(), err,
                             exit_config_error);
    } catch (const std::exception& e) {
        return report_errors(("error: " + std::string(e.what())).c_str(), err,
                             exit_construction_error);
    }
}

}  // namespace petzlab::cli
