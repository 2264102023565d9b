#include "ppu/cli.hpp"

#include "ppu/axioms.hpp"
#include "ppu/errors.hpp"
#include "ppu/group.hpp"
#include "ppu/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace ppu {

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

PpuElement load_element(const std::string& path, const StarAlgebra& a) {
    return PpuElement(laurent_from_json(read_json_file(path)), a);
}

void emit(const CliConfig& config, std::ostream& out, const Json& payload) {
    const std::string text = canonical_dump(payload) + "\n";
    if (config.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out_path);
    if (!file) throw InputError("cannot write " + config.out_path);
    file << text;
}

void diagnose(std::ostream& err, const char* kind, const std::string& message) {
    err << canonical_dump({{"error", kind}, {"message", message}}) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pure paraunitary groups of matrix *-algebras: factorization, lattice "
                 "operations and structure-group verification",
                 "ppu"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig config;
    app.add_option("--tol-rank", config.tolerances.rank, "relative singular-value cutoff");
    app.add_option("--tol-eq", config.tolerances.eq, "matrix equality tolerance");
    app.add_option("--tol-trim", config.tolerances.trim, "Laurent coefficient trim threshold");
    app.add_option("--seed", config.seed, "random seed (mt19937_64)");
    app.add_option("--samples", config.samples, "samples per check");
    app.add_option("--out", config.out_path, "write the payload to this file");

    std::string algebra_path, element_path, a_path, b_path, op;
    std::function<int()> action;

    auto* factor_cmd = app.add_subcommand("factor", "factor an element into p_M factors");
    factor_cmd->add_option("algebra", algebra_path)->required();
    factor_cmd->add_option("element", element_path)->required();
    factor_cmd->callback([&] {
        action = [&] {
            const StarAlgebra a = algebra_from_json(read_json_file(algebra_path));
            const PpuElement phi = load_element(element_path, a);
            const FactorList factors = factor(phi);
            const double residual = coeff_distance(product(factors, a).op(), phi.op());
            emit(config, out, factor_list_to_json(factors, a.dim()));
            err << canonical_dump({{"reconstruction_residual", residual}}) << "\n";
            return int{kExitOk};
        };
    });

    auto* lattice_cmd = app.add_subcommand("lattice", "meet, join or order comparison");
    lattice_cmd->add_option("op", op)->required()->check(CLI::IsMember({"meet", "join", "leq"}));
    lattice_cmd->add_option("algebra", algebra_path)->required();
    lattice_cmd->add_option("a", a_path)->required();
    lattice_cmd->add_option("b", b_path)->required();
    lattice_cmd->callback([&] {
        action = [&] {
            const StarAlgebra a = algebra_from_json(read_json_file(algebra_path));
            const PpuElement x = load_element(a_path, a);
            const PpuElement y = load_element(b_path, a);
            if (op == "leq")
                emit(config, out, Json(leq(x, y)));
            else
                emit(config, out, laurent_to_json((op == "meet" ? meet(x, y) : join(x, y)).op()));
            return int{kExitOk};
        };
    });

    std::vector<std::string> checks;
    auto* verify_cmd = app.add_subcommand("verify", "run the structure-group checks");
    verify_cmd->add_option("algebra", algebra_path)->required();
    verify_cmd->add_option("--checks", checks, "subset of checks to run")->delimiter(',');
    verify_cmd->callback([&] {
        action = [&] {
            const StarAlgebra a = algebra_from_json(read_json_file(algebra_path));
            const std::vector<CheckReport> reports = run_checks(a, checks, config.samples, config.seed);
            Json payload = Json::array();
            bool ok = true;
            for (const CheckReport& r : reports) {
                payload.push_back(report_to_json(r));
                ok = ok && r.ok();
            }
            emit(config, out, payload);
            return int{ok ? kExitOk : kExitFailure};
        };
    });

    int factors = 3;
    int shift = 0;
    auto* random_cmd = app.add_subcommand("random", "emit a random element t^-shift p_M1 ... p_Mk");
    random_cmd->add_option("algebra", algebra_path)->required();
    random_cmd->add_option("--factors", factors, "number of p_M factors")->check(CLI::NonNegativeNumber);
    random_cmd->add_option("--shift", shift, "power of t^-1 in front");
    random_cmd->callback([&] {
        action = [&] {
            const StarAlgebra a = algebra_from_json(read_json_file(algebra_path));
            emit(config, out, laurent_to_json(random_ppu(a, factors, shift, config.seed).op()));
            return int{kExitOk};
        };
    });

    auto* commutant_cmd = app.add_subcommand("commutant", "emit a basis of the commutant");
    commutant_cmd->add_option("algebra", algebra_path)->required();
    commutant_cmd->callback([&] {
        action = [&] {
            const StarAlgebra a = algebra_from_json(read_json_file(algebra_path));
            Json basis = Json::array();
            for (const CMatrix& c : a.commutant_basis()) basis.push_back(matrix_to_json(c));
            emit(config, out, {{"dim", a.dim()}, {"generators", std::move(basis)}});
            return int{kExitOk};
        };
    });

    double re = 1.0, im = 0.0;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an element at t = z, |z| = 1");
    eval_cmd->add_option("element", element_path)->required();
    eval_cmd->add_option("--re", re, "real part of z");
    eval_cmd->add_option("--im", im, "imaginary part of z");
    eval_cmd->callback([&] {
        action = [&] {
            const LaurentOp phi = laurent_from_json(read_json_file(element_path));
            emit(config, out, matrix_to_json(eval_at(phi, Complex(re, im))));
            return int{kExitOk};
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        diagnose(err, "usage", e.what());
        return kExitUsage;
    }

    try {
        const ScopedTolerances scoped(config.tolerances);
        return action();
    } catch (const InputError& e) {
        diagnose(err, "input", e.what());
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        diagnose(err, "input", e.what());
        return kExitUsage;
    } catch (const InvalidOperand& e) {
        diagnose(err, "validation", e.what());
        return kExitFailure;
    } catch (const NumericalError& e) {
        diagnose(err, "numerical", e.what());
        return kExitFailure;
    }
}

}  // namespace ppu
