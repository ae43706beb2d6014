#include "opm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <unistd.h>

namespace {

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

}  // namespace

int main(int argc, char** argv) {
    using namespace opm::cli;
    CLI::App app{"Torsion Massey products and operadic cohomology over small rings"};
    Options o;
    std::string ring, operad, window, fixture, op, job_path;
    int degree = 0, weight = 0, shift = 0;
    bool as_json = false;

    app.add_option("command", o.command, "validate | homology | ext | unit-massey | torsion-massey | cocycle-check | "
                                         "cohomology-window | minimal-check");
    auto* ring_opt = app.add_option("--ring", ring, "Z, Z/n, Q, Q[t], F_p");
    auto* operad_opt = app.add_option("--operad", operad, "initial | assoc | comm | lie");
    auto* window_opt = app.add_option("--window", window, "degree window lo..hi");
    auto* fixture_opt = app.add_option("--fixture", fixture, "bundled example")->check(CLI::IsMember(fixture_names()));
    app.add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--json", as_json, "same as --format json");
    auto* job_opt = app.add_option("--job", job_path, "job document; '-' reads stdin");
    auto* op_opt = app.add_option("--op", op, "mu, ell, commutator, or 'a,b' for a·μ + b·μ∘(12)");
    app.add_option("--t", o.t, "ring elements t_1 [t_2]; one value means (t, -t)");
    app.add_option("--classes", o.classes, "homology classes as cycles, e.g. 1 x '2*a+b'");
    auto* degree_opt = app.add_option("--degree", degree);
    auto* weight_opt = app.add_option("--weight", weight);
    auto* shift_opt = app.add_option("--shift", shift);
    app.add_flag("--timing", o.timing, "add wall-clock time to the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : Precondition;
    }
    if (as_json) o.format = "json";
    if (*ring_opt) o.ring = ring;
    if (*operad_opt) o.operad = operad;
    if (*window_opt) o.window = window;
    if (*fixture_opt) o.fixture = fixture;
    if (*op_opt) o.op = op;
    if (*degree_opt) o.degree = degree;
    if (*weight_opt) o.weight = weight;
    if (*shift_opt) o.shift = shift;

    if (*job_opt || (!o.fixture && !isatty(STDIN_FILENO))) {
        if (!*job_opt || job_path == "-") {
            o.job = slurp(std::cin);
        } else {
            std::ifstream in(job_path);
            if (!in) {
                std::cerr << "error: cannot read " << job_path << "\n";
                return Precondition;
            }
            o.job = slurp(in);
        }
    }
    if (!o.fixture && !o.job) {
        std::cerr << "error: give --fixture <name> or a job document (--job, stdin)\n";
        return Precondition;
    }
    Outcome r = run(o);
    std::cout << r.output;
    return r.exit_code;
}
