#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ppu/cli.hpp"
#include "ppu/group.hpp"
#include "ppu/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ppu;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("ppu_cli_" + std::to_string(counter_++))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const Json& j) const { return write(name, j.dump()); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

CMatrix unit(Index n, Index i) {
    CMatrix p = CMatrix::Zero(n, n);
    p(i, i) = 1.0;
    return p;
}

Json diag_algebra(Index n) {
    CMatrix g = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) g(i, i) = static_cast<double>(i + 1);
    return {{"dim", n}, {"generators", {matrix_to_json(g)}}};
}

Json diag_element(const std::vector<int>& exps) {
    const Index n = static_cast<Index>(exps.size());
    LaurentOp op = LaurentOp::zero(n);
    for (Index i = 0; i < n; ++i) op = op + LaurentOp::monomial(exps[static_cast<std::size_t>(i)], unit(n, i));
    return laurent_to_json(op);
}

}  // namespace

TEST_CASE("factor") {
    Scratch s;
    const std::string alg = s.write("alg.json", diag_algebra(2));

    const Run one = run({"factor", alg, s.write("one.json", diag_element({0, 0}))});
    CHECK(one.code == 0);
    CHECK(one.out == "{\"factors\":[],\"shift\":0}\n");
    CHECK(one.err.find("reconstruction_residual") != std::string::npos);

    const Run two = run({"factor", alg, s.write("t12.json", diag_element({1, 2}))});
    REQUIRE(two.code == 0);
    const Json j = parse_json(two.out);
    CHECK(j["shift"] == 0);
    REQUIRE(j["factors"].size() == 2);
    const StarAlgebra a = algebra_from_json(diag_algebra(2));
    const FactorList f = factor_list_from_json(j, a);
    CHECK(f.factors[0].dim() == 2);
    CHECK(f.factors[1].dim() == 1);
    CHECK(approx_equal(f.factors[1].projector(), unit(2, 1)));

    const Run shifted = run({"factor", alg, s.write("neg.json", diag_element({-1, 1}))});
    REQUIRE(shifted.code == 0);
    CHECK(parse_json(shifted.out)["shift"] == 1);
    CHECK(parse_json(shifted.out)["factors"].size() == 2);

    const Json scaled = laurent_to_json(LaurentOp::constant(2.0 * CMatrix::Identity(2, 2)));
    const Run bad = run({"factor", alg, s.write("bad.json", scaled)});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("paraunitarity residual") != std::string::npos);
    CHECK(bad.err.find("\"error\"") != std::string::npos);

    CHECK(run({"factor", alg, s.write("garbage.json", std::string("{not json"))}).code == 2);
    CHECK(run({"factor", alg, s.path("missing.json")}).code == 2);
    CHECK(run({"factor", alg}).code == 2);
}

TEST_CASE("lattice") {
    Scratch s;
    const std::string alg = s.write("alg.json", diag_algebra(2));
    const std::string one = s.write("one.json", diag_element({0, 0}));
    const std::string t = s.write("t.json", diag_element({1, 1}));
    const std::string t10 = s.write("t10.json", diag_element({1, 0}));
    const std::string t01 = s.write("t01.json", diag_element({0, 1}));

    const Run leq = run({"lattice", "leq", alg, one, t});
    CHECK(leq.code == 0);
    CHECK(leq.out == "true\n");
    CHECK(run({"lattice", "leq", alg, t, one}).out == "false\n");
    CHECK(run({"lattice", "leq", alg, t10, t01}).out == "false\n");

    const Run join = run({"lattice", "join", alg, t10, t01});
    REQUIRE(join.code == 0);
    CHECK(approx_equal(laurent_from_json(parse_json(join.out)), LaurentOp::t_power(2, 1)));
    const Run meet = run({"lattice", "meet", alg, t10, t01});
    REQUIRE(meet.code == 0);
    CHECK(approx_equal(laurent_from_json(parse_json(meet.out)), LaurentOp::one(2)));

    CHECK(run({"lattice", "frobnicate", alg, t10, t01}).code == 2);
}

TEST_CASE("verify") {
    Scratch s;
    const std::string scalar = s.write("c1.json", Json{{"dim", 1}, {"generators", Json::array()}});
    const Run r = run({"verify", scalar});
    CHECK(r.code == 0);
    const Json reports = parse_json(r.out);
    REQUIRE(reports.is_array());
    CHECK(reports.size() == 7);
    for (const Json& rep : reports) CHECK(rep["pass"] == true);

    CMatrix nil = CMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    const std::string m2 = s.write("m2.json", Json{{"dim", 2}, {"generators", {matrix_to_json(nil)}}});
    CHECK(run({"verify", m2}).code == 0);

    const Run subset = run({"--samples", "30", "verify", m2, "--checks", "gvm,normality"});
    CHECK(subset.code == 0);
    const Json sub = parse_json(subset.out);
    REQUIRE(sub.size() == 2);
    CHECK(sub[0]["check"] == "gvm");
    CHECK(sub[1]["check"] == "normality");

    const Run zero = run({"--samples", "0", "verify", scalar});
    CHECK(zero.code == 1);
    for (const Json& rep : parse_json(zero.out)) CHECK(rep["inconclusive"] == true);

    CHECK(run({"verify", scalar, "--checks", "nope"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
    Scratch s;
    const std::string alg = s.write("alg.json", diag_algebra(3));
    const Run r1 = run({"--seed", "5", "random", alg, "--factors", "4", "--shift", "1"});
    const Run r2 = run({"--seed", "5", "random", alg, "--factors", "4", "--shift", "1"});
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
    const Run r3 = run({"--seed", "6", "random", alg, "--factors", "4", "--shift", "1"});
    CHECK(r3.out != r1.out);

    const std::string elem = s.write("elem.json", r1.out);
    const Run f1 = run({"factor", alg, elem});
    const Run f2 = run({"factor", alg, elem});
    REQUIRE(f1.code == 0);
    CHECK(f1.out == f2.out);

    const Run v1 = run({"--samples", "25", "--seed", "3", "verify", alg, "--checks", "singularity"});
    const Run v2 = run({"--samples", "25", "--seed", "3", "verify", alg, "--checks", "singularity"});
    CHECK(v1.out == v2.out);
}

TEST_CASE("commutant, eval and --out") {
    Scratch s;
    const std::string alg = s.write("alg.json", diag_algebra(3));
    const Run c = run({"commutant", alg});
    REQUIRE(c.code == 0);
    const StarAlgebra comm = algebra_from_json(parse_json(c.out));
    CHECK(comm.linear_dim() == 3);

    const Run e = run({"eval", s.write("t.json", diag_element({1, 0})), "--re", "-1", "--im", "0"});
    REQUIRE(e.code == 0);
    CMatrix expect = CMatrix::Identity(2, 2);
    expect(0, 0) = -1.0;
    CHECK(approx_equal(matrix_from_json(parse_json(e.out)), expect));
    CHECK(run({"eval", s.path("t.json"), "--re", "2"}).code == 2);

    const std::string target = s.path("out.json");
    const Run o = run({"--out", target, "commutant", alg});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(target);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == c.out);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    Scratch s;
    const std::string alg = s.write("alg.json", diag_algebra(2));
    const Run tol = run({"--tol-rank", "0.1", "commutant", alg});
    CHECK(tol.code == 2);
    CHECK(tol.err.find("\"error\"") != std::string::npos);
    CHECK(run({"--tol-eq", "-1", "commutant", alg}).code == 2);
    CHECK(run({"commutant", s.write("wrong.json", Json{{"dim", 2}, {"generators", {1, 2}}})}).code == 2);
}
