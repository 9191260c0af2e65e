#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "ordmat/cli.hpp"
#include "ordmat/gen.hpp"
#include "ordmat/json_io.hpp"
#include "ordmat/rng.hpp"

using namespace ordmat;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return CliRun{code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/ordmat_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("eval matches the diagonal conjugation example") {
    std::string input = R"({"ring":{"kind":"product_rationals","k":1},"n":3,
        "word":[{"diag":["2","1","1"]},{"elem":{"i":1,"j":2,"x":"1"}},{"diag":["1/2","1","1"]}]})";
    CliRun r = run({"eval", "-"}, input);
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["matrix"]["entries"][0][1] == "2");
    CHECK(j["matrix"]["entries"][0][0] == "1");
    CHECK(j["matrix"]["entries"][1][2] == "0");
}

TEST_CASE("membership reports false with exit 0") {
    std::string input = R"({"ring":"q","matrix":{"n":3,"entries":[["1","1","0"],["0","1","0"],["0","0","1"]]}})";
    CliRun r = run({"membership", "--class", "gamma_n", "-"}, input);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["member"] == false);
    CliRun r2 = run({"membership", "--class", "gn", "-"}, input);
    CHECK(json::parse(r2.out)["member"] == true);
}

TEST_CASE("exit code contract") {
    // input errors: malformed JSON, bad schema, missing file
    CHECK(run({"eval", "-"}, "{not json").exit_code == 2);
    CHECK(run({"eval", "-"}, R"({"ring":"q"})").exit_code == 2);
    CHECK(run({"eval", "/tmp/ordmat_does_not_exist.json"}).exit_code == 2);
    CHECK(run({"membership", "--class", "nope", "-"},
              R"({"ring":"q","matrix":{"n":1,"entries":[["1"]]}})")
              .exit_code == 2);
    CHECK(run({"bogus-subcommand"}).exit_code == 2);

    // mathematical failure: block-diagonalize of a non-involution
    std::string not_inv = R"({"ring":"q","matrix":{"n":2,"entries":[["2","0"],["0","1"]]}})";
    CliRun r = run({"block-diagonalize", "-"}, not_inv);
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out).contains("error"));

    // pass
    std::string inv = R"({"ring":"q","matrix":{"n":2,"entries":[["0","2"],["1/2","0"]]}})";
    CHECK(run({"block-diagonalize", "-"}, inv).exit_code == 0);

    // decompose below the supported dimension is a mathematical failure
    CliRun small = run({"decompose", "-"}, R"({"ring":"q","n":2,"factors":[]})");
    CHECK(small.exit_code == 1);
    CHECK(json::parse(small.out)["error"]["kind"] == "precondition");
}

TEST_CASE("check-axioms runs and reports") {
    CliRun r = run({"check-axioms", "-", "--samples", "200", "--seed", "4"}, R"({"ring":"q2"})");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["samples"] == 200);
}

TEST_CASE("gen is reproducible byte for byte") {
    CliRun a = run({"gen", "--kind", "involution", "--ring", "q2", "--n", "5", "--seed", "9"});
    CliRun b = run({"gen", "--kind", "involution", "--ring", "q2", "--n", "5", "--seed", "9"});
    CliRun c = run({"gen", "--kind", "involution", "--ring", "q2", "--n", "5", "--seed", "10"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);

    // generated artifacts satisfy their contracts
    json j = json::parse(a.out);
    RingDescriptor ring = ring_from_json(j["ring"]);
    Mat m = mat_from_json(j["matrix"], ring);
    CHECK((m * m).is_identity());
    CHECK(is_member(m, MemberClass::gamma_n));

    CliRun g = run({"gen", "--kind", "gamma_element", "--ring", "q", "--n", "3", "--seed", "0"});
    json gj = json::parse(g.out);
    CHECK(is_member(mat_from_json(gj["matrix"], RingDescriptor{1}), MemberClass::gamma_n));
}

TEST_CASE("decompose and verify through the CLI") {
    CliRun gen_run =
        run({"gen", "--kind", "automorphism", "--ring", "q2", "--n", "3", "--seed", "21"});
    REQUIRE(gen_run.exit_code == 0);
    std::string phi_path = write_temp("phi.json", gen_run.out);

    CliRun dec = run({"decompose", phi_path, "--seed", "2"});
    REQUIRE(dec.exit_code == 0);
    json dj = json::parse(dec.out);
    CHECK(dj.contains("m"));
    CHECK(dj.contains("lambda_table"));

    // feed the decomposition back through verify
    json phi_json = json::parse(gen_run.out);
    json verify_input{{"kind", "decomposition"},
                      {"ring", phi_json["ring"]},
                      {"n", 3},
                      {"phi", phi_json},
                      {"decomposition", dj},
                      {"words", json::array()}};
    for (size_t i = 0; i < 5; ++i)
        verify_input["words"].push_back(dj["lambda_table"][i]["word"]);
    CliRun ver = run({"verify", "-"}, verify_input.dump());
    CHECK(ver.exit_code == 0);
    CHECK(json::parse(ver.out)["pass"] == true);

    // identity spec via flags filling in ring/n
    std::string ident_path = write_temp("ident.json", R"({"factors":[]})");
    CliRun ident = run({"decompose", ident_path, "--ring", "q2", "--n", "4"});
    CHECK(ident.exit_code == 0);
    json idj = json::parse(ident.out);
    CHECK(idj["c"] == json::array({1, 2}));
}

TEST_CASE("verify equivalence chains") {
    std::string chain = R"({"kind":"equiv_chain","ring":"q","n":3,"links":[{
        "P":[{"diag":["2","1","1"]}],
        "Pt":[{"diag":["1/2","1","1"]}],
        "Q":[],"Qt":[],
        "A0":{"n":3,"entries":[["1","1","0"],["0","1","0"],["0","0","1"]]},
        "A1":{"n":3,"entries":[["1","2","0"],["0","1","0"],["0","0","1"]]}}]})";
    CliRun r = run({"verify", "-"}, chain);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["pass"] == true);

    std::string bad = chain;
    bad.replace(bad.rfind("\"2\""), 3, "\"3\"");
    CliRun rb = run({"verify", "-"}, bad);
    CHECK(rb.exit_code == 1);
    CHECK(json::parse(rb.out)["pass"] == false);
}

TEST_CASE("wire formats round-trip") {
    Rng rng(77);
    for (int i = 0; i < 20; ++i) {
        Mat m = gen_gamma_element(RingDescriptor{2}, 4, rng);
        CHECK(mat_from_json(to_json(m), RingDescriptor{2}) == m);
        GenWord w = gen_word(RingDescriptor{2}, 4, 5, rng);
        CHECK(word_from_json(to_json(w), RingDescriptor{2}, 4) == w);
        AutomorphismSpec spec = gen_automorphism_spec(RingDescriptor{2}, 3, rng);
        json round = to_json(automorphism_spec_from_json(to_json(spec)));
        CHECK(round == to_json(spec));
    }
    // k = 1 elements serialize as bare strings
    RingElem half = RingElem::scalar(RingDescriptor{1}, Rat(1, 2));
    CHECK(to_json(half) == json("1/2"));
    CHECK(elem_from_json(json("1/2"), RingDescriptor{1}) == half);
    CHECK(elem_from_json(json(3), RingDescriptor{1}) ==
          RingElem::scalar(RingDescriptor{1}, Rat(3)));
}
