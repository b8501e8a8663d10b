#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hedgehog/cli.hpp"

#include <cstdio>

using namespace hedgehog;
using cli::run_command;

namespace {

Json parse(const char* text) { return Json::parse(text); }

struct ExecResult {
    std::string output;
    int exit_code = -1;
};

ExecResult exec_binary(const std::string& command, const std::string& payload) {
    std::string cmd = "echo '" + payload + "' | " + HEDGEHOG_BIN + " " + command + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    ExecResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

} // namespace

TEST_CASE("decide command on the dyadic sphere") {
    auto res = run_command(
        "decide", parse(R"({"field":{"kind":"padic","p":2},"coefficients":["1","1","1"]})"));
    CHECK(res.exit_code == 0);
    CHECK(res.response["status"] == "ok");
    CHECK(res.response["result"]["verdict"] == "SectionExists");
    CHECK(res.response["citations"][0] == "level-bound");
}

TEST_CASE("sphere command over the reals") {
    auto res = run_command("sphere", parse(R"({"field":{"kind":"reals"},"n":2})"));
    CHECK(res.exit_code == 0);
    CHECK(res.response["result"]["verdict"] == "NoSection");
    CHECK(res.response["result"]["obstruction"]["kind"] == "LevelTooLarge");
    CHECK(res.response["result"]["obstruction"]["level"] == "infinite");
}

TEST_CASE("decide reports the open case as unknown with exit code 1") {
    auto res = run_command(
        "decide", parse(R"({"field":{"kind":"padic","p":3},"coefficients":["2","3","-6"]})"));
    CHECK(res.exit_code == 1);
    CHECK(res.response["status"] == "unknown");
    CHECK(res.response["result"]["verdict"] == "Unknown");
}

TEST_CASE("section, verify and the tampering example") {
    Json payload = parse(R"({"field":{"kind":"rationals"},"coefficients":["1","1","-2"]})");
    auto sec = run_command("section", payload);
    REQUIRE(sec.exit_code == 0);
    Json verify_payload = payload;
    verify_payload["certificate"] = sec.response["result"]["certificate"];
    auto ver = run_command("verify", verify_payload);
    CHECK(ver.exit_code == 0);
    CHECK(ver.response["result"]["valid"] == true);

    // flip one entry: still a well-formed certificate, no longer a section
    Json& entry = verify_payload["certificate"]["entries"][0][1];
    entry = "17/3";
    auto bad = run_command("verify", verify_payload);
    CHECK(bad.exit_code == 0);
    CHECK(bad.response["status"] == "ok");
    CHECK(bad.response["result"]["valid"] == false);
}

TEST_CASE("decide certificates re-verify through the verify command") {
    for (const char* payload :
         {R"({"field":{"kind":"fp","p":3},"coefficients":["1","1","1"]})",
          R"({"field":{"kind":"rationals"},"coefficients":["3","5"]})",
          R"({"field":{"kind":"rationals"},"coefficients":["1","2","-3"]})",
          R"({"field":{"kind":"padic","p":5},"coefficients":["1","-1","5","2"]})"}) {
        Json req = parse(payload);
        auto dec = run_command("decide", req);
        REQUIRE(dec.exit_code == 0);
        REQUIRE(dec.response["result"]["verdict"] == "SectionExists");
        if (!dec.response["result"].contains("certificate")) continue;
        Json vp = req;
        vp["certificate"] = dec.response["result"]["certificate"];
        auto ver = run_command("verify", vp);
        CHECK(ver.response["result"]["valid"] == true);
    }
}

TEST_CASE("isotropy command") {
    auto res = run_command(
        "isotropy", parse(R"({"field":{"kind":"rationals"},"coefficients":["1","1","-2"]})"));
    CHECK(res.response["result"]["isotropic"] == true);
    REQUIRE(res.response["result"].contains("vector"));
    auto none = run_command(
        "isotropy", parse(R"({"field":{"kind":"reals"},"coefficients":["1","1"]})"));
    CHECK(none.response["result"]["isotropic"] == false);
}

TEST_CASE("represent command") {
    auto res = run_command(
        "represent",
        parse(R"({"field":{"kind":"padic","p":2},"coefficients":["1","1"],"value":"-1"})"));
    CHECK(res.response["result"]["represents"] == false);
    auto res2 = run_command(
        "represent",
        parse(R"({"field":{"kind":"rationals"},"coefficients":["5"],"value":"5/4"})"));
    CHECK(res2.response["result"]["represents"] == true);
}

TEST_CASE("invariants command") {
    auto res = run_command(
        "invariants",
        parse(R"({"field":{"kind":"rationals"},"element":{"plus":["2","3"],"minus":[]}})"));
    CHECK(res.response["result"]["rank"] == 2);
    CHECK(res.response["result"]["disc"] == "6");
    CHECK(res.response["result"]["signed_disc"] == "-6");
    CHECK(res.response["result"]["signature"] == 2);
    CHECK(res.response["result"]["hasse"]["2"] == -1);
}

TEST_CASE("transfer command matches the dyadic computation") {
    auto res = run_command(
        "transfer",
        parse(
            R"({"field":{"kind":"padic","p":2},"alpha":"2","functional":"trace","element":{"plus":[["1","0"]]}})"));
    REQUIRE(res.exit_code == 0);
    FieldDescriptor q2 = FieldDescriptor::padic(2);
    GWElem out = gw_from_json(q2, res.response["result"], "result");
    CHECK(gw_equal(out, GWElem::generators(q2, {2, 1})));
}

TEST_CASE("euler command") {
    auto res = run_command(
        "euler",
        parse(R"({"field":{"kind":"padic","p":2},"n":2,"coefficients":["1","1","1"]})"));
    CHECK(res.response["result"]["plus"] == Json::array({"1", "-1", "2", "2"}));
    CHECK(res.response["result"]["minus"] == Json::array());
    auto odd = run_command(
        "euler",
        parse(R"({"field":{"kind":"padic","p":2},"n":3,"coefficients":["1","1","1","1"]})"));
    CHECK(odd.exit_code == 2);
    CHECK(odd.response["error"]["kind"] == "OddDimension");
}

TEST_CASE("level command") {
    CHECK(run_command("level", parse(R"({"field":{"kind":"padic","p":2}})"))
              .response["result"]["level"] == 4);
    CHECK(run_command("level", parse(R"({"field":{"kind":"rationals"}})"))
              .response["result"]["level"] == "infinite");
}

TEST_CASE("ideal and quotient commands") {
    const char* generators = R"([{"plus":["2","3"]},{"plus":["2","5"]},{"plus":["2","7"]},
                                 {"plus":["2","2"]},{"plus":["2","6"]},{"plus":["2","10"]},
                                 {"plus":["2","14"]}])";
    Json ideal_req = parse(R"({"field":{"kind":"padic","p":2},"target":{}})");
    ideal_req["generators"] = parse(generators);
    ideal_req["target"] = parse(R"({"plus":["1","-1","2","2"]})");
    auto member = run_command("ideal", ideal_req);
    CHECK(member.response["result"]["member"] == true);

    ideal_req["target"] = parse(R"({"plus":["1"]})");
    CHECK(run_command("ideal", ideal_req).response["result"]["member"] == false);

    Json quot_req = parse(R"({"field":{"kind":"padic","p":2}})");
    quot_req["generators"] = parse(generators);
    auto quot = run_command("quotient", quot_req);
    CHECK(quot.response["result"]["iso"] == "Z/2");

    quot_req["generators"] = parse(R"([{"plus":["1","-1"]}])");
    auto small = run_command("quotient", quot_req);
    CHECK(small.response["result"]["iso"] == "summary");
}

TEST_CASE("schema violations carry a path and exit code 2") {
    auto missing = run_command("decide", parse(R"({"coefficients":["1","1"]})"));
    CHECK(missing.exit_code == 2);
    CHECK(missing.response["status"] == "error");
    CHECK(missing.response["error"]["kind"] == "SchemaViolation");
    std::string msg = missing.response["error"]["message"];
    CHECK(msg.find("payload.field") != std::string::npos);

    auto bad_coeff = run_command(
        "decide", parse(R"({"field":{"kind":"rationals"},"coefficients":["1","x","1"]})"));
    CHECK(bad_coeff.exit_code == 2);
    std::string msg2 = bad_coeff.response["error"]["message"];
    CHECK(msg2.find("coefficients[1]") != std::string::npos);

    auto bad_field = run_command(
        "decide", parse(R"({"field":{"kind":"fp","p":4},"coefficients":["1","1"]})"));
    CHECK(bad_field.exit_code == 2);

    auto zero_coeff = run_command(
        "decide", parse(R"({"field":{"kind":"rationals"},"coefficients":["1","0","1"]})"));
    CHECK(zero_coeff.exit_code == 2);
    CHECK(zero_coeff.response["error"]["kind"] == "InvalidElement");

    auto unknown_cmd = run_command("frobnicate", parse("{}"));
    CHECK(unknown_cmd.exit_code == 2);
}

TEST_CASE("factor bound failures surface as machine-readable errors") {
    cli::Options tight;
    tight.factor_bound = 100;
    Json req = parse(R"({"field":{"kind":"rationals"},"coefficients":["1","1"]})");
    req["coefficients"][1] = Int(Int(7919) * Int(7927)).get_str();
    auto res = run_command("isotropy", req, tight);
    CHECK(res.exit_code == 2);
    CHECK(res.response["error"]["kind"] == "FactorBoundExceeded");
    // default bound handles it
    CHECK(run_command("isotropy", req).exit_code == 0);
}

TEST_CASE("search bound threads into vector searches") {
    // smallest zero of x^2 + y^2 = 853 z^2 has height 23
    Json req = parse(R"({"field":{"kind":"rationals"},"coefficients":["1","1","-853"]})");
    cli::Options tight;
    tight.search_bound = 3;
    auto capped = run_command("isotropy", req, tight);
    CHECK(capped.response["result"]["isotropic"] == true);
    CHECK_FALSE(capped.response["result"].contains("vector"));
    CHECK(capped.response["result"].contains("note"));

    auto full = run_command("isotropy", req);
    REQUIRE(full.response["result"].contains("vector"));
    FieldDescriptor q = FieldDescriptor::rationals();
    Vec v = coeffs_from_json(q, full.response["result"]["vector"], "vector");
    DiagonalForm form(q, coeffs_from_json(q, req["coefficients"], "coefficients"));
    CHECK(Field(q).is_zero(form.evaluate(v)));
}

TEST_CASE("gram matrices serialize as row-major nested lists") {
    FieldDescriptor k = FieldDescriptor::padic(2);
    Json rows = parse(R"([["2","4"],["4","4"]])");
    GramMatrix g = gram_from_json(k, rows, "gram");
    CHECK(gram_to_json(g) == rows);
    DiagonalizeResult d = diagonalize(g);
    CHECK(coeffs_to_json(k, d.form.coeffs) == Json::array({"2", "-4"}));
    CHECK_THROWS_AS(gram_from_json(k, parse(R"([["1","2"],["3","1"]])"), "gram"),
                    SchemaViolation);
}

TEST_CASE("field descriptors round-trip through JSON") {
    for (const char* text :
         {R"({"kind":"rationals"})", R"({"kind":"reals"})", R"({"kind":"qbar"})",
          R"({"kind":"fp","p":11})", R"({"kind":"padic","p":2})",
          R"({"kind":"realquad","d":10})"}) {
        Json j = parse(text);
        FieldDescriptor k = field_from_json(j, "field");
        CHECK(field_to_json(k) == j);
        CHECK(field_from_json(field_to_json(k), "field") == k);
    }
}

TEST_CASE("responses are deterministic") {
    Json req = parse(R"({"field":{"kind":"padic","p":2},"coefficients":["1","1","1"]})");
    std::string a = run_command("decide", req).response.dump(2);
    std::string b = run_command("decide", req).response.dump(2);
    CHECK(a == b);
    Json req2 = parse(R"({"field":{"kind":"rationals"},"coefficients":["1","2","-3"]})");
    CHECK(run_command("decide", req2).response.dump(2) ==
          run_command("decide", req2).response.dump(2));
}

TEST_CASE("binary end to end") {
    ExecResult r = exec_binary(
        "decide", R"({"field":{"kind":"padic","p":2},"coefficients":["1","1","1"]})");
    CHECK(r.exit_code == 0);
    Json parsed = Json::parse(r.output);
    CHECK(parsed["status"] == "ok");
    CHECK(parsed["result"]["verdict"] == "SectionExists");

    // byte-identical output across runs
    ExecResult r2 = exec_binary(
        "decide", R"({"field":{"kind":"padic","p":2},"coefficients":["1","1","1"]})");
    CHECK(r.output == r2.output);

    ExecResult unknown = exec_binary(
        "decide", R"({"field":{"kind":"padic","p":3},"coefficients":["2","3","-6"]})");
    CHECK(unknown.exit_code == 1);

    ExecResult err = exec_binary("decide", R"({"field":{"kind":"fp","p":4}})");
    CHECK(err.exit_code == 2);

    ExecResult garbage = exec_binary("decide", "not json");
    CHECK(garbage.exit_code == 2);
}
