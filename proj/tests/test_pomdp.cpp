#include <doctest.h>

#include "efekit/dag.hpp"
#include "efekit/errors.hpp"
#include "efekit/pomdp.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace efekit;

namespace {

PomdpModel identity_model() {
    PomdpModel m;
    m.states = {"s_a", "s_b"};
    m.observations = {"o_a", "o_b"};
    m.actions = {"stay"};
    m.prior_d = {0.5, 0.5};
    m.likelihood_a = Matrix::identity(2);
    m.transitions_b = {Matrix::identity(2)};
    return m;
}

std::string temp_path(const char* stem) {
    return std::string("efekit_test_") + stem + ".json";
}

} // namespace

TEST_CASE("validate_model accepts a sound model") {
    CHECK(validate_model(identity_model()).ok());
}

TEST_CASE("validate_model reports column sums") {
    PomdpModel m = identity_model();
    m.likelihood_a = Matrix(2, 2, {0.6, 1.0, 0.6, 0.0});
    ValidationReport report = validate_model(m);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("likelihood column 0") != std::string::npos);
    CHECK(report.violations[0].find("1.2") != std::string::npos);
}

TEST_CASE("validate_model reports negative transition entries") {
    PomdpModel m = identity_model();
    m.transitions_b[0] = Matrix(2, 2, {1.1, 0.0, -0.1, 1.0});
    ValidationReport report = validate_model(m);
    bool found = false;
    for (const std::string& v : report.violations) {
        if (v.find("transition matrix 0") != std::string::npos &&
            v.find("(1, 0)") != std::string::npos &&
            v.find("negative") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("validate_model reports dimension mismatches") {
    PomdpModel m = identity_model();
    m.prior_d = {1.0};
    CHECK_FALSE(validate_model(m).ok());

    m = identity_model();
    m.transitions_b.clear();
    CHECK_FALSE(validate_model(m).ok());
}

TEST_CASE("to_dag unrolls the chain structure") {
    PomdpModel m = identity_model();

    Dag g00 = to_dag(m, 0, 0);
    CHECK(g00.size() == 2);
    CHECK(g00.edges().size() == 1);
    CHECK(g00.has_edge(g00.index("s0"), g00.index("o0")));

    Dag g01 = to_dag(m, 0, 1);
    CHECK(g01.size() == 5);
    CHECK(g01.edges().size() == 4);
    CHECK(g01.has_edge(g01.index("s0"), g01.index("s1")));
    CHECK(g01.has_edge(g01.index("a0"), g01.index("s1")));
    CHECK(g01.has_edge(g01.index("s1"), g01.index("o1")));

    Dag g11 = to_dag(m, 1, 1);
    CHECK(g11.size() == 8);
    CHECK(g11.edges().size() == 7);
}

TEST_CASE("to_dag satisfies the closed-form counts and stays acyclic") {
    PomdpModel m = identity_model();
    for (std::size_t t = 0; t <= 3; ++t) {
        for (std::size_t d = 0; d <= 3; ++d) {
            Dag g = to_dag(m, t, d);
            std::size_t n = t + d;
            CHECK(g.size() == 2 * (n + 1) + n);
            CHECK(g.edges().size() == (n + 1) + 2 * n);
            CHECK(g.topological_order().size() == g.size());
        }
    }
}

TEST_CASE("dag construction rejects malformed graphs") {
    CHECK_THROWS_AS(Dag({"a", "a"}, {}), InvalidDagError);
    CHECK_THROWS_AS(Dag({"a", "b"}, {{"a", "b"}, {"a", "b"}}), InvalidDagError);
    CHECK_THROWS_AS(Dag({"a", "b"}, {{"a", "c"}}), UnknownVertexError);
    CHECK_THROWS_AS(Dag({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InvalidDagError);
    CHECK_THROWS_AS(Dag({"a"}, {{"a", "a"}}), InvalidDagError);
}

TEST_CASE("dag descendant masks are proper") {
    Dag g({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"a", "d"}});
    std::vector<bool> desc = g.proper_descendants(g.index("a"));
    CHECK_FALSE(desc[g.index("a")]);
    CHECK(desc[g.index("b")]);
    CHECK(desc[g.index("c")]);
    CHECK(desc[g.index("d")]);

    std::vector<bool> leaf = g.proper_descendants(g.index("c"));
    for (bool bit : leaf) CHECK_FALSE(bit);
}

TEST_CASE("model save and load round-trips probabilities bit-exactly") {
    PomdpModel m = identity_model();
    m.prior_d = {1.0 / 3.0, 2.0 / 3.0};
    m.likelihood_a = Matrix(2, 2, {0.7, 0.2, 0.3, 0.8});
    m.transitions_b = {Matrix(2, 2, {0.9, 0.1, 0.1, 0.9})};

    std::string path = temp_path("roundtrip");
    save_model(m, path);
    PomdpModel loaded = load_model(path);
    std::remove(path.c_str());

    CHECK(loaded.states == m.states);
    CHECK(loaded.prior_d == m.prior_d);
    CHECK(loaded.likelihood_a.data() == m.likelihood_a.data());
    CHECK(loaded.transitions_b[0].data() == m.transitions_b[0].data());
}

TEST_CASE("load_model rejects malformed files") {
    std::string path = temp_path("bad");

    {
        std::ofstream out(path);
        out << "{\"states\": [\"x\"]}";
    }
    CHECK_THROWS_AS(load_model(path), ParseError);

    {
        std::ofstream out(path);
        out << R"({"states": ["x", "y"], "observations": ["u", "v"],
                   "actions": ["go"], "prior_d": [0.5, 0.5],
                   "likelihood_a": [[0.5, 0.2], [0.4, 0.8]],
                   "transitions_b": [[[1.0, 0.0], [0.0, 1.0]]]})";
    }
    CHECK_THROWS_AS(load_model(path), ValidationError);

    {
        std::ofstream out(path);
        out << "not json";
    }
    CHECK_THROWS_AS(load_model(path), ParseError);

    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model(path), IoError);
}

TEST_CASE("validation error carries the report") {
    std::string path = temp_path("report");
    {
        std::ofstream out(path);
        out << R"({"states": ["x", "y"], "observations": ["u", "v"],
                   "actions": ["go"], "prior_d": [0.5, 0.5],
                   "likelihood_a": [[0.5, 0.2], [0.4, 0.8]],
                   "transitions_b": [[[1.0, 0.0], [0.0, 1.0]]]})";
    }
    try {
        load_model(path);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.report().violations.size() == 1);
        CHECK(e.report().violations[0].find("column 0") != std::string::npos);
    }
    std::remove(path.c_str());
}
