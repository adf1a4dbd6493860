#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wildres/io.hpp"

using namespace wildres;

namespace {

Polynomial poly(std::initializer_list<Rational> coeffs_low_first) {
    return Polynomial(std::vector<Rational>(coeffs_low_first));
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("26/9") == Rational(26, 9));
    CHECK(parse_rational("-5/2") == Rational(-5, 2));
    CHECK(parse_rational(" 3 ") == Rational(3));
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK_THROWS_AS(parse_rational("4/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), parse_error);
    CHECK_THROWS_AS(parse_rational("2.5"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
    CHECK_THROWS_WITH(parse_rational("abc"),
                      Catch::Matchers::ContainsSubstring("line 1, column 1"));
}

TEST_CASE("polynomial parsing") {
    CHECK(parse_polynomial("x^2+2") == poly({Rational(2), Rational(0), Rational(1)}));
    CHECK(parse_polynomial("x^2 + 2") == poly({Rational(2), Rational(0), Rational(1)}));
    CHECK(parse_polynomial("-x + 1/2") == poly({Rational(1, 2), Rational(-1)}));
    CHECK(parse_polynomial("3*x^2 - x") == poly({Rational(0), Rational(-1), Rational(3)}));
    CHECK(parse_polynomial("1/2x") == poly({Rational(0), Rational(1, 2)}));
    CHECK(parse_polynomial("7") == Polynomial::constant(Rational(7)));
    CHECK(parse_polynomial("0") == Polynomial::zero());
    CHECK(parse_polynomial("x + x") == poly({Rational(0), Rational(2)})); // merged terms
    CHECK(parse_polynomial("x^3+x+1") ==
          poly({Rational(1), Rational(1), Rational(0), Rational(1)}));

    CHECK_THROWS_AS(parse_polynomial(""), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x +"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x^-2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x^1000001"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("y"), parse_error);
}

TEST_CASE("polynomial print-parse round trip") {
    std::mt19937_64 rng(192837);
    std::uniform_int_distribution<long> deg(0, 7);
    std::uniform_int_distribution<long long> num(-30, 30);
    std::uniform_int_distribution<long long> den(1, 9);
    for (int t = 0; t < 200; ++t) {
        std::vector<Rational> coeffs(static_cast<std::size_t>(deg(rng)) + 1, Rational(0));
        for (auto& c : coeffs) c = Rational(Int(num(rng)), Int(den(rng)));
        Polynomial f(std::move(coeffs));
        CHECK(parse_polynomial(f.to_string()) == f);
    }
}

TEST_CASE("valuation expression parsing") {
    ValuationExpr steps = parse_valuation("[v0, v1(x)=1/2, v2(x^2+2)=3]");
    CHECK_FALSE(steps.is_shape);
    REQUIRE(steps.steps.size() == 2);
    CHECK(steps.steps[0].key == Polynomial::monomial(1));
    CHECK(steps.steps[0].lambda == Rational(1, 2));
    CHECK(steps.steps[1].key == poly({Rational(2), Rational(0), Rational(1)}));
    CHECK(steps.steps[1].lambda == Rational(3));
    ValuationShape via_steps = steps.shape();
    CHECK(via_steps.lambdas() == std::vector<Rational>{Rational(1, 2), Rational(3)});

    // the parsed steps really build a valuation
    MacLaneValuation v(BaseField(Int(2)), steps.steps);
    CHECK(v.verified());
    CHECK(evaluate(v, poly({Rational(2), Rational(0), Rational(1)})) == ExtRat(Rational(3)));

    ValuationExpr bare = parse_valuation("[1/2, 3]");
    CHECK(bare.is_shape);
    CHECK(bare.shape().lambdas() == std::vector<Rational>{Rational(1, 2), Rational(3)});

    ValuationExpr gauss = parse_valuation("[v0]");
    CHECK_FALSE(gauss.is_shape);
    CHECK(gauss.steps.empty());
    CHECK_THROWS_AS(gauss.shape(), validation_error);

    // whitespace insignificant
    ValuationExpr spaced = parse_valuation("  [ v0 , v1 ( x ) = 1/2 ]  ");
    REQUIRE(spaced.steps.size() == 1);
    CHECK(spaced.steps[0].lambda == Rational(1, 2));

    CHECK_THROWS_WITH(parse_valuation("[v0, v2(x)=1]"),
                      Catch::Matchers::ContainsSubstring("non-consecutive step index v2"));
    CHECK_THROWS_WITH(parse_valuation("[v0, v1(2x)=1]"),
                      Catch::Matchers::ContainsSubstring("not monic"));
    CHECK_THROWS_AS(parse_valuation(""), parse_error);
    CHECK_THROWS_AS(parse_valuation("["), parse_error);
    CHECK_THROWS_AS(parse_valuation("[]"), parse_error);
    CHECK_THROWS_AS(parse_valuation("[v0, v1(x)=1/2"), parse_error);
    CHECK_THROWS_AS(parse_valuation("[v1(x)=1]"), parse_error);
    CHECK_THROWS_AS(parse_valuation("[v0 v1(x)=1]"), parse_error);
    CHECK_THROWS_AS(parse_valuation("[1/2, 3] junk"), parse_error);
}

TEST_CASE("json emission is canonical and round trips") {
    ResolutionGraph g = ww_resolution_graph(ValuationShape({Rational(1, 2), Rational(3)}));
    std::string text = emit_json(g);

    // deterministic
    CHECK(emit_json(g) == text);

    // canonical: a shuffled copy of the same graph emits identical bytes
    ResolutionGraph shuffled = g;
    std::reverse(shuffled.vertices.begin(), shuffled.vertices.end());
    std::size_t last = shuffled.vertices.size() - 1;
    for (auto& [a, b] : shuffled.edges) {
        a = last - a;
        b = last - b;
        if (a > b) std::swap(a, b);
    }
    CHECK(emit_json(shuffled) == text);

    // round trip through the parser
    ResolutionGraph back = parse_graph_json(text);
    CHECK(back.vertices.size() == g.vertices.size());
    CHECK(back.edges.size() == g.edges.size());
    CHECK(back.view == GraphView::extended);
    CHECK(emit_json(back) == text);
    CHECK(graphs_isomorphic(back, g));

    // spot-check the payload
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["view"] == "extended");
    CHECK(doc["vertices"].size() == 7);
    CHECK(doc["edges"].size() == 6);
    CHECK(doc["checks"]["tree"] == true);
    CHECK(doc["checks"]["negative_definite"] == true);
    CHECK(doc["checks"]["fiber_relation"] == true);
    CHECK(doc["vertices"][0]["tag"] == "v/2");
    CHECK(doc["vertices"][0]["link"] == true);
    CHECK(doc["vertices"][0]["lambda"] == "3");
    CHECK(doc["vertices"][0]["multiplicity"] == 2);
    CHECK(doc["vertices"][0]["self_intersection"] == -1);
    CHECK(text.back() == '\n');
}

TEST_CASE("json emission of degenerate graphs") {
    ResolutionGraph smooth = minimal_resolution(ValuationShape({Rational(2)}));
    ResolutionGraph exc = extract_view(smooth, GraphView::exceptional);
    auto doc = nlohmann::json::parse(emit_json(exc));
    REQUIRE(doc["vertices"].size() == 1);
    CHECK(doc["vertices"][0]["link"] == true);
    CHECK(doc["edges"].empty());
    CHECK(doc["checks"]["tree"] == true);

    // a graph with a null self-intersection stays emittable
    ResolutionGraph partial = smooth;
    partial.vertices[0].self_intersection.reset();
    auto pd = nlohmann::json::parse(emit_json(partial));
    CHECK(pd["vertices"][0]["self_intersection"].is_null());
    CHECK(pd["checks"]["fiber_relation"] == false);

    // ... even when the bare vertex is not the link
    ResolutionGraph bare = parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 2}]})");
    auto bd = nlohmann::json::parse(emit_json(bare));
    CHECK(bd["checks"]["negative_definite"] == false);
    CHECK(bd["checks"]["tree"] == true);
}

TEST_CASE("oversized integers are refused rather than rounded") {
    ResolutionGraph g;
    Vertex v;
    v.tag = ComponentTag::make_v(1);
    v.multiplicity = Int(1) << 60;
    v.self_intersection = Int(0);
    g.vertices.push_back(v);
    CHECK_THROWS_AS(emit_json(g), validation_error);
}

TEST_CASE("dot emission") {
    ResolutionGraph d4 = rs_graph(2, 1, 1);
    std::string dot = emit_dot(d4);
    CHECK(dot.rfind("graph wildres {", 0) == 0);
    CHECK(count_occurrences(dot, "label=") == 5);
    CHECK(count_occurrences(dot, " -- ") == 4);
    CHECK(count_occurrences(dot, "doublecircle") == 1);
    CHECK(dot.find("label=\"m=2, E²=-1\"") != std::string::npos);
    CHECK(emit_dot(d4) == dot); // deterministic

    ResolutionGraph single = minimal_resolution(ValuationShape({Rational(3)}));
    std::string sdot = emit_dot(single);
    CHECK(count_occurrences(sdot, "label=") == 1);
    CHECK(count_occurrences(sdot, " -- ") == 0);

    std::string node_dot = emit_dot(rs_graph(5, 2, 1));
    CHECK(count_occurrences(node_dot, "\"v/1\"") >= 3); // declaration + 3 edge slots
    std::size_t degree = 0;
    for (const std::string& line : {std::string("\"v/1\" -- "), std::string(" -- \"v/1\";")})
        degree += count_occurrences(node_dot, line);
    CHECK(degree == 3);
}

TEST_CASE("graph json parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_graph_json("{"), parse_error);
    CHECK_THROWS_AS(parse_graph_json("[]"), parse_error);
    CHECK_THROWS_AS(parse_graph_json("{\"edges\": []}"), parse_error);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices": [{"tag": "v/1"}]})"), parse_error);
    CHECK_THROWS_AS(
        parse_graph_json(R"({"vertices": [{"tag": "??", "multiplicity": 1}]})"), parse_error);
    CHECK_THROWS_AS(
        parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 0}]})"), parse_error);
    CHECK_THROWS_AS(
        parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 1.5}]})"), parse_error);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices": [
        {"tag": "v/1", "multiplicity": 1}, {"tag": "v/1", "multiplicity": 1}]})"),
                    parse_error);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 1}],
        "edges": [["v/1", "v/9"]]})"),
                    parse_error);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 1}],
        "edges": [["v/1", "v/1"]]})"),
                    parse_error);
    CHECK_THROWS_AS(parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 1}],
        "view": "bogus"})"),
                    parse_error);
    CHECK_THROWS_AS(
        parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 1,
        "self_intersection": "x"}]})"),
        parse_error);

    // minimal valid document: defaults fill in
    ResolutionGraph ok = parse_graph_json(R"({"vertices": [{"tag": "v/1", "multiplicity": 2}]})");
    REQUIRE(ok.vertices.size() == 1);
    CHECK(ok.view == GraphView::full);
    CHECK(ok.vertices[0].lambda == Rational(0));
    CHECK_FALSE(ok.vertices[0].self_intersection.has_value());
    CHECK_FALSE(ok.vertices[0].is_link);
    CHECK(ok.depth == 1);
}
