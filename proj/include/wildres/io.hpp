#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "maclane.hpp"
#include "resolution.hpp"

namespace wildres {

namespace detail {

// Character cursor with line/column-carrying failures.
class Cursor {
public:
    explicit Cursor(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' ||
                                  s_[i_] == '\r'))
            ++i_;
    }
    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[i_]; }
    char get() {
        if (eof()) fail("unexpected end of input");
        return s_[i_++];
    }
    bool try_char(char c) {
        if (!eof() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_char(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t j = 0; j < i_ && j < s_.size(); ++j) {
            if (s_[j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + msg);
    }

    Int uint_at() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        return Int(digits);
    }

    Rational rational_at() {
        skip_ws();
        bool neg = try_char('-');
        if (!neg && try_char('+')) neg = false;
        Int num = uint_at();
        if (neg) num = -num;
        if (try_char('/')) {
            Int den = uint_at();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

inline Polynomial poly_at(Cursor& cur) {
    std::vector<Rational> coeffs;
    auto put = [&coeffs](std::size_t deg, const Rational& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
        coeffs[deg] += c;
    };
    cur.skip_ws();
    int sign = 1;
    if (cur.try_char('-')) sign = -1;
    else (void)cur.try_char('+');
    while (true) {
        cur.skip_ws();
        Rational coef(1);
        bool saw_coef = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coef = cur.rational_at();
            saw_coef = true;
        }
        cur.skip_ws();
        (void)cur.try_char('*');
        cur.skip_ws();
        std::size_t deg = 0;
        if (cur.try_char('x')) {
            deg = 1;
            cur.skip_ws();
            if (cur.try_char('^')) {
                Int d = cur.uint_at();
                if (d > 1'000'000) cur.fail("exponent too large");
                deg = d.convert_to<std::size_t>();
            }
        } else if (!saw_coef) {
            cur.fail("expected a term (coefficient or 'x')");
        }
        put(deg, Rational(sign) * coef);
        cur.skip_ws();
        if (cur.try_char('+')) sign = 1;
        else if (cur.try_char('-')) sign = -1;
        else break;
    }
    return Polynomial(std::move(coeffs));
}

} // namespace detail

// Whole-string parsers; anything left over is an error.

inline Rational parse_rational(const std::string& text) {
    detail::Cursor cur(text);
    Rational q = cur.rational_at();
    cur.skip_ws();
    if (!cur.eof()) cur.fail("trailing characters after rational");
    return q;
}

inline Polynomial parse_polynomial(const std::string& text) {
    detail::Cursor cur(text);
    Polynomial f = detail::poly_at(cur);
    cur.skip_ws();
    if (!cur.eof()) cur.fail("trailing characters after polynomial");
    return f;
}

// A parsed `--val` expression: either bare lambdas "[1/2, 3]" (a shape) or
// explicit steps "[v0, v1(x)=1/2, v2(x^2+2)=3]" (a valuation over some
// base field the caller supplies).
struct ValuationExpr {
    bool is_shape = false;
    std::vector<Rational> lambdas;    // when is_shape
    std::vector<ValuationStep> steps; // otherwise (may be empty: "[v0]")

    ValuationShape shape() const {
        if (is_shape) return ValuationShape(lambdas);
        if (steps.empty())
            throw validation_error("the Gauss valuation has no shape (no augmentation steps)");
        std::vector<Rational> ls;
        for (const ValuationStep& s : steps) ls.push_back(s.lambda);
        return ValuationShape(std::move(ls));
    }
};

inline ValuationExpr parse_valuation(const std::string& text) {
    detail::Cursor cur(text);
    ValuationExpr expr;
    cur.skip_ws();
    cur.expect('[');
    cur.skip_ws();
    if (cur.peek() == 'v') {
        cur.expect('v');
        cur.expect('0');
        std::size_t next_index = 1;
        cur.skip_ws();
        while (cur.try_char(',')) {
            cur.skip_ws();
            cur.expect('v');
            Int idx = cur.uint_at();
            if (idx != Int(next_index)) cur.fail("non-consecutive step index v" + idx.str());
            ++next_index;
            cur.skip_ws();
            cur.expect('(');
            Polynomial key = detail::poly_at(cur);
            cur.skip_ws();
            cur.expect(')');
            cur.skip_ws();
            cur.expect('=');
            Rational lam = cur.rational_at();
            if (!key.is_monic()) cur.fail("key polynomial is not monic");
            expr.steps.push_back(ValuationStep{std::move(key), std::move(lam)});
            cur.skip_ws();
        }
        cur.expect(']');
    } else {
        expr.is_shape = true;
        expr.lambdas.push_back(cur.rational_at());
        cur.skip_ws();
        while (cur.try_char(',')) {
            expr.lambdas.push_back(cur.rational_at());
            cur.skip_ws();
        }
        cur.expect(']');
    }
    cur.skip_ws();
    if (!cur.eof()) cur.fail("trailing characters after valuation");
    return expr;
}

// --- serialization -----------------------------------------------------

namespace detail {

inline long long json_int(const Int& v) {
    static const Int limit = Int(1) << 53;
    if (v >= limit || v <= -limit)
        throw validation_error("integer " + v.str() + " too large for a JSON number");
    return v.convert_to<long long>();
}

// Vertex order and normalized edge list shared by the emitters.
struct EmitPlan {
    std::vector<std::size_t> order;                            // canonical vertex order
    std::vector<std::pair<std::size_t, std::size_t>> edges;    // positions in `order`
};

inline EmitPlan emit_plan(const ResolutionGraph& g) {
    EmitPlan plan;
    plan.order = canonical_order(g);
    std::vector<std::size_t> pos(g.vertices.size());
    for (std::size_t k = 0; k < plan.order.size(); ++k) pos[plan.order[k]] = k;
    for (const auto& [a, b] : g.edges)
        plan.edges.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
    std::sort(plan.edges.begin(), plan.edges.end());
    return plan;
}

} // namespace detail

inline std::string emit_json(const ResolutionGraph& g) {
    nlohmann::ordered_json out;
    detail::EmitPlan plan = detail::emit_plan(g);
    out["vertices"] = nlohmann::ordered_json::array();
    for (std::size_t idx : plan.order) {
        const Vertex& v = g.vertices[idx];
        nlohmann::ordered_json jv;
        jv["tag"] = v.tag.to_string();
        jv["lambda"] = v.lambda.to_string();
        jv["multiplicity"] = detail::json_int(v.multiplicity);
        if (v.self_intersection) jv["self_intersection"] = detail::json_int(*v.self_intersection);
        else jv["self_intersection"] = nullptr;
        jv["link"] = v.is_link;
        out["vertices"].push_back(std::move(jv));
    }
    out["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : plan.edges)
        out["edges"].push_back({g.vertices[plan.order[a]].tag.to_string(),
                                g.vertices[plan.order[b]].tag.to_string()});
    out["view"] = to_string(g.view);
    GraphChecks checks = run_graph_checks(g);
    out["checks"] = {{"tree", checks.tree},
                     {"negative_definite", checks.negative_definite},
                     {"fiber_relation", checks.fiber_relation}};
    return out.dump(2) + "\n";
}

inline std::string emit_dot(const ResolutionGraph& g) {
    detail::EmitPlan plan = detail::emit_plan(g);
    std::string out = "graph wildres {\n";
    for (std::size_t idx : plan.order) {
        const Vertex& v = g.vertices[idx];
        out += "  \"" + v.tag.to_string() + "\" [";
        if (v.is_link) out += "shape=doublecircle, ";
        out += "label=\"m=" + v.multiplicity.str();
        if (v.self_intersection) out += ", E²=" + v.self_intersection->str();
        out += "\"];\n";
    }
    for (const auto& [a, b] : plan.edges)
        out += "  \"" + g.vertices[plan.order[a]].tag.to_string() + "\" -- \"" +
               g.vertices[plan.order[b]].tag.to_string() + "\";\n";
    out += "}\n";
    return out;
}

// Inverse of emit_json for the vertex/edge/view payload (the advisory
// "checks" object is recomputed, never read).
inline ResolutionGraph parse_graph_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    ResolutionGraph g;
    try {
        if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
            throw parse_error("expected an object with a \"vertices\" array");
        g.view = doc.contains("view") ? view_from_string(doc["view"].get<std::string>())
                                      : GraphView::full;
        std::map<std::string, std::size_t> index;
        for (const auto& jv : doc["vertices"]) {
            Vertex v;
            v.tag = ComponentTag::parse(jv.at("tag").get<std::string>());
            if (jv.contains("lambda")) v.lambda = parse_rational(jv.at("lambda").get<std::string>());
            if (!jv.at("multiplicity").is_number_integer())
                throw parse_error("multiplicity must be an integer");
            v.multiplicity = Int(jv.at("multiplicity").get<long long>());
            if (v.multiplicity < 1) throw parse_error("multiplicity must be positive");
            if (jv.contains("self_intersection") && !jv.at("self_intersection").is_null()) {
                if (!jv.at("self_intersection").is_number_integer())
                    throw parse_error("self_intersection must be an integer or null");
                v.self_intersection = Int(jv.at("self_intersection").get<long long>());
            }
            if (jv.contains("link")) v.is_link = jv.at("link").get<bool>();
            std::string key = v.tag.to_string();
            if (!index.emplace(key, g.vertices.size()).second)
                throw parse_error("duplicate vertex tag '" + key + "'");
            if (v.tag.kind == ComponentTag::Kind::v) g.depth = std::max(g.depth, v.tag.index);
            g.vertices.push_back(std::move(v));
        }
        if (doc.contains("edges"))
            for (const auto& je : doc["edges"]) {
                if (!je.is_array() || je.size() != 2)
                    throw parse_error("each edge must be a [tag, tag] pair");
                auto resolve = [&index](const std::string& t) {
                    auto it = index.find(t);
                    if (it == index.end())
                        throw parse_error("edge endpoint '" + t + "' is not a vertex");
                    return it->second;
                };
                std::size_t a = resolve(je[0].get<std::string>());
                std::size_t b = resolve(je[1].get<std::string>());
                if (a == b) throw parse_error("self-loop on '" + je[0].get<std::string>() + "'");
                g.edges.emplace_back(std::min(a, b), std::max(a, b));
            }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed graph JSON: ") + e.what());
    } catch (const validation_error& e) {
        // malformed tags or view names inside a document are parse failures
        throw parse_error(e.what());
    }
    return g;
}

} // namespace wildres
