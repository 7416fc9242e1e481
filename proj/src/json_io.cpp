#include "omega/json_io.hpp"

#include "omega/errors.hpp"

namespace omega {

Json to_json(const Rational& q) {
    return Json{{"num", q.numerator().str()}, {"den", q.denominator().str()}};
}

Json to_json(const ExactReal& x) {
    switch (x.kind()) {
        case Kind::rational: {
            Json j = to_json(x.rational());
            j["kind"] = "rat";
            return j;
        }
        case Kind::quad_surd: {
            const QuadSurd& s = x.quad_surd();
            return Json{{"kind", "quad"},
                        {"a", to_json(s.a)},
                        {"b", to_json(s.b)},
                        {"d", s.d.str()}};
        }
        case Kind::log_lin: {
            const LogLin& l = x.log_lin();
            Json terms = Json::array();
            for (const auto& [p, c] : l.terms) {
                terms.push_back(Json{{"p", p.str()}, {"c", to_json(c)}});
            }
            return Json{{"kind", "loglin"}, {"q0", to_json(l.q0)}, {"terms", std::move(terms)}};
        }
    }
    return Json();
}

Rational rational_from_json(const Json& j) {
    return Rational(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

ExactReal exact_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rat") return ExactReal(rational_from_json(j));
    if (kind == "quad") {
        return ExactReal::quad(rational_from_json(j.at("a")), rational_from_json(j.at("b")),
                               Int(j.at("d").get<std::string>()));
    }
    if (kind == "loglin") {
        LogLin l;
        l.q0 = rational_from_json(j.at("q0"));
        for (const auto& t : j.at("terms")) {
            l.terms[Int(t.at("p").get<std::string>())] = rational_from_json(t.at("c"));
        }
        return ExactReal(std::move(l));
    }
    throw ParseError("unknown ExactReal kind: " + kind);
}

Json to_json(const ElementList& el) {
    Json elements = Json::array();
    for (const auto& e : el.elements) elements.push_back(to_json(e));
    return Json{{"bound", to_json(el.bound)}, {"elements", std::move(elements)}};
}

ElementList element_list_from_json(const Json& j) {
    ElementList el{exact_from_json(j.at("bound")), {}};
    for (const auto& e : j.at("elements")) el.elements.push_back(exact_from_json(e));
    return el;
}

Json to_json(const Footprint& fp) {
    Json values = Json::array();
    for (const auto& v : fp.values) values.push_back(to_json(v));
    return Json{{"truncation_bound", to_json(fp.truncation_bound)}, {"values", std::move(values)}};
}

Json to_json(const NumericalSemigroup& s) {
    return Json{{"gaps", s.gaps()}, {"generators", s.minimal_generators()}};
}

Json to_json(const Classification& c) {
    if (const auto* scaled = std::get_if<ScaledClassification>(&c)) {
        return Json{{"kind", "scaled"},
                    {"lambda", to_json(scaled->lambda)},
                    {"semigroup", to_json(scaled->semigroup)}};
    }
    const auto& t = std::get<TemperedClassification>(c);
    return Json{{"kind", "tempered"},
                {"witness", Json::array({to_json(t.witness_a), to_json(t.witness_b)})},
                {"reason", t.reason}};
}

Json to_json(const Scale& scale) {
    Json pitches = Json::array();
    for (const auto& p : scale.pitches) {
        pitches.push_back(Json{{"value", to_json(p.value)},
                               {"label", p.label},
                               {"cents", scalar_mul(Rational(1200), p.value).to_decimal(6)}});
    }
    return Json{{"name", scale.name},
                {"description", scale.description},
                {"pitches", std::move(pitches)}};
}

Json to_json(const GenusCountReport& report, bool timings) {
    Json j{{"counts", report.counts}};
    if (timings) j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

}  // namespace omega
