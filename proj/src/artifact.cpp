#include "urep/artifact.hpp"

#include <fstream>
#include <sstream>

#include "urep/parser.hpp"

namespace urep {

namespace {

Polynomial read_polynomial(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ArtifactError(std::string("missing polynomial '") + key + "'");
    try {
        return parse_polynomial(j.at(key).get<std::string>(), [](std::string_view) { return true; });
    } catch (const ParseError& e) {
        throw ArtifactError(std::string("field '") + key + "': " + e.what());
    }
}

BigInteger read_integer(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ArtifactError(std::string("missing integer '") + key + "'");
    BigInteger out;
    if (out.set_str(j.at(key).get<std::string>(), 10) != 0)
        throw ArtifactError(std::string("field '") + key + "' is not a decimal integer");
    return out;
}

template <typename Enum>
Enum read_enum(const nlohmann::json& j, const char* key, const std::vector<std::pair<std::string, Enum>>& names) {
    const auto text = j.at(key).get<std::string>();
    for (const auto& [name, value] : names)
        if (name == text) return value;
    throw ArtifactError(std::string("field '") + key + "' has unknown value '" + text + "'");
}

const std::vector<std::pair<std::string, ConjunctFamily>> kConjunctFamilies{
    {"digit-test", ConjunctFamily::digit_test},
    {"divisibility", ConjunctFamily::divisibility},
    {"digit-window", ConjunctFamily::digit_window},
    {"upper-bound", ConjunctFamily::upper_bound}};

const std::vector<std::pair<std::string, TripleFamily>> kTripleFamilies{
    {"digit-test", TripleFamily::digit_test},
    {"divisibility", TripleFamily::divisibility},
    {"digit-window", TripleFamily::digit_window},
    {"upper-bound", TripleFamily::upper_bound},
    {"synthetic", TripleFamily::synthetic}};

const std::vector<std::pair<std::string, WindowExponent>> kWindowExponents{
    {"standard", WindowExponent::standard}, {"lowered", WindowExponent::lowered}};

const std::vector<std::pair<std::string, DigitShift>> kDigitShifts{
    {"sign-aware", DigitShift::sign_aware}, {"always-offset", DigitShift::always_offset}};

template <typename Enum>
std::string enum_name(Enum value, const std::vector<std::pair<std::string, Enum>>& names) {
    for (const auto& [name, v] : names)
        if (v == value) return name;
    return "unknown";
}

nlohmann::ordered_json constants_json(const EncodingConstants& c) {
    auto T = nlohmann::ordered_json::array();
    for (const auto& t : c.T) T.push_back(t.to_string());
    return {{"delta", c.delta()},
            {"lambda", c.lambda()},
            {"nu", std::to_string(c.nu)},
            {"scale", c.scale.get_str()},
            {"gamma", c.gamma.get_str()},
            {"V", c.V.to_string()},
            {"K", c.K.to_string()},
            {"T", T}};
}

nlohmann::ordered_json form1_json(const FormOne& f1) {
    auto conjuncts = nlohmann::ordered_json::array();
    for (const auto& conj : f1.conjuncts)
        conjuncts.push_back({{"label", conj.label()},
                             {"family", family_name(conj.family)},
                             {"index", conj.index},
                             {"P", conj.P.to_string()},
                             {"D", conj.D.to_string()},
                             {"Q", conj.Q.to_string()}});
    return {{"window_exponent", enum_name(f1.options.window_exponent, kWindowExponents)},
            {"digit_shift", enum_name(f1.options.digit_shift, kDigitShifts)},
            {"epsilon", f1.epsilon()},
            {"conjuncts", conjuncts}};
}

nlohmann::ordered_json form2_json(const FormTwo& f2) {
    auto triples = nlohmann::ordered_json::array();
    for (const auto& tr : f2.triples)
        triples.push_back({{"label", tr.label()},
                           {"family", family_name(tr.family)},
                           {"index", tr.index},
                           {"g", tr.g.to_string()},
                           {"s", tr.s.to_string()},
                           {"t", tr.t.to_string()}});
    return {{"epsilon", f2.epsilon()},
            {"f_degree", f2.f_degree},
            {"triples", triples},
            {"F_template", f2.shape.partial_F.back().to_string()},
            {"W_template", f2.shape.W.to_string()}};
}

EncodingConstants constants_from_json(const nlohmann::json& j, const SourceRepresentation& src) {
    EncodingConstants c;
    c.source = src;
    if (j.at("delta").get<int>() != src.delta || j.at("lambda").get<int>() != src.lambda)
        throw ArtifactError("constants disagree with the input representation");
    c.nu = std::stoull(j.at("nu").get<std::string>());
    c.scale = read_integer(j, "scale");
    c.gamma = read_integer(j, "gamma");
    c.V = read_polynomial(j, "V");
    c.K = read_polynomial(j, "K");
    for (const auto& t : j.at("T")) {
        try {
            c.T.push_back(parse_polynomial(t.get<std::string>(), [](std::string_view) { return true; }));
        } catch (const ParseError& e) {
            throw ArtifactError(std::string("field 'T': ") + e.what());
        }
    }
    if (c.T.size() != 2 * c.nu + 1) throw ArtifactError("expected 2 nu + 1 carrier polynomials");
    return c;
}

FormOne form1_from_json(const nlohmann::json& j) {
    FormOne f1;
    f1.options.window_exponent = read_enum(j, "window_exponent", kWindowExponents);
    f1.options.digit_shift = read_enum(j, "digit_shift", kDigitShifts);
    for (const auto& c : j.at("conjuncts"))
        f1.conjuncts.push_back({read_enum(c, "family", kConjunctFamilies), c.at("index").get<int>(),
                                read_polynomial(c, "P"), read_polynomial(c, "D"), read_polynomial(c, "Q")});
    return f1;
}

FormTwo form2_from_json(const nlohmann::json& j) {
    std::vector<IntervalTriple> triples;
    for (const auto& t : j.at("triples"))
        triples.push_back({read_enum(t, "family", kTripleFamilies), t.at("index").get<int>(), read_polynomial(t, "g"),
                           read_polynomial(t, "s"), read_polynomial(t, "t")});
    FormTwo f2 = assemble_form2(std::move(triples));
    if (j.at("W_template").get<std::string>() != f2.shape.W.to_string() ||
        j.at("F_template").get<std::string>() != f2.shape.partial_F.back().to_string())
        throw ArtifactError("stored W/F templates do not match " + std::to_string(f2.epsilon()) + " triples");
    if (j.at("f_degree").get<std::uint64_t>() != f2.f_degree) throw ArtifactError("stored degree of W in f is wrong");
    return f2;
}

std::string forms_name(FormSelection forms) {
    switch (forms) {
        case FormSelection::one: return "1";
        case FormSelection::two: return "2";
        case FormSelection::both: return "both";
    }
    return "both";
}

}  // namespace

InputSpec input_from_json(const nlohmann::json& j) {
    try {
        return {j.at("set_name").get<std::string>(), j.at("delta").get<int>(), j.at("expression").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactError(std::string("malformed input spec: ") + e.what());
    }
}

nlohmann::ordered_json input_json(const InputSpec& input) {
    return {{"set_name", input.set_name}, {"delta", input.delta}, {"expression", input.expression}};
}

CompiledArtifact compile_artifact(const InputSpec& input, FormSelection forms, const FormOneOptions& options) {
    CompiledArtifact artifact;
    artifact.input = input;
    artifact.forms = forms;
    artifact.set = compile_set(input.set_name, input.delta, input.expression, options);
    return artifact;
}

nlohmann::ordered_json artifact_json(const CompiledArtifact& artifact) {
    nlohmann::ordered_json j{{"tool_version", artifact.tool_version},
                             {"input", input_json(artifact.input)},
                             {"forms", forms_name(artifact.forms)},
                             {"constants", constants_json(artifact.set.consts)}};
    if (artifact.has_form1()) j["form1"] = form1_json(artifact.set.form1);
    if (artifact.has_form2()) j["form2"] = form2_json(artifact.set.form2);
    return j;
}

std::string artifact_dump(const CompiledArtifact& artifact) { return artifact_json(artifact).dump(2) + "\n"; }

CompiledArtifact artifact_from_json(const nlohmann::json& j) {
    try {
        CompiledArtifact artifact;
        artifact.tool_version = j.at("tool_version").get<std::string>();
        artifact.input = input_from_json(j.at("input"));
        const auto forms = j.at("forms").get<std::string>();
        artifact.forms = forms == "1" ? FormSelection::one : forms == "2" ? FormSelection::two : FormSelection::both;
        if (forms != "1" && forms != "2" && forms != "both") throw ArtifactError("unknown form selection '" + forms + "'");

        CompiledSet& set = artifact.set;
        set.name = artifact.input.set_name;
        set.expression = artifact.input.expression;
        const auto src =
            validate_source(artifact.input.delta, parse_polynomial(artifact.input.expression, artifact.input.delta));
        set.consts = constants_from_json(j.at("constants"), src);
        set.form1 = artifact.has_form1() ? form1_from_json(j.at("form1")) : compile_form1(set.consts);
        set.form2 = artifact.has_form2() ? form2_from_json(j.at("form2")) : compile_form2(set.consts);
        return artifact;
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    } catch (const ParseError& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    } catch (const EncodingError& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    }
}

CompiledArtifact load_artifact(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArtifactError("cannot open artifact '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactError("'" + path + "' is not JSON: " + e.what());
    }
    return artifact_from_json(j);
}

std::string artifact_text(const CompiledArtifact& artifact) {
    const auto& set = artifact.set;
    std::ostringstream out;
    const int delta = set.consts.delta();
    out << "set " << set.name << ": exists " << (delta == 1 ? "h1" : "h1..h" + std::to_string(delta)) << " [" << set.consts.source.R.to_string()
        << " = 0]\n";
    out << "lambda = " << set.consts.lambda() << ", nu = " << set.consts.nu << ", gamma = " << set.consts.gamma << '\n';
    out << "K = " << set.consts.K.to_string() << '\n';
    if (artifact.has_form1()) {
        out << "\nform 1: exists b, c: AND_i exists d >= 0 [P_i < D_i*d < Q_i]\n";
        for (std::size_t i = 0; i < set.form1.conjuncts.size(); ++i) {
            const auto& conj = set.form1.conjuncts[i];
            out << "conjunct " << i + 1 << " (" << conj.label() << ")\n";
            out << "  P = " << conj.P.to_string() << '\n';
            out << "  D = " << conj.D.to_string() << '\n';
            out << "  Q = " << conj.Q.to_string() << '\n';
        }
    }
    if (artifact.has_form2()) {
        out << "\nform 2: exists b, c: forall f <= F [W > 0]\n";
        for (std::size_t i = 0; i < set.form2.triples.size(); ++i) {
            const auto& tr = set.form2.triples[i];
            out << "triple " << i + 1 << " (" << tr.label() << ")\n";
            out << "  g" << i + 1 << " = " << tr.g.to_string() << '\n';
            out << "  s" << i + 1 << " = " << tr.s.to_string() << '\n';
            out << "  t" << i + 1 << " = " << tr.t.to_string() << '\n';
        }
        out << "F = " << set.form2.shape.partial_F.back().to_string() << '\n';
        out << "W = " << set.form2.shape.W.to_string() << '\n';
        out << "degree of W in f: " << set.form2.f_degree << '\n';
    }
    return out.str();
}

std::string artifact_latex(const CompiledArtifact& artifact) {
    const auto& set = artifact.set;
    std::ostringstream out;
    out << "% " << set.name << ": " << set.consts.source.R.to_string() << "\n";
    if (artifact.has_form1()) {
        out << "\\[\n\\exists b\\,\\exists c\\;\\bigwedge_{\\iota=1}^{" << set.form1.epsilon()
            << "} \\exists d\\,[P_\\iota < D_\\iota d < Q_\\iota]\n\\]\n\\begin{align*}\n";
        for (std::size_t i = 0; i < set.form1.conjuncts.size(); ++i) {
            const auto& conj = set.form1.conjuncts[i];
            const auto n = std::to_string(i + 1);
            out << "P_{" << n << "} &= " << conj.P.to_latex() << " \\\\\n";
            out << "D_{" << n << "} &= " << conj.D.to_latex() << " \\\\\n";
            out << "Q_{" << n << "} &= " << conj.Q.to_latex();
            out << (i + 1 < set.form1.conjuncts.size() ? " \\\\\n" : "\n");
        }
        out << "\\end{align*}\n";
    }
    if (artifact.has_form2()) {
        const auto eps = std::to_string(set.form2.epsilon());
        out << "\\[\n\\exists b\\,\\exists c\\,\\forall f\\,[f \\le F \\Rightarrow W > 0]\n\\]\n";
        out << "\\[\nF = \\sum_{\\mu=1}^{" << eps
            << "} (2s_\\mu^2 + 2t_\\mu^2 + 4), \\quad W = \\prod_{\\iota=1}^{" << eps
            << "} Z(g_\\iota, s_\\iota, t_\\iota, f - F_{\\iota-1} - s_\\iota^2 - t_\\iota^2 - 2)\n\\]\n";
        out << "\\[\nZ(g,s,t,y) = ((y-1)g - s)(yg - t)\n\\]\n\\begin{align*}\n";
        for (std::size_t i = 0; i < set.form2.triples.size(); ++i) {
            const auto& tr = set.form2.triples[i];
            const auto n = std::to_string(i + 1);
            out << "g_{" << n << "} &= " << tr.g.to_latex() << " \\\\\n";
            out << "s_{" << n << "} &= " << tr.s.to_latex() << " \\\\\n";
            out << "t_{" << n << "} &= " << tr.t.to_latex();
            out << (i + 1 < set.form2.triples.size() ? " \\\\\n" : "\n");
        }
        out << "\\end{align*}\n";
    }
    return out.str();
}

}  // namespace urep
