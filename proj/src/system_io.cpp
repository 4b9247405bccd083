#include "srr/system_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace srr {

namespace {

using nlohmann::json;

[[noreturn]] void rethrow_with_position(const std::string& text,
                                        const json::parse_error& e) {
    // e.byte is the 1-based offset where parsing stopped
    int line = 1, column = 1;
    const size_t stop = e.byte == 0 ? 0 : e.byte - 1;
    for (size_t i = 0; i < stop && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    throw SpecParseError(e.what(), line, column);
}

// Exact rational from a JSON value: integers directly, doubles through
// their shortest decimal rendering, strings through the rational parser
// (accepts "p/q" and decimals).
Rat rat_from_json(const json& v, const char* what) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<int64_t>()));
    if (v.is_number_float()) return parse_rational(v.dump());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw std::invalid_argument(std::string(what) + " must be a number");
}

}  // namespace

SystemSpecFile parse_system_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        rethrow_with_position(text, e);
    }
    if (!doc.is_object())
        throw std::invalid_argument("spec must be a JSON object");

    static const char* known[] = {"K", "mu", "systematic", "coded", "mode",
                                  "tol", "grid_step"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw std::invalid_argument("unknown key in spec: " + key);
    }
    for (const char* required : {"K", "systematic", "coded"})
        if (!doc.contains(required))
            throw std::invalid_argument(std::string("spec missing key: ") + required);

    if (!doc["K"].is_number_integer())
        throw std::invalid_argument("K must be an integer");
    const int K = doc["K"].get<int>();
    if (K < 1) throw std::invalid_argument("invalid system: K must be >= 1");

    if (!doc["systematic"].is_array())
        throw std::invalid_argument("systematic must be an array");
    std::vector<int> counts;
    for (const auto& v : doc["systematic"]) {
        if (!v.is_number_integer() || v.get<int64_t>() < 0)
            throw std::invalid_argument("systematic counts must be integers >= 0");
        counts.push_back(v.get<int>());
    }
    if (static_cast<int>(counts.size()) != K)
        throw std::invalid_argument("systematic must list exactly K counts");

    if (!doc["coded"].is_number_integer() || doc["coded"].get<int64_t>() < 0)
        throw std::invalid_argument("coded must be an integer >= 0");
    const int C = doc["coded"].get<int>();

    Rat mu = 1;
    if (doc.contains("mu")) {
        mu = rat_from_json(doc["mu"], "mu");
        if (mu <= 0) throw std::invalid_argument("invalid parameter: mu must be > 0");
    }

    SystemSpecFile spec;
    spec.system = build_mds_core_system(counts, C, mu);

    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        Rat tol = frac(1, 1000000000);
        if (doc.contains("tol")) {
            tol = rat_from_json(doc["tol"], "tol");
            if (tol <= 0) throw std::invalid_argument("tol must be > 0");
        }
        if (mode == "rational")
            spec.default_mode = LpMode::rational();
        else if (mode == "float")
            spec.default_mode = LpMode::floating(tol);
        else
            throw std::invalid_argument("mode must be \"rational\" or \"float\"");
    } else if (doc.contains("tol")) {
        throw std::invalid_argument("tol requires mode \"float\"");
    }

    if (doc.contains("grid_step")) {
        spec.grid_step = rat_from_json(doc["grid_step"], "grid_step");
        if (*spec.grid_step <= 0)
            throw std::invalid_argument("grid_step must be > 0");
    }
    return spec;
}

SystemSpecFile load_system_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_spec(buf.str());
}

void write_witness_json(std::ostream& os, const DemandVector& demand,
                        const FeasibilityWitness& witness) {
    os << "{\n  \"feasible\": " << (witness.feasible ? "true" : "false");
    os << ",\n  \"lambda\": [";
    for (int k = 0; k < demand.size(); ++k)
        os << (k ? ", " : "") << '"' << to_string(demand.lambda[k]) << '"';
    os << "]";
    if (witness.strategy) {
        os << ",\n  \"strategy\": [";
        for (size_t k = 0; k < witness.strategy->alpha.size(); ++k) {
            os << (k ? ",\n    " : "\n    ") << "[";
            const auto& row = witness.strategy->alpha[k];
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? ", " : "") << '"' << to_string(row[i]) << '"';
            os << "]";
        }
        os << "\n  ]";
    }
    os << ",\n  \"binding_nodes\": [";
    for (size_t i = 0; i < witness.binding_nodes.size(); ++i)
        os << (i ? ", " : "") << witness.binding_nodes[i] + 1;
    os << "]\n}\n";
}

WitnessFile parse_witness_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        rethrow_with_position(text, e);
    }
    WitnessFile w;
    w.feasible = doc.at("feasible").get<bool>();
    for (const auto& v : doc.at("lambda"))
        w.demand.lambda.push_back(parse_rational(v.get<std::string>()));
    if (doc.contains("strategy")) {
        SplittingStrategy s;
        for (const auto& row : doc.at("strategy")) {
            std::vector<Rat> r;
            for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
            s.alpha.push_back(std::move(r));
        }
        w.strategy = std::move(s);
    }
    if (doc.contains("binding_nodes"))
        for (const auto& v : doc.at("binding_nodes"))
            w.binding_nodes.push_back(v.get<int>() - 1);
    return w;
}

}  // namespace srr
