#include "fourband/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fourband {

namespace {

using ordered_json = nlohmann::ordered_json;

FourierSeries parse_series(const ordered_json& j) {
    FourierSeries s;
    if (j.is_null()) return s;
    if (!j.is_object())
        throw InputError("coefficient entry must be an object");
    if (j.contains("const")) {
        if (!j["const"].is_number())
            throw InputError("'const' must be a number");
        s.constant = j["const"].get<double>();
    }
    for (const char* key : {"cos", "sin"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array())
            throw InputError(std::string("'") + key + "' must be an array");
        auto& dst = key[0] == 'c' ? s.cos_coeffs : s.sin_coeffs;
        for (const auto& v : j[key]) {
            if (!v.is_number())
                throw InputError(std::string("'") + key +
                                 "' entries must be numbers");
            dst.push_back(v.get<double>());
        }
    }
    return s;
}

ordered_json series_to_json(const FourierSeries& s) {
    ordered_json j;
    j["const"] = s.constant;
    j["cos"] = s.cos_coeffs;
    j["sin"] = s.sin_coeffs;
    return j;
}

ordered_json interval_json(const Interval& iv) {
    return ordered_json{{"a", iv.a}, {"b", iv.b}};
}

ordered_json zero_json(const LocatedZero& z) {
    ordered_json j;
    j["lambda_re"] = z.lambda.real();
    j["lambda_im"] = z.lambda.imag();
    j["which"] = to_string(z.which);
    j["multiplicity"] = z.multiplicity;
    if (z.label) {
        j["label_n"] = z.label->n;
        j["label_sign"] = z.label->sign > 0 ? "+" : "-";
    } else {
        j["label_n"] = nullptr;
        j["label_sign"] = nullptr;
    }
    j["refine_residual"] = z.refine_residual;
    return j;
}

} // namespace

CoefficientSet load_coefficients_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("coefficient JSON parse failure: ") +
                         e.what());
    }
    if (!j.is_object()) throw InputError("coefficient file must be an object");
    return CoefficientSet(parse_series(j.value("p", ordered_json())),
                          parse_series(j.value("q", ordered_json())));
}

CoefficientSet load_coefficients_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coefficient file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_coefficients_json(ss.str());
}

CoefficientSet preset_coefficients(const std::string& name) {
    if (name == "zero") return CoefficientSet(FourierSeries{}, FourierSeries{});
    if (name == "cos1") {
        FourierSeries p;
        p.cos_coeffs = {1.0};
        return CoefficientSet(p, FourierSeries{});
    }
    throw InputError("unknown preset: " + name);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string coefficient_hash(const CoefficientSet& c) {
    std::string canon;
    auto feed = [&canon](const FourierSeries& s) {
        canon += format_double(s.constant);
        for (double v : s.cos_coeffs) canon += "," + format_double(v);
        canon += ";";
        for (double v : s.sin_coeffs) canon += "," + format_double(v);
        canon += "|";
    };
    feed(c.p_series());
    feed(c.q_series());
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string zero_tables_to_json(const ZeroTables& t) {
    ordered_json j;
    const std::pair<const char*, const std::vector<LocatedZero>*> groups[] = {
        {"periodic", &t.periodic},
        {"antiperiodic", &t.antiperiodic},
        {"resonances", &t.resonances},
        {"unlabeled", &t.unlabeled}};
    for (const auto& [name, vec] : groups) {
        ordered_json arr = ordered_json::array();
        for (const auto& z : *vec) arr.push_back(zero_json(z));
        j[name] = arr;
    }
    return j.dump(2);
}

std::string spectrum_report_to_json(const SpectrumReport& r) {
    ordered_json j;
    j["schema_version"] = 1;
    j["coefficient_hash"] = r.coeff_hash;
    j["lambda_max"] = r.lambda_max;
    j["tol_ode"] = r.tol_ode;
    j["tol_root"] = r.tol_root;
    ordered_json bands = ordered_json::array();
    for (const auto& b : r.bands) {
        ordered_json bj;
        bj["n"] = b.n;
        bj["closure"] = interval_json(b.closure);
        bj["case"] = b.case_tag == BandCase::i1   ? "i1"
                     : b.case_tag == BandCase::i2 ? "i2"
                                                  : "i3";
        auto kind = [](EndpointKind k) {
            switch (k) {
                case EndpointKind::periodic: return "periodic";
                case EndpointKind::antiperiodic: return "antiperiodic";
                default: return "resonance";
            }
        };
        bj["left_kind"] = kind(b.left_kind);
        bj["right_kind"] = kind(b.right_kind);
        if (b.sub_arc_minus) bj["sub_arc_minus"] = interval_json(*b.sub_arc_minus);
        if (b.sub_arc_plus) bj["sub_arc_plus"] = interval_json(*b.sub_arc_plus);
        bj["double_resonance_flag"] = b.double_resonance_flag;
        bands.push_back(bj);
    }
    j["bands"] = bands;
    ordered_json gaps = ordered_json::array();
    for (const auto& g : r.gaps) gaps.push_back(interval_json(g));
    j["gaps"] = gaps;
    ordered_json m4 = ordered_json::array();
    for (const auto& m : r.mult4) m4.push_back(interval_json(m));
    j["mult4"] = m4;
    j["tables"] = ordered_json::parse(zero_tables_to_json(r.tables));
    return j.dump(2);
}

} // namespace fourband
