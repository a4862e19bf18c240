#include "ivpcap/json_io.hpp"

#include <sstream>

namespace ivpcap {

using nlohmann::json;

json to_json(const IvpCoeffs& p) {
    json j;
    j["degree"] = p.degree;
    json arr = json::array();
    for (const Int& c : p.coeffs) arr.push_back(c.str());
    j["coeffs"] = arr;
    return j;
}

IvpCoeffs ivp_from_json(const json& j) {
    std::vector<Int> c;
    for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
    IvpCoeffs p = IvpCoeffs::make(std::move(c));
    if (j.contains("degree") && j["degree"].get<unsigned>() != p.degree)
        throw InvalidSpec("degree field does not match canonical coefficients");
    return p;
}

namespace {
const char* mode_name(NormMode m) {
    switch (m) {
        case NormMode::LInf: return "linf";
        case NormMode::L2: return "l2";
        case NormMode::L2Weighted: return "l2w";
    }
    return "?";
}
const char* gram_mode_name(GramMode m) {
    switch (m) {
        case GramMode::L2Circle: return "L2Circle";
        case GramMode::L2TwoCircles: return "L2TwoCircles";
        case GramMode::BergmanDisk: return "BergmanDisk";
        case GramMode::BergmanTwoDisks: return "BergmanTwoDisks";
        case GramMode::WeightedL2: return "WeightedL2";
        case GramMode::SigmaInfinity: return "SigmaInfinity";
    }
    return "?";
}
}  // namespace

json to_json(const GrowthSpec& s) {
    json j;
    j["a"] = to_decimal(s.a);
    if (s.b) j["b"] = to_decimal(*s.b);
    j["mode"] = mode_name(s.mode);
    j["t"] = to_decimal(s.t);
    return j;
}

json to_json(const GramMatrix& g, unsigned digits) {
    json j;
    j["dim"] = g.dim;
    j["mode"] = gram_mode_name(g.mode);
    j["entry_tail_bound"] = to_decimal(g.entry_tail_bound, digits);
    j["prefactor"] = to_decimal(g.prefactor, digits);
    json rows = json::array();
    for (unsigned i = 0; i < g.dim; ++i) {
        json row = json::array();
        for (unsigned k = 0; k < g.dim; ++k) row.push_back(to_decimal(g.at(i, k), digits));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

json to_json(const CapacityValue& c, const Real& a, const Real& b, const std::string& method) {
    json j;
    j["a"] = to_decimal(a);
    j["b"] = to_decimal(b);
    j["gamma"] = to_decimal(c.value);
    j["error"] = to_decimal(c.error, 8);
    j["method"] = method;
    return j;
}

json to_json(const SearchReport& r, const GrowthSpec& spec) {
    json j;
    j["params"] = to_json(spec);
    j["d"] = r.d;
    j["count"] = r.count.str();
    j["count_ambiguous"] = r.count_ambiguous.str();
    j["vaaler_lower"] = r.vaaler_lower.str();
    j["logvol"] = to_decimal(r.logvol, 20);
    if (spec.mode == NormMode::LInf) {
        j["vaaler_logvol"] = to_decimal(r.vaaler_logvol, 20);
        j["ball_logvol"] = to_decimal(r.ball_logvol, 20);
    }
    if (r.min_form_valid) j["min_nonzero_form"] = to_decimal(r.min_nonzero_form, 30);
    json ws = json::array();
    for (const IvpCoeffs& w : r.witnesses) ws.push_back(to_json(w));
    j["witnesses"] = ws;
    j["witnesses_truncated"] = r.witnesses_truncated;
    return j;
}

std::string witnesses_csv(const SearchReport& r) {
    std::ostringstream os;
    os << "degree,coeffs\n";
    for (const IvpCoeffs& w : r.witnesses) {
        os << w.degree << ",\"";
        for (size_t i = 0; i < w.coeffs.size(); ++i) {
            if (i) os << ' ';
            os << w.coeffs[i].str();
        }
        os << "\"\n";
    }
    return os.str();
}

}  // namespace ivpcap
