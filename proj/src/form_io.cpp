#include "catflat/form_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace catflat {

namespace {

using nlohmann::ordered_json;

} // namespace

QForm read_form(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        fail(errc::invalid_argument, std::string("form file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("nvars") || !j.contains("degree") || !j.contains("terms"))
        fail(errc::invalid_argument, "form file needs nvars, degree and terms");
    const unsigned nvars = j.at("nvars").get<unsigned>();
    const unsigned degree = j.at("degree").get<unsigned>();
    Rationals qq;
    QForm f(qq, nvars, degree);
    for (const auto& t : j.at("terms")) {
        if (!t.contains("exponents") || !t.contains("coeff"))
            fail(errc::invalid_argument, "term needs exponents and coeff");
        ExponentVec e = t.at("exponents").get<ExponentVec>();
        f.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
    }
    return f;
}

QForm read_form_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::invalid_argument, "cannot open form file: " + path);
    return read_form(in);
}

std::string write_form(const QForm& f) {
    ordered_json j;
    j["nvars"] = f.nvars();
    j["degree"] = f.degree();
    j["terms"] = ordered_json::array();
    for (const auto& [e, c] : f.terms()) {
        ordered_json t;
        t["exponents"] = e;
        t["coeff"] = c.get_str();
        j["terms"].push_back(std::move(t));
    }
    return j.dump(2) + "\n";
}

void write_form_file(const std::string& path, const QForm& f) {
    std::ofstream out(path);
    if (!out) fail(errc::invalid_argument, "cannot open form file for writing: " + path);
    out << write_form(f);
}

} // namespace catflat
