#include "nestad/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace nestad {
namespace {

std::string format_number(double v, int precision) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

nlohmann::json check_to_json(const CheckReport& check) {
    nlohmann::json j;
    j["ok"] = check.ok;
    j["value_reference"] = check.value_reference;
    j["value_delta"] = check.value_delta;
    nlohmann::json derivs = nlohmann::json::array();
    for (const DerivativeCheck& dc : check.derivatives) {
        derivs.push_back({{"var", dc.var},
                          {"ad", dc.ad},
                          {"symbolic", dc.symbolic},
                          {"finite_diff", dc.finite_diff},
                          {"symbolic_delta", dc.symbolic_delta},
                          {"fd_delta", dc.fd_delta},
                          {"ok", dc.ok}});
    }
    j["derivatives"] = std::move(derivs);
    nlohmann::json nested = nlohmann::json::array();
    for (const NestedCheck& nc : check.nested) {
        nested.push_back({{"fn", nc.fn},
                          {"var", nc.var},
                          {"nested_symbolic", nc.nested_symbolic},
                          {"nested_fd", nc.nested_fd},
                          {"composite_symbolic", nc.composite_symbolic},
                          {"composite_fd", nc.composite_fd},
                          {"nested_symbolic_delta", nc.nested_symbolic_delta},
                          {"composite_symbolic_delta", nc.composite_symbolic_delta},
                          {"composite_fd_delta", nc.composite_fd_delta},
                          {"ok", nc.ok}});
    }
    j["nested"] = std::move(nested);
    return j;
}

}  // namespace

std::string to_text(const EvalReport& report, int precision) {
    std::string out;
    out += "value = " + format_number(report.value, precision) + "\n";
    for (const auto& [var, der] : report.derivatives)
        out += "d/d" + var + " = " + format_number(der, precision) + "\n";
    for (const NestedDiagnostic& diag : report.nested) {
        out += "D(" + diag.fn + ") [d/d" + diag.var + " pass]:";
        out += " value = " + format_number(diag.value, precision);
        out += ", nested derivative = " + format_number(diag.nested_derivative, precision);
        out += ", composite derivative = " +
               format_number(diag.composite_derivative, precision);
        out += "\n";
    }
    if (report.check) {
        const CheckReport& check = *report.check;
        for (const DerivativeCheck& dc : check.derivatives) {
            out += "check d/d" + dc.var + ": symbolic delta = " +
                   format_number(dc.symbolic_delta, 3) + ", fd delta = " +
                   format_number(dc.fd_delta, 3) +
                   (dc.ok ? "" : "  [FAILED]") + "\n";
        }
        for (const NestedCheck& nc : check.nested) {
            out += "check D(" + nc.fn + ") [d/d" + nc.var + " pass]: " +
                   "nested delta = " + format_number(nc.nested_symbolic_delta, 3) +
                   ", composite delta = " +
                   format_number(nc.composite_symbolic_delta, 3) +
                   (nc.ok ? "" : "  [FAILED]") + "\n";
        }
        out += std::string("check: ") + (check.ok ? "PASS" : "FAIL") + "\n";
    }
    return out;
}

std::string to_json(const EvalReport& report) {
    nlohmann::json j;
    j["value"] = report.value;
    nlohmann::json derivs = nlohmann::json::object();
    for (const auto& [var, der] : report.derivatives) derivs[var] = der;
    j["derivatives"] = std::move(derivs);
    nlohmann::json nested = nlohmann::json::array();
    for (const NestedDiagnostic& diag : report.nested) {
        nested.push_back({{"fn", diag.fn},
                          {"var", diag.var},
                          {"value", diag.value},
                          {"nested_derivative", diag.nested_derivative},
                          {"composite_derivative", diag.composite_derivative}});
    }
    j["nested"] = std::move(nested);
    j["check"] = report.check ? check_to_json(*report.check) : nlohmann::json(nullptr);
    return j.dump();
}

}  // namespace nestad
