#include "dyadic/report.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace dyadic {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(int64_t n) const { return std::to_string(n); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

ordered_json cell_to_json(const Cell& c) {
    struct Visitor {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(bool b) const { return b; }
        ordered_json operator()(int64_t n) const { return n; }
        ordered_json operator()(double v) const { return v; }
        ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

} // namespace

std::string to_csv(const ExperimentReport& rep) {
    std::string out;
    for (size_t i = 0; i < rep.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(rep.columns[i]);
    }
    out += '\n';
    for (const auto& row : rep.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json_string(const ExperimentReport& rep, int indent) {
    ordered_json j;
    j["title"] = rep.title;
    j["columns"] = rep.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json r = ordered_json::array();
        for (const auto& c : row) r.push_back(cell_to_json(c));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    ordered_json summary = ordered_json::object();
    for (const auto& [key, c] : rep.summary) summary[key] = cell_to_json(c);
    j["summary"] = std::move(summary);
    j["verdict"] = rep.verdict;
    return j.dump(indent);
}

std::string to_json_string(const HaarSeries& f, int indent) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& [I, c] : f.coefficients()) {
        ordered_json e;
        e["scale"] = I.scale;
        e["index"] = I.index;
        e["value"] = c;
        coeffs.push_back(std::move(e));
    }
    ordered_json j;
    j["coefficients"] = std::move(coeffs);
    return j.dump(indent);
}

std::string to_json_string(const StepFunction& g, int indent) {
    ordered_json pieces = ordered_json::array();
    for (size_t i = 0; i < g.piece_count(); ++i) {
        ordered_json e;
        e["index"] = g.indices()[i];
        e["value"] = g.values()[i];
        pieces.push_back(std::move(e));
    }
    ordered_json j;
    j["base_scale"] = g.base_scale();
    j["pieces"] = std::move(pieces);
    return j.dump(indent);
}

std::string to_json_string(const NormReport& rep, int indent) {
    ordered_json j;
    j["s"] = rep.s;
    j["l2"] = rep.l2;
    j["hs_seminorm"] = rep.hs_seminorm;
    j["hs_norm"] = rep.hs_norm;
    j["linf"] = rep.linf;
    if (rep.lq)
        j["lq"] = *rep.lq;
    else
        j["lq"] = nullptr;
    j["bmo"] = rep.bmo;
    ordered_json trunc;
    trunc["base_scale"] = rep.base_scale;
    trunc["piece_count"] = rep.piece_count;
    trunc["tail_validation_depth"] = rep.tail_validation_depth;
    trunc["tail_closed_form"] = rep.tail_closed_form;
    j["truncation"] = std::move(trunc);
    return j.dump(indent);
}

std::string norm_report_csv(const NormReport& rep) {
    std::string out =
        "s,l2,hs_seminorm,hs_norm,linf,lq,bmo,base_scale,piece_count,tail_closed_form\n";
    out += format_double(rep.s) + ',' + format_double(rep.l2) + ',' +
           format_double(rep.hs_seminorm) + ',' + format_double(rep.hs_norm) + ',' +
           format_double(rep.linf) + ',' + (rep.lq ? format_double(*rep.lq) : std::string{}) +
           ',' + format_double(rep.bmo) + ',' + std::to_string(rep.base_scale) + ',' +
           std::to_string(rep.piece_count) + ',' + format_double(rep.tail_closed_form) + '\n';
    return out;
}

HaarSeries haar_series_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coefficients"))
        throw std::runtime_error("invalid series JSON: missing field 'coefficients'");
    const auto& coeffs = j["coefficients"];
    if (!coeffs.is_array())
        throw std::runtime_error("invalid series JSON: 'coefficients' must be an array");
    HaarSeries f;
    for (const auto& e : coeffs) {
        if (!e.is_object() || !e.contains("scale") || !e.contains("index") ||
            !e.contains("value"))
            throw std::runtime_error(
                "invalid series JSON: each coefficient needs 'scale', 'index', 'value'");
        if (!e["scale"].is_number_integer() || !e["index"].is_number_integer() ||
            !e["value"].is_number())
            throw std::runtime_error(
                "invalid series JSON: 'scale'/'index' must be integers, 'value' numeric");
        const int64_t scale = e["scale"].get<int64_t>();
        if (scale < K_MIN || scale > K_MAX)
            throw std::runtime_error("invalid series JSON: 'scale' outside the clamp");
        DyadicInterval I{int32_t(scale), e["index"].get<int64_t>()};
        check_interval(I);
        f.add_coeff(I, e["value"].get<double>());
    }
    return f;
}

} // namespace dyadic
