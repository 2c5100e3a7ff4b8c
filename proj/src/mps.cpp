#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "oos/errors.hpp"
#include "oos/numfmt.hpp"
#include "oos/solve.hpp"

namespace oos {

namespace {

// Classic fixed MPS field starts (0-based): 1, 4, 14, 24, 39.
void put_field(std::string& line, size_t col, std::string_view text) {
    if (line.size() < col) line.resize(col, ' ');
    line += text;
}

std::string field_line(std::string_view f1, std::string_view f2,
                       std::string_view f3 = {}, std::string_view f4 = {},
                       std::string_view f5 = {}, std::string_view f6 = {}) {
    std::string line;
    put_field(line, 1, f1);
    put_field(line, 4, f2);
    if (!f3.empty()) put_field(line, 14, f3);
    if (!f4.empty()) put_field(line, 24, f4);
    if (!f5.empty()) put_field(line, 39, f5);
    if (!f6.empty()) put_field(line, 49, f6);
    return line;
}

}  // namespace

void write_mps(const MilpModel& model, std::ostream& out) {
    out << "NAME          OOSMODEL\n";
    out << "OBJSENSE\n";
    out << (model.maximize ? "    MAXIMIZE\n" : "    MINIMIZE\n");
    out << "ROWS\n";
    out << field_line("N", "obj") << "\n";
    for (size_t r = 0; r < model.rows.size(); ++r) {
        const char* sense = model.rows[r].sense == RowSense::LE   ? "L"
                            : model.rows[r].sense == RowSense::GE ? "G"
                                                                  : "E";
        out << field_line(sense, model.row_name(static_cast<int>(r))) << "\n";
    }

    // Column-major entries: objective first, then rows ascending.
    std::vector<std::vector<std::pair<std::string, double>>> cols(
        model.vars.size());
    for (const auto& [var, coeff] : model.objective)
        cols[var].emplace_back("obj", coeff);
    for (size_t r = 0; r < model.rows.size(); ++r)
        for (const auto& [var, coeff] : model.entries[r])
            cols[var].emplace_back(model.row_name(static_cast<int>(r)), coeff);

    out << "COLUMNS\n";
    bool in_integer = false;
    int marker_count = 0;
    for (size_t v = 0; v < model.vars.size(); ++v) {
        if (model.vars[v].integer != in_integer) {
            char mname[16];
            std::snprintf(mname, sizeof(mname), "M%07d", marker_count++);
            out << field_line("", mname, "'MARKER'", "",
                              in_integer ? "'INTEND'" : "'INTORG'")
                << "\n";
            in_integer = model.vars[v].integer;
        }
        const std::string name = model.var_name(static_cast<int>(v));
        for (const auto& [row, coeff] : cols[v])
            out << field_line("", name, row, format_mps_value(coeff)) << "\n";
        if (cols[v].empty())  // keep the column present for positional order
            out << field_line("", name, "obj", "0") << "\n";
    }
    if (in_integer) {
        char mname[16];
        std::snprintf(mname, sizeof(mname), "M%07d", marker_count++);
        out << field_line("", mname, "'MARKER'", "", "'INTEND'") << "\n";
    }

    out << "RHS\n";
    for (size_t r = 0; r < model.rows.size(); ++r)
        if (model.rows[r].rhs != 0.0)
            out << field_line("", "RHS", model.row_name(static_cast<int>(r)),
                              format_mps_value(model.rows[r].rhs))
                << "\n";

    out << "BOUNDS\n";
    for (size_t v = 0; v < model.vars.size(); ++v) {
        const VarInfo& info = model.vars[v];
        const std::string name = model.var_name(static_cast<int>(v));
        if (info.lb == info.ub) {
            out << field_line("FX", "BND", name, format_mps_value(info.lb))
                << "\n";
            continue;
        }
        if (info.integer) {
            if (info.lb == 0.0 && info.ub == 1.0) {
                out << field_line("BV", "BND", name) << "\n";
                continue;
            }
            if (info.lb != 0.0)
                out << field_line("LI", "BND", name, format_mps_value(info.lb))
                    << "\n";
            if (std::isfinite(info.ub))
                out << field_line("UI", "BND", name, format_mps_value(info.ub))
                    << "\n";
            else
                out << field_line("PL", "BND", name) << "\n";
        } else {
            if (info.lb != 0.0)
                out << field_line("LO", "BND", name, format_mps_value(info.lb))
                    << "\n";
            if (std::isfinite(info.ub))
                out << field_line("UP", "BND", name, format_mps_value(info.ub))
                    << "\n";
        }
    }
    out << "ENDATA\n";
}

std::string write_mps_string(const MilpModel& model) {
    std::ostringstream os;
    write_mps(model, os);
    return os.str();
}

MilpModel read_mps(std::istream& in) {
    MilpModel model;
    std::map<std::string, int> row_ids;
    std::map<std::string, int> var_ids;
    std::string line, section;
    bool integer_mode = false;

    auto tokens_of = [](const std::string& s) {
        std::vector<std::string> toks;
        std::istringstream is(s);
        std::string t;
        while (is >> t) toks.push_back(t);
        return toks;
    };
    auto var_of = [&](const std::string& name, bool create) -> int {
        auto it = var_ids.find(name);
        if (it != var_ids.end()) return it->second;
        if (!create) throw ProtocolError("MPS references unknown column " + name);
        VarInfo v;
        v.kind = VarKind::FlowXOut;  // structural read; kinds are not encoded
        v.integer = integer_mode;
        int id = static_cast<int>(model.vars.size());
        model.vars.push_back(v);
        var_ids[name] = id;
        return id;
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '*') continue;
        if (line[0] != ' ') {
            auto toks = tokens_of(line);
            section = toks.empty() ? "" : toks[0];
            if (section == "ENDATA") break;
            continue;
        }
        auto toks = tokens_of(line);
        if (toks.empty()) continue;

        if (section == "OBJSENSE") {
            model.maximize = toks[0] == "MAXIMIZE" || toks[0] == "MAX";
        } else if (section == "ROWS") {
            if (toks.size() != 2) throw ProtocolError("bad ROWS line: " + line);
            if (toks[0] == "N") continue;  // objective row
            RowSense sense = toks[0] == "L"   ? RowSense::LE
                             : toks[0] == "G" ? RowSense::GE
                                              : RowSense::EQ;
            if (toks[0] != "L" && toks[0] != "G" && toks[0] != "E")
                throw ProtocolError("bad row sense: " + line);
            row_ids[toks[1]] = static_cast<int>(model.rows.size());
            model.rows.push_back(RowInfo{sense, 0.0, toks[1]});
            model.entries.emplace_back();
        } else if (section == "COLUMNS") {
            if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                integer_mode = toks[2] == "'INTORG'";
                continue;
            }
            if (toks.size() < 3 || toks.size() % 2 == 0)
                throw ProtocolError("bad COLUMNS line: " + line);
            int var = var_of(toks[0], true);
            for (size_t i = 1; i + 1 < toks.size(); i += 2) {
                double coeff = std::strtod(toks[i + 1].c_str(), nullptr);
                if (toks[i] == "obj") {
                    if (coeff != 0.0) model.objective.emplace_back(var, coeff);
                } else {
                    auto rit = row_ids.find(toks[i]);
                    if (rit == row_ids.end())
                        throw ProtocolError("MPS references unknown row " +
                                            toks[i]);
                    model.entries[rit->second].emplace_back(var, coeff);
                }
            }
        } else if (section == "RHS") {
            for (size_t i = 1; i + 1 < toks.size(); i += 2) {
                auto rit = row_ids.find(toks[i]);
                if (rit == row_ids.end())
                    throw ProtocolError("RHS references unknown row " + toks[i]);
                model.rows[rit->second].rhs =
                    std::strtod(toks[i + 1].c_str(), nullptr);
            }
        } else if (section == "RANGES") {
            throw ProtocolError("RANGES section is not supported");
        } else if (section == "BOUNDS") {
            if (toks.size() < 3) throw ProtocolError("bad BOUNDS line: " + line);
            const std::string& type = toks[0];
            VarInfo& v = model.vars[var_of(toks[2], false)];
            double val = toks.size() > 3 ? std::strtod(toks[3].c_str(), nullptr)
                                         : 0.0;
            if (type == "UP" || type == "UI") v.ub = val;
            else if (type == "LO" || type == "LI") v.lb = val;
            else if (type == "FX") v.lb = v.ub = val;
            else if (type == "BV") { v.lb = 0.0; v.ub = 1.0; v.integer = true; }
            else if (type == "PL") v.ub = std::numeric_limits<double>::infinity();
            else if (type == "MI") v.lb = -std::numeric_limits<double>::infinity();
            else throw ProtocolError("unsupported bound type " + type);
        }
    }
    return model;
}

}  // namespace oos
