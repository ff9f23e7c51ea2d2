#pragma once

// Fixed-format MPS export and import. Names longer than eight characters (or
// containing blanks) are replaced by generated ones; the original names are kept
// in comment lines so a parse restores them.

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/milp/model.hpp"

namespace ptl::milp {

class MpsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool mps_name_ok(const std::string& s) {
    if (s.empty() || s.size() > 8) return false;
    for (char c : s)
        if (c == ' ' || c == '$' || c == '*' || !std::isprint(static_cast<unsigned char>(c))) return false;
    return true;
}

// Shortest rendering that fits the 12-character numeric field.
inline std::string mps_number(double v) {
    for (int prec = 17; prec >= 1; --prec) {
        std::string s = fmt::format("{:.{}g}", v, prec);
        if (s.size() <= 12) return s;
    }
    throw MpsError(fmt::format("value {} cannot be written in a 12-character MPS field", v));
}

inline std::string mps_line(const char* f1, const std::string& f2, const std::string& f3, double v3) {
    return fmt::format(" {:<2} {:<8}  {:<8}  {:>12}\n", f1, f2, f3, mps_number(v3));
}

}  // namespace detail

inline void write_mps(const Model& model, std::ostream& os) {
    model.validate();
    const auto& vars = model.variables();
    const auto& rows = model.constraints();
    std::vector<std::string> cname(vars.size()), rname(rows.size());
    for (std::size_t j = 0; j < vars.size(); ++j)
        cname[j] = detail::mps_name_ok(vars[j].name) ? vars[j].name : fmt::format("X{:07d}", j);
    for (std::size_t i = 0; i < rows.size(); ++i)
        rname[i] = detail::mps_name_ok(rows[i].name) ? rows[i].name : fmt::format("R{:07d}", i);
    // Guard against a short user name colliding with a generated one.
    {
        std::map<std::string, int> seen;
        for (auto& n : cname)
            if (seen[n]++) throw MpsError("column name collision on '" + n + "'");
        seen.clear();
        seen["OBJ"] = 1;
        for (auto& n : rname)
            if (seen[n]++) throw MpsError("row name collision on '" + n + "'");
    }

    os << "* written by ptl\n";
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (cname[j] != vars[j].name) os << "*@C " << cname[j] << ' ' << vars[j].name << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rname[i] != rows[i].name) os << "*@R " << rname[i] << ' ' << rows[i].name << '\n';
    os << "NAME          PTLMODEL\n";
    if (model.objective_sense() == ObjectiveSense::maximize) os << "OBJSENSE\n    MAX\n";
    os << "ROWS\n N  OBJ\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const char* s = rows[i].sense == Sense::less_equal ? "L" : rows[i].sense == Sense::greater_equal ? "G" : "E";
        os << fmt::format(" {:<2} {}\n", s, rname[i]);
    }
    // Column-wise coefficient lists.
    std::vector<std::vector<std::pair<std::size_t, double>>> cols(vars.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms) cols[t.var].emplace_back(i, t.coef);
    std::vector<double> obj(vars.size(), 0.0);
    for (const auto& t : model.objective().terms()) obj[t.var] = t.coef;

    os << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const bool is_int = vars[j].type == VarType::binary;
        if (is_int != in_int) {
            os << fmt::format("    MARKER{:<4}  'MARKER'                 '{}'\n", marker++,
                              is_int ? "INTORG" : "INTEND");
            in_int = is_int;
        }
        if (obj[j] != 0.0) os << detail::mps_line("", cname[j], "OBJ", obj[j]);
        for (const auto& [i, a] : cols[j]) os << detail::mps_line("", cname[j], rname[i], a);
        if (obj[j] == 0.0 && cols[j].empty()) os << detail::mps_line("", cname[j], "OBJ", 0.0);
    }
    if (in_int) os << fmt::format("    MARKER{:<4}  'MARKER'                 'INTEND'\n", marker++);

    os << "RHS\n";
    if (model.objective().constant() != 0.0) os << detail::mps_line("", "RHS", "OBJ", -model.objective().constant());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].rhs != 0.0) os << detail::mps_line("", "RHS", rname[i], rows[i].rhs);

    os << "BOUNDS\n";
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const auto& v = vars[j];
        if (v.type == VarType::binary && v.lower == 0.0 && v.upper == 1.0) {
            os << fmt::format(" BV BND       {}\n", cname[j]);
            continue;
        }
        if (v.lower == v.upper) {
            os << detail::mps_line("FX", "BND", cname[j], v.lower);
            continue;
        }
        if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
            os << fmt::format(" FR BND       {}\n", cname[j]);
            continue;
        }
        if (!std::isfinite(v.lower)) os << fmt::format(" MI BND       {}\n", cname[j]);
        else if (v.lower != 0.0) os << detail::mps_line("LO", "BND", cname[j], v.lower);
        if (std::isfinite(v.upper)) os << detail::mps_line("UP", "BND", cname[j], v.upper);
    }
    os << "ENDATA\n";
}

inline void write_mps(const Model& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw MpsError("cannot open '" + path + "' for writing");
    write_mps(model, os);
    if (!os) throw MpsError("write failed for '" + path + "'");
}

// Reads the subset of MPS produced by write_mps (whitespace-separated fields).
inline Model parse_mps(std::istream& is) {
    enum class Sec { none, rows, columns, rhs, ranges, bounds, objsense } sec = Sec::none;
    std::map<std::string, std::string> cmap, rmap;
    struct RowDef { std::string name; Sense sense; std::vector<std::pair<std::string, double>> terms; double rhs = 0.0; };
    struct ColDef { std::string name; bool integer = false; double lo = 0.0, hi = kInf; bool bv = false; bool hi_set = false; };
    std::vector<RowDef> rows;
    std::map<std::string, std::size_t> row_of;
    std::vector<ColDef> cols;
    std::map<std::string, std::size_t> col_of;
    std::vector<std::pair<std::string, double>> obj;
    double obj_const = 0.0;
    bool maximize = false;
    bool in_int = false;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) { throw MpsError(fmt::format("line {}: {}", lineno, msg)); };
    auto num = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) fail("bad number '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            fail("bad number '" + s + "'");
        }
        return 0.0;
    };
    auto col_index = [&](const std::string& n) {
        auto it = col_of.find(n);
        if (it == col_of.end()) {
            col_of[n] = cols.size();
            cols.push_back({n, in_int});
            return cols.size() - 1;
        }
        return it->second;
    };

    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '*') {
            std::istringstream ls(line.substr(1));
            std::string tag, a, b;
            ls >> tag >> a;
            std::getline(ls >> std::ws, b);
            if (tag == "@C") cmap[a] = b;
            if (tag == "@R") rmap[a] = b;
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> f;
        for (std::string tok; ls >> tok;) f.push_back(tok);
        if (f.empty()) continue;
        if (line[0] != ' ') {
            const auto& h = f[0];
            if (h == "NAME") sec = Sec::none;
            else if (h == "OBJSENSE") {
                sec = Sec::objsense;
                if (f.size() > 1) maximize = f[1] == "MAX" || f[1] == "MAXIMIZE";
            } else if (h == "ROWS") sec = Sec::rows;
            else if (h == "COLUMNS") sec = Sec::columns;
            else if (h == "RHS") sec = Sec::rhs;
            else if (h == "RANGES") sec = Sec::ranges;
            else if (h == "BOUNDS") sec = Sec::bounds;
            else if (h == "ENDATA") break;
            else fail("unknown section '" + h + "'");
            continue;
        }
        switch (sec) {
        case Sec::objsense: maximize = f[0] == "MAX" || f[0] == "MAXIMIZE"; break;
        case Sec::rows: {
            if (f.size() != 2) fail("ROWS entry needs 2 fields");
            if (f[0] == "N") {
                row_of[f[1]] = static_cast<std::size_t>(-1);
                break;
            }
            Sense s = f[0] == "L" ? Sense::less_equal : f[0] == "G" ? Sense::greater_equal : Sense::equal;
            if (f[0] != "L" && f[0] != "G" && f[0] != "E") fail("bad row type '" + f[0] + "'");
            row_of[f[1]] = rows.size();
            rows.push_back({f[1], s, {}, 0.0});
            break;
        }
        case Sec::columns: {
            if (f.size() >= 3 && f[1] == "'MARKER'") {
                in_int = f[2] == "'INTORG'";
                break;
            }
            if (f.size() != 3 && f.size() != 5) fail("COLUMNS entry needs 3 or 5 fields");
            const std::size_t c = col_index(f[0]);
            for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
                auto it = row_of.find(f[k]);
                if (it == row_of.end()) fail("unknown row '" + f[k] + "'");
                const double v = num(f[k + 1]);
                if (it->second == static_cast<std::size_t>(-1)) obj.emplace_back(cols[c].name, v);
                else rows[it->second].terms.emplace_back(cols[c].name, v);
            }
            break;
        }
        case Sec::rhs: {
            if (f.size() != 3 && f.size() != 5) fail("RHS entry needs 3 or 5 fields");
            for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
                auto it = row_of.find(f[k]);
                if (it == row_of.end()) fail("unknown row '" + f[k] + "'");
                if (it->second == static_cast<std::size_t>(-1)) obj_const = -num(f[k + 1]);
                else rows[it->second].rhs = num(f[k + 1]);
            }
            break;
        }
        case Sec::ranges: fail("RANGES are not supported"); break;
        case Sec::bounds: {
            if (f.size() < 3) fail("BOUNDS entry too short");
            auto it = col_of.find(f[2]);
            if (it == col_of.end()) fail("unknown column '" + f[2] + "'");
            auto& c = cols[it->second];
            const auto& t = f[0];
            if (t == "BV") {
                c.bv = true;
                c.lo = 0.0;
                c.hi = 1.0;
            } else if (t == "FR") {
                c.lo = -kInf;
                c.hi = kInf;
            } else if (t == "MI") c.lo = -kInf;
            else if (t == "PL") c.hi = kInf;
            else {
                if (f.size() < 4) fail("bound needs a value");
                const double v = num(f[3]);
                if (t == "UP") {
                    c.hi = v;
                    c.hi_set = true;
                } else if (t == "LO") c.lo = v;
                else if (t == "FX") c.lo = c.hi = v;
                else fail("unknown bound type '" + t + "'");
            }
            break;
        }
        case Sec::none: fail("data outside a section"); break;
        }
    }

    auto orig = [](const std::map<std::string, std::string>& m, const std::string& n) {
        auto it = m.find(n);
        return it == m.end() ? n : it->second;
    };
    Model model;
    std::map<std::string, VarId> ids;
    for (const auto& c : cols) {
        const bool binary = c.bv || (c.integer && c.lo >= 0.0 && c.hi <= 1.0 && (c.hi_set || c.bv));
        const double hi = (c.integer && !c.hi_set && !c.bv) ? 1.0 : c.hi;
        ids[c.name] = model.add_variable(orig(cmap, c.name), c.lo, hi,
                                         (binary || c.integer) ? VarType::binary : VarType::continuous);
    }
    for (const auto& r : rows) {
        LinearExpr e;
        for (const auto& [n, v] : r.terms) e.add(ids.at(n), v);
        model.add_constraint(orig(rmap, r.name), e, r.sense, r.rhs);
    }
    LinearExpr oe(obj_const);
    for (const auto& [n, v] : obj) oe.add(ids.at(n), v);
    model.set_objective(maximize ? ObjectiveSense::maximize : ObjectiveSense::minimize, oe);
    return model;
}

inline Model parse_mps(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw MpsError("cannot open '" + path + "'");
    return parse_mps(is);
}

}  // namespace ptl::milp
