#pragma once

// Per-voltage plant samples: stream parameters, feed/product flows and system power.

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/plant/reference_data.hpp"

namespace ptl::plant {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class ParseError : public DatasetError {
public:
    using DatasetError::DatasetError;
};
class ValidationError : public DatasetError {
public:
    using DatasetError::DatasetError;
};
class VoltageOutOfRange : public DatasetError {
public:
    using DatasetError::DatasetError;
};

struct StreamState {
    double T_in = 0.0;
    double T_out = 0.0;
    double F = 0.0;
    double duty() const { return F * std::abs(T_in - T_out); }
    friend bool operator==(const StreamState&, const StreamState&) = default;
};

struct PlantSample {
    double U_cell = 0.0;
    std::vector<StreamState> streams;  // same order as PlantDataset::streams
    double m_CO2 = 0.0, m_H2O = 0.0, m_air = 0.0;  // kg/h
    std::array<double, 3> m_prod{};               // kg/h, wax/diesel/naphtha
    double P_sys = 0.0;                            // kW
    double q_offgas = 0.0;                         // kW available to the combustion streams
    friend bool operator==(const PlantSample&, const PlantSample&) = default;
};

enum class Provenance { reference_calibrated, user_supplied };

inline std::string_view to_string(Provenance p) {
    return p == Provenance::reference_calibrated ? "reference-calibrated" : "user-supplied";
}

struct PlantDataset {
    std::vector<PlantSample> samples;
    std::array<ProductSpec, 3> products = reference_products();
    std::vector<StreamSpec> streams;
    Provenance provenance = Provenance::user_supplied;

    std::size_t stream_index(std::string_view id) const {
        for (std::size_t i = 0; i < streams.size(); ++i)
            if (streams[i].id == id) return i;
        throw DatasetError(fmt::format("unknown stream '{}'", id));
    }
    bool has_stream(std::string_view id) const {
        for (const auto& s : streams)
            if (s.id == id) return true;
        return false;
    }
    std::vector<double> voltages() const {
        std::vector<double> v;
        for (const auto& s : samples) v.push_back(s.U_cell);
        return v;
    }
};

inline double product_rate(const PlantSample& s) { return s.m_prod[0] + s.m_prod[1] + s.m_prod[2]; }

// Chemical enthalpy flow of the products [kW].
inline double enthalpy_flow(const PlantSample& s, const std::array<ProductSpec, 3>& p) {
    double h = 0.0;
    for (std::size_t v = 0; v < 3; ++v) h += s.m_prod[v] * p[v].h_MJ_per_kg;
    return h / 3.6;
}

// Mass-weighted product enthalpy [MJ/kg].
inline double mixture_enthalpy(const PlantSample& s, const std::array<ProductSpec, 3>& p) {
    return enthalpy_flow(s, p) * 3.6 / product_rate(s);
}

// ---------------------------------------------------------------------------------------------
// Interpolation

// Hat-function weights of U on the sample grid; two adjacent entries are nonzero at most.
inline std::vector<double> voltage_weights(const std::vector<double>& grid, double U) {
    const double slack = 1e-12;
    if (grid.size() < 2) throw DatasetError("voltage grid needs two samples");
    if (!(U >= grid.front() - slack && U <= grid.back() + slack))
        throw VoltageOutOfRange(fmt::format("cell voltage {} V outside [{}, {}] V", U, grid.front(), grid.back()));
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (U == grid[k]) {
            w[k] = 1.0;
            return w;
        }
    const std::size_t s = pwl::locate_segment(grid, std::clamp(U, grid.front(), grid.back()));
    const double t = std::clamp((U - grid[s]) / (grid[s + 1] - grid[s]), 0.0, 1.0);
    w[s] = 1.0 - t;
    w[s + 1] = t;
    return w;
}

inline PlantSample evaluate_at_voltage(const PlantDataset& ds, double U) {
    const auto w = voltage_weights(ds.voltages(), U);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] == 1.0) return ds.samples[k];
    PlantSample out;
    out.U_cell = U;
    out.streams.assign(ds.streams.size(), {});
    out.m_prod = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0.0) continue;
        const auto& s = ds.samples[k];
        for (std::size_t i = 0; i < s.streams.size(); ++i) {
            out.streams[i].T_in += w[k] * s.streams[i].T_in;
            out.streams[i].T_out += w[k] * s.streams[i].T_out;
            out.streams[i].F += w[k] * s.streams[i].F;
        }
        out.m_CO2 += w[k] * s.m_CO2;
        out.m_H2O += w[k] * s.m_H2O;
        out.m_air += w[k] * s.m_air;
        for (std::size_t v = 0; v < 3; ++v) out.m_prod[v] += w[k] * s.m_prod[v];
        out.P_sys += w[k] * s.P_sys;
        out.q_offgas += w[k] * s.q_offgas;
    }
    return out;
}

// Stream duty as the optimizer sees it: sample duties interpolated in U. It equals
// F(U)·|T_in(U) - T_out(U)| at the samples and differs between them by a term quadratic
// in the interpolation weight.
inline double interpolated_duty(const PlantDataset& ds, std::size_t stream, double U) {
    const auto w = voltage_weights(ds.voltages(), U);
    double d = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) d += w[k] * ds.samples[k].streams[stream].duty();
    return d;
}

// ---------------------------------------------------------------------------------------------
// Validation

namespace detail {

inline bool within(double v, const Interval& iv) {
    const double tol = 1e-9 * std::max(1.0, std::abs(iv.lo) + std::abs(iv.hi));
    return v >= iv.lo - tol && v <= iv.hi + tol;
}

inline std::string describe(const Interval& iv) {
    return iv.lo == iv.hi ? fmt::format("{}", iv.lo) : fmt::format("[{}, {}]", iv.lo, iv.hi);
}

}  // namespace detail

// Checks every dataset invariant. `row_of` maps (sample, stream) to a source line for messages;
// stream == npos addresses the flow row.
template <class RowOf>
void validate(const PlantDataset& ds, RowOf&& row_of) {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    auto fail = [&](std::size_t k, std::size_t i, std::string_view field, const std::string& what) {
        throw ValidationError(fmt::format("{}: field {}: {}", row_of(k, i), field, what));
    };
    if (ds.samples.size() != kSampleCount)
        throw ValidationError(fmt::format("dataset has {} voltage samples, expected {}", ds.samples.size(), kSampleCount));
    const auto grid = reference_voltages();
    for (std::size_t k = 0; k < kSampleCount; ++k)
        if (std::abs(ds.samples[k].U_cell - grid[k]) > 1e-9)
            fail(k, npos, "U_cell", fmt::format("voltage {} V, expected {} V", ds.samples[k].U_cell, grid[k]));
    if (ds.streams.empty()) throw ValidationError("dataset has no streams");
    for (const auto& p : ds.products)
        if (!(p.h_MJ_per_kg > 40.0 && p.h_MJ_per_kg < 50.0))
            throw ValidationError(fmt::format("product {} enthalpy {} MJ/kg outside (40, 50)", p.name, p.h_MJ_per_kg));

    for (std::size_t k = 0; k < kSampleCount; ++k) {
        const auto& s = ds.samples[k];
        if (s.streams.size() != ds.streams.size())
            fail(k, npos, "stream_id", fmt::format("{} streams, expected {}", s.streams.size(), ds.streams.size()));
        for (std::size_t i = 0; i < ds.streams.size(); ++i) {
            const auto& spec = ds.streams[i];
            const auto& st = s.streams[i];
            if (!detail::within(st.T_in, spec.T_in))
                fail(k, i, "T_in", fmt::format("{} outside {}", st.T_in, detail::describe(spec.T_in)));
            if (!detail::within(st.T_out, spec.T_out))
                fail(k, i, "T_out", fmt::format("{} outside {}", st.T_out, detail::describe(spec.T_out)));
            if (!detail::within(st.F, spec.F))
                fail(k, i, "F", fmt::format("{} outside {}", st.F, detail::describe(spec.F)));
            if (spec.is_hot_side() && st.T_in < st.T_out)
                fail(k, i, "T_out", fmt::format("hot stream with T_in {} < T_out {}", st.T_in, st.T_out));
            if (!spec.is_hot_side() && st.T_in > st.T_out)
                fail(k, i, "T_out", fmt::format("cold stream with T_in {} > T_out {}", st.T_in, st.T_out));
        }
        const std::array<std::pair<const char*, double>, 7> positive{{{"m_CO2", s.m_CO2},
                                                                       {"m_H2O", s.m_H2O},
                                                                       {"m_air", s.m_air},
                                                                       {"m_wax", s.m_prod[0]},
                                                                       {"m_diesel", s.m_prod[1]},
                                                                       {"m_naphtha", s.m_prod[2]},
                                                                       {"P_sys", s.P_sys}}};
        for (const auto& [name, v] : positive)
            if (!(v > 0.0) || !std::isfinite(v)) fail(k, npos, name, fmt::format("{} is not strictly positive", v));
        if (!(s.q_offgas >= 0.0)) fail(k, npos, "q_offgas", fmt::format("{} is negative", s.q_offgas));
        const double h = enthalpy_flow(s, ds.products);
        if (!(h < s.P_sys))
            fail(k, npos, "P_sys", fmt::format("product enthalpy flow {:.6g} kW exceeds system power {:.6g} kW", h, s.P_sys));
    }
}

inline void validate(const PlantDataset& ds) {
    validate(ds, [&](std::size_t k, std::size_t i) {
        const double U = k < ds.samples.size() ? ds.samples[k].U_cell : 0.0;
        if (i == static_cast<std::size_t>(-1)) return fmt::format("flow row U_cell={}", U);
        return fmt::format("stream row U_cell={} {}", U, ds.streams[i].id);
    });
}

// ---------------------------------------------------------------------------------------------
// CSV

inline void write_dataset(const PlantDataset& ds, std::ostream& os) {
    os << "# plant dataset\n";
    os << "# provenance: " << to_string(ds.provenance) << "\n";
    os << "# orientation: value at " << ds.samples.front().U_cell << " V -> value at " << ds.samples.back().U_cell
       << " V\n";
    for (std::size_t i = 0; i < ds.streams.size(); ++i) {
        const auto& a = ds.samples.front().streams[i];
        const auto& b = ds.samples.back().streams[i];
        os << fmt::format("#   {}: T_in {} -> {}, T_out {} -> {}, F {} -> {}\n", ds.streams[i].id, a.T_in, b.T_in,
                          a.T_out, b.T_out, a.F, b.F);
    }
    os << "[streams]\nU_cell,stream_id,T_in,T_out,F\n";
    for (const auto& s : ds.samples)
        for (std::size_t i = 0; i < ds.streams.size(); ++i)
            os << fmt::format("{},{},{},{},{}\n", s.U_cell, ds.streams[i].id, s.streams[i].T_in, s.streams[i].T_out,
                              s.streams[i].F);
    os << "[flows]\nU_cell,m_CO2,m_H2O,m_air,m_wax,m_diesel,m_naphtha,P_sys,q_offgas\n";
    for (const auto& s : ds.samples)
        os << fmt::format("{},{},{},{},{},{},{},{},{}\n", s.U_cell, s.m_CO2, s.m_H2O, s.m_air, s.m_prod[0], s.m_prod[1],
                          s.m_prod[2], s.P_sys, s.q_offgas);
}

inline void write_dataset(const PlantDataset& ds, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error(fmt::format("cannot write dataset {}", path.string()));
    write_dataset(ds, os);
    if (!os) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) {
        const auto a = cur.find_first_not_of(" \t\r");
        const auto b = cur.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? std::string{} : cur.substr(a, b - a + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_number(const std::string& s, std::size_t line, std::string_view field) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || !std::isfinite(v))
        throw ParseError(fmt::format("line {}: field {}: cannot parse '{}' as a number", line, field, s));
    return v;
}

}  // namespace detail

inline PlantDataset load_dataset(std::istream& is, const std::string& source = "dataset") {
    enum class Block { none, streams, flows } block = Block::none;
    PlantDataset ds;
    struct Row {
        std::size_t line;
        double U;
        std::string id;
        StreamState st;
    };
    std::vector<Row> stream_rows;
    std::vector<std::pair<std::size_t, PlantSample>> flow_rows;
    std::string line;
    std::size_t n = 0;
    bool expect_header = false;
    const std::vector<std::string> stream_header{"U_cell", "stream_id", "T_in", "T_out", "F"};
    const std::vector<std::string> flow_header{"U_cell", "m_CO2", "m_H2O", "m_air", "m_wax",
                                               "m_diesel", "m_naphtha", "P_sys", "q_offgas"};
    while (std::getline(is, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# provenance:", 0) == 0)
                ds.provenance = line.find("reference-calibrated") != std::string::npos ? Provenance::reference_calibrated
                                                                                          : Provenance::user_supplied;
            continue;
        }
        if (line == "[streams]" || line == "[flows]") {
            block = line == "[streams]" ? Block::streams : Block::flows;
            expect_header = true;
            continue;
        }
        const auto f = detail::split_csv(line);
        if (block == Block::none) throw ParseError(fmt::format("{}:{}: data outside a [streams]/[flows] block", source, n));
        const auto& header = block == Block::streams ? stream_header : flow_header;
        if (expect_header) {
            if (f != header) throw ParseError(fmt::format("{}:{}: unexpected header '{}'", source, n, line));
            expect_header = false;
            continue;
        }
        if (f.size() != header.size())
            throw ParseError(fmt::format("{}:{}: expected {} fields, got {}", source, n, header.size(), f.size()));
        if (block == Block::streams) {
            Row r{n, detail::parse_number(f[0], n, "U_cell"), f[1], {}};
            r.st.T_in = detail::parse_number(f[2], n, "T_in");
            r.st.T_out = detail::parse_number(f[3], n, "T_out");
            r.st.F = detail::parse_number(f[4], n, "F");
            stream_rows.push_back(std::move(r));
        } else {
            PlantSample s;
            s.U_cell = detail::parse_number(f[0], n, "U_cell");
            s.m_CO2 = detail::parse_number(f[1], n, "m_CO2");
            s.m_H2O = detail::parse_number(f[2], n, "m_H2O");
            s.m_air = detail::parse_number(f[3], n, "m_air");
            for (std::size_t v = 0; v < 3; ++v) s.m_prod[v] = detail::parse_number(f[4 + v], n, header[4 + v]);
            s.P_sys = detail::parse_number(f[7], n, "P_sys");
            s.q_offgas = detail::parse_number(f[8], n, "q_offgas");
            flow_rows.emplace_back(n, s);
        }
    }

    // Stream list in first-appearance order; every stream must be a published one.
    for (const auto& r : stream_rows) {
        if (ds.has_stream(r.id)) continue;
        auto spec = find_reference_stream(r.id);
        if (!spec) throw ValidationError(fmt::format("{}:{}: field stream_id: unknown stream '{}'", source, r.line, r.id));
        ds.streams.push_back(*spec);
    }
    std::vector<std::vector<std::size_t>> stream_line(flow_rows.size(), std::vector<std::size_t>(ds.streams.size(), 0));
    std::vector<std::size_t> flow_line;
    for (auto& [line_no, s] : flow_rows) {
        s.streams.assign(ds.streams.size(), {});
        flow_line.push_back(line_no);
        ds.samples.push_back(s);
    }
    for (const auto& r : stream_rows) {
        std::size_t k = 0;
        while (k < ds.samples.size() && std::abs(ds.samples[k].U_cell - r.U) > 1e-12) ++k;
        if (k == ds.samples.size())
            throw ValidationError(fmt::format("{}:{}: field U_cell: no flow row for voltage {}", source, r.line, r.U));
        const std::size_t i = ds.stream_index(r.id);
        if (stream_line[k][i] != 0)
            throw ValidationError(fmt::format("{}:{}: field stream_id: duplicate row for {} at {} V", source, r.line, r.id, r.U));
        ds.samples[k].streams[i] = r.st;
        stream_line[k][i] = r.line;
    }
    for (std::size_t k = 0; k < ds.samples.size(); ++k)
        for (std::size_t i = 0; i < ds.streams.size(); ++i)
            if (stream_line[k][i] == 0)
                throw ValidationError(fmt::format("{}: field stream_id: stream {} missing at {} V", source, ds.streams[i].id,
                                                  ds.samples[k].U_cell));
    validate(ds, [&](std::size_t k, std::size_t i) {
        if (k >= flow_line.size()) return source;
        if (i == static_cast<std::size_t>(-1)) return fmt::format("{}:{} (flow row)", source, flow_line[k]);
        return fmt::format("{}:{} ({})", source, stream_line[k][i], ds.streams[i].id);
    });
    return ds;
}

inline PlantDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error(fmt::format("cannot open dataset {}", path.string()));
    return load_dataset(is, path.string());
}

// Sample data on the reference voltage grid: every bracketed stream value ramps linearly from its
// lower bound at the lowest voltage to its upper bound at the highest.
inline std::vector<std::vector<StreamState>> linear_stream_ramps(const std::vector<StreamSpec>& streams) {
    std::vector<std::vector<StreamState>> out(kSampleCount);
    for (std::size_t k = 0; k < kSampleCount; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(kSampleCount - 1);
        auto ramp = [t](const Interval& iv) { return t == 1.0 ? iv.hi : iv.lo + t * (iv.hi - iv.lo); };
        for (const auto& s : streams) {
            StreamState st{ramp(s.T_in), ramp(s.T_out), ramp(s.F)};
            // Combustion streams leave at their lowest admissible outlet; the optimizer may raise it.
            if (s.kind == StreamKind::internal_hot_utility) st.T_out = s.T_out.lo;
            out[k].push_back(st);
        }
    }
    return out;
}

}  // namespace ptl::plant
