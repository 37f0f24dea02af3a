// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "features.hpp"
#include "qft.hpp"
#include "quaternion.hpp"
#include "stqft.hpp"

namespace hyperan {

/// Raised for any file problem: unopenable path, bad magic, missing keys,
/// malformed numbers, wrong column counts. Messages name the file and the
/// line where the problem sits.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ordered key=value pairs carried in a file's comment header.
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::optional<std::string> find_meta(const Metadata& meta, std::string_view key) {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

namespace detail {

inline constexpr std::string_view kMagicSignal = "# hyperan-signal v1";
inline constexpr std::string_view kMagicSpectrum = "# hyperan-spectrum v1";
inline constexpr std::string_view kMagicFeatures = "# hyperan-features v1";
inline constexpr std::string_view kMagicSpectrogram = "# hyperan-spectrogram v1";

/// Locale-independent double formatting via std::to_chars: the shortest
/// decimal string that parses back to the identical bits.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
    std::size_t begin = 0;
    while (begin < text.size() && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
    std::size_t end = text.size();
    while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r'))
        --end;
    if (begin < end && text[begin] == '+') ++begin;  // from_chars rejects a leading '+'
    double value = 0.0;
    const auto res = std::from_chars(text.data() + begin, text.data() + end, value);
    if (res.ec != std::errc() || res.ptr != text.data() + end)
        throw io_error(where + ": cannot parse number '" + std::string(text) + "'");
    return value;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

/// A parsed file: header metadata, the column-name row, and the data rows.
struct ParsedFile {
    Metadata meta;
    std::string header;
    std::vector<std::string> rows;
    std::size_t header_line = 0;  ///< 1-based line number of the column row
};

inline ParsedFile parse_file(const std::string& path, std::string_view magic) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open for reading");

    ParsedFile out;
    std::string line;
    std::size_t lineno = 0;
    bool saw_magic = false;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(std::move(line));
        if (lineno == 1) {
            if (line != magic)
                throw io_error(path + ":1: expected magic line '" + std::string(magic) +
                               "', found '" + line + "'");
            saw_magic = true;
            continue;
        }
        if (!saw_header) {
            if (line.rfind("# ", 0) == 0) {
                const std::string body = line.substr(2);
                const std::size_t eq = body.find('=');
                if (eq == std::string::npos)
                    throw io_error(path + ":" + std::to_string(lineno) +
                                   ": metadata line without '=': '" + line + "'");
                out.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
                continue;
            }
            if (line.empty()) continue;
            out.header = line;
            out.header_line = lineno;
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;
        out.rows.push_back(std::move(line));
    }
    if (!saw_magic) throw io_error(path + ": empty file");
    if (!saw_header) throw io_error(path + ": no column header row");
    return out;
}

inline std::string require_meta(const ParsedFile& f, const std::string& path,
                                std::string_view key) {
    if (auto v = find_meta(f.meta, key)) return *v;
    throw io_error(path + ": missing required metadata key '" + std::string(key) + "'");
}

inline std::size_t parse_size(const std::string& text, const std::string& where) {
    std::size_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw io_error(where + ": cannot parse count '" + text + "'");
    return value;
}

inline void write_meta(std::ofstream& out, const Metadata& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: '\n' endings everywhere
    if (!out) throw io_error(path + ": cannot open for writing");
    return out;
}

inline std::vector<std::string_view> row_fields(const std::string& path, const ParsedFile& f,
                                                std::size_t row_index, std::size_t expected) {
    const auto fields = split_csv(f.rows[row_index]);
    if (fields.size() != expected)
        throw io_error(path + ":" + std::to_string(f.header_line + 1 + row_index) + ": expected " +
                       std::to_string(expected) + " columns, found " +
                       std::to_string(fields.size()));
    return fields;
}

inline void check_uniform_time(const std::string& path, double t, std::size_t i, double dt) {
    const double expected = double(i) * dt;
    if (std::abs(t - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw io_error(path + ": time column is not uniform at row " + std::to_string(i) +
                       " (found " + format_double(t) + ", expected " + format_double(expected) +
                       ")");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Signals: "# hyperan-signal v1"; required keys kind, n, dt.
// Columns: complex -> t,re,im   quaternion -> t,w,x,y,z
// ---------------------------------------------------------------------------

inline void write_signal(const std::string& path, const ComplexSignal& z,
                         const Metadata& extra = {}) {
    using namespace detail;
    if (z.size() == 0) throw std::invalid_argument("write_signal: empty signal");
    auto out = open_for_write(path);
    out << kMagicSignal << '\n';
    out << "# kind=complex\n";
    out << "# n=" << z.size() << '\n';
    out << "# dt=" << format_double(z.dt) << '\n';
    write_meta(out, extra);
    out << "t,re,im\n";
    for (std::size_t i = 0; i < z.size(); ++i)
        out << format_double(double(i) * z.dt) << ',' << format_double(z.samples[i].real()) << ','
            << format_double(z.samples[i].imag()) << '\n';
    if (!out) throw io_error(path + ": write failed");
}

inline void write_signal(const std::string& path, const QuaternionSignal& q,
                         const Metadata& extra = {}) {
    using namespace detail;
    if (q.size() == 0) throw std::invalid_argument("write_signal: empty signal");
    auto out = open_for_write(path);
    out << kMagicSignal << '\n';
    out << "# kind=quaternion\n";
    out << "# n=" << q.size() << '\n';
    out << "# dt=" << format_double(q.dt) << '\n';
    write_meta(out, extra);
    out << "t,w,x,y,z\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        const Quaternion& s = q.samples[i];
        out << format_double(double(i) * q.dt) << ',' << format_double(s.w) << ','
            << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.z)
            << '\n';
    }
    if (!out) throw io_error(path + ": write failed");
}

enum class SignalKind { complex_kind, quaternion_kind };

struct LoadedSignal {
    SignalKind kind = SignalKind::complex_kind;
    ComplexSignal complex;        ///< filled when kind == complex_kind
    QuaternionSignal quaternion;  ///< filled when kind == quaternion_kind
    Metadata meta;
};

inline LoadedSignal read_signal(const std::string& path) {
    using namespace detail;
    const ParsedFile f = parse_file(path, kMagicSignal);
    const std::string kind = require_meta(f, path, "kind");
    const std::size_t n = parse_size(require_meta(f, path, "n"), path + ": n");
    const double dt = parse_double(require_meta(f, path, "dt"), path + ": dt");
    if (dt <= 0.0) throw io_error(path + ": dt must be positive");
    if (f.rows.size() != n)
        throw io_error(path + ": metadata says n=" + std::to_string(n) + " but file has " +
                       std::to_string(f.rows.size()) + " data rows");

    LoadedSignal out;
    out.meta = f.meta;
    if (kind == "complex") {
        if (f.header != "t,re,im")
            throw io_error(path + ": kind=complex requires columns 't,re,im', found '" + f.header +
                           "'");
        out.kind = SignalKind::complex_kind;
        out.complex.dt = dt;
        out.complex.samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto fields = row_fields(path, f, i, 3);
            const std::string where = path + ":" + std::to_string(f.header_line + 1 + i);
            check_uniform_time(path, parse_double(fields[0], where), i, dt);
            out.complex.samples.emplace_back(parse_double(fields[1], where),
                                             parse_double(fields[2], where));
        }
    } else if (kind == "quaternion") {
        if (f.header != "t,w,x,y,z")
            throw io_error(path + ": kind=quaternion requires columns 't,w,x,y,z', found '" +
                           f.header + "'");
        out.kind = SignalKind::quaternion_kind;
        out.quaternion.dt = dt;
        out.quaternion.samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto fields = row_fields(path, f, i, 5);
            const std::string where = path + ":" + std::to_string(f.header_line + 1 + i);
            check_uniform_time(path, parse_double(fields[0], where), i, dt);
            out.quaternion.samples.push_back({parse_double(fields[1], where),
                                              parse_double(fields[2], where),
                                              parse_double(fields[3], where),
                                              parse_double(fields[4], where)});
        }
    } else {
        throw io_error(path + ": unknown kind '" + kind + "' (expected complex or quaternion)");
    }
    return out;
}

/// Convenience: read a signal file and return it as quaternion samples
/// (complex inputs are embedded into the {1, i} plane).
inline QuaternionSignal read_signal_as_quaternion(const std::string& path) {
    LoadedSignal s = read_signal(path);
    if (s.kind == SignalKind::quaternion_kind) return std::move(s.quaternion);
    return to_quaternion(s.complex);
}

// ---------------------------------------------------------------------------
// Spectra: "# hyperan-spectrum v1"; required keys n, df. Rows run in
// centered frequency order, signed index s from -floor(n/2) to
// ceil(n/2)-1; the storage bin of row s is (s + n) mod n.
// ---------------------------------------------------------------------------

inline void write_spectrum(const std::string& path, const QSpectrum& s,
                           const Metadata& extra = {}) {
    using namespace detail;
    if (s.size() == 0) throw std::invalid_argument("write_spectrum: empty spectrum");
    const std::size_t n = s.size();
    auto out = open_for_write(path);
    out << kMagicSpectrum << '\n';
    out << "# n=" << n << '\n';
    out << "# df=" << format_double(s.df) << '\n';
    out << "# order=centered\n";
    write_meta(out, extra);
    out << "nu,w,x,y,z\n";
    const long half = long(n) / 2;
    for (long p = 0; p < long(n); ++p) {
        const long signed_index = p - half;
        const std::size_t bin = std::size_t((signed_index + long(n)) % long(n));
        const Quaternion& b = s.bins[bin];
        out << format_double(double(signed_index) * s.df) << ',' << format_double(b.w) << ','
            << format_double(b.x) << ',' << format_double(b.y) << ',' << format_double(b.z)
            << '\n';
    }
    if (!out) throw io_error(path + ": write failed");
}

struct LoadedSpectrum {
    QSpectrum spectrum;
    Metadata meta;
};

inline LoadedSpectrum read_spectrum(const std::string& path) {
    using namespace detail;
    const ParsedFile f = parse_file(path, kMagicSpectrum);
    const std::size_t n = parse_size(require_meta(f, path, "n"), path + ": n");
    const double df = parse_double(require_meta(f, path, "df"), path + ": df");
    if (df <= 0.0) throw io_error(path + ": df must be positive");
    if (auto order = find_meta(f.meta, "order"); order && *order != "centered")
        throw io_error(path + ": unsupported row order '" + *order + "'");
    if (f.header != "nu,w,x,y,z")
        throw io_error(path + ": expected columns 'nu,w,x,y,z', found '" + f.header + "'");
    if (f.rows.size() != n)
        throw io_error(path + ": metadata says n=" + std::to_string(n) + " but file has " +
                       std::to_string(f.rows.size()) + " data rows");

    LoadedSpectrum out;
    out.meta = f.meta;
    out.spectrum.df = df;
    out.spectrum.bins.assign(n, Quaternion::zero());
    const long half = long(n) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const auto fields = row_fields(path, f, i, 5);
        const std::string where = path + ":" + std::to_string(f.header_line + 1 + i);
        const long signed_index = long(i) - half;
        const double expected_freq = double(signed_index) * df;
        const double freq = parse_double(fields[0], where);
        if (std::abs(freq - expected_freq) > 1e-9 * std::max(1.0, std::abs(expected_freq)))
            throw io_error(where + ": frequency column out of centered order (found " +
                           std::string(fields[0]) + ", expected " + format_double(expected_freq) +
                           ")");
        const std::size_t bin = std::size_t((signed_index + long(n)) % long(n));
        out.spectrum.bins[bin] = {parse_double(fields[1], where), parse_double(fields[2], where),
                                  parse_double(fields[3], where), parse_double(fields[4], where)};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Features: "# hyperan-features v1"; required keys n, dt.
// Columns: t,rho_re,rho_im,phi,freq,nx,ny,nz,mask (mask: 0 clean, 1 masked)
// ---------------------------------------------------------------------------

inline void write_features(const std::string& path, const InstFeatures& ft,
                           const Metadata& extra = {}) {
    using namespace detail;
    const std::size_t n = ft.rho.size();
    if (n == 0) throw std::invalid_argument("write_features: empty features");
    if (ft.phi.size() != n || ft.freq.size() != n || ft.normal.size() != n ||
        ft.mask.size() != n)
        throw std::invalid_argument("write_features: inconsistent array lengths");
    auto out = open_for_write(path);
    out << kMagicFeatures << '\n';
    out << "# n=" << n << '\n';
    out << "# dt=" << format_double(ft.dt) << '\n';
    write_meta(out, extra);
    out << "t,rho_re,rho_im,phi,freq,nx,ny,nz,mask\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << format_double(double(i) * ft.dt) << ',' << format_double(ft.rho[i].real()) << ','
            << format_double(ft.rho[i].imag()) << ',' << format_double(ft.phi[i]) << ','
            << format_double(ft.freq[i]) << ',' << format_double(ft.normal[i][0]) << ','
            << format_double(ft.normal[i][1]) << ',' << format_double(ft.normal[i][2]) << ','
            << (ft.mask[i] ? 1 : 0) << '\n';
    }
    if (!out) throw io_error(path + ": write failed");
}

struct LoadedFeatures {
    InstFeatures features;
    Metadata meta;
};

inline LoadedFeatures read_features(const std::string& path) {
    using namespace detail;
    const ParsedFile f = parse_file(path, kMagicFeatures);
    const std::size_t n = parse_size(require_meta(f, path, "n"), path + ": n");
    const double dt = parse_double(require_meta(f, path, "dt"), path + ": dt");
    if (dt <= 0.0) throw io_error(path + ": dt must be positive");
    if (f.header != "t,rho_re,rho_im,phi,freq,nx,ny,nz,mask")
        throw io_error(path + ": unexpected feature columns '" + f.header + "'");
    if (f.rows.size() != n)
        throw io_error(path + ": metadata says n=" + std::to_string(n) + " but file has " +
                       std::to_string(f.rows.size()) + " data rows");

    LoadedFeatures out;
    out.meta = f.meta;
    InstFeatures& ft = out.features;
    ft.dt = dt;
    ft.rho.reserve(n);
    ft.phi.reserve(n);
    ft.freq.reserve(n);
    ft.normal.reserve(n);
    ft.mask.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto fields = row_fields(path, f, i, 9);
        const std::string where = path + ":" + std::to_string(f.header_line + 1 + i);
        check_uniform_time(path, parse_double(fields[0], where), i, dt);
        ft.rho.emplace_back(parse_double(fields[1], where), parse_double(fields[2], where));
        ft.phi.push_back(parse_double(fields[3], where));
        ft.freq.push_back(parse_double(fields[4], where));
        ft.normal.push_back({parse_double(fields[5], where), parse_double(fields[6], where),
                             parse_double(fields[7], where)});
        ft.mask.push_back(parse_double(fields[8], where) != 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectrograms: "# hyperan-spectrogram v1"; required keys frames, bins,
// window_len, hop, df, dt_frame, t0. One row per frame: t,b0,b1,...
// ---------------------------------------------------------------------------

inline void write_spectrogram(const std::string& path, const Spectrogram& sg,
                              const Metadata& extra = {}) {
    using namespace detail;
    if (sg.frames() == 0) throw std::invalid_argument("write_spectrogram: empty spectrogram");
    const std::size_t bins = sg.bins_per_frame();
    for (const auto& row : sg.mags)
        if (row.size() != bins)
            throw std::invalid_argument("write_spectrogram: ragged spectrogram rows");
    auto out = open_for_write(path);
    out << kMagicSpectrogram << '\n';
    out << "# frames=" << sg.frames() << '\n';
    out << "# bins=" << bins << '\n';
    out << "# window_len=" << sg.window_len << '\n';
    out << "# hop=" << sg.hop << '\n';
    out << "# df=" << format_double(sg.df) << '\n';
    out << "# dt_frame=" << format_double(sg.dt_frame) << '\n';
    out << "# t0=" << format_double(sg.t0) << '\n';
    write_meta(out, extra);
    out << 't';
    for (std::size_t k = 0; k < bins; ++k) out << ",b" << k;
    out << '\n';
    for (std::size_t fr = 0; fr < sg.frames(); ++fr) {
        out << format_double(sg.t0 + double(fr) * sg.dt_frame);
        for (std::size_t k = 0; k < bins; ++k) out << ',' << format_double(sg.mags[fr][k]);
        out << '\n';
    }
    if (!out) throw io_error(path + ": write failed");
}

struct LoadedSpectrogram {
    Spectrogram spectrogram;
    Metadata meta;
};

inline LoadedSpectrogram read_spectrogram(const std::string& path) {
    using namespace detail;
    const ParsedFile f = parse_file(path, kMagicSpectrogram);
    const std::size_t frames = parse_size(require_meta(f, path, "frames"), path + ": frames");
    const std::size_t bins = parse_size(require_meta(f, path, "bins"), path + ": bins");
    if (frames == 0 || bins == 0) throw io_error(path + ": frames and bins must be positive");

    LoadedSpectrogram out;
    out.meta = f.meta;
    Spectrogram& sg = out.spectrogram;
    sg.window_len = parse_size(require_meta(f, path, "window_len"), path + ": window_len");
    sg.hop = parse_size(require_meta(f, path, "hop"), path + ": hop");
    sg.df = parse_double(require_meta(f, path, "df"), path + ": df");
    sg.dt_frame = parse_double(require_meta(f, path, "dt_frame"), path + ": dt_frame");
    sg.t0 = parse_double(require_meta(f, path, "t0"), path + ": t0");
    if (f.rows.size() != frames)
        throw io_error(path + ": metadata says frames=" + std::to_string(frames) +
                       " but file has " + std::to_string(f.rows.size()) + " data rows");

    sg.mags.reserve(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const auto fields = row_fields(path, f, i, bins + 1);
        const std::string where = path + ":" + std::to_string(f.header_line + 1 + i);
        const double t = parse_double(fields[0], where);
        const double expected = sg.t0 + double(i) * sg.dt_frame;
        if (std::abs(t - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
            throw io_error(where + ": frame time out of order");
        std::vector<double> row(bins);
        for (std::size_t k = 0; k < bins; ++k) row[k] = parse_double(fields[k + 1], where);
        sg.mags.push_back(std::move(row));
    }
    return out;
}

}  // namespace hyperan
