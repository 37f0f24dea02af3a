// SPDX-License-Identifier: Apache-2.0
//
// hyperan — command-line front end for the quaternion-spectrum signal
// analysis library. Subcommands cover the full pipeline: generate test
// signals, transform them, build the analytic (one-sided) representation,
// extract instantaneous features, compute sliding-window spectrograms,
// and self-verify the numerical kernels.
//
// Exit codes: 0 success, 1 validation error, 2 file/I-O error,
//             3 self-verification failure.

#include <CLI11.hpp>

#include <hyperan/hyperan.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

std::uint64_t default_seed() {
    const char* env = std::getenv("HYPERAN_SEED");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw std::invalid_argument(std::string("HYPERAN_SEED is not an integer: '") + env + "'");
    return std::uint64_t(v);
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) { return hyperan::detail::format_double(v); }

// ---------------------------------------------------------------------------
// Minimal SVG chart: one or two series drawn as polylines over sample index.
// ---------------------------------------------------------------------------

struct SvgSeries {
    std::string label;
    std::string color;
    const std::vector<double>* values = nullptr;
};

void write_svg(const std::string& path, const std::string& title,
               const std::vector<SvgSeries>& series) {
    constexpr double w = 960.0, h = 320.0, ml = 50.0, mr = 15.0, mt = 30.0, mb = 20.0;
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
    bool first = true;
    for (const auto& s : series) {
        n = std::max(n, s.values->size());
        for (double v : *s.values) {
            if (first) { lo = hi = v; first = false; }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (n < 2) throw std::invalid_argument("write_svg: need at least 2 samples");
    if (hi - lo < 1e-300) { hi += 1.0; lo -= 1.0; }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw hyperan::io_error(path + ": cannot open for writing");
    const double px = (w - ml - mr), py = (h - mt - mb);
    auto xmap = [&](std::size_t i, std::size_t len) {
        return ml + px * double(i) / double(len - 1);
    };
    auto ymap = [&](double v) { return mt + py * (1.0 - (v - lo) / (hi - lo)); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << px << "\" height=\"" << py
        << "\" fill=\"white\" stroke=\"#999\"/>\n";
    if (lo < 0.0 && hi > 0.0)
        out << "<line x1=\"" << ml << "\" y1=\"" << ymap(0.0) << "\" x2=\"" << ml + px
            << "\" y2=\"" << ymap(0.0) << "\" stroke=\"#ccc\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"18\">" << title << "</text>\n";
    out << "<text x=\"4\" y=\"" << mt + 10 << "\">" << hi << "</text>\n";
    out << "<text x=\"4\" y=\"" << mt + py << "\">" << lo << "</text>\n";
    double legend_x = ml + 10.0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
        const auto& v = *s.values;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out << xmap(i, v.size()) << ',' << ymap(v[i]);
            if (i + 1 < v.size()) out << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << legend_x << "\" y=\"" << mt + py - 6 << "\" fill=\"" << s.color
            << "\">" << s.label << "</text>\n";
        legend_x += 14.0 * double(s.label.size()) * 0.6 + 24.0;
    }
    out << "</svg>\n";
    if (!out) throw hyperan::io_error(path + ": write failed");
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateArgs {
    int example = 1;
    std::uint64_t seed = 1;
    std::size_t n = 0;           // 0 -> per-example default
    std::size_t max_cycles = 16;
    double nu0 = -1.0;           // <0 -> per-example default
    double nu1 = -1.0;
    double alpha = 1.0;
    std::string out;
    std::string baseband_out;
    std::string svg_out;
};

hyperan::PhaseLaw resolve_law(GenerateArgs& a) {
    hyperan::PhaseLaw law;
    switch (a.example) {
        case 1:
            law.kind = hyperan::PhaseKind::constant_freq;
            if (a.n == 0) a.n = 1024;
            law.nu0 = a.nu0 < 0.0 ? 64.0 : a.nu0;
            break;
        case 2:
            law.kind = hyperan::PhaseKind::step_freq;
            if (a.n == 0) a.n = 2048;
            law.nu0 = a.nu0 < 0.0 ? 200.0 : a.nu0;
            law.nu1 = a.nu1 < 0.0 ? 400.0 : a.nu1;
            law.t1 = 0.25;
            law.t2 = 0.75;
            break;
        case 3:
            law.kind = hyperan::PhaseKind::triangle_sweep;
            if (a.n == 0) a.n = 3200;
            law.nu0 = a.nu0 < 0.0 ? 400.0 : a.nu0;
            law.alpha = a.alpha;
            law.T = 0.5;
            break;
        default:
            throw std::invalid_argument("generate: --example must be 1, 2, or 3");
    }
    return law;
}

const char* law_name(hyperan::PhaseKind k) {
    switch (k) {
        case hyperan::PhaseKind::constant_freq: return "constant";
        case hyperan::PhaseKind::step_freq: return "step";
        case hyperan::PhaseKind::triangle_sweep: return "triangle";
    }
    return "?";
}

int run_generate(GenerateArgs& a, bool deterministic) {
    using namespace hyperan;
    const PhaseLaw law = resolve_law(a);
    if (a.out.empty()) a.out = "example" + std::to_string(a.example) + ".csv";

    const double dt = 1.0 / double(a.n);
    if (law_max_frequency(law) >= double(a.n) / 2.0)
        throw std::invalid_argument("generate: peak frequency " + fmt(law_max_frequency(law)) +
                                    " reaches the folding frequency " + fmt(double(a.n) / 2.0) +
                                    "; increase --n");

    BasebandSpec bspec{a.n, a.max_cycles, a.seed};
    const ComplexSignal envelope = bandlimited_random(bspec);
    const std::vector<double> phase = phase_samples(law, a.n, dt);
    const Modulated mod = modulate(envelope, phase);

    const SeparationReport sep = separation_check(qft_forward(envelope), law);
    const bool one_sided =
        sep.one_sided_guaranteed &&
        law_max_frequency(law) + sep.baseband_max_freq < double(a.n) / 2.0;
    if (!one_sided)
        std::cerr << "warning: carrier/baseband spectra overlap (margin " << fmt(sep.margin)
                  << "); the quadrature construction will not be exact\n";

    Metadata meta;
    meta.emplace_back("example", std::to_string(a.example));
    meta.emplace_back("law", law_name(law.kind));
    meta.emplace_back("seed", std::to_string(a.seed));
    meta.emplace_back("prng", kPrngId);
    meta.emplace_back("max_cycles", std::to_string(a.max_cycles));
    meta.emplace_back("nu0", fmt(law.nu0));
    if (law.kind == PhaseKind::step_freq) {
        meta.emplace_back("nu1", fmt(law.nu1));
        meta.emplace_back("t1", fmt(law.t1));
        meta.emplace_back("t2", fmt(law.t2));
    }
    if (law.kind == PhaseKind::triangle_sweep) {
        meta.emplace_back("alpha", fmt(law.alpha));
        meta.emplace_back("T", fmt(law.T));
    }
    meta.emplace_back("separation_margin", fmt(sep.margin));
    meta.emplace_back("one_sided", one_sided ? "1" : "0");
    if (!deterministic) meta.emplace_back("created", timestamp_utc());

    write_signal(a.out, mod.z, meta);
    std::cout << "wrote " << a.out << " (n=" << a.n << ", law=" << law_name(law.kind)
              << ", seed=" << a.seed << ")\n";

    if (!a.baseband_out.empty()) {
        Metadata bmeta;
        bmeta.emplace_back("role", "baseband");
        bmeta.emplace_back("seed", std::to_string(a.seed));
        bmeta.emplace_back("prng", kPrngId);
        bmeta.emplace_back("max_cycles", std::to_string(a.max_cycles));
        if (!deterministic) bmeta.emplace_back("created", timestamp_utc());
        write_signal(a.baseband_out, envelope, bmeta);
        std::cout << "wrote " << a.baseband_out << " (baseband envelope)\n";
    }

    if (!a.svg_out.empty()) {
        std::vector<double> re(a.n), env(a.n), freq(a.n);
        for (std::size_t i = 0; i < a.n; ++i) {
            re[i] = mod.z.samples[i].real();
            env[i] = std::abs(envelope.samples[i]);
            freq[i] = law_frequency(law, double(i) * dt);
        }
        const std::string title = "example " + std::to_string(a.example) + " (seed " +
                                  std::to_string(a.seed) + ")";
        write_svg(a.svg_out, title,
                  {{"re", "#4682b4", &re}, {"envelope", "#e07020", &env}});
        const std::string fsvg = a.svg_out + ".freq.svg";
        write_svg(fsvg, title + " frequency law", {{"cycles", "#208040", &freq}});
        std::cout << "wrote " << a.svg_out << " and " << fsvg << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// qft / analytic / features / stqft
// ---------------------------------------------------------------------------

int run_qft(const std::string& in, const std::string& out, bool inverse, bool deterministic) {
    using namespace hyperan;
    Metadata meta;
    if (inverse) {
        const LoadedSpectrum ls = read_spectrum(in);
        const QuaternionSignal q = qft_inverse(ls.spectrum);
        meta.emplace_back("direction", "inverse");
        if (!deterministic) meta.emplace_back("created", timestamp_utc());
        write_signal(out, q, meta);
        std::cout << "wrote " << out << " (n=" << q.size() << ")\n";
        return kExitOk;
    }
    const QuaternionSignal q = read_signal_as_quaternion(in);
    const QSpectrum s = qft_forward(q);
    meta.emplace_back("direction", "forward");
    if (!deterministic) meta.emplace_back("created", timestamp_utc());
    write_spectrum(out, s, meta);
    std::cout << "wrote " << out << " (n=" << s.size() << ", df=" << fmt(s.df) << ")\n";
    return kExitOk;
}

int run_analytic(const std::string& in, const std::string& out, bool deterministic) {
    using namespace hyperan;
    const LoadedSignal ls = read_signal(in);
    if (ls.kind != SignalKind::complex_kind)
        throw std::invalid_argument(in + ": analytic expects a complex signal (kind=complex)");
    const HyperRep h = hypercomplex(ls.complex);
    Metadata meta;
    meta.emplace_back("rep", "analytic");
    if (!deterministic) meta.emplace_back("created", timestamp_utc());
    write_signal(out, h.signal, meta);
    std::cout << "wrote " << out << " (one-sided representation, n=" << h.size() << ")\n";
    return kExitOk;
}

int run_features(const std::string& in, const std::string& out, std::size_t sg_window,
                 const std::string& mode_name, bool deterministic) {
    using namespace hyperan;
    const NormalMode mode =
        mode_name == "literal" ? NormalMode::literal : NormalMode::frenet;
    const LoadedSignal ls = read_signal(in);
    HyperRep h;
    if (ls.kind == SignalKind::complex_kind) {
        h = hypercomplex(ls.complex);
    } else {
        h.signal = ls.quaternion;
    }
    const InstFeatures ft = extract_features(h, sg_window, mode);
    Metadata meta;
    meta.emplace_back("sg_window", std::to_string(sg_window));
    meta.emplace_back("normal_mode", mode_name);
    meta.emplace_back("source_kind",
                      ls.kind == SignalKind::complex_kind ? "complex" : "quaternion");
    if (!deterministic) meta.emplace_back("created", timestamp_utc());
    write_features(out, ft, meta);
    std::size_t masked = 0;
    for (bool m : ft.mask) masked += m ? 1 : 0;
    std::cout << "wrote " << out << " (n=" << ft.rho.size() << ", masked=" << masked << ")\n";
    return kExitOk;
}

int run_stqft(const std::string& in, const std::string& out, std::size_t window, std::size_t hop,
              const std::string& window_type, bool deterministic) {
    using namespace hyperan;
    const Window wt = window_type == "rect" ? Window::rect : Window::hann;
    const QuaternionSignal q = read_signal_as_quaternion(in);
    const Spectrogram sg = stqft(q, window, hop, wt);
    Metadata meta;
    meta.emplace_back("window_type", window_type);
    if (!deterministic) meta.emplace_back("created", timestamp_utc());
    write_spectrogram(out, sg, meta);
    std::cout << "wrote " << out << " (" << sg.frames() << " frames x " << sg.bins_per_frame()
              << " bins)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify — property checks plus the fast-vs-direct benchmark.
// ---------------------------------------------------------------------------

hyperan::QuaternionSignal random_q(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    auto d = [&gen] { return 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0; };
    hyperan::QuaternionSignal s;
    s.dt = 1.0;
    s.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.samples.push_back({d(), d(), d(), d()});
    return s;
}

hyperan::ComplexSignal random_z(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    auto d = [&gen] { return 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0; };
    hyperan::ComplexSignal s;
    s.dt = 1.0;
    s.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = d(), im = d();
        s.samples.emplace_back(re, im);
    }
    return s;
}

int run_verify(std::size_t bench_n) {
    using namespace hyperan;
    bool all_ok = true;
    auto report = [&all_ok](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "ok  " : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << '\n';
        all_ok = all_ok && ok;
    };

    {  // fast transform matches the direct-sum definition on all small sizes
        double worst = 0.0;
        for (std::size_t n = 1; n <= 32; ++n) {
            const QuaternionSignal s = random_q(900 + n, n);
            const QSpectrum a = qft_forward(s);
            const QSpectrum b = qft_forward_naive(s);
            double peak = 0.0, diff = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                peak = std::max(peak, b.bins[k].modulus());
                diff = std::max(diff, (a.bins[k] - b.bins[k]).modulus());
            }
            worst = std::max(worst, diff / std::max(peak, 1e-300));
        }
        report("fast transform = direct sum, n = 1..32", worst < 1e-10,
               "max rel err " + fmt(worst));
    }
    {  // forward/inverse round trip
        const QuaternionSignal s = random_q(17, 1024);
        const QuaternionSignal r = qft_inverse(qft_forward(s));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            num += (r.samples[i] - s.samples[i]).norm();
            den += s.samples[i].norm();
        }
        const double rel = std::sqrt(num / den);
        report("round trip, n = 1024", rel < 1e-10, "rel rms " + fmt(rel));
    }
    {  // component-involution symmetry of the spectrum
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ComplexSignal z = random_z(seed, 256);
            const QSpectrum s = qft_forward(z);
            double peak = 0.0;
            for (const auto& b : s.bins) peak = std::max(peak, b.modulus());
            worst = std::max(worst, check_i_involution_reversal(s) / peak);
        }
        report("mirror-bin involution symmetry (complex input)", worst < 1e-10,
               "max rel err " + fmt(worst));
    }
    {  // one-sided representation: negative bins vanish, original recovered
        double worst_bin = 0.0, worst_rec = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ComplexSignal z = random_z(100 + seed, 256);
            const HyperRep h = hypercomplex(z);
            const QSpectrum s = qft_forward(h.signal);
            double peak = 0.0;
            for (const auto& b : s.bins) peak = std::max(peak, b.modulus());
            for (std::size_t k = 0; k < s.size(); ++k)
                if (is_negative_bin(k, s.size()))
                    worst_bin = std::max(worst_bin, s.bins[k].modulus() / peak);
            const ComplexSignal back = simplex(h);
            for (std::size_t i = 0; i < z.size(); ++i)
                worst_rec = std::max(worst_rec, std::abs(back.samples[i] - z.samples[i]));
        }
        report("one-sided spectrum + projection recovery", worst_bin < 1e-9 && worst_rec < 1e-12,
               "neg bins " + fmt(worst_bin) + ", recovery " + fmt(worst_rec));
    }
    {  // polar split round trip
        std::mt19937_64 gen(42);
        auto d = [&gen] { return 2.0 * (double(gen() >> 11) * 0x1.0p-53) - 1.0; };
        double worst = 0.0;
        std::size_t tested = 0;
        for (int i = 0; i < 1000; ++i) {
            const Quaternion q{d(), d(), d(), d()};
            if (q.w * q.w + q.x * q.x < 1e-4 * q.norm()) continue;
            ++tested;
            const Quaternion r = from_polar_cd(to_polar_cd(q));
            worst = std::max(worst, (r - q).modulus());
        }
        report("polar split round trip", worst < 1e-12 && tested > 900,
               std::to_string(tested) + " cases, max err " + fmt(worst));
    }
    {  // benchmark: fast path vs direct sum
        const QuaternionSignal s = random_q(7, bench_n);
        const auto t0 = std::chrono::steady_clock::now();
        const QSpectrum fast = qft_forward(s);
        const auto t1 = std::chrono::steady_clock::now();
        const QSpectrum slow = qft_forward_naive(s);
        const auto t2 = std::chrono::steady_clock::now();
        const double fast_s = std::chrono::duration<double>(t1 - t0).count();
        const double slow_s = std::chrono::duration<double>(t2 - t1).count();
        const double speedup = slow_s / std::max(fast_s, 1e-12);
        double peak = 0.0, diff = 0.0;
        for (std::size_t k = 0; k < bench_n; ++k) {
            peak = std::max(peak, slow.bins[k].modulus());
            diff = std::max(diff, (fast.bins[k] - slow.bins[k]).modulus());
        }
        std::ostringstream detail;
        detail << "n=" << bench_n << ", fast " << fast_s * 1e3 << " ms, direct " << slow_s * 1e3
               << " ms, speedup " << speedup << "x";
        report("fast-path benchmark (>= 20x)", speedup >= 20.0 && diff / peak < 1e-10,
               detail.str());
    }

    if (!all_ok) {
        std::cerr << "verification failed\n";
        return kExitVerify;
    }
    std::cout << "all checks passed\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternion-spectrum signal analysis toolbox"};
    app.require_subcommand(1);
    app.fallthrough();

    bool deterministic = false;
    app.add_flag("--deterministic", deterministic,
                 "omit timestamps so outputs are byte-reproducible");

    GenerateArgs gen;
    try {
        gen.seed = default_seed();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    auto* cgen = app.add_subcommand("generate", "generate a modulated test signal");
    cgen->add_option("--example", gen.example, "worked example number")
        ->check(CLI::Range(1, 3))
        ->required();
    cgen->add_option("--seed", gen.seed, "baseband noise seed (default: HYPERAN_SEED or 1)");
    cgen->add_option("--n", gen.n, "record length in samples (0 = example default)");
    cgen->add_option("--max-cycles", gen.max_cycles, "baseband band limit, cycles per record");
    cgen->add_option("--nu0", gen.nu0, "base carrier frequency, cycles per record");
    cgen->add_option("--nu1", gen.nu1, "plateau frequency for the step law");
    cgen->add_option("--alpha", gen.alpha, "relative sweep height for the triangle law");
    cgen->add_option("--out", gen.out, "output signal file (default example<k>.csv)");
    cgen->add_option("--baseband", gen.baseband_out, "also write the baseband envelope here");
    cgen->add_option("--svg", gen.svg_out, "also write quick-look SVG charts here");

    std::string in_path, out_path;
    bool inverse = false;
    auto* cqft = app.add_subcommand("qft", "transform a signal file to a spectrum file");
    cqft->add_option("--in", in_path, "input file")->required();
    cqft->add_option("--out", out_path, "output file")->required();
    cqft->add_flag("--inverse", inverse, "treat input as a spectrum and invert it");

    auto* cana = app.add_subcommand("analytic",
                                    "build the one-sided (analytic) representation of a "
                                    "complex signal");
    cana->add_option("--in", in_path, "input complex signal file")->required();
    cana->add_option("--out", out_path, "output quaternion signal file")->required();

    std::size_t sg_window = 0;
    std::string normal_mode = "frenet";
    auto* cfeat = app.add_subcommand("features", "extract instantaneous features");
    cfeat->add_option("--in", in_path, "input signal file (complex or quaternion)")->required();
    cfeat->add_option("--out", out_path, "output features file")->required();
    cfeat->add_option("--sg-window", sg_window,
                      "odd smoothing-window length for the frequency derivative "
                      "(0 = plain central differences)");
    cfeat->add_option("--mode", normal_mode, "normal-vector mode")
        ->check(CLI::IsMember({"frenet", "literal"}));

    std::size_t window = 128, hop = 32;
    std::string window_type = "hann";
    auto* cst = app.add_subcommand("stqft", "sliding-window transform (spectrogram)");
    cst->add_option("--in", in_path, "input signal file")->required();
    cst->add_option("--out", out_path, "output spectrogram file")->required();
    cst->add_option("--window", window, "window length in samples");
    cst->add_option("--hop", hop, "hop between frames in samples");
    cst->add_option("--window-type", window_type, "window shape")
        ->check(CLI::IsMember({"hann", "rect"}));

    std::size_t bench_n = 4096;
    auto* cver = app.add_subcommand("verify", "run numerical self-checks and the benchmark");
    cver->add_option("--bench-n", bench_n, "benchmark transform size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (cgen->parsed()) return run_generate(gen, deterministic);
        if (cqft->parsed()) return run_qft(in_path, out_path, inverse, deterministic);
        if (cana->parsed()) return run_analytic(in_path, out_path, deterministic);
        if (cfeat->parsed())
            return run_features(in_path, out_path, sg_window, normal_mode, deterministic);
        if (cst->parsed())
            return run_stqft(in_path, out_path, window, hop, window_type, deterministic);
        if (cver->parsed()) return run_verify(bench_n);
    } catch (const hyperan::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    std::cerr << "error: no subcommand\n";
    return kExitValidation;
}
