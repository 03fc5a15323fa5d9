#include "confsurf/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace confsurf {
namespace io {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("complex value must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json ratfn_to_json(const RationalFn& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        terms.push_back({{"pole", complex_to_json(t.pole)},
                         {"order", t.order},
                         {"coeff", complex_to_json(t.coeff)}});
    }
    return json{{"constant", complex_to_json(f.constant())}, {"terms", terms}};
}

RationalFn ratfn_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("rational function must be an object");
    Complex constant(0.0, 0.0);
    if (j.contains("constant")) constant = complex_from_json(j.at("constant"));
    std::vector<RatTerm> terms;
    if (j.contains("terms")) {
        for (const auto& tj : j.at("terms")) {
            RatTerm t;
            t.pole = complex_from_json(tj.at("pole"));
            t.order = tj.value("order", 1);
            t.coeff = complex_from_json(tj.at("coeff"));
            terms.push_back(t);
        }
    }
    try {
        return RationalFn(std::move(terms), constant);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid rational function: ") + e.what());
    }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
    out << text;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_field_csv(const std::filesystem::path& p, const ComplexField& f) {
    std::ostringstream ss;
    ss << "u,re,im\n";
    const auto& s = f.samples();
    for (std::size_t i = 0; i < s.size(); ++i)
        ss << fmt(f.grid().u(i)) << ',' << fmt(s[i].real()) << ',' << fmt(s[i].imag()) << '\n';
    write_text(p, ss.str());
}

void write_spectrum_csv(const std::filesystem::path& p, const ComplexField& f) {
    std::ostringstream ss;
    ss << "k,re,im\n";
    const auto& c = f.spectrum();
    for (std::size_t j = 0; j < c.size(); ++j)
        ss << f.k_of(j) << ',' << fmt(c[j].real()) << ',' << fmt(c[j].imag()) << '\n';
    write_text(p, ss.str());
}

ComplexField read_field_csv(const std::filesystem::path& p, const Grid& g) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open field csv " + p.string());
    std::string line;
    std::getline(in, line); // header
    std::vector<Complex> samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double u, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &u, &re, &im) != 3)
            throw ConfigError("malformed field csv row: " + line);
        samples.emplace_back(re, im);
    }
    if (samples.size() != g.n)
        throw ConfigError("field csv has " + std::to_string(samples.size()) +
                          " rows, grid expects " + std::to_string(g.n));
    return ComplexField::from_samples(g, std::move(samples));
}

void write_surface_csv(const std::filesystem::path& p, const SurfaceShape& s, double t) {
    std::ostringstream ss;
    ss << "u,x,y,t\n";
    for (std::size_t i = 0; i < s.u.size(); ++i)
        ss << fmt(s.u[i]) << ',' << fmt(s.x[i]) << ',' << fmt(s.y[i]) << ',' << fmt(t) << '\n';
    write_text(p, ss.str());
}

std::string trajectory_jsonl(const Trajectory& traj) {
    std::ostringstream ss;
    for (const auto& r : traj.records) {
        ss << "{\"t\":" << fmt(r.t) << ",\"Ibar\":[" << fmt(r.Ibar.real()) << ','
           << fmt(r.Ibar.imag()) << "],\"J\":[" << fmt(r.J.real()) << ',' << fmt(r.J.imag())
           << "],\"min_abs_R\":" << fmt(r.min_abs_R) << ",\"max_abs_V\":" << fmt(r.max_abs_V)
           << "}\n";
    }
    return ss.str();
}

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4), compact implementation for manifest content hashes.

namespace {

constexpr std::array<std::uint32_t, 64> kK = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

} // namespace

std::string sha256_hex(const std::string& bytes) {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                      0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::string msg = bytes;
    const std::uint64_t bitlen = (std::uint64_t)bytes.size() * 8;
    msg.push_back((char)0x80);
    while (msg.size() % 64 != 56) msg.push_back('\0');
    for (int i = 7; i >= 0; --i) msg.push_back((char)((bitlen >> (8 * i)) & 0xff));

    std::array<std::uint32_t, 64> w{};
    for (std::size_t off = 0; off < msg.size(); off += 64) {
        for (int i = 0; i < 16; ++i) {
            w[i] = ((std::uint32_t)(std::uint8_t)msg[off + 4 * i] << 24) |
                   ((std::uint32_t)(std::uint8_t)msg[off + 4 * i + 1] << 16) |
                   ((std::uint32_t)(std::uint8_t)msg[off + 4 * i + 2] << 8) |
                   ((std::uint32_t)(std::uint8_t)msg[off + 4 * i + 3]);
        }
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto a = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t S1 = rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
            const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
            const std::uint32_t t1 = a[7] + S1 + ch + kK[i] + w[i];
            const std::uint32_t S0 = rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
            const std::uint32_t maj = (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
            const std::uint32_t t2 = S0 + maj;
            a[7] = a[6]; a[6] = a[5]; a[5] = a[4]; a[4] = a[3] + t1;
            a[3] = a[2]; a[2] = a[1]; a[1] = a[0]; a[0] = t1 + t2;
        }
        for (int i = 0; i < 8; ++i) h[i] += a[i];
    }
    char out[65];
    for (int i = 0; i < 8; ++i) std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 64);
}

std::string sha256_file(const std::filesystem::path& p) { return sha256_hex(read_text(p)); }

} // namespace io
} // namespace confsurf
