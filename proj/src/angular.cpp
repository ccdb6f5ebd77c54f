#include "bfn/angular.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <shared_mutex>
#include <unordered_map>

#include "bfn/combinatorics.hpp"
#include "bfn/specfunc.hpp"

namespace bfn {

double wigner_3jm(int j1, int j2, int j3, int m1, int m2, int m3) {
    if (j1 < 0 || j2 < 0 || j3 < 0)
        throw std::domain_error("wigner_3jm: negative angular momentum");
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    if (m1 + m2 + m3 != 0) return 0.0;
    if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
    // Single-sum form with every factorial kept exact; the square root is the
    // only inexact step.
    int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    if (kmax < kmin) return 0.0;
    BigRational s = 0;
    for (int k = kmin; k <= kmax; ++k) {
        BigInt den = factorial(k) * factorial(j1 + j2 - j3 - k) *
                     factorial(j1 - m1 - k) * factorial(j2 + m2 - k) *
                     factorial(j3 - j2 + m1 + k) * factorial(j3 - j1 - m2 + k);
        BigRational term(1, den);
        if (k % 2 != 0) term = -term;
        s += term;
    }
    if (s == 0) return 0.0;
    BigRational delta2(factorial(j1 + j2 - j3) * factorial(j1 - j2 + j3) *
                           factorial(-j1 + j2 + j3),
                       factorial(j1 + j2 + j3 + 1));
    BigInt mfac = factorial(j1 - m1) * factorial(j1 + m1) * factorial(j2 - m2) *
                  factorial(j2 + m2) * factorial(j3 - m3) * factorial(j3 + m3);
    double magnitude = std::sqrt(to_double(s * s * delta2 * mfac));
    double sign = (s > 0 ? 1.0 : -1.0) * minus_one_pow(j1 - j2 - m3);
    return sign * magnitude;
}

CouplingRange coupling_range(int ell1, int m1, int ell2, int m2) {
    if (ell1 < 0 || ell2 < 0 || std::abs(m1) > ell1 || std::abs(m2) > ell2)
        throw std::domain_error("coupling_range: invalid (ell, m) pair");
    int ell_max = ell1 + ell2;
    int lam = std::max(std::abs(ell1 - ell2), std::abs(m1 + m2));
    int ell_min = ((ell_max + lam) % 2 == 0) ? lam : lam + 1;
    return {ell_min, ell_max, 2};
}

DeltaQuantities delta_quantities(int ell1, int ell2, int ell) {
    if (ell1 < 0 || ell2 < 0 || ell < 0)
        throw std::domain_error("delta_quantities: negative degree");
    if ((ell1 + ell2 + ell) % 2 != 0)
        throw std::domain_error("delta_quantities: parity violation");
    DeltaQuantities d{(ell1 + ell2 - ell) / 2, (ell - ell1 + ell2) / 2,
                      (ell + ell1 - ell2) / 2, (ell1 + ell2 + ell) / 2};
    if (d.d_ell < 0 || d.d_ell1 < 0 || d.d_ell2 < 0)
        throw std::domain_error("delta_quantities: triangle violation");
    return d;
}

namespace {

struct GauntTable {
    std::shared_mutex mu;
    std::unordered_map<std::uint64_t, double> map;
};

GauntTable& table() {
    static GauntTable t;
    return t;
}

// The two kets commute, so their (ell, m) pairs are sorted before packing.
// Each (ell, m) takes 10 + 10 bits; degrees beyond 1023 are unsupported.
std::uint64_t canonical_key(const GauntKey& k) {
    int la = k.ell1, ma = k.m1, lb = k.ell2, mb = k.m2;
    if (lb < la || (lb == la && mb < ma)) {
        std::swap(la, lb);
        std::swap(ma, mb);
    }
    auto pack = [](int ell, int m) -> std::uint64_t {
        return (std::uint64_t)ell | ((std::uint64_t)(m + 512) << 10);
    };
    return pack(la, ma) | (pack(lb, mb) << 20) | (pack(k.ell3, k.m3) << 40);
}

void unpack_key(std::uint64_t key, GauntKey& k) {
    auto field = [key](int shift) {
        return std::make_pair((int)((key >> shift) & 0x3ff),
                              (int)((key >> (shift + 10)) & 0x3ff) - 512);
    };
    auto [l1, m1] = field(0);
    auto [l2, m2] = field(20);
    auto [l3, m3] = field(40);
    k = {l1, m1, l2, m2, l3, m3};
}

}  // namespace

double gaunt(const GauntKey& key) {
    validate(TensorIndex{key.ell1, key.m1});
    validate(TensorIndex{key.ell2, key.m2});
    validate(TensorIndex{key.ell3, key.m3});
    if (key.ell1 > 1023 || key.ell2 > 1023 || key.ell3 > 1023)
        throw std::domain_error("gaunt: degree exceeds cache key capacity");
    if (key.m1 + key.m2 != key.m3) return 0.0;
    if (key.ell3 < std::abs(key.ell1 - key.ell2) || key.ell3 > key.ell1 + key.ell2)
        return 0.0;
    if ((key.ell1 + key.ell2 + key.ell3) % 2 != 0) return 0.0;

    const std::uint64_t ck = canonical_key(key);
    GauntTable& t = table();
    {
        std::shared_lock lock(t.mu);
        auto it = t.map.find(ck);
        if (it != t.map.end()) return it->second;
    }
    double value = minus_one_pow(key.m3) *
                   std::sqrt((2 * key.ell1 + 1) * (2 * key.ell2 + 1) *
                             (2 * key.ell3 + 1) / (4.0 * pi)) *
                   wigner_3jm(key.ell1, key.ell2, key.ell3, 0, 0, 0) *
                   wigner_3jm(key.ell1, key.ell2, key.ell3, key.m1, key.m2, -key.m3);
    {
        std::unique_lock lock(t.mu);
        t.map.emplace(ck, value);
    }
    return value;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p;
            }
            if (n == 1) {
                p1 = t;
                p0 = 1.0;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = -p1 / dp;
            t += dt;
            if (std::abs(dt) < 1e-15) break;
        }
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        double w = 2.0 / ((1.0 - t * t) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

ComplexValue sphere_quadrature(const std::function<ComplexValue(double, double)>& f,
                               int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1)
        throw std::domain_error("sphere_quadrature: need positive node counts");
    std::vector<double> x, w;
    gauss_legendre(n_theta, x, w);
    ComplexValue acc = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double theta = std::acos(x[i]);
        ComplexValue row = 0.0;
        for (int j = 0; j < n_phi; ++j) row += f(theta, 2.0 * pi * j / n_phi);
        acc += w[i] * row;
    }
    return acc * (2.0 * pi / n_phi);
}

namespace gaunt_cache {

std::size_t size() {
    GauntTable& t = table();
    std::shared_lock lock(t.mu);
    return t.map.size();
}

void clear() {
    GauntTable& t = table();
    std::unique_lock lock(t.mu);
    t.map.clear();
}

void inject_for_testing(const GauntKey& key, double value) {
    GauntTable& t = table();
    std::unique_lock lock(t.mu);
    t.map[canonical_key(key)] = value;
}

namespace {

constexpr char kMagic[4] = {'B', 'F', 'G', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back((char)((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back((char)((v >> (8 * i)) & 0xff));
}
void put_i32(std::string& out, std::int32_t v) { put_u32(out, (std::uint32_t)v); }
void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

struct Reader {
    const unsigned char* p;
    std::size_t left;
    bool take(void* dst, std::size_t n) {
        if (left < n) return false;
        std::copy(p, p + n, (unsigned char*)dst);
        p += n;
        left -= n;
        return true;
    }
    bool u32(std::uint32_t& v) {
        unsigned char b[4];
        if (!take(b, 4)) return false;
        v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return true;
    }
    bool u64(std::uint64_t& v) {
        unsigned char b[8];
        if (!take(b, 8)) return false;
        v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return true;
    }
    bool i32(std::int32_t& v) {
        std::uint32_t u;
        if (!u32(u)) return false;
        v = (std::int32_t)u;
        return true;
    }
    bool f64(double& v) {
        std::uint64_t u;
        if (!u64(u)) return false;
        v = std::bit_cast<double>(u);
        return true;
    }
};

}  // namespace

bool save(const std::string& path) {
    std::vector<std::pair<std::uint64_t, double>> entries;
    {
        GauntTable& t = table();
        std::shared_lock lock(t.mu);
        entries.assign(t.map.begin(), t.map.end());
    }
    std::sort(entries.begin(), entries.end());  // deterministic file bytes
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u64(out, entries.size());
    for (const auto& [ck, value] : entries) {
        GauntKey k;
        unpack_key(ck, k);
        put_i32(out, k.ell1);
        put_i32(out, k.m1);
        put_i32(out, k.ell2);
        put_i32(out, k.m2);
        put_i32(out, k.ell3);
        put_i32(out, k.m3);
        put_f64(out, value);
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return false;
    std::size_t n = std::fwrite(out.data(), 1, out.size(), f);
    std::fclose(f);
    return n == out.size();
}

std::size_t load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return 0;  // no snapshot yet
    std::string buf;
    char chunk[65536];
    std::size_t n;
    while ((n = std::fread(chunk, 1, sizeof chunk, f)) > 0) buf.append(chunk, n);
    std::fclose(f);
    Reader r{(const unsigned char*)buf.data(), buf.size()};
    char magic[4];
    if (!r.take(magic, 4) || !std::equal(magic, magic + 4, kMagic))
        throw std::runtime_error("gaunt_cache::load: bad magic in " + path);
    std::uint32_t version;
    if (!r.u32(version) || version != kVersion)
        throw std::runtime_error("gaunt_cache::load: unsupported version in " + path);
    std::uint64_t count;
    if (!r.u64(count))
        throw std::runtime_error("gaunt_cache::load: truncated header in " + path);
    constexpr std::size_t kEntryBytes = 6 * 4 + 8;
    if (count > r.left / kEntryBytes)
        throw std::runtime_error("gaunt_cache::load: truncated entry in " + path);
    std::vector<std::pair<std::uint64_t, double>> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        GauntKey k;
        double value;
        if (!r.i32(k.ell1) || !r.i32(k.m1) || !r.i32(k.ell2) || !r.i32(k.m2) ||
            !r.i32(k.ell3) || !r.i32(k.m3) || !r.f64(value))
            throw std::runtime_error("gaunt_cache::load: truncated entry in " + path);
        entries.emplace_back(canonical_key(k), value);
    }
    GauntTable& t = table();
    std::unique_lock lock(t.mu);
    for (const auto& [ck, value] : entries) t.map.emplace(ck, value);
    return entries.size();
}

}  // namespace gaunt_cache

}  // namespace bfn
