#include "arborlab/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "arborlab/error.hpp"

namespace arborlab::cache {

namespace {

constexpr char kMagic[4] = {'A', 'R', 'B', 'F'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_int(std::string& out, const Int& z) {
    out.push_back(static_cast<char>(sgn(z) < 0 ? 1 : 0));
    std::size_t n = 0;
    void* raw = mpz_export(nullptr, &n, 1, 1, 1, 0, z.get_mpz_t());
    put_u32(out, static_cast<std::uint32_t>(n));
    out.append(static_cast<const char*>(raw), n);
    void (*free_fn)(void*, std::size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &free_fn);
    if (raw) free_fn(raw, n);
}

void put_poly(std::string& out, const IntPoly& f) {
    put_u32(out, static_cast<std::uint32_t>(f.coeffs().size()));
    for (const auto& c : f.coeffs()) put_int(out, c);
}

struct Reader {
    const std::string& s;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (s.size() - pos < n) throw Error("cache entry is truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    Int integer() {
        need(1);
        const unsigned char sign = static_cast<unsigned char>(s[pos++]);
        if (sign > 1) throw Error("cache entry has a bad sign byte");
        const std::uint32_t n = u32();
        need(n);
        Int z;
        mpz_import(z.get_mpz_t(), n, 1, 1, 1, 0, s.data() + pos);
        pos += n;
        return sign ? Int(-z) : z;
    }
    IntPoly poly() {
        const std::uint32_t n = u32();
        std::vector<Int> c;
        for (std::uint32_t i = 0; i < n; ++i) c.push_back(integer());
        return IntPoly(std::move(c));
    }
};

}  // namespace

std::string encode(const IntPoly& key, const galois::FactorizationQ& value) {
    std::string out(kMagic, 4);
    out.push_back(static_cast<char>(kFormatVersion));
    put_poly(out, key);
    put_int(out, value.unit.get_num());
    put_int(out, value.unit.get_den());
    put_u32(out, static_cast<std::uint32_t>(value.factors.size()));
    for (const auto& [f, m] : value.factors) {
        put_u32(out, static_cast<std::uint32_t>(m));
        put_poly(out, f);
    }
    return out;
}

std::pair<IntPoly, galois::FactorizationQ> decode(const std::string& bytes) {
    if (bytes.size() < 5 || bytes.compare(0, 4, kMagic, 4) != 0) throw Error("not a factor cache entry");
    if (static_cast<std::uint8_t>(bytes[4]) != kFormatVersion) throw Error("unsupported cache format version");
    Reader r{bytes, 5};
    IntPoly key = r.poly();
    galois::FactorizationQ v;
    const Int num = r.integer(), den = r.integer();
    if (den <= 0) throw Error("cache entry has a bad unit");
    v.unit = Rat(num, den);
    v.unit.canonicalize();
    const std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
        const int m = static_cast<int>(r.u32());
        v.factors.emplace_back(r.poly(), m);
    }
    if (r.pos != bytes.size()) throw Error("cache entry has trailing bytes");
    return {std::move(key), std::move(v)};
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_name(const IntPoly& key) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_string(key))));
    return std::string(buf) + ".arbf";
}

DiskFactorStore::DiskFactorStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<galois::FactorizationQ> DiskFactorStore::lookup(const IntPoly& key) {
    const std::string canon = to_string(key);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memory_.find(canon); it != memory_.end()) {
        ++hits_;
        return it->second;
    }
    std::ifstream in(dir_ / file_name(key), std::ios::binary);
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            auto [k, v] = decode(ss.str());
            if (k == key && v.product() == key) {
                ++hits_;
                memory_.emplace(canon, v);
                return v;
            }
        } catch (const Error&) {
        }
    }
    ++misses_;
    return std::nullopt;
}

void DiskFactorStore::store(const IntPoly& key, const galois::FactorizationQ& value) {
    const std::string canon = to_string(key);
    std::lock_guard<std::mutex> lock(mu_);
    memory_.emplace(canon, value);
    const auto path = dir_ / file_name(key);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;  // an unwritable cache only costs recomputation
        const std::string bytes = encode(key, value);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) return;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
}

std::size_t DiskFactorStore::hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
}

std::size_t DiskFactorStore::misses() const {
    std::lock_guard<std::mutex> lock(mu_);
    return misses_;
}

}  // namespace arborlab::cache
