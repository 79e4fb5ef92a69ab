#pragma once

// On-disk memo for factor_over_Q. One file per polynomial, named by the
// FNV-1a hash of its canonical string. Files that fail to decode, or whose
// stored key or product disagree with the request, are treated as misses.

#include <filesystem>
#include <map>
#include <mutex>
#include <string>

#include "arborlab/galois.hpp"

namespace arborlab::cache {

// Layout: "ARBF", version byte, key, unit (num, den), factor count, then per
// factor its multiplicity and coefficients. Integers are a sign byte, a
// little-endian u32 byte length and the big-endian magnitude; polynomials and
// counts are u32 lengths followed by their entries.
constexpr std::uint8_t kFormatVersion = 1;

std::string encode(const IntPoly& key, const galois::FactorizationQ& value);
// Throws Error on malformed input.
std::pair<IntPoly, galois::FactorizationQ> decode(const std::string& bytes);

std::uint64_t fnv1a64(std::string_view s);
std::string file_name(const IntPoly& key);

class DiskFactorStore : public galois::FactorStore {
public:
    explicit DiskFactorStore(std::filesystem::path dir);

    std::optional<galois::FactorizationQ> lookup(const IntPoly& key) override;
    void store(const IntPoly& key, const galois::FactorizationQ& value) override;

    const std::filesystem::path& dir() const { return dir_; }
    std::size_t hits() const;
    std::size_t misses() const;

private:
    std::filesystem::path dir_;
    mutable std::mutex mu_;
    std::map<std::string, galois::FactorizationQ> memory_;
    std::size_t hits_ = 0, misses_ = 0;
};

}  // namespace arborlab::cache
