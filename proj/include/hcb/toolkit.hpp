// Plumbing shared by the command-line tool: run configuration, the
// content-addressed result cache, atomic artifact writes and small report
// helpers.
#pragma once

#include "hcb/rational.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hcb {

inline constexpr const char* kToolkitVersion = "hcb 1.0.0";

struct RunConfig {
    unsigned digits = 40;
    std::string tolerance = "1e-13";
    std::filesystem::path cacheDir;   // empty disables the cache
    std::filesystem::path outDir = ".";
    int jobs = 1;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// "key = value" lines; '#' starts a comment.  Unknown keys are errors.
RunConfig parseConfig(const std::string& text, RunConfig base = {});
// HCB_CACHE_DIR when set, else $XDG_CACHE_HOME/hcb or ~/.cache/hcb.
std::filesystem::path defaultCacheDir();

// Write to a temporary sibling and rename over the target.
void atomicWrite(const std::filesystem::path& path, const std::string& content);
std::string readFile(const std::filesystem::path& path);

// Entries are keyed by SHA-256 of (version, operation, canonical input) and
// start with a version line; a mismatched version is a miss.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir, std::string version = kToolkitVersion);
    bool enabled() const { return !dir_.empty(); }
    std::string key(const std::string& op, const std::string& input) const;
    std::optional<std::string> get(const std::string& op, const std::string& input) const;
    void put(const std::string& op, const std::string& input, const std::string& output) const;
    // get, or compute and put.
    std::string fetch(const std::string& op, const std::string& input, const std::function<std::string()>& compute) const;

private:
    std::filesystem::path dir_;
    std::string version_;
};

// Prime factorization by trial division up to 10^6; a larger cofactor is
// reported as a single factor (marked composite when it is not prime).
std::vector<std::pair<mpz_class, int>> factorInteger(const mpz_class& n);
// "5*7^7*11"
std::string factorText(const mpz_class& n);

// Runs f(0..count-1) on up to `jobs` threads; results in index order.
std::vector<std::string> parallelMap(int count, int jobs, const std::function<std::string(int)>& f);

}  // namespace hcb
