#include "hcb/toolkit.hpp"
#include "hcb/certificate.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unistd.h>

namespace hcb {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::validate() const {
    if (digits < 16 || digits > 2000) throw std::invalid_argument("digits must be in [16, 2000]");
    double t = 0;
    try {
        t = std::stod(tolerance);
    } catch (const std::exception&) {
        throw std::invalid_argument("tolerance is not a number: " + tolerance);
    }
    if (!(t >= 1e-13 && t < 1)) throw std::invalid_argument("tolerance must be in [1e-13, 1)");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (outDir.empty()) throw std::invalid_argument("output directory is empty");
}

RunConfig parseConfig(const std::string& text, RunConfig c) {
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineNo) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "digits")
                c.digits = static_cast<unsigned>(std::stoul(value));
            else if (key == "tolerance")
                c.tolerance = value;
            else if (key == "cache-dir")
                c.cacheDir = value;
            else if (key == "out-dir")
                c.outDir = value;
            else if (key == "jobs")
                c.jobs = std::stoi(value);
            else
                throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineNo) + ": " + e.what());
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("config line " + std::to_string(lineNo) + ": value out of range");
        }
    }
    c.validate();
    return c;
}

fs::path defaultCacheDir() {
    if (const char* d = std::getenv("HCB_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "hcb";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "hcb";
    return fs::temp_directory_path() / "hcb-cache";
}

void atomicWrite(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." +
           std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string readFile(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ResultCache::ResultCache(fs::path dir, std::string version) : dir_(std::move(dir)), version_(std::move(version)) {}

std::string ResultCache::key(const std::string& op, const std::string& input) const {
    return sha256Hex(version_ + "\n" + op + "\n" + input);
}

std::optional<std::string> ResultCache::get(const std::string& op, const std::string& input) const {
    if (!enabled()) return std::nullopt;
    fs::path p = dir_ / (key(op, input) + ".entry");
    std::error_code ec;
    if (!fs::exists(p, ec)) return std::nullopt;
    std::string text;
    try {
        text = readFile(p);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::string head = "version " + version_ + "\n";
    if (text.compare(0, head.size(), head) != 0) return std::nullopt;
    return text.substr(head.size());
}

void ResultCache::put(const std::string& op, const std::string& input, const std::string& output) const {
    if (!enabled()) return;
    atomicWrite(dir_ / (key(op, input) + ".entry"), "version " + version_ + "\n" + output);
}

std::string ResultCache::fetch(const std::string& op, const std::string& input,
                               const std::function<std::string()>& compute) const {
    if (auto hit = get(op, input)) return *hit;
    std::string out = compute();
    put(op, input, out);
    return out;
}

std::vector<std::pair<mpz_class, int>> factorInteger(const mpz_class& n0) {
    mpz_class n = abs(n0);
    std::vector<std::pair<mpz_class, int>> f;
    if (n < 2) return f;
    for (unsigned long p = 2; p <= 1000000 && n > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            f.emplace_back(mpz_class(p), e);
        }
        if (mpz_class(p) * p > n) break;
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::string factorText(const mpz_class& n) {
    auto f = factorInteger(n);
    if (f.empty()) return n.get_str();
    std::string s;
    for (auto& [p, e] : f) {
        if (!s.empty()) s += "*";
        s += p.get_str();
        if (e > 1) s += "^" + std::to_string(e);
        if (p > 1000000 && mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) s += "(composite)";
    }
    return s;
}

std::vector<std::string> parallelMap(int count, int jobs, const std::function<std::string(int)>& f) {
    std::vector<std::string> out(static_cast<size_t>(std::max(count, 0)));
    if (count <= 0) return out;
    int workers = std::max(1, std::min(jobs, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = f(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next++) < count;) {
                try {
                    out[static_cast<size_t>(i)] = f(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace hcb
