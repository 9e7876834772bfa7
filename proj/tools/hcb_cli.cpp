// hcb: command-line driver for the bound certifier, the bifurcation series
// and the numerical oracle.
//
// Exit codes: 0 success, 2 indeterminate (no certificate could be issued),
// 1 error, 64 usage.

#include "hcb/bifurcation.hpp"
#include "hcb/bt.hpp"
#include "hcb/certificate.hpp"
#include "hcb/certifier.hpp"
#include "hcb/family1.hpp"
#include "hcb/oracle.hpp"
#include "hcb/rationalizer.hpp"
#include "hcb/toolkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hcb;

namespace {

constexpr int kOk = 0, kError = 1, kIndeterminate = 2, kUsage = 64;

// "15", "-1/8", "0.25", "1e-3" as exact rationals.
Q parseRational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    if (s.find_first_of(".eE") == std::string::npos) {
        Q q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    std::string mant = s, exp = "0";
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        exp = s.substr(e + 1);
    }
    int ex = std::stoi(exp);
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        ex -= static_cast<int>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    mpz_class m;
    if (m.set_str(mant, 10) != 0) throw std::invalid_argument("not a number: " + s);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(ex)));
    Q q = ex >= 0 ? Q(m * p10) : Q(m, p10);
    q.canonicalize();
    return q;
}

std::string qs(const Q& q) { return q.get_str(); }
std::string slug(const Q& q) {
    std::string s = q.get_str();
    for (char& c : s)
        if (c == '/') c = '_';
        else if (c == '-') c = 'm';
    return s;
}

struct Context {
    RunConfig cfg;
    std::string configFile;
    std::string cacheDirFlag;
    std::string outDirFlag;
    bool noCache = false;
    unsigned digitsFlag = 0;
    std::string tolFlag;
    int jobsFlag = 0;
    std::vector<fs::path> written;

    ResultCache cache() const { return ResultCache(cfg.cacheDir); }
    void finalize() {
        if (!configFile.empty()) cfg = parseConfig(readFile(configFile), cfg);
        if (cfg.cacheDir.empty()) cfg.cacheDir = defaultCacheDir();
        if (!cacheDirFlag.empty()) cfg.cacheDir = cacheDirFlag;
        if (noCache) cfg.cacheDir.clear();
        if (!outDirFlag.empty()) cfg.outDir = outDirFlag;
        if (digitsFlag) cfg.digits = digitsFlag;
        if (!tolFlag.empty()) cfg.tolerance = tolFlag;
        if (jobsFlag) cfg.jobs = jobsFlag;
        cfg.validate();
    }
    fs::path emit(const std::string& name, const std::string& content) {
        fs::path p = cfg.outDir / name;
        atomicWrite(p, content);
        written.push_back(p);
        return p;
    }
};

// ---- cached computations; every result goes through its text form ----

std::string seriesText(const Context& ctx, int k, int order) {
    std::string input = "k=" + std::to_string(k) + ";order=" + std::to_string(order);
    return ctx.cache().fetch("bt-series", input, [&] {
        BifSeriesResult r = solveBifurcationSeries(k, order);
        std::ostringstream os;
        for (size_t j = 0; j < r.B.size(); ++j) os << "B " << j << ' ' << qs(r.B[j]) << '\n';
        for (size_t j = 1; j < r.b.size(); ++j) os << "b " << j << ' ' << qs(r.b[j]) << '\n';
        return os.str();
    });
}

struct SeriesData {
    std::vector<Q> B, b;  // b[0] unused
};

SeriesData parseSeries(const std::string& text) {
    SeriesData s;
    s.b.push_back(Q(0));
    std::istringstream in(text);
    std::string kind, val;
    size_t j;
    while (in >> kind >> j >> val) {
        Q q(val);
        q.canonicalize();
        (kind == "B" ? s.B : s.b).push_back(q);
    }
    return s;
}

// b-series with `terms` coefficients: the quartic relation through M^9 for
// up to four terms, the sextic one beyond.
SeriesData seriesTerms(const Context& ctx, int terms, int k = 0) {
    if (terms < 1) throw std::invalid_argument("need at least one term");
    if (k == 0) k = terms <= 4 ? 4 : 6;
    int order = k == 4 ? 2 * terms + 1 : 2 * terms;
    if (k == 4 && terms > 4) throw std::invalid_argument("the quartic relation gives at most four terms");
    SeriesData s = parseSeries(seriesText(ctx, k, order));
    s.b.resize(static_cast<size_t>(terms) + 1);
    return s;
}

std::string certText(const Context& ctx, const std::string& op, const std::string& input,
                     const std::function<CertifyOutcome()>& run) {
    return ctx.cache().fetch(op, input, [&] {
        CertifyOutcome o = run();
        return o.certified() ? o.certificate->serialize() : "indeterminate " + o.reason + "\n";
    });
}

// Writes the certificate (or the reason) and returns true when certified.
bool reportCert(Context& ctx, const std::string& text, const std::string& file, json& summary) {
    if (text.rfind("indeterminate", 0) == 0) {
        std::string reason = text.substr(14);
        if (!reason.empty() && reason.back() == '\n') reason.pop_back();
        summary["status"] = "indeterminate";
        summary["reason"] = reason;
        std::cout << "indeterminate: " << reason << "\n";
        return false;
    }
    BoundCertificate c = BoundCertificate::parse(text);
    fs::path p = ctx.emit(file, text);
    summary["status"] = "certified";
    summary["direction"] = toText(c.direction);
    summary["b"] = qs(c.b);
    summary["n"] = qs(c.n);
    summary["facts"] = c.facts.size();
    summary["file"] = p.string();
    std::cout << "certified: b = " << qs(c.b) << " is " << (c.direction == Direction::Upper ? "an " : "a ") << toText(c.direction) << " bound at n = " << qs(c.n) << " ("
              << c.facts.size() << " facts) -> " << p.string() << "\n";
    return true;
}

std::string bstarText(const Context& ctx, const std::string& fam, const Q& n) {
    std::string input = fam + ";n=" + qs(n) + ";digits=" + std::to_string(ctx.cfg.digits) + ";tol=" + ctx.cfg.tolerance;
    return ctx.cache().fetch("bstar-numeric", input, [&] {
        PrecisionScope scope(ctx.cfg.digits);
        Real tol(ctx.cfg.tolerance);
        BStarEstimate e = fam == "bt" ? bStarNumeric(n, tol, ctx.cfg.digits) : bStarFamily1Numeric(n, tol, ctx.cfg.digits);
        return toDecimal(e.b, static_cast<int>(ctx.cfg.digits) - 5) + " " + toDecimal(e.err, 4) + " " + std::to_string(e.shots) + "\n";
    });
}

struct BStarValue {
    std::string b, err;
    int shots = 0;
};
BStarValue parseBStar(const std::string& t) {
    std::istringstream in(t);
    BStarValue v;
    in >> v.b >> v.err >> v.shots;
    return v;
}

// ---- subcommands ----

int cmdFamily1Bounds(Context& ctx, const std::string& nText, int dv) {
    Q n = parseRational(nText);
    if (n <= 0) throw std::invalid_argument("n must be positive");
    SimpleBounds sb = family1SimpleBounds(n);
    std::ostringstream csv;
    csv << "kind,lower,upper\n";
    csv << "elementary," << qs(sb.lower) << ',' << qs(sb.upper) << '\n';
    json s;
    s["n"] = qs(n);
    s["elementary"] = {{"lower", qs(sb.lower)}, {"upper", qs(sb.upper)}};
    std::cout << "elementary bounds: " << qs(sb.lower) << " < b* < " << qs(sb.upper) << "\n";
    if (dv == 4 || dv == 5) {
        GraphSandwich g = graphSandwich(dv);
        Q alpha = dv == 4 ? Q(1, 8) : Q(1, 2);
        Q lo = sandwichB(g, n, -alpha), hi = sandwichB(g, n, alpha);
        csv << "graph-" << dv + 1 << "-" << dv << ',' << qs(lo) << ',' << qs(hi) << '\n';
        s["sandwich"] = {{"degrees", std::to_string(dv + 1) + "," + std::to_string(dv)}, {"lower", qs(lo)}, {"upper", qs(hi)}};
        std::cout << "candidate sandwich (" << dv + 1 << "," << dv << "): " << qs(lo) << " .. " << qs(hi)
                  << " (certify each side with `family1 certify`)\n";
    }
    ctx.emit("family1_bounds_n" + slug(n) + ".csv", csv.str());
    ctx.emit("family1_bounds_n" + slug(n) + ".json", s.dump(2) + "\n");
    return kOk;
}

int cmdFamily1Certify(Context& ctx, const std::string& nText, const std::string& alphaText, int dv) {
    Q n = parseRational(nText), alpha = parseRational(alphaText);
    std::string input = "n=" + qs(n) + ";alpha=" + qs(alpha) + ";dv=" + std::to_string(dv);
    std::string text = certText(ctx, "family1-certify", input, [&] { return certifyGraphBound(n, alpha, dv); });
    json s;
    bool ok = reportCert(ctx, text, "family1_n" + slug(n) + "_a" + slug(alpha) + "_d" + std::to_string(dv) + ".cert", s);
    ctx.emit("family1_certify_n" + slug(n) + "_a" + slug(alpha) + "_d" + std::to_string(dv) + ".json", s.dump(2) + "\n");
    return ok ? kOk : kIndeterminate;
}

int cmdBtSeries(Context& ctx, int terms, int k, const std::string& emit) {
    SeriesData s = seriesTerms(ctx, terms, k);
    std::vector<Q> h = perkoFromBSeries(s.b);
    std::ostringstream csv;
    csv << "j,b_coefficient,denominator_factors\n";
    for (int j = 1; j <= terms; ++j)
        csv << j << ',' << qs(s.b[static_cast<size_t>(j)]) << ',' << factorText(s.b[static_cast<size_t>(j)].get_den()) << '\n';
    std::ostringstream txt;
    txt << "b*(n) =";
    for (int j = 1; j <= terms; ++j) txt << (j > 1 ? " + " : " ") << "(" << qs(s.b[static_cast<size_t>(j)]) << ") n^(" << j << "/2)";
    txt << " + ...\n";
    txt << "B(M) =";
    for (size_t j = 2; j < s.B.size() && j <= static_cast<size_t>(2 * terms); j += 2) txt << (j > 2 ? " + " : " ") << "(" << qs(s.B[j]) << ") M^" << j;
    txt << " + ...\n";
    if (emit == "csv") {
        std::cout << csv.str();
        ctx.emit("bt_series_" + std::to_string(terms) + ".csv", csv.str());
    } else {
        std::cout << txt.str();
        ctx.emit("bt_series_" + std::to_string(terms) + ".txt", txt.str());
    }
    return kOk;
}

int cmdBtCertify(Context& ctx, const std::string& nText, const std::string& bText, int k) {
    Q n = parseRational(nText), b = parseRational(bText);
    std::string input = "n=" + qs(n) + ";b=" + qs(b) + ";k=" + std::to_string(k);
    std::string text = certText(ctx, "bt-certify", input, [&] { return certifyLoopBound(n, b, k); });
    json s;
    bool ok = reportCert(ctx, text, "bt_n" + slug(n) + "_b" + slug(b) + "_k" + std::to_string(k) + ".cert", s);
    ctx.emit("bt_certify_n" + slug(n) + "_b" + slug(b) + "_k" + std::to_string(k) + ".json", s.dump(2) + "\n");
    return ok ? kOk : kIndeterminate;
}

int cmdBtNumeric(Context& ctx, const std::string& nText, const std::string& family, std::vector<double> grid,
                 int terms) {
    if (family != "bt" && family != "family1") throw std::invalid_argument("family must be bt or family1");
    if (!grid.empty()) {
        if (family != "bt") throw std::invalid_argument("grids are for the bt family");
        if (grid.size() != 3 || grid[2] < 1) throw std::invalid_argument("--grid takes LOG10_LO LOG10_HI COUNT");
        std::vector<Q> ns = logGrid(grid[0], grid[1], static_cast<int>(grid[2]));
        SeriesData s = seriesTerms(ctx, terms);
        auto values = parallelMap(static_cast<int>(ns.size()), ctx.cfg.jobs, [&](int i) { return bstarText(ctx, "bt", ns[static_cast<size_t>(i)]); });
        PrecisionScope scope(ctx.cfg.digits);
        std::ostringstream csv;
        csv << "n,b_star_num,err,series_k,deviation\n";
        Real worst(0);
        for (size_t i = 0; i < ns.size(); ++i) {
            BStarValue v = parseBStar(values[i]);
            Real dev = abs(seriesValue(s.b, terms, ns[i]) - Real(v.b));
            if (dev > worst) worst = dev;
            csv << qs(ns[i]) << ',' << v.b << ',' << v.err << ',' << terms << ',' << toDecimal(dev, 4) << '\n';
        }
        fs::path p = ctx.emit("bt_numeric_grid.csv", csv.str());
        std::cout << ns.size() << " values of n; max |" << terms << "-term series - b*_num| = " << toDecimal(worst, 4) << "\n";
        return kOk;
    }
    Q n = parseRational(nText);
    BStarValue v = parseBStar(bstarText(ctx, family, n));
    json s;
    s["family"] = family;
    s["n"] = qs(n);
    s["b_star_num"] = v.b;
    s["err"] = v.err;
    s["shots"] = v.shots;
    s["digits"] = ctx.cfg.digits;
    std::cout << "b*_num(" << qs(n) << ") = " << v.b << " +- " << v.err << "\n";
    if (family == "bt" && n == Q(1, 4)) {
        PrecisionScope scope(ctx.cfg.digits);
        std::string g = toDecimal(Real(v.b) + Real(1) / 2, 16);
        s["gamma_num"] = g;
        std::cout << "gamma_num = b*_num(1/4) + 1/2 = " << g << "\n";
    }
    ctx.emit(family + "_numeric_n" + slug(n) + ".json", s.dump(2) + "\n");
    return kOk;
}

struct Bracket {
    Q lower, upper;
};
// Rational-eigenvalue points for n = 1/4; k = 3 from (u, v) = (19, 8) and (8, 3).
std::optional<Bracket> defaultBracket(int k) {
    if (k == 3) return Bracket{dioParam(19, 8).b, dioParam(8, 3).b};
    if (k == 4) return Bracket{Q(1300991, 3571092), Q(411011, 1125740)};
    return std::nullopt;
}

int cmdGammaBracket(Context& ctx, int k, const std::string& lowerText, const std::string& upperText) {
    auto def = defaultBracket(k);
    if ((lowerText.empty() || upperText.empty()) && !def)
        throw std::invalid_argument("no default candidates for k = " + std::to_string(k) + "; pass --lower and --upper");
    Q lo = lowerText.empty() ? def->lower : parseRational(lowerText);
    Q hi = upperText.empty() ? def->upper : parseRational(upperText);
    Q n(1, 4);
    json s;
    s["k"] = k;
    bool all = true;
    for (auto [name, b] : {std::pair<std::string, Q>{"lower", lo}, {"upper", hi}}) {
        std::string input = "n=" + qs(n) + ";b=" + qs(b) + ";k=" + std::to_string(k);
        std::string text = certText(ctx, "bt-certify", input, [&] { return certifyLoopBound(n, b, k); });
        json part;
        bool ok = reportCert(ctx, text, "gamma_k" + std::to_string(k) + "_" + name + ".cert", part);
        if (ok && part["direction"] != name) {
            part["status"] = "wrong-side";
            std::cout << "candidate " << qs(b) << " certified as " << std::string(part["direction"]) << ", not " << name << "\n";
            ok = false;
        }
        all = all && ok;
        s[name] = part;
    }
    if (all) {
        s["gamma_interval"] = {qs(lo + Q(1, 2)), qs(hi + Q(1, 2))};
        PrecisionScope scope(30);
        std::cout << "gamma in (" << qs(lo + Q(1, 2)) << ", " << qs(hi + Q(1, 2)) << ") ~ (" << toDecimal(toReal(lo + Q(1, 2)), 12)
                  << ", " << toDecimal(toReal(hi + Q(1, 2)), 12) << ")\n";
    }
    ctx.emit("gamma_k" + std::to_string(k) + ".json", s.dump(2) + "\n");
    return all ? kOk : kIndeterminate;
}

int cmdPerkoExpand(Context& ctx, int terms) {
    SeriesData s = seriesTerms(ctx, terms);
    std::vector<Q> h = perkoFromBSeries(s.b);
    std::ostringstream csv, txt;
    csv << "power,coefficient\n";
    txt << "h(mu2) =";
    for (int j = 1; j <= terms; ++j) {
        csv << 2 * j - 1 << ',' << qs(h[static_cast<size_t>(j)]) << '\n';
        txt << (j > 1 ? " + " : " ") << "(" << qs(h[static_cast<size_t>(j)]) << ") mu2^" << 2 * j - 1;
    }
    txt << " + ...\n";
    std::cout << txt.str();
    ctx.emit("perko_h_" + std::to_string(terms) + ".csv", csv.str());
    return kOk;
}

int cmdPrimesTable(Context& ctx, int terms) {
    SeriesData s = seriesTerms(ctx, terms);
    std::ostringstream csv;
    csv << "series,index,denominator,factors\n";
    for (int j = 1; j <= terms; ++j) {
        const Q& c = s.b[static_cast<size_t>(j)];
        csv << "b," << j << ',' << c.get_den().get_str() << ',' << factorText(c.get_den()) << '\n';
        std::cout << "n^(" << j << "/2): " << c.get_den().get_str() << " = " << factorText(c.get_den()) << "\n";
    }
    for (int j = 2; j <= 2 * terms; j += 2) {
        const Q& c = s.B[static_cast<size_t>(j)];
        csv << "B," << j << ',' << c.get_den().get_str() << ',' << factorText(c.get_den()) << '\n';
    }
    ctx.emit("primes_table_" + std::to_string(terms) + ".csv", csv.str());
    return kOk;
}

int cmdVerify(const std::string& file) {
    BoundCertificate c = BoundCertificate::parse(readFile(file));
    if (auto failure = verifyCertificate(c)) {
        std::cout << "FAILED: " << *failure << "\n";
        return kError;
    }
    std::cout << "OK: " << c.family << " n = " << qs(c.n) << ", b = " << qs(c.b) << " is " << (c.direction == Direction::Upper ? "an " : "a ") << toText(c.direction) << " bound ("
              << c.facts.size() << " facts replayed)\n";
    return kOk;
}

int cmdReport(Context& ctx) {
    json r;
    r["version"] = kToolkitVersion;
    int code = kOk;
    auto note = [&](int c) {
        if (c == kIndeterminate && code == kOk) code = kIndeterminate;
    };
    SeriesData s = seriesTerms(ctx, 4);
    json series = json::array();
    for (int j = 1; j <= 4; ++j) series.push_back(qs(s.b[static_cast<size_t>(j)]));
    r["bt_series"] = series;
    std::cout << "[series] b*(n) coefficients: ";
    for (auto& c : series) std::cout << std::string(c) << ' ';
    std::cout << "\n";

    BStarValue v = parseBStar(bstarText(ctx, "bt", Q(1, 4)));
    PrecisionScope scope(ctx.cfg.digits);
    Real gnum = Real(v.b) + Real(1) / 2;
    r["gamma_num"] = toDecimal(gnum, 16);
    std::cout << "[numeric] gamma_num = " << toDecimal(gnum, 16) << "\n";
    json gk = json::array();
    for (int k = 1; k <= 4; ++k) {
        Real g = seriesValue(s.b, k, Q(1, 4)) + Real(1) / 2;
        gk.push_back({{"k", k}, {"gamma_k", toDecimal(g, 12)}, {"deviation", toDecimal(abs(g - gnum), 3)}});
        std::cout << "[numeric] gamma_" << k << " = " << toDecimal(g, 12) << ", |gamma_k - gamma_num| = " << toDecimal(abs(g - gnum), 3) << "\n";
    }
    r["gamma_k"] = gk;

    std::cout << "[bracket] k = 3\n";
    note(cmdGammaBracket(ctx, 3, "", ""));
    r["gamma_bracket_k3"] = json::parse(readFile(ctx.cfg.outDir / "gamma_k3.json"));

    json f1 = json::array();
    for (const char* a : {"1/8", "-1/8"}) {
        std::cout << "[family1] n = 15, alpha = " << a << "\n";
        note(cmdFamily1Certify(ctx, "15", a, 4));
    }
    BStarValue f = parseBStar(bstarText(ctx, "family1", Q(15)));
    r["family1_n15_numeric"] = f.b;
    std::cout << "[family1] b*_num(15) = " << f.b << "\n";
    fs::path p = ctx.emit("report.json", r.dump(2) + "\n");
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic bounds and numerical checks for homoclinic and heteroclinic bifurcation curves"};
    app.require_subcommand(1);
    Context ctx;
    app.add_option("--config", ctx.configFile, "keyed-text config file (key = value)");
    app.add_option("--cache-dir", ctx.cacheDirFlag, "result cache directory (default: $HCB_CACHE_DIR or ~/.cache/hcb)");
    app.add_flag("--no-cache", ctx.noCache, "disable the result cache");
    app.add_option("--out", ctx.outDirFlag, "directory for artifacts (default: .)");
    app.add_option("--digits", ctx.digitsFlag, "working precision of the numerical oracle");
    app.add_option("--tol", ctx.tolFlag, "bisection tolerance of the numerical oracle");
    app.add_option("--jobs", ctx.jobsFlag, "worker threads for independent tasks");

    std::function<int()> action;

    auto* f1 = app.add_subcommand("family1", "first family x' = y, y' = -x + b y + x y - n y^2");
    f1->require_subcommand(1);
    std::string f1n = "15", f1alpha = "1/8";
    int f1dv = 4;
    auto* f1b = f1->add_subcommand("bounds", "elementary bounds and the graph-curve sandwich");
    f1b->add_option("--n", f1n, "n (rational)");
    f1b->add_option("--dv", f1dv, "denominator degree of the graph curve (4 or 5)");
    f1b->callback([&] { action = [&] { return cmdFamily1Bounds(ctx, f1n, f1dv); }; });
    auto* f1c = f1->add_subcommand("certify", "certify b = centre(n) + alpha/n^power with a graph curve");
    f1c->add_option("--n", f1n, "n (rational)");
    f1c->add_option("--alpha", f1alpha, "offset alpha (rational)");
    f1c->add_option("--dv", f1dv, "denominator degree (4 or 5)");
    f1c->callback([&] { action = [&] { return cmdFamily1Certify(ctx, f1n, f1alpha, f1dv); }; });

    auto* bt = app.add_subcommand("bt", "Bogdanov-Takens family x' = y, y' = -n + b y + x^2 + x y");
    bt->require_subcommand(1);
    int terms = 4, kcurve = 0;
    std::string emit = "text";
    auto* bs = bt->add_subcommand("series", "terms of the bifurcation curve b*(n) in powers of n^(1/2)");
    bs->add_option("--order", terms, "number of terms");
    bs->add_option("--k", kcurve, "degree of the fitted curve (4 or 6; default by order)");
    bs->add_option("--emit", emit, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    bs->callback([&] { action = [&] { return cmdBtSeries(ctx, terms, kcurve, emit); }; });
    std::string btn = "1/4", btb;
    int btk = 3;
    auto* bc = bt->add_subcommand("certify", "certify a one-sided bound with a closed algebraic curve");
    bc->add_option("--n", btn, "n (rational, sqrt(n) rational)");
    bc->add_option("--b", btb, "b (rational, rational eigenvalues)")->required();
    bc->add_option("--k", btk, "curve degree");
    bc->callback([&] { action = [&] { return cmdBtCertify(ctx, btn, btb, btk); }; });
    std::string fam = "bt";
    std::vector<double> grid;
    int gridTerms = 4;
    auto* bn = bt->add_subcommand("numeric", "b*(n) by separatrix shooting");
    bn->add_option("--n", btn, "n (rational or decimal)");
    bn->add_option("--family", fam, "bt or family1")->check(CLI::IsMember({"bt", "family1"}));
    bn->add_option("--grid", grid, "LOG10_LO LOG10_HI COUNT: log-spaced grid compared with the series")->expected(3);
    bn->add_option("--terms", gridTerms, "series terms for --grid");
    bn->callback([&] { action = [&] { return cmdBtNumeric(ctx, btn, fam, grid, gridTerms); }; });

    auto* gm = app.add_subcommand("gamma", "bounds on gamma = b*(1/4) + 1/2");
    gm->require_subcommand(1);
    int gk = 3;
    std::string glo, ghi;
    auto* gb = gm->add_subcommand("bracket", "certify a lower and an upper bound");
    gb->add_option("--k", gk, "curve degree");
    gb->add_option("--lower", glo, "candidate lower bound for b*(1/4)");
    gb->add_option("--upper", ghi, "candidate upper bound for b*(1/4)");
    gb->callback([&] { action = [&] { return cmdGammaBracket(ctx, gk, glo, ghi); }; });

    auto* pk = app.add_subcommand("perko", "Perko's form x' = y, y' = x(x - 1) + mu1 y + mu2 x y");
    pk->require_subcommand(1);
    int pterms = 4;
    auto* pe = pk->add_subcommand("expand", "mu1 = h(mu2) along the homoclinic curve");
    pe->add_option("--terms", pterms, "number of terms");
    pe->callback([&] { action = [&] { return cmdPerkoExpand(ctx, pterms); }; });

    auto* pr = app.add_subcommand("primes", "prime structure of the series denominators");
    pr->require_subcommand(1);
    int prTerms = 4;
    auto* pt = pr->add_subcommand("table", "factor the denominators");
    pt->add_option("--terms", prTerms, "number of terms");
    pt->callback([&] { action = [&] { return cmdPrimesTable(ctx, prTerms); }; });

    std::string certFile;
    auto* vf = app.add_subcommand("verify", "replay a certificate file");
    vf->add_option("certificate", certFile, "certificate file")->required();
    vf->callback([&] { action = [&] { return cmdVerify(certFile); }; });

    auto* rp = app.add_subcommand("report", "series, gamma bracket, numeric checks and first-family certificates");
    rp->callback([&] { action = [&] { return cmdReport(ctx); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kUsage;
    }
    try {
        ctx.finalize();
        int code = action();
        for (auto& p : ctx.written) std::cout << "wrote " << p.string() << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
