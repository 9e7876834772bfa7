#include "hcb/certificate.hpp"
#include "hcb/roots.hpp"

#include <openssl/evp.h>

#include <sstream>
#include <stdexcept>

namespace hcb {

std::string toText(Direction d) { return d == Direction::Lower ? "lower" : "upper"; }
std::string toText(Crossing c) { return c == Crossing::Inward ? "inward" : "outward"; }

std::optional<Direction> directionFromContact(int sign) {
    if (sign > 0) return Direction::Lower;
    if (sign < 0) return Direction::Upper;
    return std::nullopt;
}

Direction directionFromCrossing(Crossing c) { return c == Crossing::Inward ? Direction::Lower : Direction::Upper; }

namespace {

Bound parseBound(const std::string& s) {
    if (s == "-inf" || s == "inf") return std::nullopt;
    return parseQ(s);
}

const std::string kSep = " | ";

std::vector<std::string> splitFields(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    for (;;) {
        size_t e = s.find(kSep, pos);
        out.push_back(s.substr(pos, e == std::string::npos ? std::string::npos : e - pos));
        if (e == std::string::npos) break;
        pos = e + kSep.size();
    }
    return out;
}

}  // namespace

std::string evaluateFact(const Fact& f) {
    auto need = [&](size_t k) {
        if (f.args.size() != k) throw std::invalid_argument("fact '" + f.kind + "' needs " + std::to_string(k) + " arguments");
    };
    if (f.kind == "sturm") {
        need(3);
        return std::to_string(sturmCount(parseQPoly(f.args[0]), parseBound(f.args[1]), parseBound(f.args[2])));
    }
    if (f.kind == "sign") {
        need(2);
        return std::to_string(signOf(parseQPoly(f.args[0])(parseQ(f.args[1]))));
    }
    if (f.kind == "rootsign") {
        need(4);
        QPoly p = parseQPoly(f.args[0]);
        Q lo = parseQ(f.args[1]), hi = parseQ(f.args[2]);
        if (sturmCount(p, lo, hi) != 1) return "no-single-root";
        return std::to_string(signAtRoot(parseQPoly(f.args[3]), RootBox{p, lo, hi}));
    }
    if (f.kind == "factor") {
        need(3);
        QPoly e = parseQPoly(f.args[2]);
        return parseQPoly(f.args[0]) == parseQPoly(f.args[1]) * e * e ? "1" : "0";
    }
    if (f.kind == "nonzero") {
        need(1);
        return parseQPoly(f.args[0]).isZeroPoly() ? "0" : "1";
    }
    throw std::invalid_argument("unknown fact kind '" + f.kind + "'");
}

std::string sha256Hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

std::string BoundCertificate::body() const {
    std::ostringstream os;
    os << "hcb-certificate 1\n"
       << "family " << family << "\n"
       << "n " << n << "\n"
       << "b " << b << "\n"
       << "direction " << toText(direction) << "\n"
       << "evidence " << (evidence == Evidence::Contact ? "contact" : "loop") << "\n";
    for (auto& [k, v] : data) os << "data " << k << kSep << v << "\n";
    for (auto& f : facts) {
        os << "fact " << f.kind;
        for (auto& a : f.args) os << kSep << a;
        os << kSep << "= " << f.result;
        if (!f.note.empty()) os << kSep << "# " << f.note;
        os << "\n";
    }
    return os.str();
}

std::string BoundCertificate::digest() const { return sha256Hex(body()); }

std::string BoundCertificate::serialize() const { return body() + "digest " + digest() + "\n"; }

BoundCertificate BoundCertificate::parse(const std::string& text) {
    BoundCertificate c;
    std::istringstream is(text);
    std::string line;
    bool header = false;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        auto sp = line.find(' ');
        std::string key = line.substr(0, sp), rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        auto bad = [&](const std::string& why) { return std::invalid_argument("certificate line " + std::to_string(lineNo) + ": " + why); };
        if (key == "hcb-certificate") {
            if (rest != "1") throw bad("unsupported version");
            header = true;
        } else if (key == "family") {
            c.family = rest;
        } else if (key == "n") {
            c.n = parseQ(rest);
        } else if (key == "b") {
            c.b = parseQ(rest);
        } else if (key == "direction") {
            if (rest == "lower") c.direction = Direction::Lower;
            else if (rest == "upper") c.direction = Direction::Upper;
            else throw bad("bad direction");
        } else if (key == "evidence") {
            if (rest == "contact") c.evidence = Evidence::Contact;
            else if (rest == "loop") c.evidence = Evidence::Loop;
            else throw bad("bad evidence kind");
        } else if (key == "data") {
            auto f = splitFields(rest);
            if (f.size() != 2) throw bad("bad data line");
            c.data[f[0]] = f[1];
        } else if (key == "fact") {
            auto f = splitFields(rest);
            Fact fact;
            fact.kind = f[0];
            size_t i = 1;
            for (; i < f.size() && f[i].rfind("= ", 0) != 0; ++i) fact.args.push_back(f[i]);
            if (i == f.size()) throw bad("fact without result");
            fact.result = f[i].substr(2);
            if (i + 1 < f.size() && f[i + 1].rfind("# ", 0) == 0) fact.note = f[i + 1].substr(2);
            c.facts.push_back(std::move(fact));
        } else if (key == "digest") {
            c.storedDigest = rest;
        } else {
            throw bad("unknown key '" + key + "'");
        }
    }
    if (!header) throw std::invalid_argument("not a certificate");
    return c;
}

}  // namespace hcb
