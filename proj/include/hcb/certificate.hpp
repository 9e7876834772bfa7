// Bound certificates: keyed text records carrying every Sturm count and sign
// evaluation the claim rests on, so a verifier can replay them with the
// exact kernel alone.
#pragma once

#include "hcb/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hcb {

enum class Direction { Lower, Upper };  // Lower: b < b*(n).  Upper: b > b*(n).
enum class Crossing { Inward, Outward };
enum class Evidence { Contact, Loop };

std::string toText(Direction d);
std::string toText(Crossing c);

// The one table mapping evidence to the side of the bifurcation value.
// Contact: sign of M on the region (+1 lower, -1 upper, 0 undecided).
// Loop: inward crossing gives lower, outward upper.
std::optional<Direction> directionFromContact(int sign);
Direction directionFromCrossing(Crossing c);

// A kernel fact.  Arguments are canonical texts (polynomials in x, rationals,
// "-inf"/"inf"); `result` is what the kernel returned.
//   sturm     poly lo hi          -> distinct roots in (lo, hi]
//   sign      poly point          -> sign of poly(point)
//   rootsign  poly lo hi q        -> sign of q at the single root of poly in (lo, hi]
//   factor    poly odd even       -> 1 if poly = odd * even^2
//   nonzero   poly                -> 1 if poly is not the zero polynomial
struct Fact {
    std::string kind;
    std::vector<std::string> args;
    std::string result;
    std::string note;  // what the fact is for; not part of the replay

    friend bool operator==(const Fact& a, const Fact& b) {
        return a.kind == b.kind && a.args == b.args && a.result == b.result;
    }
};

// Recompute one fact; returns the kernel's answer.
std::string evaluateFact(const Fact& f);

struct BoundCertificate {
    std::string family;  // "family1" or "bt"
    Q n, b;
    Direction direction = Direction::Lower;
    Evidence evidence = Evidence::Contact;
    std::map<std::string, std::string> data;  // curve and fit description
    std::vector<Fact> facts;
    std::string storedDigest;  // as read by parse(); empty for fresh certificates

    std::string body() const;       // everything except the digest line
    std::string digest() const;     // SHA-256 of body()
    std::string serialize() const;  // body() + "digest <hex>\n"
    static BoundCertificate parse(const std::string& text);
};

std::string sha256Hex(const std::string& bytes);

}  // namespace hcb
