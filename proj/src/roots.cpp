#include "hcb/roots.hpp"

#include <cctype>
#include <stdexcept>

namespace hcb {

QPoly squarefreePart(const QPoly& p) {
    if (p.isZeroPoly()) throw std::domain_error("square-free part of zero polynomial");
    if (p.degree() <= 0) return monic(p);
    QPoly g = gcd(p, p.derivative());
    return monic(divmod(p, g).first);
}

std::pair<QPoly, QPoly> oddEvenSplit(const QPoly& p) {
    if (p.isZeroPoly()) throw std::domain_error("square-free split of zero polynomial");
    // Yun's square-free factorization p = c * prod a_i^i.
    QPoly odd(p.lc()), even(Q(1));
    if (p.degree() <= 0) return {odd, even};
    QPoly d = p.derivative();
    QPoly c = gcd(p, d);
    QPoly w = divmod(p, c).first, y = divmod(d, c).first;
    QPoly z = y - w.derivative();
    for (int i = 1; w.degree() > 0; ++i) {
        QPoly g = gcd(w, z);
        if (i % 2) odd = odd * g;
        for (int k = 0; k < i / 2; ++k) even = even * g;
        w = divmod(w, g).first;
        y = divmod(z, g).first;
        z = y - w.derivative();
    }
    return {odd, even};
}

SturmSequence::SturmSequence(const QPoly& p) {
    if (p.isZeroPoly()) throw std::domain_error("Sturm sequence of zero polynomial");
    QPoly s = squarefreePart(p);
    seq_.push_back(s);
    if (s.degree() <= 0) return;
    seq_.push_back(s.derivative());
    for (;;) {
        QPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.isZeroPoly()) break;
        // Positive rescaling keeps the signs and tames coefficient growth.
        seq_.push_back(-primitiveIntegerPart(r));
        if (sgn(seq_.back().lc()) != -sgn(r.lc())) seq_.back() = -seq_.back();
    }
}

static int countChanges(const std::vector<int>& s) {
    int v = 0, last = 0;
    for (int x : s) {
        if (x == 0) continue;
        if (last != 0 && x != last) ++v;
        last = x;
    }
    return v;
}

int SturmSequence::variations(const Q& x) const {
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& p : seq_) s.push_back(sgn(p(x)));
    return countChanges(s);
}

int SturmSequence::variationsAtInf(int side) const {
    std::vector<int> s;
    for (const auto& p : seq_) {
        int sg = sgn(p.lc());
        if (side < 0 && p.degree() % 2 == 1) sg = -sg;
        s.push_back(sg);
    }
    return countChanges(s);
}

int SturmSequence::count(const Bound& lo, const Bound& hi) const {
    if (lo && hi && *lo >= *hi) return 0;
    int vl = lo ? variations(*lo) : variationsAtInf(-1);
    int vh = hi ? variations(*hi) : variationsAtInf(+1);
    return vl - vh;
}

int sturmCount(const QPoly& p, const Bound& lo, const Bound& hi) {
    if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("sturmCount requires lo < hi");
    return SturmSequence(p).count(lo, hi);
}

QPoly primitiveIntegerPart(const QPoly& p) {
    if (p.isZeroPoly()) return p;
    Z l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Z g = 0;
    std::vector<Q> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Q t = c * Q(l);
        v.push_back(t);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num_mpz_t());
    }
    for (auto& c : v) c /= Q(g);
    QPoly r(std::move(v));
    if (sgn(r.lc()) < 0) r = -r;
    return r;
}

void RootBox::refine() {
    Q m = mid();
    SturmSequence s(definingPoly);
    if (s.count(lo, m) == 1) hi = m;
    else lo = m;
}

void RootBox::refineTo(const Q& w) {
    SturmSequence s(definingPoly);
    while (!(hi - lo < w)) {
        Q m = mid();
        if (s.count(lo, m) == 1) hi = m;
        else lo = m;
    }
}

Q cauchyBound(const QPoly& p) {
    Q m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Q t = abs(p.coeff(i) / p.lc());
        if (t > m) m = t;
    }
    return m + 1;
}

static void isolateRec(const SturmSequence& s, const QPoly& p, Q lo, Q hi, int cnt, std::vector<RootBox>& out) {
    if (cnt == 0) return;
    if (cnt == 1) {
        out.push_back(RootBox{p, lo, hi});
        return;
    }
    Q m = (lo + hi) / 2;
    int left = s.count(lo, m);
    isolateRec(s, p, lo, m, left, out);
    isolateRec(s, p, m, hi, cnt - left, out);
}

std::vector<RootBox> isolateRoots(const QPoly& p, const Bound& lo, const Bound& hi) {
    if (p.isZeroPoly()) throw std::domain_error("isolateRoots of zero polynomial");
    std::vector<RootBox> out;
    if (p.degree() <= 0) return out;
    QPoly sf = squarefreePart(p);
    SturmSequence s(sf);
    Q cb = cauchyBound(sf);
    Q l = lo ? *lo : -cb;
    Q h = hi ? *hi : cb;
    if (!lo && l > -cb) l = -cb;
    if (l >= h) return out;
    isolateRec(s, sf, l, h, s.count(l, h), out);
    return out;
}

std::vector<RootBox> isolateRoots(const QPoly& p) { return isolateRoots(p, std::nullopt, std::nullopt); }

int signAtRoot(const QPoly& q, RootBox box) {
    if (q.isZeroPoly()) return 0;
    if (q.degree() == 0) return sgn(q.lc());
    QPoly g = gcd(box.definingPoly, q);
    if (g.degree() > 0 && sturmCount(g, box.lo, box.hi) > 0) return 0;
    SturmSequence sp(box.definingPoly);
    SturmSequence sq(q);
    while (sq.count(box.lo, box.hi) > 0) {
        Q m = box.mid();
        if (sp.count(box.lo, m) == 1) box.hi = m;
        else box.lo = m;
    }
    return sgn(q(box.mid())) != 0 ? sgn(q(box.mid())) : sgn(q(box.hi));
}

int multiplicityAtRoot(const QPoly& p, const RootBox& box) {
    int m = 0;
    QPoly d = p;
    while (!d.isZeroPoly() && signAtRoot(d, box) == 0) {
        ++m;
        d = d.derivative();
    }
    return m;
}

// Simplest rational (smallest denominator) in the closed interval [a, b].
static Q simplestBetween(const Q& a, const Q& b) {
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    Q f(fl);
    if (f == a) return a;
    if (f + 1 <= b) return f + 1;
    return f + 1 / simplestBetween(1 / (b - f), 1 / (a - f));
}

// Two fractions with denominators <= maxDen differ by at least 1/maxDen^2,
// so on a narrow interval the simplest fraction is the only candidate.
static std::optional<Q> simplestIn(const Q& lo, const Q& hi, const Z& maxDen) {
    Q c = simplestBetween(lo, hi);
    if (c.get_den() > maxDen) return std::nullopt;
    return c;
}

std::vector<Q> rationalRoots(const QPoly& p) {
    if (p.isZeroPoly()) throw std::domain_error("rationalRoots of zero polynomial");
    std::vector<Q> out;
    if (p.degree() <= 0) return out;
    QPoly ip = primitiveIntegerPart(squarefreePart(p));
    Z lc = ip.lc().get_num();
    if (lc < 0) lc = -lc;
    Q w = Q(1) / Q(2 * lc * lc);
    for (auto box : isolateRoots(ip)) {
        if (isZero(ip(box.hi))) {
            out.push_back(box.hi);
            continue;
        }
        box.refineTo(w);
        if (isZero(ip(box.hi))) {
            out.push_back(box.hi);
            continue;
        }
        auto c = simplestIn(box.lo, box.hi, lc);
        if (c && *c > box.lo && isZero(ip(*c))) out.push_back(*c);
    }
    return out;
}

QPoly parseQPoly(const std::string& text, const std::string& var) {
    QPoly r;
    std::string t = text;
    size_t b = t.find_first_not_of(' ');
    if (b == std::string::npos) throw std::invalid_argument("empty polynomial text");
    t = t.substr(b);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t == "0") return r;
    size_t pos = 0;
    const std::string sep = " + ";
    const std::string mark = "*" + var + "^";
    while (pos <= t.size()) {
        size_t e = t.find(sep, pos);
        std::string term = t.substr(pos, e == std::string::npos ? std::string::npos : e - pos);
        size_t m = term.rfind(mark);
        if (m == std::string::npos) throw std::invalid_argument("bad monomial: " + term);
        Q c = parseQ(term.substr(0, m));
        int k = std::stoi(term.substr(m + mark.size()));
        if (k < 0) throw std::invalid_argument("negative exponent: " + term);
        r += QPoly::monomial(c, k);
        if (e == std::string::npos) break;
        pos = e + sep.size();
    }
    return r;
}

}  // namespace hcb
