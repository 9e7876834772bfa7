#include "hcb/bpoly.hpp"

#include <stdexcept>

namespace hcb {

QBPoly parseQBPoly(const std::string& text) {
    QBPoly r;
    std::string t = text;
    while (!t.empty() && (t.back() == ' ' || t.back() == '\n')) t.pop_back();
    if (t.empty()) throw std::invalid_argument("empty polynomial text");
    if (t == "0") return r;
    size_t pos = 0;
    const std::string sep = " + ";
    for (;;) {
        size_t e = t.find(sep, pos);
        std::string term = t.substr(pos, e == std::string::npos ? std::string::npos : e - pos);
        size_t mx = term.rfind("*x^"), my = term.rfind("*y^");
        if (mx == std::string::npos || my == std::string::npos || my < mx)
            throw std::invalid_argument("bad monomial: " + term);
        Q c = parseQ(term.substr(0, mx));
        int i = std::stoi(term.substr(mx + 3, my - mx - 3));
        int j = std::stoi(term.substr(my + 3));
        r.add(i, j, c);
        if (e == std::string::npos) break;
        pos = e + sep.size();
    }
    return r;
}

}  // namespace hcb
