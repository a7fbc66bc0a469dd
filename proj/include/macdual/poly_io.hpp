#pragma once

// Text form of polynomials:
//   poly := ['-'] term (('+'|'-') term)*
//   term := coeff ['*' monomial] | monomial
//   coeff := int ['/' int]
//   monomial := factor ('*' factor)*
//   factor := ('x'|'y') index ['^' int]
// e.g. "y2*y3^3+y2^4*y3+y1^3*y3^2+y1^3*y2^3". Printing is canonical:
// terms ascend in the grlex order and no whitespace is emitted.

#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "macdual/poly.hpp"

namespace macdual {

inline std::string to_string(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    const char letter = p.flavor() == Flavor::Ring ? 'x' : 'y';
    for (const auto& [e, c] : p.terms()) {
        const bool neg = c < 0;
        if (!first || neg) out += neg ? '-' : '+';
        first = false;
        Rat a = neg ? Rat(-c) : c;
        if (e.is_zero()) {
            out += a.get_str();
            continue;
        }
        if (a != 1) {
            out += a.get_str();
            out += '*';
        }
        bool first_factor = true;
        for (int i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_factor) out += '*';
            first_factor = false;
            out += letter;
            out += std::to_string(i + 1);
            if (e[i] > 1) {
                out += '^';
                out += std::to_string(e[i]);
            }
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const SparsePoly& p) {
    return os << to_string(p);
}

namespace detail {

struct RawPoly {
    // exponent maps keyed by 0-based variable index, with signed coefficients
    std::vector<std::pair<std::map<int, int>, Rat>> terms;
    char letter = 0;  // 'x', 'y' or 0 for a constant
    int max_index = 0;
};

class PolyParser {
public:
    PolyParser(std::string_view s, int line) : s_(s), line_(line) {}

    RawPoly run() {
        skip_ws();
        if (at_end()) fail("empty polynomial");
        int sign = 1;
        if (peek() == '-') {
            ++i_;
            sign = -1;
        }
        parse_term(sign);
        skip_ws();
        while (!at_end()) {
            char c = peek();
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++i_;
            parse_term(c == '-' ? -1 : 1);
            skip_ws();
        }
        return std::move(raw_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, line_, static_cast<int>(i_) + 1);
    }

    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
    }

    Int parse_int() {
        skip_ws();
        std::size_t start = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        if (i_ == start) fail("expected integer");
        return Int(std::string(s_.substr(start, i_ - start)), 10);
    }

    int parse_small_int(const char* what, int max_value) {
        Int v = parse_int();
        if (v > max_value) fail(std::string(what) + " too large");
        return static_cast<int>(v.get_si());
    }

    void parse_term(int sign) {
        skip_ws();
        if (at_end()) fail("expected term");
        Rat coeff = sign;
        bool have_monomial_next = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int num = parse_int();
            Int den = 1;
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++i_;
                den = parse_int();
                if (den == 0) fail("zero denominator");
            }
            Rat q(num, den);
            q.canonicalize();
            coeff *= q;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++i_;
                have_monomial_next = true;
            }
        } else if (peek() == 'x' || peek() == 'y') {
            have_monomial_next = true;
        } else {
            fail("expected term");
        }

        std::map<int, int> exps;
        if (have_monomial_next) parse_monomial(exps);
        raw_.terms.emplace_back(std::move(exps), coeff);
    }

    void parse_monomial(std::map<int, int>& exps) {
        parse_factor(exps);
        skip_ws();
        while (!at_end() && peek() == '*') {
            ++i_;
            parse_factor(exps);
            skip_ws();
        }
    }

    void parse_factor(std::map<int, int>& exps) {
        skip_ws();
        if (at_end() || (peek() != 'x' && peek() != 'y')) fail("expected variable");
        char letter = peek();
        if (raw_.letter == 0)
            raw_.letter = letter;
        else if (raw_.letter != letter)
            fail("mixed ring (x) and dual (y) variables");
        ++i_;
        int index = parse_small_int("variable index", 10000);
        if (index < 1) fail("variable indices start at 1");
        raw_.max_index = std::max(raw_.max_index, index);
        int e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++i_;
            e = parse_small_int("exponent", 1000000);
        }
        exps[index - 1] += e;
    }

    std::string_view s_;
    int line_;
    std::size_t i_ = 0;
    RawPoly raw_;
};

inline SparsePoly realize(const RawPoly& raw, Flavor expected, int nvars, int line) {
    const char want = expected == Flavor::Ring ? 'x' : 'y';
    if (raw.letter != 0 && raw.letter != want)
        throw parse_error(std::string("expected ") +
                              (expected == Flavor::Ring ? "ring (x)" : "dual (y)") +
                              " variables",
                          line, 1);
    if (nvars < 0) nvars = std::max(raw.max_index, 1);
    if (raw.max_index > nvars)
        throw parse_error("variable index " + std::to_string(raw.max_index) +
                              " exceeds variable count " + std::to_string(nvars),
                          line, 1);
    SparsePoly p(expected, nvars);
    for (const auto& [exps, c] : raw.terms) {
        Exponent e(nvars);
        for (const auto& [var, k] : exps) e[var] = k;
        p.add_term(e, c);
    }
    return p;
}

}  // namespace detail

// nvars == -1 infers the count from the largest index that occurs.
inline SparsePoly parse_poly(std::string_view text, Flavor expected, int nvars = -1,
                             int line = 1) {
    detail::PolyParser parser(text, line);
    return detail::realize(parser.run(), expected, nvars, line);
}

struct PolyFileData {
    std::optional<Weighting> weights;
    std::vector<SparsePoly> polys;
    int nvars = 0;
};

// One polynomial per line, '#' comments, optional "weights: a1,a2,..."
// header line. The variable count is the largest of the highest index
// used, the weights length, and min_nvars.
inline PolyFileData read_poly_file(std::istream& in, Flavor expected, int min_nvars = 0) {
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, detail::RawPoly>> raws;
    std::optional<std::vector<int>> weights;
    int max_index = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        std::string body = line.substr(a, b - a + 1);
        if (body.rfind("weights:", 0) == 0) {
            if (weights) throw parse_error("duplicate weights line", lineno, 1);
            std::vector<int> w;
            std::string rest = body.substr(8);
            std::size_t p = 0;
            while (p < rest.size()) {
                while (p < rest.size() && (rest[p] == ' ' || rest[p] == ',')) ++p;
                if (p >= rest.size()) break;
                std::size_t q = p;
                while (q < rest.size() && std::isdigit(static_cast<unsigned char>(rest[q]))) ++q;
                if (q == p) throw parse_error("bad weights entry", lineno, static_cast<int>(p) + 9);
                w.push_back(std::stoi(rest.substr(p, q - p)));
                p = q;
            }
            if (w.empty()) throw parse_error("empty weights line", lineno, 1);
            weights = std::move(w);
            continue;
        }
        detail::PolyParser parser(body, lineno);
        auto raw = parser.run();
        max_index = std::max(max_index, raw.max_index);
        raws.emplace_back(lineno, std::move(raw));
    }
    PolyFileData out;
    int n = std::max({max_index, weights ? static_cast<int>(weights->size()) : 0, min_nvars});
    if (n == 0) n = 1;
    if (weights && static_cast<int>(weights->size()) < max_index)
        throw parse_error("weights line shorter than highest variable index", 1, 1);
    out.nvars = n;
    if (weights) out.weights = Weighting(*weights);
    for (const auto& [ln, raw] : raws) out.polys.push_back(detail::realize(raw, expected, n, ln));
    return out;
}

}  // namespace macdual
