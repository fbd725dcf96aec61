#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigrad {

class BraidParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Word in the Artin generators. Letter +i is sigma_i (positive crossing of
/// strands i and i+1), -i its inverse.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    bool operator==(const BraidWord&) const = default;

    void validate() const {
        if (strands < 1) throw BraidParseError("strand count must be at least 1");
        for (int l : letters) {
            if (l == 0) throw BraidParseError("zero braid letter");
            if (std::abs(l) >= strands)
                throw BraidParseError("letter " + std::to_string(l) + " needs more than " +
                                      std::to_string(strands) + " strands");
        }
    }

    int crossings() const { return static_cast<int>(letters.size()); }
    int positive_crossings() const {
        int p = 0;
        for (int l : letters) p += l > 0;
        return p;
    }
    int negative_crossings() const { return crossings() - positive_crossings(); }
    int writhe() const { return positive_crossings() - negative_crossings(); }
};

/// Canonical text: "n=<strands>" followed by the letters.
inline std::string render_braid(const BraidWord& b) {
    std::ostringstream os;
    os << "n=" << b.strands;
    for (int l : b.letters) os << ' ' << l;
    return os.str();
}

inline std::string letters_string(const BraidWord& b) {
    std::ostringstream os;
    for (size_t i = 0; i < b.letters.size(); ++i) os << (i ? " " : "") << b.letters[i];
    return os.str();
}

/// Parses whitespace separated nonzero integers with an optional "n=<k>"
/// token. An explicit `strands` argument overrides both the token and the
/// inferred count max|letter|+1.
inline BraidWord parse_braid(const std::string& text, std::optional<int> strands = std::nullopt) {
    std::istringstream is(text);
    std::string tok;
    BraidWord b;
    std::optional<int> declared;
    int maxabs = 0;
    while (is >> tok) {
        if (tok.rfind("n=", 0) == 0) {
            try {
                size_t used = 0;
                declared = std::stoi(tok.substr(2), &used);
                if (used != tok.size() - 2) throw BraidParseError("bad strand token " + tok);
            } catch (const std::logic_error&) {
                throw BraidParseError("bad strand token " + tok);
            }
            continue;
        }
        int v = 0;
        try {
            size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) throw BraidParseError("bad braid letter " + tok);
        } catch (const BraidParseError&) {
            throw;
        } catch (const std::logic_error&) {
            throw BraidParseError("bad braid letter " + tok);
        }
        if (v == 0) throw BraidParseError("zero braid letter");
        b.letters.push_back(v);
        maxabs = std::max(maxabs, std::abs(v));
    }
    if (strands)
        b.strands = *strands;
    else if (declared)
        b.strands = *declared;
    else
        b.strands = maxabs + 1;
    b.validate();
    return b;
}

/// Underlying permutation: perm[i] is the final position of the strand that
/// starts at position i (0-based).
inline std::vector<int> braid_permutation(const BraidWord& b) {
    std::vector<int> at(b.strands);
    std::iota(at.begin(), at.end(), 0);
    for (int l : b.letters) {
        int p = std::abs(l) - 1;
        std::swap(at[p], at[p + 1]);
    }
    std::vector<int> perm(b.strands);
    for (int p = 0; p < b.strands; ++p) perm[at[p]] = p;
    return perm;
}

inline int closure_components(const BraidWord& b) {
    auto perm = braid_permutation(b);
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return cycles;
}

enum class MarkovKind {
    Conjugate,
    FarCommute,
    CancelPair,
    BraidRelation,
    StabilizePositive,
    StabilizeNegative,
    Destabilize
};

/// A move and its parameters. `position` indexes into the letter list; for
/// CancelPair a nonzero `letter` inserts letter/-letter at `position`, zero
/// removes the inverse pair found there.
struct MarkovMove {
    MarkovKind kind = MarkovKind::Conjugate;
    int position = 0;
    int letter = 0;
};

class MarkovError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline BraidWord apply_markov(const BraidWord& b, const MarkovMove& mv) {
    BraidWord r = b;
    auto& L = r.letters;
    const int len = static_cast<int>(L.size());
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw MarkovError(std::string("inapplicable move: ") + what);
    };
    switch (mv.kind) {
        case MarkovKind::Conjugate:
            need(mv.position >= 0 && mv.position <= len, "conjugation split out of range");
            std::rotate(L.begin(), L.begin() + mv.position, L.end());
            break;
        case MarkovKind::FarCommute:
            need(mv.position >= 0 && mv.position + 1 < len, "position out of range");
            need(std::abs(std::abs(L[mv.position]) - std::abs(L[mv.position + 1])) > 1, "letters not distant");
            std::swap(L[mv.position], L[mv.position + 1]);
            break;
        case MarkovKind::CancelPair:
            if (mv.letter != 0) {
                need(mv.position >= 0 && mv.position <= len, "position out of range");
                need(std::abs(mv.letter) < r.strands, "letter exceeds strands");
                L.insert(L.begin() + mv.position, {mv.letter, -mv.letter});
            } else {
                need(mv.position >= 0 && mv.position + 1 < len, "position out of range");
                need(L[mv.position] == -L[mv.position + 1], "not an inverse pair");
                L.erase(L.begin() + mv.position, L.begin() + mv.position + 2);
            }
            break;
        case MarkovKind::BraidRelation: {
            need(mv.position >= 0 && mv.position + 2 < len, "position out of range");
            int x = L[mv.position], y = L[mv.position + 1], z = L[mv.position + 2];
            need(x == z && std::abs(std::abs(x) - std::abs(y)) == 1 && (x > 0) == (y > 0),
                 "not a same-sign braid triple");
            L[mv.position] = y;
            L[mv.position + 1] = x;
            L[mv.position + 2] = y;
            break;
        }
        case MarkovKind::StabilizePositive:
        case MarkovKind::StabilizeNegative: {
            int n = r.strands;
            r.strands = n + 1;
            L.push_back(mv.kind == MarkovKind::StabilizePositive ? n : -n);
            break;
        }
        case MarkovKind::Destabilize: {
            int n = r.strands;
            need(n >= 2 && !L.empty() && std::abs(L.back()) == n - 1, "last letter is not sigma_{n-1}");
            for (int i = 0; i + 1 < len; ++i) need(std::abs(L[i]) != n - 1, "sigma_{n-1} occurs twice");
            L.pop_back();
            r.strands = n - 1;
            break;
        }
    }
    r.validate();
    return r;
}

/// Crossing record. x1, x2 are the top (outgoing) endpoints, x3 the
/// bottom-right and x4 the bottom-left (incoming) endpoint.
struct CrossingRecord {
    int sign = 1;
    int position = 0;  // left strand position, 0-based
    int x1 = 0, x2 = 0, x3 = 0, x4 = 0;
};

/// Directed arc between marks, tail -> head.
struct ArcRecord {
    int tail = 0;
    int head = 0;
};

/// Closure of a braid with marks. Level 0 sits below the first crossing and
/// level c above the last one; closure arcs run from level c back to level 0.
/// Each strand segment between levels carries `marks` consecutive variables.
struct MarkedDiagram {
    BraidWord braid;
    int marks = 1;
    int variable_count = 0;
    std::vector<CrossingRecord> crossings;
    std::vector<ArcRecord> arcs;

    int var(int level, int pos, int mark) const { return (level * braid.strands + pos) * marks + mark; }
    std::string name(int v) const { return "x" + std::to_string(v + 1); }
    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (int v = 0; v < variable_count; ++v) n.push_back(name(v));
        return n;
    }
};

inline MarkedDiagram build_marked_diagram(const BraidWord& b, int marks_per_segment = 1) {
    b.validate();
    if (marks_per_segment < 1) throw std::invalid_argument("marks per segment must be at least 1");
    MarkedDiagram d;
    d.braid = b;
    d.marks = marks_per_segment;
    const int n = b.strands;
    const int c = b.crossings();
    const int m = marks_per_segment;
    d.variable_count = (c + 1) * n * m;
    for (int level = 0; level <= c; ++level)
        for (int p = 0; p < n; ++p)
            for (int k = 0; k + 1 < m; ++k) d.arcs.push_back({d.var(level, p, k), d.var(level, p, k + 1)});
    for (int i = 0; i < c; ++i) {
        int p = std::abs(b.letters[i]) - 1;
        CrossingRecord cr;
        cr.sign = b.letters[i] > 0 ? 1 : -1;
        cr.position = p;
        cr.x4 = d.var(i, p, m - 1);
        cr.x3 = d.var(i, p + 1, m - 1);
        cr.x1 = d.var(i + 1, p, 0);
        cr.x2 = d.var(i + 1, p + 1, 0);
        d.crossings.push_back(cr);
        for (int q = 0; q < n; ++q)
            if (q != p && q != p + 1) d.arcs.push_back({d.var(i, q, m - 1), d.var(i + 1, q, 0)});
    }
    for (int q = 0; q < n; ++q) d.arcs.push_back({d.var(c, q, m - 1), d.var(0, q, 0)});
    return d;
}

}  // namespace trigrad
