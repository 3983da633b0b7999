#include "k3lat/lattice.hpp"

#include <cctype>

namespace k3lat {

Lattice make_lattice(const ZMat& gram, const std::string& name) {
    if (gram.rows != gram.cols) throw std::invalid_argument("Gram matrix must be square");
    for (int i = 0; i < gram.rows; ++i)
        for (int j = i + 1; j < gram.cols; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw std::invalid_argument("Gram matrix must be symmetric");
    for (int i = 0; i < gram.rows; ++i)
        if (gram.at(i, i) % 2 != 0)
            throw std::invalid_argument("lattice is not even: odd diagonal entry");
    if (gram.rows > 0 && det(gram) == 0)
        throw std::invalid_argument("lattice is degenerate");
    Lattice L;
    L.rank = gram.rows;
    L.gram = gram;
    L.name = name;
    return L;
}

Lattice lattice_U() {
    ZMat g(2, 2);
    g.at(0, 1) = 1;
    g.at(1, 0) = 1;
    return make_lattice(g, "U");
}

Lattice lattice_E8() {
    // Chain 0-1-2-3-4-5-6 with node 7 attached to node 4; det 1, even,
    // positive definite.
    ZMat g(8, 8);
    for (int i = 0; i < 8; ++i) g.at(i, i) = 2;
    for (int i = 0; i + 1 < 7; ++i) {
        g.at(i, i + 1) = -1;
        g.at(i + 1, i) = -1;
    }
    g.at(4, 7) = -1;
    g.at(7, 4) = -1;
    return make_lattice(g, "E8");
}

Lattice lattice_span(const Z& k) {
    if (k == 0) throw std::invalid_argument("<0> is degenerate");
    if (k % 2 != 0) throw std::invalid_argument("lattice is not even: odd diagonal entry");
    ZMat g(1, 1);
    g.at(0, 0) = k;
    return make_lattice(g, "<" + k.get_str() + ">");
}

Lattice rescale(const Lattice& L, const Z& n) {
    if (n == 0) throw std::invalid_argument("rescaling by 0 degenerates the lattice");
    ZMat g = L.gram;
    for (Z& x : g.a) x *= n;
    return make_lattice(g, L.name + "(" + n.get_str() + ")");
}

Lattice direct_sum(const Lattice& A, const Lattice& B) {
    ZMat g(A.rank + B.rank, A.rank + B.rank);
    for (int i = 0; i < A.rank; ++i)
        for (int j = 0; j < A.rank; ++j) g.at(i, j) = A.gram.at(i, j);
    for (int i = 0; i < B.rank; ++i)
        for (int j = 0; j < B.rank; ++j) g.at(A.rank + i, A.rank + j) = B.gram.at(i, j);
    std::string name = A.name.empty() || B.name.empty() ? "" : A.name + "+" + B.name;
    return make_lattice(g, name);
}

Lattice lattice_LK3() {
    Lattice u = lattice_U();
    Lattice e8m = rescale(lattice_E8(), Z(-1));
    Lattice l = direct_sum(direct_sum(u, u), u);
    l = direct_sum(direct_sum(l, e8m), e8m);
    l.name = "LK3";
    return l;
}

Lattice lattice_Ln(int n) {
    if (n < 2) throw std::invalid_argument("Ln requires n >= 2");
    Lattice l = direct_sum(lattice_LK3(), lattice_span(Z(2 - 2 * n)));
    l.name = "Ln(" + std::to_string(n) + ")";
    return l;
}

Lattice lattice_L2() {
    Lattice l = lattice_Ln(2);
    l.name = "L2";
    return l;
}

// ------------------------------------------------------------------ parser

namespace {

struct Parser {
    const std::string& s;
    std::size_t p = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    bool eat(char c) {
        skip_ws();
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", p);
    }
    Z integer() {
        skip_ws();
        std::size_t start = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        std::size_t digits = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == digits) throw ParseError("expected integer", start);
        return Z(s.substr(start, p - start));
    }
    bool lookahead_word(const std::string& w) {
        skip_ws();
        return s.compare(p, w.size(), w) == 0;
    }
    void eat_word(const std::string& w) { p += w.size(); }

    Lattice atom() {
        skip_ws();
        std::size_t start = p;
        if (p >= s.size()) throw ParseError("expected lattice atom", p);
        char c = s[p];
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            Z k = integer();
            expect('*');
            if (k <= 0) throw ParseError("repetition count must be positive", start);
            if (k > 64) throw ParseError("repetition count too large", start);
            Lattice part = atom();
            Lattice out = part;
            for (Z i = 1; i < k; ++i) out = direct_sum(out, part);
            out.name = k.get_str() + "*" + part.name;
            return out;
        }
        if (c == '<') {
            ++p;
            Z k = integer();
            expect('>');
            return lattice_span(k);
        }
        if (lookahead_word("LK3")) {
            eat_word("LK3");
            return lattice_LK3();
        }
        if (lookahead_word("Ln(")) {
            eat_word("Ln(");
            std::size_t npos = p;
            Z n = integer();
            expect(')');
            if (n < 2 || n > 1000) throw ParseError("Ln requires 2 <= n <= 1000", npos);
            return lattice_Ln(static_cast<int>(n.get_si()));
        }
        if (lookahead_word("L2")) {
            eat_word("L2");
            return lattice_L2();
        }
        if (lookahead_word("E8")) {
            eat_word("E8");
            return lattice_E8();
        }
        if (c == 'U') {
            ++p;
            return lattice_U();
        }
        throw ParseError("expected lattice atom", start);
    }

    Lattice term() {
        Lattice l = atom();
        skip_ws();
        if (p < s.size() && s[p] == '(') {
            ++p;
            Z n = integer();
            expect(')');
            l = rescale(l, n);
        }
        return l;
    }

    Lattice expr() {
        Lattice l = term();
        while (eat('+')) {
            Lattice r = term();
            std::string nm = l.name + "+" + r.name;
            l = direct_sum(l, r);
            l.name = nm;
        }
        return l;
    }
};

}  // namespace

Lattice parse_lattice(const std::string& spec) {
    Parser pr(spec);
    Lattice l = pr.expr();
    pr.skip_ws();
    if (pr.p != spec.size()) throw ParseError("unexpected trailing input", pr.p);
    if (l.name.empty()) l.name = spec;
    return l;
}

// ------------------------------------------------------------- basic forms

static void check_dim(const Lattice& L, const ZVec& v) {
    if (static_cast<int>(v.size()) != L.rank)
        throw std::invalid_argument("vector does not live in " + (L.name.empty() ? "the lattice" : L.name) +
                                    ": length mismatch");
}

Z inner(const Lattice& L, const ZVec& v, const ZVec& w) {
    check_dim(L, v);
    check_dim(L, w);
    return dot(v, mul(L.gram, w));
}

Z norm(const Lattice& L, const ZVec& v) { return inner(L, v, v); }

Q inner_q(const Lattice& L, const QVec& v, const QVec& w) {
    if (static_cast<int>(v.size()) != L.rank || static_cast<int>(w.size()) != L.rank)
        throw std::invalid_argument("vector length mismatch");
    return dot(v, mul(to_q(L.gram), w));
}

Q norm_q(const Lattice& L, const QVec& v) { return inner_q(L, v, v); }

std::pair<int, int> signature(const Lattice& L) {
    Inertia in = signature_q(to_q(L.gram));
    return {in.pos, in.neg};
}

Z divisibility(const Lattice& L, const ZVec& v) {
    check_dim(L, v);
    if (is_zero(v)) throw std::invalid_argument("divisibility of the zero vector");
    return content(mul(L.gram, v));
}

Z determinant(const Lattice& L) { return det(L.gram); }

bool same_gram(const Lattice& A, const Lattice& B) { return A.gram == B.gram; }

}  // namespace k3lat
