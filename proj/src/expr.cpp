// SPDX-License-Identifier: Apache-2.0

#include "ovf/expr.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace ovf {

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lo << ", " << iv.hi << "]";
}

std::string to_string(const Interval& iv) {
    std::ostringstream os;
    os << iv;
    return os.str();
}

const char* rel_op_text(RelOp op) {
    switch (op) {
    case RelOp::Eq: return "==";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Gt: return ">";
    case RelOp::Le: return "<=";
    case RelOp::Ge: return ">=";
    }
    return "?";
}

LinearExpr flatten(const GroupedExpr& g) {
    LinearExpr e;
    for (const auto& group : g.groups)
        for (const auto& sv : group)
            e.terms.push_back({Int(sv.sign), sv.var});
    return e;
}

std::map<std::string, Int> canonicalize(const LinearExpr& e) {
    std::map<std::string, Int> out;
    for (const auto& t : e.terms)
        out[t.var.name] += t.coeff;
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

bool z_equivalent(const LinearExpr& a, const LinearExpr& b) {
    return canonicalize(a) == canonicalize(b);
}

namespace {

LinearExpr difference(const LinearExpr& lhs, const LinearExpr& rhs) {
    LinearExpr d = lhs;
    for (const auto& t : rhs.terms)
        d.terms.push_back({-t.coeff, t.var});
    return d;
}

} // namespace

bool z_equivalent(const BoolExpr& a, const BoolExpr& b) {
    if (a.op != b.op)
        return false;
    return canonicalize(difference(a.lhs, a.rhs)) == canonicalize(difference(b.lhs, b.rhs));
}

namespace {

void print_signed_term(std::ostream& os, bool first, const Int& coeff, const std::string& body) {
    Int c = coeff;
    if (first) {
        if (c < 0) {
            os << "-";
            c = -c;
        }
    } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0)
            c = -c;
    }
    if (c != 1)
        os << c << "*";
    os << body;
}

} // namespace

std::string to_string(const LinearExpr& e) {
    if (e.terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : e.terms) {
        print_signed_term(os, first, t.coeff, t.var.display());
        first = false;
    }
    return os.str();
}

std::string to_string(const BoolExpr& b) {
    return to_string(b.lhs) + " " + rel_op_text(b.op) + " " + to_string(b.rhs);
}

std::string to_string(const GroupedExpr& g) {
    if (g.groups.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& group : g.groups) {
        if (group.size() == 1) {
            print_signed_term(os, first, Int(group[0].sign), group[0].var.display());
        } else {
            os << (first ? "(" : " + (");
            bool inner_first = true;
            for (const auto& sv : group) {
                print_signed_term(os, inner_first, Int(sv.sign), sv.var.display());
                inner_first = false;
            }
            os << ")";
        }
        first = false;
    }
    return os.str();
}

namespace {

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::size_t pos() const { return pos_; }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool consume(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    std::optional<Int> integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Int(std::string(text_.substr(start, pos_ - start)));
        }
        return std::nullopt;
    }

    std::optional<std::string> ident() {
        skip_ws();
        std::size_t start = pos_;
        auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto tail = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
        };
        if (pos_ < text_.size() && head(text_[pos_])) {
            ++pos_;
            while (pos_ < text_.size() && tail(text_[pos_]))
                ++pos_;
            return std::string(text_.substr(start, pos_ - start));
        }
        return std::nullopt;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// Shared parser producing a grouped form; ungrouped terms become singleton
// groups carrying an explicit coefficient.
struct ParsedTerm {
    Int coeff;                            // for plain terms
    std::optional<std::vector<SignedVar>> group; // for parenthesized groups
    VarId var;
};

std::vector<ParsedTerm> parse_sum(Lexer& lex, bool allow_groups) {
    std::vector<ParsedTerm> terms;
    bool first = true;
    while (true) {
        lex.skip_ws();
        int sign = 1;
        if (lex.consume('-'))
            sign = -1;
        else if (lex.consume('+')) {
            if (first)
                throw parse_error("unexpected '+'", lex.pos());
        } else if (!first) {
            break;
        }
        if (lex.peek() == '(') {
            if (!allow_groups)
                throw parse_error("parenthesized group not allowed here", lex.pos());
            lex.consume('(');
            std::vector<SignedVar> group;
            bool gfirst = true;
            while (true) {
                int gsign = 1;
                if (lex.consume('-'))
                    gsign = -1;
                else if (lex.consume('+')) {
                    if (gfirst)
                        throw parse_error("unexpected '+'", lex.pos());
                } else if (!gfirst) {
                    break;
                }
                auto id = lex.ident();
                if (!id)
                    throw parse_error("expected identifier", lex.pos());
                group.push_back({sign * gsign, VarId{*id, 0}});
                gfirst = false;
            }
            if (!lex.consume(')'))
                throw parse_error("expected ')'", lex.pos());
            ParsedTerm t;
            t.coeff = 0;
            t.group = std::move(group);
            terms.push_back(std::move(t));
        } else {
            Int coeff = 1;
            if (auto n = lex.integer()) {
                coeff = *n;
                if (!lex.consume('*'))
                    throw parse_error("expected '*' after coefficient", lex.pos());
            }
            auto id = lex.ident();
            if (!id)
                throw parse_error("expected identifier", lex.pos());
            ParsedTerm t;
            t.coeff = sign * coeff;
            t.var = VarId{*id, 0};
            terms.push_back(std::move(t));
        }
        first = false;
    }
    if (terms.empty())
        throw parse_error("empty expression", lex.pos());
    return terms;
}

std::optional<RelOp> parse_rel_op(Lexer& lex) {
    if (lex.consume("=="))
        return RelOp::Eq;
    if (lex.consume("!="))
        return RelOp::Ne;
    if (lex.consume("<="))
        return RelOp::Le;
    if (lex.consume(">="))
        return RelOp::Ge;
    if (lex.consume('<'))
        return RelOp::Lt;
    if (lex.consume('>'))
        return RelOp::Gt;
    return std::nullopt;
}

LinearExpr to_linear(std::vector<ParsedTerm>&& terms, std::size_t err_pos) {
    LinearExpr e;
    for (auto& t : terms) {
        if (t.group)
            throw parse_error("parenthesized group not allowed here", err_pos);
        e.terms.push_back({std::move(t.coeff), std::move(t.var)});
    }
    return e;
}

} // namespace

LinearExpr parse_linear(std::string_view text) {
    Lexer lex(text);
    auto terms = parse_sum(lex, false);
    if (!lex.eof())
        throw parse_error("trailing input", lex.pos());
    return to_linear(std::move(terms), lex.pos());
}

GroupedExpr parse_grouped(std::string_view text) {
    Lexer lex(text);
    auto terms = parse_sum(lex, true);
    if (!lex.eof())
        throw parse_error("trailing input", lex.pos());
    GroupedExpr g;
    for (auto& t : terms) {
        if (t.group) {
            g.groups.push_back(std::move(*t.group));
        } else {
            if (t.coeff != 1 && t.coeff != -1)
                throw parse_error("grouped expressions carry unit coefficients only", lex.pos());
            g.groups.push_back({SignedVar{t.coeff < 0 ? -1 : 1, std::move(t.var)}});
        }
    }
    return g;
}

BoolExpr parse_bool(std::string_view text) {
    Lexer lex(text);
    auto lhs = parse_sum(lex, false);
    auto op = parse_rel_op(lex);
    if (!op)
        throw parse_error("expected relational operator", lex.pos());
    auto rhs = parse_sum(lex, false);
    if (!lex.eof())
        throw parse_error("trailing input", lex.pos());
    return BoolExpr{to_linear(std::move(lhs), lex.pos()), *op, to_linear(std::move(rhs), lex.pos())};
}

} // namespace ovf
