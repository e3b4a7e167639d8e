/*
 * Copyright 2026 The ltesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Lexer and recursive-descent parser for topology files.

#include <cctype>
#include <limits>

#include "ltesim/netconfig.hpp"

namespace ltesim {

namespace {

enum class Tok : std::uint8_t {
    Ident,
    Int,
    Duration,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Arrow,
    DotDot,
    Star,
    Comma,
    End,
};

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "a name";
        case Tok::Int: return "an integer";
        case Tok::Duration: return "a duration";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Semi: return "';'";
        case Tok::Arrow: return "'->'";
        case Tok::DotDot: return "'..'";
        case Tok::Star: return "'*'";
        case Tok::Comma: return "','";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::uint64_t value = 0;  // Int, Duration (in its own unit)
    TimeUnit unit = TimeUnit::Nanoseconds;
    SourceLoc loc;
};

bool isIdentStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool isIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
    Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipTrivia();
            Token t;
            t.loc = {line_, col_};
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(std::move(t));
                return out;
            }
            const char c = src_[pos_];
            if (isIdentStart(c)) {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() && isIdentChar(src_[pos_])) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                if (!lexNumber(t)) {
                    continue;
                }
            } else {
                advance();
                t.text = std::string(1, c);
                switch (c) {
                    case '{': t.kind = Tok::LBrace; break;
                    case '}': t.kind = Tok::RBrace; break;
                    case '[': t.kind = Tok::LBracket; break;
                    case ']': t.kind = Tok::RBracket; break;
                    case ';': t.kind = Tok::Semi; break;
                    case '*': t.kind = Tok::Star; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '-':
                        if (peek() == '>') {
                            advance();
                            t.kind = Tok::Arrow;
                            t.text = "->";
                            break;
                        }
                        error(t.loc, "unexpected character '-'");
                        continue;
                    case '.':
                        if (peek() == '.') {
                            advance();
                            t.kind = Tok::DotDot;
                            t.text = "..";
                            break;
                        }
                        error(t.loc, "unexpected character '.'");
                        continue;
                    default:
                        error(t.loc, std::string("unexpected character '") + c + "'");
                        continue;
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skipTrivia() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    // Returns false when the token was rejected (diagnostic already issued).
    bool lexNumber(Token& t) {
        bool overflow = false;
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            const char d = advance();
            t.text += d;
            const auto digit = static_cast<std::uint64_t>(d - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
                overflow = true;
            }
            v = v * 10 + digit;
        }
        std::string suffix;
        while (pos_ < src_.size() && isIdentChar(src_[pos_])) {
            suffix += advance();
        }
        t.text += suffix;
        if (overflow) {
            error(t.loc, "integer '" + t.text + "' is too large");
            return false;
        }
        t.value = v;
        if (suffix.empty()) {
            t.kind = Tok::Int;
            return true;
        }
        t.kind = Tok::Duration;
        if (suffix == "ns") {
            t.unit = TimeUnit::Nanoseconds;
        } else if (suffix == "us") {
            t.unit = TimeUnit::Microseconds;
        } else if (suffix == "ms") {
            t.unit = TimeUnit::Milliseconds;
        } else if (suffix == "s") {
            t.unit = TimeUnit::Seconds;
        } else {
            error(t.loc, "unknown time unit '" + suffix + "' (use ns, us, ms or s)");
            return false;
        }
        if (v > std::numeric_limits<std::uint64_t>::max() / nanosecondsPer(t.unit)) {
            error(t.loc, "duration '" + t.text + "' is too large");
            return false;
        }
        return true;
    }

    void error(SourceLoc loc, std::string msg) {
        diags_.push_back(Diagnostic{Severity::Error, loc.line, loc.column, std::move(msg)});
    }

    std::string_view src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

// Thrown to abandon the current statement; the diagnostic is already recorded.
struct SyntaxError {};

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

    std::optional<NetworkSpec> parse() {
        NetworkSpec spec;
        try {
            spec.loc = cur().loc;
            expectKeyword("network");
            spec.networkName = expect(Tok::Ident, "network name").text;
            const SourceLoc open = expect(Tok::LBrace, "'{' after the network name").loc;
            while (cur().kind != Tok::RBrace && cur().kind != Tok::End) {
                statement(spec);
            }
            if (cur().kind == Tok::End) {
                error(open, "unclosed '{': expected '}' before end of input");
                return std::nullopt;
            }
            next();
            if (cur().kind != Tok::End) {
                error(cur().loc, "unexpected " + std::string(describe(cur().kind)) + " after the network block");
            }
        } catch (const SyntaxError&) {
            return std::nullopt;
        }
        return spec;
    }

private:
    const Token& cur() const { return toks_[pos_]; }

    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        return t;
    }

    bool atKeyword(std::string_view word) const { return cur().kind == Tok::Ident && cur().text == word; }

    [[noreturn]] void fail(SourceLoc loc, std::string msg) {
        error(loc, std::move(msg));
        throw SyntaxError{};
    }

    void error(SourceLoc loc, std::string msg) {
        diags_.push_back(Diagnostic{Severity::Error, loc.line, loc.column, std::move(msg)});
    }

    const Token& expect(Tok kind, std::string_view what) {
        if (cur().kind != kind) {
            fail(cur().loc, "expected " + std::string(what) + ", found " + found());
        }
        return next();
    }

    void expectKeyword(std::string_view word) {
        if (!atKeyword(word)) {
            fail(cur().loc, "expected '" + std::string(word) + "', found " + found());
        }
        next();
    }

    std::string found() const {
        const Token& t = cur();
        if (t.kind == Tok::End) {
            return "end of input";
        }
        return "'" + t.text + "'";
    }

    // Skips to the end of the broken statement: past the next ';' at the
    // statement's own nesting level, or up to the '}' that closes the network.
    void synchronize() {
        while (cur().kind != Tok::End) {
            if (cur().kind == Tok::Semi && depth_ == 0) {
                next();
                return;
            }
            if (cur().kind == Tok::LBrace) {
                ++depth_;
            } else if (cur().kind == Tok::RBrace) {
                if (depth_ == 0) {
                    return;
                }
                --depth_;
                if (depth_ == 0) {
                    next();
                    if (cur().kind == Tok::Semi) {
                        next();
                    }
                    return;
                }
            }
            next();
        }
    }

    void statement(NetworkSpec& spec) {
        depth_ = 0;
        try {
            const Token& head = cur();
            if (head.kind != Tok::Ident) {
                fail(head.loc, "expected a statement, found " + found());
            }
            if (auto kind = nodeTypeFromKeyword(head.text)) {
                nodeDecl(spec, *kind);
            } else if (head.text == "attach") {
                attach(spec);
            } else if (head.text == "link") {
                link(spec);
            } else if (head.text == "generator") {
                generator(spec);
            } else if (head.text == "chain") {
                chain(spec);
            } else if (head.text == "run") {
                run(spec);
            } else if (head.text == "seed") {
                seed(spec);
            } else {
                fail(head.loc, "unknown keyword '" + head.text + "'");
            }
        } catch (const SyntaxError&) {
            synchronize();
        }
    }

    void nodeDecl(NetworkSpec& spec, NodeType kind) {
        NodeDecl d;
        d.kind = kind;
        d.loc = next().loc;
        d.name = expect(Tok::Ident, "a node name").text;
        if (cur().kind == Tok::LBracket) {
            const SourceLoc open = next().loc;
            d.count = expect(Tok::Int, "an element count").value;
            closeBracket(open);
        }
        expect(Tok::Semi, "';'");
        spec.nodes.push_back(std::move(d));
    }

    void closeBracket(SourceLoc open) {
        if (cur().kind != Tok::RBracket) {
            fail(open, "unclosed '[': expected ']' before " + found());
        }
        next();
    }

    Selector selector() {
        Selector s;
        s.loc = cur().loc;
        s.name = expect(Tok::Ident, "a node name").text;
        if (cur().kind != Tok::LBracket) {
            return s;
        }
        const SourceLoc open = next().loc;
        if (cur().kind == Tok::Star) {
            next();
            s.form = Selector::Form::All;
        } else {
            s.first = expect(Tok::Int, "an index, range or '*'").value;
            s.form = Selector::Form::Index;
            if (cur().kind == Tok::DotDot) {
                next();
                const Token& hi = expect(Tok::Int, "the end of the range");
                s.last = hi.value;
                s.form = Selector::Form::Range;
                if (s.last < s.first) {
                    fail(hi.loc, "range end " + std::to_string(s.last) + " is below its start " +
                                     std::to_string(s.first));
                }
            }
        }
        closeBracket(open);
        return s;
    }

    SimTime duration(std::string_view what) {
        if (cur().kind == Tok::Int) {
            fail(cur().loc, std::string(what) + " needs a unit (ns, us, ms or s)");
        }
        const Token& t = expect(Tok::Duration, what);
        return SimTime::fromUnits(t.value, t.unit);
    }

    std::optional<SimTime> optionalDelay() {
        if (!atKeyword("delay")) {
            return std::nullopt;
        }
        next();
        return duration("a delay");
    }

    void attach(NetworkSpec& spec) {
        AttachDecl a;
        a.loc = next().loc;
        a.ue = selector();
        expect(Tok::Arrow, "'->'");
        a.enb = selector();
        a.airDelay = optionalDelay();
        expect(Tok::Semi, "';'");
        spec.attachments.push_back(std::move(a));
    }

    void link(NetworkSpec& spec) {
        LinkDecl l;
        l.loc = next().loc;
        l.from = selector();
        expect(Tok::Arrow, "'->'");
        l.to = selector();
        l.delay = optionalDelay();
        expect(Tok::Semi, "';'");
        spec.links.push_back(std::move(l));
    }

    void generator(NetworkSpec& spec) {
        GeneratorDecl g;
        g.loc = next().loc;
        expectKeyword("on");
        g.ue = selector();
        expect(Tok::LBrace, "'{'");
        ++depth_;
        bool period = false;
        bool start = false;
        bool payload = false;
        while (cur().kind != Tok::RBrace) {
            const Token& item = cur();
            auto once = [&](bool& seen) {
                if (seen) {
                    fail(item.loc, "duplicate '" + item.text + "' in generator block");
                }
                seen = true;
            };
            if (atKeyword("period")) {
                once(period);
                next();
                g.config.period = duration("a period");
            } else if (atKeyword("start")) {
                once(start);
                next();
                g.config.startTime = duration("a start time");
            } else if (atKeyword("payload")) {
                once(payload);
                next();
                if (atKeyword("message")) {
                    next();
                    g.config.payloadKind = MessageKind::ControlMessage;
                    g.config.payloadBytes = 0;
                } else if (atKeyword("packet")) {
                    next();
                    g.config.payloadKind = MessageKind::Packet;
                    g.config.payloadBytes = expect(Tok::Int, "a packet length in bytes").value;
                } else {
                    fail(cur().loc, "expected 'message' or 'packet', found " + found());
                }
            } else {
                fail(item.loc, "expected 'period', 'start', 'payload' or '}', found " + found());
            }
            expect(Tok::Semi, "';'");
        }
        next();
        --depth_;
        if (cur().kind == Tok::Semi) {
            next();
        }
        spec.generators.push_back(std::move(g));
    }

    void chain(NetworkSpec& spec) {
        ChainDecl c;
        c.loc = next().loc;
        const Token& kindTok = expect(Tok::Ident, "a node kind");
        auto kind = nodeTypeFromKeyword(kindTok.text);
        if (!kind) {
            fail(kindTok.loc, "unknown node kind '" + kindTok.text + "'");
        }
        c.kind = *kind;
        expect(Tok::LBrace, "'{'");
        ++depth_;
        c.tags.push_back(expect(Tok::Ident, "a layer tag").text);
        while (cur().kind == Tok::Comma) {
            next();
            c.tags.push_back(expect(Tok::Ident, "a layer tag").text);
        }
        expect(Tok::RBrace, "',' or '}'");
        --depth_;
        expect(Tok::Semi, "';'");
        spec.chains.push_back(std::move(c));
    }

    void run(NetworkSpec& spec) {
        next();
        expectKeyword("until");
        spec.until = duration("a run duration");
        expect(Tok::Semi, "';'");
    }

    void seed(NetworkSpec& spec) {
        next();
        spec.seed = expect(Tok::Int, "a seed").value;
        expect(Tok::Semi, "';'");
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

ParseResult parseNetwork(std::string_view source) {
    ParseResult result;
    std::vector<Token> toks = Lexer(source, result.diagnostics).run();
    Parser parser(std::move(toks), result.diagnostics);
    std::optional<NetworkSpec> spec = parser.parse();
    if (spec && !hasErrors(result.diagnostics)) {
        result.spec = std::move(spec);
    }
    return result;
}

}  // namespace ltesim
