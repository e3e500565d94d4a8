#include "arena/intent.hpp"

#include <cctype>
#include <sstream>

namespace arena::intent {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    /// The next whitespace-delimited chunk, for diagnostics.
    std::string current_lexeme() {
        skip_ws();
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
            ++end;
        return text.substr(pos, end - pos);
    }
};

Diagnostic fail(Cursor& c, std::vector<std::string> expected, std::string message = {}) {
    c.skip_ws();
    Diagnostic d;
    d.offset = c.pos;
    d.lexeme = c.current_lexeme();
    d.expected = std::move(expected);
    d.message = std::move(message);
    return d;
}

bool try_keyword(Cursor& c, const std::string& kw) {
    c.skip_ws();
    if (c.pos + kw.size() > c.text.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(c.text[c.pos + i])) != kw[i]) return false;
    const std::size_t after = c.pos + kw.size();
    if (after < c.text.size() && std::isalpha(static_cast<unsigned char>(c.text[after])))
        return false;  // keyword must not be a prefix of a longer word
    c.pos = after;
    return true;
}

/// Non-negative decimal captured as digit strings, so units can scale it
/// exactly. Returns false without a diagnostic when no digit is present.
struct DecimalText {
    std::string int_digits;
    std::string frac_digits;
    std::size_t offset = 0;
};

bool try_decimal(Cursor& c, DecimalText& out, Diagnostic& diag) {
    c.skip_ws();
    out.offset = c.pos;
    std::size_t p = c.pos;
    while (p < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[p]))) ++p;
    if (p == c.pos) return false;
    out.int_digits = c.text.substr(c.pos, p - c.pos);
    out.frac_digits.clear();
    if (p < c.text.size() && c.text[p] == ',' && p + 1 < c.text.size() &&
        std::isdigit(static_cast<unsigned char>(c.text[p + 1]))) {
        diag.offset = p;
        diag.lexeme = ",";
        diag.expected = {"'.'"};
        diag.message = "comma decimal separators are not supported";
        return false;
    }
    if (p < c.text.size() && c.text[p] == '.') {
        std::size_t d = p + 1;
        while (d < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[d]))) ++d;
        if (d == p + 1) {
            diag.offset = p + 1;
            diag.lexeme = c.text.substr(p, 2);
            diag.expected = {"digit"};
            diag.message = "expected digits after decimal point";
            return false;
        }
        out.frac_digits = c.text.substr(p + 1, d - p - 1);
        p = d;
    }
    c.pos = p;
    return true;
}

/// value * 10^scale as an integer; fails when the fraction is finer than
/// the unit's exact resolution.
bool scale_decimal(const DecimalText& dec, int scale, std::int64_t& out, std::string& why) {
    std::string frac = dec.frac_digits;
    while (frac.size() > static_cast<std::size_t>(scale)) {
        if (frac.back() != '0') {
            why = "at most " + std::to_string(scale) + " decimal places supported here";
            return false;
        }
        frac.pop_back();
    }
    while (frac.size() < static_cast<std::size_t>(scale)) frac += '0';
    const std::string all = dec.int_digits + frac;
    if (all.size() > 18) {
        why = "number too large";
        return false;
    }
    out = 0;
    for (char ch : all) out = out * 10 + (ch - '0');
    return true;
}

std::string format_scaled(std::int64_t value, int scale) {
    if (scale == 0) return std::to_string(value);
    std::int64_t div = 1;
    for (int i = 0; i < scale; ++i) div *= 10;
    std::string s = std::to_string(value / div);
    std::string frac = std::to_string(value % div);
    frac.insert(0, static_cast<std::size_t>(scale) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) s += "." + frac;
    return s;
}

}  // namespace

std::string Diagnostic::render() const {
    std::ostringstream os;
    os << "offset " << offset << ": ";
    if (!message.empty()) {
        os << message;
    } else {
        os << "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            os << (i ? " or " : "") << expected[i];
    }
    if (!lexeme.empty()) os << ", got '" << lexeme << "'";
    return os.str();
}

game::GoalSpec IntentSpec::to_goal_spec(std::size_t user_count, int max_rounds) const {
    game::GoalSpec goal;
    goal.saving = saving;
    goal.max_rounds = max_rounds;
    goal.rate_floors.targets_bps.assign(user_count, 0.0);
    for (const auto& [user, bps] : floors_bps) {
        if (user < 1 || user > user_count)
            throw std::invalid_argument("intent names user " + std::to_string(user) +
                                        " but the network has " + std::to_string(user_count) +
                                        " users");
        goal.rate_floors.targets_bps[user - 1] = static_cast<double>(bps);
    }
    return goal;
}

ParseResult parse_intent(const std::string& text) {
    Cursor c{text};

    for (const char* kw : {"reduce", "total", "power", "by"})
        if (!try_keyword(c, kw)) return fail(c, {std::string("'") + kw + "'"});

    IntentSpec spec;
    spec.raw = text;

    DecimalText amount;
    Diagnostic diag;
    if (!try_decimal(c, amount, diag)) {
        if (!diag.expected.empty()) return diag;
        return fail(c, {"NUMBER"});
    }
    c.skip_ws();
    std::string why;
    if (try_keyword(c, "%")) {
        // '%' is punctuation, not alpha, so try_keyword handles it fine
        std::int64_t ppm;
        if (!scale_decimal(amount, 4, ppm, why))
            return Diagnostic{amount.offset, amount.int_digits, {}, why};
        if (ppm > 1000000)
            return Diagnostic{amount.offset, amount.int_digits, {}, "percentage exceeds 100"};
        spec.saving.kind = game::PowerSaving::Kind::relative;
        spec.saving.ppm = ppm;
    } else if (try_keyword(c, "mw")) {
        std::int64_t uw;
        if (!scale_decimal(amount, 3, uw, why))
            return Diagnostic{amount.offset, amount.int_digits, {}, why};
        spec.saving.kind = game::PowerSaving::Kind::absolute;
        spec.saving.microwatts = uw;
    } else if (try_keyword(c, "w")) {
        std::int64_t uw;
        if (!scale_decimal(amount, 6, uw, why))
            return Diagnostic{amount.offset, amount.int_digits, {}, why};
        spec.saving.kind = game::PowerSaving::Kind::absolute;
        spec.saving.microwatts = uw;
    } else {
        return fail(c, {"'%'", "'W'", "'mW'"});
    }

    if (try_keyword(c, "while")) {
        do {
            for (const char* kw : {"rate", "of", "user"})
                if (!try_keyword(c, kw)) return fail(c, {std::string("'") + kw + "'"});
            DecimalText index;
            if (!try_decimal(c, index, diag)) {
                if (!diag.expected.empty()) return diag;
                return fail(c, {"user INDEX"});
            }
            if (!index.frac_digits.empty() || index.int_digits.empty())
                return Diagnostic{index.offset, index.int_digits, {"integer user INDEX"}, {}};
            std::int64_t user = 0;
            if (!scale_decimal(index, 0, user, why) || user < 1)
                return Diagnostic{index.offset, index.int_digits, {"user INDEX >= 1"}, {}};

            c.skip_ws();
            if (!(c.peek() == '>' && c.pos + 1 < text.size() && text[c.pos + 1] == '='))
                return fail(c, {"'>='"});
            c.pos += 2;

            DecimalText floor;
            if (!try_decimal(c, floor, diag)) {
                if (!diag.expected.empty()) return diag;
                return fail(c, {"NUMBER"});
            }
            c.skip_ws();
            std::int64_t bps = 0;
            if (try_keyword(c, "kbps")) {
                if (!scale_decimal(floor, 3, bps, why))
                    return Diagnostic{floor.offset, floor.int_digits, {}, why};
            } else if (try_keyword(c, "bps")) {
                if (!scale_decimal(floor, 0, bps, why))
                    return Diagnostic{floor.offset, floor.int_digits, {}, why};
            } else {
                return fail(c, {"'kbps'", "'bps'"});
            }
            const auto u = static_cast<std::size_t>(user);
            if (spec.floors_bps.count(u))
                return Diagnostic{index.offset, index.int_digits, {},
                                  "duplicate constraint for user " + std::to_string(user)};
            spec.floors_bps[u] = bps;
        } while (try_keyword(c, "and"));
    }

    if (!c.eof()) return fail(c, {"end of intent"}, "unexpected trailing input");
    return spec;
}

std::string format_intent(const IntentSpec& spec) {
    std::ostringstream os;
    os << "reduce total power by ";
    if (spec.saving.kind == game::PowerSaving::Kind::relative)
        os << format_scaled(spec.saving.ppm, 4) << "%";
    else
        os << format_scaled(spec.saving.microwatts, 6) << " W";
    bool first = true;
    for (const auto& [user, bps] : spec.floors_bps) {
        os << (first ? " while " : " and ") << "rate of user " << user << " >= "
           << format_scaled(bps, 3) << " kbps";
        first = false;
    }
    return os.str();
}

}  // namespace arena::intent
