#include "cliffordprym/io.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include "cliffordprym/error.hpp"
#include "cliffordprym/factor.hpp"

namespace cliffordprym {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

struct Line {
    int number = 0;  // 1-based
    std::vector<Token> tokens;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        const std::string raw = text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        Line line;
        line.number = number++;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' &&
                   raw[j] != '\r')
                ++j;
            line.tokens.push_back(Token{raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        lines.push_back(std::move(line));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return lines;
}

long long parse_int(const Line& line, const Token& tok, const char* what) {
    const char* begin = tok.text.c_str();
    char* endp = nullptr;
    errno = 0;
    const long long v = std::strtoll(begin, &endp, 10);
    if (endp == begin || *endp != '\0' || errno == ERANGE)
        throw ParseError(line.number, tok.column,
                         std::string(what) + " must be an integer, got '" +
                             tok.text + "'");
    return v;
}

// A coefficient is a plain integer over a prime field or a colon-joined
// coordinate vector over an extension.
Fel parse_coefficient(const FieldPtr& f, const Line& line, const Token& tok) {
    std::vector<long long> coords;
    std::size_t start = 0;
    while (start <= tok.text.size()) {
        std::size_t end = tok.text.find(':', start);
        const std::string piece = tok.text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        Token sub{piece, tok.column + static_cast<int>(start)};
        coords.push_back(parse_int(line, sub, "coefficient"));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (static_cast<int>(coords.size()) > f->degree())
        throw ParseError(line.number, tok.column,
                         "coefficient has more coordinates than the field degree");
    coords.resize(static_cast<std::size_t>(f->degree()), 0);
    return Fel::from_coords(f, std::move(coords));
}

std::string coefficient_text(const Fel& c) {
    const auto& coords = c.coords();
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ':';
        out += std::to_string(coords[i]);
    }
    return out;
}

TriPoly parse_entry_line(const FieldPtr& f, const Line& line, int expected_degree,
                         int ei, int ej) {
    TriPoly out = TriPoly::zero(f);
    const auto& t = line.tokens;
    if (t.size() % 4 != 0)
        throw ParseError(line.number, t.empty() ? 1 : t.back().column,
                         "entry terms come in groups 'coef i j k'");
    for (std::size_t k = 0; k + 3 < t.size(); k += 4) {
        const Fel c = parse_coefficient(f, line, t[k]);
        const long long i = parse_int(line, t[k + 1], "exponent");
        const long long j = parse_int(line, t[k + 2], "exponent");
        const long long l = parse_int(line, t[k + 3], "exponent");
        if (i < 0 || j < 0 || l < 0)
            throw ParseError(line.number, t[k + 1].column,
                             "exponents must be nonnegative");
        if (i + j + l != expected_degree)
            throw ParseError(line.number, t[k].column,
                             "entry (" + std::to_string(ei) + "," +
                                 std::to_string(ej) + ") term has degree " +
                                 std::to_string(i + j + l) + ", expected " +
                                 std::to_string(expected_degree));
        out.add_term({static_cast<int>(i), static_cast<int>(j), static_cast<int>(l)},
                     c);
    }
    return out;
}

BiForm parse_rho_line(const FieldPtr& f, const Line& line, int d, int component) {
    BiForm out = BiForm::zero(f, d);
    const auto& t = line.tokens;
    if (t.size() % 3 != 0)
        throw ParseError(line.number, t.empty() ? 1 : t.back().column,
                         "curve terms come in groups 'coef i j'");
    for (std::size_t k = 0; k + 2 < t.size(); k += 3) {
        const Fel c = parse_coefficient(f, line, t[k]);
        const long long i = parse_int(line, t[k + 1], "exponent");
        const long long j = parse_int(line, t[k + 2], "exponent");
        if (i < 0 || j < 0)
            throw ParseError(line.number, t[k + 1].column,
                             "exponents must be nonnegative");
        if (i + j != d)
            throw ParseError(line.number, t[k].column,
                             "curve component " + std::to_string(component) +
                                 " term has degree " + std::to_string(i + j) +
                                 ", expected " + std::to_string(d));
        UniPoly mono = UniPoly::monomial(c, static_cast<int>(i));
        out = out + BiForm(d, mono);
    }
    return out;
}

UniPoly parse_poly_tokens(const FieldPtr& f, const Line& line, std::size_t from) {
    std::vector<Fel> coeffs;
    for (std::size_t k = from; k < line.tokens.size(); ++k)
        coeffs.push_back(parse_coefficient(f, line, line.tokens[k]));
    return UniPoly(f, std::move(coeffs));
}

}  // namespace

ParsedInput parse_input(const std::string& text) {
    const std::vector<Line> lines = split_lines(text);
    ParsedInput out;
    std::size_t idx = 0;
    const auto next_nonempty = [&]() -> const Line* {
        while (idx < lines.size() && lines[idx].tokens.empty()) ++idx;
        return idx < lines.size() ? &lines[idx] : nullptr;
    };

    const Line* header = next_nonempty();
    if (!header)
        throw ParseError(1, 1, "empty input, expected a 'field' header");
    if (header->tokens[0].text != "field")
        throw ParseError(header->number, header->tokens[0].column,
                         "input must start with 'field p [m]'");
    if (header->tokens.size() < 2 || header->tokens.size() > 3)
        throw ParseError(header->number, header->tokens[0].column,
                         "'field' takes one or two integers");
    const long long p = parse_int(*header, header->tokens[1], "characteristic");
    try {
        if (header->tokens.size() == 3) {
            const long long m = parse_int(*header, header->tokens[2], "degree");
            out.field = m == 1 ? FieldSpec::prime(p)
                               : field_of_degree(p, static_cast<int>(m));
        } else {
            out.field = FieldSpec::prime(p);
        }
    } catch (const MathError& e) {
        throw ParseError(header->number, header->tokens[1].column, e.detail());
    }
    ++idx;

    while (const Line* line = next_nonempty()) {
        const std::string& kw = line->tokens[0].text;
        if (kw == "twists") {
            if (out.fibration)
                throw ParseError(line->number, line->tokens[0].column,
                                 "duplicate fibration section");
            if (line->tokens.size() != 5)
                throw ParseError(line->number, line->tokens[0].column,
                                 "'twists' takes four integers");
            std::array<int, 3> tw{};
            for (int k = 0; k < 3; ++k)
                tw[static_cast<std::size_t>(k)] = static_cast<int>(parse_int(
                    *line, line->tokens[static_cast<std::size_t>(k) + 1], "twist"));
            const int lt = static_cast<int>(
                parse_int(*line, line->tokens[4], "line twist"));
            const int header_line = line->number;
            ++idx;
            std::array<std::array<TriPoly, 3>, 3> entries{
                {{TriPoly::zero(out.field), TriPoly::zero(out.field),
                  TriPoly::zero(out.field)},
                 {TriPoly::zero(out.field), TriPoly::zero(out.field),
                  TriPoly::zero(out.field)},
                 {TriPoly::zero(out.field), TriPoly::zero(out.field),
                  TriPoly::zero(out.field)}}};
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    if (idx >= lines.size())
                        throw ParseError(header_line, 1,
                                         "fibration needs 6 entry lines");
                    const Line& el = lines[idx++];
                    const int deg = tw[static_cast<std::size_t>(i)] +
                                    tw[static_cast<std::size_t>(j)] + lt;
                    TriPoly e = parse_entry_line(out.field, el, deg, i, j);
                    entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        e;
                    entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                        e;
                }
            out.fibration = ConicFibration(out.field, tw, lt, entries);
            continue;
        }
        if (kw == "curve") {
            if (out.curve)
                throw ParseError(line->number, line->tokens[0].column,
                                 "duplicate curve section");
            if (line->tokens.size() != 2)
                throw ParseError(line->number, line->tokens[0].column,
                                 "'curve' takes the degree");
            const int d =
                static_cast<int>(parse_int(*line, line->tokens[1], "curve degree"));
            const int header_line = line->number;
            ++idx;
            std::array<BiForm, 3> rho = {BiForm::zero(out.field, d < 1 ? 1 : d),
                                         BiForm::zero(out.field, d < 1 ? 1 : d),
                                         BiForm::zero(out.field, d < 1 ? 1 : d)};
            if (d >= 1)
                for (int c = 0; c < 3; ++c) {
                    if (idx >= lines.size())
                        throw ParseError(header_line, 1,
                                         "curve needs 3 component lines");
                    rho[static_cast<std::size_t>(c)] =
                        parse_rho_line(out.field, lines[idx++], d, c);
                }
            out.curve = ParamCurve(out.field, d, rho);
            continue;
        }
        if (kw == "branch") {
            if (out.branch)
                throw ParseError(line->number, line->tokens[0].column,
                                 "duplicate branch section");
            out.branch = parse_poly_tokens(out.field, *line, 1);
            ++idx;
            continue;
        }
        if (kw == "bundle") {
            if (out.bundle_shape)
                throw ParseError(line->number, line->tokens[0].column,
                                 "duplicate bundle section");
            if (line->tokens.size() < 2)
                throw ParseError(line->number, line->tokens[0].column,
                                 "'bundle' needs a shape");
            const std::string shape = line->tokens[1].text;
            if (shape != "trivial" && shape != "ramification" && shape != "pullback")
                throw ParseError(line->number, line->tokens[1].column,
                                 "bundle shape must be trivial, ramification, "
                                 "or pullback");
            out.bundle_shape = shape;
            if (shape != "trivial")
                out.bundle_payload = parse_poly_tokens(out.field, *line, 2);
            ++idx;
            continue;
        }
        throw ParseError(line->number, line->tokens[0].column,
                         "unknown section '" + kw + "'");
    }
    return out;
}

ConicFibration parse_fibration(const std::string& text) {
    ParsedInput in = parse_input(text);
    if (!in.fibration) throw ParseError(1, 1, "input has no fibration section");
    return *in.fibration;
}

ParamCurve parse_curve(const std::string& text) {
    ParsedInput in = parse_input(text);
    if (!in.curve) throw ParseError(1, 1, "input has no curve section");
    return *in.curve;
}

std::string serialize_field(const FieldPtr& f) {
    const long long p = f->characteristic();
    if (p == 0)
        throw MathError("bad-field", "only finite fields are serializable");
    if (f->degree() == 1) return "field " + std::to_string(p) + "\n";
    if (!f->same(*field_of_degree(p, f->degree())))
        throw MathError("bad-field",
                        "only the canonical extension field is serializable");
    return "field " + std::to_string(p) + " " + std::to_string(f->degree()) + "\n";
}

std::string serialize_fibration(const ConicFibration& fib) {
    std::string out = serialize_field(fib.field());
    out += "twists";
    for (int k = 0; k < 3; ++k)
        out += " " + std::to_string(fib.twist_degrees()[static_cast<std::size_t>(k)]);
    out += " " + std::to_string(fib.line_degree()) + "\n";
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            std::string entry_line;
            for (const auto& [key, c] : fib.entry(i, j).terms()) {
                if (!entry_line.empty()) entry_line += " ";
                entry_line += coefficient_text(c) + " " + std::to_string(key[0]) +
                              " " + std::to_string(key[1]) + " " +
                              std::to_string(key[2]);
            }
            out += entry_line + "\n";
        }
    return out;
}

std::string serialize_fibration_and_curve(const ConicFibration& fib,
                                          const ParamCurve& curve) {
    if (!fib.field()->same(*curve.field()))
        throw MathError("ring-mismatch", "fibration and curve fields differ");
    std::string out = serialize_fibration(fib);
    out += "curve " + std::to_string(curve.degree()) + "\n";
    for (int c = 0; c < 3; ++c) {
        std::string line;
        const BiForm& rho = curve.rho(c);
        for (int k = 0; k <= curve.degree(); ++k) {
            const Fel coeff = rho.coeff(k);
            if (coeff == Fel::from_int(curve.field(), 0)) continue;
            if (!line.empty()) line += " ";
            line += coefficient_text(coeff) + " " + std::to_string(k) + " " +
                    std::to_string(curve.degree() - k);
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace cliffordprym
