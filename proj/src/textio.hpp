#pragma once

// Line/token helpers shared by the text formats. All formats are UTF-8,
// LF-terminated, one record per line, with '#' starting a comment.

#include "ums/metric_space.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace ums::detail {

struct Line {
    std::vector<std::string> tokens;
    long long number = 0;
};

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-empty, non-comment line split on whitespace; false at EOF.
    bool next(Line& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_no_;
            auto hash = raw.find('#');
            if (hash != std::string::npos)
                raw.erase(hash);
            std::istringstream ss(raw);
            out.tokens.clear();
            std::string tok;
            while (ss >> tok)
                out.tokens.push_back(tok);
            if (!out.tokens.empty()) {
                out.number = line_no_;
                return true;
            }
        }
        return false;
    }

    long long line_no() const { return line_no_; }

private:
    std::istream& in_;
    long long line_no_ = 0;
};

[[noreturn]] inline void parse_fail(long long line, const std::string& msg) {
    throw MetricError("ParseError", {line}, msg);
}

inline long long to_index(const Line& ln, const std::string& tok) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size())
            parse_fail(ln.number, "bad integer '" + tok + "'");
        return v;
    } catch (const MetricError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(ln.number, "bad integer '" + tok + "'");
    }
}

inline Rational to_rational(const Line& ln, const std::string& tok) {
    try {
        return Rational::parse(tok);
    } catch (const std::exception&) {
        parse_fail(ln.number, "bad rational '" + tok + "'");
    }
}

inline void expect_header(LineReader& rd, const std::string& kind) {
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != kind || ln.tokens[1] != "v1")
        parse_fail(ln.number, "expected '" + kind + " v1' header");
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw MetricError("FileError", {}, "cannot open '" + path + "'");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw MetricError("FileError", {}, "cannot write '" + path + "'");
    return out;
}

// Resolves a referenced path relative to the directory of the file that
// references it.
inline std::string sibling_path(const std::string& anchor, const std::string& ref) {
    if (!ref.empty() && ref.front() == '/')
        return ref;
    auto slash = anchor.find_last_of('/');
    if (slash == std::string::npos)
        return ref;
    return anchor.substr(0, slash + 1) + ref;
}

} // namespace ums::detail
