#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cdsp::io {

Sample read_two_column_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    Sample s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        for (char& c : line)
            if (c == ',' || c == '\t') c = ' ';

        std::istringstream ss(line);
        std::vector<double> vals;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(tok, &pos);
                if (pos != tok.size()) throw InputError("");
                vals.push_back(v);
            } catch (...) {
                throw InputError(path + ": line " + std::to_string(lineno) +
                                 ": malformed numeric token '" + tok + "'");
            }
        }
        if (vals.empty()) continue;
        if (vals.size() != 2)
            throw InputError(path + ": line " + std::to_string(lineno) +
                             ": expected exactly 2 columns, got " +
                             std::to_string(vals.size()));
        s.xs.push_back(vals[0]);
        s.ys.push_back(vals[1]);
    }
    if (s.xs.empty()) throw InputError(path + ": no data rows");
    validate_sample(s);
    return s;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                         std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace cdsp::io
