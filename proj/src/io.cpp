#include "derange/io.hpp"

#include <fstream>
#include <sstream>

#include "derange/errors.hpp"

namespace derange {

namespace {

struct Line {
    int number;
    std::string text;
};

// Payload lines with comments stripped and blanks dropped.
std::vector<Line> payload_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        auto begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        auto end = raw.find_last_not_of(" \t\r");
        lines.push_back({number, raw.substr(begin, end - begin + 1)});
    }
    return lines;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw input_error(origin + ":" + std::to_string(line) + ": " + message);
}

std::vector<long> parse_integers(const std::string& origin, const Line& line) {
    std::istringstream in(line.text);
    std::vector<long> values;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            long v = std::stol(token, &used);
            if (used != token.size())
                throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            fail(origin, line.number, "expected an integer, got '" + token + "'");
        }
    }
    return values;
}

int parse_header(const std::string& origin, const Line& line, const std::string& keyword) {
    std::istringstream in(line.text);
    std::string word;
    long value = 0;
    if (!(in >> word >> value) || word != keyword)
        fail(origin, line.number, "expected '" + keyword + " <n>'");
    std::string extra;
    if (in >> extra)
        fail(origin, line.number, "trailing text after '" + keyword + "' header");
    if (value < 0 || value > 1000000)
        fail(origin, line.number, keyword + " out of range");
    return static_cast<int>(value);
}

}  // namespace

GroupFileData parse_group_text(const std::string& text, const std::string& origin) {
    auto lines = payload_lines(text);
    if (lines.empty())
        throw input_error(origin + ": empty group file");
    GroupFileData data;
    data.degree = parse_header(origin, lines[0], "degree");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        try {
            data.generators.push_back(parse_cycles(lines[i].text, data.degree));
        } catch (const input_error& e) {
            fail(origin, lines[i].number, e.what());
        }
    }
    return data;
}

ActionFileData parse_action_text(const std::string& text, const std::string& origin) {
    auto lines = payload_lines(text);
    if (lines.empty())
        throw input_error(origin + ": empty action file");
    ActionFileData data;
    data.group.degree = parse_header(origin, lines[0], "degree");
    std::size_t i = 1;
    for (; i < lines.size(); ++i) {
        if (lines[i].text.rfind("orbits", 0) == 0)
            break;
        try {
            data.group.generators.push_back(parse_cycles(lines[i].text, data.group.degree));
        } catch (const input_error& e) {
            fail(origin, lines[i].number, e.what());
        }
    }
    if (i == lines.size())
        return data;
    int k = parse_header(origin, lines[i], "orbits");
    ++i;
    data.has_orbits = true;
    for (int o = 0; o < k; ++o, ++i) {
        if (i >= lines.size())
            throw input_error(origin + ": expected " + std::to_string(k) + " orbit lines");
        auto points = parse_integers(origin, lines[i]);
        if (points.empty())
            fail(origin, lines[i].number, "empty orbit line");
        std::vector<int> orbit;
        for (long pt : points) {
            if (pt < 1 || pt > data.group.degree)
                fail(origin, lines[i].number, "orbit point out of range (points are 1-based)");
            orbit.push_back(static_cast<int>(pt - 1));
        }
        data.orbits.push_back(std::move(orbit));
    }
    if (i != lines.size())
        fail(origin, lines[i].number, "unexpected text after orbit lists");
    return data;
}

MatrixFileData parse_matrix_text(const std::string& text, const std::string& origin) {
    auto lines = payload_lines(text);
    if (lines.empty())
        throw input_error(origin + ": empty matrix file");
    auto header = parse_integers(origin, lines[0]);
    if (header.size() != 2)
        fail(origin, lines[0].number, "expected header 'p d'");
    MatrixFileData data;
    data.p = header[0];
    data.d = static_cast<int>(header[1]);
    if (data.p < 2)
        fail(origin, lines[0].number, "modulus must be at least 2");
    if (data.d < 1 || data.d > 64)
        fail(origin, lines[0].number, "dimension out of range");
    std::vector<std::vector<long>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto row = parse_integers(origin, lines[i]);
        if (static_cast<int>(row.size()) != data.d)
            fail(origin, lines[i].number,
                 "expected " + std::to_string(data.d) + " entries per row");
        rows.push_back(std::move(row));
        if (static_cast<int>(rows.size()) == data.d) {
            data.matrices.push_back(rows);
            rows.clear();
        }
    }
    if (!rows.empty())
        throw input_error(origin + ": trailing partial matrix (" + std::to_string(rows.size()) +
                          " of " + std::to_string(data.d) + " rows)");
    return data;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

GroupFileData load_group_file(const std::string& path) {
    return parse_group_text(read_text_file(path), path);
}

ActionFileData load_action_file(const std::string& path) {
    return parse_action_text(read_text_file(path), path);
}

MatrixFileData load_matrix_file(const std::string& path) {
    return parse_matrix_text(read_text_file(path), path);
}

std::string format_group_file(int degree, const std::vector<Permutation>& generators) {
    std::ostringstream out;
    out << "degree " << degree << "\n";
    for (const auto& g : generators)
        out << format_cycles(g) << "\n";
    return out.str();
}

std::string format_action_file(const MultiOrbitAction& action) {
    std::ostringstream out;
    out << "degree " << action.domain_size() << "\n";
    for (const auto& g : action.aligned_generators())
        out << format_cycles(g) << "\n";
    out << "orbits " << action.orbit_count() << "\n";
    for (const auto& orbit : action.orbits()) {
        for (std::size_t i = 0; i < orbit.size(); ++i)
            out << (i ? " " : "") << (orbit[i] + 1);
        out << "\n";
    }
    return out.str();
}

MultiOrbitAction realize_action(const ActionFileData& data) {
    PermGroup group(data.group.degree, data.group.generators);
    if (data.has_orbits)
        return MultiOrbitAction(group, data.group.generators, data.orbits);
    return MultiOrbitAction(group, data.group.generators, orbit_partition(group));
}

}  // namespace derange
