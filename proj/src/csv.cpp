#include "kernmink/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kernmink {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

bool parse_number(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !tok.empty();
}

bool parse_int(const std::string& tok, long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !tok.empty();
}

[[noreturn]] void fail_at(std::size_t row, std::size_t col, const std::string& what) {
    throw std::runtime_error("csv: row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ": " + what);
}

} // namespace

Dataset parse_csv(const std::string& text, const CsvFormat& format) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = trimmed(line);
            if (!t.empty()) lines.push_back(line);
        }
    }
    if (lines.empty()) throw std::runtime_error("csv: empty input");

    std::vector<std::string> header;
    std::size_t first_data = 0;
    {
        const auto fields = split_fields(lines[0]);
        bool all_numeric = true;
        for (const auto& f : fields) {
            double v;
            if (!parse_number(trimmed(f), v)) {
                all_numeric = false;
                break;
            }
        }
        if (!all_numeric) {
            for (const auto& f : fields) header.push_back(trimmed(f));
            first_data = 1;
        }
    }
    if (first_data >= lines.size()) throw std::runtime_error("csv: no data rows");

    const std::size_t width = split_fields(lines[first_data]).size();

    std::optional<std::size_t> label_col;
    if (format.label_column) {
        const std::string& want = *format.label_column;
        for (std::size_t j = 0; j < header.size(); ++j)
            if (header[j] == want) label_col = j;
        if (!label_col) {
            long idx;
            if (parse_int(want, idx) && idx >= 0 && static_cast<std::size_t>(idx) < width)
                label_col = static_cast<std::size_t>(idx);
            else
                throw std::runtime_error("csv: label column '" + want + "' not found");
        }
    }

    const std::size_t feature_width = width - (label_col ? 1 : 0);
    if (feature_width == 0) throw std::runtime_error("csv: no feature columns");

    Dataset ds;
    ds.values = Matrix(lines.size() - first_data, feature_width);
    std::vector<int> labels;

    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const std::size_t row_no = r + 1; // 1-based, counting the header line
        const auto fields = split_fields(lines[r]);
        if (fields.size() != width)
            throw std::runtime_error("csv: row " + std::to_string(row_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(width));
        std::size_t out_j = 0;
        for (std::size_t j = 0; j < width; ++j) {
            const std::string tok = trimmed(fields[j]);
            if (label_col && j == *label_col) {
                long v;
                if (!parse_int(tok, v)) fail_at(row_no, j + 1, "cannot parse label '" + tok + "'");
                labels.push_back(static_cast<int>(v));
                continue;
            }
            double v;
            if (!parse_number(tok, v)) fail_at(row_no, j + 1, "cannot parse '" + tok + "'");
            if (format.require_nonneg && v < 0.0)
                fail_at(row_no, j + 1, "negative feature value not allowed under kernel mode");
            ds.values(r - first_data, out_j++) = v;
        }
    }
    if (label_col) ds.labels = std::move(labels);
    return ds;
}

Dataset load_dataset(const std::string& path, const CsvFormat& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), format);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& header) {
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out << ',';
            out << header[j];
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

std::vector<int> load_int_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<int> out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string tok = trimmed(line);
        if (tok.empty()) continue;
        long v;
        if (!parse_int(tok, v))
            throw std::runtime_error(path + ": line " + std::to_string(row) +
                                     ": expected an integer, got '" + tok + "'");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw std::runtime_error(path + ": no values");
    return out;
}

} // namespace kernmink
