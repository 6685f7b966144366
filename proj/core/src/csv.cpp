#include "softcircuit/io/csv.hpp"

#include "softcircuit/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace softcircuit::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return out;
}

double parse_number(std::string_view field, std::size_t line) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("not a number: '" + std::string(field) + "'", line);
    }
    if (!std::isfinite(v)) throw ParseError("non-finite value", line);
    return v;
}

void expect_header(const CsvTable& table, std::string_view a, std::string_view b) {
    if (table.header.size() != 2 || table.header[0] != a || table.header[1] != b) {
        throw ParseError("expected header '" + std::string(a) + "," + std::string(b) + "'", 1);
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    bool have_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) {
            if (!have_header) throw ParseError("missing header row", line_no);
            // Only trailing blank lines are tolerated.
            if (trim(text).find_first_not_of("\r\n") != std::string_view::npos) {
                throw ParseError("blank line inside data", line_no);
            }
            break;
        }
        const auto fields = split_fields(line);
        if (!have_header) {
            for (auto f : fields) table.header.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) row.push_back(parse_number(f, line_no));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("empty CSV", 1);
    return table;
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("cannot write " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text_file(path)); }

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    write_text_file(path, to_csv(table));
}

biosignal::SignalRecording parse_signal_csv(std::string_view text, std::optional<double> sample_rate_hz) {
    const auto table = parse_csv(text);
    expect_header(table, "t_s", "value");
    const std::size_t n = table.rows.size();
    if (n < 2) throw ParseError("signal needs at least two samples", n + 1);

    for (std::size_t k = 1; k < n; ++k) {
        if (!(table.rows[k][0] > table.rows[k - 1][0])) {
            throw ParseError("timestamps must increase strictly", k + 2);
        }
    }
    const double t0 = table.rows.front()[0];
    const double fs = sample_rate_hz.value_or(static_cast<double>(n - 1) / (table.rows.back()[0] - t0));
    if (!std::isfinite(fs) || fs <= 0.0) throw ValidationError("sample rate must be > 0");
    for (std::size_t k = 1; k < n; ++k) {
        const double elapsed_samples = (table.rows[k][0] - t0) * fs;
        const double expected = static_cast<double>(k);
        if (std::abs(elapsed_samples - expected) > kUniformityTolerance * expected) {
            throw ParseError("non-uniform sampling at " + format_double(fs) + " Hz", k + 2);
        }
    }

    biosignal::SignalRecording rec;
    rec.sample_rate_hz = fs;
    rec.samples.reserve(n);
    for (const auto& row : table.rows) rec.samples.push_back(row[1]);
    return rec;
}

biosignal::SignalRecording read_signal_csv(const std::filesystem::path& path,
                                           std::optional<double> sample_rate_hz) {
    return parse_signal_csv(read_text_file(path), sample_rate_hz);
}

CsvTable signal_table(const biosignal::SignalRecording& signal) {
    CsvTable table{{"t_s", "value"}, {}};
    table.rows.reserve(signal.samples.size());
    for (std::size_t k = 0; k < signal.samples.size(); ++k) {
        table.rows.push_back({static_cast<double>(k) / signal.sample_rate_hz, signal.samples[k]});
    }
    return table;
}

std::vector<coldchain::TemperatureSample> parse_temperature_csv(std::string_view text) {
    const auto table = parse_csv(text);
    expect_header(table, "epoch_s", "temp_c");
    std::vector<coldchain::TemperatureSample> out;
    out.reserve(table.rows.size());
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const double epoch = table.rows[k][0];
        if (epoch < 0.0 || epoch != std::floor(epoch) || epoch > 9.0e15) {
            throw ParseError("epoch_s must be a non-negative integer", k + 2);
        }
        const auto e = static_cast<std::int64_t>(epoch);
        if (!out.empty() && e <= out.back().epoch_s) {
            throw ParseError("epochs must increase strictly", k + 2);
        }
        out.push_back({e, table.rows[k][1]});
    }
    return out;
}

std::vector<coldchain::TemperatureSample> read_temperature_csv(const std::filesystem::path& path) {
    return parse_temperature_csv(read_text_file(path));
}

}  // namespace softcircuit::io
