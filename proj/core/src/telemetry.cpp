#include "softcircuit/coldchain.hpp"

#include <charconv>
#include <system_error>

namespace softcircuit::coldchain {

namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    if (text.empty()) return false;
    if (text.front() == '+') return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::string format_record(const TemperatureSample& sample) {
    return std::to_string(sample.epoch_s) + "," + std::to_string(to_milli_c(sample.temp_c));
}

TemperatureSample parse_record(std::string_view line, std::size_t line_number) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError("expected '<epoch_s>,<temp_milli_c>'", line_number);
    }
    std::int64_t epoch = 0;
    std::int64_t milli = 0;
    if (!parse_int(line.substr(0, comma), epoch) || epoch < 0) {
        throw ParseError("bad epoch_s", line_number);
    }
    if (!parse_int(line.substr(comma + 1), milli)) {
        throw ParseError("bad temp_milli_c", line_number);
    }
    return {epoch, static_cast<double>(milli) / 1000.0};
}

std::string encode_telemetry(const ColdChainState& state) {
    std::string out;
    out.reserve(32 + state.history.size() * 20);
    out += kTelemetryMagic;
    out += '\n';
    out += "status=";
    out += to_string(state.status);
    out += '\n';
    for (const auto& s : state.history) {
        out += format_record(s);
        out += '\n';
    }
    return out;
}

ColdChainState decode_telemetry(std::string_view payload, const ColdChainConfig& config) {
    std::vector<std::string_view> lines;
    while (!payload.empty()) {
        const auto nl = payload.find('\n');
        lines.push_back(payload.substr(0, nl));
        payload = nl == std::string_view::npos ? std::string_view{} : payload.substr(nl + 1);
    }
    if (lines.empty() || lines[0] != kTelemetryMagic) {
        throw ParseError("unknown telemetry version", 1);
    }
    if (lines.size() < 2) throw ParseError("missing status line", 2);

    Status status;
    if (lines[1] == "status=SAFE") {
        status = Status::safe;
    } else if (lines[1] == "status=UNSAFE") {
        status = Status::unsafe_latched;
    } else {
        throw ParseError("expected status=SAFE or status=UNSAFE", 2);
    }

    ColdChainState replay;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto sample = parse_record(lines[i], i + 1);
        if (replay.last_sample && sample.epoch_s <= replay.last_sample->epoch_s) {
            throw ParseError("epochs must be strictly increasing", i + 1);
        }
        apply(replay, sample, config);
    }

    ColdChainState state;
    state.status = status;
    state.last_sample = replay.last_sample;
    state.history = std::move(replay.history);
    if (status == Status::unsafe_latched) {
        state.latched_at = replay.latched_at;
    } else {
        // Re-derive the open excursion from the trailing hot run.
        for (auto it = state.history.rbegin();
             it != state.history.rend() && it->temp_c > config.threshold_c; ++it) {
            state.excursion_start = it->epoch_s;
        }
    }
    return state;
}

HistoryLog::HistoryLog(const std::filesystem::path& path) : path_(path) {
    if (std::filesystem::exists(path_)) {
        const auto existing = read_history_log(path_);
        if (!existing.empty()) last_epoch_ = existing.back().epoch_s;
    }
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw IoError("cannot open history log " + path_.string());
}

void HistoryLog::append(const TemperatureSample& sample) {
    if (last_epoch_ && sample.epoch_s <= *last_epoch_) {
        throw ValidationError("history log epochs must be strictly increasing");
    }
    const std::string line = format_record(sample) + '\n';
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.flush();
    if (!out_) throw IoError("write to history log " + path_.string() + " failed");
    last_epoch_ = sample.epoch_s;
}

std::vector<TemperatureSample> read_history_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open history log " + path.string());
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::vector<TemperatureSample> out;
    std::string_view rest = content;
    std::size_t line_number = 0;
    while (true) {
        const auto nl = rest.find('\n');
        if (nl == std::string_view::npos) break;  // torn final line
        ++line_number;
        const auto sample = parse_record(rest.substr(0, nl), line_number);
        if (!out.empty() && sample.epoch_s <= out.back().epoch_s) {
            throw ParseError("epochs must be strictly increasing", line_number);
        }
        out.push_back(sample);
        rest.remove_prefix(nl + 1);
    }
    return out;
}

}  // namespace softcircuit::coldchain
