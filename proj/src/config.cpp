#include "wib/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wib/error.hpp"
#include "wib/sysid.hpp"

namespace wib {

namespace {

struct Value {
    enum class Kind { Number, Word, String, List } kind = Kind::Word;
    std::string text;  // raw token for numbers, words and strings
    double number = 0.0;
    std::vector<Value> items;
};

struct Entry {
    Value value;
    int line = 0;
};

[[noreturn]] void parse_error(int line, const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
    throw Error(Errc::ValidationError, field + ": " + msg);
}

class ValueParser {
  public:
    ValueParser(std::string_view src, int line) : src_(src), line_(line) {}

    Value parse() {
        Value v = value();
        skip_space();
        if (pos_ != src_.size()) parse_error(line_, "trailing characters after value");
        return v;
    }

  private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    Value value() {
        skip_space();
        if (pos_ >= src_.size()) parse_error(line_, "missing value");
        const char c = src_[pos_];
        if (c == '[') return list();
        if (c == '"') return quoted();
        return scalar();
    }

    Value list() {
        Value v;
        v.kind = Value::Kind::List;
        ++pos_;
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == ']') {
            ++pos_;
            return v;
        }
        while (true) {
            v.items.push_back(value());
            skip_space();
            if (pos_ >= src_.size()) parse_error(line_, "unterminated list");
            if (src_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (src_[pos_] == ']') {
                ++pos_;
                return v;
            }
            parse_error(line_, std::string("unexpected '") + src_[pos_] + "' in list");
        }
    }

    Value quoted() {
        Value v;
        v.kind = Value::Kind::String;
        ++pos_;
        const auto end = src_.find('"', pos_);
        if (end == std::string_view::npos) parse_error(line_, "unterminated string");
        v.text = std::string(src_.substr(pos_, end - pos_));
        pos_ = end + 1;
        return v;
    }

    Value scalar() {
        const auto start = pos_;
        while (pos_ < src_.size() && src_[pos_] != ',' && src_[pos_] != ']' && src_[pos_] != '[' &&
               !std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        Value v;
        v.text = std::string(src_.substr(start, pos_ - start));
        if (v.text.empty()) parse_error(line_, "empty value");
        const char* first = v.text.data();
        const char* last = first + v.text.size();
        double number = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, number);
        if (ec == std::errc() && ptr == last) {
            v.kind = Value::Kind::Number;
            v.number = number;
        } else {
            v.kind = Value::Kind::Word;
        }
        return v;
    }

    std::string_view src_;
    int line_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (!in_string && (line[i] == '#' || line[i] == ';')) return line.substr(0, i);
    }
    return line;
}

int bracket_balance(std::string_view s) {
    int depth = 0;
    bool in_string = false;
    for (char c : s) {
        if (c == '"') in_string = !in_string;
        if (in_string) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

using Document = std::map<std::string, std::map<std::string, Entry>>;

Document parse_document(std::string_view text) {
    Document doc;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[' && line.find('=') == std::string_view::npos) {
            if (line.back() != ']') parse_error(line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) parse_error(line_no, "empty section name");
            doc[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_error(line_no, "expected 'key = value'");
        if (section.empty()) parse_error(line_no, "key outside of any section");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) parse_error(line_no, "missing key");
        std::string value_text(trim(line.substr(eq + 1)));
        const int start_line = line_no;
        // Lists may continue over several lines until their brackets balance.
        while (bracket_balance(value_text) > 0 && std::getline(in, raw)) {
            ++line_no;
            value_text += ' ';
            value_text += trim(strip_comment(raw));
        }
        if (bracket_balance(value_text) != 0) parse_error(start_line, "unbalanced brackets");
        auto& entries = doc[section];
        if (entries.count(key)) invalid(section + "." + key, "duplicate key");
        entries[key] = Entry{ValueParser(value_text, start_line).parse(), start_line};
    }
    return doc;
}

double as_number(const Entry& e, const std::string& field) {
    if (e.value.kind != Value::Kind::Number) invalid(field, "expected a number, got '" + e.value.text + "'");
    return e.value.number;
}

std::int64_t as_integer(const Entry& e, const std::string& field) {
    const double v = as_number(e, field);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) invalid(field, "expected an integer");
    return static_cast<std::int64_t>(v);
}

std::uint64_t as_seed(const Entry& e, const std::string& field) {
    if (e.value.kind != Value::Kind::Number) invalid(field, "expected a non-negative integer");
    std::uint64_t seed = 0;
    const char* first = e.value.text.data();
    const char* last = first + e.value.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, seed);
    if (ec != std::errc() || ptr != last) invalid(field, "expected a 64-bit non-negative integer");
    return seed;
}

std::string as_text(const Entry& e, const std::string& field) {
    if (e.value.kind == Value::Kind::List) invalid(field, "expected a word or string");
    return e.value.text;
}

std::vector<double> as_number_list(const Value& v, const std::string& field) {
    if (v.kind != Value::Kind::List) invalid(field, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : v.items) {
        if (item.kind != Value::Kind::Number) invalid(field, "expected a list of numbers");
        out.push_back(item.number);
    }
    return out;
}

std::vector<Vec2> as_vec2_list(const Value& v, const std::string& field) {
    if (v.kind != Value::Kind::List) invalid(field, "expected a list of [x, y] pairs");
    std::vector<Vec2> out;
    for (const auto& item : v.items) {
        const auto pair = as_number_list(item, field);
        if (pair.size() != 2) invalid(field, "every mean must have exactly 2 coordinates");
        out.push_back({pair[0], pair[1]});
    }
    return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"instance", {"means", "variances"}},
        {"run", {"mode", "T", "replications", "seed", "policies", "mc_samples", "thin", "out", "workers"}},
        {"gain", {"g_coeffs", "h_coeffs", "K"}},
        {"verify", {"scale"}},
    };
    return keys;
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
        case Mode::Simulate: return "simulate";
        case Mode::Gain: return "gain";
        case Mode::Verify: return "verify";
    }
    return "unknown";
}

RunConfig parse_config(std::string_view text) {
    const Document doc = parse_document(text);
    for (const auto& [section, entries] : doc) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) invalid(section, "unknown section");
        for (const auto& [key, entry] : entries) {
            if (!it->second.count(key)) {
                invalid(section + "." + key, "unknown key (line " + std::to_string(entry.line) + ")");
            }
        }
    }
    auto find = [&](const std::string& section, const std::string& key) -> const Entry* {
        const auto s = doc.find(section);
        if (s == doc.end()) return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };

    RunConfig cfg;
    if (const Entry* e = find("run", "mode")) {
        const std::string mode = as_text(*e, "run.mode");
        if (mode == "simulate") cfg.mode = Mode::Simulate;
        else if (mode == "gain") cfg.mode = Mode::Gain;
        else if (mode == "verify") cfg.mode = Mode::Verify;
        else invalid("run.mode", "expected simulate, gain or verify, got '" + mode + "'");
    } else if (doc.count("gain")) {
        cfg.mode = Mode::Gain;
    }
    if (const Entry* e = find("run", "T")) cfg.horizon = as_integer(*e, "run.T");
    if (const Entry* e = find("run", "replications")) cfg.replications = as_integer(*e, "run.replications");
    if (const Entry* e = find("run", "seed")) cfg.seed = as_seed(*e, "run.seed");
    if (const Entry* e = find("run", "mc_samples")) {
        const auto m = as_integer(*e, "run.mc_samples");
        if (m < 1) invalid("run.mc_samples", "must be >= 1");
        cfg.mc_samples = static_cast<std::size_t>(m);
    }
    if (const Entry* e = find("run", "thin")) cfg.thin = as_integer(*e, "run.thin");
    if (const Entry* e = find("run", "out")) cfg.out = as_text(*e, "run.out");
    if (const Entry* e = find("run", "workers")) cfg.workers = static_cast<int>(as_integer(*e, "run.workers"));
    if (const Entry* e = find("run", "policies")) {
        if (e->value.kind != Value::Kind::List) invalid("run.policies", "expected a list of policy names");
        cfg.policies.clear();
        for (const auto& item : e->value.items) {
            const auto kind = parse_policy_kind(item.text);
            if (item.kind == Value::Kind::List || !kind) invalid("run.policies", "unknown policy '" + item.text + "'");
            cfg.policies.push_back(*kind);
        }
    }
    if (doc.count("instance")) {
        InstanceSpec spec;
        if (const Entry* e = find("instance", "means")) spec.means = as_vec2_list(e->value, "instance.means");
        else invalid("instance.means", "missing");
        if (const Entry* e = find("instance", "variances")) {
            spec.variances = as_number_list(e->value, "instance.variances");
        } else {
            invalid("instance.variances", "missing");
        }
        cfg.instance = std::move(spec);
    }
    if (doc.count("gain")) {
        GainSpec spec;
        if (const Entry* e = find("gain", "g_coeffs")) spec.g_coeffs = as_number_list(e->value, "gain.g_coeffs");
        else invalid("gain.g_coeffs", "missing");
        if (const Entry* e = find("gain", "h_coeffs")) spec.h_coeffs = as_number_list(e->value, "gain.h_coeffs");
        else invalid("gain.h_coeffs", "missing");
        if (const Entry* e = find("gain", "K")) {
            const auto k = as_integer(*e, "gain.K");
            if (k < 2) invalid("gain.K", "must be >= 2");
            spec.K = static_cast<std::size_t>(k);
        } else {
            invalid("gain.K", "missing");
        }
        cfg.gain = std::move(spec);
    }
    if (const Entry* e = find("verify", "scale")) cfg.verify_scale = as_number(*e, "verify.scale");

    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.replications < 1) invalid("run.replications", "must be >= 1");
    if (cfg.thin < 1) invalid("run.thin", "must be >= 1");
    if (cfg.mc_samples < 1) invalid("run.mc_samples", "must be >= 1");
    if (cfg.workers < 0) invalid("run.workers", "must be >= 0");
    if (!(cfg.verify_scale > 0.0)) invalid("verify.scale", "must be > 0");
    if (cfg.mode == Mode::Verify) return;

    if (cfg.horizon < 4) invalid("run.T", "T >= 4 is required (the posterior needs t >= 4)");
    if (cfg.policies.empty()) invalid("run.policies", "at least one policy is required");
    if (cfg.mode == Mode::Simulate) {
        if (!cfg.instance) invalid("instance", "simulate mode needs an [instance] section");
        try {
            BanditInstance::create(cfg.instance->means, cfg.instance->variances);
        } catch (const Error& e) {
            invalid("instance", e.what());
        }
    } else {
        if (!cfg.gain) invalid("gain", "gain mode needs a [gain] section");
        try {
            grid_from_fir(cfg.gain->g_coeffs, cfg.gain->h_coeffs, cfg.gain->K);
        } catch (const Error& e) {
            invalid("gain", e.what());
        }
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RunConfig default_verify_config() {
    RunConfig cfg;
    cfg.mode = Mode::Verify;
    cfg.seed = 20211;
    return cfg;
}

}  // namespace wib
