#include <fmt/format.h>

#include <charconv>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "aligndash/dashboard.hpp"
#include "aligndash/errors.hpp"
#include "text_util.hpp"
#include "ui_assets.hpp"

namespace aligndash {

namespace {

constexpr std::string_view kConfigId = "aldash-config";
constexpr std::string_view kDataId = "aldash-data";

// Splits one CSV record starting at `pos`; advances `pos` past its line break.
std::vector<std::string> read_csv_record(std::string_view csv, std::size_t& pos, std::size_t line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    while (pos < csv.size()) {
        const char ch = csv[pos++];
        if (quoted) {
            if (ch == '"') {
                if (pos < csv.size() && csv[pos] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && pos < csv.size() && csv[pos] == '\n') ++pos;
            break;
        } else {
            if (was_quoted) throw std::runtime_error(fmt::format("CSV record {}: text after closing quote", line));
            field.push_back(ch);
        }
    }
    if (quoted) throw std::runtime_error(fmt::format("CSV record {}: unterminated quoted field", line));
    fields.push_back(std::move(field));
    return fields;
}

// `data_block` additionally escapes the characters that could make data text
// look like an attribute, url() or @import to a reference scanner.
void append_html_text(std::string& out, std::string_view text, bool data_block) {
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '=': data_block ? out += "&#61;" : out += ch; break;
            case '(': data_block ? out += "&#40;" : out += ch; break;
            case '@': data_block ? out += "&#64;" : out += ch; break;
            default: out += ch;
        }
    }
}

std::string decode_html_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out.push_back(text[i]);
            continue;
        }
        const auto semi = text.find(';', i);
        if (semi == std::string_view::npos) throw std::runtime_error("unterminated character reference");
        const std::string_view ref = text.substr(i + 1, semi - i - 1);
        if (ref == "amp") out.push_back('&');
        else if (ref == "lt") out.push_back('<');
        else if (ref == "gt") out.push_back('>');
        else if (ref == "quot") out.push_back('"');
        else if (ref.starts_with('#')) {
            unsigned cp = 0;
            const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
            const auto digits = ref.substr(hex ? 2 : 1);
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
            if (ec != std::errc() || p != digits.data() + digits.size() || cp > 0x7F) {
                throw std::runtime_error("unsupported character reference &" + std::string(ref) + ";");
            }
            out.push_back(static_cast<char>(cp));
        } else {
            throw std::runtime_error("unknown entity &" + std::string(ref) + ";");
        }
        i = semi;
    }
    return out;
}

// Keeps embedded code from closing its own element early.
std::string guard_closing_tag(std::string_view code, std::string_view tag) {
    std::string out(code);
    const std::string needle = "</" + std::string(tag);
    for (auto pos = out.find(needle); pos != std::string::npos; pos = out.find(needle, pos + 3)) {
        out.replace(pos, 2, "<\\/");
    }
    return out;
}

std::string_view element_content(std::string_view html, std::string_view id) {
    const std::string marker = "id=\"" + std::string(id) + "\"";
    const auto at = html.find(marker);
    if (at == std::string_view::npos) throw std::runtime_error("no element with id " + std::string(id));
    const auto open_end = html.find('>', at);
    const auto close = html.find("</", open_end);
    if (open_end == std::string_view::npos || close == std::string_view::npos) {
        throw std::runtime_error("unterminated element " + std::string(id));
    }
    return html.substr(open_end + 1, close - open_end - 1);
}

bool iequals_at(std::string_view s, std::size_t pos, std::string_view word) {
    if (s.size() - pos < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        char c = s[pos + i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (c != word[i]) return false;
    }
    return true;
}

std::size_t skip_spaces(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_ascii_space(s[pos])) ++pos;
    return pos;
}

bool http_at(std::string_view s, std::size_t pos) { return iequals_at(s, pos, "http://") || iequals_at(s, pos, "https://"); }

}  // namespace

std::string format_confidence(double confidence) {
    std::string text = fmt::format("{:.6f}", confidence);
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
    if (text == "-0") text = "0";
    return text;
}

std::string write_dataset_csv(std::span<const AnnotatedCell> rows) {
    std::string out;
    out.reserve(kDatasetCsvHeader.size() + 1 + rows.size() * 200);
    out.append(kDatasetCsvHeader).push_back('\n');
    for (const auto& r : rows) {
        append_csv_field(out, r.track);
        out.push_back(',');
        append_csv_field(out, r.testcase);
        out.push_back(',');
        append_csv_field(out, r.matcher);
        out.push_back(',');
        append_csv_field(out, r.source);
        out.push_back(',');
        append_csv_field(out, r.target);
        out.push_back(',');
        append_csv_field(out, r.relation.raw());
        out.push_back(',');
        out.append(format_confidence(r.confidence)).push_back(',');
        out.append(to_token(r.outcome)).push_back(',');
        out.append(to_token(r.left_type)).push_back(',');
        out.append(to_token(r.right_type)).push_back(',');
        out.append(r.residual ? "true" : "false").push_back('\n');
    }
    return out;
}

std::vector<AnnotatedCell> read_dataset_csv(std::string_view csv) {
    std::size_t pos = 0;
    std::size_t line = 1;
    const auto header = read_csv_record(csv, pos, line);
    std::string joined;
    for (std::size_t i = 0; i < header.size(); ++i) joined.append(i ? "," : "").append(header[i]);
    if (joined != kDatasetCsvHeader) throw std::runtime_error("unexpected dataset header: " + joined);

    std::vector<AnnotatedCell> rows;
    while (pos < csv.size()) {
        ++line;
        auto f = read_csv_record(csv, pos, line);
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 11) throw std::runtime_error(fmt::format("CSV record {}: expected 11 fields, got {}", line, f.size()));
        AnnotatedCell r;
        r.track = std::move(f[0]);
        r.testcase = std::move(f[1]);
        r.matcher = std::move(f[2]);
        r.source = std::move(f[3]);
        r.target = std::move(f[4]);
        r.relation = Relation::parse(f[5]);
        auto [p, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), r.confidence);
        if (ec != std::errc() || p != f[6].data() + f[6].size()) {
            throw std::runtime_error(fmt::format("CSV record {}: bad confidence '{}'", line, f[6]));
        }
        auto outcome = outcome_from_token(f[7]);
        auto left = element_type_from_token(f[8]);
        auto right = element_type_from_token(f[9]);
        if (!outcome || !left || !right || (f[10] != "true" && f[10] != "false")) {
            throw std::runtime_error(fmt::format("CSV record {}: bad enumerated field", line));
        }
        r.outcome = *outcome;
        r.left_type = *left;
        r.right_type = *right;
        r.residual = f[10] == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_dashboard(const DashboardSpec& spec, const RenderOptions& options) {
    if (!(spec.confidence_bin_width > 0.0)) throw std::invalid_argument("confidence bin width must be positive");
    nlohmann::json controls = nlohmann::json::array();
    for (std::size_t i = 0; i < spec.controls.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (spec.controls[i] == spec.controls[j]) {
                throw std::invalid_argument("duplicate control " + std::string(to_token(spec.controls[i])));
            }
        }
        controls.push_back(std::string(to_token(spec.controls[i])));
    }
    const nlohmann::json config = {
        {"title", spec.title},
        {"controls", controls},
        {"confidenceBinWidth", spec.confidence_bin_width},
        {"columns", std::string(kDatasetCsvHeader)},
        {"pageSize", 15},
        {"colors", {{"TP", "#2ca02c"}, {"FP", "#d62728"}, {"FN", "#1f77b4"}}},
    };
    std::string config_text;
    for (char ch : config.dump()) {
        if (ch == '<') config_text += "\\u003c";
        else if (ch == '>') config_text += "\\u003e";
        else if (ch == '&') config_text += "\\u0026";
        else config_text += ch;
    }

    const std::string csv = write_dataset_csv(spec.dataset);
    const std::string_view script = options.ui_script.empty() ? assets::kDashboardScript : options.ui_script;
    const std::string_view style = options.ui_style.empty() ? assets::kDashboardStyle : options.ui_style;

    std::string html;
    html.reserve(csv.size() + csv.size() / 8 + script.size() + style.size() + 1024);
    html.append("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    html.append("<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n<title>");
    append_html_text(html, spec.title, false);
    html.append("</title>\n<style>\n").append(guard_closing_tag(style, "style")).append("\n</style>\n</head>\n<body>\n");
    html.append("<div id=\"aldash-root\"></div>\n");
    html.append("<script type=\"application/json\" id=\"").append(kConfigId).append("\">");
    html.append(config_text).append("</script>\n");
    html.append("<pre id=\"").append(kDataId).append("\" hidden>");
    append_html_text(html, csv, true);
    html.append("</pre>\n<script>\n").append(guard_closing_tag(script, "script")).append("\n</script>\n</body>\n</html>\n");
    return html;
}

void write_dashboard(const std::filesystem::path& path, const DashboardSpec& spec, const RenderOptions& options) {
    write_file(path, render_dashboard(spec, options));
}

std::vector<AnnotatedCell> extract_embedded_dataset(std::string_view html) {
    return read_dataset_csv(decode_html_text(element_content(html, kDataId)));
}

std::vector<ControlKind> extract_embedded_controls(std::string_view html) {
    const auto config = nlohmann::json::parse(element_content(html, kConfigId));
    std::vector<ControlKind> out;
    for (const auto& token : config.at("controls")) {
        auto kind = control_from_token(token.get<std::string>());
        if (!kind) throw std::runtime_error("unknown control " + token.get<std::string>());
        out.push_back(*kind);
    }
    return out;
}

std::vector<std::string> find_external_references(std::string_view html) {
    std::vector<std::string> hits;
    auto record = [&](std::size_t from) {
        auto end = html.find_first_of(" \t\r\n\"'>)", from);
        hits.emplace_back(html.substr(from, (end == std::string_view::npos ? html.size() : end) - from));
    };
    for (std::size_t i = 0; i < html.size(); ++i) {
        std::size_t after = std::string_view::npos;
        if (iequals_at(html, i, "src")) after = i + 3;
        else if (iequals_at(html, i, "href")) after = i + 4;
        if (after != std::string_view::npos) {
            std::size_t p = skip_spaces(html, after);
            if (p < html.size() && html[p] == '=') {
                p = skip_spaces(html, p + 1);
                if (p < html.size() && (html[p] == '"' || html[p] == '\'')) p = skip_spaces(html, p + 1);
                if (http_at(html, p)) record(p);
            }
            continue;
        }
        if (iequals_at(html, i, "url(")) {
            std::size_t p = skip_spaces(html, i + 4);
            if (p < html.size() && (html[p] == '"' || html[p] == '\'')) ++p;
            if (http_at(html, p)) record(p);
        } else if (iequals_at(html, i, "@import")) {
            std::size_t p = skip_spaces(html, i + 7);
            if (p < html.size() && (html[p] == '"' || html[p] == '\'')) ++p;
            if (http_at(html, p)) record(p);
        }
    }
    return hits;
}

}  // namespace aligndash
