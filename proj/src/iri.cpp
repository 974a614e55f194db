#include "aligndash/iri.hpp"

#include "aligndash/alignment.hpp"

#include <optional>

namespace aligndash {

namespace {

struct IriParts {
    std::optional<std::string_view> scheme;
    std::optional<std::string_view> authority;
    std::string_view path;
    std::optional<std::string_view> query;
    std::optional<std::string_view> fragment;
};

IriParts split(std::string_view s) {
    IriParts p;
    if (auto hash = s.find('#'); hash != std::string_view::npos) {
        p.fragment = s.substr(hash + 1);
        s = s.substr(0, hash);
    }
    if (auto q = s.find('?'); q != std::string_view::npos) {
        p.query = s.substr(q + 1);
        s = s.substr(0, q);
    }
    if (is_absolute_uri(s)) {
        auto colon = s.find(':');
        p.scheme = s.substr(0, colon);
        s = s.substr(colon + 1);
    }
    if (s.starts_with("//")) {
        s = s.substr(2);
        auto slash = s.find('/');
        p.authority = s.substr(0, slash);
        s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
    }
    p.path = s;
    return p;
}

std::string remove_dot_segments(std::string_view in) {
    std::string out;
    while (!in.empty()) {
        if (in.starts_with("../")) {
            in.remove_prefix(3);
        } else if (in.starts_with("./")) {
            in.remove_prefix(2);
        } else if (in.starts_with("/./")) {
            in.remove_prefix(2);
        } else if (in == "/.") {
            in = "/";
        } else if (in.starts_with("/../") || in == "/..") {
            in = in.size() == 3 ? std::string_view("/") : in.substr(3);
            auto last = out.rfind('/');
            out.erase(last == std::string::npos ? 0 : last);
        } else if (in == "." || in == "..") {
            in = {};
        } else {
            auto next = in.find('/', in.front() == '/' ? 1 : 0);
            auto seg = in.substr(0, next);
            out.append(seg);
            in.remove_prefix(seg.size());
        }
    }
    return out;
}

std::string merge_paths(const IriParts& base, std::string_view ref_path) {
    if (base.authority && base.path.empty()) return "/" + std::string(ref_path);
    auto slash = base.path.rfind('/');
    if (slash == std::string_view::npos) return std::string(ref_path);
    return std::string(base.path.substr(0, slash + 1)) + std::string(ref_path);
}

std::string recompose(const IriParts& p, const std::string& path) {
    std::string out;
    if (p.scheme) out.append(*p.scheme).push_back(':');
    if (p.authority) out.append("//").append(*p.authority);
    out.append(path);
    if (p.query) out.append("?").append(*p.query);
    if (p.fragment) out.append("#").append(*p.fragment);
    return out;
}

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view reference) {
    const IriParts ref = split(reference);
    if (ref.scheme) return recompose(ref, remove_dot_segments(ref.path));
    if (base.empty()) return std::string(reference);

    const IriParts b = split(base);
    IriParts t;
    std::string path;
    t.scheme = b.scheme;
    if (ref.authority) {
        t.authority = ref.authority;
        path = remove_dot_segments(ref.path);
        t.query = ref.query;
    } else {
        t.authority = b.authority;
        if (ref.path.empty()) {
            path = std::string(b.path);
            t.query = ref.query ? ref.query : b.query;
        } else {
            if (ref.path.front() == '/') {
                path = remove_dot_segments(ref.path);
            } else {
                path = remove_dot_segments(merge_paths(b, ref.path));
            }
            t.query = ref.query;
        }
    }
    t.fragment = ref.fragment;
    return recompose(t, path);
}

std::string_view local_name(std::string_view iri) {
    auto pos = iri.rfind('#');
    if (pos == std::string_view::npos) pos = iri.rfind('/');
    if (pos == std::string_view::npos || pos + 1 == iri.size()) return iri;
    return iri.substr(pos + 1);
}

}  // namespace aligndash
