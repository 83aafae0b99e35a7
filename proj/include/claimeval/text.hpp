#pragma once
// Text canonicalization shared by claim handling and the lexical checker.
//
// normalize_text applies Unicode NFC, lowercases, and collapses runs of
// whitespace to a single space. Claim texts are stored in this form, and
// entailment-by-substring is decided on it.

#include <string>
#include <string_view>
#include <stdexcept>
#include <vector>

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf16.h>

namespace claimeval {

namespace detail {

inline std::u16string to_utf16(std::string_view utf8) {
    if (utf8.empty()) return {};
    std::u16string out(utf8.size() + 1, u'\0');
    UErrorCode status = U_ZERO_ERROR;
    int32_t written = 0;
    // Invalid byte sequences become U+FFFD instead of failing the run.
    u_strFromUTF8WithSub(out.data(), static_cast<int32_t>(out.size()), &written,
                         utf8.data(), static_cast<int32_t>(utf8.size()),
                         0xFFFD, nullptr, &status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("utf-8 decode failed: ") + u_errorName(status));
    }
    out.resize(static_cast<size_t>(written));
    return out;
}

inline std::string to_utf8(const std::u16string& utf16) {
    if (utf16.empty()) return {};
    std::string out(utf16.size() * 4, '\0');
    UErrorCode status = U_ZERO_ERROR;
    int32_t written = 0;
    u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &written,
                utf16.data(), static_cast<int32_t>(utf16.size()), &status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("utf-8 encode failed: ") + u_errorName(status));
    }
    out.resize(static_cast<size_t>(written));
    return out;
}

inline std::u16string nfc(const std::u16string& in) {
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("NFC normalizer unavailable");
    }
    std::u16string out(in.size() * 2 + 16, u'\0');
    int32_t written = unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()),
                                       out.data(), static_cast<int32_t>(out.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out.assign(static_cast<size_t>(written), u'\0');
        written = unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()),
                                   out.data(), static_cast<int32_t>(out.size()), &status);
    }
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("NFC normalization failed: ") + u_errorName(status));
    }
    out.resize(static_cast<size_t>(written));
    return out;
}

inline std::u16string lowercase(const std::u16string& in) {
    std::u16string out(in.size() * 2 + 16, u'\0');
    UErrorCode status = U_ZERO_ERROR;
    // Root locale keeps case mapping independent of the host environment.
    int32_t written = u_strToLower(out.data(), static_cast<int32_t>(out.size()),
                                   in.data(), static_cast<int32_t>(in.size()), "", &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out.assign(static_cast<size_t>(written), u'\0');
        written = u_strToLower(out.data(), static_cast<int32_t>(out.size()),
                               in.data(), static_cast<int32_t>(in.size()), "", &status);
    }
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("lowercasing failed: ") + u_errorName(status));
    }
    out.resize(static_cast<size_t>(written));
    return out;
}

inline std::u16string collapse_whitespace(const std::u16string& in) {
    std::u16string out;
    out.reserve(in.size());
    bool pending_space = false;
    int32_t i = 0;
    const int32_t n = static_cast<int32_t>(in.size());
    while (i < n) {
        UChar32 cp;
        U16_NEXT(in.data(), i, n, cp);
        if (u_isUWhiteSpace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(u' ');
            pending_space = false;
        }
        char16_t buf[2];
        int32_t len = 0;
        UBool err = false;
        U16_APPEND(buf, len, 2, cp, err);
        if (!err) out.append(buf, static_cast<size_t>(len));
    }
    return out;
}

}  // namespace detail

// NFC + lowercase (root locale) + whitespace collapse + trim.
// Idempotent; empty input maps to empty output.
inline std::string normalize_text(std::string_view text) {
    auto u16 = detail::to_utf16(text);
    u16 = detail::nfc(u16);
    u16 = detail::lowercase(u16);
    u16 = detail::collapse_whitespace(u16);
    return detail::to_utf8(u16);
}

inline bool is_blank(std::string_view text) {
    return normalize_text(text).empty();
}

// Splits text into sentences at runs of terminal punctuation (. ! ?)
// followed by whitespace or end of input. Punctuation stays with its
// sentence; segments that normalize to empty are dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    size_t start = 0;
    size_t i = 0;
    auto is_terminal = [](char c) { return c == '.' || c == '!' || c == '?'; };
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (i < text.size()) {
        if (is_terminal(text[i])) {
            size_t end = i + 1;
            while (end < text.size() && is_terminal(text[end])) ++end;
            if (end >= text.size() || is_space(static_cast<unsigned char>(text[end]))) {
                sentences.emplace_back(text.substr(start, end - start));
                // The delimiting whitespace belongs to no sentence.
                while (end < text.size() && is_space(static_cast<unsigned char>(text[end]))) {
                    ++end;
                }
                start = end;
                i = end;
                continue;
            }
            i = end;
            continue;
        }
        ++i;
    }
    if (start < text.size()) {
        sentences.emplace_back(text.substr(start));
    }
    std::vector<std::string> kept;
    kept.reserve(sentences.size());
    for (auto& s : sentences) {
        if (!is_blank(s)) kept.push_back(std::move(s));
    }
    return kept;
}

}  // namespace claimeval
