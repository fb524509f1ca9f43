#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace citeshare {

/// One scholarly work.
///
/// For a book, `chapters` holds the chapter count and `n_authors` is read as
/// the number of coauthors of each chapter.
struct Publication {
    std::string id;
    std::int64_t citations = 0;
    std::int32_t n_authors = 1;
    std::int32_t year = 0;
    std::optional<std::int32_t> chapters;
    bool author_info_known = true;

    bool operator==(const Publication&) const = default;
};

struct AuthorCorpus {
    std::string author_id;
    std::vector<Publication> publications;
    std::optional<std::int32_t> collection_date;

    bool operator==(const AuthorCorpus&) const = default;
};

enum class CorpusFormat { csv, json };

/// The fixed CSV header; column order is part of the file format.
inline constexpr const char* kCsvHeader = "id,citations,n_authors,year,chapters,author_info_known";

/// Throws ValidationError naming the publication and the violated invariant.
void validate(const Publication& p);

/// Validates every publication and rejects duplicate ids.
void validate(const AuthorCorpus& corpus);

/// Reads a corpus from `in`. Throws ParseError on malformed rows/fields and
/// ValidationError on invariant violations.
AuthorCorpus parse_corpus(std::istream& in, CorpusFormat format, std::string author_id = {});

AuthorCorpus parse_corpus(const std::string& text, CorpusFormat format, std::string author_id = {});

/// Builds a corpus from an already-parsed JSON value: either an array of
/// publication objects or an object with a "publications" array (and optional
/// "author_id", "collection_date").
AuthorCorpus corpus_from_json(const nlohmann::json& doc, std::string author_id = {});

nlohmann::json corpus_to_json(const AuthorCorpus& corpus);

/// Inverse of parse_corpus. The CSV form carries publications only; the JSON
/// form is a bare array unless the corpus has a collection date.
std::string serialize_corpus(const AuthorCorpus& corpus, CorpusFormat format);

/// Guesses the format from the file extension (".csv" or ".json").
std::optional<CorpusFormat> format_from_extension(const std::filesystem::path& path);

/// Reads a corpus file; the author id defaults to the file stem.
AuthorCorpus load_corpus(const std::filesystem::path& path);

/// Citation divisor of one author's share: n_authors, or chapters × n_authors
/// for a book (citations are split per chapter first).
double effective_share_divisor(const Publication& p);

struct FilteredCorpus {
    AuthorCorpus corpus;
    std::size_t removed = 0;
};

/// Drops works whose author list is unknown.
FilteredCorpus filter_usable(const AuthorCorpus& corpus);

}  // namespace citeshare
