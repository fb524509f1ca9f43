#include "citeshare/record_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "citeshare/errors.hpp"

namespace citeshare {

namespace {

using nlohmann::json;

constexpr const char* kColumns[] = {"id", "citations", "n_authors", "year", "chapters", "author_info_known"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record. Quoted fields may contain commas and doubled quotes;
// embedded newlines are not supported.
std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            if (!trim(cur).empty()) throw ParseError(line_no, kColumns[std::min(fields.size(), kColumnCount - 1)], "stray quote");
            cur.clear();
            quoted = true;
            was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw ParseError(line_no, kColumns[std::min(fields.size(), kColumnCount - 1)], "unterminated quote");
    fields.push_back(was_quoted ? cur : trim(cur));
    return fields;
}

template <typename Int>
Int parse_int(const std::string& text, std::size_t line_no, const char* field) {
    Int value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ParseError(line_no, field, "expected an integer, got '" + text + "'");
    return value;
}

bool parse_bool(const std::string& text, std::size_t line_no, const char* field) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "true" || lower == "1") return true;
    if (lower == "false" || lower == "0") return false;
    throw ParseError(line_no, field, "expected true or false, got '" + text + "'");
}

AuthorCorpus parse_csv(std::istream& in, std::string author_id) {
    AuthorCorpus corpus;
    corpus.author_id = std::move(author_id);

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;

        auto fields = split_csv_record(line, line_no);
        if (!header_seen) {
            if (fields.size() != kColumnCount)
                throw ParseError(line_no, "header", "expected header '" + std::string(kCsvHeader) + "'");
            for (std::size_t i = 0; i < kColumnCount; ++i) {
                if (fields[i] != kColumns[i])
                    throw ParseError(line_no, "header", "column " + std::to_string(i + 1) + " must be '" +
                                                            kColumns[i] + "', got '" + fields[i] + "'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != kColumnCount)
            throw ParseError(line_no, fields.size() < kColumnCount ? kColumns[fields.size()] : "row",
                             "expected " + std::to_string(kColumnCount) + " fields, got " +
                                 std::to_string(fields.size()));

        Publication p;
        p.id = fields[0];
        if (p.id.empty()) throw ParseError(line_no, "id", "empty id");
        p.citations = parse_int<std::int64_t>(fields[1], line_no, "citations");
        p.n_authors = parse_int<std::int32_t>(fields[2], line_no, "n_authors");
        p.year = parse_int<std::int32_t>(fields[3], line_no, "year");
        if (!fields[4].empty()) p.chapters = parse_int<std::int32_t>(fields[4], line_no, "chapters");
        p.author_info_known = parse_bool(fields[5], line_no, "author_info_known");

        try {
            validate(p);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
        corpus.publications.push_back(std::move(p));
    }
    if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "header", "missing header row");
    validate(corpus);
    return corpus;
}

template <typename T>
T json_field(const json& obj, const char* name, std::size_t index) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(index, name, "missing field");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ParseError(index, name, "wrong type: " + it->dump());
    }
}

Publication publication_from_json(const json& obj, std::size_t index) {
    if (!obj.is_object()) throw ParseError(index, "publication", "expected an object");
    Publication p;
    p.id = json_field<std::string>(obj, "id", index);
    p.citations = json_field<std::int64_t>(obj, "citations", index);
    p.n_authors = json_field<std::int32_t>(obj, "n_authors", index);
    p.year = json_field<std::int32_t>(obj, "year", index);
    if (auto it = obj.find("chapters"); it != obj.end() && !it->is_null())
        p.chapters = json_field<std::int32_t>(obj, "chapters", index);
    if (obj.contains("author_info_known")) p.author_info_known = json_field<bool>(obj, "author_info_known", index);
    return p;
}

json publication_to_json(const Publication& p) {
    json obj = json::object();
    obj["id"] = p.id;
    obj["citations"] = p.citations;
    obj["n_authors"] = p.n_authors;
    obj["year"] = p.year;
    obj["chapters"] = p.chapters ? json(*p.chapters) : json(nullptr);
    obj["author_info_known"] = p.author_info_known;
    return obj;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

}  // namespace

void validate(const Publication& p) {
    auto fail = [&](const std::string& what) { throw ValidationError("publication '" + p.id + "': " + what); };
    if (p.id.empty()) fail("empty id");
    if (p.id.find_first_of("\r\n") != std::string::npos) fail("id contains a line break");
    if (p.citations < 0) fail("citations must be >= 0, got " + std::to_string(p.citations));
    if (p.n_authors < 1) fail("n_authors must be >= 1, got " + std::to_string(p.n_authors));
    if (p.chapters && *p.chapters < 1) fail("chapters must be >= 1 when present, got " + std::to_string(*p.chapters));
}

void validate(const AuthorCorpus& corpus) {
    std::unordered_set<std::string> seen;
    for (const auto& p : corpus.publications) {
        validate(p);
        if (!seen.insert(p.id).second) throw ValidationError("duplicate publication id '" + p.id + "'");
    }
}

AuthorCorpus corpus_from_json(const json& doc, std::string author_id) {
    AuthorCorpus corpus;
    corpus.author_id = std::move(author_id);
    const json* list = &doc;
    if (doc.is_object()) {
        if (auto it = doc.find("author_id"); it != doc.end() && corpus.author_id.empty())
            corpus.author_id = json_field<std::string>(doc, "author_id", 0);
        if (auto it = doc.find("collection_date"); it != doc.end() && !it->is_null())
            corpus.collection_date = json_field<std::int32_t>(doc, "collection_date", 0);
        auto it = doc.find("publications");
        if (it == doc.end()) throw ParseError(0, "publications", "missing field");
        list = &*it;
    }
    if (!list->is_array()) throw ParseError(0, "publications", "expected an array of publication objects");

    std::size_t index = 0;
    for (const auto& item : *list) {
        ++index;
        auto p = publication_from_json(item, index);
        try {
            validate(p);
        } catch (const ValidationError& e) {
            throw ValidationError("record " + std::to_string(index) + ": " + e.what());
        }
        corpus.publications.push_back(std::move(p));
    }
    validate(corpus);
    return corpus;
}

json corpus_to_json(const AuthorCorpus& corpus) {
    json pubs = json::array();
    for (const auto& p : corpus.publications) pubs.push_back(publication_to_json(p));
    if (!corpus.collection_date) return pubs;
    json doc = json::object();
    doc["author_id"] = corpus.author_id;
    doc["collection_date"] = *corpus.collection_date;
    doc["publications"] = std::move(pubs);
    return doc;
}

AuthorCorpus parse_corpus(std::istream& in, CorpusFormat format, std::string author_id) {
    if (format == CorpusFormat::csv) return parse_csv(in, std::move(author_id));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(0, "json", e.what());
    }
    return corpus_from_json(doc, std::move(author_id));
}

AuthorCorpus parse_corpus(const std::string& text, CorpusFormat format, std::string author_id) {
    std::istringstream in(text);
    return parse_corpus(in, format, std::move(author_id));
}

std::string serialize_corpus(const AuthorCorpus& corpus, CorpusFormat format) {
    if (format == CorpusFormat::json) return corpus_to_json(corpus).dump(2) + "\n";
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& p : corpus.publications) {
        out << csv_quote(p.id) << ',' << p.citations << ',' << p.n_authors << ',' << p.year << ',';
        if (p.chapters) out << *p.chapters;
        out << ',' << (p.author_info_known ? "true" : "false") << '\n';
    }
    return out.str();
}

std::optional<CorpusFormat> format_from_extension(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".csv") return CorpusFormat::csv;
    if (ext == ".json") return CorpusFormat::json;
    return std::nullopt;
}

AuthorCorpus load_corpus(const std::filesystem::path& path) {
    auto format = format_from_extension(path);
    if (!format) throw ArgumentError("cannot infer corpus format from '" + path.string() + "' (use .csv or .json)");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
    return parse_corpus(in, *format, path.stem().string());
}

double effective_share_divisor(const Publication& p) {
    double divisor = static_cast<double>(p.n_authors);
    if (p.chapters) divisor *= static_cast<double>(*p.chapters);
    return divisor;
}

FilteredCorpus filter_usable(const AuthorCorpus& corpus) {
    FilteredCorpus out;
    out.corpus.author_id = corpus.author_id;
    out.corpus.collection_date = corpus.collection_date;
    for (const auto& p : corpus.publications) {
        if (p.author_info_known)
            out.corpus.publications.push_back(p);
        else
            ++out.removed;
    }
    return out;
}

}  // namespace citeshare
