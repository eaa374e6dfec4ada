#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satmat/pattern.hpp"

namespace satmat {

struct EmbeddedFile {
    std::string_view name;
    std::string_view content;
};

// Files of data/corpus compiled into the library (generated at configure time).
std::span<const EmbeddedFile> embedded_corpus();

class CorpusStore {
public:
    static CorpusStore embedded();
    static CorpusStore from_directory(const std::string& dir);

    std::vector<std::string> files() const;
    const std::string& text(const std::string& file) const;
    Pattern pattern(const std::string& stem) const;  // reads <stem>.pat
    // FNV-1a 64 over name, NUL, content, NUL for every file in name order.
    std::uint64_t checksum() const;

private:
    std::vector<std::pair<std::string, std::string>> files_;  // sorted by name
};

Pattern corpus_pattern(const std::string& stem);
std::string corpus_text(const std::string& file);

struct CorpusEntry {
    std::string name;
    std::string claim;  // witness | intermediary-witness | graph | ssat-linear | verdict | sat-value | layered-witness
    std::string origin;
    std::string pattern;
    std::string matrix;
    std::string upper;
    std::string kind;
    std::string shape;
    std::string status;
    std::string symmetry;  // applied to the matrix before checking, by name
    bool transpose = false;
    bool slow = false;
    int rows = 0;
    int cols = 0;
    int value = 0;
    std::vector<int> sizes;
};

std::vector<CorpusEntry> corpus_entries(const CorpusStore& store);

struct CorpusOutcome {
    std::string name;
    std::string claim;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct CorpusReport {
    std::vector<CorpusOutcome> outcomes;
    bool all_pass() const;
    std::string text() const;
};

CorpusReport verify_corpus(const CorpusStore& store, bool include_slow = false);

}  // namespace satmat
