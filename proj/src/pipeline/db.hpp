#pragma once

#include "descent/descent.hpp"
#include "pipeline/analysis.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sha5 {

/// Malformed input file; the message carries "name:line: ".
class FormatError : public DomainError {
public:
    FormatError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using CurveKey = std::pair<long, long>;

struct DbHeader {
    long max_height = 0;
    std::optional<Int> max_conductor;
    bool census_only = false;
    bool operator==(const DbHeader&) const = default;
};

/// Curves sorted by (u, v). In a census-only database only u, v, S, T, U and
/// the conductor are meaningful.
struct Database {
    DbHeader header;
    std::vector<CurveRecord> records;
};

std::string format_record(const CurveRecord& r, bool census_only);
CurveRecord parse_record(const std::string& line, bool census_only);

std::string format_database(const Database& db);
Database parse_database(std::istream& in, const std::string& source);
Database read_database(const std::string& path);
/// Writes through a temporary file and renames it into place.
void write_database(const std::string& path, const Database& db);

/// Union by (u, v); a complete record wins over an incomplete one, otherwise
/// the first database's record is kept. Headers must agree on census mode.
Database merge_databases(const Database& a, const Database& b);

/// Lines "u v rank x1 y1 [x2 y2 ...]"; '#' starts a comment.
std::map<CurveKey, IngestedGenerators> parse_generators(std::istream& in, const std::string& source);
std::map<CurveKey, IngestedGenerators> read_generators(const std::string& path);

struct BuildOptions {
    long max_height = 0;
    std::optional<Int> max_conductor;
    bool census_only = false;
    unsigned workers = 0;  // 0: default_workers()
    RecordPolicy policy;
    std::map<CurveKey, IngestedGenerators> generators;
    /// When set, finished records are appended here as they complete and the
    /// sorted database replaces it at the end; existing complete records in
    /// it are reused.
    std::string out_path;
};

/// Coprime u, v <= max_height with conductor <= max_conductor, sorted.
std::vector<CurveKey> curve_keys(long max_height, const std::optional<Int>& max_conductor);

Database build_database(const BuildOptions& opts);

struct CurveSummary {
    long u = 0, v = 0;
    int rank = -1;
    RankTag tag = RankTag::unknown;
    Int conductor;
    bool incomplete = false;
    bool operator==(const CurveSummary&) const = default;
};

struct Results {
    bool census_only = false;
    std::vector<CurveSummary> curves;
    std::vector<PairResult> pairs;  // pairs of complete curves, i < j in curve order
    std::size_t incomplete() const;
};

/// Step 2 over all unordered pairs of complete records.
Results analyze(const Database& db, unsigned workers = 0);

std::string format_results(const Results& r);
void write_results(std::ostream& out, const Results& r);
Results parse_results(std::istream& in, const std::string& source);
Results read_results(const std::string& path);

}  // namespace sha5
