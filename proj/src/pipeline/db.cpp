#include "pipeline/db.hpp"

#include "curve/family.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace sha5 {

FormatError::FormatError(const std::string& source, std::size_t line, const std::string& what)
    : DomainError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr const char* kDbMagic = "# sha5-db 1";
constexpr const char* kResultsMagic = "# sha5-results 1";
constexpr const char* kSep = " | ";

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + sep.size();
    }
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw DomainError("expected an integer, got '" + s + "'");
    return v;
}

Int parse_int(const std::string& s) {
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("expected an integer, got '" + s + "'");
    return v;
}

RankTag parse_tag(const std::string& s) {
    for (RankTag t : {RankTag::certain, RankTag::heuristic, RankTag::unknown, RankTag::ingested})
        if (s == to_string(t)) return t;
    throw DomainError("unknown rank tag '" + s + "'");
}

std::string format_primes(const PrimeList& ps) {
    if (ps.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + std::to_string(ps[i]);
    return out;
}

PrimeList parse_primes(const std::string& s) {
    PrimeList out;
    if (s == "-") return out;
    for (const auto& w : split(s, ",")) {
        const long p = parse_long(w);
        if (p < 2) throw DomainError("bad prime '" + w + "'");
        out.push_back(static_cast<std::uint64_t>(p));
    }
    if (!std::is_sorted(out.begin(), out.end())) throw DomainError("prime list not sorted: " + s);
    return out;
}

std::string format_q_row(const QS5Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.support.size(); ++i)
        if (v.exponents[i]) out += (out.empty() ? "" : ",") + std::to_string(v.support[i]) + ":" + std::to_string(int(v.exponents[i]));
    return out.empty() ? "0" : out;
}

QS5Vector parse_q_row(const std::string& s, const PrimeList& S) {
    QS5Vector v;
    v.support = S;
    v.exponents.assign(S.size(), 0);
    if (s == "0") return v;
    for (const auto& e : split(s, ",")) {
        const auto kv = split(e, ":");
        if (kv.size() != 2) throw DomainError("bad Q(S,5) entry '" + e + "'");
        const auto p = static_cast<std::uint64_t>(parse_long(kv[0]));
        const auto it = std::lower_bound(S.begin(), S.end(), p);
        if (it == S.end() || *it != p) throw DomainError("prime " + kv[0] + " is not in S");
        v.exponents[it - S.begin()] = f5(parse_long(kv[1]));
    }
    return v;
}

std::string format_k_row(const KS5Vector& v) {
    std::string primes;
    for (std::size_t i = 0; i < v.support.size(); ++i)
        if (v.exponents[i])
            primes += (primes.empty() ? "" : ",") + std::to_string(v.support[i].first) + "." + std::to_string(v.support[i].second) + ":" +
                      std::to_string(int(v.exponents[i]));
    return std::to_string(int(v.unit_exponents[0])) + " " + std::to_string(int(v.unit_exponents[1])) + " " + (primes.empty() ? "0" : primes);
}

KS5Vector parse_k_row(const std::string& s, const std::vector<std::pair<std::uint64_t, int>>& cols) {
    const auto w = words(s);
    if (w.size() != 3) throw DomainError("bad K(S,5) row '" + s + "'");
    KS5Vector v;
    v.unit_exponents = {f5(parse_long(w[0])), f5(parse_long(w[1]))};
    v.support = cols;
    v.exponents.assign(cols.size(), 0);
    if (w[2] == "0") return v;
    for (const auto& e : split(w[2], ",")) {
        const auto kv = split(e, ":");
        const auto pi = kv.size() == 2 ? split(kv[0], ".") : std::vector<std::string>{};
        if (pi.size() != 2) throw DomainError("bad K(S,5) entry '" + e + "'");
        const std::pair<std::uint64_t, int> key{static_cast<std::uint64_t>(parse_long(pi[0])), static_cast<int>(parse_long(pi[1]))};
        const auto it = std::find(cols.begin(), cols.end(), key);
        if (it == cols.end()) throw DomainError("prime " + kv[0] + " is not above S");
        v.exponents[it - cols.begin()] = f5(parse_long(kv[1]));
    }
    return v;
}

template <class T, class F>
std::string join_rows(const std::vector<T>& rows, F fmt) {
    if (rows.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? ";" : "") + fmt(rows[i]);
    return out;
}

std::vector<std::string> row_strings(const std::string& s) {
    if (s == "-") return {};
    return split(s, ";");
}

std::string format_header(const DbHeader& h) {
    return std::string(kDbMagic) + " max-height " + std::to_string(h.max_height) + " max-conductor " +
           (h.max_conductor ? h.max_conductor->get_str() : "-") + " mode " + (h.census_only ? "census" : "full");
}

DbHeader parse_header(const std::string& line, const std::string& source) {
    const auto w = words(line);
    if (line.rfind(kDbMagic, 0) != 0 || w.size() != 9 || w[3] != "max-height" || w[5] != "max-conductor" || w[7] != "mode")
        throw FormatError(source, 1, "not a sha5 database header");
    DbHeader h;
    try {
        h.max_height = parse_long(w[4]);
        if (w[6] != "-") h.max_conductor = parse_int(w[6]);
    } catch (const DomainError& e) {
        throw FormatError(source, 1, e.what());
    }
    if (w[8] != "census" && w[8] != "full") throw FormatError(source, 1, "unknown mode '" + w[8] + "'");
    h.census_only = w[8] == "census";
    return h;
}

void sort_records(std::vector<CurveRecord>& rs) {
    std::sort(rs.begin(), rs.end(), [](const CurveRecord& a, const CurveRecord& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

bool usable(const CurveRecord& r, bool census) { return census || !r.incomplete; }

}  // namespace

std::string format_record(const CurveRecord& r, bool census_only) {
    std::string out = std::to_string(r.u) + " " + std::to_string(r.v) + kSep;
    if (census_only)
        out += "census";
    else
        out += std::to_string(r.rank) + " " + to_string(r.tag) + (r.incomplete ? " incomplete" : "");
    out += kSep + format_primes(r.S) + kSep + format_primes(r.T) + kSep + format_primes(r.U) + kSep + r.conductor.get_str();
    if (census_only) return out;
    out += kSep + join_rows(r.P_free, format_q_row);
    out += kSep + join_rows(r.Q_free, format_k_row);
    out += kSep + format_q_row(r.P_torsion);
    out += kSep + join_rows(r.Q_torsion, format_k_row);
    out += kSep + join_rows(r.generators, [](const PointQ& P) { return P.x.get_str() + " " + P.y.get_str(); });
    return out;
}

CurveRecord parse_record(const std::string& line, bool census_only) {
    const auto f = split(line, kSep);
    const std::size_t want = census_only ? 6 : 11;
    if (f.size() != want) throw DomainError("expected " + std::to_string(want) + " fields, found " + std::to_string(f.size()));
    CurveRecord r;
    const auto uv = words(f[0]);
    if (uv.size() != 2) throw DomainError("bad curve key '" + f[0] + "'");
    r.u = parse_long(uv[0]);
    r.v = parse_long(uv[1]);
    if (r.u < 1 || r.v < 1 || std::gcd(r.u, r.v) != 1) throw DomainError("u, v must be coprime positive integers");
    const auto rk = words(f[1]);
    if (census_only) {
        if (rk != std::vector<std::string>{"census"}) throw DomainError("expected 'census' in a census-only database");
    } else {
        if (rk.size() < 2 || rk.size() > 3 || (rk.size() == 3 && rk[2] != "incomplete")) throw DomainError("bad rank field '" + f[1] + "'");
        r.rank = static_cast<int>(parse_long(rk[0]));
        r.tag = parse_tag(rk[1]);
        r.incomplete = rk.size() == 3;
        if (!r.incomplete && (r.rank < 0 || r.tag == RankTag::unknown)) throw DomainError("complete record without a rank");
    }
    r.S = parse_primes(f[2]);
    r.T = parse_primes(f[3]);
    r.U = parse_primes(f[4]);
    r.conductor = parse_int(f[5]);
    if (census_only) return r;

    for (const auto& s : row_strings(f[6])) r.P_free.push_back(parse_q_row(s, r.S));
    r.P_torsion = parse_q_row(f[8], r.S);
    const auto qf = row_strings(f[7]), qt = row_strings(f[9]);
    if (!qf.empty() || !qt.empty()) {
        const auto cols = r.k_columns();
        for (const auto& s : qf) r.Q_free.push_back(parse_k_row(s, cols));
        for (const auto& s : qt) r.Q_torsion.push_back(parse_k_row(s, cols));
    }
    for (const auto& s : row_strings(f[10])) {
        const auto xy = words(s);
        if (xy.size() != 2) throw DomainError("bad point '" + s + "'");
        r.generators.push_back(PointQ::affine(parse_rat(xy[0]), parse_rat(xy[1])));
    }
    if (r.generators.size() != r.P_free.size()) throw DomainError("generator count differs from the number of P rows");
    if (!r.incomplete) {
        r.dim_coker_eta_dual = p_rank(r);
        r.dim_coker_eta = r.rank + 1 - r.dim_coker_eta_dual;
        if (r.dim_coker_eta < 0) throw DomainError("P rows exceed rank + 1");
    }
    return r;
}

std::string format_database(const Database& db) {
    std::string out = format_header(db.header) + "\n";
    for (const auto& r : db.records) out += format_record(r, db.header.census_only) + "\n";
    return out;
}

Database parse_database(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(source, 1, "empty database");
    Database db;
    db.header = parse_header(line, source);
    std::set<CurveKey> seen;
    for (std::size_t n = 2; std::getline(in, line); ++n) {
        if (line.empty() || line[0] == '#') continue;
        try {
            db.records.push_back(parse_record(line, db.header.census_only));
        } catch (const DomainError& e) {
            throw FormatError(source, n, e.what());
        }
        if (!seen.insert({db.records.back().u, db.records.back().v}).second) throw FormatError(source, n, "duplicate curve");
    }
    sort_records(db.records);
    return db;
}

Database read_database(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_database(in, path);
}

void write_database(const std::string& path, const Database& db) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << format_database(db);
        if (!out.flush()) throw IoError("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Database merge_databases(const Database& a, const Database& b) {
    if (a.header.census_only != b.header.census_only) throw DomainError("cannot merge a census-only database with a full one");
    Database out;
    out.header = a.header;
    out.header.max_height = std::max(a.header.max_height, b.header.max_height);
    if (!a.header.max_conductor || !b.header.max_conductor)
        out.header.max_conductor.reset();
    else
        out.header.max_conductor = std::max(*a.header.max_conductor, *b.header.max_conductor);
    std::map<CurveKey, CurveRecord> m;
    for (const auto* db : {&a, &b})
        for (const auto& r : db->records) {
            auto [it, fresh] = m.try_emplace({r.u, r.v}, r);
            if (!fresh && it->second.incomplete && !r.incomplete) it->second = r;
        }
    for (auto& [k, r] : m) out.records.push_back(std::move(r));
    return out;
}

std::map<CurveKey, IngestedGenerators> parse_generators(std::istream& in, const std::string& source) {
    std::map<CurveKey, IngestedGenerators> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto w = words(line);
        if (w.empty()) continue;
        try {
            if (w.size() < 3 || (w.size() - 3) % 2 != 0) throw DomainError("expected 'u v rank x1 y1 ...'");
            const long u = parse_long(w[0]), v = parse_long(w[1]);
            if (u < 1 || v < 1 || std::gcd(u, v) != 1) throw DomainError("u, v must be coprime positive integers");
            IngestedGenerators g;
            g.rank = static_cast<int>(parse_long(w[2]));
            if (g.rank < 0) throw DomainError("negative rank");
            for (std::size_t i = 3; i < w.size(); i += 2) g.points.push_back(PointQ::affine(parse_rat(w[i]), parse_rat(w[i + 1])));
            if (!out.emplace(CurveKey{u, v}, std::move(g)).second) throw DomainError("duplicate curve");
        } catch (const DomainError& e) {
            throw FormatError(source, n, e.what());
        }
    }
    return out;
}

std::map<CurveKey, IngestedGenerators> read_generators(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_generators(in, path);
}

std::vector<CurveKey> curve_keys(long max_height, const std::optional<Int>& max_conductor) {
    std::vector<CurveKey> out;
    for (long u = 1; u <= max_height; ++u)
        for (long v = 1; v <= max_height; ++v)
            if (std::gcd(u, v) == 1 && (!max_conductor || reduction_data(u, v).conductor <= *max_conductor)) out.emplace_back(u, v);
    return out;
}

namespace {

// Records already present in a partially written output file. A final line
// cut short by an interrupted run is ignored.
std::map<CurveKey, CurveRecord> resume_records(const std::string& path, const DbHeader& want) {
    std::map<CurveKey, CurveRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.empty()) return out;
    const bool truncated = text.back() != '\n';
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    if (parse_header(line, path) != want) throw DomainError(path + " was built with different parameters");
    for (std::size_t n = 2; std::getline(lines, line); ++n) {
        if (line.empty() || line[0] == '#') continue;
        CurveRecord r;
        try {
            r = parse_record(line, want.census_only);
        } catch (const DomainError& e) {
            if (truncated && lines.peek() == std::char_traits<char>::eof()) break;
            throw FormatError(path, n, e.what());
        }
        auto& slot = out[{r.u, r.v}];
        if (slot.u == 0 || usable(r, want.census_only)) slot = std::move(r);
    }
    return out;
}

}  // namespace

Database build_database(const BuildOptions& opts) {
    Database db;
    db.header = {opts.max_height, opts.max_conductor, opts.census_only};
    const auto keys = curve_keys(opts.max_height, opts.max_conductor);
    std::map<CurveKey, CurveRecord> done;
    if (!opts.out_path.empty()) done = resume_records(opts.out_path, db.header);

    std::vector<CurveKey> todo;
    for (const auto& k : keys) {
        const auto it = done.find(k);
        if (it == done.end() || !usable(it->second, opts.census_only) || opts.generators.count(k)) todo.push_back(k);
    }

    std::ofstream log;
    if (!opts.out_path.empty()) {
        const bool fresh = done.empty();
        log.open(opts.out_path, fresh ? std::ios::trunc : std::ios::app);
        if (!log) throw IoError("cannot write " + opts.out_path);
        if (fresh) log << format_header(db.header) << '\n' << std::flush;
    }

    std::vector<CurveRecord> built(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::exception_ptr failure;
    auto work = [&] {
        try {
            for (std::size_t i; (i = next++) < todo.size();) {
                const auto [u, v] = todo[i];
                if (opts.census_only) {
                    built[i] = local_record(u, v);
                } else {
                    const auto g = opts.generators.find(todo[i]);
                    built[i] = build_curve_record(u, v, opts.policy,
                                                  g == opts.generators.end() ? std::nullopt : std::optional<IngestedGenerators>(g->second));
                }
                if (log.is_open()) {
                    std::lock_guard lock(log_mutex);
                    log << format_record(built[i], opts.census_only) << '\n' << std::flush;
                }
            }
        } catch (...) {
            std::lock_guard lock(log_mutex);
            if (!failure) failure = std::current_exception();
            next = todo.size();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers ? opts.workers : default_workers(), static_cast<unsigned>(todo.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (auto& r : built) done[{r.u, r.v}] = std::move(r);
    for (const auto& k : keys) db.records.push_back(std::move(done.at(k)));
    if (log.is_open()) {
        log.close();
        write_database(opts.out_path, db);
    }
    return db;
}

std::size_t Results::incomplete() const {
    return static_cast<std::size_t>(std::count_if(curves.begin(), curves.end(), [](const CurveSummary& c) { return c.incomplete; }));
}

Results analyze(const Database& db, unsigned workers) {
    Results res;
    res.census_only = db.header.census_only;
    std::vector<const CurveRecord*> complete;
    for (const auto& r : db.records) {
        CurveSummary c{r.u, r.v, r.rank, r.tag, r.conductor, !db.header.census_only && r.incomplete};
        if (db.header.census_only) c.rank = -1;
        res.curves.push_back(c);
        if (!db.header.census_only && !r.incomplete) complete.push_back(&r);
    }
    if (complete.size() < 2) return res;

    std::vector<std::vector<PairResult>> rows(complete.size());
    std::atomic<std::size_t> next{0};
    std::mutex m;
    std::exception_ptr failure;
    auto work = [&] {
        try {
            for (std::size_t i; (i = next++) < complete.size();) {
                rows[i].reserve(complete.size() - i - 1);
                for (std::size_t j = i + 1; j < complete.size(); ++j) rows[i].push_back(pair_analysis(*complete[i], *complete[j]));
            }
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure) failure = std::current_exception();
            next = complete.size();
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers ? workers : default_workers(), static_cast<unsigned>(complete.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::size_t total = 0;
    for (const auto& r : rows) total += r.size();
    res.pairs.reserve(total);
    for (auto& r : rows) res.pairs.insert(res.pairs.end(), r.begin(), r.end());
    return res;
}

void write_results(std::ostream& out, const Results& r) {
    out << kResultsMagic << " curves " << r.curves.size() << " pairs " << r.pairs.size() << " incomplete " << r.incomplete() << " mode "
        << (r.census_only ? "census" : "full") << '\n';
    for (const auto& c : r.curves) {
        out << (c.incomplete ? 'X' : 'C') << ' ' << c.u << ' ' << c.v << ' ';
        if (r.census_only)
            out << "- census";
        else
            out << c.rank << ' ' << to_string(c.tag);
        out << ' ' << c.conductor.get_str() << '\n';
    }
    for (const auto& p : r.pairs)
        out << "P " << p.u1 << ' ' << p.v1 << ' ' << p.u2 << ' ' << p.v2 << ' ' << p.L << ' ' << p.t_union << ' ' << p.u_intersection << ' '
            << p.dim_coker_phi_dual << ' ' << p.dim_coker_eta1 << ' ' << p.dim_coker_eta2 << ' ' << p.dim_coker_psi << ' ' << p.G << ' '
            << int(p.sha_nonsquare) << ' ' << p.rank_sum << ' ' << p.re_parity << ' ' << int(p.re_parity_match) << ' ' << to_string(p.confidence)
            << '\n';
}

std::string format_results(const Results& r) {
    std::ostringstream out;
    write_results(out, r);
    return out.str();
}

Results parse_results(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(source, 1, "empty results file");
    const auto h = words(line);
    if (line.rfind(kResultsMagic, 0) != 0 || h.size() != 11 || h[3] != "curves" || h[5] != "pairs" || h[9] != "mode")
        throw FormatError(source, 1, "not a sha5 results header");
    Results r;
    r.census_only = h[10] == "census";
    std::size_t want_pairs = 0, want_curves = 0;
    try {
        want_curves = static_cast<std::size_t>(parse_long(h[4]));
        want_pairs = static_cast<std::size_t>(parse_long(h[6]));
    } catch (const DomainError& e) {
        throw FormatError(source, 1, e.what());
    }
    r.pairs.reserve(want_pairs);
    std::size_t n = 1;
    for (; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        const auto w = words(line);
        try {
            if (w[0] == "C" || w[0] == "X") {
                if (w.size() != 6) throw DomainError("curve line needs 6 fields");
                CurveSummary c;
                c.u = parse_long(w[1]);
                c.v = parse_long(w[2]);
                c.incomplete = w[0] == "X";
                if (w[4] != "census") {
                    c.rank = static_cast<int>(parse_long(w[3]));
                    c.tag = parse_tag(w[4]);
                }
                c.conductor = parse_int(w[5]);
                r.curves.push_back(std::move(c));
            } else if (w[0] == "P") {
                if (w.size() != 18) throw DomainError("pair line needs 18 fields");
                PairResult p;
                p.u1 = parse_long(w[1]);
                p.v1 = parse_long(w[2]);
                p.u2 = parse_long(w[3]);
                p.v2 = parse_long(w[4]);
                int* ints[] = {&p.L, &p.t_union, &p.u_intersection, &p.dim_coker_phi_dual, &p.dim_coker_eta1, &p.dim_coker_eta2, &p.dim_coker_psi, &p.G};
                for (int k = 0; k < 8; ++k) *ints[k] = static_cast<int>(parse_long(w[5 + k]));
                p.sha_nonsquare = parse_long(w[13]) != 0;
                p.rank_sum = static_cast<int>(parse_long(w[14]));
                p.re_parity = static_cast<int>(parse_long(w[15]));
                p.re_parity_match = parse_long(w[16]) != 0;
                if (w[17] == "unconditional")
                    p.confidence = Confidence::unconditional;
                else if (w[17] == "conditional")
                    p.confidence = Confidence::conditional;
                else
                    throw DomainError("unknown confidence '" + w[17] + "'");
                if (p.G != p.dim_coker_phi_dual - p.dim_coker_eta1 - p.dim_coker_eta2 + p.dim_coker_psi) throw DomainError("G does not match its parts");
                if (p.sha_nonsquare != ((p.L + p.G) % 2 != 0)) throw DomainError("verdict does not match L + G");
                r.pairs.push_back(p);
            } else {
                throw DomainError("unknown line type '" + w[0] + "'");
            }
        } catch (const DomainError& e) {
            throw FormatError(source, n + 1, e.what());
        }
    }
    if (r.curves.size() != want_curves || r.pairs.size() != want_pairs) throw FormatError(source, n, "line counts disagree with the header");
    return r;
}

Results read_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_results(in, path);
}

}  // namespace sha5
