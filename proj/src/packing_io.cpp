#include "circlepack/packing_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace circlepack {

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const char* kind_name(SpecialKind k) {
    switch (k) {
        case SpecialKind::outer: return "outer";
        case SpecialKind::line: return "line";
        case SpecialKind::alias: return "alias";
    }
    return "?";
}

SpecialKind kind_from(const std::string& s, const std::string& where, long line) {
    if (s == "outer") return SpecialKind::outer;
    if (s == "line") return SpecialKind::line;
    if (s == "alias") return SpecialKind::alias;
    throw parse_error(where, line, "unknown special kind '" + s + "'");
}

// Whitespace-token reader tolerant of \r\n and stray blanks.
struct LineReader {
    std::istringstream in;
    std::string where;
    long line_no = 0;

    explicit LineReader(const std::string& text, std::string name) : in(text), where(std::move(name)) {}

    bool next(std::vector<std::string>& tokens, std::string* raw = nullptr) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (raw) *raw = line;
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty() && tokens[0][0] == '#') continue;
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> expect(std::size_t n, const std::string& what) {
        std::vector<std::string> tokens;
        if (!next(tokens)) throw parse_error(where, line_no, "unexpected end of file, wanted " + what);
        if (tokens.size() != n)
            throw parse_error(where, line_no,
                              "wanted " + what + " (" + std::to_string(n) + " fields), got " +
                                  std::to_string(tokens.size()));
        return tokens;
    }
};

long parse_count(const std::string& s, LineReader& r) {
    try {
        const long v = std::stol(s);
        if (v < 0) throw std::invalid_argument("negative");
        return v;
    } catch (const std::exception&) {
        throw parse_error(r.where, r.line_no, "malformed count '" + s + "'");
    }
}

template <class S>
std::string serialize_packing(const Packing<S>& p) {
    std::ostringstream body;
    body << "backing " << scalar_traits<S>::backing_name() << "\n";
    body << "source " << p.source << "\n";
    body << "root";
    for (const auto& k : p.root) body << " " << scalar_traits<S>::format(k);
    body << "\n";
    body << "cutoff " << scalar_traits<S>::format(p.cutoff) << "\n";
    body << "period " << scalar_traits<S>::format(p.period) << "\n";
    body << "minradius " << format_double(p.min_radius) << "\n";
    body << "specials " << p.specials.size() << "\n";
    for (std::size_t i = 0; i < p.specials.size(); ++i) {
        const auto& c = p.specials[i];
        body << scalar_traits<S>::format(c.curv) << " " << scalar_traits<S>::format(c.cocurv) << " "
             << scalar_traits<S>::format(c.mx) << " " << scalar_traits<S>::format(c.my) << " "
             << kind_name(p.special_kinds[i]) << "\n";
    }
    body << "circles " << p.circles.size() << "\n";
    for (std::size_t i = 0; i < p.circles.size(); ++i) {
        const auto& c = p.circles[i];
        body << scalar_traits<S>::format(c.curv) << " " << scalar_traits<S>::format(c.cocurv) << " "
             << scalar_traits<S>::format(c.mx) << " " << scalar_traits<S>::format(c.my) << " "
             << (p.words[i].empty() ? "-" : p.words[i]) << "\n";
    }
    body << "adjacency " << p.adjacency.size() << "\n";
    for (const auto& [i, j] : p.adjacency) body << i << " " << j << "\n";
    const std::string b = body.str();
    return "circlepack packing v1\n" + b + "checksum " + hex64(fnv1a(b)) + "\n";
}

template <class S>
Packing<S> parse_packing_body(LineReader& r) {
    Packing<S> p;
    auto scalar = [&](const std::string& tok) -> S {
        try {
            return scalar_traits<S>::parse(tok);
        } catch (const std::exception& e) {
            throw parse_error(r.where, r.line_no, e.what());
        }
    };
    auto head = [&](const char* key, std::size_t extra) {
        auto t = r.expect(1 + extra, std::string("'") + key + "' header line");
        if (t[0] != key) throw parse_error(r.where, r.line_no, "wanted '" + std::string(key) + "', got '" + t[0] + "'");
        return t;
    };
    auto t = head("source", 1);
    p.source = t[1];
    t = head("root", 4);
    for (int i = 0; i < 4; ++i) p.root[static_cast<std::size_t>(i)] = scalar(t[static_cast<std::size_t>(i) + 1]);
    t = head("cutoff", 1);
    p.cutoff = scalar(t[1]);
    t = head("period", 1);
    p.period = scalar(t[1]);
    t = head("minradius", 1);
    try {
        p.min_radius = parse_double(t[1]);
    } catch (const std::exception& e) {
        throw parse_error(r.where, r.line_no, e.what());
    }
    t = head("specials", 1);
    const long ns = parse_count(t[1], r);
    for (long i = 0; i < ns; ++i) {
        auto rec = r.expect(5, "special record");
        InversiveCircle<S> c{scalar(rec[0]), scalar(rec[1]), scalar(rec[2]), scalar(rec[3])};
        p.specials.push_back(c);
        p.special_kinds.push_back(kind_from(rec[4], r.where, r.line_no));
    }
    t = head("circles", 1);
    const long nc = parse_count(t[1], r);
    for (long i = 0; i < nc; ++i) {
        auto rec = r.expect(5, "circle record");
        InversiveCircle<S> c{scalar(rec[0]), scalar(rec[1]), scalar(rec[2]), scalar(rec[3])};
        p.circles.push_back(c);
        p.words.push_back(rec[4] == "-" ? std::string{} : rec[4]);
    }
    t = head("adjacency", 1);
    const long na = parse_count(t[1], r);
    const long total = static_cast<long>(p.specials.size() + p.circles.size());
    for (long i = 0; i < na; ++i) {
        auto rec = r.expect(2, "adjacency record");
        long a, b;
        try {
            a = std::stol(rec[0]);
            b = std::stol(rec[1]);
        } catch (const std::exception&) {
            throw parse_error(r.where, r.line_no, "malformed adjacency pair");
        }
        if (a < 0 || b < 0 || a >= total || b >= total)
            throw parse_error(r.where, r.line_no, "adjacency index out of range");
        p.adjacency.emplace_back(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b));
    }
    // Rebuild quadruple records from creation order: 6 seed pairs over the 4
    // seed members, then 3 consecutive (new, parent) pairs per circle.
    if (p.adjacency.size() >= 6) {
        std::array<std::int32_t, 4> seed{};
        std::size_t nfound = 0;
        bool ok = true;
        for (std::size_t i = 0; i < 6 && ok; ++i) {
            for (const std::int32_t v : {p.adjacency[i].first, p.adjacency[i].second}) {
                bool known = false;
                for (std::size_t j = 0; j < nfound; ++j) known = known || seed[j] == v;
                if (!known) {
                    if (nfound == 4) { ok = false; break; }
                    seed[nfound++] = v;
                }
            }
        }
        ok = ok && nfound == 4 && (p.adjacency.size() - 6) % 3 == 0;
        if (ok) {
            p.quadruples.push_back(seed);
            for (std::size_t i = 6; i + 2 < p.adjacency.size() + 1 && ok; i += 3) {
                const std::int32_t fresh = p.adjacency[i].first;
                ok = p.adjacency[i + 1].first == fresh && p.adjacency[i + 2].first == fresh;
                if (ok)
                    p.quadruples.push_back({fresh, p.adjacency[i].second, p.adjacency[i + 1].second,
                                            p.adjacency[i + 2].second});
            }
            if (!ok) p.quadruples.clear();
        }
    }
    return p;
}

}  // namespace

std::string packing_to_string(const AnyPacking& p) {
    return std::visit([](const auto& pk) { return serialize_packing(pk); }, p);
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_packing(const AnyPacking& p, const std::string& path) {
    write_text_file(path, packing_to_string(p));
}

AnyPacking read_packing(const std::string& path) {
    const std::string text = read_text_file(path);
    LineReader r(text, path);
    auto t = r.expect(3, "format version line");
    if (t[0] != "circlepack" || t[1] != "packing")
        throw parse_error(path, r.line_no, "not a circlepack packing file");
    if (t[2] != "v1") throw parse_error(path, r.line_no, "unsupported version '" + t[2] + "'");

    // Verify the checksum over the body (between the version line and the
    // checksum line), normalizing line endings the same way the writer does.
    {
        std::istringstream all(text);
        std::string line, body, checksum_line;
        bool first = true;
        while (std::getline(all, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (first) {
                first = false;
                continue;
            }
            if (line.rfind("checksum ", 0) == 0) {
                checksum_line = line;
                break;
            }
            body += line + "\n";
        }
        if (checksum_line.empty()) throw parse_error(path, r.line_no, "missing checksum line");
        const std::string want = checksum_line.substr(9);
        if (hex64(fnv1a(body)) != want)
            throw parse_error(path, 1, "checksum mismatch: file is corrupt or was edited");
    }

    t = r.expect(2, "'backing' header line");
    if (t[0] != "backing") throw parse_error(path, r.line_no, "wanted 'backing', got '" + t[0] + "'");
    if (t[1] == "rational") return parse_packing_body<Rat>(r);
    if (t[1] == "double") return parse_packing_body<double>(r);
    throw parse_error(path, r.line_no, "unknown backing '" + t[1] + "'");
}

std::string spherical_to_string(const std::vector<SphericalCircle>& circles, const std::string& source) {
    std::ostringstream body;
    body << "source " << source << "\n";
    body << "circles " << circles.size() << "\n";
    for (const auto& c : circles)
        body << format_double(c.normal[0]) << " " << format_double(c.normal[1]) << " "
             << format_double(c.normal[2]) << " " << format_double(c.offset) << "\n";
    const std::string b = body.str();
    return "circlepack spherical v1\n" + b + "checksum " + hex64(fnv1a(b)) + "\n";
}

void write_spherical(const std::vector<SphericalCircle>& circles, const std::string& source,
                     const std::string& path) {
    write_text_file(path, spherical_to_string(circles, source));
}

std::vector<SphericalCircle> read_spherical(const std::string& path) {
    const std::string text = read_text_file(path);
    LineReader r(text, path);
    auto t = r.expect(3, "format version line");
    if (t[0] != "circlepack" || t[1] != "spherical")
        throw parse_error(path, r.line_no, "not a circlepack spherical file");
    if (t[2] != "v1") throw parse_error(path, r.line_no, "unsupported version '" + t[2] + "'");
    t = r.expect(2, "'source' line");
    t = r.expect(2, "'circles' count line");
    const long n = parse_count(t[1], r);
    std::vector<SphericalCircle> out;
    for (long i = 0; i < n; ++i) {
        auto rec = r.expect(4, "spherical record");
        SphericalCircle c;
        try {
            c.normal = {parse_double(rec[0]), parse_double(rec[1]), parse_double(rec[2])};
            c.offset = parse_double(rec[3]);
        } catch (const std::exception& e) {
            throw parse_error(path, r.line_no, e.what());
        }
        // keep the stored coordinates verbatim so re-serialization is
        // byte-stable; only validate and refresh the cached sine
        const double len2 = c.normal[0] * c.normal[0] + c.normal[1] * c.normal[1] + c.normal[2] * c.normal[2];
        if (std::fabs(len2 - 1) > 1e-9 || c.offset < 0 || c.offset >= 1)
            throw parse_error(path, r.line_no, "record is not a normalized spherical circle");
        c.sin_theta = std::sqrt((1 - c.offset) * (1 + c.offset));
        out.push_back(c);
    }
    return out;
}

SchottkyGroup parse_schottky_config(const std::string& text, const std::string& name) {
    LineReader r(text, name);
    std::vector<std::string> tokens;
    std::size_t genus = 0;
    bool have_genus = false;
    std::vector<DiskPair> pairs;
    std::vector<MobiusMap> gens;
    auto num = [&](const std::string& tok) {
        try {
            return parse_double(tok);
        } catch (const std::exception& e) {
            throw parse_error(name, r.line_no, e.what());
        }
    };
    while (r.next(tokens)) {
        if (tokens[0] == "genus") {
            if (tokens.size() != 2) throw parse_error(name, r.line_no, "wanted 'genus k'");
            const long k = parse_count(tokens[1], r);
            if (k < 1) throw parse_error(name, r.line_no, "genus must be >= 1");
            genus = static_cast<std::size_t>(k);
            have_genus = true;
        } else if (tokens[0] == "pair") {
            if (tokens.size() != 8)
                throw parse_error(name, r.line_no, "wanted 'pair cx cy cx' cy' r r' twist'");
            DiskPair p;
            p.d = Disk{{num(tokens[1]), num(tokens[2])}, num(tokens[5])};
            p.d_prime = Disk{{num(tokens[3]), num(tokens[4])}, num(tokens[6])};
            p.twist = num(tokens[7]);
            if (!(p.d.radius > 0) || !(p.d_prime.radius > 0))
                throw parse_error(name, r.line_no, "disk radii must be positive");
            pairs.push_back(p);
            gens.push_back(standard_pairing(p.d, p.d_prime, p.twist));
        } else if (tokens[0] == "map") {
            if (tokens.size() != 9)
                throw parse_error(name, r.line_no, "wanted 'map a_re a_im b_re b_im c_re c_im d_re d_im'");
            if (pairs.empty()) throw parse_error(name, r.line_no, "'map' must follow a 'pair' line");
            gens.back() = MobiusMap::from_coefficients({num(tokens[1]), num(tokens[2])},
                                                       {num(tokens[3]), num(tokens[4])},
                                                       {num(tokens[5]), num(tokens[6])},
                                                       {num(tokens[7]), num(tokens[8])});
        } else {
            throw parse_error(name, r.line_no, "unknown directive '" + tokens[0] + "'");
        }
    }
    if (!have_genus) throw parse_error(name, r.line_no, "missing 'genus' line");
    if (pairs.size() != genus)
        throw parse_error(name, r.line_no,
                          "genus " + std::to_string(genus) + " declared but " +
                              std::to_string(pairs.size()) + " pair lines given");
    return SchottkyGroup::from_generators(std::move(pairs), std::move(gens));
}

SchottkyGroup read_schottky_config(const std::string& path) {
    return parse_schottky_config(read_text_file(path), path);
}

std::string csv_count_series(const CountSeries& s) {
    std::ostringstream os;
    os << "T,count\n";
    for (std::size_t i = 0; i < s.ts.size(); ++i) os << format_double(s.ts[i]) << "," << s.counts[i] << "\n";
    return os.str();
}

std::string csv_fit(const FitResult& f) {
    std::ostringstream os;
    os << "exponent,intercept,window_lo,window_hi,points\n";
    os << format_double(f.exponent) << "," << format_double(f.intercept) << "," << format_double(f.t_lo)
       << "," << format_double(f.t_hi) << "," << f.ts.size() << "\n";
    return os.str();
}

std::string csv_prime_table(const std::vector<double>& ts, const std::vector<long long>& prime,
                            const std::vector<long long>& twin, const std::vector<long long>& distinct) {
    std::ostringstream os;
    os << "T,prime_pi,twin_prime_pi,distinct\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        os << format_double(ts[i]) << "," << prime[i] << "," << twin[i] << "," << distinct[i] << "\n";
    return os.str();
}

std::string csv_ratio_series(const RatioSeries& r) {
    std::ostringstream os;
    os << "T,ratio\n";
    for (std::size_t i = 0; i < r.ts.size(); ++i) {
        os << format_double(r.ts[i]) << ",";
        if (r.ratios[i]) os << format_double(*r.ratios[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace circlepack
