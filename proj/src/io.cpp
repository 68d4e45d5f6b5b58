#include "sandwich/io.hpp"

#include <fstream>
#include <sstream>

namespace sandwich {

namespace {

struct LineReader {
    std::istream& in;
    std::string path;
    std::size_t lineno = 0;

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        return false;
    }

    std::string require(const std::string& what) {
        std::string line;
        if (!next(line)) fail("unexpected end of file, expected " + what);
        return line;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
    }
};

unsigned parse_unsigned(LineReader& r, const std::string& token, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        r.fail("expected a number for " + what + ", got '" + token + "'");
    }
}

// "name value" line
unsigned named_value(LineReader& r, const std::string& name) {
    const std::string line = r.require("'" + name + " <value>'");
    std::istringstream ss(line);
    std::string key, value, extra;
    ss >> key >> value;
    if (key != name || value.empty() || (ss >> extra))
        r.fail("expected '" + name + " <value>', got '" + line + "'");
    return parse_unsigned(r, value, name);
}

BitMatrix read_matrix_body(LineReader& r) {
    const std::string dims = r.require("'rows cols'");
    std::istringstream ss(dims);
    std::string rows_s, cols_s, extra;
    ss >> rows_s >> cols_s;
    if (rows_s.empty() || cols_s.empty() || (ss >> extra))
        r.fail("expected 'rows cols', got '" + dims + "'");
    const unsigned rows = parse_unsigned(r, rows_s, "rows");
    const unsigned cols = parse_unsigned(r, cols_s, "cols");
    BitMatrix m(rows, cols);
    for (unsigned i = 0; i < rows; ++i) {
        const std::string line = r.require("matrix row " + std::to_string(i));
        if (line.size() != cols)
            r.fail("row has " + std::to_string(line.size()) + " characters, expected " +
                   std::to_string(cols));
        for (unsigned j = 0; j < cols; ++j) {
            if (line[j] == '1') m.set(i, j, true);
            else if (line[j] != '0') r.fail("matrix rows may contain only 0/1 characters");
        }
    }
    return m;
}

void expect_section(LineReader& r, const std::string& name) {
    const std::string line = r.require("section '" + name + "'");
    if (line != name) r.fail("expected section '" + name + "', got '" + line + "'");
}

void write_matrix_body(std::ostream& out, const BitMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) out << m.row(i).to_string() << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    return in;
}

std::string nlmap_reference(LineReader& r, const std::string& name) {
    const std::string line = r.require("'" + name + " <path>'");
    std::istringstream ss(line);
    std::string key, ref;
    ss >> key;
    std::getline(ss, ref);
    const std::size_t start = ref.find_first_not_of(' ');
    ref = start == std::string::npos ? "" : ref.substr(start);
    if (key != name || ref.empty()) r.fail("expected '" + name + " <path>', got '" + line + "'");
    return ref;
}

KeyedMap load_referenced_nlmap(const std::filesystem::path& scheme_path, const std::string& ref) {
    std::filesystem::path p(ref);
    if (p.is_relative()) p = scheme_path.parent_path() / p;
    return read_nlmap_file(p);
}

} // namespace

std::string matrix_to_text(const BitMatrix& m) {
    std::ostringstream out;
    write_matrix_body(out, m);
    return out.str();
}

void write_matrix_file(const std::filesystem::path& path, const BitMatrix& m) {
    auto out = open_out(path);
    write_matrix_body(out, m);
}

BitMatrix read_matrix_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    LineReader r{in, path.string()};
    return read_matrix_body(r);
}

void write_nlmap_file(const std::filesystem::path& path, const KeyedMap& f) {
    auto out = open_out(path);
    out << "nlmap v1\n";
    out << "d1 " << f.d1 << '\n';
    out << "d2 " << f.d2 << '\n';
    out << "key_rule " << to_string(f.rule) << '\n';
    for (std::uint32_t y : f.table)
        out << BitVector::from_uint(y, f.d2).to_string() << '\n';
}

KeyedMap read_nlmap_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    LineReader r{in, path.string()};
    if (r.require("header 'nlmap v1'") != "nlmap v1") r.fail("expected header 'nlmap v1'");
    KeyedMap f;
    f.d1 = named_value(r, "d1");
    f.d2 = named_value(r, "d2");
    {
        const std::string line = r.require("'key_rule <rule>'");
        std::istringstream ss(line);
        std::string key, rule;
        ss >> key >> rule;
        if (key != "key_rule" || rule.empty()) r.fail("expected 'key_rule <rule>'");
        try {
            f.rule = key_rule_from_string(rule);
        } catch (const ParseError& e) {
            r.fail(e.what());
        }
    }
    if (f.d1 > 28) r.fail("d1 too large for a table file");
    f.table.reserve(std::size_t(1) << f.d1);
    for (std::size_t i = 0; i < (std::size_t(1) << f.d1); ++i) {
        const std::string line = r.require("table entry " + std::to_string(i));
        if (line.size() != f.d2)
            r.fail("table entry has " + std::to_string(line.size()) + " bits, expected " +
                   std::to_string(f.d2));
        BitVector v;
        try {
            v = BitVector::from_string(line);
        } catch (const ParseError& e) {
            r.fail(e.what());
        }
        f.table.push_back(static_cast<std::uint32_t>(v.to_uint()));
    }
    try {
        f.check();
    } catch (const ValidationError& e) {
        r.fail(e.what());
    }
    return f;
}

void write_scheme_file(const std::filesystem::path& path, const SchemeSpec& spec,
                       const std::string& nlmap_ref) {
    auto out = open_out(path);
    out << "scheme v1\n";
    out << "n " << spec.n << '\n';
    out << "N " << spec.N << '\n';
    out << "Ni " << spec.Ni << '\n';
    out << "No " << spec.No << '\n';
    out << "A\n";
    write_matrix_body(out, spec.A);
    out << "B\n";
    write_matrix_body(out, spec.B);
    out << "T\n";
    write_matrix_body(out, spec.T);
    out << "nonlinear " << nlmap_ref << '\n';
}

SchemeSpec read_scheme_spec(const std::filesystem::path& path) {
    auto in = open_in(path);
    LineReader r{in, path.string()};
    if (r.require("header 'scheme v1'") != "scheme v1") r.fail("expected header 'scheme v1'");
    SchemeSpec spec;
    spec.n = named_value(r, "n");
    spec.N = named_value(r, "N");
    spec.Ni = named_value(r, "Ni");
    spec.No = named_value(r, "No");
    expect_section(r, "A");
    spec.A = read_matrix_body(r);
    expect_section(r, "B");
    spec.B = read_matrix_body(r);
    expect_section(r, "T");
    spec.T = read_matrix_body(r);
    spec.f = load_referenced_nlmap(path, nlmap_reference(r, "nonlinear"));
    return spec;
}

Scheme parse_scheme_file(const std::filesystem::path& path) {
    return Scheme::make(read_scheme_spec(path));
}

void write_mbscheme_file(const std::filesystem::path& path, const MultiBranchSpec& spec,
                         const std::vector<std::string>& nlmap_refs) {
    if (nlmap_refs.size() != spec.r)
        throw ShapeError("need one keyed-map reference per branch");
    auto out = open_out(path);
    out << "mbscheme v1\n";
    out << "n " << spec.n << '\n';
    out << "N " << spec.N << '\n';
    out << "r " << spec.r << '\n';
    out << "T\n";
    write_matrix_body(out, spec.T);
    for (unsigned j = 0; j < spec.r; ++j) {
        const std::string tag = std::to_string(j + 1);
        out << "A" << tag << '\n';
        write_matrix_body(out, spec.branches[j].A);
        out << "B" << tag << '\n';
        write_matrix_body(out, spec.branches[j].B);
        out << "nonlinear" << tag << ' ' << nlmap_refs[j] << '\n';
    }
}

MultiBranchSpec read_mbscheme_spec(const std::filesystem::path& path) {
    auto in = open_in(path);
    LineReader r{in, path.string()};
    if (r.require("header 'mbscheme v1'") != "mbscheme v1")
        r.fail("expected header 'mbscheme v1'");
    MultiBranchSpec spec;
    spec.n = named_value(r, "n");
    spec.N = named_value(r, "N");
    spec.r = named_value(r, "r");
    if (spec.r == 0 || spec.r > 64) r.fail("branch count out of range");
    expect_section(r, "T");
    spec.T = read_matrix_body(r);
    for (unsigned j = 0; j < spec.r; ++j) {
        const std::string tag = std::to_string(j + 1);
        BranchSpec br;
        expect_section(r, "A" + tag);
        br.A = read_matrix_body(r);
        expect_section(r, "B" + tag);
        br.B = read_matrix_body(r);
        br.f = load_referenced_nlmap(path, nlmap_reference(r, "nonlinear" + tag));
        spec.branches.push_back(std::move(br));
    }
    return spec;
}

MultiBranchScheme parse_mbscheme_file(const std::filesystem::path& path) {
    return MultiBranchScheme::make(read_mbscheme_spec(path));
}

bool is_mbscheme_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line == "mbscheme v1";
}

BitVector parse_bits(const std::string& s, std::size_t expected_len, const std::string& what) {
    BitVector v;
    try {
        v = BitVector::from_string(s);
    } catch (const ParseError&) {
        throw ParseError(what + ": expected a 0/1 string, got '" + s + "'");
    }
    if (v.size() != expected_len)
        throw ParseError(what + ": expected " + std::to_string(expected_len) + " bits, got " +
                         std::to_string(v.size()));
    return v;
}

} // namespace sandwich
