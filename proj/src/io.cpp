#include "linset/io.hpp"

#include <fstream>
#include <sstream>

#include "linset/errors.hpp"

namespace linset {

namespace {

// Tokenizes into integer rows, skipping blank lines and `#` comments.
std::vector<std::vector<int64_t>> int_rows(const std::string& text) {
    std::vector<std::vector<int64_t>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::vector<int64_t> row;
        int64_t v = 0;
        while (fields >> v) row.push_back(v);
        if (!fields.eof()) throw ParseError("non-integer token in line: " + line);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string serialize_subspace(const Subspace& u) {
    const Tower& t = *u.tower();
    const int e = u.base_degree();
    std::ostringstream os;
    os << t.p() << ' ' << t.h() << ' ' << t.n() << ' ' << u.r() << ' ' << e << ' '
       << u.base_rows().size() << '\n';
    for (const Vec& row : u.base_rows()) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) os << ' ';
            os << t.subfield_value(row[j], e);
        }
        os << '\n';
    }
    return os.str();
}

Subspace parse_subspace(const std::string& text, uint64_t table_limit) {
    std::vector<std::vector<int64_t>> rows = int_rows(text);
    if (rows.empty()) throw ParseError("empty subspace file");
    if (rows[0].size() != 6)
        throw ParseError("subspace header must be 6 integers: p h n r e m");
    const int64_t p = rows[0][0];
    const int h = int(rows[0][1]);
    const int n = int(rows[0][2]);
    const int r = int(rows[0][3]);
    const int e = int(rows[0][4]);
    const int m = int(rows[0][5]);
    if (r < 1) throw ParseError("subspace header: r must be positive");
    if (m < 0 || size_t(m) != rows.size() - 1)
        throw ParseError("subspace file: expected " + std::to_string(m) + " basis rows, found " +
                         std::to_string(rows.size() - 1));
    TowerPtr t = Tower::make(p, h, n, table_limit);
    if (e < 1 || n % e != 0) throw ParseError("subspace header: e must divide n");
    const size_t cols = size_t(r) * size_t(n / e);
    Ambient amb{t, r};
    std::vector<Vec> vectors;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw ParseError("subspace row " + std::to_string(i) + ": expected " +
                             std::to_string(cols) + " entries");
        Vec flat;
        flat.reserve(cols);
        for (int64_t v : rows[i]) {
            if (v < 0) throw ParseError("negative field value");
            flat.push_back(t->subfield_from_value(uint64_t(v), e));
        }
        vectors.push_back(unflatten_vec(*t, flat, e));
    }
    return Subspace::span(amb, vectors, e);
}

Subspace read_subspace_file(const std::string& path, uint64_t table_limit) {
    return parse_subspace(read_text_file(path), table_limit);
}

FunctionTable parse_function_table(const std::string& text, uint64_t table_limit) {
    std::vector<std::vector<int64_t>> rows = int_rows(text);
    if (rows.empty()) throw ParseError("empty function table");
    for (const auto& row : rows)
        if (row.size() != 2) throw ParseError("function table lines must be `x f(x)` pairs");
    const uint64_t Q = rows.size();
    // factor Q as p^h with p prime
    int64_t p = 0;
    int hexp = 0;
    for (int64_t cand = 2; uint64_t(cand) <= Q; ++cand) {
        if (Q % uint64_t(cand) == 0) {
            p = cand;
            uint64_t rest = Q;
            while (rest % uint64_t(cand) == 0) {
                rest /= uint64_t(cand);
                ++hexp;
            }
            if (rest != 1)
                throw ParseError("function table size " + std::to_string(Q) +
                                 " is not a prime power");
            break;
        }
    }
    if (p == 0) throw ParseError("function table must have at least 2 lines");
    FunctionTable ft;
    ft.tower = Tower::make(p, 1, hexp, table_limit);
    ft.values.assign(Q, ft.tower->zero());
    std::vector<bool> seen(Q, false);
    for (const auto& row : rows) {
        if (row[0] < 0 || uint64_t(row[0]) >= Q || row[1] < 0 || uint64_t(row[1]) >= Q)
            throw ParseError("function table values must lie in [0, " + std::to_string(Q) + ")");
        if (seen[size_t(row[0])]) throw ParseError("duplicate x in function table");
        seen[size_t(row[0])] = true;
        ft.values[size_t(row[0])] = ft.tower->from_value(uint64_t(row[1]));
    }
    return ft;
}

std::string serialize_function_table(const FunctionTable& f) {
    std::ostringstream os;
    for (uint64_t x = 0; x < f.values.size(); ++x)
        os << x << ' ' << f.tower->to_value(f.values[size_t(x)]) << '\n';
    return os.str();
}

InputKind sniff_input(const std::string& text) {
    std::vector<std::vector<int64_t>> rows = int_rows(text);
    if (rows.empty()) throw ParseError("empty input");
    if (rows[0].size() == 6) return InputKind::subspace;
    if (rows[0].size() == 2) return InputKind::function_table;
    throw ParseError("input is neither a subspace file nor a function table");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace linset
