#include "tiot/data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace tiot {

namespace {

double parse_number(const std::string& field, const std::string& where) {
    // strtod accepts the scientific notation UCR files use; reject
    // trailing garbage and empty fields.
    const char* s = field.c_str();
    char* end = nullptr;
    const double x = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ParseError(where + ": not a number: '" + field + "'");
    if (!std::isfinite(x)) throw ParseError(where + ": non-finite value");
    return x;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

LabeledDataset read_ucr_tsv(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    LabeledDataset ds;
    {
        auto slash = path.find_last_of('/');
        auto base = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = base.find_last_of('.');
        ds.name = dot == std::string::npos ? base : base.substr(0, dot);
    }
    std::string line;
    long lineno = 0;
    Eigen::Index expected = -1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto where = path + ":" + std::to_string(lineno);
        auto fields = split(line, '\t');
        if (fields.size() < 2) throw ParseError(where + ": row needs a label and values");
        const double labd = parse_number(fields[0], where);
        const int lab = int(std::lround(labd));
        if (std::abs(labd - lab) > 1e-9)
            throw ParseError(where + ": label not an integer: '" + fields[0] + "'");
        VectorXd vals(fields.size() - 1);
        for (size_t k = 1; k < fields.size(); ++k)
            vals(Eigen::Index(k - 1)) = parse_number(fields[k], where);
        if (expected < 0)
            expected = vals.size();
        else if (vals.size() != expected)
            throw ParseError(where + ": ragged row, " + std::to_string(vals.size()) +
                             " values where " + std::to_string(expected) + " expected");
        TimeSeries ts = TimeSeries::univariate(vals, lab);
        ds.series.push_back(normalize ? zscore_normalize(ts) : std::move(ts));
    }
    if (ds.series.empty()) throw ParseError(path + ": no series");
    return ds;
}

void write_ucr_tsv(const LabeledDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << std::setprecision(17);
    for (const auto& s : ds.series) {
        if (s.dim() != 1) throw InvalidInput("write_ucr_tsv: univariate only");
        out << (s.label() ? *s.label() : 0);
        for (Eigen::Index i = 0; i < s.length(); ++i) out << '\t' << s.values()(0, i);
        out << '\n';
    }
}

std::pair<TimeSeries, TimeSeries> gen_gaussian_pair(std::uint64_t seed, int n,
                                                    bool with_noise) {
    if (n < 1) throw InvalidInput("gen_gaussian_pair: n must be >= 1");
    auto bump = [](double t, double center, double sd) {
        const double z = (t - center) / sd;
        return std::exp(-0.5 * z * z);
    };
    VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        const double t = i + 1;
        x(i) = 0.2 * bump(t, 50.0, 7.0) + bump(t, 140.0, 10.0);
        y(i) = 0.2 * bump(t, 75.0, 7.0) + bump(t, 165.0, 10.0);
    }
    if (with_noise) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, 0.01);
        for (int i = 0; i < n; ++i) x(i) += noise(rng);
        for (int i = 0; i < n; ++i) y(i) += noise(rng);
    }
    return {TimeSeries::univariate(x), TimeSeries::univariate(y)};
}

TimeSeries read_climate_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    line = strip_cr(line);
    auto header = split(line, ',');
    int temp_col = -1;
    for (size_t k = 0; k < header.size(); ++k)
        if (header[k] == "meantemp") temp_col = int(k);
    if (temp_col < 0)
        throw ParseError(path + ": header has no 'meantemp' column");
    std::vector<double> temps;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (int(fields.size()) <= temp_col)
            throw ParseError(path + ":" + std::to_string(lineno) + ": short row");
        temps.push_back(
            parse_number(fields[temp_col], path + ":" + std::to_string(lineno)));
    }
    if (temps.empty()) throw ParseError(path + ": no data rows");
    return TimeSeries::univariate(Eigen::Map<VectorXd>(temps.data(), temps.size()));
}

TimeSeries lag_window(const TimeSeries& ts, int ell, int window_len) {
    if (ts.dim() != 1) throw InvalidInput("lag_window: univariate only");
    if (window_len < 1) throw InvalidInput("lag_window: window must be >= 1");
    if (ell < 1 || Eigen::Index(ell) + window_len - 1 > ts.length())
        throw InvalidInput("lag_window: window [" + std::to_string(ell) + ", " +
                           std::to_string(ell + window_len - 1) + "] outside series of length " +
                           std::to_string(ts.length()));
    VectorXd v = ts.values().row(0).segment(ell - 1, window_len).transpose();
    return TimeSeries::univariate(v);
}

} // namespace tiot
