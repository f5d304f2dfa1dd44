#include "relutil/returns.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace relutil {

ReturnsMatrix::ReturnsMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> values,
                             std::vector<std::string> labels)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("ReturnsMatrix: dimensions must be positive");
    }
    if (values_.size() != rows_ * cols_) {
        throw std::invalid_argument("ReturnsMatrix: value count does not match shape");
    }
    for (double v : values_) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("ReturnsMatrix: entries must be positive");
        }
    }
    if (!labels.empty()) {
        set_labels(std::move(labels));
    }
}

void ReturnsMatrix::set_labels(std::vector<std::string> labels) {
    if (labels.size() != cols_) {
        throw std::invalid_argument("ReturnsMatrix: label count does not match columns");
    }
    labels_ = std::move(labels);
}

std::pair<std::size_t, double> best_return(std::span<const double> r) {
    if (r.empty()) {
        throw std::invalid_argument("best_return: empty vector");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i] > r[best]) {
            best = i;
        }
    }
    return {best, r[best]};
}

ReturnsMatrix load_returns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_returns: cannot open " + path.string());
    }
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const char* p = line.data();
        const char* end = p + line.size();
        std::size_t fields = 0;
        while (true) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) {
                ++p;
            }
            if (p >= end) {
                break;
            }
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{}) {
                std::ostringstream msg;
                msg << "load_returns: parse error at " << path.string() << ":"
                    << line_no << ":" << (p - line.data() + 1);
                throw std::runtime_error(msg.str());
            }
            if (!(v > 0.0)) {
                std::ostringstream msg;
                msg << "load_returns: nonpositive entry at " << path.string() << ":"
                    << line_no << ":" << (p - line.data() + 1);
                throw std::runtime_error(msg.str());
            }
            values.push_back(v);
            ++fields;
            p = next;
        }
        if (fields == 0) {
            continue; // blank line
        }
        if (cols == 0) {
            cols = fields;
        } else if (fields != cols) {
            std::ostringstream msg;
            msg << "load_returns: ragged row at " << path.string() << ":" << line_no
                << " (" << fields << " fields, expected " << cols << ")";
            throw std::runtime_error(msg.str());
        }
        ++rows;
    }
    if (rows == 0) {
        throw std::runtime_error("load_returns: no data rows in " + path.string());
    }
    return ReturnsMatrix(rows, cols, std::move(values));
}

void save_returns(const ReturnsMatrix& R, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_returns: cannot open " + path.string());
    }
    char buf[40];
    for (std::size_t k = 0; k < R.rows(); ++k) {
        for (std::size_t i = 0; i < R.cols(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", R(k, i));
            if (i > 0) {
                out << ' ';
            }
            out << buf;
        }
        out << '\n';
    }
}

std::vector<std::string> load_tickers(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_tickers: cannot open " + path.string());
    }
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;
        }
        auto e = line.find_last_not_of(" \t\r");
        names.push_back(line.substr(b, e - b + 1));
    }
    return names;
}

ReturnsMatrix normalize_by_best(const ReturnsMatrix& R) {
    std::vector<double> values(R.rows() * R.cols());
    for (std::size_t k = 0; k < R.rows(); ++k) {
        auto r = R.row(k);
        double mx = *std::max_element(r.begin(), r.end());
        for (std::size_t i = 0; i < R.cols(); ++i) {
            values[k * R.cols() + i] = r[i] / mx;
        }
    }
    return ReturnsMatrix(R.rows(), R.cols(), std::move(values), R.labels());
}

ReturnRange return_range(const ReturnsMatrix& R) {
    auto [lo, hi] = std::minmax_element(R.values().begin(), R.values().end());
    return ReturnRange{*lo, *hi};
}

} // namespace relutil
