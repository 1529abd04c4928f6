#include "topofolio/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace topofolio::data {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

bool equals_ci(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

} // namespace

PricePanel::PricePanel(std::vector<std::string> dates, std::vector<std::string> assets,
                       std::vector<double> prices)
    : dates_(std::move(dates)), assets_(std::move(assets)), prices_(std::move(prices)) {
    if (prices_.size() != dates_.size() * assets_.size())
        throw std::invalid_argument("PricePanel: matrix size does not match dates x assets");
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i] == dates_[i - 1])
            throw std::invalid_argument("PricePanel: duplicate date " + dates_[i]);
        if (dates_[i] < dates_[i - 1])
            throw std::invalid_argument("PricePanel: dates not increasing at " + dates_[i]);
    }
    for (double p : prices_)
        if (!std::isnan(p) && p <= 0.0)
            throw std::invalid_argument("PricePanel: non-positive price");
}

bool PricePanel::has_missing() const {
    return std::any_of(prices_.begin(), prices_.end(),
                       [](double p) { return std::isnan(p); });
}

ReturnsPanel::ReturnsPanel(std::vector<std::string> dates, std::vector<std::string> assets,
                           std::vector<double> returns)
    : dates_(std::move(dates)), assets_(std::move(assets)), returns_(std::move(returns)) {
    if (returns_.size() != dates_.size() * assets_.size())
        throw std::invalid_argument("ReturnsPanel: matrix size does not match dates x assets");
    for (double r : returns_)
        if (!std::isfinite(r) || r <= -1.0)
            throw std::invalid_argument("ReturnsPanel: return not finite or <= -1");
}

std::vector<double> ReturnsPanel::column(std::size_t col, std::size_t row_begin,
                                         std::size_t row_count) const {
    if (col >= assets_.size())
        throw std::out_of_range("ReturnsPanel::column: column out of range");
    if (row_begin + row_count > dates_.size())
        throw std::out_of_range("ReturnsPanel::column: row range out of range");
    std::vector<double> out(row_count);
    for (std::size_t t = 0; t < row_count; ++t)
        out[t] = ret(row_begin + t, col);
    return out;
}

std::size_t ReturnsPanel::asset_index(const std::string& name) const {
    auto it = std::find(assets_.begin(), assets_.end(), name);
    if (it == assets_.end())
        throw std::runtime_error("asset '" + name + "' not found in panel");
    return static_cast<std::size_t>(it - assets_.begin());
}

ReturnsPanel ReturnsPanel::select_assets(const std::vector<std::size_t>& cols) const {
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (std::size_t c : cols) {
        if (c >= assets_.size())
            throw std::out_of_range("ReturnsPanel::select_assets: column out of range");
        names.push_back(assets_[c]);
    }
    std::vector<double> vals(dates_.size() * cols.size());
    for (std::size_t t = 0; t < dates_.size(); ++t)
        for (std::size_t j = 0; j < cols.size(); ++j)
            vals[t * cols.size() + j] = ret(t, cols[j]);
    return ReturnsPanel(dates_, std::move(names), std::move(vals));
}

void WindowSpec::validate() const {
    if (in_len < 1 || out_len < 1 || shift < 1)
        throw std::invalid_argument("WindowSpec: in_len, out_len and shift must be >= 1");
}

PricePanel load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open price file: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty price file: " + path);
    auto header = split_csv(line);
    if (header.size() < 2)
        throw std::runtime_error("price file needs a date column and at least one asset");
    if (!equals_ci(header[0], "date"))
        throw std::runtime_error("first header column must be 'date', got '" +
                                 std::string(header[0]) + "'");

    std::vector<std::string> assets;
    assets.reserve(header.size() - 1);
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j].empty())
            throw std::runtime_error("empty asset name in header column " + std::to_string(j + 1));
        assets.emplace_back(header[j]);
    }

    std::vector<std::string> dates;
    std::vector<double> prices;
    std::size_t row = 0; // data row counter, 1-based in messages
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto cells = split_csv(line);
        if (cells.size() != assets.size() + 1)
            throw std::runtime_error("row " + std::to_string(row) + ": expected " +
                                     std::to_string(assets.size() + 1) + " cells, got " +
                                     std::to_string(cells.size()));
        if (!is_iso_date(cells[0]))
            throw std::runtime_error("row " + std::to_string(row) + ": malformed date '" +
                                     std::string(cells[0]) + "'");
        std::string date(cells[0]);
        if (!dates.empty()) {
            if (date == dates.back())
                throw std::runtime_error("row " + std::to_string(row) + ": duplicate date " + date);
            if (date < dates.back())
                throw std::runtime_error("row " + std::to_string(row) + ": dates not increasing");
        }
        for (std::size_t j = 0; j < assets.size(); ++j) {
            std::string_view cell = cells[j + 1];
            if (cell.empty()) {
                prices.push_back(kNaN);
                continue;
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw std::runtime_error("row " + std::to_string(row) + ", column " + assets[j] +
                                         ": non-numeric cell '" + std::string(cell) + "'");
            if (!(value > 0.0))
                throw std::runtime_error("row " + std::to_string(row) + ", column " + assets[j] +
                                         ": non-positive price " + std::string(cell));
            prices.push_back(value);
        }
        dates.push_back(std::move(date));
    }
    if (dates.empty())
        throw std::runtime_error("price file has no data rows: " + path);
    return PricePanel(std::move(dates), std::move(assets), std::move(prices));
}

PricePanel drop_incomplete_assets(const PricePanel& panel) {
    const std::size_t n = panel.n_assets();
    const std::size_t rows = panel.n_dates();
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j) {
        bool complete = true;
        for (std::size_t t = 0; t < rows; ++t)
            if (std::isnan(panel.price(t, j))) { complete = false; break; }
        if (complete) keep.push_back(j);
    }
    if (keep.empty())
        throw std::runtime_error("empty universe: every asset has missing observations");

    std::vector<std::string> assets;
    assets.reserve(keep.size());
    for (std::size_t j : keep) assets.push_back(panel.assets()[j]);
    std::vector<double> prices(rows * keep.size());
    for (std::size_t t = 0; t < rows; ++t)
        for (std::size_t j = 0; j < keep.size(); ++j)
            prices[t * keep.size() + j] = panel.price(t, keep[j]);
    return PricePanel(panel.dates(), std::move(assets), std::move(prices));
}

ReturnsPanel compute_returns(const PricePanel& panel) {
    if (panel.n_dates() < 2)
        throw std::runtime_error("compute_returns: need at least 2 dates");
    if (panel.has_missing())
        throw std::runtime_error(
            "compute_returns: panel has missing cells; drop incomplete assets first");
    const std::size_t n = panel.n_assets();
    const std::size_t rows = panel.n_dates() - 1;
    std::vector<std::string> dates(panel.dates().begin() + 1, panel.dates().end());
    std::vector<double> rets(rows * n);
    for (std::size_t t = 0; t < rows; ++t)
        for (std::size_t j = 0; j < n; ++j) {
            double prev = panel.price(t, j);
            double cur = panel.price(t + 1, j);
            rets[t * n + j] = (cur - prev) / prev;
        }
    return ReturnsPanel(std::move(dates), panel.assets(), std::move(rets));
}

std::size_t window_count(std::size_t rows, const WindowSpec& spec) {
    spec.validate();
    if (rows < spec.in_len + spec.out_len) return 0;
    return (rows - spec.in_len - spec.out_len) / spec.shift + 1;
}

std::vector<WindowSlice> rolling_windows(const ReturnsPanel& panel, const WindowSpec& spec) {
    const std::size_t rows = panel.n_dates();
    const std::size_t count = window_count(rows, spec);
    if (count == 0)
        throw std::runtime_error("panel too short for one window: need " +
                                 std::to_string(spec.in_len + spec.out_len) + " rows, have " +
                                 std::to_string(rows));
    std::vector<WindowSlice> out;
    out.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        WindowSlice w;
        w.in_begin = m * spec.shift;
        w.in_len = spec.in_len;
        w.out_begin = w.in_begin + spec.in_len;
        w.out_len = spec.out_len;
        out.push_back(w);
    }
    return out;
}

} // namespace topofolio::data
