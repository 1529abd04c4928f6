#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topofolio::data {

/// Date-indexed panel of closing prices, assets in columns.
/// Missing cells (empty CSV fields) are stored as NaN until
/// drop_incomplete_assets removes the affected columns.
/// Immutable after construction; safe to share across threads.
class PricePanel {
public:
    PricePanel() = default;
    PricePanel(std::vector<std::string> dates, std::vector<std::string> assets,
               std::vector<double> prices);

    std::size_t n_dates() const { return dates_.size(); }
    std::size_t n_assets() const { return assets_.size(); }
    const std::vector<std::string>& dates() const { return dates_; }
    const std::vector<std::string>& assets() const { return assets_; }
    double price(std::size_t row, std::size_t col) const {
        return prices_[row * assets_.size() + col];
    }
    bool has_missing() const;

private:
    std::vector<std::string> dates_;
    std::vector<std::string> assets_;
    std::vector<double> prices_; // row-major, dates x assets
};

/// Simple returns r_t = (p_t - p_{t-1}) / p_{t-1}; one row shorter than the
/// source price panel. No missing cells; every return > -1.
class ReturnsPanel {
public:
    ReturnsPanel() = default;
    ReturnsPanel(std::vector<std::string> dates, std::vector<std::string> assets,
                 std::vector<double> returns);

    std::size_t n_dates() const { return dates_.size(); }
    std::size_t n_assets() const { return assets_.size(); }
    const std::vector<std::string>& dates() const { return dates_; }
    const std::vector<std::string>& assets() const { return assets_; }
    double ret(std::size_t row, std::size_t col) const {
        return returns_[row * assets_.size() + col];
    }

    /// One asset's return series over [row_begin, row_begin + row_count).
    std::vector<double> column(std::size_t col, std::size_t row_begin,
                               std::size_t row_count) const;
    std::vector<double> column(std::size_t col) const {
        return column(col, 0, dates_.size());
    }
    /// Index of an asset identifier; throws if absent.
    std::size_t asset_index(const std::string& name) const;
    /// Panel restricted to the given columns (order preserved as listed).
    ReturnsPanel select_assets(const std::vector<std::size_t>& cols) const;

private:
    std::vector<std::string> dates_;
    std::vector<std::string> assets_;
    std::vector<double> returns_;
};

/// Rolling-window scheme in trading days.
struct WindowSpec {
    std::size_t in_len = 252;
    std::size_t out_len = 21;
    std::size_t shift = 21;
    void validate() const;
};

/// Row ranges of one rolling window: in-sample [in_begin, in_begin+in_len),
/// out-of-sample [out_begin, out_begin+out_len), out_begin == in_begin+in_len.
struct WindowSlice {
    std::size_t in_begin = 0;
    std::size_t in_len = 0;
    std::size_t out_begin = 0;
    std::size_t out_len = 0;
};

/// Parse a price CSV: UTF-8, comma-delimited, header `date,<tickers...>`,
/// ISO-8601 dates in the first column, decimal-point numerics, empty cells
/// meaning missing. Throws std::runtime_error naming the offending
/// row/column on malformed dates, non-numeric or non-positive cells,
/// duplicate or non-increasing dates.
PricePanel load_prices(const std::string& path);

/// Keep exactly the columns with no missing cell over the full date range,
/// preserving column order. Throws if every asset is incomplete.
PricePanel drop_incomplete_assets(const PricePanel& panel);

/// Daily simple returns; requires >= 2 dates and a complete panel.
ReturnsPanel compute_returns(const PricePanel& panel);

/// Number of full rolling windows in a panel of `rows` rows:
/// floor((rows - in_len - out_len) / shift) + 1. Zero if the panel is short.
std::size_t window_count(std::size_t rows, const WindowSpec& spec);

/// Enumerate full in/out window slices; partial trailing windows are
/// discarded. Throws if the panel cannot fit a single window.
std::vector<WindowSlice> rolling_windows(const ReturnsPanel& panel,
                                         const WindowSpec& spec);

} // namespace topofolio::data
