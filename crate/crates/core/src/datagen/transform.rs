use crate::error::{Error, Result};
use crate::series::{SeriesMatrix, SourceMeta};

/// Converts prices to log-returns, `r_t = ln(p_t / p_{t-1})`.
///
/// The output has one row fewer than the input; labels are kept.
pub fn log_returns(prices: &SeriesMatrix) -> Result<SeriesMatrix> {
    if prices.rows() < 3 {
        // T - 1 rows must still form a valid series.
        return Err(Error::TooFewRows);
    }
    let mut out = Vec::with_capacity(prices.channels());
    for (m, col) in prices.columns().iter().enumerate() {
        if let Some(t) = col.iter().position(|&p| p <= 0.0) {
            return Err(Error::NonPositivePrice {
                row: t + 1,
                column: m + 1,
                value: col[t],
            });
        }
        out.push(col.windows(2).map(|w| (w[1] / w[0]).ln()).collect());
    }
    let mut meta = SourceMeta::new(format!("log-returns({})", prices.meta().source));
    meta.params = prices.meta().params.clone();
    meta.seed = prices.meta().seed;
    SeriesMatrix::new(out, prices.labels().to_vec(), meta)
}
