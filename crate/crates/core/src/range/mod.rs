//! Encrypted column store and cross-client range queries.

pub mod bench;
mod column;
mod query;

pub use column::{EncryptedColumn, COLUMN_MAGIC, COLUMN_VERSION};
pub use query::{
    compare_mc_binsearch, compare_mc_binsearch_prepared, query_binsearch, query_hybrid, query_simple, run_query,
    Method, QueryStats, RangeQueryResult,
};
