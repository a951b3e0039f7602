//! SELECT-style conjunctive graph queries over a [`TripleStore`](crate::store::TripleStore).

mod exec;
mod parser;

pub use exec::{execute, execute_in_order, join_order, passes, sort_rows, ResultTable};
pub use parser::{parse_query, Comparator, Filter, PatternTerm, QueryAst, QueryError, TriplePattern};
