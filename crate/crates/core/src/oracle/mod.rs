//! Brute-force checks that share no code with the main algorithms: word
//! rewriting without collection, Howell-form linear algebra, and a dense
//! count of `H²(G, Z/p^e)`.

mod brute;
mod howell;
mod rewrite;

pub use brute::{brute_h2, brute_h2_stable, BruteH2Report, BRUTE_BUDGET};
pub use howell::{howell_solve, row_span_log, verify_certificate, HowellOutcome, HowellSpan, SparseModMatrix};
pub use rewrite::{naive_rewrite, STEP_LIMIT};
