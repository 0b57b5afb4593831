//! Workloads shared by the benchmarks.

use lmod_core::generators::{gen_f, gen_r, gen_r1};
use lmod_core::{Context, Word};

/// `r_1` and `r F` for `n`, the heaviest single sphere comparison in the suite.
pub fn factorization_pair(n: u32) -> (Context, Word, Word) {
    let ctx = Context::new(n, 3).expect("valid context");
    let rf = gen_r(&ctx).concat(&gen_f(&ctx));
    (ctx, gen_r1(&ctx), rf)
}
