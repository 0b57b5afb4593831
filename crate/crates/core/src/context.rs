use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of a balanced superelliptic cover: `2n + 2` branch points,
/// `k` sheets, total genus `g = n(k - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContext", into = "RawContext")]
pub struct Context {
    n: u32,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawContext {
    n: u32,
    k: u32,
    g: u32,
}

impl TryFrom<RawContext> for Context {
    type Error = Error;

    fn try_from(raw: RawContext) -> Result<Self> {
        let ctx = Context::new(raw.n, raw.k)?;
        if ctx.g() != raw.g {
            return Err(Error::InvalidContext(format!("g = {} but n(k-1) = {}", raw.g, ctx.g())));
        }
        Ok(ctx)
    }
}

impl From<Context> for RawContext {
    fn from(ctx: Context) -> Self {
        RawContext {
            n: ctx.n,
            k: ctx.k,
            g: ctx.g(),
        }
    }
}

impl Context {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidContext(format!("n must be >= 1, got {n}")));
        }
        if k < 2 {
            return Err(Error::InvalidContext(format!("k must be >= 2, got {k}")));
        }
        Ok(Context { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn g(&self) -> u32 {
        self.n * (self.k - 1)
    }

    /// Number of marked points on the sphere, `2n + 2`.
    pub fn points(&self) -> u32 {
        2 * self.n + 2
    }

    /// Largest half-twist index, `2n + 1`.
    pub fn max_sigma(&self) -> u32 {
        2 * self.n + 1
    }
}

impl std::fmt::Display for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} k={} g={}", self.n, self.k, self.g())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_is_n_times_k_minus_one() {
        let ctx = Context::new(2, 3).unwrap();
        assert_eq!(ctx.g(), 4);
        assert_eq!(ctx.points(), 6);
        assert_eq!(Context::new(3, 4).unwrap().g(), 9);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(Context::new(0, 3).is_err());
        assert!(Context::new(1, 1).is_err());
    }

    #[test]
    fn serde_checks_genus() {
        let ctx = Context::new(2, 5).unwrap();
        let text = serde_json::to_string(&ctx).unwrap();
        assert_eq!(text, r#"{"n":2,"k":5,"g":8}"#);
        assert_eq!(serde_json::from_str::<Context>(&text).unwrap(), ctx);
        assert!(serde_json::from_str::<Context>(r#"{"n":2,"k":5,"g":7}"#).is_err());
    }
}
