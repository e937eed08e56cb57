//! Adaptive working precision: start small, double on
//! [`Error::PrecisionExhausted`], give up at a cap.

use crate::error::{Error, Result};

pub const DEFAULT_INITIAL: i64 = 64;
pub const DEFAULT_CAP: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub initial: i64,
    pub cap: i64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial: DEFAULT_INITIAL,
            cap: DEFAULT_CAP,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(initial: i64, cap: i64) -> Result<Self> {
        if initial < 8 || cap < initial {
            return Err(Error::Domain(format!(
                "precision policy needs 8 <= initial <= cap, got {initial} and {cap}"
            )));
        }
        Ok(PrecisionPolicy { initial, cap })
    }

    /// Runs `f` at increasing precision until it stops reporting precision
    /// loss. Returns the value and the precision that produced it.
    pub fn run<T>(&self, mut f: impl FnMut(i64) -> Result<T>) -> Result<(T, i64)> {
        let mut n = self.initial;
        loop {
            match f(n) {
                Err(e) if e.is_precision() && n < self.cap => {
                    n = (n * 2).min(self.cap);
                }
                Err(Error::PrecisionExhausted(msg)) => {
                    return Err(Error::PrecisionExhausted(format!(
                        "{msg} (cap {} reached)",
                        self.cap
                    )))
                }
                other => return other.map(|v| (v, n)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubles_until_success() {
        let policy = PrecisionPolicy::new(8, 100).unwrap();
        let (v, n) = policy
            .run(|n| {
                if n < 50 {
                    Err(Error::PrecisionExhausted("low".into()))
                } else {
                    Ok(n)
                }
            })
            .unwrap();
        assert_eq!((v, n), (64, 64));
    }

    #[test]
    fn surfaces_error_at_cap() {
        let policy = PrecisionPolicy::new(8, 20).unwrap();
        let mut calls = Vec::new();
        let r: Result<((), i64)> = policy.run(|n| {
            calls.push(n);
            Err(Error::PrecisionExhausted("never".into()))
        });
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));
        assert_eq!(calls, vec![8, 16, 20]);
    }

    #[test]
    fn other_errors_pass_through() {
        let r: Result<((), i64)> = PrecisionPolicy::default().run(|_| Err(Error::NotAbelian));
        assert_eq!(r.unwrap_err(), Error::NotAbelian);
    }
}
