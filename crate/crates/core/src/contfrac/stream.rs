use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Signed;

type Source = Box<dyn Iterator<Item = BigInt> + Send>;

struct State {
    source: Source,
    cache: Vec<BigInt>,
    done: bool,
}

/// A lazily evaluated sequence of positive integers.
///
/// Digits are pulled from the wrapped iterator on demand and cached, so
/// asking for digit `i` twice returns the same value. Clones share the cache.
/// A stream may be *declared* aperiodic by whoever builds it; nothing here
/// tries to verify that claim.
#[derive(Clone)]
pub struct DigitStream {
    state: Arc<Mutex<State>>,
    aperiodic: bool,
}

impl DigitStream {
    pub fn new(source: impl Iterator<Item = BigInt> + Send + 'static) -> Self {
        DigitStream {
            state: Arc::new(Mutex::new(State {
                source: Box::new(source),
                cache: Vec::new(),
                done: false,
            })),
            aperiodic: false,
        }
    }

    /// A stream whose digits are known (by the caller) to never become periodic.
    pub fn aperiodic(source: impl Iterator<Item = BigInt> + Send + 'static) -> Self {
        DigitStream {
            aperiodic: true,
            ..DigitStream::new(source)
        }
    }

    pub fn is_declared_aperiodic(&self) -> bool {
        self.aperiodic
    }

    /// Digit `i` (0-based), or `None` once the source is exhausted.
    ///
    /// # Panics
    ///
    /// Panics if the source yields a non-positive digit.
    pub fn get(&self, i: usize) -> Option<BigInt> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while st.cache.len() <= i && !st.done {
            match st.source.next() {
                Some(d) => {
                    assert!(d.is_positive(), "digit stream produced {d}");
                    st.cache.push(d);
                }
                None => st.done = true,
            }
        }
        st.cache.get(i).cloned()
    }

    /// Up to `n` leading digits.
    pub fn prefix(&self, n: usize) -> Vec<BigInt> {
        if n > 0 {
            self.get(n - 1);
        }
        let st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        st.cache.iter().take(n).cloned().collect()
    }
}

impl PartialEq for DigitStream {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.state, &other.state)
    }
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        f.debug_struct("DigitStream")
            .field("known", &st.cache)
            .field("aperiodic", &self.aperiodic)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caches_and_shares() {
        let s = DigitStream::new((1..4).map(BigInt::from));
        let t = s.clone();
        assert_eq!(s.get(1), Some(BigInt::from(2)));
        assert_eq!(t.prefix(10), vec![1, 2, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(s.get(3), None);
        assert_eq!(s, t);
        assert_ne!(s, DigitStream::new(std::iter::empty()));
    }

    #[test]
    #[should_panic(expected = "digit stream produced 0")]
    fn rejects_zero_digits() {
        DigitStream::new(std::iter::once(BigInt::from(0))).get(0);
    }
}
