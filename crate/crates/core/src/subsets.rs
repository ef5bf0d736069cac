//! k-subsets of `0..n` in colexicographic order.

/// Binomial coefficient; saturates rather than overflowing.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Colex iterator over k-subsets of `0..n`, yielding sorted index vectors.
///
/// In colex order subsets are compared by their largest element first, so
/// all subsets of `0..m` come before any subset containing `m`.
#[derive(Debug, Clone)]
pub struct Colex {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        Colex {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }

    /// Subsets of `0..n` of size `k` whose largest element is exactly `top`.
    /// Concatenating these for `top = k-1..n` reproduces [`Colex::new`].
    pub fn with_top(top: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
        assert!(k >= 1);
        Colex::new(top, k - 1).map(move |mut s| {
            s.push(top);
            s
        })
    }

    /// Advances `set` to its colex successor in place; returns false after the last.
    pub fn advance(set: &mut [usize], n: usize) -> bool {
        let k = set.len();
        for i in 0..k {
            let limit = if i + 1 < k { set[i + 1] } else { n };
            if set[i] + 1 < limit {
                set[i] += 1;
                for (j, slot) in set.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if !Colex::advance(&mut self.current, self.n) {
            self.done = true;
        }
        Some(out)
    }
}
