//! Permutations in list form and words over a finite alphabet.
//!
//! Points are labelled `1..=n` at every public boundary. Permutations act on
//! the right: `x^g` is the image of `x`, and `g.compose(&h)` applies `g`
//! first, so `x^(gh) = (x^g)^h`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree. Point sets are packed into `u64` masks.
pub const MAX_DEGREE: usize = 64;

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(())
}

/// A bijection of `{1..n}` stored in list form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // zero-based images
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based list form.
    pub fn from_list(list: &[usize]) -> Result<Self> {
        let n = list.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &x in list {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!("image {x} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            images.push((x - 1) as u8);
        }
        Ok(Permutation { images: images.into() })
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        check_degree(n)?;
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if std::mem::replace(&mut moved[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(Error::PointOutOfRange { point: next, degree: n });
                }
                images[x - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation { images: images.into() })
    }

    /// Parses either cycle notation `(1,4,6)(2,7)` / `()` or a bracketed
    /// image list `[4,7,1,...]`. The degree is never inferred.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::InvalidPermutation(format!("unterminated list `{text}`")))?;
            let list = parse_points(body)?;
            if list.len() != degree {
                return Err(Error::DegreeMismatch {
                    left: list.len(),
                    right: degree,
                });
            }
            return Permutation::from_list(&list);
        }
        if !text.starts_with('(') {
            return Err(Error::InvalidPermutation(format!("cannot parse `{text}`")));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced `{text}`")))?;
            let body = &open[..close];
            if !body.trim().is_empty() {
                cycles.push(parse_points(body)?);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn image(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 1-based list form.
    pub fn list_form(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Zero-based images, the internal storage.
    pub fn as_bytes(&self) -> &[u8] {
        &self.images
    }

    pub(crate) fn from_bytes_unchecked(images: &[u8]) -> Self {
        Permutation { images: images.into() }
    }

    /// `x ↦ (x^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Infallible composition for callers that have already matched degrees.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        Permutation { images: inv.into() }
    }

    pub fn fix_count(&self) -> usize {
        fix_count(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn order(&self) -> u64 {
        order_of(&self.images)
    }

    /// Nontrivial cycles, each starting at its smallest point, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn as_word(&self) -> Word {
        Word {
            symbols: self.images.iter().map(|&x| x + 1).collect(),
            alphabet: self.degree(),
        }
    }
}

pub(crate) fn fix_count(images: &[u8]) -> usize {
    images.iter().enumerate().filter(|&(x, &y)| x == y as usize).count()
}

pub(crate) fn order_of(images: &[u8]) -> u64 {
    let n = images.len();
    let mut seen = [false; MAX_DEGREE];
    let mut order = 1u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

fn parse_points(body: &str) -> Result<Vec<usize>> {
    body.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("bad point `{}`", tok.trim())))
        })
        .collect()
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.list_form())
    }
}

/// A word over the alphabet `{1..n}`. Received words carry no frequency
/// constraint since errors may break it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet: usize,
}

impl Word {
    pub fn new(symbols: &[usize], alphabet: usize) -> Result<Self> {
        check_degree(alphabet)?;
        let symbols = symbols
            .iter()
            .map(|&s| {
                if s == 0 || s > alphabet {
                    Err(Error::SymbolOutOfRange { symbol: s, alphabet })
                } else {
                    Ok(s as u8)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { symbols, alphabet })
    }

    /// Parses `[4,7,1 | 6,3,8]`; component separators are ignored.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        let body = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .replace('|', ",");
        let symbols = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad symbol `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(&symbols, alphabet)
    }

    pub fn concat(parts: &[Word]) -> Result<Self> {
        let alphabet = parts.first().map_or(1, |w| w.alphabet);
        let mut symbols = Vec::new();
        for part in parts {
            if part.alphabet != alphabet {
                return Err(Error::Invalid("alphabet mismatch".into()));
            }
            symbols.extend_from_slice(&part.symbols);
        }
        Ok(Word { symbols, alphabet })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// 1-based symbols.
    pub fn symbols(&self) -> Vec<usize> {
        self.symbols.iter().map(|&s| s as usize).collect()
    }

    pub fn symbol(&self, position: usize) -> usize {
        self.symbols[position] as usize
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.symbols
    }

    /// Count of each symbol, indexed `0..n` for symbols `1..=n`.
    pub fn symbol_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alphabet];
        for &s in &self.symbols {
            counts[s as usize - 1] += 1;
        }
        counts
    }

    /// Formats as `[a,b,c | d,e,f]` with a bar every `component_len` symbols.
    pub fn display_components(&self, component_len: usize) -> String {
        let mut out = String::from("[");
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                out.push_str(if component_len > 0 && i % component_len == 0 {
                    " | "
                } else {
                    ","
                });
            }
            out.push_str(&s.to_string());
        }
        out.push(']');
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.symbols())
    }
}

pub fn hamming_distance(u: &Word, w: &Word) -> Result<usize> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    Ok(u.symbols.iter().zip(&w.symbols).filter(|(a, b)| a != b).count())
}
